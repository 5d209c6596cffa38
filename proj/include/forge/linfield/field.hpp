#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "../error.hpp"
#include "../numtheory.hpp"

namespace forge
{

using fe = std::uint16_t;

/// GF(p^e) with full addition and multiplication tables. An element is
/// encoded as sum c_i p^i where c_i is the coefficient of x^i in its
/// representative modulo the defining polynomial.
class GaloisField
{
public:
  static constexpr std::size_t max_order = 1024;

  GaloisField(unsigned p, unsigned e) : p_(p), e_(e)
  {
    if (!is_prime(p) || e == 0)
      throw InvalidArgument("GF: need a prime p and e >= 1");
    q_ = 1;
    for (unsigned i = 0; i < e; ++i)
      q_ *= p;
    if (q_ > max_order)
      throw CapExceeded("GF: field order above " + std::to_string(max_order));
    modulus_ = least_irreducible(p, e);
    build_tables();
  }

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  std::size_t q() const { return q_; }
  std::vector<unsigned> const &modulus() const { return modulus_; }

  fe zero() const { return 0; }
  fe one() const { return 1; }
  fe add(fe a, fe b) const { return add_[a * q_ + b]; }
  fe sub(fe a, fe b) const { return add_[a * q_ + neg_[b]]; }
  fe neg(fe a) const { return neg_[a]; }
  fe mul(fe a, fe b) const { return mul_[a * q_ + b]; }
  fe inv(fe a) const
  {
    if (a == 0)
      throw InvalidArgument("GF: inverse of zero");
    return inv_[a];
  }
  fe div(fe a, fe b) const { return mul(a, inv(b)); }
  fe pow(fe a, u64 k) const
  {
    fe r = 1;
    while (k) {
      if (k & 1)
        r = mul(r, a);
      a = mul(a, a);
      k >>= 1;
    }
    return r;
  }
  /// x -> x^p
  fe frobenius(fe a) const { return frob_[a]; }
  /// Least element of multiplicative order q-1.
  fe primitive() const { return primitive_; }
  /// Image of an integer under Z -> GF(p).
  fe from_int(long long v) const
  {
    long long r = v % static_cast<long long>(p_);
    return static_cast<fe>(r < 0 ? r + p_ : r);
  }

private:
  // Polynomials over GF(p), coefficient vectors low -> high.
  static std::vector<unsigned> polymod(std::vector<unsigned> a, std::vector<unsigned> const &m,
                                       unsigned p)
  {
    while (a.size() >= m.size()) {
      unsigned lead = a.back();
      std::size_t shift = a.size() - m.size();
      if (lead != 0)
        for (std::size_t i = 0; i < m.size(); ++i)
          a[shift + i] = (a[shift + i] + (p - lead) * m[i]) % p;
      a.pop_back();
    }
    return a;
  }

  static std::vector<unsigned> monic_from_code(u64 code, unsigned p, unsigned deg)
  {
    std::vector<unsigned> f(deg + 1);
    for (unsigned i = 0; i < deg; ++i) {
      f[i] = static_cast<unsigned>(code % p);
      code /= p;
    }
    f[deg] = 1;
    return f;
  }

  static std::vector<unsigned> least_irreducible(unsigned p, unsigned e)
  {
    u64 count = 1;
    for (unsigned i = 0; i < e; ++i)
      count *= p;
    for (u64 code = 0; code < count; ++code) {
      auto f = monic_from_code(code, p, e);
      bool irreducible = true;
      for (unsigned d = 1; 2 * d <= e && irreducible; ++d) {
        u64 dcount = 1;
        for (unsigned i = 0; i < d; ++i)
          dcount *= p;
        for (u64 c2 = 0; c2 < dcount; ++c2) {
          auto r = polymod(f, monic_from_code(c2, p, d), p);
          bool zero = true;
          for (auto x : r)
            zero = zero && x == 0;
          if (zero) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible)
        return f;
    }
    throw InternalInconsistency("GF: no irreducible polynomial found");
  }

  void build_tables()
  {
    auto digits = [&](std::size_t a) {
      std::vector<unsigned> d(e_);
      for (unsigned i = 0; i < e_; ++i) {
        d[i] = a % p_;
        a /= p_;
      }
      return d;
    };
    auto encode = [&](std::vector<unsigned> const &d) {
      std::size_t a = 0;
      for (std::size_t i = d.size(); i-- > 0;)
        a = a * p_ + d[i];
      return static_cast<fe>(a);
    };
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.resize(q_);
    frob_.resize(q_);
    for (std::size_t a = 0; a < q_; ++a) {
      auto da = digits(a);
      std::vector<unsigned> na(e_);
      for (unsigned i = 0; i < e_; ++i)
        na[i] = (p_ - da[i]) % p_;
      neg_[a] = encode(na);
      for (std::size_t b = 0; b < q_; ++b) {
        auto db = digits(b);
        std::vector<unsigned> s(e_), prod(2 * e_, 0);
        for (unsigned i = 0; i < e_; ++i)
          s[i] = (da[i] + db[i]) % p_;
        add_[a * q_ + b] = encode(s);
        for (unsigned i = 0; i < e_; ++i)
          for (unsigned j = 0; j < e_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
        auto r = polymod(prod, modulus_, p_);
        r.resize(e_);
        mul_[a * q_ + b] = encode(r);
      }
    }
    for (std::size_t a = 1; a < q_; ++a)
      for (std::size_t b = 1; b < q_; ++b)
        if (mul_[a * q_ + b] == 1) {
          inv_[a] = static_cast<fe>(b);
          break;
        }
    for (std::size_t a = 0; a < q_; ++a)
      frob_[a] = pow(static_cast<fe>(a), p_);
    primitive_ = 0;
    for (std::size_t a = 1; a < q_ && primitive_ == 0; ++a) {
      std::size_t k = 1;
      for (fe x = static_cast<fe>(a); x != 1; x = mul(x, static_cast<fe>(a)))
        ++k;
      if (k == q_ - 1)
        primitive_ = static_cast<fe>(a);
    }
    if (q_ == 2)
      primitive_ = 1;
  }

  unsigned p_, e_;
  std::size_t q_;
  std::vector<unsigned> modulus_;
  std::vector<fe> add_, mul_, neg_, inv_, frob_;
  fe primitive_ = 1;
};

using FieldPtr = std::shared_ptr<GaloisField const>;

/// Shared field instances, one per (p, e).
inline FieldPtr galois_field(unsigned p, unsigned e = 1)
{
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
  std::lock_guard lock(mu);
  auto &slot = cache[{p, e}];
  if (!slot)
    slot = std::make_shared<GaloisField const>(p, e);
  return slot;
}

/// GF(q) for a prime power q.
inline FieldPtr galois_field_of_order(u64 q)
{
  auto f = factorize(q);
  if (f.size() != 1)
    throw InvalidArgument("GF: order must be a prime power");
  return galois_field(static_cast<unsigned>(f.begin()->first), f.begin()->second);
}

} // namespace forge
