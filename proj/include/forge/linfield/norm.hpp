#pragma once

#include <vector>

#include "canonical_form.hpp"

namespace forge
{

struct NormCheck
{
  fe det = 0;
  fe norm_power = 0;
  bool equal = false;
};

/// For A with irreducible minimal polynomial of degree d, F[A] is the field
/// GF(q^d). Compares det h(A) with N(h(A))^(n/d), where N(x) = x^(1+q+...+q^(d-1)).
inline NormCheck norm_det_check(Matrix const &a, Poly const &h)
{
  auto const &F = a.field();
  auto mu = minimal_polynomial(a);
  if (!poly_is_irreducible(F, mu))
    throw MinPolyReducible("norm_det_check: minimal polynomial is reducible");
  auto d = static_cast<u64>(degree(mu));
  u64 exponent = 0, qi = 1;
  for (u64 i = 0; i < d; ++i, qi *= F.q())
    exponent += qi;
  auto ap = poly_eval(h, a);
  auto norm = ap.pow(exponent);
  ensure(norm.is_scalar(), "norm_det_check: norm is not a scalar matrix");
  NormCheck r;
  r.det = ap.det();
  r.norm_power = F.pow(norm(0, 0), a.rows() / d);
  r.equal = r.det == r.norm_power;
  return r;
}

/// Reusable form of the commuting-matrix construction for one semisimple B.
/// B is brought to block form with one block per irreducible factor of its
/// minimal polynomial (each block a sum of companion matrices of that
/// factor); the first companion block B1 spans the field F[B1], and a
/// polynomial h with det h(B1) = a is looked up by scanning F[B1]^x.
class CommutingDetSolver
{
public:
  explicit CommutingDetSolver(Matrix const &b) : b_(b)
  {
    if (!b.square())
      throw InvalidArgument("commuting_matrix_with_det: matrix is not square");
    auto const &F = b.field();
    auto Fp = b.field_ptr();
    auto mu = minimal_polynomial(b);
    if (degree(poly_gcd(F, mu, poly_derivative(F, mu))) != 0)
      throw NotSemisimple("commuting_matrix_with_det: minimal polynomial is not squarefree");

    std::size_t n = b.rows();
    Matrix t(Fp, n, 0);
    for (auto const &[g, mult] : poly_factor(F, mu)) {
      auto space = poly_eval(g, b).nullspace();
      auto restricted = space.solve(b * space);
      ensure(restricted.has_value(), "commuting_matrix_with_det: primary component is not invariant");
      auto rcf = rational_canonical_form(*restricted);
      for (auto const &f : rcf.invariant_factors)
        ensure(f == g, "commuting_matrix_with_det: primary block is not a companion of its factor");
      t = hcat(t, space * rcf.transform);
      if (first_factor_.empty())
        first_factor_ = g;
    }
    transform_ = t;
    auto inv = t.inverse();
    ensure(inv.has_value(), "commuting_matrix_with_det: transform is singular");
    inverse_ = *inv;

    auto d1 = static_cast<unsigned>(degree(first_factor_));
    b1_ = Matrix::companion(Fp, first_factor_);
    u64 count = 1;
    for (unsigned i = 0; i < d1; ++i)
      count *= F.q();
    by_det_.assign(F.q(), 0);
    std::size_t missing = F.q() - 1;
    for (u64 code = 1; code < count && missing > 0; ++code) {
      auto dt = poly_eval(poly_from_code(F, code, d1), b1_).det();
      if (dt != 0 && by_det_[dt] == 0) {
        by_det_[dt] = code;
        --missing;
      }
    }
    ensure(missing == 0, "commuting_matrix_with_det: norm map is not surjective");
  }

  Matrix const &transform() const { return transform_; }
  Poly const &first_factor() const { return first_factor_; }

  /// Polynomial h (as a code) with det h(B1) = a.
  u64 norm_preimage_code(fe a) const
  {
    if (a == 0 || a >= by_det_.size())
      throw InvalidArgument("commuting_matrix_with_det: a must be a nonzero field element");
    return by_det_[a];
  }

  Matrix solve(fe a) const
  {
    auto const &F = b_.field();
    auto d1 = static_cast<unsigned>(degree(first_factor_));
    auto h = poly_from_code(F, norm_preimage_code(a), d1);
    std::size_t n = b_.rows();
    Matrix middle = Matrix::identity(b_.field_ptr(), n);
    auto hb = poly_eval(h, b1_);
    for (std::size_t i = 0; i < d1; ++i)
      for (std::size_t j = 0; j < d1; ++j)
        middle(i, j) = hb(i, j);
    auto result = transform_ * middle * inverse_;
    ensure(result * b_ == b_ * result, "commuting_matrix_with_det: result does not commute");
    ensure(result.det() == a, "commuting_matrix_with_det: wrong determinant");
    return result;
  }

private:
  Matrix b_;
  Matrix transform_, inverse_, b1_;
  Poly first_factor_;
  std::vector<u64> by_det_;
};

inline Matrix commuting_matrix_with_det(Matrix const &b, fe a)
{
  return CommutingDetSolver(b).solve(a);
}

} // namespace forge
