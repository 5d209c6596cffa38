#pragma once

#include <vector>

#include "matrix.hpp"

namespace forge
{

/// Least monic f with f(A) v = 0 (A acting on column vectors).
inline Poly local_minimal_polynomial(Matrix const &a, std::vector<fe> const &v)
{
  auto const &F = a.field();
  std::size_t n = a.rows();
  std::vector<std::vector<fe>> krylov{v};
  while (true) {
    auto next = a.apply(krylov.back());
    auto k = columns_to_matrix(a.field_ptr(), n, krylov);
    auto x = k.solve(columns_to_matrix(a.field_ptr(), n, {next}));
    if (x) {
      Poly f(krylov.size() + 1);
      for (std::size_t i = 0; i < krylov.size(); ++i)
        f[i] = F.neg((*x)(i, 0));
      f[krylov.size()] = 1;
      return f;
    }
    krylov.push_back(std::move(next));
  }
}

inline Poly minimal_polynomial(Matrix const &a)
{
  std::size_t n = a.rows();
  Poly mu{1};
  for (std::size_t i = 0; i < n && static_cast<std::size_t>(degree(mu)) < n; ++i) {
    std::vector<fe> e(n, 0);
    e[i] = 1;
    mu = poly_lcm(a.field(), mu, local_minimal_polynomial(a, e));
  }
  return mu;
}

inline bool is_semisimple(Matrix const &a)
{
  auto mu = minimal_polynomial(a);
  return degree(poly_gcd(a.field(), mu, poly_derivative(a.field(), mu))) == 0;
}

struct RationalCanonicalForm
{
  std::vector<Matrix> blocks; // companion matrices, invariant factors f1 | f2 | ...
  std::vector<Poly> invariant_factors;
  Matrix transform;           // transform^-1 * A * transform = diag(blocks)
};

namespace detail
{

// A vector whose local minimal polynomial equals the minimal polynomial:
// unit vectors first, then all vectors in code order.
inline std::vector<fe> maximal_vector(Matrix const &a, long target_degree)
{
  std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<fe> e(n, 0);
    e[i] = 1;
    if (degree(local_minimal_polynomial(a, e)) == target_degree)
      return e;
  }
  std::size_t q = a.field().q();
  std::vector<fe> v(n, 0);
  while (true) {
    std::size_t i = 0;
    while (i < n && ++v[i] == q)
      v[i++] = 0;
    ensure(i < n, "rational canonical form: no maximal vector");
    if (degree(local_minimal_polynomial(a, v)) == target_degree)
      return v;
  }
}

} // namespace detail

inline RationalCanonicalForm rational_canonical_form(Matrix const &a)
{
  if (!a.square())
    throw InvalidArgument("rational_canonical_form: matrix is not square");
  auto const &Fp = a.field_ptr();
  std::size_t n = a.rows();
  if (n == 0)
    return {{}, {}, Matrix(Fp, 0, 0)};

  auto mu = minimal_polynomial(a);
  auto k = static_cast<std::size_t>(degree(mu));
  auto v = detail::maximal_vector(a, degree(mu));
  std::vector<std::vector<fe>> krylov{v};
  for (std::size_t i = 1; i < k; ++i)
    krylov.push_back(a.apply(krylov.back()));
  auto kmat = columns_to_matrix(Fp, n, krylov);

  RationalCanonicalForm r;
  if (k == n) {
    r.blocks.push_back(Matrix::companion(Fp, mu));
    r.invariant_factors.push_back(mu);
    r.transform = kmat;
    return r;
  }

  // A functional phi with phi(A^i v) = [i == k-1]; the common kernel of
  // phi A^j (j < k) is an A-invariant complement of the cyclic subspace.
  Matrix target(Fp, k, 1);
  target(k - 1, 0) = 1;
  auto phi_col = kmat.transpose().solve(target);
  ensure(phi_col.has_value(), "rational canonical form: no dual functional");
  Matrix rows(Fp, k, n);
  Matrix phi = phi_col->transpose();
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t c = 0; c < n; ++c)
      rows(j, c) = phi(0, c);
    phi = phi * a;
  }
  auto w = rows.nullspace();
  ensure(w.cols() == n - k, "rational canonical form: complement has the wrong dimension");
  auto restricted = w.solve(a * w);
  ensure(restricted.has_value(), "rational canonical form: complement is not invariant");

  auto inner = rational_canonical_form(*restricted);
  r.blocks = std::move(inner.blocks);
  r.invariant_factors = std::move(inner.invariant_factors);
  r.blocks.push_back(Matrix::companion(Fp, mu));
  r.invariant_factors.push_back(mu);
  r.transform = hcat(w * inner.transform, kmat);
  return r;
}

inline Poly characteristic_polynomial(Matrix const &a)
{
  Poly chi{1};
  for (auto const &f : rational_canonical_form(a).invariant_factors)
    chi = poly_mul(a.field(), chi, f);
  return chi;
}

} // namespace forge
