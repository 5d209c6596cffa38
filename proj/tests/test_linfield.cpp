#include <gtest/gtest.h>

#include <random>

#include "forge/linfield/norm.hpp"
#include "forge/linfield/projective.hpp"
#include "forge/quotient.hpp"
#include "oracles.hpp"

using namespace forge;

namespace
{

Matrix M(FieldPtr F, std::vector<std::vector<fe>> rows) { return Matrix::from_rows(std::move(F), rows); }

Matrix random_matrix(FieldPtr F, std::size_t n, std::mt19937 &rng)
{
  Matrix m(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m(i, j) = static_cast<fe>(rng() % F->q());
  return m;
}

} // namespace

TEST(Field, ModulusIsLeastIrreducible)
{
  EXPECT_EQ(galois_field(2, 3)->modulus(), (std::vector<unsigned>{1, 1, 0, 1}));
  EXPECT_EQ(galois_field(2, 2)->modulus(), (std::vector<unsigned>{1, 1, 1}));
  EXPECT_EQ(galois_field(3, 2)->modulus(), (std::vector<unsigned>{1, 0, 1}));
}

TEST(Field, Axioms)
{
  for (auto [p, e] : std::vector<std::pair<unsigned, unsigned>>{{2, 1}, {5, 1}, {2, 2}, {3, 2}, {2, 3}}) {
    auto F = galois_field(p, e);
    auto q = static_cast<fe>(F->q());
    for (fe a = 0; a < q; ++a) {
      EXPECT_EQ(F->add(a, F->neg(a)), 0);
      if (a) {
        EXPECT_EQ(F->mul(a, F->inv(a)), 1);
      }
      EXPECT_EQ(F->pow(a, q), a);
      for (fe b = 0; b < q; ++b)
        for (fe c = 0; c < q; ++c) {
          EXPECT_EQ(F->mul(a, F->add(b, c)), F->add(F->mul(a, b), F->mul(a, c)));
          EXPECT_EQ(F->mul(F->mul(a, b), c), F->mul(a, F->mul(b, c)));
        }
    }
    std::set<fe> powers;
    for (fe x = 1, k = 0; k + 1 < q; ++k, x = F->mul(x, F->primitive()))
      powers.insert(x);
    EXPECT_EQ(powers.size(), q - 1u);
  }
}

TEST(Poly, FactorAndGcd)
{
  auto F = galois_field(3);
  // x^2 - 1 = (x + 1)(x + 2) over GF(3)
  auto fac = poly_factor(*F, Poly{2, 0, 1});
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0].first, (Poly{1, 1}));
  EXPECT_EQ(fac[1].first, (Poly{2, 1}));
  EXPECT_TRUE(poly_is_irreducible(*F, Poly{1, 0, 1}));
  EXPECT_FALSE(poly_is_irreducible(*F, Poly{2, 0, 1}));
  EXPECT_EQ(poly_gcd(*F, Poly{2, 0, 1}, Poly{1, 1}), (Poly{1, 1}));
  EXPECT_EQ(poly_derivative(*F, Poly{0, 0, 0, 1}), Poly{});
}

TEST(Matrix, DeterminantAgainstOracle)
{
  std::mt19937 rng(1);
  auto F = galois_field(5);
  for (int t = 0; t < 200; ++t) {
    auto m = random_matrix(F, 1 + t % 4, rng);
    std::vector<std::vector<int>> raw(m.rows(), std::vector<int>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        raw[i][j] = m(i, j);
    EXPECT_EQ(m.det(), oracle::det_mod(raw, 5));
    auto inv = m.inverse();
    EXPECT_EQ(inv.has_value(), m.det() != 0);
    if (inv) {
      EXPECT_EQ(m * *inv, Matrix::identity(F, m.rows()));
    }
  }
}

TEST(RationalCanonicalForm, SpecExamples)
{
  auto F2 = galois_field(2);
  auto id = rational_canonical_form(Matrix::identity(F2, 2));
  ASSERT_EQ(id.blocks.size(), 2u);
  EXPECT_EQ(id.invariant_factors[0], (Poly{1, 1}));
  EXPECT_EQ(id.invariant_factors[1], (Poly{1, 1}));

  auto c = Matrix::companion(F2, Poly{1, 1, 1});
  auto rc = rational_canonical_form(c);
  ASSERT_EQ(rc.blocks.size(), 1u);
  EXPECT_EQ(rc.blocks[0], c);
  EXPECT_EQ(rc.transform, Matrix::identity(F2, 2));

  auto F3 = galois_field(3);
  auto r3 = rational_canonical_form(M(F3, {{0, 2}, {1, 0}}));
  ASSERT_EQ(r3.blocks.size(), 1u);
  EXPECT_EQ(r3.invariant_factors[0], (Poly{1, 0, 1}));
}

TEST(RationalCanonicalForm, PostconditionOnRandomMatrices)
{
  std::mt19937 rng(2);
  for (unsigned p : {2u, 3u, 5u}) {
    auto F = galois_field(p);
    for (int t = 0; t < 300; ++t) {
      std::size_t n = 1 + t % 5;
      auto a = random_matrix(F, n, rng);
      if (t % 3 == 0) // bias towards derogatory matrices
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j)
            a(i, j) = (i == j) ? static_cast<fe>(t % p) : (j == i + 1 && t % 2 ? 1 : 0);
      auto r = rational_canonical_form(a);
      auto inv = r.transform.inverse();
      ASSERT_TRUE(inv.has_value());
      EXPECT_EQ(*inv * a * r.transform, block_diagonal(F, r.blocks));
      for (std::size_t i = 0; i + 1 < r.invariant_factors.size(); ++i)
        EXPECT_TRUE(poly_divmod(*F, r.invariant_factors[i + 1], r.invariant_factors[i]).second.empty());
      EXPECT_EQ(r.invariant_factors.back(), minimal_polynomial(a));
      EXPECT_EQ(poly_eval(minimal_polynomial(a), a), Matrix(F, n, n));
    }
  }
}

TEST(NormDet, SpecExamples)
{
  auto F2 = galois_field(2);
  auto a = Matrix::companion(F2, Poly{1, 1, 1});
  auto r = norm_det_check(a, Poly{0, 0, 1});
  EXPECT_EQ(r.det, 1);
  EXPECT_EQ(r.norm_power, 1);
  EXPECT_TRUE(r.equal);
  auto one = norm_det_check(a, Poly{1});
  EXPECT_EQ(one.det, 1);
  EXPECT_TRUE(one.equal);

  auto F3 = galois_field(3);
  auto b = Matrix::companion(F3, Poly{1, 0, 1});
  auto r3 = norm_det_check(b, Poly{0, 1});
  EXPECT_EQ(r3.det, 1);
  EXPECT_EQ(r3.norm_power, 1);
  EXPECT_TRUE(r3.equal);

  EXPECT_THROW(norm_det_check(Matrix::identity(F3, 2).scaled(2) + Matrix::companion(F3, Poly{0, 0, 1}), Poly{1}),
               MinPolyReducible);
}

TEST(NormDet, ScalarAndBlockCases)
{
  // A = scalar 2 on GF(5)^3: d = 1, n/d = 3
  auto F5 = galois_field(5);
  auto a = Matrix::identity(F5, 3).scaled(2);
  auto r = norm_det_check(a, Poly{0, 1});
  EXPECT_EQ(r.det, 3); // 2^3 = 8 = 3
  EXPECT_TRUE(r.equal);
  // two copies of an irreducible quadratic over GF(2)
  auto F2 = galois_field(2);
  auto c = Matrix::companion(F2, Poly{1, 1, 1});
  auto cc = block_diagonal(F2, {c, c});
  for (u64 code = 0; code < 4; ++code)
    EXPECT_TRUE(norm_det_check(cc, poly_from_code(*F2, code, 2)).equal);
}

TEST(CommutingDet, SpecExamples)
{
  auto F3 = galois_field(3);
  auto b = commuting_matrix_with_det(Matrix::identity(F3, 2), 2);
  EXPECT_EQ(b, M(F3, {{1, 0}, {0, 2}}));

  auto c = Matrix::companion(F3, Poly{1, 0, 1});
  EXPECT_EQ(commuting_matrix_with_det(c, 2), c + Matrix::identity(F3, 2));

  auto F5 = galois_field(5);
  auto d = M(F5, {{1, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  EXPECT_EQ(commuting_matrix_with_det(d, 1), Matrix::identity(F5, 3));
}

TEST(CommutingDet, Errors)
{
  auto F3 = galois_field(3);
  auto jordan = M(F3, {{1, 1}, {0, 1}});
  EXPECT_THROW(commuting_matrix_with_det(jordan, 1), NotSemisimple);
  EXPECT_THROW(commuting_matrix_with_det(Matrix::identity(F3, 2), 0), InvalidArgument);
}

TEST(CommutingDet, RandomSemisimple)
{
  std::mt19937 rng(3);
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    auto F = galois_field(p);
    int done = 0;
    for (int t = 0; t < 400 && done < 60; ++t) {
      auto b = random_matrix(F, 2 + t % 3, rng);
      if (!is_semisimple(b))
        continue;
      ++done;
      CommutingDetSolver s(b);
      for (fe a = 1; a < p; ++a) {
        auto r = s.solve(a);
        EXPECT_EQ(r * b, b * r);
        EXPECT_EQ(r.det(), a);
      }
    }
    EXPECT_GT(done, 10);
  }
}

TEST(Projective, SpecExamples)
{
  auto a = projective_group(2, 5, LinearKind::PSL);
  EXPECT_EQ(a.group.order(), 60u);
  EXPECT_EQ(a.points.size(), 6u);
  auto b = projective_group(2, 3, LinearKind::PGL);
  EXPECT_EQ(b.group.order(), 24u);
  EXPECT_EQ(b.points.size(), 4u);
  auto c = projective_group(3, 2, LinearKind::PSL);
  EXPECT_EQ(c.group.order(), 168u);
  EXPECT_EQ(c.points.size(), 7u);
}

TEST(Projective, LinearKinds)
{
  EXPECT_EQ(projective_group(2, 3, LinearKind::SL).group.order(), 24u);
  EXPECT_EQ(projective_group(2, 3, LinearKind::GL).group.order(), 48u);
  EXPECT_EQ(projective_group(2, 4, LinearKind::PSL).group.order(), 60u);
  EXPECT_EQ(projective_group(2, 7, LinearKind::PGL).group.order(), 336u);
  EXPECT_EQ(projective_group(2, 9, LinearKind::PSL).group.order(), 360u);
  ScopedCaps s({1000, 2000, 20000});
  EXPECT_THROW(projective_group(3, 3, LinearKind::PSL), CapExceeded);
}

TEST(Projective, SigmaHasOrderEAndNormalizes)
{
  for (auto [d, q, e] : std::vector<std::tuple<std::size_t, u64, std::size_t>>{{2, 4, 2}, {2, 8, 3}, {2, 9, 2}, {3, 4, 2}}) {
    auto g = projective_group(d, q, LinearKind::PSL);
    EXPECT_EQ(g.sigma.order(), e);
    EXPECT_TRUE(normalizes(g.sigma, g.group));
    EXPECT_FALSE(g.group.contains(g.sigma));
  }
  EXPECT_TRUE(projective_group(2, 5, LinearKind::PGL).sigma.is_identity());
}

TEST(Projective, TauInvertsDeterminantClasses)
{
  auto g = projective_group(3, 4, LinearKind::PGL);
  ASSERT_TRUE(g.tau.has_value());
  auto s = projective_group(3, 4, LinearKind::PSL);
  // PSL inside PGL on the same points
  auto psl = PermGroup::generate(g.group.degree(), s.group.generators());
  auto q = quotient_by_normal(g.group, psl);
  EXPECT_EQ(q.group.order(), 3u);
  for (auto const &x : g.group.generators()) {
    auto cls = q.map(x);
    auto img = q.map((*g.tau)(x));
    EXPECT_EQ(img, cls.inverse());
  }
  EXPECT_FALSE(projective_group(2, 5, LinearKind::PGL).tau.has_value());
  // tau is not inner on PSL(3,2)
  auto t = projective_group(3, 2, LinearKind::PSL);
  auto const &tau = *t.tau;
  bool inner = false;
  for (auto const &x : t.group.elements()) {
    bool same = true;
    for (auto const &y : t.group.generators())
      if (tau(y) != y.conjugate(x)) {
        same = false;
        break;
      }
    inner = inner || same;
  }
  EXPECT_FALSE(inner);
}
