#include <gtest/gtest.h>

#include <random>

#include "nslattice/forms.hpp"
#include "nslattice/lattice.hpp"

using namespace nslattice;

namespace {

SymmetricForm diagonal_form(int nvars, int degree, const std::vector<long>& coeffs) {
  SymmetricForm f(nvars, degree);
  for (int i = 0; i < nvars; ++i) {
    std::vector<int> e(nvars, 0);
    e[i] = degree;
    f.add(e, coeffs[i]);
  }
  return f;
}

// Polarization: every basis multiset, mixed or not, through q_d.
SymmetricForm polarized(const BlowupLattice& lat, int d) {
  const int n = lat.rank();
  SymmetricForm f(n, d);
  std::vector<int> exps(n, 0);
  std::function<void(int, int)> rec = [&](int var, int left) {
    if (var == n - 1) {
      exps[var] = left;
      std::vector<NSClass> tuple;
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < exps[i]; ++c) tuple.push_back(NSClass::basis(n, i));
      f.add(exps, multinomial(exps) * q_d(lat, d, std::span<const NSClass>(tuple)));
      return;
    }
    for (int e = 0; e <= left; ++e) {
      exps[var] = e;
      rec(var + 1, left - e);
    }
  };
  rec(0, d);
  return f;
}

std::vector<Integer> random_point(std::mt19937_64& rng, int n, long range) {
  std::uniform_int_distribution<long> dist(-range, range);
  std::vector<Integer> p(n);
  for (auto& x : p) x = dist(rng);
  return p;
}

}  // namespace

TEST(WdPolynomial, Examples) {
  auto f = w_d_polynomial(BlowupLattice(3, 1, -4, 2), 3);
  EXPECT_EQ(f, diagonal_form(3, 3, {1, 1, 1}));
  EXPECT_EQ(f.to_string(), "X0^3+X1^3+X2^3");

  auto g = w_d_polynomial(BlowupLattice(4, 1, -5, 1), 4);
  EXPECT_EQ(g, diagonal_form(2, 4, {1, -1}));
  EXPECT_EQ(g.to_string(), "X0^4-X1^4");

  auto h = w_d_polynomial(BlowupLattice(3, 1, -4, 1), 2);
  EXPECT_EQ(h, diagonal_form(2, 2, {-4, 2}));
  EXPECT_EQ(h.to_string(), "-4*X0^2+2*X1^2");

  EXPECT_THROW(w_d_polynomial(BlowupLattice(3, 1, -4, 1), 0), ValidationError);
  EXPECT_THROW(w_d_polynomial(BlowupLattice(3, 1, -4, 1), 4), ValidationError);
}

TEST(WdPolynomial, MatchesPolarizationOracle) {
  for (int k = 2; k <= 5; ++k)
    for (int l = 0; l <= 3; ++l)
      for (int d = 1; d <= k; ++d) {
        BlowupLattice lat(k, 3, -(k + 1), l);
        EXPECT_EQ(w_d_polynomial(lat, d), polarized(lat, d)) << k << " " << l << " " << d;
      }
}

TEST(WdPolynomial, TwoPathAgreementOnRandomPoints) {
  std::mt19937_64 rng(2024);
  for (int k = 3; k <= 5; ++k) {
    BlowupLattice lat(k, 2, -(k + 1), 4);
    auto f = w_d_polynomial(lat, k);
    for (int t = 0; t < 1000; ++t) {
      auto p = random_point(rng, 5, 1000000);
      EXPECT_EQ(f.evaluate(p), q_d_diagonal(lat, k, NSClass(p)));
    }
  }
}

TEST(WdPolynomial, EulerIdentity) {
  std::mt19937_64 rng(7);
  for (int k = 2; k <= 5; ++k)
    for (int d = 1; d <= k; ++d) {
      auto f = w_d_polynomial(BlowupLattice(k, 5, -(k + 1), 3), d);
      for (int t = 0; t < 50; ++t) {
        auto p = random_point(rng, 4, 500);
        Integer lhs = 0;
        for (int i = 0; i < 4; ++i) lhs += p[i] * f.partial(i).evaluate(p);
        EXPECT_EQ(lhs, d * f.evaluate(p));
      }
    }
}

TEST(SymmetricForm, CanonicalTermList) {
  SymmetricForm f = SymmetricForm::from_terms(2, 2, {{{1, 1}, 3}, {{2, 0}, 1}, {{1, 1}, -3}, {{0, 2}, 0}});
  ASSERT_EQ(f.terms().size(), 1u);
  EXPECT_EQ(f.terms()[0].exps, (std::vector<int>{2, 0}));
  EXPECT_THROW(f.add({1, 0}, 1), ValidationError);
  EXPECT_THROW(f.add({3, -1}, 1), ValidationError);
  SymmetricForm g = SymmetricForm::from_terms(3, 2, {{{0, 0, 2}, 1}, {{2, 0, 0}, 1}, {{0, 2, 0}, 1}, {{1, 1, 0}, 1}});
  for (std::size_t i = 1; i < g.terms().size(); ++i) EXPECT_LT(g.terms()[i - 1].exps, g.terms()[i].exps);
}

TEST(SmoothDiagonal, Examples) {
  EXPECT_TRUE(is_smooth_diagonal(diagonal_form(3, 3, {1, 1, 1})));
  EXPECT_FALSE(is_smooth_diagonal(diagonal_form(3, 4, {1, -1, 0})));
  for (int k = 2; k <= 7; ++k)
    for (int l = 0; l <= 6; ++l)
      for (long a : {1L, 2L, -3L})
        EXPECT_TRUE(is_smooth_diagonal(w_d_polynomial(BlowupLattice(k, a, -(k + 1), l), k)));
}

TEST(SmoothDiagonal, RejectsNonDiagonal) {
  SymmetricForm f = SymmetricForm::from_terms(2, 3, {{{2, 1}, 1}});
  EXPECT_THROW(is_smooth_diagonal(f), ValidationError);
}

TEST(SmoothDiagonal, LinearAndZeroForms) {
  EXPECT_TRUE(is_smooth_diagonal(diagonal_form(3, 1, {1, 0, 0})));
  EXPECT_FALSE(is_smooth_diagonal(SymmetricForm(3, 2)));
}

TEST(SingularPointSearch, Examples) {
  auto r = singular_point_search(SymmetricForm::from_terms(2, 3, {{{2, 1}, 1}}), 1);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(*r.witness, (std::vector<Integer>{0, 1}));

  auto fermat = singular_point_search(diagonal_form(3, 3, {1, 1, 1}), 5);
  EXPECT_FALSE(fermat.witness.has_value());
  EXPECT_NE(fermat.verdict().find("not a smoothness proof"), std::string::npos);

  // -4X0^2 + 2X1^2 has discriminant 4*(-4)*2 != 0, so no singular point anywhere.
  auto quad = diagonal_form(2, 2, {-4, 2});
  Integer disc = 0 * 0 - 4 * -4 * 2;
  ASSERT_NE(disc, 0);
  EXPECT_FALSE(singular_point_search(quad, 3).witness.has_value());
  EXPECT_THROW(singular_point_search(quad, 0), ValidationError);
}

TEST(SingularPointSearch, NonSmoothDiagonalHasCoordinateWitness) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> coin(-2, 2);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 2 + trial % 3, d = 2 + trial % 4;
    std::vector<long> c(n);
    for (auto& x : c) x = coin(rng);
    auto f = diagonal_form(n, d, c);
    if (is_smooth_diagonal(f)) continue;
    auto r = singular_point_search(f, 1);
    ASSERT_TRUE(r.witness.has_value());
    int nonzero = 0;
    for (const auto& x : *r.witness) nonzero += (x != 0);
    if (!f.is_zero()) { EXPECT_EQ(nonzero, 1); }
  }
}

TEST(SingularPointSearch, FindsNodeOfNonDiagonalCubic) {
  // X0*X1*X2 is singular at the three coordinate points and nowhere else on the torus.
  auto f = SymmetricForm::from_terms(3, 3, {{{1, 1, 1}, 1}});
  auto r = singular_point_search(f, 2);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_EQ(f.evaluate(*r.witness), 0);
}
