// CM verifier: the Leibniz product derivative against finite differences and
// single-slot shifts, and the verdicts for sanctioned and inflated constants.

#include <gtest/gtest.h>

#include <cmath>

#include "cmkit/cm_verifier.hpp"
#include "support/generators.hpp"

using namespace cmkit;

namespace {

const std::vector<FamilySpec>& all_families() {
  static const std::vector<FamilySpec> f = {FamilySpec::hurwitz(), FamilySpec::alternating(),
                                            FamilySpec::tricomi(2.0, 2.0), FamilySpec::tricomi(1.0, 3.0),
                                            FamilySpec::gaussian()};
  return f;
}

}  // namespace

TEST(Family, NamesAndThetas) {
  EXPECT_EQ(FamilySpec::from_name("hurwitz").name(), "hurwitz");
  EXPECT_EQ(*FamilySpec::hurwitz().theta_logconcave, 1.0);
  EXPECT_EQ(*FamilySpec::hurwitz().theta_logconvex, 0.0);
  EXPECT_NEAR(*FamilySpec::alternating().theta_logconvex, -0.439228, 1e-6);
  const auto t = FamilySpec::tricomi(1.0, 3.0);
  EXPECT_DOUBLE_EQ(*t.theta_logconcave, 0.0);
  EXPECT_DOUBLE_EQ(*t.theta_logconvex, -1.0);
  EXPECT_FALSE(FamilySpec::gaussian().theta_logconvex.has_value());
  EXPECT_THROW(FamilySpec::from_name("nope"), precondition_error);
  EXPECT_THROW(FamilySpec::tricomi(0.0, 1.0), domain_error);
  EXPECT_THROW(family_F(FamilySpec::hurwitz(), 0.0, 1.0), domain_error);
}

TEST(Family, TricomiIncludesGammaFactor) {
  const auto spec = FamilySpec::tricomi(1.5, 2.5);
  EXPECT_NEAR(family_F(spec, 0.5, 2.0), std::tgamma(2.0) * tricomi_u(2.0, 3.0, 2.0), 1e-14);
}

TEST(ProductDerivative, SingleSlotIsShift) {
  gen::Rng r(1);
  for (const auto& spec : all_families())
    for (int m = 0; m <= 5; ++m) {
      const double p = r.uniform(0.3, 3.0), x = r.log_uniform(0.2, 20);
      EXPECT_NEAR(product_derivative(spec, RTuple{p}, m, x), family_F(spec, p + m, x),
                  1e-14 * family_F(spec, p + m, x))
          << spec.name() << " m=" << m;
    }
}

TEST(ProductDerivative, MatchesFiniteDifference) {
  // First and second derivatives of a 3-fold product by central differences.
  gen::Rng r(2);
  for (const auto& spec : all_families())
    for (int i = 0; i < 3; ++i) {
      const RTuple t = RTuple::sorted({r.uniform(0.3, 3), r.uniform(0.3, 3), r.uniform(0.3, 3)});
      const double x = r.uniform(0.5, 8), h = 1e-3 * x;
      auto f = [&](double y) { return product_derivative(spec, t, 0, y); };
      const double d1 = (f(x - 2 * h) - 8 * f(x - h) + 8 * f(x + h) - f(x + 2 * h)) / (12 * h);
      const double d2 = (-f(x - 2 * h) + 16 * f(x - h) - 30 * f(x) + 16 * f(x + h) - f(x + 2 * h)) /
                        (12 * h * h);
      EXPECT_NEAR(-d1, product_derivative(spec, t, 1, x), 1e-7 * std::fabs(d1)) << spec.name();
      EXPECT_NEAR(d2, product_derivative(spec, t, 2, x), 1e-5 * std::fabs(d2)) << spec.name();
    }
}

TEST(ProductDerivative, TermGuard) {
  const std::vector<double> big(40, 1.0);
  EXPECT_THROW(product_derivative(FamilySpec::hurwitz(), RTuple(big), 8, 1.0), precondition_error);
}

TEST(CmCheck, SanctionedConstantsPass) {
  const MajorizationPair pr(RTuple{2, 2}, RTuple{3, 1});
  for (const auto& spec : all_families())
    for (int sign : {+1, -1}) {
      const auto rep = cm_check(spec, pr, sanctioned_lambda(spec, pr, sign), sign, default_cm_grid(), 6);
      EXPECT_TRUE(rep.pass()) << spec.name() << " sign " << sign << " fails at order "
                              << rep.first_failing_order();
      EXPECT_EQ(rep.orders.size(), 7u);
    }
}

TEST(CmCheck, InflatedConstantFailsAtOrderZero) {
  const MajorizationPair pr(RTuple{2, 2}, RTuple{3, 1});
  for (const auto& spec : all_families()) {
    const double lam = sanctioned_lambda(spec, pr, +1) * 1.05;
    const auto rep = cm_check(spec, pr, lam, +1, default_cm_grid(), 6);
    EXPECT_EQ(rep.first_failing_order(), 0) << spec.name();
  }
}

TEST(CmCheck, HurwitzUnitConstantExample) {
  const MajorizationPair pr(RTuple{2, 2}, RTuple{3, 1});
  const auto rep = cm_check(FamilySpec::hurwitz(), pr, lambda_constant(pr.p().entries(), pr.q().entries(), 1.0),
                            +1, default_cm_grid(), 6);
  EXPECT_DOUBLE_EQ(rep.lambda, 0.5);
  EXPECT_TRUE(rep.pass());
}

TEST(CmCheck, GaussianLowerSideWithUnitLambda) {
  const MajorizationPair pr(RTuple{1, 1}, RTuple{2, 0});
  EXPECT_TRUE(cm_check(FamilySpec::gaussian(), pr, 1.0, -1, default_cm_grid(), 6).pass());
}

TEST(CmCheck, OrderClipping) {
  const MajorizationPair pr(RTuple{2, 2}, RTuple{3, 1});
  const auto rep = cm_check(FamilySpec::hurwitz(), pr, 0.5, +1, {1.0}, 12);
  EXPECT_EQ(rep.orders_checked, kCmMaxOrder);
  EXPECT_FALSE(rep.clip_note.empty());
}

TEST(CmCheck, InputValidation) {
  const MajorizationPair pr(RTuple{2, 2}, RTuple{3, 1});
  const auto spec = FamilySpec::hurwitz();
  EXPECT_THROW(cm_check(spec, pr, 0.5, 0, {1.0}, 2), precondition_error);
  EXPECT_THROW(cm_check(spec, pr, 0.5, 1, {}, 2), precondition_error);
  EXPECT_THROW(cm_check(spec, pr, 0.5, 1, {-1.0}, 2), precondition_error);
  EXPECT_THROW(cm_check(spec, MajorizationPair(RTuple{1, 1}, RTuple{2, 0}), 0.5, 1, {1.0}, 2),
               domain_error);
}

TEST(CmCheckProperty, RandomPairsAllFamilies) {
  for (std::uint64_t s = 0; s < 4; ++s)
    for (const auto& spec : all_families()) {
      const auto pr = gen::positive_pair(std::size_t(2 + s % 3), 500 + s, std::max(0.0, spec.index_lower_bound()));
      for (int sign : {+1, -1}) {
        const auto rep = cm_check(spec, pr, sanctioned_lambda(spec, pr, sign), sign, default_cm_grid(), 4);
        EXPECT_TRUE(rep.pass()) << spec.name() << " " << to_string(pr.p()) << " / " << to_string(pr.q())
                                << " sign " << sign << " order " << rep.first_failing_order();
      }
    }
}

TEST(Sharpness, HurwitzEndpoints) {
  const MajorizationPair pr(RTuple{2.5, 2.5}, RTuple{3, 2});
  const auto s = sharpness_scan(FamilySpec::hurwitz(), pr, 1e-4, 1e4);
  EXPECT_NEAR(s.ratio_at_small, lambda_constant(pr.p().entries(), pr.q().entries(), 0.0), 1e-3);
  EXPECT_NEAR(s.ratio_at_large, lambda_constant(pr.p().entries(), pr.q().entries(), 1.0), 1e-3);
}

TEST(Grid, LogGridEndpoints) {
  const auto g = log_grid(0.01, 100, 5);
  EXPECT_EQ(g.front(), 0.01);
  EXPECT_EQ(g.back(), 100);
  EXPECT_NEAR(g[2], 1.0, 1e-15);
  EXPECT_EQ(default_cm_grid().size(), 25u);
}
