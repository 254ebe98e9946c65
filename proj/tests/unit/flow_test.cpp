#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "airyflow/errors.hpp"
#include "airyflow/flow.hpp"

using namespace airyflow;

namespace {

constexpr double kAi0 = 0.355028053887817239260063186004;
constexpr double kBi0 = 0.614926627446000735150922369094;
// −2·Ai'(0)/Ai(0) and its Bi counterpart, 30-digit reference.
constexpr double kLogDerivative0 = 1.45802226589445396283727252941;

double rel(double value, double reference) { return std::fabs(value - reference) / std::fabs(reference); }

}  // namespace

TEST_CASE("derive_constants by direct substitution") {
  const RiccatiConstants r1 = derive_constants(FlowParams{1.0, -2.0, 0.0, 1.0}, 0.0);
  CHECK(r1.a == -1.0);
  CHECK(r1.b == 0.0);

  const RiccatiConstants r2 = derive_constants(FlowParams{0.5, -1.0, 1.0, 1.0}, 1.0);
  CHECK(r2.a == -4.0);
  CHECK(r2.b == 2.0);
  CHECK(r2.c == 1.0);
}

TEST_CASE("derive_constants rejects a >= 0") {
  try {
    derive_constants(FlowParams{1.0, 1.0, 0.0, 1.0}, 0.0);
    FAIL("expected ModelInvalid");
  } catch (const DegenerateModel&) {
    FAIL("a > 0 is not the degenerate case");
  } catch (const ModelInvalid& e) {
    CHECK(e.a() == 0.5);
  }
  CHECK_THROWS_AS(derive_constants(FlowParams{1.0, 0.7, 0.7, 1.0}, 0.0), DegenerateModel);
  CHECK_THROWS_AS(derive_constants(FlowParams{0.0, -1.0, 0.0, 1.0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(derive_constants(FlowParams{1.0, -1.0, 0.0, -1.0}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(derive_constants(FlowParams{1.0, NAN, 0.0, 1.0}, 0.0), InvalidArgument);
}

TEST_CASE("map_t") {
  CHECK(map_t(3.0, SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}) == 3.0);
  CHECK(map_t(0.0, SolutionConstants{-1.0, 2.0, 0.0, 1.0, 0.0}) == -2.0);
  CHECK(map_t(1.0, SolutionConstants{-8.0, 0.0, 0.0, 1.0, 0.0}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(map_t(0.0, SolutionConstants{0.5, 0.0, 0.0, 1.0, 0.0}), InvalidArgument);
}

TEST_CASE("denominator_z combines Ai and Bi") {
  CHECK(rel(denominator_z(0.0, SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}), kAi0) < 1e-15);
  CHECK(rel(denominator_z(1.0, SolutionConstants{-1.0, 0.0, 0.0, 0.0, 1.0}), 1.20742359495287125943637881703) <
        1e-13);
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(rel(denominator_z(0.0, SolutionConstants{-1.0, 0.0, 0.0, h, h}), 0.685861532614779458909525993006) < 1e-15);
  CHECK(rel(denominator_z(0.0, SolutionConstants{-1.0, 0.0, 0.0, h, h}), (kAi0 + kBi0) * h) < 1e-15);
}

TEST_CASE("exact_u1 is the logarithmic derivative of z") {
  const FlowParams params{1.0, -2.0, 0.0, 1.0};
  CHECK(rel(exact_u1(0.0, params, SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}), kLogDerivative0) < 1e-15);
  CHECK(rel(exact_u1(0.0, params, SolutionConstants{-1.0, 0.0, 0.0, 0.0, 1.0}), -kLogDerivative0) < 1e-15);
}

TEST_CASE("exact_u1 raises a pole error at a zero of z") {
  const FlowParams params{1.0, -2.0, 0.0, 1.0};
  const SolutionConstants ai_only{-1.0, 0.0, 0.0, 1.0, 0.0};
  const double ai_zero = -2.33810741045976703849;
  try {
    exact_u1(ai_zero, params, ai_only);
    FAIL("expected PoleError");
  } catch (const PoleError& e) {
    CHECK(e.s() == ai_zero);
    REQUIRE(e.nearest_pole().has_value());
    CHECK(std::fabs(*e.nearest_pole() - ai_zero) < 1e-11);
  }
  CHECK_NOTHROW(exact_u1(ai_zero + 1e-6, params, ai_only));
}

TEST_CASE("exact_u1_derivative from the Riccati right-hand side") {
  const FlowParams params{1.0, -2.0, 0.0, 1.0};
  const SolutionConstants ai_only{-1.0, 0.0, 0.0, 1.0, 0.0};
  CHECK(rel(exact_u1_derivative(0.0, params, ai_only), 1.06291446392199890573424986557) < 1e-14);

  // z'(1) = 0 makes u1(1) = 0, so u̇1(1) = (grad_term − f1)·1/ν = −2.
  const AiryQuartet q1 = airy_eval(1.0);
  const SolutionConstants flat_at_one{-1.0, 0.0, 0.0, q1.bi_prime, -q1.ai_prime};
  CHECK(std::fabs(exact_u1(1.0, params, flat_at_one)) < 1e-14);
  CHECK(exact_u1_derivative(1.0, params, flat_at_one) == doctest::Approx(-2.0).epsilon(1e-13));

  for (double s = 0.0; s <= 1.0; s += 0.05) {
    const double h = 1e-5;
    const double fd = (exact_u1(s + h, params, ai_only) - exact_u1(s - h, params, ai_only)) / (2 * h);
    CHECK(std::fabs(fd - exact_u1_derivative(s, params, ai_only)) < 1e-8);
    const double fd2 = (exact_u1_derivative(s + h, params, ai_only) - exact_u1_derivative(s - h, params, ai_only)) /
                       (2 * h);
    CHECK(std::fabs(fd2 - exact_u1_second_derivative(s, params, ai_only)) < 1e-8);
  }
}

TEST_CASE("Riccati residual of the closed form over random parameters") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const FlowParams p{0.3 + 2 * unit(rng), -3 * unit(rng) - 0.1, unit(rng), 0.5 + 2 * unit(rng)};
    const RiccatiConstants r = derive_constants(p, 4 * unit(rng) - 2);
    const SolutionConstants sol = SolutionConstants::from(r, unit(rng) - 0.5, unit(rng) - 0.5).normalized();
    if (!find_poles(sol, -0.5, p.length + 0.5).empty()) continue;
    ++checked;
    for (double s = 0.0; s <= p.length; s += p.length / 50) {
      const double h = 1e-5;
      const double u = exact_u1(s, p, sol);
      const double fd = (exact_u1(s + h, p, sol) - exact_u1(s - h, p, sol)) / (2 * h);
      const double rhs = u * u / (2 * p.nu) + (p.grad_term - p.f1) * s / p.nu + sol.c / p.nu;
      CHECK(std::fabs(fd - rhs) <= 1e-6 * std::max(1.0, std::fabs(rhs)));
    }
  }
  CHECK(checked > 5);
}

TEST_CASE("u1 is invariant under rescaling (c1, c2)") {
  const FlowParams p{0.8, -1.3, 0.4, 2.0};
  const SolutionConstants base = SolutionConstants::from(derive_constants(p, 0.3), 0.6, 0.8);
  for (double lambda : {-3.0, 0.5, 7.0}) {
    SolutionConstants scaled = base;
    scaled.c1 *= lambda;
    scaled.c2 *= lambda;
    for (double s = 0.0; s <= 2.0; s += 0.1) {
      CHECK(rel(exact_u1(s, p, scaled), exact_u1(s, p, base)) <= 1e-14);
    }
  }
}

TEST_CASE("normalized picks unit norm with a positive leading coefficient") {
  const SolutionConstants n = SolutionConstants{-1.0, 0.0, 0.0, -3.0, 4.0}.normalized();
  CHECK(n.c1 == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(n.c2 == doctest::Approx(-0.8).epsilon(1e-15));
  const SolutionConstants m = SolutionConstants{-1.0, 0.0, 0.0, 0.0, -2.0}.normalized();
  CHECK(m.c1 == 0.0);
  CHECK(m.c2 == 1.0);
  CHECK_THROWS_AS((SolutionConstants{-1.0, 0.0, 0.0, 0.0, 0.0}.normalized()), DegenerateCoefficients);
}

TEST_CASE("find_poles locates zeros of Ai and Bi") {
  const auto ai_poles = find_poles(SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}, -3.0, 0.0);
  REQUIRE(ai_poles.size() == 1);
  CHECK(std::fabs(ai_poles[0] - -2.33810741045976703849) < 1e-11);

  const auto bi_poles = find_poles(SolutionConstants{-1.0, 0.0, 0.0, 0.0, 1.0}, -2.0, 0.0);
  REQUIRE(bi_poles.size() == 1);
  CHECK(std::fabs(bi_poles[0] - -1.17371322270912792492) < 1e-11);

  CHECK(find_poles(SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}, 0.0, 5.0).empty());
  CHECK(find_poles(SolutionConstants{-1.0, 0.0, 0.0, 0.0, 1.0}, 0.0, 200.0).empty());
  CHECK_THROWS_AS(find_poles(SolutionConstants{-1.0, 0.0, 0.0, 1.0, 0.0}, 1.0, 0.0), InvalidArgument);
}

TEST_CASE("find_poles returns ascending zeros on an oscillatory stretch") {
  const SolutionConstants sol = SolutionConstants{-1.0, 0.0, 0.0, 0.6, 0.8};
  const auto poles = find_poles(sol, -20.0, 0.0);
  REQUIRE(poles.size() > 10);
  for (std::size_t k = 1; k < poles.size(); ++k) CHECK(poles[k] > poles[k - 1]);
  for (double p : poles) {
    const double slope = std::fabs(sol.c1 * airy_eval(p).ai_prime + sol.c2 * airy_eval(p).bi_prime);
    CHECK(std::fabs(denominator_z(p, sol)) <= 1e-11 * (1 + std::fabs(p)) * slope + 1e-15);
  }
}

TEST_CASE("pole error only where find_poles sees a sign change") {
  const FlowParams p{1.0, -2.0, 0.0, 1.0};
  const SolutionConstants sol{-1.0, 0.0, 0.0, 0.6, 0.8};
  const auto poles = find_poles(sol, -10.0, 0.0);
  for (double pole : poles) {
    CHECK_THROWS_AS(exact_u1(pole, p, sol), PoleError);
    CHECK_NOTHROW(exact_u1(pole - 1e-9, p, sol));
    CHECK_NOTHROW(exact_u1(pole + 1e-9, p, sol));
  }
  for (double s = -10.0; s <= 0.0; s += 1e-3) {
    bool raised = false;
    try {
      exact_u1(s, p, sol);
    } catch (const PoleError&) {
      raised = true;
    }
    if (raised) {
      bool near = false;
      for (double pole : poles) near = near || std::fabs(pole - s) < 1e-3;
      CHECK(near);
    }
  }
}
