#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "airyflow/bvp.hpp"
#include "airyflow/errors.hpp"
#include "airyflow/verify.hpp"

using namespace airyflow;

namespace {

struct Case {
  FlowParams params{1.0, -1.2, 0.3, 1.5};
  InitialData data{0.4, -0.3, std::nullopt};
  SolutionConstants consts = solve_ivp(data, params);
};

FieldModel exact_model(const Case& c, StreamlineFamily family) {
  return FieldModel::shared(std::move(family), std::make_shared<ExactProfile>(c.params, c.consts),
                            AffinePressure{1.0, c.params.grad_term});
}

}  // namespace

TEST_CASE("RK4 on the Riccati form converges to the closed form at fourth order") {
  const Case c;
  const double coarse = max_deviation(integrate_riccati(c.params, c.consts.c, c.data.u10, 1.5, 0.02), c.params, c.consts);
  const double fine = max_deviation(integrate_riccati(c.params, c.consts.c, c.data.u10, 1.5, 0.01), c.params, c.consts);
  CHECK(coarse / fine >= 12.0);
  CHECK(coarse / fine <= 20.0);
  CHECK(max_deviation(integrate_riccati(c.params, c.consts.c, c.data.u10, 1.5, 1e-4), c.params, c.consts) <= 1e-9);
}

TEST_CASE("first RK4 stage equals the Riccati slope at the origin") {
  // One step of size h from u10: the stage-1 slope is c/ν + u10²/(2ν); the
  // full step agrees with the Taylor polynomial to O(h^5).
  const FlowParams p{2.0, -1.0, 0.0, 1.0};
  const double c = 0.5, u10 = 0.3, h = 1e-3;
  const Trajectory t = integrate_riccati(p, c, u10, h, h);
  REQUIRE(t.samples.size() == 2);
  const double slope = c / p.nu + u10 * u10 / (2 * p.nu);
  CHECK(std::fabs((t.samples[1].u1 - u10) / h - slope) < 1e-3);
}

TEST_CASE("trajectories use a uniform grid with a shorter last step") {
  const FlowParams p{1.0, -1.0, 0.0, 1.0};
  const Trajectory t = integrate_riccati(p, 0.0, 0.0, 0.25, 0.1);
  REQUIRE(t.samples.size() == 4);
  CHECK(t.samples[1].s == 0.1);
  CHECK(t.samples[2].s == 0.2);
  CHECK(t.samples[3].s == 0.25);
  CHECK(!t.truncated_at_pole);
}

TEST_CASE("zero-span integration keeps the initial sample only") {
  const Trajectory t = integrate_second_order(FlowParams{1.0, -1.0, 0.0, 1.0}, 0.7, 0.1, 0.0, 0.01);
  REQUIRE(t.samples.size() == 1);
  CHECK(t.samples[0].s == 0.0);
  CHECK(t.samples[0].u1 == 0.7);
}

TEST_CASE("invalid spans and steps") {
  const FlowParams p{1.0, -1.0, 0.0, 1.0};
  CHECK_THROWS_AS(integrate_riccati(p, 0.0, 0.0, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(integrate_riccati(p, 0.0, 0.0, -1.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(integrate_second_order(p, 0.0, 0.0, 1.0, -0.1), InvalidArgument);
}

TEST_CASE("Riccati and second-order forms agree when linked through c") {
  const Case c;
  const Trajectory first = integrate_riccati(c.params, c.consts.c, c.data.u10, 1.5, 1e-4);
  const Trajectory second = integrate_second_order(c.params, c.data.u10, c.data.u1dot0, 1.5, 1e-4);
  CHECK(max_deviation(first, second) <= 1e-8);
  CHECK(max_deviation(second, c.params, c.consts) <= 1e-8);
}

TEST_CASE("integration stops before a pole of the closed form") {
  const FlowParams p{1.0, -2.0, 0.0, 1.0};
  const SolutionConstants sol = SolutionConstants::from(derive_constants(p, 6.0), 1.0, 0.0);  // t = s − 3
  const auto poles = find_poles(sol, 0.0, 1.0);
  REQUIRE(poles.size() == 1);
  const double u10 = exact_u1(0.0, p, sol);
  const double step = 1e-3;
  const Trajectory t = integrate_riccati(p, sol.c, u10, 1.0, step);
  REQUIRE(t.truncated_at_pole);
  CHECK(t.samples.back().s < poles[0]);
  CHECK(t.samples.back().s + step > poles[0]);
  // The discrete pole differs slightly from the exact one.
  CHECK(std::fabs(t.pole_location - poles[0]) < step / 100);
  const Trajectory second = integrate_second_order(p, u10, exact_u1_derivative(0.0, p, sol), 1.0, step);
  REQUIRE(second.truncated_at_pole);
  CHECK(second.samples.back().s < poles[0]);
  CHECK(second.samples.back().s + step > poles[0]);
}

TEST_CASE("Prop 1 holds for a constant field") {
  const FieldModel model = FieldModel::shared(StreamlineFamily::straight(0.3),
                                              std::make_shared<PolynomialProfile>(std::vector<double>{2.0}));
  const SampledField f = reconstruct_field(model, GridSpec{0.0, 1.0, 0.0, 1.0, 6, 6});
  CHECK(check_prop1(f, model, 1e-3) < 1e-12);
  const LaplacianErrors lap = check_prop2_prop3(
      f, FieldModel{model.family, model.profile, AffinePressure{0.0, -1.0}}, 1e-3);
  CHECK(lap.v1 <= 1e-12);
  CHECK(lap.pressure <= 1e-12);
}

TEST_CASE("Prop 1 is kinematic: a non-solution profile satisfies it too") {
  const FieldModel model = FieldModel::shared(StreamlineFamily::sinusoidal(0.1, std::numbers::pi),
                                              std::make_shared<PolynomialProfile>(std::vector<double>{0.0, 1.0}));
  const SampledField f = reconstruct_field(model, GridSpec{0.1, 1.4, -0.5, 0.5, 8, 8});
  CHECK(check_prop1(f, model, 1e-3) <= 1e-5);
}

TEST_CASE("Prop 1-3 on the exact profile decay at second order") {
  const Case c;
  const FieldModel model = exact_model(c, StreamlineFamily::sinusoidal(0.1, std::numbers::pi));
  const SampledField f = reconstruct_field(model, GridSpec{0.1, 1.4, -0.5, 0.5, 9, 9}, c.params.length);
  double e1_prev = 0, e2_prev = 0;
  for (double h : {1e-2, 1e-3, 1e-4}) {
    const double e1 = check_prop1(f, model, h);
    const LaplacianErrors lap = check_prop2_prop3(f, model, h);
    CHECK(lap.pressure <= 1e-10);
    if (h == 1e-3) {
      CHECK(e1 <= 1e-5);
      CHECK(lap.v1 <= 1e-4);
    }
    if (e1_prev > 0) {
      CHECK(std::log10(e1_prev / e1) == doctest::Approx(2.0).epsilon(0.15));
      CHECK(std::log10(e2_prev / lap.v1) == doctest::Approx(2.0).epsilon(0.15));
    }
    e1_prev = e1;
    e2_prev = lap.v1;
  }
}

TEST_CASE("proposition checks need a usable grid") {
  const Case c;
  const FieldModel model = exact_model(c, StreamlineFamily::straight(0.0));
  const SampledField small = reconstruct_field(model, GridSpec{0.1, 1.4, 0.0, 1.0, 3, 3});
  CHECK_THROWS_AS(check_prop1(small, model, 1e-3), GridTooCoarse);
  const SampledField ok = reconstruct_field(model, GridSpec{0.1, 1.4, 0.0, 1.0, 5, 5});
  CHECK_THROWS_AS(check_prop1(ok, model, 0.2), InvalidArgument);
  const FieldModel no_pressure = FieldModel::shared(model.family, std::make_shared<ExactProfile>(c.params, c.consts));
  CHECK_THROWS_AS(check_prop2_prop3(ok, no_pressure, 1e-3), InvalidArgument);
}

TEST_CASE("continuity bracket") {
  CHECK(continuity_bracket(StreamlineFamily::straight(0.0), 0.0, 0.5) == 0.0);
  CHECK(continuity_bracket(StreamlineFamily::straight(2.5), 1.0, 0.5) == 0.0);
  CHECK(continuity_bracket(StreamlineFamily::sinusoidal(0.3, 2.0), 0.0, 0.7) == 0.0);
  // φ1 = s, φ2 = s², ∂g/∂y = 1.
  CHECK(continuity_bracket(StreamlineGeometry{1.0, 0.0, 2 * 0.4, 2.0, 1.0}) == 2.0);
  CHECK_THROWS_AS(continuity_bracket(StreamlineGeometry{0.0, 0.0, 1.0, 1.0, 1.0}), InvalidArgument);
}

TEST_CASE("oracle suite passes and is reproducible") {
  const auto report = run_oracle_suite(1);
  CHECK(report.size() >= 15);
  for (const CheckResult& r : report) {
    INFO(r.line());
    CHECK(r.passed());
    CHECK(r.line().rfind("PASS " + r.name + " max_residual=", 0) == 0);
  }
  const auto again = run_oracle_suite(1);
  REQUIRE(again.size() == report.size());
  for (std::size_t k = 0; k < report.size(); ++k) CHECK(again[k].line() == report[k].line());
}
