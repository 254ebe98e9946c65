#include "airyflow/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "airyflow/bvp.hpp"
#include "airyflow/errors.hpp"

namespace airyflow {
namespace {

void check_span(double s_end, double step) {
  if (!(step > 0) || !std::isfinite(step)) throw InvalidArgument("integration step must be > 0");
  if (!(s_end >= 0) || !std::isfinite(s_end)) throw InvalidArgument("integration span must be finite and >= 0");
}

std::size_t step_count(double s_end, double step) {
  return static_cast<std::size_t>(std::ceil(s_end / step * (1.0 - 1e-12)));
}

template <std::size_t N, class Rhs>
std::array<double, N> rk4_step(const std::array<double, N>& y, double s, double h, Rhs& rhs) {
  auto shifted = [&](const std::array<double, N>& d, double w) {
    std::array<double, N> r = y;
    for (std::size_t i = 0; i < N; ++i) r[i] += w * d[i];
    return r;
  };
  const auto k1 = rhs(s, y);
  const auto k2 = rhs(s + 0.5 * h, shifted(k1, 0.5 * h));
  const auto k3 = rhs(s + 0.5 * h, shifted(k2, 0.5 * h));
  const auto k4 = rhs(s + h, shifted(k3, h));
  std::array<double, N> out = y;
  for (std::size_t i = 0; i < N; ++i) out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

template <std::size_t N>
bool blown_up(const std::array<double, N>& y) {
  return !std::isfinite(y[0]) || std::fabs(y[0]) > kBlowUpThreshold;
}

// A fixed step can jump clean over a simple pole and land on a finite value.
// Each step is checked against two half steps; on gross disagreement it is
// subdivided, so a pole inside the step drives u1 past the threshold instead.
// Smooth steps return the plain RK4 result. Returns false on blow-up, with s
// set to where it happened.
template <std::size_t N, class Rhs>
bool advance(std::array<double, N>& y, double& s, double h, Rhs& rhs, int depth) {
  const auto full = rk4_step(y, s, h, rhs);
  const auto mid = rk4_step(y, s, 0.5 * h, rhs);
  const auto half = rk4_step(mid, s + 0.5 * h, 0.5 * h, rhs);
  bool agree = !blown_up(half);
  for (std::size_t i = 0; agree && i < N; ++i) {
    agree = std::isfinite(full[i]) && std::fabs(full[i] - half[i]) <= 1e-3 * (1.0 + std::fabs(half[i]));
  }
  if (agree || depth >= 60) {
    y = agree ? full : half;
    s += h;
    return !blown_up(y);
  }
  return advance(y, s, 0.5 * h, rhs, depth + 1) && advance(y, s, 0.5 * h, rhs, depth + 1);
}

// Integrates y' = rhs(s, y) with classical RK4; the first component is u1.
template <std::size_t N, class Rhs>
Trajectory rk4(std::array<double, N> y, double s_end, double step, Rhs rhs) {
  Trajectory out;
  out.step = step;
  out.samples.push_back({0.0, y[0]});
  const std::size_t n = step_count(s_end, step);
  double s = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double s_next = k == n ? s_end : static_cast<double>(k) * step;
    double at = s;
    if (!advance(y, at, s_next - s, rhs, 0)) {
      out.truncated_at_pole = true;
      out.pole_location = at;
      break;
    }
    s = s_next;
    out.samples.push_back({s, y[0]});
  }
  return out;
}

struct InteriorPoint {
  const VelocitySample* sample;
  double y0;
};

std::vector<InteriorPoint> interior_points(const SampledField& field, const FieldModel& model, double h) {
  const GridSpec& g = field.grid;
  if (!(h > 0)) throw InvalidArgument("finite-difference step must be > 0");
  const double dx = (g.x_max - g.x_min) / static_cast<double>(g.nx - 1);
  const double dy = (g.y_max - g.y_min) / static_cast<double>(g.ny - 1);
  if (3.0 * h > std::min(dx, dy)) throw InvalidArgument("grid spacing must be at least 3h");
  std::vector<InteriorPoint> points;
  for (std::size_t j = 1; j + 1 < g.ny; ++j) {
    for (std::size_t i = 1; i + 1 < g.nx; ++i) {
      const VelocitySample& v = field.at(i, j);
      if (v.valid) points.push_back({&v, model.family.offset_through(v.x, v.y)});
    }
  }
  if (points.size() < 4) throw GridTooCoarse("need at least 4 valid interior grid points");
  return points;
}

double log_log_slope(const std::vector<double>& hs, const std::vector<double>& errors) {
  double mx = 0, my = 0;
  const auto n = static_cast<double>(hs.size());
  for (std::size_t i = 0; i < hs.size(); ++i) {
    mx += std::log(hs[i]) / n;
    my += std::log(errors[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const double dx = std::log(hs[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

CheckResult result(std::string name, double residual, double tolerance) {
  return CheckResult{std::move(name), std::isnan(residual) ? INFINITY : residual, tolerance};
}

}  // namespace

Trajectory integrate_riccati(const FlowParams& params, double c, double u10, double s_end, double step) {
  params.validate();
  check_span(s_end, step);
  const double inv_nu = 1.0 / params.nu;
  const double drive = params.grad_term - params.f1;
  return rk4<1>({u10}, s_end, step, [&](double s, const std::array<double, 1>& y) {
    return std::array<double, 1>{0.5 * inv_nu * y[0] * y[0] + drive * s * inv_nu + c * inv_nu};
  });
}

Trajectory integrate_second_order(const FlowParams& params, double u10, double u1dot0, double s_end, double step) {
  params.validate();
  check_span(s_end, step);
  const double forcing = params.grad_term - params.f1;
  return rk4<2>({u10, u1dot0}, s_end, step, [&](double, const std::array<double, 2>& y) {
    return std::array<double, 2>{y[1], (y[0] * y[1] + forcing) / params.nu};
  });
}

double max_deviation(const Trajectory& trajectory, const FlowParams& params, const SolutionConstants& consts) {
  double worst = 0.0;
  for (const auto& sample : trajectory.samples) {
    worst = std::max(worst, std::fabs(sample.u1 - exact_u1(sample.s, params, consts)));
  }
  return worst;
}

double max_deviation(const Trajectory& a, const Trajectory& b) {
  const std::size_t n = std::min(a.samples.size(), b.samples.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::fabs(a.samples[k].u1 - b.samples[k].u1));
  return worst;
}

// Stencils are sampled in long double: at h = 1e-4 a 5-point Laplacian of
// double-rounded values carries ~1e-8 of noise, swamping the O(h²) truncation.
double check_prop1(const SampledField& field, const FieldModel& model, double h) {
  using Real = long double;
  const Real step = h;
  auto v1 = [&model](Real x, Real y) { return model.velocity_extended(x, y).first; };
  double worst = 0.0;
  for (const InteriorPoint& p : interior_points(field, model, h)) {
    const VelocitySample& v = *p.sample;
    const Real x = v.x, y = v.y;
    const auto [u1, u2] = model.velocity_extended(x, y);
    const Real dv1_dx = (v1(x + step, y) - v1(x - step, y)) / (2 * step);
    const Real dv1_dy = (v1(x, y + step) - v1(x, y - step)) / (2 * step);
    const Real convective = u1 * dv1_dx + u2 * dv1_dy;
    const auto profile = model.profile(p.y0);
    const Real phi1_dot = 1;
    const Real expected = static_cast<Real>(profile->u1(v.s)) * profile->u1_dot(v.s) / phi1_dot;
    worst = std::max(worst, static_cast<double>(std::fabs(convective - expected)));
  }
  return worst;
}

LaplacianErrors check_prop2_prop3(const SampledField& field, const FieldModel& model, double h) {
  if (!model.pressure) throw InvalidArgument("pressure check needs a model with an affine pressure");
  using Real = long double;
  const AffinePressure& pressure = *model.pressure;
  const Real step = h;
  const Real h2 = step * step;
  auto v1 = [&model](Real x, Real y) { return model.velocity_extended(x, y).first; };
  auto p = [&pressure](Real x, Real /*y*/) { return pressure.at_extended(x); };
  auto laplacian = [&](auto&& f, Real x, Real y) {
    return (f(x + step, y) + f(x - step, y) + f(x, y + step) + f(x, y - step) - 4 * f(x, y)) / h2;
  };

  LaplacianErrors errors;
  for (const InteriorPoint& point : interior_points(field, model, h)) {
    const VelocitySample& v = *point.sample;
    // g(x, y) = x: ∇g·∇g = 1 and Δg = 0.
    const Real grad_g_sq = 1, lap_g = 0;
    const auto profile = model.profile(point.y0);
    const Real expected_v1 = grad_g_sq * profile->u1_ddot(v.s) + lap_g * profile->u1_dot(v.s);
    errors.v1 = std::max(errors.v1, static_cast<double>(std::fabs(laplacian(v1, v.x, v.y) - expected_v1)));
    const Real expected_p = pressure.qdot * lap_g;
    errors.pressure =
        std::max(errors.pressure, static_cast<double>(std::fabs(laplacian(p, v.x, v.y) - expected_p)));
  }
  return errors;
}

double continuity_bracket(const StreamlineGeometry& g) {
  if (g.phi1_dot == 0.0) throw InvalidArgument("continuity bracket needs a nonzero phi1'");
  return (g.phi2_ddot - g.phi2_dot / g.phi1_dot * g.phi1_ddot) * g.dg_dy;
}

double continuity_bracket(const StreamlineFamily& family, double /*y0*/, double s) {
  // Translates have φ1 = s and g(x, y) = x, hence ∂g/∂y = 0.
  return continuity_bracket(StreamlineGeometry{1.0, 0.0, family.phi2_dot(s), family.phi2_ddot(s), 0.0});
}

std::string CheckResult::line() const {
  char buf[64];
  std::string out = passed() ? "PASS " : "FAIL ";
  out += name;
  std::snprintf(buf, sizeof buf, " max_residual=%.17g", max_residual);
  out += buf;
  std::snprintf(buf, sizeof buf, " tol=%.17g", tolerance);
  out += buf;
  return out;
}

RandomCase draw_random_case(std::mt19937_64& rng, double margin) {
  auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  for (;;) {
    RandomCase rc;
    rc.params = FlowParams{uniform(0.5, 2.0), uniform(-2.0, -0.1), uniform(0.0, 1.0), uniform(0.5, 2.0)};
    rc.u10 = uniform(-1.0, 1.0);
    rc.u1dot0 = uniform(-1.0, 1.0);
    try {
      rc.consts = solve_ivp(InitialData{rc.u10, rc.u1dot0, std::nullopt}, rc.params);
    } catch (const Error&) {
      continue;
    }
    if (!find_poles(rc.consts, -margin, rc.params.length + margin).empty()) continue;
    bool tame = true;
    for (int k = 0; k <= 64 && tame; ++k) {
      tame = std::fabs(exact_u1(rc.params.length * k / 64.0, rc.params, rc.consts)) <= 50.0;
    }
    if (tame) return rc;
  }
}

std::vector<CheckResult> run_oracle_suite(std::uint64_t seed) {
  std::vector<CheckResult> report;
  std::mt19937_64 rng(seed);

  {
    double worst = 0.0;
    for (int k = -5000; k <= 5000; ++k) {
      worst = std::max(worst, std::fabs(airy_eval(k * 0.01).wronskian() - std::numbers::inv_pi));
    }
    report.push_back(result("airy_wronskian", worst, 1e-10));
  }
  {
    const double h = 1e-5;
    double worst = 0.0;
    for (int k = -400; k <= 100; ++k) {
      const double t = k * 0.05;
      const AiryQuartet q = airy_eval(t), lo = airy_eval(t - h), hi = airy_eval(t + h);
      worst = std::max({worst, std::fabs((hi.ai - lo.ai) / (2 * h) - q.ai_prime),
                        std::fabs((hi.bi - lo.bi) / (2 * h) - q.bi_prime)});
    }
    report.push_back(result("airy_derivative_fd", worst, 1e-7));
  }
  {
    double worst = 0.0;
    for (int k = -160; k <= 60; ++k) {
      const double t = k * 0.05;
      const auto [r_ai, r_bi] = airy_ode_residual(t, airy_eval(t), 1e-4);
      worst = std::max({worst, std::fabs(r_ai), std::fabs(r_bi)});
    }
    report.push_back(result("airy_ode_residual", worst, 1e-6));
  }

  std::vector<RandomCase> cases;
  for (int k = 0; k < 8; ++k) cases.push_back(draw_random_case(rng));

  {
    double first = 0.0, second = 0.0;
    for (const RandomCase& rc : cases) {
      const FlowParams& p = rc.params;
      for (int k = 0; k <= 200; ++k) {
        const double s = p.length * k / 200.0;
        const double h1 = std::max(1e-5, 1e-5 * std::fabs(s));
        const double du = (exact_u1(s + h1, p, rc.consts) - exact_u1(s - h1, p, rc.consts)) / (2 * h1);
        const double u = exact_u1(s, p, rc.consts);
        const double drive = p.grad_term - p.f1;
        first = std::max(first, std::fabs(du - u * u / (2 * p.nu) - drive * s / p.nu - rc.consts.c / p.nu));

        const double h2 = 1e-4;
        const double up = exact_u1(s + h2, p, rc.consts), um = exact_u1(s - h2, p, rc.consts);
        const double du2 = (up - um) / (2 * h2);
        const double ddu = (up - 2 * u + um) / (h2 * h2);
        second = std::max(second, std::fabs(u * du2 - p.f1 + p.grad_term - p.nu * ddu));
      }
    }
    report.push_back(result("riccati_residual", first, 1e-6));
    report.push_back(result("second_order_residual", second, 1e-4));
  }
  {
    double closed = 0.0, forms = 0.0, order_gap = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const RandomCase& rc = cases[k];
      const FlowParams& p = rc.params;
      closed = std::max(closed, max_deviation(integrate_riccati(p, rc.consts.c, rc.u10, p.length, 1e-5), p, rc.consts));
      forms = std::max(forms, max_deviation(integrate_riccati(p, rc.consts.c, rc.u10, p.length, 1e-4),
                                            integrate_second_order(p, rc.u10, rc.u1dot0, p.length, 1e-4)));
      const double coarse = max_deviation(integrate_riccati(p, rc.consts.c, rc.u10, p.length, 0.02), p, rc.consts);
      const double fine = max_deviation(integrate_riccati(p, rc.consts.c, rc.u10, p.length, 0.01), p, rc.consts);
      order_gap = std::max(order_gap, std::fabs(std::log2(coarse / fine) - 4.0));
    }
    report.push_back(result("rk4_vs_closed_form", closed, 1e-9));
    report.push_back(result("riccati_vs_second_order", forms, 1e-8));
    report.push_back(result("rk4_order", order_gap, 0.3));
  }
  {
    double worst = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
      const RandomCase& rc = cases[k];
      const double u1L = exact_u1(rc.params.length, rc.params, rc.consts);
      const BvpResult bvp = solve_bvp(rc.u10, u1L, rc.params, default_c_bracket(rc.u10, u1L, rc.params));
      worst = std::max(worst, std::fabs(bvp.solution.c - rc.consts.c));
    }
    report.push_back(result("bvp_roundtrip", worst, 1e-8));
  }
  {
    const RandomCase& rc = cases[0];
    const FieldModel model = FieldModel::shared(StreamlineFamily::sinusoidal(0.1, std::numbers::pi),
                                                std::make_shared<ExactProfile>(rc.params, rc.consts),
                                                AffinePressure{1.0, rc.params.grad_term});
    const GridSpec grid{0.1, rc.params.length - 0.1, -0.5, 0.5, 9, 9};
    const SampledField field = reconstruct_field(model, grid, rc.params.length);
    const std::vector<double> hs{1e-2, 1e-3, 1e-4};
    std::vector<double> p1, p2;
    double p3 = 0.0;
    for (double h : hs) {
      p1.push_back(check_prop1(field, model, h));
      const LaplacianErrors lap = check_prop2_prop3(field, model, h);
      p2.push_back(lap.v1);
      p3 = std::max(p3, lap.pressure);
    }
    report.push_back(result("prop1_convective", p1[1], 1e-4));
    report.push_back(result("prop1_order", std::fabs(log_log_slope(hs, p1) - 2.0), 0.3));
    report.push_back(result("prop2_laplacian_v1", p2[1], 1e-4));
    report.push_back(result("prop2_order", std::fabs(log_log_slope(hs, p2) - 2.0), 0.3));
    report.push_back(result("prop3_laplacian_p", p3, 1e-10));

    double bracket = 0.0;
    for (double slope : {0.0, 0.5, -2.0}) {
      for (int k = 0; k <= 10; ++k) {
        bracket = std::max(bracket, std::fabs(continuity_bracket(StreamlineFamily::straight(slope), 0.0, 0.1 * k)));
      }
    }
    report.push_back(result("continuity_straight", bracket, 0.0));

    double mismatches = 0.0;
    for (FieldFormat format : {FieldFormat::csv, FieldFormat::json}) {
      const std::string once = emit(field, format);
      if (emit(parse(once, format), format) != once) mismatches += 1.0;
    }
    report.push_back(result("serialization_roundtrip", mismatches, 0.0));
  }
  return report;
}

}  // namespace airyflow
