#include "airyflow/bvp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "airyflow/errors.hpp"

namespace airyflow {
namespace {

struct Shot {
  bool valid = false;
  double residual = std::numeric_limits<double>::quiet_NaN();
};

class Shooter {
 public:
  Shooter(double u10, double u1L, const FlowParams& params) : u10_(u10), u1L_(u1L), params_(params) {}

  SolutionConstants constants(double c) const {
    const RiccatiConstants r = derive_constants(params_, c);
    const auto [c1, c2] = coefficients_from_u0(u10_, params_, r);
    return SolutionConstants::from(r, c1, c2);
  }

  // Endpoint residual u1(L) − u1L; invalid when z vanishes somewhere in [0, L].
  Shot operator()(double c) const {
    const SolutionConstants sol = constants(c);
    if (!find_poles(sol, 0.0, params_.length).empty()) return {};
    try {
      return Shot{true, exact_u1(params_.length, params_, sol) - u1L_};
    } catch (const PoleError&) {
      return {};
    } catch (const OverflowError&) {
      return {};
    }
  }

  double tolerance() const { return 1e-9 * (1.0 + std::fabs(u1L_)); }

 private:
  double u10_;
  double u1L_;
  FlowParams params_;
};

int sign(double x) { return (x > 0) - (x < 0); }

}  // namespace

double c_from_initial(double u10, double u1dot0, double nu) {
  if (!(nu > 0)) throw InvalidArgument("c_from_initial needs nu > 0");
  return nu * u1dot0 - 0.5 * u10 * u10;
}

std::pair<double, double> coefficients_from_u0(double u10, const FlowParams& params, const RiccatiConstants& consts) {
  const AiryQuartet q = airy_eval(map_t(0.0, consts));
  const double k = 2.0 * params.nu * std::cbrt(-consts.a);
  // u1(0) = u10 ⇔ c1·(k·Ai' + u10·Ai) + c2·(k·Bi' + u10·Bi) = 0
  const double ai_bracket = k * q.ai_prime + u10 * q.ai;
  const double bi_bracket = k * q.bi_prime + u10 * q.bi;
  if (std::fabs(ai_bracket) < 1e-300 && std::fabs(bi_bracket) < 1e-300) {
    throw DegenerateCoefficients("u1(0) condition leaves (c1, c2) undetermined");
  }
  const SolutionConstants mix = SolutionConstants::from(consts, -bi_bracket, ai_bracket).normalized();
  return {mix.c1, mix.c2};
}

SolutionConstants solve_ivp(const InitialData& data, const FlowParams& params) {
  params.validate();
  if (!std::isfinite(data.u10) || !std::isfinite(data.u1dot0)) {
    throw InvalidArgument("initial data must be finite");
  }
  const RiccatiConstants r = derive_constants(params, c_from_initial(data.u10, data.u1dot0, params.nu));
  const auto [c1, c2] = coefficients_from_u0(data.u10, params, r);
  const SolutionConstants sol = SolutionConstants::from(r, c1, c2);
  exact_u1(0.0, params, sol);  // throws PoleError if z(0) vanished
  return sol;
}

std::pair<double, double> default_c_bracket(double u10, double u1L, const FlowParams& params) {
  const double v = std::max({std::fabs(u10), std::fabs(u1L), 1.0});
  const double half = 10.0 * params.nu * v * v;
  return {-half, half};
}

BvpResult solve_bvp(double u10, double u1L, const FlowParams& params, std::pair<double, double> c_bracket) {
  params.validate();
  const auto [c_lo, c_hi] = c_bracket;
  if (!std::isfinite(u10) || !std::isfinite(u1L)) throw InvalidArgument("boundary data must be finite");
  if (!std::isfinite(c_lo) || !std::isfinite(c_hi) || !(c_lo < c_hi)) {
    throw InvalidArgument("c bracket needs finite c_lo < c_hi");
  }
  derive_constants(params, 0.0);  // a does not depend on c

  const Shooter shoot(u10, u1L, params);
  std::vector<double> cs(kShootingSamples);
  std::vector<Shot> shots(kShootingSamples);
  for (std::size_t i = 0; i < kShootingSamples; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(kShootingSamples - 1);
    cs[i] = std::lerp(c_lo, c_hi, w);
    shots[i] = shoot(cs[i]);
  }

  BvpResult result;
  result.excluded = static_cast<std::size_t>(
      std::count_if(shots.begin(), shots.end(), [](const Shot& s) { return !s.valid; }));
  if (result.excluded == kShootingSamples) {
    throw PoleCrossing("every c in the bracket puts a pole of z inside [0, L]", result.excluded);
  }

  for (std::size_t i = 0; i < kShootingSamples; ++i) {
    if (shots[i].valid && shots[i].residual == 0.0) result.roots.push_back(cs[i]);
    if (i + 1 == kShootingSamples) break;
    const Shot& left = shots[i];
    const Shot& right = shots[i + 1];
    if (!left.valid || !right.valid || sign(left.residual) * sign(right.residual) >= 0) continue;

    double lo = cs[i], hi = cs[i + 1];
    double r_lo = left.residual, r_hi = right.residual;
    bool broken = false;
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const Shot m = shoot(mid);
      if (!m.valid) {
        broken = true;
        break;
      }
      if (m.residual == 0.0) {
        lo = hi = mid;
        r_lo = r_hi = 0.0;
        break;
      }
      if (sign(m.residual) == sign(r_lo)) {
        lo = mid;
        r_lo = m.residual;
      } else {
        hi = mid;
        r_hi = m.residual;
      }
    }
    const double root = std::fabs(r_lo) <= std::fabs(r_hi) ? lo : hi;
    if (broken || std::min(std::fabs(r_lo), std::fabs(r_hi)) > shoot.tolerance()) {
      ++result.excluded;  // sign flip through a pole at L, not a root
      continue;
    }
    result.roots.push_back(root);
  }

  if (result.roots.empty()) {
    throw NoSignChange("endpoint residual u1(L) - u1L has no sign change over the c bracket", shots.front().residual,
                       shots.back().residual);
  }
  std::sort(result.roots.begin(), result.roots.end());
  const double best = *std::min_element(result.roots.begin(), result.roots.end(),
                                        [](double p, double q) { return std::fabs(p) < std::fabs(q); });
  result.solution = shoot.constants(best);
  result.residual = exact_u1(params.length, params, result.solution) - u1L;
  result.u1dot0 = (best + 0.5 * u10 * u10) / params.nu;
  return result;
}

}  // namespace airyflow
