#include "airyflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "airyflow/errors.hpp"

namespace airyflow {
namespace {

void require_negative_a(double a) {
  if (!(a < 0)) {
    throw InvalidArgument("solution constants need a < 0 (got a = " + std::to_string(a) + ")");
  }
}

// Sign of z(s). Beyond the Bi overflow threshold Bi dominates, so the sign is
// that of c2 (or c1 when c2 vanishes).
int sign_of_z(double s, const SolutionConstants& consts) {
  try {
    const double z = denominator_z(s, consts);
    return (z > 0) - (z < 0);
  } catch (const OverflowError&) {
    const double lead = consts.c2 != 0.0 ? consts.c2 : consts.c1;
    return (lead > 0) - (lead < 0);
  }
}

std::optional<double> nearest_pole(double s, const SolutionConstants& consts) {
  const double reach = 0.05;
  std::vector<double> poles = find_poles(consts, s - reach, s + reach);
  if (poles.empty()) return std::nullopt;
  return *std::min_element(poles.begin(), poles.end(),
                           [s](double p, double q) { return std::fabs(p - s) < std::fabs(q - s); });
}

}  // namespace

void FlowParams::validate() const {
  if (!std::isfinite(nu) || !std::isfinite(grad_term) || !std::isfinite(f1) || !std::isfinite(length)) {
    throw InvalidArgument("flow parameters must be finite");
  }
  if (!(nu > 0)) throw InvalidArgument("flow parameters need nu > 0");
  if (!(length > 0)) throw InvalidArgument("flow parameters need L > 0");
}

SolutionConstants SolutionConstants::normalized() const {
  const double norm = std::hypot(c1, c2);
  if (!(norm > 0) || !std::isfinite(norm)) {
    throw DegenerateCoefficients("coefficients (c1, c2) must be finite and not both zero");
  }
  const double lead = c1 != 0.0 ? c1 : c2;
  const double scale = (lead > 0 ? 1.0 : -1.0) / norm;
  return SolutionConstants{a, b, c, c1 * scale, c2 * scale};
}

RiccatiConstants derive_constants(const FlowParams& params, double c) {
  params.validate();
  if (!std::isfinite(c)) throw InvalidArgument("Riccati constant c must be finite");
  const double two_nu2 = 2.0 * params.nu * params.nu;
  const double a = (params.grad_term - params.f1) / two_nu2;
  if (a == 0.0) {
    throw DegenerateModel("grad_term == f1 gives a = 0; the Airy solution needs a < 0", a);
  }
  if (a > 0) {
    throw ModelInvalid("a = " + std::to_string(a) +
                           " >= 0; the Airy solution has physical meaning only if a < 0 (grad_term < f1)",
                       a);
  }
  return RiccatiConstants{a, c / two_nu2, c};
}

double map_t(double s, const RiccatiConstants& consts) {
  require_negative_a(consts.a);
  const double root = std::cbrt(-consts.a);
  return -(consts.a * s + consts.b) / (root * root);
}

double map_t(double s, const SolutionConstants& consts) { return map_t(s, consts.riccati()); }

double denominator_z(double s, const SolutionConstants& consts) {
  const AiryQuartet q = airy_eval(map_t(s, consts));
  return consts.c1 * q.ai + consts.c2 * q.bi;
}

namespace {

AiryQuartet airy_at(double t) { return airy_eval(t); }
AiryQuartetExtended airy_at(long double t) { return airy_eval_extended(t); }

template <class Real>
Real u1_closed_form(Real s, const FlowParams& params, const SolutionConstants& consts) {
  require_negative_a(consts.a);
  const Real root = std::cbrt(static_cast<Real>(-consts.a));
  const auto q = airy_at(-(static_cast<Real>(consts.a) * s + static_cast<Real>(consts.b)) / (root * root));
  const Real c1 = consts.c1, c2 = consts.c2;
  const Real z = c1 * q.ai + c2 * q.bi;
  const Real dz = c1 * q.ai_prime + c2 * q.bi_prime;
  // Cancellation scale includes the slopes so that a lone Ai or Bi term is
  // flagged within ~1e-13 of its zero in t.
  const Real scale = std::fabs(c1) * (std::fabs(q.ai) + std::fabs(q.ai_prime)) +
                     std::fabs(c2) * (std::fabs(q.bi) + std::fabs(q.bi_prime));
  if (std::fabs(z) <= static_cast<Real>(kPoleTolerance) * (scale + static_cast<Real>(1e-300))) {
    const double at = static_cast<double>(s);
    throw PoleError("u1 has a pole at s = " + std::to_string(at) + " (z(s) vanishes)", at, nearest_pole(at, consts));
  }
  return -2 * static_cast<Real>(params.nu) * root * dz / z;
}

}  // namespace

double exact_u1(double s, const FlowParams& params, const SolutionConstants& consts) {
  return u1_closed_form(s, params, consts);
}

long double exact_u1_extended(long double s, const FlowParams& params, const SolutionConstants& consts) {
  return u1_closed_form(s, params, consts);
}

double exact_u1_derivative(double s, const FlowParams& params, const SolutionConstants& consts) {
  const double u = exact_u1(s, params, consts);
  return u * u / (2.0 * params.nu) + (params.grad_term - params.f1) * s / params.nu + consts.c / params.nu;
}

double exact_u1_second_derivative(double s, const FlowParams& params, const SolutionConstants& consts) {
  const double u = exact_u1(s, params, consts);
  const double du = u * u / (2.0 * params.nu) + (params.grad_term - params.f1) * s / params.nu + consts.c / params.nu;
  return u * du / params.nu + (params.grad_term - params.f1) / params.nu;
}

std::vector<double> find_poles(const SolutionConstants& consts, double s_lo, double s_hi) {
  require_negative_a(consts.a);
  if (!(s_lo < s_hi) || !std::isfinite(s_lo) || !std::isfinite(s_hi)) {
    throw InvalidArgument("find_poles needs finite s_lo < s_hi");
  }
  const double step = std::min(0.05, 0.25 * std::numbers::pi * std::pow(-consts.a, -1.0 / 3.0));
  const auto cells = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / step));

  std::vector<double> poles;
  double s_prev = s_lo;
  int sign_prev = sign_of_z(s_prev, consts);
  if (sign_prev == 0) poles.push_back(s_prev);
  for (std::size_t i = 1; i <= cells; ++i) {
    const double s = (i == cells) ? s_hi : s_lo + static_cast<double>(i) * step;
    const int sign = sign_of_z(s, consts);
    if (sign == 0) {
      poles.push_back(s);
    } else if (sign_prev != 0 && sign != sign_prev) {
      double lo = s_prev;
      double hi = s;
      // Bisect to adjacent doubles; well inside the required 1e-12·(1 + |s|).
      for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const int sign_mid = sign_of_z(mid, consts);
        if (sign_mid == 0) {
          lo = hi = mid;
          break;
        }
        (sign_mid == sign_prev ? lo : hi) = mid;
      }
      poles.push_back(0.5 * (lo + hi));
    }
    s_prev = s;
    sign_prev = sign;
  }
  return poles;
}

}  // namespace airyflow
