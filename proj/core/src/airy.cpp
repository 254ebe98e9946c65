#include "airyflow/airy.hpp"

#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "airyflow/errors.hpp"

namespace airyflow {
namespace {

using Real = long double;

constexpr Real kGamma13 = 2.678938534707747633655692940974677644128689377957301100950428L;
constexpr Real kGamma23 = 1.354117939426400416945288028154513785519327266056793698394022L;
constexpr Real kPi = 3.141592653589793238462643383279502884197169399375105820974944L;
constexpr Real kSqrt3 = 1.732050807568877293527446341505872366942805253810380628055806L;
constexpr Real kSqrtPi = 1.772453850905516027298167483341145182797549456122387128213808L;

// Ai(0) and −Ai'(0).
const Real kAi0 = 1.0L / (std::cbrt(9.0L) * kGamma23);
const Real kNegAiPrime0 = 1.0L / (std::cbrt(3.0L) * kGamma13);

struct Values {
  Real y = 0;
  Real yp = 0;
};

struct Quartet {
  Real ai, bi, ai_prime, bi_prime;
};

AiryQuartet to_double(double t, const Quartet& q) {
  const Real limit = DBL_MAX;
  if (std::fabs(q.bi) > limit || std::fabs(q.bi_prime) > limit) {
    throw OverflowError("Bi(t) overflows double precision at t = " + std::to_string(t));
  }
  return AiryQuartet{t, static_cast<double>(q.ai), static_cast<double>(q.bi),
                     static_cast<double>(q.ai_prime), static_cast<double>(q.bi_prime)};
}

Quartet maclaurin(Real t) {
  constexpr Real kTol = 1e-18L;
  constexpr int kMaxTerms = 200;
  const Real t3 = t * t * t;

  // f = Σ 3^k (1/3)_k t^{3k}/(3k)!,  g = Σ 3^k (2/3)_k t^{3k+1}/(3k+1)!
  Real f_term = 1, f = 1;
  Real g_term = t, g = t;
  Real fp_term = t * t / 2, fp = fp_term;
  Real gp_term = 1, gp = 1;
  for (int k = 1; k < kMaxTerms; ++k) {
    const Real k3 = 3.0L * k;
    f_term *= t3 / ((k3 - 1) * k3);
    g_term *= t3 / (k3 * (k3 + 1));
    fp_term *= t3 / (k3 * (k3 + 2));
    gp_term *= t3 / ((k3 - 2) * k3);
    f += f_term;
    g += g_term;
    fp += fp_term;
    gp += gp_term;
    if (std::fabs(f_term) <= kTol * std::fabs(f) && std::fabs(g_term) <= kTol * std::fabs(g) &&
        std::fabs(fp_term) <= kTol * std::fabs(fp) && std::fabs(gp_term) <= kTol * std::fabs(gp)) {
      break;
    }
  }
  return Quartet{kAi0 * f - kNegAiPrime0 * g, kSqrt3 * (kAi0 * f + kNegAiPrime0 * g),
                 kAi0 * fp - kNegAiPrime0 * gp, kSqrt3 * (kAi0 * fp + kNegAiPrime0 * gp)};
}

// Solution of y'' = t·y continued from (t0, y, y') to t0 + h by its Taylor series.
// Coefficients obey a_{n} = (t0·a_{n-2} + a_{n-3}) / (n(n-1)).
Values taylor_step(Real t0, Values start, Real h) {
  constexpr Real kTol = 1e-21L;
  constexpr int kMaxTerms = 200;
  const Real scale_v = std::fabs(start.y) + std::fabs(h * start.yp) + LDBL_MIN;
  const Real scale_d = std::fabs(start.yp) + std::sqrt(std::fabs(t0) + 1) * std::fabs(start.y) + LDBL_MIN;

  Real a_nm3 = 0, a_nm2 = start.y, a_nm1 = start.yp;
  Real hp_nm1 = h;  // h^{n-1}
  Real y = start.y + start.yp * h;
  Real yp = start.yp;
  int quiet = 0;
  for (int n = 2; n < kMaxTerms; ++n) {
    const Real a_n = (t0 * a_nm2 + a_nm3) / (static_cast<Real>(n) * (n - 1));
    const Real d_term = n * a_n * hp_nm1;
    hp_nm1 *= h;
    const Real v_term = a_n * hp_nm1;
    y += v_term;
    yp += d_term;
    quiet = (std::fabs(v_term) <= kTol * scale_v && std::fabs(d_term) <= kTol * scale_d) ? quiet + 1 : 0;
    if (quiet >= 3) break;
    a_nm3 = a_nm2;
    a_nm2 = a_nm1;
    a_nm1 = a_n;
  }
  return Values{y, yp};
}

// ζ^{-k} series with u_k, v_k coefficients, cut at the smallest term.
struct AsymptoticSums {
  Real u_even = 0, u_odd = 0, v_even = 0, v_odd = 0;  // Σ over even/odd k of u_k/ζ^k, v_k/ζ^k
  Real u_alt = 0, v_alt = 0;                          // Σ (−1)^k u_k/ζ^k, Σ (−1)^k v_k/ζ^k
  Real u_even_alt = 0, u_odd_alt = 0, v_even_alt = 0, v_odd_alt = 0;  // the (−1)^{⌊k/2⌋} forms
};

AsymptoticSums asymptotic_sums(Real zeta) {
  AsymptoticSums s;
  Real u = 1;
  Real inv_pow = 1;
  Real previous = INFINITY;
  constexpr int kMaxTerms = 400;
  for (int k = 0; k < kMaxTerms; ++k) {
    if (k > 0) {
      const Real k6 = 6.0L * k;
      u *= (k6 - 5) * (k6 - 3) * (k6 - 1) / ((2.0L * k - 1) * 216.0L * k);
      inv_pow /= zeta;
    }
    const Real v = -(6.0L * k + 1) / (6.0L * k - 1) * u;
    const Real u_term = u * inv_pow;
    const Real v_term = v * inv_pow;
    const Real size = std::fabs(u_term) + std::fabs(v_term);
    if (size >= previous) break;
    previous = size;

    const Real alt = (k % 2 == 0) ? 1 : -1;
    const Real half_alt = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      s.u_even += u_term;
      s.v_even += v_term;
      s.u_even_alt += half_alt * u_term;
      s.v_even_alt += half_alt * v_term;
    } else {
      s.u_odd += u_term;
      s.v_odd += v_term;
      s.u_odd_alt += half_alt * u_term;
      s.v_odd_alt += half_alt * v_term;
    }
    s.u_alt += alt * u_term;
    s.v_alt += alt * v_term;
    if (size <= 1e-24L) break;
  }
  return s;
}

Quartet asymptotic(Real t) {
  const Real x = std::fabs(t);
  const Real zeta = 2.0L / 3.0L * x * std::sqrt(x);
  const Real x14 = std::sqrt(std::sqrt(x));
  const AsymptoticSums s = asymptotic_sums(zeta);

  if (t > 0) {
    const Real log_x = std::log(x);
    const Real log_sqrt_pi = std::log(kSqrtPi);
    const Real decay = std::exp(-zeta - log_sqrt_pi - std::log(2.0L));
    const Real growth_lo = std::exp(zeta - log_sqrt_pi - 0.25L * log_x);
    const Real growth_hi = std::exp(zeta - log_sqrt_pi + 0.25L * log_x);
    return Quartet{decay / x14 * s.u_alt, growth_lo * (s.u_even + s.u_odd),
                   -decay * x14 * s.v_alt, growth_hi * (s.v_even + s.v_odd)};
  }

  const Real theta = zeta - kPi / 4;
  const Real c = std::cos(theta);
  const Real sn = std::sin(theta);
  const Real lo = 1 / (kSqrtPi * x14);
  const Real hi = x14 / kSqrtPi;
  return Quartet{lo * (c * s.u_even_alt + sn * s.u_odd_alt), lo * (-sn * s.u_even_alt + c * s.u_odd_alt),
                 hi * (sn * s.v_even_alt - c * s.v_odd_alt), hi * (c * s.v_even_alt + sn * s.v_odd_alt)};
}

constexpr int kNodeCount = static_cast<int>(2 * detail::kTableLimit / detail::kTableSpacing) + 1;
constexpr int kOriginNode = kNodeCount / 2;

Real node_t(int k) { return -static_cast<Real>(detail::kTableLimit) + k * static_cast<Real>(detail::kTableSpacing); }

struct Table {
  std::array<Values, kNodeCount> ai;
  std::array<Values, kNodeCount> bi;
};

Table build_table() {
  Table table;
  const Real h = detail::kTableSpacing;
  table.ai[kOriginNode] = Values{kAi0, -kNegAiPrime0};
  table.bi[kOriginNode] = Values{kSqrt3 * kAi0, kSqrt3 * kNegAiPrime0};

  // t < 0: both solutions oscillate, stepping outward is neutral.
  for (int k = kOriginNode; k > 0; --k) {
    table.ai[k - 1] = taylor_step(node_t(k), table.ai[k], -h);
    table.bi[k - 1] = taylor_step(node_t(k), table.bi[k], -h);
  }
  // t > 0: Bi is dominant forward, Ai is dominant backward.
  for (int k = kOriginNode; k + 1 < kNodeCount; ++k) {
    table.bi[k + 1] = taylor_step(node_t(k), table.bi[k], h);
  }
  const Quartet end = asymptotic(node_t(kNodeCount - 1));
  table.ai[kNodeCount - 1] = Values{end.ai, end.ai_prime};
  for (int k = kNodeCount - 1; k > kOriginNode + 1; --k) {
    table.ai[k - 1] = taylor_step(node_t(k), table.ai[k], -h);
  }
  return table;
}

const Table& table() {
  static const Table instance = build_table();
  return instance;
}

Quartet taylor(Real t) {
  const auto k = static_cast<int>(std::lround((t + detail::kTableLimit) / detail::kTableSpacing));
  const Table& nodes = table();
  const Real h = t - node_t(k);
  const Values ai = taylor_step(node_t(k), nodes.ai[k], h);
  const Values bi = taylor_step(node_t(k), nodes.bi[k], h);
  return Quartet{ai.y, bi.y, ai.yp, bi.yp};
}

Quartet checked_asymptotic(Real t) {
  const Real x = std::fabs(t);
  if (t < 0 && 2.0L / 3.0L * x * std::sqrt(x) > 0x1p52L) {
    throw OverflowError("Airy phase not representable at t = " + std::to_string(static_cast<double>(t)));
  }
  return asymptotic(t);
}

Quartet evaluate(Real t) {
  if (!std::isfinite(t)) {
    throw InvalidArgument("airy_eval: argument must be finite");
  }
  const Real x = std::fabs(t);
  if (x <= detail::kMaclaurinLimit) return maclaurin(t);
  if (x <= detail::kTableLimit) return taylor(t);
  return checked_asymptotic(t);
}

}  // namespace

namespace detail {

AiryQuartet airy_maclaurin(double t) { return to_double(t, maclaurin(t)); }

AiryQuartet airy_asymptotic(double t) { return to_double(t, checked_asymptotic(t)); }

AiryQuartet airy_taylor(double t) {
  if (!(std::fabs(t) <= kTableLimit)) {
    throw InvalidArgument("Taylor continuation only covers |t| <= 12");
  }
  return to_double(t, taylor(t));
}

}  // namespace detail

AiryQuartet airy_eval(double t) { return to_double(t, evaluate(t)); }

AiryQuartetExtended airy_eval_extended(long double t) {
  const Quartet q = evaluate(t);
  to_double(static_cast<double>(t), q);  // same overflow contract as airy_eval
  return AiryQuartetExtended{t, q.ai, q.bi, q.ai_prime, q.bi_prime};
}

std::pair<double, double> airy_ode_residual(double t, const AiryQuartet& q, double h) {
  if (!(h > 0) || !std::isfinite(t + h) || !std::isfinite(t - h)) {
    throw InvalidArgument("airy_ode_residual: need h > 0 with t ± h finite");
  }
  const AiryQuartet lo = airy_eval(t - h);
  const AiryQuartet hi = airy_eval(t + h);
  const double h2 = h * h;
  const double ai_dd = (hi.ai - 2.0 * q.ai + lo.ai) / h2;
  const double bi_dd = (hi.bi - 2.0 * q.bi + lo.bi) / h2;
  return {ai_dd - t * q.ai, bi_dd - t * q.bi};
}

}  // namespace airyflow
