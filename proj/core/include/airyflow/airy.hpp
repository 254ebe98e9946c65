#pragma once

#include <utility>

namespace airyflow {

/// Ai, Bi and their first derivatives at one real argument.
struct AiryQuartet {
  double t = 0.0;
  double ai = 0.0;
  double bi = 0.0;
  double ai_prime = 0.0;
  double bi_prime = 0.0;

  /// Ai·Bi' − Ai'·Bi; equals 1/π for exact values.
  double wronskian() const noexcept { return ai * bi_prime - ai_prime * bi; }
};

/// AiryQuartet carried in long double, for finite-difference checks that
/// need rounding noise well below double precision.
struct AiryQuartetExtended {
  long double t = 0.0L;
  long double ai = 0.0L;
  long double bi = 0.0L;
  long double ai_prime = 0.0L;
  long double bi_prime = 0.0L;
};

// Γ(1/3) and Γ(2/3); their product is 2π/√3.
inline constexpr double kGammaOneThird = 2.678938534707747633655692940974677644128689377957301100950428;
inline constexpr double kGammaTwoThirds = 1.354117939426400416945288028154513785519327266056793698394022;

/// Evaluates Ai, Bi, Ai', Bi' at a finite real t.
///
/// Accuracy is ~1e-15 relative to the local magnitude of the functions for
/// |t| <= 12 and stays below 1e-12 out to |t| = 100. Throws InvalidArgument for
/// non-finite t and OverflowError when Bi(t) exceeds the double range
/// (t > ~104.8) or when t is so negative that the oscillation phase is lost.
AiryQuartet airy_eval(double t);

/// airy_eval without the final rounding to double. Same domain and errors;
/// ~1e-18 relative accuracy where long double is the 80-bit x87 format.
AiryQuartetExtended airy_eval_extended(long double t);

/// Central-difference residuals (Ai''(t) − t·Ai(t), Bi''(t) − t·Bi(t)), using
/// q for the centre values and fresh evaluations at t ± h.
std::pair<double, double> airy_ode_residual(double t, const AiryQuartet& q, double h);

namespace detail {

// Individual evaluation branches, exposed so the overlap regions can be
// cross-checked in tests. airy_eval() picks among them by |t|.

/// Maclaurin series of the two standard solutions f, g. Accurate for |t| <~ 2.
AiryQuartet airy_maclaurin(double t);

/// Asymptotic expansions in ζ = (2/3)|t|^{3/2}, optimally truncated. Needs |t| >~ 8.
AiryQuartet airy_asymptotic(double t);

/// Taylor continuation from the nearest node of the precomputed table. |t| <= 12.
AiryQuartet airy_taylor(double t);

inline constexpr double kMaclaurinLimit = 1.0;
inline constexpr double kTableLimit = 12.0;
inline constexpr double kTableSpacing = 0.25;

}  // namespace detail
}  // namespace airyflow
