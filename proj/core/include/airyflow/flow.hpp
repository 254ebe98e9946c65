#pragma once

#include <vector>

#include "airyflow/airy.hpp"

namespace airyflow {

/// Per-streamline physical constants of the reduced steady flow.
struct FlowParams {
  double nu = 1.0;         ///< kinematic viscosity, > 0
  double grad_term = 0.0;  ///< q̇/ρ, constant along the streamline
  double f1 = 0.0;         ///< x-component of body force per unit mass
  double length = 1.0;     ///< domain extent L, s ∈ [0, L]

  /// Throws InvalidArgument unless nu > 0, length > 0 and all fields finite.
  void validate() const;
};

/// a, b and the Riccati integration constant c, before the Airy mix is chosen.
struct RiccatiConstants {
  double a = -1.0;
  double b = 0.0;
  double c = 0.0;
};

/// Everything that pins down one exact solution: a, b, c and the mix (c1, c2)
/// of Ai and Bi in the denominator.
///
/// Any nonzero (c1, c2) is accepted by the evaluators; solvers return them
/// with unit norm and the first nonzero component positive.
struct SolutionConstants {
  double a = -1.0;
  double b = 0.0;
  double c = 0.0;
  double c1 = 1.0;
  double c2 = 0.0;

  static SolutionConstants from(const RiccatiConstants& r, double c1, double c2) {
    return SolutionConstants{r.a, r.b, r.c, c1, c2};
  }
  RiccatiConstants riccati() const { return RiccatiConstants{a, b, c}; }

  /// Copy with (c1, c2) rescaled to the unit-norm, first-nonzero-positive form.
  /// Throws DegenerateCoefficients if both are zero.
  SolutionConstants normalized() const;
};

/// a = (grad_term − f1)/(2ν²), b = c/(2ν²). Throws ModelInvalid when a > 0 and
/// DegenerateModel when a == 0.
RiccatiConstants derive_constants(const FlowParams& params, double c);

/// t(s) = −(a·s + b)/(−a)^{2/3}.
double map_t(double s, const SolutionConstants& consts);
double map_t(double s, const RiccatiConstants& consts);

/// z(s) = c1·Ai(t(s)) + c2·Bi(t(s)).
double denominator_z(double s, const SolutionConstants& consts);

/// Closed-form u1(s) = −2ν ż/z = −2ν(−a)^{1/3}(c1·Ai'(t) + c2·Bi'(t))/(c1·Ai(t) + c2·Bi(t)).
///
/// Throws PoleError when |z| <= 1e-13·(|c1|(|Ai| + |Ai'|) + |c2|(|Bi| + |Bi'|) + 1e-300).
double exact_u1(double s, const FlowParams& params, const SolutionConstants& consts);

/// exact_u1 evaluated in long double throughout (same pole test).
long double exact_u1_extended(long double s, const FlowParams& params, const SolutionConstants& consts);

/// u̇1 from the integrated Riccati equation: u1²/(2ν) + (grad_term − f1)·s/ν + c/ν.
double exact_u1_derivative(double s, const FlowParams& params, const SolutionConstants& consts);

/// ü1 by differentiating the Riccati equation once more: u1·u̇1/ν + (grad_term − f1)/ν.
double exact_u1_second_derivative(double s, const FlowParams& params, const SolutionConstants& consts);

/// Zeros of z(s) in [s_lo, s_hi], ascending, each refined by bisection to
/// |Δs| <= 1e-12·(1 + |s|). The scan grid step is min(0.05, 0.25π|a|^{-1/3}).
std::vector<double> find_poles(const SolutionConstants& consts, double s_lo, double s_hi);

/// Relative cancellation threshold used for the pole test in exact_u1.
inline constexpr double kPoleTolerance = 1e-13;

}  // namespace airyflow
