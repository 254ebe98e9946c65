#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "airyflow/flow.hpp"

namespace airyflow {

/// Conditions at the inflow s = 0 and, optionally, at the outflow s = L.
struct InitialData {
  double u10 = 0.0;
  double u1dot0 = 0.0;
  std::optional<double> u1L;
};

/// c = ν·u̇1(0) − u1(0)²/2, the Riccati constant forced by the inflow data.
double c_from_initial(double u10, double u1dot0, double nu);

/// Normalized (c1, c2) such that the closed form reproduces u1(0) = u10 for the
/// a, b, c already held in `consts`.
std::pair<double, double> coefficients_from_u0(double u10, const FlowParams& params, const RiccatiConstants& consts);

/// Initial-value mode: u1(0) and u̇1(0) fix c and the Ai/Bi mix. Any u1L in
/// `data` is ignored.
SolutionConstants solve_ivp(const InitialData& data, const FlowParams& params);

struct BvpResult {
  SolutionConstants solution;
  double residual = 0.0;          ///< u1(L) − u1L for the chosen root
  double u1dot0 = 0.0;            ///< u̇1(0) implied by the chosen c
  std::vector<double> roots;      ///< every root found, ascending in c
  std::size_t excluded = 0;       ///< scan candidates or brackets rejected for a pole in (0, L]
};

/// Default shooting bracket ±10·ν·V² with V = max(|u10|, |u1L|, 1).
std::pair<double, double> default_c_bracket(double u10, double u1L, const FlowParams& params);

/// Boundary-value mode: shoots on c so that the solution with u1(0) = u10
/// reaches u1(L) = u1L. Scans 256 points of the bracket, bisects every sign
/// change and returns the root with the smallest |c|.
///
/// Throws NoSignChange when no bracket yields a root and PoleCrossing when no
/// candidate c is pole-free on [0, L].
BvpResult solve_bvp(double u10, double u1L, const FlowParams& params, std::pair<double, double> c_bracket);

inline constexpr std::size_t kShootingSamples = 256;

}  // namespace airyflow
