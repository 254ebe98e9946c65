#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "airyflow/field.hpp"
#include "airyflow/flow.hpp"

namespace airyflow {

/// Numerical u1(s) on a uniform grid (the last step may be shorter).
struct Trajectory {
  struct Sample {
    double s;
    double u1;
  };
  std::vector<Sample> samples;
  double step = 0.0;
  bool truncated_at_pole = false;
  /// When truncated: s at which |u1| first exceeded the blow-up threshold.
  /// The pole lies between the last sample and the next grid point.
  double pole_location = 0.0;
};

inline constexpr double kBlowUpThreshold = 1e10;

/// Classical RK4 on u̇1 = u1²/(2ν) + (grad_term − f1)s/ν + c/ν from u1(0) = u10.
Trajectory integrate_riccati(const FlowParams& params, double c, double u10, double s_end, double step);

/// Classical RK4 on (u1, w)' = (w, (u1·w − f1 + grad_term)/ν) from (u10, u1dot0).
Trajectory integrate_second_order(const FlowParams& params, double u10, double u1dot0, double s_end, double step);

/// Largest |trajectory − closed form| over the trajectory's samples.
double max_deviation(const Trajectory& trajectory, const FlowParams& params, const SolutionConstants& consts);

/// Largest |a − b| over samples shared by two trajectories on the same grid.
double max_deviation(const Trajectory& a, const Trajectory& b);

/// Kinematic identity v·∇v1 = u1·u̇1/φ̇1 checked by central differences of step h
/// at every valid interior sample. Returns the max absolute discrepancy.
/// Throws GridTooCoarse with fewer than 4 usable interior points.
double check_prop1(const SampledField& field, const FieldModel& model, double h);

struct LaplacianErrors {
  double v1 = 0.0;        ///< max |Δv1 − ü1| (∇g·∇g = 1, Δg = 0)
  double pressure = 0.0;  ///< max |Δp − q̇·Δg| = max |Δp|
};

/// Δv1 = (∇g·∇g)ü1 + (Δg)u̇1 and Δp = q̇·Δg with 5-point Laplacians of step h.
/// The model must carry a pressure.
LaplacianErrors check_prop2_prop3(const SampledField& field, const FieldModel& model, double h);

/// Derivatives of a streamline and of its inverse map g at one s.
struct StreamlineGeometry {
  double phi1_dot = 1.0;
  double phi1_ddot = 0.0;
  double phi2_dot = 0.0;
  double phi2_ddot = 0.0;
  double dg_dy = 0.0;
};

/// Coefficient [φ̈2 − (φ̇2/φ̇1)φ̈1]·∂g/∂y multiplying u1 in the incompressible
/// continuity equation. Throws InvalidArgument when φ̇1 = 0.
double continuity_bracket(const StreamlineGeometry& geometry);
double continuity_bracket(const StreamlineFamily& family, double y0, double s);

/// One line of the oracle report: `PASS|FAIL <name> max_residual=<v> tol=<v>`.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed() const { return max_residual <= tolerance; }
  std::string line() const;
};

/// Runs the built-in oracle suite. The seed drives random parameter draws only.
std::vector<CheckResult> run_oracle_suite(std::uint64_t seed);

/// A random (params, IVP data, constants) with [−margin, L + margin] pole-free.
struct RandomCase {
  FlowParams params;
  double u10 = 0.0;
  double u1dot0 = 0.0;
  SolutionConstants consts;
};

/// Draws parameters until solve_ivp yields a solution with no pole within
/// `margin` of [0, L] and |u1| <= 50 on [0, L].
RandomCase draw_random_case(std::mt19937_64& rng, double margin = 0.5);

}  // namespace airyflow
