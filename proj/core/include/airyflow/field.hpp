#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "airyflow/flow.hpp"

namespace airyflow {

/// Streamlines φ1(s) = s, φ2(s; y0) = y0 + ψ(s): vertical translates of one
/// curve ψ, so g(x, y) = x on every streamline.
class StreamlineFamily {
 public:
  struct Straight {
    double slope = 0.0;
  };
  struct Sinusoidal {
    double amplitude = 0.0;
    double wavenumber = 0.0;
  };
  struct Polynomial {
    std::vector<double> coefficients;  ///< ψ(s) = Σ coefficients[k]·s^k
  };
  using Shape = std::variant<Straight, Sinusoidal, Polynomial>;

  StreamlineFamily() = default;
  explicit StreamlineFamily(Shape shape);

  static StreamlineFamily straight(double slope) { return StreamlineFamily(Straight{slope}); }
  static StreamlineFamily sinusoidal(double amplitude, double wavenumber) {
    return StreamlineFamily(Sinusoidal{amplitude, wavenumber});
  }
  static StreamlineFamily polynomial(std::vector<double> coefficients) {
    return StreamlineFamily(Polynomial{std::move(coefficients)});
  }

  const Shape& shape() const noexcept { return shape_; }

  double psi(double s) const;
  double psi_dot(double s) const;
  double psi_ddot(double s) const;

  double phi2(double s, double y0) const { return y0 + psi(s); }
  double phi2_dot(double s) const { return psi_dot(s); }
  double phi2_ddot(double s) const { return psi_ddot(s); }

  /// Offset of the streamline through (x, y).
  double offset_through(double x, double y) const { return y - psi(x); }

  long double psi_extended(long double s) const;
  long double psi_dot_extended(long double s) const;

 private:
  Shape shape_ = Straight{};
};

/// u1 along a streamline together with its first two s-derivatives.
class VelocityProfile {
 public:
  virtual ~VelocityProfile() = default;
  virtual double u1(double s) const = 0;
  virtual double u1_dot(double s) const = 0;
  virtual double u1_ddot(double s) const = 0;
  /// u1 without rounding to double; finite-difference checks sample this.
  virtual long double u1_extended(long double s) const { return u1(static_cast<double>(s)); }
};

/// The closed-form Airy solution.
class ExactProfile final : public VelocityProfile {
 public:
  ExactProfile(FlowParams params, SolutionConstants consts) : params_(params), consts_(consts) {}
  double u1(double s) const override { return exact_u1(s, params_, consts_); }
  double u1_dot(double s) const override { return exact_u1_derivative(s, params_, consts_); }
  double u1_ddot(double s) const override { return exact_u1_second_derivative(s, params_, consts_); }
  long double u1_extended(long double s) const override { return exact_u1_extended(s, params_, consts_); }

 private:
  FlowParams params_;
  SolutionConstants consts_;
};

/// Synthetic u1(s) = Σ coefficients[k]·s^k, not a flow solution.
class PolynomialProfile final : public VelocityProfile {
 public:
  explicit PolynomialProfile(std::vector<double> coefficients) : coefficients_(std::move(coefficients)) {}
  double u1(double s) const override;
  double u1_dot(double s) const override;
  double u1_ddot(double s) const override;
  long double u1_extended(long double s) const override;

 private:
  std::vector<double> coefficients_;
};

/// p = p0 + qdot·x, the pressure of the constant-q̇ model pulled back to the plane.
struct AffinePressure {
  double p0 = 0.0;
  double qdot = 0.0;
  double at(double x) const { return p0 + qdot * x; }
  long double at_extended(long double x) const { return p0 + qdot * x; }
};

/// Maps a streamline offset y0 to a profile, so ν, q̇/ρ and c may vary across streamlines.
using ProfileMap = std::function<std::shared_ptr<const VelocityProfile>(double y0)>;

/// A velocity field evaluable anywhere: v(x, y) = (u1(x), ψ'(x)·u1(x)) on the
/// streamline through (x, y).
struct FieldModel {
  StreamlineFamily family;
  ProfileMap profile;
  std::optional<AffinePressure> pressure;

  /// Same profile on every streamline.
  static FieldModel shared(StreamlineFamily family, std::shared_ptr<const VelocityProfile> profile,
                           std::optional<AffinePressure> pressure = std::nullopt);

  /// (v1, v2) at (x, y); propagates PoleError from the profile.
  std::pair<double, double> velocity(double x, double y) const;
  std::pair<long double, long double> velocity_extended(long double x, long double y) const;
};

struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  std::size_t nx = 2;
  std::size_t ny = 2;

  double x(std::size_t i) const;
  double y(std::size_t j) const;
  void validate() const;
};

struct VelocitySample {
  double s = 0.0;
  double x = 0.0;
  double y = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
  bool valid = true;
};

/// Row-major samples: index j·nx + i holds grid point (x_i, y_j).
struct SampledField {
  GridSpec grid;
  std::vector<VelocitySample> samples;
  std::vector<double> pressure;  ///< empty, or one value per sample

  const VelocitySample& at(std::size_t i, std::size_t j) const { return samples[j * grid.nx + i]; }
};

/// Samples the model on the grid; points sitting on a pole are flagged invalid.
/// Throws InvalidArgument when the grid leaves [0, L] (when L is given) or is malformed.
SampledField reconstruct_field(const FieldModel& model, const GridSpec& grid,
                               std::optional<double> length = std::nullopt);

/// Shared (params, consts) on every streamline.
SampledField reconstruct_field(const StreamlineFamily& family, const FlowParams& params,
                               const SolutionConstants& consts, const GridSpec& grid);

/// Per-streamline (params, consts); every streamline's L must cover the x-range.
using ConstantsMap = std::function<std::pair<FlowParams, SolutionConstants>(double y0)>;
SampledField reconstruct_field(const StreamlineFamily& family, const ConstantsMap& constants, const GridSpec& grid);

enum class FieldFormat { csv, json };

/// CSV: header `s,x,y,u1,u2,valid`, LF endings, 17 significant digits, empty u1/u2 on invalid rows.
/// JSON: {"grid": {...}, "samples": [...]} (plus "pressure" when present), same number formatting.
std::string emit(const SampledField& field, FieldFormat format);

/// Inverse of emit(); throws InvalidArgument on malformed input.
SampledField parse(const std::string& text, FieldFormat format);

/// gnuplot script drawing the velocity arrows stored in `csv_path`.
std::string gnuplot_script(const std::string& csv_path);

/// Shortest-form-independent decimal with 17 significant digits.
std::string format_real(double value);

}  // namespace airyflow
