#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace airyflow {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (non-finite input, bad step, bad grid).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A result is not representable in double precision (Bi overflow, unresolvable phase).
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// The flow parameters give a >= 0; the closed-form solution needs a < 0.
class ModelInvalid : public Error {
 public:
  ModelInvalid(const std::string& what, double a) : Error(what), a_(a) {}
  double a() const noexcept { return a_; }

 private:
  double a_;
};

/// grad_term == f1, so a == 0 and the Airy mapping divides by zero.
class DegenerateModel : public ModelInvalid {
 public:
  using ModelInvalid::ModelInvalid;
};

/// The denominator z(s) vanishes (to within cancellation tolerance) at the requested s.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double s, std::optional<double> nearest_pole)
      : Error(what), s_(s), nearest_pole_(nearest_pole) {}
  double s() const noexcept { return s_; }
  const std::optional<double>& nearest_pole() const noexcept { return nearest_pole_; }

 private:
  double s_;
  std::optional<double> nearest_pole_;
};

/// Both Airy brackets of the u1(0) condition vanished.
class DegenerateCoefficients : public Error {
 public:
  using Error::Error;
};

/// Shooting found no sign change of the endpoint residual over the c bracket.
class NoSignChange : public Error {
 public:
  NoSignChange(const std::string& what, double residual_lo, double residual_hi)
      : Error(what), residual_lo_(residual_lo), residual_hi_(residual_hi) {}
  double residual_lo() const noexcept { return residual_lo_; }
  double residual_hi() const noexcept { return residual_hi_; }

 private:
  double residual_lo_;
  double residual_hi_;
};

/// Every candidate c in the shooting bracket put a pole of z inside (0, L].
class PoleCrossing : public Error {
 public:
  PoleCrossing(const std::string& what, std::size_t excluded)
      : Error(what), excluded_(excluded) {}
  std::size_t excluded() const noexcept { return excluded_; }

 private:
  std::size_t excluded_;
};

/// Finite-difference checks need at least four usable interior points.
class GridTooCoarse : public Error {
 public:
  using Error::Error;
};

}  // namespace airyflow
