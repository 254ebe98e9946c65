#include "airyflow/field.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "airyflow/errors.hpp"

namespace airyflow {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

// Σ c_k s^k and its first two derivatives, by Horner.
template <class Real>
Real poly(const std::vector<double>& c, Real s, int derivative) {
  Real acc = 0;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(derivative);) {
    Real factor = 1;
    for (int d = 0; d < derivative; ++d) factor *= static_cast<Real>(k - static_cast<std::size_t>(d));
    acc = acc * s + factor * c[k];
  }
  return acc;
}

double parse_real(const std::string& token) {
  if (token.empty()) throw InvalidArgument("empty numeric field");
  char* end = nullptr;
  const double value = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size()) throw InvalidArgument("malformed number '" + token + "'");
  return value;
}

bool parse_flag(const std::string& token) {
  if (token == "true") return true;
  if (token == "false") return false;
  throw InvalidArgument("malformed validity flag '" + token + "'");
}

GridSpec grid_from_samples(const std::vector<VelocitySample>& samples) {
  if (samples.size() < 4) throw InvalidArgument("field needs at least 2x2 samples");
  std::size_t nx = 1;
  while (nx < samples.size() && samples[nx].y == samples[0].y) ++nx;
  if (nx < 2 || samples.size() % nx != 0) throw InvalidArgument("samples do not form a row-major grid");
  const std::size_t ny = samples.size() / nx;
  if (ny < 2) throw InvalidArgument("field needs at least two rows");
  return GridSpec{samples.front().x, samples[nx - 1].x, samples.front().y, samples[(ny - 1) * nx].y, nx, ny};
}

std::string emit_csv(const SampledField& field) {
  std::string out = "s,x,y,u1,u2,valid\n";
  for (const VelocitySample& v : field.samples) {
    out += format_real(v.s) + ',' + format_real(v.x) + ',' + format_real(v.y) + ',';
    if (v.valid) {
      out += format_real(v.u1) + ',' + format_real(v.u2) + ",true\n";
    } else {
      out += ",,false\n";
    }
  }
  return out;
}

SampledField parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "s,x,y,u1,u2,valid") {
    throw InvalidArgument("CSV header must be 's,x,y,u1,u2,valid'");
  }
  SampledField field;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t comma; (comma = line.find(',', start)) != std::string::npos; start = comma + 1) {
      cells.push_back(line.substr(start, comma - start));
    }
    cells.push_back(line.substr(start));
    if (cells.size() != 6) throw InvalidArgument("CSV row needs 6 fields: '" + line + "'");
    VelocitySample v;
    v.s = parse_real(cells[0]);
    v.x = parse_real(cells[1]);
    v.y = parse_real(cells[2]);
    v.valid = parse_flag(cells[5]);
    if (v.valid) {
      v.u1 = parse_real(cells[3]);
      v.u2 = parse_real(cells[4]);
    } else {
      if (!cells[3].empty() || !cells[4].empty()) throw InvalidArgument("invalid CSV rows carry no velocity");
      v.u1 = v.u2 = kNaN;
    }
    field.samples.push_back(v);
  }
  field.grid = grid_from_samples(field.samples);
  return field;
}

std::string emit_json(const SampledField& field) {
  const GridSpec& g = field.grid;
  std::string out = "{\n  \"grid\": {\"x_min\": " + format_real(g.x_min) + ", \"x_max\": " + format_real(g.x_max) +
                    ", \"y_min\": " + format_real(g.y_min) + ", \"y_max\": " + format_real(g.y_max) +
                    ", \"nx\": " + std::to_string(g.nx) + ", \"ny\": " + std::to_string(g.ny) + "},\n";
  out += "  \"samples\": [";
  for (std::size_t k = 0; k < field.samples.size(); ++k) {
    const VelocitySample& v = field.samples[k];
    out += k == 0 ? "\n" : ",\n";
    out += "    {\"s\": " + format_real(v.s) + ", \"x\": " + format_real(v.x) + ", \"y\": " + format_real(v.y);
    if (v.valid) {
      out += ", \"u1\": " + format_real(v.u1) + ", \"u2\": " + format_real(v.u2) + ", \"valid\": true}";
    } else {
      out += ", \"u1\": null, \"u2\": null, \"valid\": false}";
    }
  }
  out += "\n  ]";
  if (!field.pressure.empty()) {
    out += ",\n  \"pressure\": [";
    for (std::size_t k = 0; k < field.pressure.size(); ++k) {
      out += (k == 0 ? "" : ", ") + format_real(field.pressure[k]);
    }
    out += "]";
  }
  out += "\n}\n";
  return out;
}

SampledField parse_json(const std::string& text) {
  SampledField field;
  try {
    const nlohmann::json doc = nlohmann::json::parse(text);
    const auto& g = doc.at("grid");
    field.grid = GridSpec{g.at("x_min").get<double>(), g.at("x_max").get<double>(), g.at("y_min").get<double>(),
                          g.at("y_max").get<double>(), g.at("nx").get<std::size_t>(), g.at("ny").get<std::size_t>()};
    for (const auto& item : doc.at("samples")) {
      VelocitySample v;
      v.s = item.at("s").get<double>();
      v.x = item.at("x").get<double>();
      v.y = item.at("y").get<double>();
      v.valid = item.at("valid").get<bool>();
      v.u1 = v.valid ? item.at("u1").get<double>() : kNaN;
      v.u2 = v.valid ? item.at("u2").get<double>() : kNaN;
      field.samples.push_back(v);
    }
    if (doc.contains("pressure")) field.pressure = doc.at("pressure").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed field JSON: ") + e.what());
  }
  field.grid.validate();
  if (field.samples.size() != field.grid.nx * field.grid.ny) {
    throw InvalidArgument("sample count does not match the grid");
  }
  if (!field.pressure.empty() && field.pressure.size() != field.samples.size()) {
    throw InvalidArgument("pressure count does not match the grid");
  }
  return field;
}

}  // namespace

StreamlineFamily::StreamlineFamily(Shape shape) : shape_(std::move(shape)) {}

double StreamlineFamily::psi(double s) const {
  return std::visit(Overloaded{[s](const Straight& f) { return f.slope * s; },
                               [s](const Sinusoidal& f) { return f.amplitude * std::sin(f.wavenumber * s); },
                               [s](const Polynomial& f) { return poly(f.coefficients, s, 0); }},
                    shape_);
}

double StreamlineFamily::psi_dot(double s) const {
  return std::visit(
      Overloaded{[](const Straight& f) { return f.slope; },
                 [s](const Sinusoidal& f) { return f.amplitude * f.wavenumber * std::cos(f.wavenumber * s); },
                 [s](const Polynomial& f) { return poly(f.coefficients, s, 1); }},
      shape_);
}

double StreamlineFamily::psi_ddot(double s) const {
  return std::visit(Overloaded{[](const Straight&) { return 0.0; },
                               [s](const Sinusoidal& f) {
                                 return -f.amplitude * f.wavenumber * f.wavenumber * std::sin(f.wavenumber * s);
                               },
                               [s](const Polynomial& f) { return poly(f.coefficients, s, 2); }},
                    shape_);
}

long double StreamlineFamily::psi_extended(long double s) const {
  return std::visit(Overloaded{[s](const Straight& f) { return f.slope * s; },
                               [s](const Sinusoidal& f) { return f.amplitude * std::sin(f.wavenumber * s); },
                               [s](const Polynomial& f) { return poly(f.coefficients, s, 0); }},
                    shape_);
}

long double StreamlineFamily::psi_dot_extended(long double s) const {
  return std::visit(
      Overloaded{[](const Straight& f) { return static_cast<long double>(f.slope); },
                 [s](const Sinusoidal& f) { return f.amplitude * f.wavenumber * std::cos(f.wavenumber * s); },
                 [s](const Polynomial& f) { return poly(f.coefficients, s, 1); }},
      shape_);
}

double PolynomialProfile::u1(double s) const { return poly(coefficients_, s, 0); }
double PolynomialProfile::u1_dot(double s) const { return poly(coefficients_, s, 1); }
double PolynomialProfile::u1_ddot(double s) const { return poly(coefficients_, s, 2); }
long double PolynomialProfile::u1_extended(long double s) const { return poly(coefficients_, s, 0); }

FieldModel FieldModel::shared(StreamlineFamily family, std::shared_ptr<const VelocityProfile> profile,
                              std::optional<AffinePressure> pressure) {
  return FieldModel{std::move(family),
                    [profile = std::move(profile)](double) { return profile; }, pressure};
}

std::pair<double, double> FieldModel::velocity(double x, double y) const {
  const double u1 = profile(family.offset_through(x, y))->u1(x);
  return {u1, family.phi2_dot(x) * u1};
}

std::pair<long double, long double> FieldModel::velocity_extended(long double x, long double y) const {
  const double y0 = static_cast<double>(y - family.psi_extended(x));
  const long double u1 = profile(y0)->u1_extended(x);
  return {u1, family.psi_dot_extended(x) * u1};
}

double GridSpec::x(std::size_t i) const {
  return std::lerp(x_min, x_max, static_cast<double>(i) / static_cast<double>(nx - 1));
}

double GridSpec::y(std::size_t j) const {
  return std::lerp(y_min, y_max, static_cast<double>(j) / static_cast<double>(ny - 1));
}

void GridSpec::validate() const {
  if (nx < 2 || ny < 2) throw InvalidArgument("grid needs nx, ny >= 2");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(y_min) || !std::isfinite(y_max)) {
    throw InvalidArgument("grid bounds must be finite");
  }
  if (!(x_min < x_max) || !(y_min < y_max)) throw InvalidArgument("grid needs x_min < x_max and y_min < y_max");
}

SampledField reconstruct_field(const FieldModel& model, const GridSpec& grid, std::optional<double> length) {
  grid.validate();
  if (length && (grid.x_min < 0.0 || grid.x_max > *length)) {
    throw InvalidArgument("grid x-range must lie inside [0, L]");
  }
  SampledField field;
  field.grid = grid;
  field.samples.reserve(grid.nx * grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      VelocitySample v;
      v.x = v.s = grid.x(i);
      v.y = grid.y(j);
      try {
        std::tie(v.u1, v.u2) = model.velocity(v.x, v.y);
      } catch (const PoleError&) {
        v.valid = false;
      } catch (const OverflowError&) {
        v.valid = false;
      }
      if (!v.valid) v.u1 = v.u2 = kNaN;
      field.samples.push_back(v);
    }
  }
  if (model.pressure) {
    for (const VelocitySample& v : field.samples) field.pressure.push_back(model.pressure->at(v.x));
  }
  return field;
}

SampledField reconstruct_field(const StreamlineFamily& family, const FlowParams& params,
                               const SolutionConstants& consts, const GridSpec& grid) {
  params.validate();
  return reconstruct_field(FieldModel::shared(family, std::make_shared<ExactProfile>(params, consts)), grid,
                           params.length);
}

SampledField reconstruct_field(const StreamlineFamily& family, const ConstantsMap& constants, const GridSpec& grid) {
  grid.validate();
  FieldModel model{family, [&constants, &grid](double y0) -> std::shared_ptr<const VelocityProfile> {
                     const auto [params, consts] = constants(y0);
                     params.validate();
                     if (grid.x_min < 0.0 || grid.x_max > params.length) {
                       throw InvalidArgument("grid x-range must lie inside [0, L] of every streamline");
                     }
                     return std::make_shared<ExactProfile>(params, consts);
                   },
                   std::nullopt};
  return reconstruct_field(model, grid);
}

std::string emit(const SampledField& field, FieldFormat format) {
  return format == FieldFormat::csv ? emit_csv(field) : emit_json(field);
}

SampledField parse(const std::string& text, FieldFormat format) {
  return format == FieldFormat::csv ? parse_csv(text) : parse_json(text);
}

std::string gnuplot_script(const std::string& csv_path) {
  return "set datafile separator ','\n"
         "set key autotitle columnhead\n"
         "set size ratio -1\n"
         "set xlabel 'x'\n"
         "set ylabel 'y'\n"
         "scale = 0.05\n"
         "plot '" + csv_path + "' using 2:3:($4*scale):($5*scale) every ::1 with vectors head size 0.01,20 notitle\n";
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  std::string out(buf);
  if (std::isfinite(value) && out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

}  // namespace airyflow
