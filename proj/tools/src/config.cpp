#include "config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "airyflow/errors.hpp"

namespace airyflow::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

double to_real(const std::string& key, const std::string& value) {
  double v = 0.0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(v)) {
    throw InvalidArgument("config key '" + key + "' needs a finite number, got '" + value + "'");
  }
  return v;
}

std::size_t to_count(const std::string& key, const std::string& value) {
  std::size_t v = 0;
  const auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || end != value.data() + value.size()) {
    throw InvalidArgument("config key '" + key + "' needs a non-negative integer, got '" + value + "'");
  }
  return v;
}

std::vector<double> to_reals(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_real(key, trim(item)));
  if (out.empty()) throw InvalidArgument("config key '" + key + "' needs at least one number");
  return out;
}

const std::set<std::string> kKnownKeys = {
    "nu",     "grad_term",  "f1",           "L",     "u10",   "u1dot0", "u1L",   "c_min",  "c_max",  "family",
    "slope",  "amplitude",  "wavenumber",   "coefficients",  "x_min", "x_max", "y_min", "y_max", "nx", "ny",
    "format", "output",     "gnuplot"};

}  // namespace

FieldConfig parse_field_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidArgument("config line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!kKnownKeys.count(key)) throw InvalidArgument("config line " + std::to_string(number) + ": unknown key '" + key + "'");
    if (value.empty()) throw InvalidArgument("config key '" + key + "' has no value");
    if (!kv.emplace(key, value).second) throw InvalidArgument("config key '" + key + "' given twice");
  }

  auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };
  auto need = [&](const std::string& key) {
    auto v = take(key);
    if (!v) throw InvalidArgument("config key '" + key + "' is required");
    return *v;
  };
  auto real_or = [&](const std::string& key, std::optional<double> fallback = std::nullopt) -> std::optional<double> {
    if (auto v = take(key)) return to_real(key, *v);
    return fallback;
  };

  FieldConfig cfg;
  cfg.params = FlowParams{to_real("nu", need("nu")), to_real("grad_term", need("grad_term")), to_real("f1", need("f1")),
                          to_real("L", need("L"))};
  cfg.u10 = to_real("u10", need("u10"));
  cfg.u1dot0 = real_or("u1dot0");
  cfg.u1L = real_or("u1L");
  if (cfg.u1dot0.has_value() == cfg.u1L.has_value()) {
    throw InvalidArgument("config needs exactly one of u1dot0 (initial value) or u1L (boundary value)");
  }
  cfg.c_min = real_or("c_min");
  cfg.c_max = real_or("c_max");
  if (cfg.c_min.has_value() != cfg.c_max.has_value()) throw InvalidArgument("c_min and c_max go together");
  if ((cfg.c_min || cfg.c_max) && cfg.u1dot0) throw InvalidArgument("c_min/c_max only apply with u1L");

  const std::string family = take("family").value_or("straight");
  std::set<std::string> family_keys;
  if (family == "straight") {
    cfg.family = StreamlineFamily::straight(*real_or("slope", 0.0));
    family_keys = {"slope"};
  } else if (family == "sinusoidal") {
    cfg.family = StreamlineFamily::sinusoidal(to_real("amplitude", need("amplitude")), to_real("wavenumber", need("wavenumber")));
    family_keys = {"amplitude", "wavenumber"};
  } else if (family == "polynomial") {
    cfg.family = StreamlineFamily::polynomial(to_reals("coefficients", need("coefficients")));
    family_keys = {"coefficients"};
  } else {
    throw InvalidArgument("config key 'family' must be straight, sinusoidal or polynomial");
  }
  for (const char* key : {"slope", "amplitude", "wavenumber", "coefficients"}) {
    if (kv.count(key) && !family_keys.count(key)) {
      throw InvalidArgument(std::string("config key '") + key + "' does not apply to family " + family);
    }
  }

  cfg.grid = GridSpec{*real_or("x_min", 0.0), *real_or("x_max", cfg.params.length), to_real("y_min", need("y_min")),
                      to_real("y_max", need("y_max")), to_count("nx", need("nx")), to_count("ny", need("ny"))};

  const std::string format = take("format").value_or("csv");
  if (format == "csv") {
    cfg.format = FieldFormat::csv;
  } else if (format == "json") {
    cfg.format = FieldFormat::json;
  } else {
    throw InvalidArgument("config key 'format' must be csv or json");
  }
  cfg.output = take("output");
  cfg.gnuplot = take("gnuplot");
  if (cfg.gnuplot && (!cfg.output || cfg.format != FieldFormat::csv)) {
    throw InvalidArgument("gnuplot needs a csv output path");
  }
  return cfg;
}

}  // namespace airyflow::cli
