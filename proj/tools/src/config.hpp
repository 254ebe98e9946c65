#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "airyflow/field.hpp"
#include "airyflow/flow.hpp"

namespace airyflow::cli {

/// Settings of the `field` subcommand. Exactly one of u1dot0 / u1L is set.
struct FieldConfig {
  FlowParams params;
  double u10 = 0.0;
  std::optional<double> u1dot0;
  std::optional<double> u1L;
  std::optional<double> c_min;
  std::optional<double> c_max;
  StreamlineFamily family = StreamlineFamily::straight(0.0);
  GridSpec grid;
  FieldFormat format = FieldFormat::csv;
  std::optional<std::string> output;
  std::optional<std::string> gnuplot;
};

/// Parses `key = value` lines; '#' starts a comment. Throws InvalidArgument on
/// unknown keys, duplicates, missing keys and malformed values.
FieldConfig parse_field_config(const std::string& text);

}  // namespace airyflow::cli
