#include "airyflow_cli/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "airyflow/airy.hpp"
#include "airyflow/bvp.hpp"
#include "airyflow/errors.hpp"
#include "airyflow/field.hpp"
#include "airyflow/flow.hpp"
#include "airyflow/verify.hpp"
#include "config.hpp"

namespace airyflow::cli {
namespace {

class IoError : public Error {
 public:
  using Error::Error;
};

void print(std::ostream& out, const std::string& key, double value) { out << key << " = " << format_real(value) << '\n'; }

void print_list(std::ostream& out, const std::string& key, const std::vector<double>& values) {
  out << key << " = [";
  for (std::size_t k = 0; k < values.size(); ++k) out << (k ? ", " : "") << format_real(values[k]);
  out << "]\n";
}

void print_constants(std::ostream& out, const SolutionConstants& sol) {
  print(out, "a", sol.a);
  print(out, "b", sol.b);
  print(out, "c", sol.c);
  print(out, "c1", sol.c1);
  print(out, "c2", sol.c2);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << content;
  if (!file.flush()) throw IoError("cannot write '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

struct FlowOptions {
  FlowParams params;
  double u10 = 0.0;

  void attach(CLI::App& cmd) {
    cmd.add_option("--nu", params.nu, "kinematic viscosity (> 0)")->required();
    cmd.add_option("--grad-term", params.grad_term, "pressure-gradient term q̇/ρ")->required();
    cmd.add_option("--f1", params.f1, "body force component")->required();
    cmd.add_option("--L", params.length, "domain length (> 0)")->required();
    cmd.add_option("--u10", u10, "u1(0)")->required();
  }
};

int airy_command(double t, std::ostream& out) {
  const AiryQuartet q = airy_eval(t);
  print(out, "t", q.t);
  print(out, "ai", q.ai);
  print(out, "ai_prime", q.ai_prime);
  print(out, "bi", q.bi);
  print(out, "bi_prime", q.bi_prime);
  return kOk;
}

int ivp_command(const FlowOptions& opt, double u1dot0, const std::string& emit_path, std::size_t samples,
                std::ostream& out, std::ostream& err) {
  const FlowParams& p = opt.params;
  p.validate();
  if (samples < 2) throw InvalidArgument("--samples must be at least 2");
  const SolutionConstants sol = solve_ivp(InitialData{opt.u10, u1dot0, std::nullopt}, p);
  const std::vector<double> poles = find_poles(sol, 0.0, p.length);
  print_constants(out, sol);
  if (!poles.empty()) {
    print_list(out, "poles", poles);
    err << "error: solution has a pole in [0, L] at s = " << format_real(poles.front()) << '\n';
    return kDomainError;
  }
  print(out, "u1(L)", exact_u1(p.length, p, sol));
  print_list(out, "poles", poles);
  if (!emit_path.empty()) {
    std::string csv = "s,u1\n";
    for (std::size_t k = 0; k < samples; ++k) {
      const double s = k + 1 == samples ? p.length : p.length * static_cast<double>(k) / static_cast<double>(samples - 1);
      csv += format_real(s) + "," + format_real(exact_u1(s, p, sol)) + "\n";
    }
    write_file(emit_path, csv);
  }
  return kOk;
}

std::pair<double, double> bracket_or_default(std::optional<double> lo, std::optional<double> hi, double u10, double u1L,
                                             const FlowParams& p) {
  if (lo.has_value() != hi.has_value()) throw InvalidArgument("--c-min and --c-max go together");
  if (lo) return {*lo, *hi};
  return default_c_bracket(u10, u1L, p);
}

int bvp_command(const FlowOptions& opt, double u1L, std::optional<double> c_min, std::optional<double> c_max,
                std::ostream& out) {
  opt.params.validate();
  const BvpResult r = solve_bvp(opt.u10, u1L, opt.params, bracket_or_default(c_min, c_max, opt.u10, u1L, opt.params));
  print(out, "c", r.solution.c);
  print(out, "u1dot0", r.u1dot0);
  print(out, "residual", r.residual);
  print_list(out, "roots", r.roots);
  out << "excluded = " << r.excluded << '\n';
  return kOk;
}

int field_command(const std::string& config_path, std::ostream& out) {
  const FieldConfig cfg = parse_field_config(read_file(config_path));
  cfg.params.validate();
  cfg.grid.validate();
  const SolutionConstants sol =
      cfg.u1dot0 ? solve_ivp(InitialData{cfg.u10, *cfg.u1dot0, std::nullopt}, cfg.params)
                 : solve_bvp(cfg.u10, *cfg.u1L, cfg.params, bracket_or_default(cfg.c_min, cfg.c_max, cfg.u10, *cfg.u1L, cfg.params))
                       .solution;
  const SampledField field = reconstruct_field(cfg.family, cfg.params, sol, cfg.grid);
  const std::string text = emit(field, cfg.format);
  if (!cfg.output) {
    out << text;
    return kOk;
  }
  write_file(*cfg.output, text);
  if (cfg.gnuplot) write_file(*cfg.gnuplot, gnuplot_script(*cfg.output));
  std::size_t invalid = 0;
  for (const auto& v : field.samples) invalid += v.valid ? 0 : 1;
  print(out, "c", sol.c);
  out << "samples = " << field.samples.size() << '\n';
  out << "invalid = " << invalid << '\n';
  out << "wrote " << *cfg.output << '\n';
  return kOk;
}

int verify_command(std::uint64_t seed, std::ostream& out) {
  bool ok = true;
  for (const CheckResult& r : run_oracle_suite(seed)) {
    out << r.line() << '\n';
    ok = ok && r.passed();
  }
  return ok ? kOk : kDomainError;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form Airy solutions of a streamline-reduced Navier-Stokes model", "airyflow"};
  app.require_subcommand(1);

  double t = 0.0;
  auto* airy = app.add_subcommand("airy", "evaluate Ai, Ai', Bi, Bi' at t");
  airy->add_option("--t", t, "argument")->required();

  FlowOptions ivp_opt;
  double u1dot0 = 0.0;
  std::string emit_path;
  std::size_t samples = 101;
  auto* ivp = app.add_subcommand("ivp", "solve from u1(0) and u1'(0)");
  ivp_opt.attach(*ivp);
  ivp->add_option("--u1dot0", u1dot0, "u1'(0)")->required();
  ivp->add_option("--emit", emit_path, "write a sampled profile (CSV s,u1) to this path");
  ivp->add_option("--samples", samples, "profile sample count for --emit")->capture_default_str();

  FlowOptions bvp_opt;
  double u1L = 0.0;
  std::optional<double> c_min, c_max;
  auto* bvp = app.add_subcommand("bvp", "solve from u1(0) and u1(L)");
  bvp_opt.attach(*bvp);
  bvp->add_option("--u1L", u1L, "u1(L)")->required();
  bvp->add_option("--c-min", c_min, "lower end of the c search bracket");
  bvp->add_option("--c-max", c_max, "upper end of the c search bracket");

  std::string config_path;
  auto* field = app.add_subcommand("field", "reconstruct and emit a sampled velocity field");
  field->add_option("--config", config_path, "key = value configuration file")->required();

  std::uint64_t seed = 1;
  auto* verify = app.add_subcommand("verify", "run the oracle suite");
  verify->add_option("--seed", seed, "seed for the randomized cases")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Subcommand help lands here as CallForHelp too, but with the subcommand parsed.
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      for (const auto* sub : app.get_subcommands()) out << sub->help();
      if (app.get_subcommands().empty()) out << app.help();
      return kOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (airy->parsed()) return airy_command(t, out);
    if (ivp->parsed()) return ivp_command(ivp_opt, u1dot0, emit_path, samples, out, err);
    if (bvp->parsed()) return bvp_command(bvp_opt, u1L, c_min, c_max, out);
    if (field->parsed()) return field_command(config_path, out);
    return verify_command(seed, out);
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace airyflow::cli
