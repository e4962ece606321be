#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "phsusy/phsusy.hpp"

namespace {

using phsusy::ConfigError;
using phsusy::RunConfig;

// Command-line values that were explicitly provided and therefore override
// the config file (which in turn overrides the built-in defaults).
struct Overrides {
  std::optional<double> omega, alpha, beta, z, quad_radius;
  std::optional<int> n_max, samples, quad_radial, quad_angular;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> amplitudes, suites;
  bool hermitian_limit = false;

  void apply(RunConfig& cfg) const {
    if (omega) cfg.omega = *omega;
    if (alpha) cfg.alpha = *alpha;
    if (beta) cfg.beta = *beta;
    if (z) cfg.z = *z;
    if (hermitian_limit) cfg.hermitian_limit = true;
    if (n_max) cfg.n_max = *n_max;
    if (samples) cfg.samples = *samples;
    if (seed) cfg.seed = *seed;
    if (quad_radius) cfg.quadrature.radius = *quad_radius;
    if (quad_radial) cfg.quadrature.n_radial = *quad_radial;
    if (quad_angular) cfg.quadrature.n_angular = *quad_angular;
    if (amplitudes) phsusy::apply_config_entry(cfg, "amplitudes", *amplitudes);
    if (suites) phsusy::apply_config_entry(cfg, "suites", *suites);
  }
};

void add_model_options(CLI::App* sub, Overrides& o, std::optional<std::string>& config_path,
                       std::optional<std::string>& out_path, std::optional<std::string>& format) {
  sub->add_option("--config", config_path, "key=value config file; flags override its entries");
  sub->add_option("--omega", o.omega, "level splitting");
  sub->add_option("--alpha", o.alpha, "lowering coupling");
  sub->add_option("--beta", o.beta, "raising coupling");
  sub->add_option("--z", o.z, "metric family parameter");
  sub->add_flag("--hermitian-limit", o.hermitian_limit,
                "allow alpha == beta (the metric degenerates to the identity)");
  sub->add_option("--n-max", o.n_max, "bosonic cutoff (number of retained levels)");
  sub->add_option("--seed", o.seed, "seed for the sampled identity battery");
  sub->add_option("--samples", o.samples, "number of sampled parameter points");
  sub->add_option("--amplitudes", o.amplitudes, "comma-separated coherent amplitudes, e.g. 0.2,0.1+0.1i");
  sub->add_option("--suites", o.suites, "comma-separated suite list");
  sub->add_option("--quad-radius", o.quad_radius, "radial cutoff of the resolution quadrature");
  sub->add_option("--quad-radial", o.quad_radial, "radial node count");
  sub->add_option("--quad-angular", o.quad_angular, "angular node count");
  sub->add_option("--out", out_path, "write output to this file instead of stdout");
  sub->add_option("--format", format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

RunConfig resolve_config(const Overrides& o, const std::optional<std::string>& config_path) {
  RunConfig cfg;
  if (config_path) phsusy::load_config_file(cfg, *config_path);
  o.apply(cfg);
  return cfg;
}

void write_output(const std::string& text, const std::optional<std::string>& out_path) {
  if (out_path) {
    std::ofstream f(*out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + *out_path + "'");
    f << text;
  } else {
    std::cout << text;
  }
}

int emit_report(const phsusy::Report& rep, const std::optional<std::string>& out_path,
                const std::string& format) {
  std::string text;
  if (format == "json")
    text = phsusy::report_to_json(rep).dump(2) + "\n";
  else
    text = phsusy::report_to_csv(rep);
  write_output(text, out_path);
  return rep.failures() == 0 ? 0 : 1;
}

struct WallClock {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  ~WallClock() {
    const auto dt = std::chrono::steady_clock::now() - t0;
    std::cerr << "wall_time_ms="
              << std::chrono::duration_cast<std::chrono::milliseconds>(dt).count() << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for a two-level model with real spectrum, its positive "
               "metric, phermionic ladder operators, and supercoherent states"};
  app.require_subcommand(1);

  Overrides o;
  std::optional<std::string> config_path, out_path, format;

  CLI::App* verify = app.add_subcommand("verify", "run the configured residual suites");
  add_model_options(verify, o, config_path, out_path, format);

  CLI::App* identity =
      app.add_subcommand("identity", "run the sampled identity battery and resolution quadrature");
  add_model_options(identity, o, config_path, out_path, format);

  CLI::App* sweep = app.add_subcommand("sweep", "tabulate derived quantities along one parameter");
  add_model_options(sweep, o, config_path, out_path, format);
  phsusy::SweepSpec sw;
  sweep->add_option("--param", sw.param, "swept parameter: z, omega, alpha, or beta")
      ->check(CLI::IsMember({"z", "omega", "alpha", "beta"}));
  sweep->add_option("--from", sw.from, "first grid value");
  sweep->add_option("--to", sw.to, "last grid value");
  sweep->add_option("--steps", sw.steps, "number of grid points");

  CLI::App* spectrum =
      app.add_subcommand("spectrum", "print eigenvalues and derived scalars at one point");
  add_model_options(spectrum, o, config_path, out_path, format);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    WallClock clock;
    RunConfig cfg = resolve_config(o, config_path);
    if (verify->parsed()) {
      phsusy::validate_config(cfg);
      return emit_report(phsusy::run_suites(cfg), out_path, format.value_or("json"));
    }
    if (identity->parsed()) {
      cfg.suites = {"identity"};
      phsusy::validate_config(cfg);
      return emit_report(phsusy::run_suites(cfg), out_path, format.value_or("json"));
    }
    if (sweep->parsed()) {
      if (format.value_or("csv") != "csv")
        throw ConfigError("sweep output is tabular; only --format csv is supported");
      write_output(phsusy::sweep_csv(cfg, sw), out_path);
      return 0;
    }
    // spectrum
    if (format.value_or("json") != "json")
      throw ConfigError("spectrum output is structured; only --format json is supported");
    write_output(phsusy::spectrum_json(cfg).dump(2) + "\n", out_path);
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const phsusy::ValidityError& e) {
    std::cerr << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const phsusy::DegenerateError& e) {
    std::cerr << "degenerate point: " << e.what() << "\n";
    return 2;
  } catch (const phsusy::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const phsusy::ConsistencyError& e) {
    std::cerr << "consistency failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
