// sectorsec: secrecy-outage sweeps for a sectored multicast relay network.
//
//   sectorsec analytic --config <path> --out <path> [--weights standard|paper-printed]
//   sectorsec simulate --config <path> --out <path> --trials <n> --seed <n>
//                      [--correlation independent|shared]
//   sectorsec compare  --config <path> --out <path> --trials <n> --seed <n>
//                      [--tolerance <log10>]
//
// Optional --gnuplot <path> writes a plot script next to the CSV.
// SECTORSEC_THREADS caps Monte Carlo worker parallelism (0 or unset = auto).
// Exit codes: 0 success, 2 config/validation error, 3 numeric failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "sectorsec/errors.hpp"
#include "sectorsec/sweep.hpp"

namespace {

struct CliOptions {
  std::string config_path;
  std::string out_path;
  std::string gnuplot_path;
  std::string weights = "standard";
  std::string correlation = "independent";
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double tolerance = 0.25;
};

void add_common(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--config", opt.config_path, "scenario/sweep config file")->required();
  cmd->add_option("--out", opt.out_path, "output CSV path")->required();
  cmd->add_option("--gnuplot", opt.gnuplot_path, "also write a gnuplot script here");
}

void add_mc(CLI::App* cmd, CliOptions& opt) {
  cmd->add_option("--trials", opt.trials, "Monte Carlo trials per point")->required();
  cmd->add_option("--seed", opt.seed, "Monte Carlo seed")->required();
}

sectorsec::SweepSpec make_spec(const CliOptions& opt) {
  sectorsec::SweepSpec spec = sectorsec::load_sweep_file(opt.config_path);
  spec.output_path = opt.out_path;
  spec.mc_trials = opt.trials;
  spec.seed = opt.seed;
  spec.weights = opt.weights == "paper-printed" ? sectorsec::HoltzmanWeights::paper_printed()
                                                : sectorsec::HoltzmanWeights::standard();
  spec.correlation = opt.correlation == "shared" ? sectorsec::CorrelationMode::SharedDraws
                                                 : sectorsec::CorrelationMode::Independent;
  return spec;
}

void emit(const sectorsec::SweepSpec& spec, const sectorsec::SweepResult& result,
          const std::string& gnuplot_path) {
  sectorsec::write_file(spec.output_path, sectorsec::to_csv(result));
  if (!gnuplot_path.empty())
    sectorsec::write_file(gnuplot_path, sectorsec::gnuplot_script(spec.output_path, result));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"secrecy outage analysis for sectored multicast relaying"};
  app.require_subcommand(1);

  CliOptions opt;
  CLI::App* analytic = app.add_subcommand("analytic", "closed-form and reference-integral sweep");
  add_common(analytic, opt);
  analytic->add_option("--weights", opt.weights, "three-point weights preset")
      ->check(CLI::IsMember({"standard", "paper-printed"}));

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo sweep");
  add_common(simulate, opt);
  add_mc(simulate, opt);
  simulate->add_option("--correlation", opt.correlation, "draw correlation mode")
      ->check(CLI::IsMember({"independent", "shared"}));

  CLI::App* compare = app.add_subcommand("compare", "analytic vs Monte Carlo comparison");
  add_common(compare, opt);
  add_mc(compare, opt);
  compare->add_option("--tolerance", opt.tolerance, "flag |dlog10| deviations above this");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*analytic) {
      const auto spec = make_spec(opt);
      emit(spec, sectorsec::run_analytic(spec), opt.gnuplot_path);
    } else if (*simulate) {
      if (opt.trials == 0) throw sectorsec::ConfigError("--trials must be >= 1", {"trials"});
      const auto spec = make_spec(opt);
      emit(spec, sectorsec::run_simulate(spec), opt.gnuplot_path);
    } else if (*compare) {
      if (opt.trials == 0) throw sectorsec::ConfigError("--trials must be >= 1", {"trials"});
      const auto spec = make_spec(opt);
      const auto outcome = sectorsec::run_compare(spec, opt.tolerance);
      emit(spec, outcome.result, opt.gnuplot_path);
      std::fputs(outcome.summary.c_str(), stdout);
    }
  } catch (const sectorsec::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const sectorsec::NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
