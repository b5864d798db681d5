// Command-line front end: verification suites and data emission driven by a
// single JSON config.  Exit codes: 0 success, 1 verification failure,
// 2 unknown command or suite, 3 invalid configuration, 4 I/O failure.
#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "ncdq/experiment.hpp"
#include "ncdq/version.hpp"

namespace {

struct Options {
  std::string config_path;
  std::string out_path;
  std::string suite;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool recalibrate = false;
};

ncdq::ExperimentConfig load_config(const Options& opt) {
  ncdq::ExperimentConfig cfg = opt.config_path.empty()
                                   ? ncdq::default_config()
                                   : ncdq::config_from_json(ncdq::read_json_file(opt.config_path));
  if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
  if (opt.seed_set) cfg.seed = opt.seed;
  return cfg;
}

void emit(const ncdq::ExperimentConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty())
    std::cout << text;
  else
    ncdq::write_text_file(cfg.output_path, text);
}

int dispatch(const std::string& command, const Options& opt) {
  const ncdq::ExperimentConfig cfg = load_config(opt);
  if (command == "verify") {
    const auto& names = ncdq::suite_names();
    if (std::find(names.begin(), names.end(), opt.suite) == names.end()) {
      std::cerr << "error: unknown suite: " << opt.suite << "\n";
      return 2;
    }
    const ncdq::VerificationReport report = ncdq::run_suite(opt.suite, cfg, opt.recalibrate);
    emit(cfg, ncdq::report_json_output(report));
    if (!report.pass) {
      std::cerr << report.check << ": " << report.failed_count() << " of " << report.cases.size()
                << " checks failed\n";
      return 1;
    }
    return 0;
  }
  if (command == "scan") {
    emit(cfg, ncdq::scan_csv_output(cfg));
    return 0;
  }
  if (command == "norms") {
    emit(cfg, ncdq::norms_json_output(cfg));
    return 0;
  }
  if (command == "star") {
    emit(cfg, ncdq::star_json_output(cfg));
    return 0;
  }
  if (command == "smooth") {
    emit(cfg, ncdq::smooth_json_output(cfg));
    return 0;
  }
  std::cerr << "error: unknown command\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative-torus deformation workbench"};
  app.set_version_flag("--version", std::string(ncdq::kVersion));
  app.require_subcommand(1);

  Options opt;
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opt.config_path, "JSON experiment configuration");
    cmd->add_option("--out", opt.out_path, "output file (default: stdout)");
  };

  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", opt.suite, "one of: product, smoothing, wick, states, field, oracle")
      ->required();
  add_common(verify);
  auto* seed_opt = verify->add_option("--seed", opt.seed, "override the randomized-case seed");
  verify->add_flag("--recalibrate", opt.recalibrate,
                   "recompute and store the oracle golden table (oracle suite)");
  add_common(app.add_subcommand("scan", "state values along the hbar grid, CSV"));
  add_common(app.add_subcommand("norms", "norm brackets for the configured element, JSON"));
  add_common(app.add_subcommand("star", "deformed products of the configured element, JSON"));
  add_common(app.add_subcommand("smooth", "smoothing of the configured element, JSON"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  opt.seed_set = seed_opt->count() > 0;

  try {
    return dispatch(app.get_subcommands().front()->get_name(), opt);
  } catch (const ncdq::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
