// timeobs: time-observable quantities of free quantum wavepackets and the
// Robertson-Walker Wheeler-DeWitt model. Dispatches to the library and
// writes CSV/JSON result tables with a full parameter echo.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "timeobs/run.hpp"
#include "timeobs/version.hpp"

namespace {

timeobs::ojson parse_profile_arg(const std::string& arg) {
  if (arg.empty()) return {};
  if (arg.front() == '{') {
    return timeobs::ojson::parse(arg);
  }
  std::ifstream in(arg);
  if (!in) throw timeobs::ConfigError("cannot open profile file '" + arg + "'");
  timeobs::ojson j;
  in >> j;
  return j;
}

timeobs::Interval parse_interval_arg(const std::string& arg) {
  const auto comma = arg.find(',');
  if (comma == std::string::npos)
    throw timeobs::ConfigError("--interval wants lo,hi");
  auto parse_bound = [](const std::string& s) -> double {
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size())
      throw timeobs::ConfigError("bad interval bound '" + s + "'");
    return v;
  };
  return timeobs::Interval(parse_bound(arg.substr(0, comma)),
                           parse_bound(arg.substr(comma + 1)));
}

int emit(const timeobs::RunOutput& result, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << result.rendered;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write '" << out_path << "'\n";
      return 2;
    }
    out << result.rendered;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"time observables of wavepackets and the Wheeler-DeWitt model"};
  app.set_version_flag("--version", TIMEOBS_VERSION);

  std::string config_path;
  app.add_option("--config", config_path,
                 "run a config JSON (an output document's 'config' block or "
                 "a bare config object)");

  std::string profile_arg, dispersion = "nonrel:m=1", format = "json",
              out_path, method = "momentum";
  std::vector<std::string> interval_args;
  std::vector<double> pscales;
  int bins = 64;
  double tol = 1e-6, aperture = 0.25;

  auto add_common = [&](CLI::App* cmd, bool needs_profile) {
    if (needs_profile)
      cmd->add_option("--profile", profile_arg,
                      "profile spec: JSON file path or inline JSON object");
    cmd->add_option("--dispersion", dispersion,
                    "nonrel:m=.. | rel:m=.. | cosmo:kappa=..");
    cmd->add_option("--interval", interval_args, "interval lo,hi (repeatable)");
    cmd->add_option("--bins", bins, "number of bins");
    cmd->add_option("--tol", tol, "tolerance (0, 1e-2]");
    cmd->add_option("--format", format, "csv | json");
    cmd->add_option("--out", out_path, "output path (default stdout)");
    return cmd;
  };

  auto* arrival = add_common(
      app.add_subcommand("arrival", "arrival-time distribution P0"), true);
  (void)arrival;
  auto* dwell = add_common(
      app.add_subcommand("dwell", "dwell time w_psi(E_X(J))"), true);
  dwell->add_option("--method", method, "momentum | time | both");
  add_common(app.add_subcommand(
                 "condprob", "conditional probability P(I|J); I first, J second"),
             true);
  auto* ap = add_common(
      app.add_subcommand("aperture", "finite-aperture mass Phi_a(E_T(I))"),
      true);
  ap->add_option("--aperture", aperture, "aperture width a > 0");
  add_common(app.add_subcommand("ab-moment",
                                "first arrival moment (time operator)"),
             true);
  add_common(app.add_subcommand("cosmo-dwell",
                                "scale dwell time of a Wheeler-DeWitt state"),
             true);
  auto* ct = add_common(
      app.add_subcommand("cosmo-time", "emergent time moments <T_p>"), true);
  ct->add_option("--pscale", pscales, "scale parameter p > 0 (repeatable)");
  add_common(app.add_subcommand("validate",
                                "run the oracle cross-check suite"),
             false);

  app.require_subcommand(0, 1);
  CLI11_PARSE(app, argc, argv);

  try {
    timeobs::RunConfig config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in)
        throw timeobs::ConfigError("cannot open config '" + config_path + "'");
      timeobs::ojson j;
      in >> j;
      if (j.contains("config")) j = j["config"];  // accept output documents
      config = timeobs::config_from_json(j);
    } else {
      const auto subs = app.get_subcommands();
      if (subs.empty()) {
        std::cerr << app.help();
        return 2;
      }
      config.command = subs[0]->get_name();
      if (!profile_arg.empty())
        config.profile = parse_profile_arg(profile_arg);
      config.dispersion = dispersion;
      for (const std::string& s : interval_args)
        config.intervals.push_back(parse_interval_arg(s));
      config.bins = bins;
      config.tolerance = tol;
      config.aperture = aperture;
      config.pscales = pscales;
      config.method = method;
      config.format = format;
      config.out = out_path;
    }
    const timeobs::RunOutput result = timeobs::run(config);
    return emit(result, config.out);
  } catch (const std::exception& e) {
    timeobs::ojson err;
    err["schema"] = 1;
    err["error"] = {{"type", "ConfigError"},
                    {"message", e.what()},
                    {"exit_code", timeobs::exit_code_for(e)}};
    std::cout << err.dump(2) << "\n";
    return timeobs::exit_code_for(e);
  }
}
