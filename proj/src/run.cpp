#include "timeobs/run.hpp"

#include <cmath>
#include <cstdio>

#include "timeobs/povm.hpp"
#include "timeobs/validate.hpp"
#include "timeobs/version.hpp"
#include "timeobs/weights.hpp"

namespace timeobs {

namespace {

std::string fmt_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ojson interval_to_json(const Interval& iv) {
  ojson j = ojson::array();
  for (double b : {iv.lo, iv.hi}) {
    if (std::isinf(b))
      j.push_back(b > 0 ? "inf" : "-inf");
    else
      j.push_back(b);
  }
  return j;
}

double bound_from_json(const ojson& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ConfigError("bad interval bound '" + s + "'");
  }
  if (!j.is_number()) throw ConfigError("interval bound must be a number");
  return j.get<double>();
}

// CSV from an array of flat objects: header from the first row's key order.
std::string render_csv(const ojson& rows) {
  if (!rows.is_array() || rows.empty()) return "";
  std::string out;
  bool first = true;
  for (auto& [key, val] : rows[0].items()) {
    (void)val;
    if (!first) out += ',';
    out += key;
    first = false;
  }
  out += '\n';
  for (const auto& row : rows) {
    first = true;
    for (auto& [key, val] : row.items()) {
      (void)key;
      if (!first) out += ',';
      if (val.is_number_float())
        out += fmt_double(val.get<double>());
      else if (val.is_boolean())
        out += val.get<bool>() ? "true" : "false";
      else if (val.is_string())
        out += val.get<std::string>();
      else
        out += val.dump();
      first = false;
    }
    out += '\n';
  }
  return out;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw ConfigError(msg);
}

Interval need_interval(const RunConfig& config, size_t idx,
                       const std::string& what) {
  require(config.intervals.size() > idx,
          "command '" + config.command + "' needs " + what +
              " (--interval lo,hi)");
  return config.intervals[idx];
}

ojson run_arrival(const RunConfig& config) {
  const MomentumProfile phi = profile_from_json(config.profile);
  const Dispersion disp = dispersion_from_spec(config.dispersion);
  const Interval range = config.intervals.empty()
                             ? auto_time_range(phi, disp, 1e-6,
                                               config.tolerance)
                             : config.intervals[0];
  const auto partition = uniform_partition(range, config.bins);
  const ArrivalDistribution dist =
      arrival_distribution(phi, disp, partition, config.tolerance);
  ojson rows = ojson::array();
  for (const ArrivalBin& b : dist.bins)
    rows.push_back({{"bin_lo", b.bin.lo}, {"bin_hi", b.bin.hi},
                    {"mass", b.mass}});
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"profile", phi.label},
                     {"dispersion", disp.spec_string()},
                     {"range", interval_to_json(range)},
                     {"bins", config.bins},
                     {"total_mass", dist.total_mass},
                     {"first_moment", dist.first_moment},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_dwell(const RunConfig& config) {
  const MomentumProfile phi = profile_from_json(config.profile);
  const Dispersion disp = dispersion_from_spec(config.dispersion);
  const Wavepacket wp{phi, disp};
  const Interval j = need_interval(config, 0, "the position interval J");
  require(config.method == "momentum" || config.method == "time" ||
              config.method == "both",
          "dwell method must be momentum, time or both");
  ojson rows = ojson::array();
  auto add = [&rows, &wp, &j, &config](DwellMethod m, const char* name) {
    const DwellResult r = dwell_time(wp, j, config.tolerance, m);
    rows.push_back({{"method", name},
                    {"value", r.value},
                    {"abs_error_estimate", r.quad.abs_error_estimate},
                    {"converged", r.quad.converged}});
  };
  if (config.method != "time") add(DwellMethod::momentum_domain, "momentum");
  if (config.method != "momentum") add(DwellMethod::time_domain, "time");
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"profile", phi.label},
                     {"dispersion", disp.spec_string()},
                     {"J", interval_to_json(j)},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_condprob(const RunConfig& config) {
  const MomentumProfile phi = profile_from_json(config.profile);
  const Dispersion disp = dispersion_from_spec(config.dispersion);
  const Wavepacket wp{phi, disp};
  const Interval i = need_interval(config, 0, "the time interval I");
  const Interval j = need_interval(config, 1, "the position interval J");
  const double p = conditional_probability(wp, i, j, config.tolerance);
  const DwellResult denom =
      dwell_time(wp, j, config.tolerance, DwellMethod::momentum_domain);
  ojson rows = ojson::array();
  rows.push_back({{"probability", p},
                  {"numerator", p * denom.value},
                  {"denominator", denom.value}});
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"profile", phi.label},
                     {"dispersion", disp.spec_string()},
                     {"I", interval_to_json(i)},
                     {"J", interval_to_json(j)},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_aperture(const RunConfig& config) {
  const MomentumProfile phi = profile_from_json(config.profile);
  const Dispersion disp = dispersion_from_spec(config.dispersion);
  const Interval i = need_interval(config, 0, "the time interval I");
  require(config.aperture > 0.0, "--aperture must be positive");
  const double mass =
      finite_aperture_mass(phi, disp, config.aperture, i, config.tolerance);
  const double limit = povm_mass(phi, disp, i, config.tolerance);
  ojson rows = ojson::array();
  rows.push_back({{"aperture", config.aperture},
                  {"mass", mass},
                  {"limit_mass", limit},
                  {"gap", std::abs(mass - limit)}});
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"profile", phi.label},
                     {"dispersion", disp.spec_string()},
                     {"I", interval_to_json(i)},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_ab_moment(const RunConfig& config) {
  const MomentumProfile phi = profile_from_json(config.profile);
  const Dispersion disp = dispersion_from_spec(config.dispersion);
  const double moment = ab_time_moment(phi, disp, config.tolerance);
  ojson rows = ojson::array();
  rows.push_back({{"moment", moment}});
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"profile", phi.label},
                     {"dispersion", disp.spec_string()},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_cosmo_dwell(const RunConfig& config) {
  const CosmoState state = cosmo_state_from_json(config.profile);
  const Interval j = need_interval(config, 0, "the log-scale interval J");
  const double value = scale_dwell(state, j, config.tolerance);
  ojson rows = ojson::array();
  rows.push_back({{"value", value}});
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"kappa", state.params.kappa},
                     {"plus", state.plus.label},
                     {"minus", state.minus.label},
                     {"J", interval_to_json(j)},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_cosmo_time(const RunConfig& config) {
  const CosmoState state = cosmo_state_from_json(config.profile);
  std::vector<double> ps = config.pscales;
  if (ps.empty()) ps.push_back(1.0);
  const double t1 = emergent_time_moment(state, 1.0, config.tolerance);
  const double slope = expected_omega_over_k(state, config.tolerance);
  ojson rows = ojson::array();
  for (double p : ps) {
    require(p > 0.0, "--pscale must be positive");
    rows.push_back(
        {{"p_scale", p},
         {"moment", emergent_time_moment(state, p, config.tolerance)}});
  }
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"kappa", state.params.kappa},
                     {"plus", state.plus.label},
                     {"minus", state.minus.label},
                     {"t1", t1},
                     {"slope_omega_over_k", slope},
                     {"tolerance", config.tolerance}};
  return doc;
}

ojson run_validate(int& exit_code) {
  const auto cases = run_validation_suite();
  ojson rows = ojson::array();
  bool all_pass = true;
  for (const ValidationCase& c : cases) {
    rows.push_back({{"name", c.name},
                    {"value", c.main_value},
                    {"oracle", c.oracle_value},
                    {"rel_diff", c.rel_diff},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}});
    all_pass = all_pass && c.pass;
    std::fprintf(stderr, "[%s] %-24s value=%.8g oracle=%.8g rel=%.2e\n",
                 c.pass ? "PASS" : "FAIL", c.name.c_str(), c.main_value,
                 c.oracle_value, c.rel_diff);
  }
  exit_code = all_pass ? 0 : 1;
  ojson doc;
  doc["results"] = rows;
  doc["metadata"] = {{"cases", static_cast<int>(cases.size())},
                     {"all_pass", all_pass}};
  return doc;
}

}  // namespace

ojson config_to_json(const RunConfig& config) {
  ojson j;
  j["command"] = config.command;
  j["profile"] = config.profile;
  j["dispersion"] = config.dispersion;
  ojson ivs = ojson::array();
  for (const Interval& iv : config.intervals) ivs.push_back(interval_to_json(iv));
  j["intervals"] = ivs;
  j["bins"] = config.bins;
  j["tolerance"] = config.tolerance;
  j["aperture"] = config.aperture;
  j["pscales"] = config.pscales;
  j["method"] = config.method;
  j["format"] = config.format;
  j["out"] = config.out;
  return j;
}

RunConfig config_from_json(const ojson& j) {
  RunConfig c;
  require(j.is_object(), "config must be a JSON object");
  require(j.contains("command"), "config needs a 'command'");
  c.command = j.at("command").get<std::string>();
  if (j.contains("profile")) c.profile = j.at("profile");
  if (j.contains("dispersion"))
    c.dispersion = j.at("dispersion").get<std::string>();
  if (j.contains("intervals")) {
    for (const auto& iv : j.at("intervals")) {
      require(iv.is_array() && iv.size() == 2,
              "interval must be a [lo, hi] pair");
      c.intervals.emplace_back(bound_from_json(iv[0]), bound_from_json(iv[1]));
    }
  }
  if (j.contains("bins")) c.bins = j.at("bins").get<int>();
  if (j.contains("tolerance")) c.tolerance = j.at("tolerance").get<double>();
  if (j.contains("aperture")) c.aperture = j.at("aperture").get<double>();
  if (j.contains("pscales"))
    c.pscales = j.at("pscales").get<std::vector<double>>();
  if (j.contains("method")) c.method = j.at("method").get<std::string>();
  if (j.contains("format")) c.format = j.at("format").get<std::string>();
  if (j.contains("out")) c.out = j.at("out").get<std::string>();
  return c;
}

MomentumProfile profile_from_json(const ojson& j) {
  require(j.is_object(), "profile spec must be a JSON object");
  require(j.contains("family"), "profile spec needs 'family'");
  const std::string family = j.at("family").get<std::string>();
  require(j.contains("p0") && j.contains("sigma_or_w"),
          "profile spec needs 'p0' and 'sigma_or_w'");
  const double p0 = j.at("p0").get<double>();
  const double sw = j.at("sigma_or_w").get<double>();
  const bool trunc =
      j.contains("truncate_positive") && j.at("truncate_positive").get<bool>();

  MomentumProfile phi;
  if (family == "gaussian") {
    phi = profiles::gaussian(p0, sw, trunc);
  } else if (family == "odd_gaussian") {
    require(!trunc, "odd_gaussian does not take truncate_positive");
    phi = profiles::odd_gaussian(p0, sw);
  } else if (family == "bump") {
    require(!trunc, "bump does not take truncate_positive");
    phi = profiles::bump(p0, sw);
  } else {
    throw ConfigError("unknown profile family '" + family + "'");
  }
  if (j.contains("x0")) {
    const double x0 = j.at("x0").get<double>();
    if (x0 != 0.0) phi = profiles::position_shift(phi, x0);
  }
  if (j.contains("label")) phi.label = j.at("label").get<std::string>();
  return phi;
}

Dispersion dispersion_from_spec(const std::string& spec) {
  double v = 0.0;
  if (std::sscanf(spec.c_str(), "nonrel:m=%lf", &v) == 1)
    return Dispersion::nonrelativistic(v);
  if (std::sscanf(spec.c_str(), "rel:m=%lf", &v) == 1)
    return Dispersion::relativistic(v);
  if (std::sscanf(spec.c_str(), "cosmo:kappa=%lf", &v) == 1)
    return Dispersion::cosmological(v);
  throw ConfigError("bad dispersion spec '" + spec +
                    "' (want nonrel:m=.., rel:m=.., cosmo:kappa=..)");
}

CosmoState cosmo_state_from_json(const ojson& j) {
  require(j.is_object(), "cosmo state must be a JSON object");
  require(j.contains("kappa"), "cosmo state needs 'kappa'");
  CosmoState state{zero_profile(), zero_profile(),
                   {j.at("kappa").get<double>()}};
  require(state.params.kappa > 0.0, "kappa must be positive");
  if (j.contains("plus") && !j.at("plus").is_null())
    state.plus = profile_from_json(j.at("plus"));
  if (j.contains("minus") && !j.at("minus").is_null())
    state.minus = profile_from_json(j.at("minus"));
  return state;
}

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return "ConfigError";
  if (dynamic_cast<const NotInLeftIdeal*>(&e)) return "NotInLeftIdeal";
  if (dynamic_cast<const NonConvergence*>(&e)) return "NonConvergence";
  if (dynamic_cast<const SingularWeight*>(&e)) return "SingularWeight";
  if (dynamic_cast<const ZeroCondition*>(&e)) return "ZeroCondition";
  if (dynamic_cast<const HermiticityViolation*>(&e))
    return "HermiticityViolation";
  if (dynamic_cast<const NegativeValue*>(&e)) return "NegativeValue";
  if (dynamic_cast<const UnboundedInterval*>(&e)) return "UnboundedInterval";
  if (dynamic_cast<const DomainError*>(&e)) return "DomainError";
  if (dynamic_cast<const NonFiniteSample*>(&e)) return "NonFiniteSample";
  if (dynamic_cast<const Error*>(&e)) return "Error";
  return "Exception";
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return 2;
  if (dynamic_cast<const NotInLeftIdeal*>(&e)) return 3;
  if (dynamic_cast<const NonConvergence*>(&e)) return 4;
  if (dynamic_cast<const SingularWeight*>(&e)) return 5;
  if (dynamic_cast<const ZeroCondition*>(&e)) return 6;
  if (dynamic_cast<const HermiticityViolation*>(&e)) return 7;
  if (dynamic_cast<const NegativeValue*>(&e)) return 7;
  if (dynamic_cast<const UnboundedInterval*>(&e)) return 8;
  if (dynamic_cast<const DomainError*>(&e)) return 8;
  if (dynamic_cast<const NonFiniteSample*>(&e)) return 8;
  if (dynamic_cast<const Error*>(&e)) return 9;
  return 9;
}

RunOutput run(const RunConfig& config) {
  RunOutput out;
  try {
    require(config.tolerance > 0.0 && config.tolerance <= 1e-2,
            "tolerance must be in (0, 1e-2]");
    require(config.format == "json" || config.format == "csv",
            "format must be json or csv");
    require(config.bins >= 1, "bins must be >= 1");

    ojson doc;
    int exit_code = 0;
    if (config.command == "arrival")
      doc = run_arrival(config);
    else if (config.command == "dwell")
      doc = run_dwell(config);
    else if (config.command == "condprob")
      doc = run_condprob(config);
    else if (config.command == "aperture")
      doc = run_aperture(config);
    else if (config.command == "ab-moment")
      doc = run_ab_moment(config);
    else if (config.command == "cosmo-dwell")
      doc = run_cosmo_dwell(config);
    else if (config.command == "cosmo-time")
      doc = run_cosmo_time(config);
    else if (config.command == "validate")
      doc = run_validate(exit_code);
    else
      throw ConfigError("unknown command '" + config.command + "'");

    ojson full;
    full["schema"] = 1;
    full["library_version"] = TIMEOBS_VERSION;
    full["command"] = config.command;
    full["config"] = config_to_json(config);
    if (doc.contains("metadata")) full["metadata"] = doc["metadata"];
    full["results"] = doc["results"];
    out.document = full;
    out.exit_code = exit_code;
    out.rendered = config.format == "csv" ? render_csv(full["results"])
                                          : full.dump(2) + "\n";
  } catch (const std::exception& e) {
    out.exit_code = exit_code_for(e);
    ojson err;
    err["schema"] = 1;
    err["error"] = {{"type", error_name(e)},
                    {"message", e.what()},
                    {"exit_code", out.exit_code}};
    out.document = err;
    out.rendered = err.dump(2) + "\n";
  }
  return out;
}

}  // namespace timeobs
