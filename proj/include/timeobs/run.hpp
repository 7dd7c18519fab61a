#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "timeobs/cosmology.hpp"
#include "timeobs/interval.hpp"
#include "timeobs/profile.hpp"

namespace timeobs {

using ojson = nlohmann::ordered_json;

// One CLI invocation. Everything that affects the numbers is in here, so a
// config echoed into an output document reruns bit-for-bit.
struct RunConfig {
  std::string command;  // arrival dwell condprob aperture ab-moment
                        // cosmo-dwell cosmo-time validate
  ojson profile;        // profile spec, or cosmo state spec for cosmo-*
  std::string dispersion = "nonrel:m=1";
  std::vector<Interval> intervals;
  int bins = 64;
  double tolerance = 1e-6;
  double aperture = 0.25;
  std::vector<double> pscales;
  std::string method = "momentum";  // dwell: momentum | time | both
  std::string format = "json";      // json | csv
  std::string out;                  // output path; empty -> stdout
};

ojson config_to_json(const RunConfig& config);
RunConfig config_from_json(const ojson& j);

// Profile spec: {"family": "gaussian"|"odd_gaussian"|"bump", "p0": ...,
// "sigma_or_w": ..., "truncate_positive": bool, "label": ...} with an
// optional "x0" position shift.
MomentumProfile profile_from_json(const ojson& j);

// "nonrel:m=..", "rel:m=..", "cosmo:kappa=.."
Dispersion dispersion_from_spec(const std::string& spec);

// {"kappa": ..., "plus": profile-spec|null, "minus": profile-spec|null}
CosmoState cosmo_state_from_json(const ojson& j);

struct RunOutput {
  int exit_code = 0;
  ojson document;        // result document or error record
  std::string rendered;  // what gets written (JSON text or CSV)
};

// Execute a config; never throws, errors become machine-readable records
// with distinct exit codes.
RunOutput run(const RunConfig& config);

int exit_code_for(const std::exception& e);

}  // namespace timeobs
