// The CLI front end as a library: config parsing, command execution, CSV
// and JSON rendering, error-to-exit-code mapping, and the bit-exact
// round trip of echoed configs.

#include <doctest.h>

#include <sstream>

#include "timeobs/run.hpp"

using namespace timeobs;

namespace {

ojson bump_spec(double p0, double w) {
  return ojson{{"family", "bump"}, {"p0", p0}, {"sigma_or_w", w}};
}

}  // namespace

TEST_CASE("profile_from_json: families, options, validation") {
  const auto bump = profile_from_json(bump_spec(5.0, 1.0));
  CHECK(bump.support == Interval(4.0, 6.0));

  const auto gauss = profile_from_json(
      ojson{{"family", "gaussian"}, {"p0", 5.0}, {"sigma_or_w", 0.5},
            {"truncate_positive", true}, {"label", "mine"}});
  CHECK(gauss.label == "mine");
  CHECK(gauss.amplitude(-1.0) == cplx{0.0, 0.0});

  const auto shifted = profile_from_json(
      ojson{{"family", "bump"}, {"p0", 5.0}, {"sigma_or_w", 1.0}, {"x0", -2.0}});
  CHECK(std::abs(shifted.amplitude(5.0) -
                 std::polar(1.0, 10.0) * bump.amplitude(5.0)) < 1e-15);

  CHECK_THROWS_AS(profile_from_json(ojson{{"family", "box"}}), ConfigError);
  CHECK_THROWS_AS(profile_from_json(ojson{{"family", "bump"}, {"p0", 1.0}}),
                  ConfigError);
}

TEST_CASE("dispersion_from_spec") {
  CHECK(dispersion_from_spec("nonrel:m=2").kind() ==
        Dispersion::Kind::nonrelativistic);
  CHECK(dispersion_from_spec("rel:m=1.5").parameter() == 1.5);
  CHECK(dispersion_from_spec("cosmo:kappa=0.8").kind() ==
        Dispersion::Kind::cosmological);
  CHECK_THROWS_AS(dispersion_from_spec("lattice:a=1"), ConfigError);
}

TEST_CASE("arrival: shape contract") {
  RunConfig config;
  config.command = "arrival";
  config.profile = bump_spec(5.0, 1.0);
  config.dispersion = "nonrel:m=1";
  config.intervals = {Interval(-2.0, 2.0)};
  config.bins = 64;
  config.tolerance = 1e-6;
  config.format = "csv";

  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["results"].size() == 64);

  double total = 0.0;
  for (const auto& row : result.document["results"]) {
    CHECK(row["mass"].get<double>() >= -1e-5);
    total += row["mass"].get<double>();
  }
  CHECK(total <= 1.0 + 1e-5);

  // CSV: header plus 64 data rows
  std::istringstream csv(result.rendered);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "bin_lo,bin_hi,mass");
  int rows = 0;
  while (std::getline(csv, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 64);
}

TEST_CASE("arrival: auto range when no interval is given") {
  RunConfig config;
  config.command = "arrival";
  config.profile = bump_spec(5.0, 1.0);
  config.bins = 16;
  config.tolerance = 1e-6;
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["metadata"]["total_mass"].get<double>() >= 0.999);
}

TEST_CASE("condprob: empty I gives a zero row") {
  RunConfig config;
  config.command = "condprob";
  config.profile = bump_spec(5.0, 1.0);
  config.intervals = {Interval::empty(), Interval(-0.5, 0.5)};
  config.tolerance = 1e-6;
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["results"][0]["probability"].get<double>() == 0.0);
}

TEST_CASE("dwell: both methods and the left-ideal error path") {
  RunConfig config;
  config.command = "dwell";
  config.profile = bump_spec(5.0, 1.0);
  config.intervals = {Interval(-1.0, 1.0)};
  config.tolerance = 1e-5;
  config.method = "both";
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  REQUIRE(result.document["results"].size() == 2);
  const double momentum = result.document["results"][0]["value"].get<double>();
  const double time = result.document["results"][1]["value"].get<double>();
  CHECK(std::abs(momentum - time) <= 1e-3 * momentum);

  // a profile with weight at p=0 maps to NotInLeftIdeal, exit 3
  RunConfig bad = config;
  bad.profile = ojson{{"family", "gaussian"}, {"p0", 0.0}, {"sigma_or_w", 1.0}};
  const RunOutput err = run(bad);
  CHECK(err.exit_code == 3);
  CHECK(err.document["error"]["type"] == "NotInLeftIdeal");
}

TEST_CASE("config validation errors map to exit 2") {
  RunConfig config;
  config.command = "arrival";
  config.profile = bump_spec(5.0, 1.0);
  config.tolerance = 0.5;  // outside (0, 1e-2]
  CHECK(run(config).exit_code == 2);

  config.tolerance = 1e-6;
  config.command = "frobnicate";
  CHECK(run(config).exit_code == 2);

  config.command = "condprob";
  config.intervals = {};  // missing I and J
  CHECK(run(config).exit_code == 2);
}

TEST_CASE("cosmo commands parse the state spec") {
  ojson state{{"kappa", 1.0},
              {"plus", bump_spec(2.0, 0.7)},
              {"minus", nullptr}};
  RunConfig config;
  config.command = "cosmo-dwell";
  config.profile = state;
  config.intervals = {Interval(-1.0, 1.0)};
  config.tolerance = 1e-6;
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["results"][0]["value"].get<double>() > 0.0);

  RunConfig tim;
  tim.command = "cosmo-time";
  tim.profile = state;
  tim.pscales = {0.01, 1.0, 100.0};
  tim.tolerance = 1e-6;
  const RunOutput tres = run(tim);
  REQUIRE(tres.exit_code == 0);
  CHECK(tres.document["results"].size() == 3);
  const double slope =
      tres.document["metadata"]["slope_omega_over_k"].get<double>();
  CHECK(slope > 0.0);
}

TEST_CASE("aperture command reports the gap to the point limit") {
  RunConfig config;
  config.command = "aperture";
  config.profile = bump_spec(5.0, 1.0);
  config.intervals = {Interval(0.0, 0.5)};
  config.aperture = 0.25;
  config.tolerance = 1e-6;
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["results"][0]["gap"].get<double>() < 1e-2);
}

TEST_CASE("round trip: echoed config reruns bit for bit") {
  RunConfig config;
  config.command = "arrival";
  config.profile = bump_spec(5.0, 1.0);
  config.intervals = {Interval(-2.0, 2.0)};
  config.bins = 32;
  config.tolerance = 1e-6;
  const RunOutput first = run(config);
  REQUIRE(first.exit_code == 0);

  const RunConfig again = config_from_json(first.document["config"]);
  const RunOutput second = run(again);
  REQUIRE(second.exit_code == 0);
  CHECK(first.document["results"].dump() == second.document["results"].dump());
  CHECK(first.rendered == second.rendered);
}

TEST_CASE("config serialization: intervals survive including infinities") {
  RunConfig config;
  config.command = "dwell";
  config.profile = bump_spec(5.0, 1.0);
  config.intervals = {Interval(-1.5, 2.5), Interval::at_least(0.0)};
  const ojson j = config_to_json(config);
  const RunConfig back = config_from_json(j);
  CHECK(back.intervals.size() == 2);
  CHECK(back.intervals[0] == config.intervals[0]);
  CHECK(back.intervals[1] == config.intervals[1]);
}

TEST_CASE("output document carries schema, version and metadata echo") {
  RunConfig config;
  config.command = "ab-moment";
  config.profile = ojson{{"family", "bump"}, {"p0", 5.0}, {"sigma_or_w", 1.0},
                         {"x0", -3.0}};
  config.tolerance = 1e-8;
  const RunOutput result = run(config);
  REQUIRE(result.exit_code == 0);
  CHECK(result.document["schema"] == 1);
  CHECK(result.document.contains("library_version"));
  CHECK(result.document["config"]["command"] == "ab-moment");
  CHECK(result.document["metadata"]["tolerance"].get<double>() == 1e-8);
  CHECK(result.document["results"][0]["moment"].get<double>() > 0.0);
}
