// Copyright 2026 The cointurn Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cointurn/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "CLI11.hpp"

#include "cointurn/classifier.hpp"
#include "cointurn/errors.hpp"
#include "cointurn/exact.hpp"
#include "cointurn/json_output.hpp"
#include "cointurn/limit_laws.hpp"
#include "cointurn/montecarlo.hpp"
#include "cointurn/numeric.hpp"
#include "cointurn/random.hpp"
#include "cointurn/schedule.hpp"

namespace cointurn {
namespace {

constexpr unsigned kMaxThreads = 256;
constexpr unsigned kMaxMomentOrder = 64;
constexpr std::size_t kMaxGridPoints = 1'000'000;
constexpr std::size_t kMaxAppendixHorizon = 10'000'000;
constexpr std::size_t kMaxClassifyHorizon = 2'000'000;

// Thrown for bad option values after CLI11 has accepted the syntax.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

enum class Format { kJson, kCsv };

struct Common {
  std::string schedule;
  std::size_t n = 0;
  std::size_t paths = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::string format = "json";
  std::string output;
};

struct Outcome {
  std::string body;
  int code = kExitOk;
};

// Validation result: everything checked, only the computation left.
using Job = std::function<Outcome()>;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  const char* env = std::getenv(kSeedEnvironmentVariable);
  if (env == nullptr || *env == '\0') return 0;
  const std::string_view text(env);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size(),
          std::string(kSeedEnvironmentVariable) + " must be an unsigned integer, got '" +
              std::string(text) + "'");
  return value;
}

Format resolve_format(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  throw UsageError("--format must be json or csv, got '" + name + "'");
}

void check_threads(unsigned threads) {
  require(threads >= 1 && threads <= kMaxThreads,
          "--threads must lie in [1, " + std::to_string(kMaxThreads) + "]");
}

void check_horizons(const std::vector<std::size_t>& horizons, std::size_t cap) {
  require(!horizons.empty(), "--horizons must not be empty");
  for (std::size_t i = 0; i < horizons.size(); ++i) {
    require(horizons[i] >= 1, "--horizons entries must be >= 1");
    require(horizons[i] <= cap, "--horizons entries must be <= " + std::to_string(cap));
    require(i == 0 || horizons[i] > horizons[i - 1],
            "--horizons must be strictly ascending");
  }
}

Json header() {
  Json j;
  j["schema"] = kSchemaVersion;
  return j;
}

// Grid over [-1, 1] on the S_N / N scale, +-6 sigma for Gaussian limits.
std::vector<double> law_grid(const LimitLaw& law, std::size_t points) {
  double half = 1.0;
  if (const auto* g = std::get_if<Gaussian>(&law)) half = 6.0 * std::sqrt(g->variance);
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = points == 1 ? 0.0
                          : -half + 2.0 * half * static_cast<double>(i) /
                                        static_cast<double>(points - 1);
  }
  return grid;
}

std::optional<LimitLaw> matching_target(const Schedule& schedule, double exponent) {
  try {
    LimitLaw law = auto_target(schedule);
    if (scaling_exponent(law) == exponent) return law;
  } catch (const std::exception&) {
  }
  return std::nullopt;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coin-turning walks: exact laws, limits and Monte Carlo checks", "cointurn"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Common common;
  auto add_common = [&common](CLI::App* sub, bool schedule, bool n, bool paths,
                              bool seed, bool threads) {
    if (schedule) {
      sub->add_option("--schedule", common.schedule,
                      "const:p=X | power:a=X,gamma=Y | critical:a=X | "
                      "summable:a=X,beta=Y | table:PATH[,tail=last|zero]")
          ->required();
    }
    if (n) sub->add_option("--n", common.n, "Horizon N")->required();
    if (paths) sub->add_option("--paths", common.paths, "Monte Carlo paths")->capture_default_str();
    if (seed) {
      sub->add_option("--seed", common.seed,
                      std::string("RNG seed (default $") + kSeedEnvironmentVariable +
                          ", else 0)");
    }
    if (threads) {
      sub->add_option("--threads", common.threads, "Worker cap")->capture_default_str();
    }
    sub->add_option("--format", common.format, "json or csv")->capture_default_str();
    sub->add_option("--output", common.output, "Write the report here instead of stdout");
  };

  Job job;

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo summary of S_N");
  add_common(simulate, true, true, true, true, true);
  std::optional<double> sim_exponent;
  std::size_t sim_bins = 101;
  std::size_t sim_retain = 0;
  simulate->add_option("--exponent", sim_exponent, "Report S_N / N^exponent");
  simulate->add_option("--bins", sim_bins, "Histogram bins")->capture_default_str();
  simulate->add_option("--retain", sim_retain, "Keep this many scaled sums")
      ->capture_default_str();
  simulate->callback([&] {
    const Schedule schedule = parse_schedule(common.schedule);
    const std::uint64_t seed = resolve_seed(common.seed);
    const Format format = resolve_format(common.format);
    check_threads(common.threads);
    require(common.n >= 1 && common.n <= kMaxSimulationHorizon, "--n out of range");
    require(common.paths >= 1 && common.paths <= kMaxSimulationPaths, "--paths out of range");
    require(sim_bins >= 1 && sim_bins <= kMaxGridPoints, "--bins out of range");
    require(sim_retain <= kMaxRetainedSample, "--retain out of range");
    const double exponent = sim_exponent.value_or(default_scaling_exponent(schedule));
    require(exponent > 0.0 && exponent <= 1.0, "--exponent must lie in (0, 1]");
    SimulationOptions options;
    options.threads = common.threads;
    options.scaling_exponent = exponent;
    options.bins = sim_bins;
    options.retain = sim_retain;
    const std::size_t n = common.n;
    const std::size_t paths = common.paths;
    job = [=] {
      const auto summary = simulate_paths(schedule, n, paths, seed, options);
      if (format == Format::kJson) return Outcome{dump_json(to_json(summary))};
      const auto law = matching_target(schedule, exponent);
      std::ostringstream csv;
      write_histogram_csv(csv, summary.histogram, law ? &*law : nullptr);
      return Outcome{csv.str()};
    };
  });

  // exact
  auto* exact = app.add_subcommand("exact", "Exact law, moments and variance of S_N");
  add_common(exact, true, true, false, false, false);
  unsigned exact_moments = 4;
  exact->add_option("--moments", exact_moments, "Report moments of order 1..K")
      ->capture_default_str();
  exact->callback([&] {
    const Schedule schedule = parse_schedule(common.schedule);
    const Format format = resolve_format(common.format);
    require(common.n >= 1 && common.n <= kExactLawMaxHorizon,
            "--n must lie in [1, " + std::to_string(kExactLawMaxHorizon) + "]");
    require(exact_moments <= kMaxMomentOrder, "--moments out of range");
    const std::size_t n = common.n;
    const unsigned k_max = exact_moments;
    job = [=] {
      const ExactLaw law = exact_law(schedule, n);
      if (format == Format::kCsv) {
        std::ostringstream csv;
        csv << "s,mass\n";
        for (std::size_t k = 0; k <= n; ++k) {
          csv << law.value(k) << ',' << format_double(law.mass[k]) << '\n';
        }
        return Outcome{csv.str()};
      }
      Json j = header();
      j["schedule"] = schedule.describe();
      j["n"] = n;
      Json moments = Json::array();
      for (unsigned k = 1; k <= k_max; ++k) {
        moments.push_back({{"order", k}, {"value", exact_moment(law, k)}});
      }
      j["moments"] = moments;
      j["variance"] = variance_of_sum(schedule, n);
      j["e2"] = e_moment_sum(schedule, n, 2);
      j["law"] = to_json(law);
      return Outcome{dump_json(j)};
    };
  });

  // limit
  auto* limit = app.add_subcommand("limit", "Density, CDF and moments of a limit law");
  std::string limit_law;
  std::size_t limit_points = 201;
  unsigned limit_moments = 8;
  std::size_t limit_samples = 0;
  limit->add_option("--law", limit_law,
                    "degenerate | uniform | arcsine | semicircle | beta:a=X | "
                    "gaussian:var=X[,exponent=E] | constant:c=X | "
                    "subcritical:a=X,gamma=Y[,convention=paper|appendix]")
      ->required();
  limit->add_option("--points", limit_points, "Grid points")->capture_default_str();
  limit->add_option("--moments", limit_moments, "Moments of order 1..K")->capture_default_str();
  limit->add_option("--samples", limit_samples, "Also draw this many variates")
      ->capture_default_str();
  add_common(limit, false, false, false, true, false);
  limit->callback([&] {
    const LimitLaw law = parse_limit_law(limit_law);
    const Format format = resolve_format(common.format);
    const std::uint64_t seed = resolve_seed(common.seed);
    require(limit_points >= 1 && limit_points <= kMaxGridPoints, "--points out of range");
    require(limit_moments <= kMaxMomentOrder, "--moments out of range");
    require(limit_samples <= kMaxRetainedSample, "--samples out of range");
    const std::size_t points = limit_points;
    const unsigned k_max = limit_moments;
    const std::size_t samples = limit_samples;
    job = [=] {
      const auto grid = law_grid(law, points);
      if (format == Format::kCsv) {
        std::ostringstream csv;
        write_density_csv(csv, law, grid);
        return Outcome{csv.str()};
      }
      Json j = header();
      j["law"] = describe(law);
      j["scaling_exponent"] = scaling_exponent(law);
      Json moments = Json::array();
      for (unsigned k = 1; k <= k_max; ++k) {
        moments.push_back({{"order", k}, {"value", limit_moment(law, k)}});
      }
      j["moments"] = moments;
      Json rows = Json::array();
      for (double x : grid) {
        rows.push_back({{"x", x}, {"f", limit_density(law, x)}, {"F", limit_cdf(law, x)}});
      }
      j["grid"] = rows;
      if (samples > 0) {
        CounterRng rng(seed, 0);
        std::vector<double> draws(samples);
        for (auto& d : draws) d = sample_limit(law, rng);
        j["seed"] = seed;
        j["samples"] = draws;
      }
      return Outcome{dump_json(j)};
    };
  });

  // classify
  auto* classify = app.add_subcommand("classify", "Regime evidence from exact pair sums");
  add_common(classify, true, false, false, false, false);
  std::vector<std::size_t> classify_horizons = {1000, 4000, 16000, 64000};
  unsigned classify_k = 4;
  classify->add_option("--horizons", classify_horizons, "Ascending horizons")
      ->delimiter(',')
      ->capture_default_str();
  classify->add_option("--k", classify_k, "Even order K for the LLN test")
      ->capture_default_str();
  classify->callback([&] {
    const Schedule schedule = parse_schedule(common.schedule);
    const Format format = resolve_format(common.format);
    check_horizons(classify_horizons, kMaxClassifyHorizon);
    require(classify_horizons.size() >= 4, "--horizons needs at least 4 entries");
    require(classify_horizons.back() >= 1000, "largest horizon must be >= 1000");
    require(classify_k >= 2 && classify_k % 2 == 0 && classify_k <= kMaxMomentOrder,
            "--k must be even and in [2, " + std::to_string(kMaxMomentOrder) + "]");
    const auto horizons = classify_horizons;
    const unsigned k = classify_k;
    job = [=] {
      const RegimeReport report = classify_empirical(schedule, horizons, {}, k);
      if (format == Format::kCsv) {
        std::ostringstream csv;
        csv << "n,e2,pair_sum\n";
        for (std::size_t i = 0; i < report.horizons.size(); ++i) {
          csv << report.horizons[i] << ',' << format_double(report.e2[i]) << ','
              << format_double(report.pair_sum[i]) << '\n';
        }
        return Outcome{csv.str()};
      }
      Json j = to_json(report);
      j["schedule"] = schedule.describe();
      return Outcome{dump_json(j)};
    };
  });

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo check against a limit law");
  add_common(verify_cmd, true, true, true, true, true);
  std::string verify_target = "auto";
  VerifyOptions verify_options;
  verify_cmd->add_option("--target", verify_target, "auto, or a --law string of `limit`")
      ->capture_default_str();
  verify_cmd->add_option("--ks-threshold", verify_options.ks_threshold)->capture_default_str();
  verify_cmd->add_option("--z-threshold", verify_options.z_threshold)->capture_default_str();
  verify_cmd->add_option("--moments", verify_options.moment_orders, "Moment orders to z-test")
      ->delimiter(',')
      ->capture_default_str();
  verify_cmd->add_option("--bins", verify_options.bins)->capture_default_str();
  verify_cmd->callback([&] {
    const Schedule schedule = parse_schedule(common.schedule);
    const std::uint64_t seed = resolve_seed(common.seed);
    const Format format = resolve_format(common.format);
    check_threads(common.threads);
    require(common.n >= 1 && common.n <= kMaxSimulationHorizon, "--n out of range");
    require(common.paths >= 2 && common.paths <= kMaxSimulationPaths, "--paths out of range");
    require(verify_options.ks_threshold > 0.0 && verify_options.ks_threshold <= 1.0,
            "--ks-threshold must lie in (0, 1]");
    require(verify_options.z_threshold > 0.0, "--z-threshold must be positive");
    require(verify_options.bins >= 1 && verify_options.bins <= kMaxGridPoints,
            "--bins out of range");
    for (unsigned k : verify_options.moment_orders) {
      require(k >= 1 && k <= kMaxMomentOrder, "--moments entries out of range");
    }
    const LimitLaw target =
        verify_target == "auto" ? auto_target(schedule) : parse_limit_law(verify_target);
    VerifyOptions options = verify_options;
    options.threads = common.threads;
    const std::size_t n = common.n;
    const std::size_t paths = common.paths;
    job = [=] {
      const auto report = verify(schedule, n, paths, seed, target, options);
      const int code = report.pass ? kExitOk : kExitVerifyFailed;
      if (format == Format::kJson) {
        Json j = to_json(report);
        return Outcome{dump_json(j), code};
      }
      std::ostringstream csv;
      write_histogram_csv(csv, report.summary.histogram, &target);
      return Outcome{csv.str(), code};
    };
  });

  // appendix-check
  auto* appendix = app.add_subcommand("appendix-check",
                                      "Ratio of the alternating exponential sum to its leading term");
  double app_gamma = 0.0;
  double app_a = 1.0;
  std::optional<double> app_c;
  unsigned app_k = 2;
  std::vector<std::size_t> app_horizons = {1000, 10000, 100000};
  std::size_t app_n0 = 1;
  appendix->add_option("--gamma", app_gamma, "Exponent in (0, 1)")->required();
  appendix->add_option("--a", app_a, "Uses c = 2a / (1 - gamma)")->capture_default_str();
  appendix->add_option("--c", app_c, "Overrides --a");
  appendix->add_option("--k", app_k, "Even number of indices")->capture_default_str();
  appendix->add_option("--horizons", app_horizons)->delimiter(',')->capture_default_str();
  appendix->add_option("--n0", app_n0, "First index")->capture_default_str();
  add_common(appendix, false, false, false, false, false);
  appendix->callback([&] {
    const Format format = resolve_format(common.format);
    require(app_gamma > 0.0 && app_gamma < 1.0, "--gamma must lie in (0, 1)");
    require(app_c.has_value() || app_a > 0.0, "--a must be positive");
    const double c = app_c.value_or(2.0 * app_a / (1.0 - app_gamma));
    require(std::isfinite(c) && c > 0.0, "--c must be positive");
    require(app_k >= 2 && app_k % 2 == 0 && app_k <= kMaxMomentOrder,
            "--k must be even and in [2, " + std::to_string(kMaxMomentOrder) + "]");
    require(app_n0 >= 1, "--n0 must be >= 1");
    check_horizons(app_horizons, kMaxAppendixHorizon);
    const double gamma = app_gamma;
    const unsigned k = app_k;
    const auto horizons = app_horizons;
    const std::size_t n0 = app_n0;
    job = [=] {
      std::vector<AppendixSum> rows;
      for (std::size_t n : horizons) rows.push_back(appendix_sum(c, gamma, k, n, n0));
      if (format == Format::kCsv) {
        std::ostringstream csv;
        csv << "n,q,normalizer,ratio\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
          csv << horizons[i] << ',' << format_double(rows[i].q) << ','
              << format_double(rows[i].normalizer) << ',' << format_double(rows[i].ratio)
              << '\n';
        }
        return Outcome{csv.str()};
      }
      Json j = header();
      j["c"] = c;
      j["gamma"] = gamma;
      j["k"] = k;
      j["n0"] = n0;
      Json table = Json::array();
      for (std::size_t i = 0; i < rows.size(); ++i) {
        table.push_back({{"n", horizons[i]},
                         {"q", rows[i].q},
                         {"normalizer", rows[i].normalizer},
                         {"ratio", rows[i].ratio}});
      }
      j["rows"] = table;
      return Outcome{dump_json(j)};
    };
  });

  // turns
  auto* turns = app.add_subcommand("turns", "Law and characteristic function of the turn count");
  add_common(turns, true, true, false, false, false);
  std::size_t turn_points = 64;
  turns->add_option("--t-points", turn_points, "cf at t = 2 pi j / points")
      ->capture_default_str();
  turns->callback([&] {
    const Schedule schedule = parse_schedule(common.schedule);
    const Format format = resolve_format(common.format);
    require(common.n >= 2 && common.n <= kExactLawMaxHorizon,
            "--n must lie in [2, " + std::to_string(kExactLawMaxHorizon) + "]");
    require(turn_points >= 1 && turn_points <= kMaxGridPoints, "--t-points out of range");
    const std::size_t n = common.n;
    const std::size_t points = turn_points;
    job = [=] {
      const TurnCountLaw law = turn_count_pmf(schedule, n);
      if (format == Format::kCsv) {
        std::ostringstream csv;
        csv << "k,mass\n";
        for (std::size_t k = 0; k < law.mass.size(); ++k) {
          csv << k << ',' << format_double(law.mass[k]) << '\n';
        }
        return Outcome{csv.str()};
      }
      Json j = header();
      j["schedule"] = schedule.describe();
      j["n"] = n;
      CompensatedSum mean;
      for (std::size_t k = 0; k < law.mass.size(); ++k) {
        mean.add(static_cast<double>(k) * law.mass[k]);
      }
      j["mean"] = mean.value();
      j["law"] = to_json(law);
      Json cf = Json::array();
      for (std::size_t i = 0; i < points; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) /
                         static_cast<double>(points);
        const auto value = turn_count_cf(schedule, n, t);
        cf.push_back({{"t", t}, {"re", value.real()}, {"im", value.imag()}});
      }
      j["cf"] = cf;
      return Outcome{dump_json(j)};
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const std::exception& e) {
    // Callbacks validate; anything they throw is bad input.
    err << "cointurn: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!job) {
    err << "cointurn: no subcommand\n";
    return kExitUsage;
  }

  Outcome outcome;
  try {
    outcome = job();
  } catch (const std::exception& e) {
    err << "cointurn: computation failed: " << e.what() << '\n';
    return kExitComputation;
  }

  if (common.output.empty()) {
    out << outcome.body;
    out.flush();
  } else {
    std::ofstream file(common.output, std::ios::binary);
    file << outcome.body;
    file.close();
    if (!file) {
      err << "cointurn: cannot write " << common.output << '\n';
      return kExitComputation;
    }
  }
  return outcome.code;
}

}  // namespace cointurn
