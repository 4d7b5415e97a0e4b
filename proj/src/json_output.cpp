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

#include "cointurn/json_output.hpp"

#include <cmath>
#include <cstdio>

namespace cointurn {
namespace {

void write_indent(std::string& out, int depth) {
  out.push_back('\n');
  out.append(static_cast<std::size_t>(depth) * 2, ' ');
}

void write_value(std::string& out, const Json& v, int depth) {
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out.push_back('{');
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out.push_back(',');
        first = false;
        write_indent(out, depth + 1);
        out += Json(key).dump();
        out += ": ";
        write_value(out, item, depth + 1);
      }
      write_indent(out, depth);
      out.push_back('}');
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line; golden diffs are still readable.
      bool scalars = true;
      for (const auto& item : v) {
        if (item.is_structured()) scalars = false;
      }
      out.push_back('[');
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += scalars ? ", " : ",";
        first = false;
        if (!scalars) write_indent(out, depth + 1);
        write_value(out, item, depth + 1);
      }
      if (!scalars) write_indent(out, depth);
      out.push_back(']');
      return;
    }
    case Json::value_t::number_float: {
      const double x = v.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += v.dump();
      return;
  }
}

Json analytic_json(const Regime& r) {
  Json j;
  j["tag"] = std::string(to_string(r.tag));
  j["a"] = r.a;
  j["gamma"] = r.gamma;
  j["c"] = r.c;
  return j;
}

Json summary_body(const SimulationSummary& s) {
  Json j;
  j["schedule"] = s.schedule;
  j["n"] = s.n;
  j["paths"] = s.paths;
  j["seed"] = s.seed;
  j["scaling_exponent"] = s.scaling_exponent;
  Json moments = Json::array();
  for (std::size_t k = 0; k < s.moments.size(); ++k) {
    moments.push_back({{"order", k + 1}, {"value", s.moments[k]}});
  }
  j["moments"] = moments;
  j["histogram"] = to_json(s.histogram);
  if (!s.retained_sample.empty()) j["sample"] = s.retained_sample;
  return j;
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string dump_json(const Json& value) {
  std::string out;
  write_value(out, value, 0);
  out.push_back('\n');
  return out;
}

Json to_json(const ExactLaw& law) {
  Json j;
  j["n"] = law.n;
  j["support"] = law.support();
  j["mass"] = law.mass;
  return j;
}

Json to_json(const TurnCountLaw& law) {
  Json j;
  j["n"] = law.n;
  Json support = Json::array();
  for (std::size_t k = 0; k < law.mass.size(); ++k) support.push_back(k);
  j["support"] = support;
  j["mass"] = law.mass;
  return j;
}

Json to_json(const ExponentFit& fit) {
  return {{"theta", fit.theta},
          {"standard_error", fit.standard_error},
          {"lower", fit.lower},
          {"upper", fit.upper},
          {"points", fit.points}};
}

Json to_json(const SeriesEvidence& series) {
  return {{"partial_sums", series.partial_sums},
          {"block_starts", series.block_starts},
          {"block_sums", series.block_sums},
          {"last_ratio", series.last_ratio},
          {"converges", std::string(to_string(series.converges))}};
}

Json to_json(const LlnEvidence& lln) {
  Json j;
  j["k"] = lln.k;
  Json points = Json::array();
  for (std::size_t i = 0; i < lln.horizons.size(); ++i) {
    points.push_back(
        {{"n", lln.horizons[i]}, {"e2", lln.e2[i]}, {"ek", lln.ek[i]}});
  }
  j["points"] = points;
  j["e2_slope"] = lln.e2_slope;
  j["ek_slope"] = lln.ek_slope;
  j["e2_limit_estimate"] = lln.e2_limit_estimate;
  j["e2_tail_min"] = lln.e2_tail_min;
  j["c1"] = to_json(lln.c1);
  j["c2"] = to_json(lln.c2);
  j["wlln"] = std::string(to_string(lln.wlln));
  j["no_lln"] = std::string(to_string(lln.no_lln));
  return j;
}

Json to_json(const CarlemanReport& carleman) {
  return {{"terms", carleman.terms},
          {"partial_sums", carleman.partial_sums},
          {"verdict", std::string(to_string(carleman.verdict))}};
}

Json to_json(const Histogram& histogram) {
  return {{"edges", histogram.edges}, {"counts", histogram.counts}};
}

Json to_json(const MomentCheck& check) {
  return {{"order", check.order},
          {"sample", check.sample},
          {"target", check.target},
          {"standard_error", check.standard_error},
          {"z", check.z}};
}

Json to_json(const RegimeReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["analytic"] = analytic_json(report.analytic);
  Json points = Json::array();
  for (std::size_t i = 0; i < report.horizons.size(); ++i) {
    points.push_back({{"n", report.horizons[i]},
                      {"e2", report.e2[i]},
                      {"pair_sum", report.pair_sum[i]}});
  }
  j["points"] = points;
  j["fit"] = to_json(report.fit);
  j["crucial"] = std::string(to_string(report.crucial));
  j["second_crucial"] = std::string(to_string(report.second_crucial));
  j["no_lln"] = std::string(to_string(report.no_lln));
  j["empirical_clause"] = report.empirical_clause;
  j["analytic_clause"] = report.analytic_clause;
  j["consistent"] = report.consistent;
  j["lln"] = to_json(report.lln);
  Json limits = Json::array();
  for (std::size_t i = 0; i < report.moment_orders.size(); ++i) {
    limits.push_back(
        {{"order", report.moment_orders[i]}, {"value", report.moment_limits[i]}});
  }
  j["moment_limits"] = limits;
  j["carleman"] = to_json(report.carleman);
  const auto& t = report.thresholds;
  j["thresholds"] = {{"theta_tolerance", t.theta_tolerance},
                     {"block_ratio", t.block_ratio},
                     {"divergence_ratio", t.divergence_ratio},
                     {"carleman_ratio", t.carleman_ratio},
                     {"carleman_floor", t.carleman_floor}};
  return j;
}

Json to_json(const SimulationSummary& summary) {
  Json j;
  j["schema"] = kSchemaVersion;
  j.update(summary_body(summary));
  return j;
}

Json to_json(const VerificationReport& report) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["target"] = report.target;
  j["pass"] = report.pass;
  j["ks"] = report.ks;
  j["ks_threshold"] = report.ks_threshold;
  j["p_value"] = report.p_value;
  j["z_threshold"] = report.z_threshold;
  Json moments = Json::array();
  for (const auto& m : report.moments) moments.push_back(to_json(m));
  j["moments"] = moments;
  j["summary"] = summary_body(report.summary);
  return j;
}

void write_density_csv(std::ostream& out, const LimitLaw& law,
                       std::span<const double> grid) {
  out << "x,f,F\n";
  for (double x : grid) {
    out << format_double(x) << ',' << format_double(limit_density(law, x)) << ','
        << format_double(limit_cdf(law, x)) << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& histogram,
                         const LimitLaw* law) {
  out << "bin_left,bin_right,count,theoretical_density\n";
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    const double left = histogram.edges[b];
    const double right = histogram.edges[b + 1];
    out << format_double(left) << ',' << format_double(right) << ','
        << histogram.counts[b] << ',';
    if (law != nullptr) {
      // The last bin is closed on the right, the others half-open.
      const double upper = b + 1 == histogram.counts.size()
                               ? limit_cdf(*law, right)
                               : limit_cdf_left(*law, right);
      const double mass = upper - limit_cdf_left(*law, left);
      out << format_double(mass / (right - left));
    }
    out << '\n';
  }
}

}  // namespace cointurn
