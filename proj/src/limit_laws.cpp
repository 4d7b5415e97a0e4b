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

#include "cointurn/limit_laws.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cointurn/errors.hpp"
#include "cointurn/special_functions.hpp"

namespace cointurn {
namespace {

void require_positive_a(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw DomainError("symmetric Beta law needs a > 0");
  }
}

double log_beta_normalizer(double a) {
  return log_gamma(a + 0.5) - log_gamma(a) - 0.5 * std::log(std::numbers::pi);
}

double standard_normal(CounterRng& rng) {
  const double u1 = rng.uniform_open_zero();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double gamma_variate(double shape, CounterRng& rng) {
  if (shape < 1.0) {
    const double boost = std::pow(rng.uniform_open_zero(), 1.0 / shape);
    return gamma_variate(shape + 1.0, rng) * boost;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    const double x = standard_normal(rng);
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.uniform_open_zero();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::string format_number(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view to_string(SigmaConvention convention) {
  return convention == SigmaConvention::kPaper ? "paper" : "appendix";
}

double symmetric_beta_density(double a, double x) {
  require_positive_a(a);
  if (!(std::fabs(x) <= 1.0)) return 0.0;
  if (a == 1.0) return 0.5;
  return std::exp(log_beta_normalizer(a) + (a - 1.0) * std::log1p(-x * x));
}

double symmetric_beta_moment(double a, unsigned k) {
  require_positive_a(a);
  if (k % 2 != 0) return 0.0;
  if (k == 0) return 1.0;
  const double m = k / 2;
  // Gamma(m + 1/2) / Gamma(1/2) = (2m)! / (4^m m!).
  return std::exp(log_gamma(2.0 * m + 1.0) - log_gamma(m + 1.0) + log_gamma(a + 0.5) -
                  2.0 * m * std::numbers::ln2 - log_gamma(m + a + 0.5));
}

double symmetric_beta_cdf(double a, double x) {
  require_positive_a(a);
  if (std::isnan(x)) return x;
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x == 0.0) return 0.5;
  if (a == 1.0) return 0.5 * (1.0 + x);
  if (x > 0.0) return 1.0 - symmetric_beta_cdf(a, -x);
  const double norm = std::exp(log_beta_normalizer(a));
  if (a >= 1.0) {
    const auto r = integrate(
        [a](double u) { return std::pow((1.0 - u) * (1.0 + u), a - 1.0); }, -1.0,
        x, 1e-13, 1e-13);
    return norm * r.value;
  }
  // u = (1 + x)^a straightens the edge singularity of (1 + x)^{a - 1}.
  const double upper = std::pow(1.0 + x, a);
  const auto r = integrate(
      [a](double v) { return std::pow(2.0 - std::pow(v, 1.0 / a), a - 1.0); },
      0.0, upper, 1e-13, 1e-13);
  return norm / a * r.value;
}

double beta_mgf(double a, double t) {
  require_positive_a(a);
  if (t == 0.0) return 1.0;
  const double at = std::fabs(t);
  return std::exp(log_gamma(a + 0.5) + (0.5 - a) * std::log(0.5 * at) +
                  log_bessel_i(a - 0.5, at));
}

double subcritical_sigma2(double a, double gamma, SigmaConvention convention) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("sigma^2 needs a > 0");
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw DomainError("sigma^2 needs gamma in (0, 1)");
  }
  return convention == SigmaConvention::kPaper ? 1.0 / (a * (1.0 - gamma))
                                               : 1.0 / (a * (1.0 + gamma));
}

double constant_regime_sigma2(double c) {
  if (!(c > 0.0 && c < 1.0)) {
    throw DomainError("constant-schedule variance needs c in (0, 1)");
  }
  return (1.0 - c) / c;
}

double gaussian_moment(double sigma2, unsigned k) {
  if (k % 2 != 0) return 0.0;
  double double_factorial = 1.0;
  for (unsigned j = k; j > 1; j -= 2) double_factorial *= j - 1;
  return std::pow(sigma2, k / 2.0) * double_factorial;
}

double normal_cdf(double x, double variance) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0 * variance));
}

double scaling_exponent(const LimitLaw& law) {
  if (const auto* g = std::get_if<Gaussian>(&law)) return g->scaling_exponent;
  return 1.0;
}

double limit_cdf(const LimitLaw& law, double x) {
  struct Visitor {
    double x;
    double operator()(const DegeneratePair&) const {
      if (x < -1.0) return 0.0;
      return x < 1.0 ? 0.5 : 1.0;
    }
    double operator()(const SymmetricBeta& b) const {
      return symmetric_beta_cdf(b.a, x);
    }
    double operator()(const Gaussian& g) const { return normal_cdf(x, g.variance); }
  };
  return std::visit(Visitor{x}, law);
}

double limit_cdf_left(const LimitLaw& law, double x) {
  if (std::holds_alternative<DegeneratePair>(law)) {
    if (x <= -1.0) return 0.0;
    return x <= 1.0 ? 0.5 : 1.0;
  }
  return limit_cdf(law, x);
}

double limit_density(const LimitLaw& law, double x) {
  if (const auto* b = std::get_if<SymmetricBeta>(&law)) {
    return symmetric_beta_density(b->a, x);
  }
  if (const auto* g = std::get_if<Gaussian>(&law)) {
    return std::exp(-0.5 * x * x / g->variance) /
           std::sqrt(2.0 * std::numbers::pi * g->variance);
  }
  return 0.0;
}

double limit_moment(const LimitLaw& law, unsigned k) {
  if (const auto* b = std::get_if<SymmetricBeta>(&law)) {
    return symmetric_beta_moment(b->a, k);
  }
  if (const auto* g = std::get_if<Gaussian>(&law)) {
    return gaussian_moment(g->variance, k);
  }
  return k % 2 == 0 ? 1.0 : 0.0;
}

std::string describe(const LimitLaw& law) {
  if (const auto* b = std::get_if<SymmetricBeta>(&law)) {
    return "beta:a=" + format_number(b->a);
  }
  if (const auto* g = std::get_if<Gaussian>(&law)) {
    return "gaussian:var=" + format_number(g->variance) +
           ",exponent=" + format_number(g->scaling_exponent);
  }
  return "degenerate";
}

double sample_limit(const LimitLaw& law, CounterRng& rng) {
  if (const auto* b = std::get_if<SymmetricBeta>(&law)) {
    const double g1 = gamma_variate(b->a, rng);
    const double g2 = gamma_variate(b->a, rng);
    return 2.0 * g1 / (g1 + g2) - 1.0;
  }
  if (const auto* g = std::get_if<Gaussian>(&law)) {
    return std::sqrt(g->variance) * standard_normal(rng);
  }
  return (rng.next_u64() >> 63) ? 1.0 : -1.0;
}

namespace {

struct LawText {
  std::string_view kind;
  std::vector<std::pair<std::string_view, std::string_view>> params;
  std::vector<std::size_t> offsets;  // character offset of each value
};

LawText split_law_text(std::string_view text) {
  LawText spec;
  const std::size_t colon = text.find(':');
  spec.kind = text.substr(0, colon);
  if (colon == std::string_view::npos) return spec;
  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const std::string_view item = text.substr(pos, comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw ParseError("expected key=value at position " + std::to_string(pos),
                       pos);
    }
    spec.params.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    spec.offsets.push_back(pos + eq + 1);
    pos = comma + 1;
  }
  return spec;
}

class LawParams {
 public:
  explicit LawParams(LawText spec) : spec_(std::move(spec)),
                                     used_(spec_.params.size(), false) {}

  std::optional<std::string_view> raw(std::string_view key) {
    for (std::size_t i = 0; i < spec_.params.size(); ++i) {
      if (spec_.params[i].first == key) {
        used_[i] = true;
        return spec_.params[i].second;
      }
    }
    return std::nullopt;
  }

  double number(std::string_view key) {
    for (std::size_t i = 0; i < spec_.params.size(); ++i) {
      if (spec_.params[i].first != key) continue;
      used_[i] = true;
      const auto v = spec_.params[i].second;
      double out = 0.0;
      auto res = std::from_chars(v.data(), v.data() + v.size(), out);
      if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
        throw ParseError("expected a number at position " +
                             std::to_string(spec_.offsets[i]),
                         spec_.offsets[i]);
      }
      return out;
    }
    throw ParseError("missing parameter '" + std::string(key) + "'", 0);
  }

  double number_or(std::string_view key, double fallback) {
    for (const auto& p : spec_.params) {
      if (p.first == key) return number(key);
    }
    return fallback;
  }

  void finish() const {
    for (std::size_t i = 0; i < used_.size(); ++i) {
      if (!used_[i]) {
        throw ParseError("unknown parameter '" +
                             std::string(spec_.params[i].first) + "'",
                         spec_.offsets[i]);
      }
    }
  }

 private:
  LawText spec_;
  std::vector<bool> used_;
};

}  // namespace

LimitLaw parse_limit_law(std::string_view text) {
  LawText spec = split_law_text(text);
  const std::string kind(spec.kind);
  LawParams params(std::move(spec));
  LimitLaw law;
  if (kind == "degenerate") {
    law = DegeneratePair{};
  } else if (kind == "uniform") {
    law = SymmetricBeta{1.0};
  } else if (kind == "arcsine") {
    law = SymmetricBeta{0.5};
  } else if (kind == "semicircle") {
    law = SymmetricBeta{1.5};
  } else if (kind == "beta") {
    const double a = params.number("a");
    require_positive_a(a);
    law = SymmetricBeta{a};
  } else if (kind == "gaussian") {
    const double var = params.number("var");
    const double exponent = params.number_or("exponent", 0.5);
    if (!(var > 0.0) || !std::isfinite(var)) {
      throw DomainError("gaussian law needs var > 0");
    }
    if (!(exponent > 0.0 && exponent <= 1.0)) {
      throw DomainError("gaussian scaling exponent must lie in (0, 1]");
    }
    law = Gaussian{var, exponent};
  } else if (kind == "constant") {
    law = Gaussian{constant_regime_sigma2(params.number("c")), 0.5};
  } else if (kind == "subcritical") {
    const double a = params.number("a");
    const double gamma = params.number("gamma");
    SigmaConvention convention = kDefaultSigmaConvention;
    if (auto raw = params.raw("convention")) {
      if (*raw == "paper") {
        convention = SigmaConvention::kPaper;
      } else if (*raw == "appendix") {
        convention = SigmaConvention::kAppendix;
      } else {
        throw ParseError("convention must be 'paper' or 'appendix'", 0);
      }
    }
    law = Gaussian{subcritical_sigma2(a, gamma, convention), (1.0 + gamma) / 2.0};
  } else {
    throw ParseError("unknown limit law '" + kind + "'", 0);
  }
  params.finish();
  return law;
}

}  // namespace cointurn
