#include "xxz/disorder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace xxz {

std::string to_string(DisorderFamily f) {
  switch (f) {
    case DisorderFamily::Uniform: return "uniform";
    case DisorderFamily::TruncatedBeta: return "truncated-beta";
    case DisorderFamily::PiecewiseDensity: return "piecewise-density";
  }
  return "unknown";
}

DisorderFamily disorder_family_from_string(const std::string& s) {
  if (s == "uniform") return DisorderFamily::Uniform;
  if (s == "truncated-beta") return DisorderFamily::TruncatedBeta;
  if (s == "piecewise-density") return DisorderFamily::PiecewiseDensity;
  throw std::invalid_argument("unsupported disorder family: " + s);
}

void DisorderSpec::validate() const {
  if (!(omega_max > 0)) throw std::invalid_argument("disorder: omega_max must be > 0");
  switch (family) {
    case DisorderFamily::Uniform:
      break;
    case DisorderFamily::TruncatedBeta:
      if (beta_a < 1.0 || beta_b < 1.0)
        throw std::invalid_argument("disorder: beta shapes < 1 give unbounded density");
      break;
    case DisorderFamily::PiecewiseDensity: {
      if (weights.empty())
        throw std::invalid_argument("disorder: piecewise density needs bin weights");
      double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      if (!(total > 0)) throw std::invalid_argument("disorder: weights must sum > 0");
      for (double w : weights)
        if (w < 0) throw std::invalid_argument("disorder: negative bin weight");
      break;
    }
  }
}

namespace {
double log_beta_fn(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}
}  // namespace

double DisorderSpec::density_sup() const {
  switch (family) {
    case DisorderFamily::Uniform:
      return 1.0 / omega_max;
    case DisorderFamily::TruncatedBeta: {
      // density on [0,1]: x^{a-1}(1-x)^{b-1}/B(a,b); mode (a-1)/(a+b-2)
      const double a = beta_a, b = beta_b;
      if (a == 1.0 && b == 1.0) return 1.0 / omega_max;
      double mode;
      if (a + b == 2.0)
        mode = (a > 1.0) ? 1.0 : 0.0;
      else
        mode = std::clamp((a - 1.0) / (a + b - 2.0), 0.0, 1.0);
      double logd = (a - 1.0) * std::log(std::max(mode, 1e-300)) +
                    (b - 1.0) * std::log(std::max(1.0 - mode, 1e-300)) -
                    log_beta_fn(a, b);
      return std::exp(logd) / omega_max;
    }
    case DisorderFamily::PiecewiseDensity: {
      double total = std::accumulate(weights.begin(), weights.end(), 0.0);
      double wmax = *std::max_element(weights.begin(), weights.end());
      const double bin_width = omega_max / (double)weights.size();
      return wmax / (total * bin_width);
    }
  }
  return 0.0;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 over a golden-ratio stride
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

DisorderRealization sample_disorder(const DisorderSpec& spec, int half_length,
                                    std::uint64_t seed) {
  spec.validate();
  if (half_length < 0) throw std::invalid_argument("sample_disorder: negative L");
  const int n = 2 * half_length + 1;
  std::mt19937_64 rng(seed);

  DisorderRealization out;
  out.seed = seed;
  out.spec = spec;
  out.half_length = half_length;
  out.omega.resize(n);

  switch (spec.family) {
    case DisorderFamily::Uniform: {
      std::uniform_real_distribution<double> u(0.0, spec.omega_max);
      for (auto& w : out.omega) w = u(rng);
      break;
    }
    case DisorderFamily::TruncatedBeta: {
      std::gamma_distribution<double> ga(spec.beta_a, 1.0), gb(spec.beta_b, 1.0);
      for (auto& w : out.omega) {
        double x = ga(rng), y = gb(rng);
        w = spec.omega_max * (x / (x + y));
      }
      break;
    }
    case DisorderFamily::PiecewiseDensity: {
      std::discrete_distribution<int> bins(spec.weights.begin(), spec.weights.end());
      std::uniform_real_distribution<double> u(0.0, 1.0);
      const double bin_width = spec.omega_max / (double)spec.weights.size();
      for (auto& w : out.omega) {
        int b = bins(rng);
        w = (b + u(rng)) * bin_width;
      }
      break;
    }
  }
  return out;
}

void to_json(nlohmann::json& j, const DisorderSpec& s) {
  j = nlohmann::json{{"family", to_string(s.family)}, {"omega_max", s.omega_max}};
  if (s.family == DisorderFamily::TruncatedBeta) {
    j["beta_a"] = s.beta_a;
    j["beta_b"] = s.beta_b;
  }
  if (s.family == DisorderFamily::PiecewiseDensity) j["weights"] = s.weights;
}

void from_json(const nlohmann::json& j, DisorderSpec& s) {
  s = DisorderSpec{};
  s.family = disorder_family_from_string(j.value("family", "uniform"));
  s.omega_max = j.value("omega_max", 1.0);
  s.beta_a = j.value("beta_a", 2.0);
  s.beta_b = j.value("beta_b", 2.0);
  if (j.contains("weights")) s.weights = j.at("weights").get<std::vector<double>>();
  s.validate();
}

void to_json(nlohmann::json& j, const DisorderRealization& r) {
  j = nlohmann::json{{"seed", r.seed},
                     {"half_length", r.half_length},
                     {"spec", r.spec},
                     {"values", r.omega}};
}

void from_json(const nlohmann::json& j, DisorderRealization& r) {
  r = DisorderRealization{};
  r.seed = j.at("seed").get<std::uint64_t>();
  r.half_length = j.at("half_length").get<int>();
  r.spec = j.at("spec").get<DisorderSpec>();
  r.omega = j.at("values").get<std::vector<double>>();
  if ((int)r.omega.size() != 2 * r.half_length + 1)
    throw std::invalid_argument("disorder realization: value count mismatch");
}

}  // namespace xxz
