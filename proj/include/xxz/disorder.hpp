#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace xxz {

enum class DisorderFamily { Uniform, TruncatedBeta, PiecewiseDensity };

std::string to_string(DisorderFamily f);
DisorderFamily disorder_family_from_string(const std::string& s);

// Distribution of the on-site field values: supported on [0, omega_max]
// with bounded density.
struct DisorderSpec {
  DisorderFamily family = DisorderFamily::Uniform;
  double omega_max = 1.0;
  double beta_a = 2.0;  // TruncatedBeta shape parameters, both >= 1
  double beta_b = 2.0;
  std::vector<double> weights;  // PiecewiseDensity: equal-width bin weights

  void validate() const;
  double density_sup() const;
};

struct DisorderRealization {
  std::vector<double> omega;  // omega[i + L] is the field at site i
  std::uint64_t seed = 0;
  DisorderSpec spec;
  int half_length = 0;

  double at(int site) const { return omega[site + half_length]; }
  int sites() const { return (int)omega.size(); }
};

/// Stream splitting: the stream of realization r of a run is derived from
/// (master_seed, r), so ensembles are order-independent and resumable.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

DisorderRealization sample_disorder(const DisorderSpec& spec, int half_length,
                                    std::uint64_t seed);

void to_json(nlohmann::json& j, const DisorderSpec& s);
void from_json(const nlohmann::json& j, DisorderSpec& s);
void to_json(nlohmann::json& j, const DisorderRealization& r);
void from_json(const nlohmann::json& j, DisorderRealization& r);

}  // namespace xxz
