#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xxz {

// Ordered particle configuration x_1 < x_2 < ... < x_N on the integer lattice.
using Config = std::vector<int>;

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

bool is_strictly_increasing(const Config& x);

/// Number of maximal blocks of consecutive occupied sites.
int cluster_count(const Config& x);

/// Single-cluster configurations (x1, x1+1, ..., x1+N-1).
bool is_edge_config(const Config& x);

/// Sum of coordinate-wise absolute differences. Throws on size mismatch.
long dist1(const Config& x, const Config& y);

/// Maximum coordinate-wise absolute difference. Throws on size mismatch.
long dist_inf(const Config& x, const Config& y);

/// All configurations at 1-distance exactly one from x on the unbounded
/// lattice; their number equals 2 * cluster_count(x).
std::vector<Config> neighbors_unbounded(const Config& x);

// Geometry of the space of N strictly increasing positions in [-L, L],
// enumerated lexicographically. Index lookups use combinatorial ranking,
// so no per-configuration storage is kept.
class ConfigSpace {
 public:
  ConfigSpace(int n_particles, int half_length);

  int particles() const { return n_; }
  int half_length() const { return L_; }
  std::int64_t dim() const { return dim_; }

  bool contains(const Config& x) const;

  /// Lexicographic rank of x. Throws std::invalid_argument if x is not in
  /// the space.
  std::int64_t index_of(const Config& x) const;

  /// Inverse of index_of.
  Config config_at(std::int64_t index) const;

  /// Neighbors of x that stay inside [-L, L]; boundary moves are dropped.
  std::vector<Config> neighbors(const Config& x) const;

  /// Visits every configuration in index order without unranking.
  void for_each(const std::function<void(std::int64_t, const Config&)>& fn) const;

  std::int64_t binomial(int n, int k) const;

 private:
  int n_ = 0;
  int L_ = 0;
  std::int64_t dim_ = 0;
  // binom_[n][k] for n <= 2L+1, k <= N.
  std::vector<std::vector<std::int64_t>> binom_;
};

/// Indices of all configurations with cluster_count <= k_cap.
std::vector<std::int64_t> stratum_indices(const ConfigSpace& space, int k_cap);

/// Complement of the above: cluster_count > k_cap.
std::vector<std::int64_t> bulk_indices(const ConfigSpace& space, int k_cap);

/// Configurations with at least one coordinate in psi_sites.
std::vector<std::int64_t> support_set(const ConfigSpace& space,
                                      std::span<const int> psi_sites);

/// Edge-configuration box: single-cluster configs y with |y_1 - x_1| <= M,
/// intersected with the volume.
std::vector<std::int64_t> lambda_set(const ConfigSpace& space, const Config& center,
                                     int box_halfwidth);

/// Support box S of the edge box around `center`: configurations touching
/// any site in [x_1 - M, x_1 + M].
std::vector<std::int64_t> box_support(const ConfigSpace& space, const Config& center,
                                      int box_halfwidth);

/// Minimum pairwise distance between two index sets; +infinity when either
/// set is empty.
double set_dist1(const ConfigSpace& space, std::span<const std::int64_t> a,
                 std::span<const std::int64_t> b);
double set_dist_inf(const ConfigSpace& space, std::span<const std::int64_t> a,
                    std::span<const std::int64_t> b);

std::vector<std::int64_t> intersect_sorted(std::span<const std::int64_t> a,
                                           std::span<const std::int64_t> b);

}  // namespace xxz
