#include "xxz/config_space.hpp"

#include <algorithm>
#include <cmath>

namespace xxz {

namespace {
constexpr std::int64_t kDimCap = 1'000'000;
}

bool is_strictly_increasing(const Config& x) {
  for (std::size_t j = 1; j < x.size(); ++j)
    if (x[j] <= x[j - 1]) return false;
  return true;
}

int cluster_count(const Config& x) {
  if (x.empty()) return 0;
  int gaps = 0;
  for (std::size_t j = 1; j < x.size(); ++j)
    if (x[j] != x[j - 1] + 1) ++gaps;
  return 1 + gaps;
}

bool is_edge_config(const Config& x) { return cluster_count(x) == 1; }

long dist1(const Config& x, const Config& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("dist1: configurations of different particle number");
  long d = 0;
  for (std::size_t j = 0; j < x.size(); ++j) d += std::abs((long)x[j] - (long)y[j]);
  return d;
}

long dist_inf(const Config& x, const Config& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("dist_inf: configurations of different particle number");
  long d = 0;
  for (std::size_t j = 0; j < x.size(); ++j)
    d = std::max(d, std::abs((long)x[j] - (long)y[j]));
  return d;
}

std::vector<Config> neighbors_unbounded(const Config& x) {
  std::vector<Config> out;
  const int n = (int)x.size();
  for (int j = 0; j < n; ++j) {
    if (j == 0 || x[j - 1] < x[j] - 1) {
      Config y = x;
      --y[j];
      out.push_back(std::move(y));
    }
    if (j == n - 1 || x[j + 1] > x[j] + 1) {
      Config y = x;
      ++y[j];
      out.push_back(std::move(y));
    }
  }
  return out;
}

ConfigSpace::ConfigSpace(int n_particles, int half_length)
    : n_(n_particles), L_(half_length) {
  const int sites = 2 * L_ + 1;
  if (L_ < 0) throw std::invalid_argument("ConfigSpace: negative half length");
  if (n_ < 1 || n_ > sites)
    throw std::invalid_argument("ConfigSpace: particle count outside [1, 2L+1]");

  binom_.assign(sites + 1, std::vector<std::int64_t>(n_ + 1, 0));
  for (int n = 0; n <= sites; ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= std::min(n, n_); ++k) {
      std::int64_t v = binom_[n - 1][k - 1] + (n - 1 >= k ? binom_[n - 1][k] : 0);
      binom_[n][k] = v;
    }
  }
  dim_ = binom_[sites][n_];
  if (dim_ > kDimCap)
    throw CapacityError("ConfigSpace: dimension " + std::to_string(dim_) +
                        " exceeds cap " + std::to_string(kDimCap));
}

std::int64_t ConfigSpace::binomial(int n, int k) const {
  if (k < 0 || k > n_ || n < 0 || n > 2 * L_ + 1) return 0;
  if (k > n) return 0;
  return binom_[n][k];
}

bool ConfigSpace::contains(const Config& x) const {
  if ((int)x.size() != n_) return false;
  if (!is_strictly_increasing(x)) return false;
  return x.front() >= -L_ && x.back() <= L_;
}

std::int64_t ConfigSpace::index_of(const Config& x) const {
  if (!contains(x)) throw std::invalid_argument("index_of: configuration not in space");
  // Lexicographic rank over increasing tuples: count tuples preceding x by
  // summing, for each coordinate, the choices that keep earlier coordinates
  // fixed and pick a smaller value here.
  const int sites = 2 * L_ + 1;
  std::int64_t rank = 0;
  int prev = -1;  // 0-based previous value
  for (int j = 0; j < n_; ++j) {
    const int sj = x[j] + L_;
    for (int t = prev + 1; t < sj; ++t) rank += binom_[sites - 1 - t][n_ - 1 - j];
    prev = sj;
  }
  return rank;
}

Config ConfigSpace::config_at(std::int64_t index) const {
  if (index < 0 || index >= dim_)
    throw std::out_of_range("config_at: index out of range");
  const int sites = 2 * L_ + 1;
  Config x(n_);
  int t = 0;
  for (int j = 0; j < n_; ++j) {
    while (true) {
      const std::int64_t block = binom_[sites - 1 - t][n_ - 1 - j];
      if (index < block) break;
      index -= block;
      ++t;
    }
    x[j] = t - L_;
    ++t;
  }
  return x;
}

std::vector<Config> ConfigSpace::neighbors(const Config& x) const {
  std::vector<Config> out;
  const int n = (int)x.size();
  for (int j = 0; j < n; ++j) {
    if (x[j] - 1 >= -L_ && (j == 0 || x[j - 1] < x[j] - 1)) {
      Config y = x;
      --y[j];
      out.push_back(std::move(y));
    }
    if (x[j] + 1 <= L_ && (j == n - 1 || x[j + 1] > x[j] + 1)) {
      Config y = x;
      ++y[j];
      out.push_back(std::move(y));
    }
  }
  return out;
}

void ConfigSpace::for_each(
    const std::function<void(std::int64_t, const Config&)>& fn) const {
  Config x(n_);
  for (int j = 0; j < n_; ++j) x[j] = -L_ + j;
  std::int64_t idx = 0;
  while (true) {
    fn(idx, x);
    ++idx;
    // next combination in lexicographic order
    int j = n_ - 1;
    while (j >= 0) {
      const int cap = L_ - (n_ - 1 - j);
      if (x[j] < cap) break;
      --j;
    }
    if (j < 0) break;
    ++x[j];
    for (int r = j + 1; r < n_; ++r) x[r] = x[r - 1] + 1;
  }
}

std::vector<std::int64_t> stratum_indices(const ConfigSpace& space, int k_cap) {
  std::vector<std::int64_t> out;
  space.for_each([&](std::int64_t i, const Config& x) {
    if (cluster_count(x) <= k_cap) out.push_back(i);
  });
  return out;
}

std::vector<std::int64_t> bulk_indices(const ConfigSpace& space, int k_cap) {
  std::vector<std::int64_t> out;
  space.for_each([&](std::int64_t i, const Config& x) {
    if (cluster_count(x) > k_cap) out.push_back(i);
  });
  return out;
}

std::vector<std::int64_t> support_set(const ConfigSpace& space,
                                      std::span<const int> psi_sites) {
  std::vector<std::int64_t> out;
  space.for_each([&](std::int64_t i, const Config& x) {
    for (int s : psi_sites) {
      if (std::binary_search(x.begin(), x.end(), s)) {
        out.push_back(i);
        return;
      }
    }
  });
  return out;
}

std::vector<std::int64_t> lambda_set(const ConfigSpace& space, const Config& center,
                                     int box_halfwidth) {
  if (!is_edge_config(center))
    throw std::invalid_argument("lambda_set: center must be a single cluster");
  const int n = space.particles();
  const int L = space.half_length();
  std::vector<std::int64_t> out;
  for (int y1 = center[0] - box_halfwidth; y1 <= center[0] + box_halfwidth; ++y1) {
    if (y1 < -L || y1 + n - 1 > L) continue;
    Config y(n);
    for (int j = 0; j < n; ++j) y[j] = y1 + j;
    out.push_back(space.index_of(y));
  }
  return out;
}

std::vector<std::int64_t> box_support(const ConfigSpace& space, const Config& center,
                                      int box_halfwidth) {
  if (!is_edge_config(center))
    throw std::invalid_argument("box_support: center must be a single cluster");
  std::vector<int> psi;
  for (int s = center[0] - box_halfwidth; s <= center[0] + box_halfwidth; ++s)
    if (s >= -space.half_length() && s <= space.half_length()) psi.push_back(s);
  return support_set(space, psi);
}

namespace {
template <typename Metric>
double set_distance(const ConfigSpace& space, std::span<const std::int64_t> a,
                    std::span<const std::int64_t> b, Metric metric) {
  if (a.empty() || b.empty()) return kInfiniteDistance;
  std::vector<Config> ax, bx;
  ax.reserve(a.size());
  bx.reserve(b.size());
  for (auto i : a) ax.push_back(space.config_at(i));
  for (auto i : b) bx.push_back(space.config_at(i));
  double best = kInfiniteDistance;
  for (const auto& x : ax)
    for (const auto& y : bx) best = std::min(best, (double)metric(x, y));
  return best;
}
}  // namespace

double set_dist1(const ConfigSpace& space, std::span<const std::int64_t> a,
                 std::span<const std::int64_t> b) {
  return set_distance(space, a, b, [](const Config& x, const Config& y) {
    return dist1(x, y);
  });
}

double set_dist_inf(const ConfigSpace& space, std::span<const std::int64_t> a,
                    std::span<const std::int64_t> b) {
  return set_distance(space, a, b, [](const Config& x, const Config& y) {
    return dist_inf(x, y);
  });
}

std::vector<std::int64_t> intersect_sorted(std::span<const std::int64_t> a,
                                           std::span<const std::int64_t> b) {
  std::vector<std::int64_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

}  // namespace xxz
