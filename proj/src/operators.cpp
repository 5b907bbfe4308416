#include "xxz/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace xxz {

namespace {
constexpr int kMaxSpinSites = 22;
}

double ModelParams::regime_strength() const {
  const double d = anisotropy - 1.0;
  return lambda * std::sqrt(d) * std::min(1.0, d);
}

void ModelParams::validate() const {
  if (!(anisotropy > 1.0))
    throw std::invalid_argument("params: anisotropy must exceed 1 (Ising phase)");
  if (lambda < 0.0) throw std::invalid_argument("params: lambda must be >= 0");
  if (half_length < 0) throw std::invalid_argument("params: negative half length");
  if (!(margin > 0.0 && margin < 1.0))
    throw std::invalid_argument("params: margin must lie in (0,1)");
  if (beta >= 0.0 && beta < min_beta(anisotropy) - 1e-12)
    throw std::invalid_argument("params: beta below minimum (1/2)(1-1/Delta)");
}

std::int64_t SectorOperator::local_of_global(std::int64_t g) const {
  auto it = std::lower_bound(support.begin(), support.end(), g);
  if (it == support.end() || *it != g) return -1;
  return it - support.begin();
}

Config SectorOperator::config_of_local(std::int64_t local) const {
  return space->config_at(support.at(local));
}

SpinOperator build_spin_hamiltonian(const ModelParams& params,
                                    const DisorderRealization& omega) {
  params.validate();
  const int n = 2 * params.half_length + 1;
  if (n > kMaxSpinSites)
    throw CapacityError("spin chain limited to " + std::to_string(kMaxSpinSites) +
                        " sites");
  if (omega.sites() != n)
    throw std::invalid_argument("spin hamiltonian: disorder length mismatch");

  const std::int64_t dim = std::int64_t(1) << n;
  const double hop = -1.0 / (2.0 * params.anisotropy);
  const double beta = params.effective_beta();

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve((std::size_t)dim * (n + 1));
  for (std::int64_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (int p = 0; p + 1 < n; ++p) {
      const int s0 = (b >> p) & 1, s1 = (b >> (p + 1)) & 1;
      if (s0 != s1) {
        diag += 0.5;
        const std::int64_t b2 = b ^ (std::int64_t(3) << p);  // swap the pair
        trip.emplace_back(b, b2, hop);
      }
    }
    for (int p = 0; p < n; ++p)
      if ((b >> p) & 1) diag += params.lambda * omega.omega[p];
    if (b & 1) diag += beta;
    if ((b >> (n - 1)) & 1) diag += beta;
    if (diag != 0.0) trip.emplace_back(b, b, diag);
  }

  SpinOperator out;
  out.params = params;
  out.omega = omega;
  out.matrix.resize(dim, dim);
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  return out;
}

SectorOperator build_sector_hamiltonian(int n_particles, const ModelParams& params,
                                        const DisorderRealization& omega) {
  params.validate();
  if (omega.sites() != 2 * params.half_length + 1)
    throw std::invalid_argument("sector hamiltonian: disorder length mismatch");
  auto space = std::make_shared<ConfigSpace>(n_particles, params.half_length);

  const double hop = -1.0 / (2.0 * params.anisotropy);
  const double interaction = params.gap_unit();
  const double boundary = params.effective_beta() - 0.5 * params.gap_unit();
  const int L = params.half_length;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve((std::size_t)space->dim() * (2 * n_particles + 1));
  space->for_each([&](std::int64_t i, const Config& x) {
    double diag = interaction * cluster_count(x);
    for (int s : x) diag += params.lambda * omega.at(s);
    if (x.front() == -L) diag += boundary;
    if (x.back() == L) diag += boundary;
    const auto nbrs = space->neighbors(x);
    diag += -hop * (double)nbrs.size();  // graph-Laplacian degree term
    trip.emplace_back(i, i, diag);
    for (const auto& y : nbrs) trip.emplace_back(i, space->index_of(y), hop);
  });

  SectorOperator out;
  out.space = space;
  out.support.resize(space->dim());
  for (std::int64_t i = 0; i < space->dim(); ++i) out.support[i] = i;
  out.params = params;
  out.omega = std::make_shared<DisorderRealization>(omega);
  out.matrix.resize(space->dim(), space->dim());
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  return out;
}

SectorOperator restrict_to(const SectorOperator& op,
                           std::span<const std::int64_t> subset) {
  if (subset.empty()) throw std::invalid_argument("restrict_to: empty subset");
  std::vector<std::int64_t> locals;
  locals.reserve(subset.size());
  for (auto g : subset) {
    auto l = op.local_of_global(g);
    if (l < 0)
      throw std::invalid_argument("restrict_to: index not in operator support");
    locals.push_back(l);
  }
  // map: parent-local -> child-local
  std::unordered_map<std::int64_t, std::int64_t> pos;
  pos.reserve(locals.size());
  for (std::size_t c = 0; c < locals.size(); ++c) pos[locals[c]] = (std::int64_t)c;

  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t c = 0; c < locals.size(); ++c) {
    const std::int64_t l = locals[c];
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, l); it; ++it) {
      auto hit = pos.find(it.row());
      if (hit != pos.end()) trip.emplace_back(hit->second, (std::int64_t)c, it.value());
    }
  }

  SectorOperator out;
  out.space = op.space;
  out.support.assign(subset.begin(), subset.end());
  out.params = op.params;
  out.omega = op.omega;
  out.surgery_log = op.surgery_log;
  out.surgery_log.push_back("restrict[" + std::to_string(subset.size()) + "]");
  out.matrix.resize((std::int64_t)subset.size(), (std::int64_t)subset.size());
  out.matrix.setFromTriplets(trip.begin(), trip.end());
  out.matrix.makeCompressed();
  return out;
}

std::pair<SectorOperator, BoundaryCoupling> decouple(
    const SectorOperator& op, std::span<const std::int64_t> subset) {
  if (subset.empty() || (std::int64_t)subset.size() >= op.dim())
    throw std::invalid_argument("decouple: subset must be nonempty and proper");
  std::vector<char> inside(op.dim(), 0);
  for (auto g : subset) {
    auto l = op.local_of_global(g);
    if (l < 0) throw std::invalid_argument("decouple: index not in operator support");
    inside[l] = 1;
  }

  std::vector<Eigen::Triplet<double>> keep, cut;
  std::vector<char> is_inner(op.dim(), 0), is_outer(op.dim(), 0);
  for (std::int64_t c = 0; c < op.matrix.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(op.matrix, c); it; ++it) {
      if (inside[it.row()] == inside[c]) {
        keep.emplace_back(it.row(), c, it.value());
      } else {
        cut.emplace_back(it.row(), c, it.value());
        if (inside[it.row()])
          is_inner[it.row()] = 1;
        else
          is_outer[it.row()] = 1;
        if (inside[c])
          is_inner[c] = 1;
        else
          is_outer[c] = 1;
      }
    }
  }

  SectorOperator dec;
  dec.space = op.space;
  dec.support = op.support;
  dec.params = op.params;
  dec.omega = op.omega;
  dec.surgery_log = op.surgery_log;
  dec.surgery_log.push_back("decouple[" + std::to_string(subset.size()) + "]");
  dec.matrix.resize(op.dim(), op.dim());
  dec.matrix.setFromTriplets(keep.begin(), keep.end());
  dec.matrix.makeCompressed();

  BoundaryCoupling bc;
  bc.gamma.resize(op.dim(), op.dim());
  bc.gamma.setFromTriplets(cut.begin(), cut.end());
  bc.gamma.makeCompressed();
  bc.norm_bound = (double)op.space->particles() / op.params.anisotropy;
  for (std::int64_t l = 0; l < op.dim(); ++l) {
    if (is_inner[l]) bc.inner_boundary.push_back(op.support[l]);
    if (is_outer[l]) bc.outer_boundary.push_back(op.support[l]);
  }
  return {std::move(dec), std::move(bc)};
}

SectorOperator delete_overlap_potential(const SectorOperator& op, const Config& x,
                                        const Config& y, int box_halfwidth) {
  auto bx = box_support(*op.space, x, box_halfwidth);
  auto by = box_support(*op.space, y, box_halfwidth);
  auto overlap = intersect_sorted(bx, by);

  SectorOperator out = op;
  out.surgery_log.push_back("delete_overlap_potential[M=" +
                            std::to_string(box_halfwidth) + "]");
  for (auto g : overlap) {
    auto l = out.local_of_global(g);
    if (l < 0) continue;
    double v = 0.0;
    const Config c = op.space->config_at(g);
    for (int s : c) v += op.params.lambda * op.omega->at(s);
    out.matrix.coeffRef(l, l) -= v;
  }
  out.matrix.makeCompressed();
  return out;
}

SectorOperator add_edge_projection(const SectorOperator& op) {
  SectorOperator out = op;
  out.surgery_log.push_back("add_edge_projection");
  for (std::int64_t l = 0; l < out.dim(); ++l) {
    if (is_edge_config(op.space->config_at(op.support[l])))
      out.matrix.coeffRef(l, l) += 1.0;
  }
  out.matrix.makeCompressed();
  return out;
}

Eigen::VectorXd total_number_diagonal(int sites) {
  const std::int64_t dim = std::int64_t(1) << sites;
  Eigen::VectorXd d(dim);
  for (std::int64_t b = 0; b < dim; ++b)
    d[b] = (double)std::popcount((std::uint64_t)b);
  return d;
}

double hermiticity_defect(const Eigen::SparseMatrix<double>& m) {
  Eigen::SparseMatrix<double> diff = Eigen::SparseMatrix<double>(m.transpose()) - m;
  double worst = 0.0;
  for (int c = 0; c < diff.outerSize(); ++c)
    for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it)
      worst = std::max(worst, std::abs(it.value()));
  return worst;
}

}  // namespace xxz
