#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Sparse>

#include "xxz/config_space.hpp"
#include "xxz/disorder.hpp"

namespace xxz {

struct ModelParams {
  double anisotropy = 2.0;   // Delta > 1 (Ising phase)
  double lambda = 1.0;       // disorder strength >= 0
  double beta = -1.0;        // boundary coefficient; negative means "use minimum"
  int half_length = 4;       // L
  double margin = 0.1;       // droplet-window margin delta in (0,1)

  static double min_beta(double anisotropy) { return 0.5 * (1.0 - 1.0 / anisotropy); }

  /// 1 - 1/Delta, the elementary interaction quantum.
  double gap_unit() const { return 1.0 - 1.0 / anisotropy; }

  double effective_beta() const { return beta < 0 ? min_beta(anisotropy) : beta; }

  /// lambda * sqrt(Delta-1) * min{1, Delta-1}; compared against a user
  /// threshold since no sharp cutoff is available.
  double regime_strength() const;
  bool regime_flag(double threshold) const { return regime_strength() >= threshold; }

  void validate() const;
};

// Hamiltonian of the full spin chain on 2L+1 sites; basis index bit p
// corresponds to a down spin at site p - L.
struct SpinOperator {
  Eigen::SparseMatrix<double> matrix;
  ModelParams params;
  DisorderRealization omega;

  int sites() const { return 2 * params.half_length + 1; }
  std::int64_t dim() const { return matrix.rows(); }
};

// Hamiltonian of one particle-number sector, possibly restricted to a
// subset of the configuration space. `support` holds the global indices
// (sorted) that the matrix rows/columns refer to.
struct SectorOperator {
  std::shared_ptr<const ConfigSpace> space;
  std::vector<std::int64_t> support;
  Eigen::SparseMatrix<double> matrix;
  ModelParams params;
  std::shared_ptr<const DisorderRealization> omega;
  std::vector<std::string> surgery_log;

  std::int64_t dim() const { return matrix.rows(); }
  bool is_full() const { return (std::int64_t)support.size() == space->dim(); }
  /// Position of a global index inside `support`, or -1.
  std::int64_t local_of_global(std::int64_t g) const;
  Config config_of_local(std::int64_t local) const;
};

SpinOperator build_spin_hamiltonian(const ModelParams& params,
                                    const DisorderRealization& omega);

SectorOperator build_sector_hamiltonian(int n_particles, const ModelParams& params,
                                        const DisorderRealization& omega);

/// Principal submatrix on the given (sorted) global index subset.
SectorOperator restrict_to(const SectorOperator& op,
                           std::span<const std::int64_t> subset);

struct BoundaryCoupling {
  Eigen::SparseMatrix<double> gamma;          // over the parent operator's support
  std::vector<std::int64_t> inner_boundary;   // global indices inside the subset
  std::vector<std::int64_t> outer_boundary;   // global indices outside
  double norm_bound = 0.0;                    // N / Delta
};

/// Splits op into block-diagonal part over (subset, complement) plus the
/// dropped coupling. decoupled + gamma reproduces op entrywise.
std::pair<SectorOperator, BoundaryCoupling> decouple(
    const SectorOperator& op, std::span<const std::int64_t> subset);

/// Zeroes the random potential on the overlap of the two boxes around x
/// and y; op is expected to be restricted to one of those boxes.
SectorOperator delete_overlap_potential(const SectorOperator& op, const Config& x,
                                        const Config& y, int box_halfwidth);

/// Adds +1 to the diagonal at single-cluster configurations.
SectorOperator add_edge_projection(const SectorOperator& op);

/// Total down-spin number operator on the spin basis (diagonal).
Eigen::VectorXd total_number_diagonal(int sites);

/// Max |A - A^T| over all entries.
double hermiticity_defect(const Eigen::SparseMatrix<double>& m);

}  // namespace xxz
