#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "xxz/operators.hpp"

namespace xxz {

class ResolventSingularError : public std::runtime_error {
 public:
  ResolventSingularError(const std::string& what, double dist_estimate)
      : std::runtime_error(what), dist_to_spectrum(dist_estimate) {}
  double dist_to_spectrum;
};

struct DropletBand {
  double lo = 0.0, hi = 0.0;
  double width() const { return hi - lo; }
};

/// Closed interval of single-droplet energies in the N-particle sector.
DropletBand droplet_band(int n_particles, double anisotropy);

/// Common limit point of the droplet bands as N grows.
double droplet_band_limit(double anisotropy);

struct Window {
  double lo = 0.0, hi = 0.0;
  bool contains(double e) const { return e >= lo && e <= hi; }
  double length() const { return hi - lo; }
};

/// [1 - 1/Delta, (2 - delta)(1 - 1/Delta)]
Window droplet_window(const ModelParams& p);
/// [1 - 1/Delta, (k + 1 - delta)(1 - 1/Delta)]
Window k_droplet_window(const ModelParams& p, int k);

struct SpectralData {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, one per eigenvalue
  std::vector<std::pair<int, int>> clusters;  // [begin, end) runs within tolerance
  std::vector<int> window_members;
  bool complete = true;  // full spectrum, or certified-complete window content
  std::string note;

  int count() const { return (int)eigenvalues.size(); }
};

enum class WindowMethod { Auto, Dense, Iterative };

struct DiagOptions {
  double degeneracy_tol_rel = 1e-9;
  double tol_rel = 1e-11;  // residual target relative to ||H||
  WindowMethod method = WindowMethod::Auto;
  std::uint64_t seed = 0x5eed;
  int max_block = 512;
  bool want_vectors = true;
};

inline constexpr std::int64_t kDenseCap = 4000;

/// Full diagonalization; dense path only (dim <= 4000).
SpectralData diagonalize(const Eigen::SparseMatrix<double>& h,
                         const DiagOptions& opts = {});
SpectralData diagonalize(const SectorOperator& op, const DiagOptions& opts = {});
SpectralData diagonalize(const SpinOperator& op, const DiagOptions& opts = {});

/// All eigenpairs with eigenvalue in `w`. Dense when small; otherwise an
/// iterative bottom-window solver (every droplet window starts at the
/// spectral bottom since the potential is nonnegative).
SpectralData diagonalize_window(const Eigen::SparseMatrix<double>& h, Window w,
                                const DiagOptions& opts = {});
SpectralData diagonalize_window(const SectorOperator& op, Window w,
                                const DiagOptions& opts = {});

/// Orthogonal projector onto the span of the selected eigenvectors
/// (whole clusters only; selection by window).
Eigen::MatrixXd projection(const SpectralData& data, const Window& w);
Eigen::MatrixXd projection(const SpectralData& data,
                           const std::vector<int>& eigen_indices);

/// Number of eigenvalues strictly below c, when computable at this size
/// (dense eigensolve or sparse factorization inertia).
std::optional<std::int64_t> eigen_count_below(const Eigen::SparseMatrix<double>& h,
                                              double c);

// Shifted linear solves (H - z)^{-1} against basis vectors, sharing one
// factorization across right-hand sides.
class Resolvent {
 public:
  Resolvent(const SectorOperator& op, std::complex<double> z);
  std::complex<double> element(const Config& u, const Config& v);
  std::complex<double> element_local(std::int64_t u_local, std::int64_t v_local);
  Eigen::VectorXcd column_local(std::int64_t v_local);
  const SectorOperator& op() const { return op_; }

 private:
  SectorOperator op_;
  std::complex<double> z_;
  Eigen::SparseLU<Eigen::SparseMatrix<std::complex<double>>> lu_;
  double matrix_scale_ = 0.0;
};

std::complex<double> greens_element(const SectorOperator& op, std::complex<double> z,
                                    const Config& u, const Config& v);

struct SchurData {
  double energy = 0.0;
  std::vector<std::int64_t> edge_globals;  // single-cluster part of the box
  std::vector<std::int64_t> bulk_globals;
  Eigen::MatrixXd edge_block;      // Q(H - E)Q on the edge part
  Eigen::MatrixXd bulk_block;      // complement block, shifted
  Eigen::MatrixXd coupling;        // edge x bulk
  Eigen::MatrixXd effective;       // edge_block - coupling * bulk_block^{-1} * coupling^T
};

/// Effective edge operator of a box-restricted Hamiltonian at energy E.
/// Requires the bulk block at E to be positive definite (guaranteed for E
/// in the droplet window).
SchurData schur_complement(const SectorOperator& box_op, double E);

/// min spectrum of the restriction to cluster count > k, compared against
/// (k+1)(1 - 1/Delta).
bool bulk_restriction_bound_check(const SectorOperator& op, int k);

/// Dense symmetric eigensolver (LAPACK-backed when available).
void dense_sym_eig(const Eigen::MatrixXd& a, Eigen::VectorXd& values,
                   Eigen::MatrixXd* vectors);

}  // namespace xxz
