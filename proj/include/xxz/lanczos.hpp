#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace xxz {

struct ExtremeEstimate {
  double min_ritz = 0.0;
  double max_ritz = 0.0;
  double min_residual = 0.0;  // residual bound for the bottom Ritz value
  int iterations = 0;
};

/// Rough spectral extremes from a plain (non-reorthogonalized) Lanczos run.
/// min_ritz >= lambda_min always; once min_residual is small,
/// lambda_min >= min_ritz - min_residual.
ExtremeEstimate lanczos_extremes(const Eigen::SparseMatrix<double>& a, int iters,
                                 std::uint64_t seed);

struct BottomWindowOptions {
  double tol_rel = 1e-11;
  std::uint64_t seed = 0x5eed;
  int max_block = 512;
  int initial_block = 32;
  int filter_degree = 40;
  int max_rounds = 60;
};

struct BottomWindowResult {
  Eigen::VectorXd values;   // ascending, all eigenvalues <= upper
  Eigen::MatrixXd vectors;  // matching columns
  bool complete = false;
  std::string note;
  double spectral_radius_estimate = 0.0;
};

/// All eigenpairs with eigenvalue <= upper, found by Chebyshev-filtered
/// block iteration. Assumes the target set sits at the bottom of the
/// spectrum. The block grows until a converged guard value above `upper`
/// exists, so the returned set is complete up to the usual random-start
/// caveat; pair with eigen_count_below for an independent count when the
/// matrix admits a sparse factorization.
BottomWindowResult lowest_eigenpairs(const Eigen::SparseMatrix<double>& a,
                                     double upper, const BottomWindowOptions& opts);

}  // namespace xxz
