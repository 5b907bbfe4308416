#include "xxz/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

namespace xxz {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SpMat = Eigen::SparseMatrix<double>;

// y = a * x with x, y row-major blocks so that a streams once per product.
template <typename XT, typename YT>
void spmm(const SpMat& a, const XT& x, YT&& y) {
  y.setZero();
  for (int j = 0; j < a.outerSize(); ++j) {
    const auto xj = x.row(j);
    for (SpMat::InnerIterator it(a, j); it; ++it) {
      y.row(it.row()) += it.value() * xj;
    }
  }
}

template <typename T>
void random_block(T&& x, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j) x(i, j) = gauss(rng);
}

// Cholesky-based orthonormalization; callers run it twice for full
// orthogonality. Falls back to eigen-whitening when the Gram matrix is
// numerically rank deficient, re-randomizing lost directions.
void chol_orthonormalize(RowMat& x, std::mt19937_64& rng) {
  Eigen::MatrixXd g = x.transpose() * x;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() == Eigen::Success) {
    Eigen::MatrixXd u = llt.matrixU();
    Eigen::MatrixXd uinv = u.triangularView<Eigen::Upper>().solve(
        Eigen::MatrixXd::Identity(u.rows(), u.cols()));
    x = (x * uinv).eval();
    return;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  const double cutoff = std::max(1e-28, es.eigenvalues().maxCoeff() * 1e-24);
  Eigen::VectorXd inv_sqrt(es.eigenvalues().size());
  bool lost = false;
  for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) {
    if (es.eigenvalues()[i] > cutoff) {
      inv_sqrt[i] = 1.0 / std::sqrt(es.eigenvalues()[i]);
    } else {
      inv_sqrt[i] = 0.0;
      lost = true;
    }
  }
  x = (x * (es.eigenvectors() * inv_sqrt.asDiagonal())).eval();
  if (lost) {
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      if (x.col(j).norm() < 0.5) random_block(x.col(j).matrix(), rng);
  }
}

// Scaled Chebyshev filter damping [c, d] and amplifying below c; columns
// processed in chunks to bound workspace.
void chebyshev_filter(const SpMat& a, RowMat& x, int degree, double c, double d,
                      double lambda_ref) {
  const double e = 0.5 * (d + c);
  const double half = 0.5 * (d - c);
  const double sigma1 = half / (e - lambda_ref);
  const Eigen::Index dim = x.rows();
  const Eigen::Index nb = x.cols();
  const Eigen::Index chunk = std::min<Eigen::Index>(nb, 32);

  RowMat x0(dim, chunk), x1(dim, chunk), tmp(dim, chunk);
  for (Eigen::Index start = 0; start < nb; start += chunk) {
    const Eigen::Index w = std::min(chunk, nb - start);
    x0.leftCols(w) = x.middleCols(start, w);
    spmm(a, x0.leftCols(w), tmp.leftCols(w));
    x1.leftCols(w) = (sigma1 / half) * (tmp.leftCols(w) - e * x0.leftCols(w));
    double sigma = sigma1;
    for (int k = 2; k <= degree; ++k) {
      const double sigma_new = 1.0 / (2.0 / sigma1 - sigma);
      spmm(a, x1.leftCols(w), tmp.leftCols(w));
      tmp.leftCols(w) =
          (2.0 * sigma_new / half) * (tmp.leftCols(w) - e * x1.leftCols(w)) -
          (sigma * sigma_new) * x0.leftCols(w);
      x0.leftCols(w).swap(x1.leftCols(w));
      x1.leftCols(w).swap(tmp.leftCols(w));
      sigma = sigma_new;
    }
    x.middleCols(start, w) = x1.leftCols(w);
  }
}

}  // namespace

ExtremeEstimate lanczos_extremes(const SpMat& a, int iters, std::uint64_t seed) {
  const Eigen::Index dim = a.rows();
  iters = (int)std::min<Eigen::Index>(iters, dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Eigen::VectorXd v(dim), v_prev = Eigen::VectorXd::Zero(dim), w(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = gauss(rng);
  v.normalize();

  std::vector<double> alpha, beta;
  for (int j = 0; j < iters; ++j) {
    w = a * v;
    if (j > 0) w -= beta.back() * v_prev;
    const double aj = v.dot(w);
    alpha.push_back(aj);
    w -= aj * v;
    const double bj = w.norm();
    if (bj < 1e-300) break;
    if (j + 1 < iters) {
      beta.push_back(bj);
      v_prev = v;
      v = w / bj;
    } else {
      beta.push_back(bj);
    }
  }

  const int m = (int)alpha.size();
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    t(i, i) = alpha[i];
    if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
  ExtremeEstimate out;
  out.min_ritz = es.eigenvalues()(0);
  out.max_ritz = es.eigenvalues()(m - 1);
  const double beta_last = (int)beta.size() >= m ? beta[m - 1] : 0.0;
  out.min_residual = std::abs(beta_last * es.eigenvectors()(m - 1, 0));
  out.iterations = m;
  return out;
}

BottomWindowResult lowest_eigenpairs(const SpMat& a, double upper,
                                     const BottomWindowOptions& opts) {
  const Eigen::Index dim = a.rows();
  BottomWindowResult out;
  std::mt19937_64 rng(opts.seed);

  auto est = lanczos_extremes(a, (int)std::min<Eigen::Index>(90, dim), opts.seed ^ 0xABCD);
  const double span = std::max(est.max_ritz - est.min_ritz, 1e-12);
  const double d = est.max_ritz + 0.02 * span;
  const double radius = std::max({std::abs(est.min_ritz), std::abs(est.max_ritz), 1.0});
  const double tol_abs = opts.tol_rel * radius;
  out.spectral_radius_estimate = radius;

  if (est.min_residual < 1e-8 * radius && est.min_ritz - est.min_residual > upper) {
    out.complete = true;
    out.note = "window below the spectrum (certified by converged bottom estimate)";
    out.vectors.resize(dim, 0);
    out.values.resize(0);
    return out;
  }

  int nb = std::min<int>({opts.initial_block, (int)dim, opts.max_block});
  RowMat x(dim, nb);
  random_block(x, rng);
  chol_orthonormalize(x, rng);

  Eigen::VectorXd theta, resid;
  double lambda_ref = est.min_ritz;
  RowMat w;

  for (int round = 0; round < opts.max_rounds; ++round) {
    double cut = std::max(upper + 0.02 * span, lambda_ref + 0.05 * span);
    if (theta.size() > 0) {
      const double top = theta[theta.size() - 1];
      cut = std::max(upper + 0.02 * span, std::min(top + 0.1 * span, d - 0.1 * span));
    }
    cut = std::min(cut, d - 0.05 * span);
    chebyshev_filter(a, x, opts.filter_degree, cut, d, lambda_ref);
    chol_orthonormalize(x, rng);
    chol_orthonormalize(x, rng);

    w.resize(dim, nb);
    spmm(a, x, w);
    Eigen::MatrixXd b = x.transpose() * w;
    b = 0.5 * (b + b.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
    theta = es.eigenvalues();
    x = (x * es.eigenvectors()).eval();
    w = (w * es.eigenvectors()).eval();
    lambda_ref = theta[0];

    resid.resize(nb);
    for (int i = 0; i < nb; ++i) resid[i] = (w.col(i) - theta[i] * x.col(i)).norm();

    int below = 0;
    while (below < nb && theta[below] <= upper) ++below;

    bool wanted_converged = true;
    for (int i = 0; i < below; ++i)
      if (resid[i] > tol_abs) wanted_converged = false;

    if (nb >= (int)dim) {
      if (wanted_converged) {
        out.complete = true;
        out.note = "full space";
        break;
      }
      continue;
    }

    const bool have_guard = below < nb && (theta[below] - resid[below] > upper) &&
                            resid[below] < 1e-4 * radius;

    if (nb - below < 2) {
      if (nb < opts.max_block) {
        const int nb_new = std::min({nb * 2, opts.max_block, (int)dim});
        RowMat grown(dim, nb_new);
        grown.leftCols(nb) = x;
        random_block(grown.rightCols(nb_new - nb), rng);
        x.swap(grown);
        chol_orthonormalize(x, rng);
        nb = nb_new;
        continue;
      }
      if (wanted_converged) {
        out.note = "block cap reached before a guard value above the window";
        break;
      }
    }

    if (wanted_converged && have_guard) {
      out.complete = true;
      out.note = "guarded: converged value above the window present";
      break;
    }
  }

  int keep = 0;
  while (keep < (int)theta.size() && theta[keep] <= upper) ++keep;
  out.values = theta.head(keep);
  out.vectors.resize(dim, keep);
  for (int i = 0; i < keep; ++i) out.vectors.col(i) = x.col(i);
  if (!out.complete && out.note.empty())
    out.note = "round cap reached; residuals may exceed target";
  return out;
}

}  // namespace xxz
