#include "sri/quantile_solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sri/errors.hpp"

namespace sri {

double pinball_loss(const Eigen::VectorXd& residuals, double tau) {
  double f = 0.0;
  for (Eigen::Index i = 0; i < residuals.size(); ++i) {
    const double u = residuals[i];
    f += u >= 0.0 ? tau * u : (tau - 1.0) * u;
  }
  return f;
}

namespace {

// Right-derivative of ρ_τ at a zero residual whose value starts moving at
// rate -s: always non-negative (zero is a kink).
inline double one_sided(double s, double tau) {
  return (1.0 - tau) * std::max(s, 0.0) + tau * std::max(-s, 0.0);
}

struct Breakpoint {
  double t;
  double weight;  // slope increase when the residual crosses zero
  Eigen::Index row;
};

}  // namespace

// Vertex descent over interpolation bases. A basis is a set of k row
// indices H with X_H invertible; its vertex is β = X_H⁻¹ y_H. With
// D = X_H⁻¹ and S = X·D, moving β along column h of D changes residual i at
// rate -S(i,h) and leaves the other basis residuals at zero, so the 2k
// signed columns of D are exactly the edges of the vertex, and checking
// their one-sided derivatives is the full simplex optimality test for the
// equivalent linear program.
PinballFit minimize_pinball(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            double tau, int max_iter) {
  const Eigen::Index n = X.rows();
  const Eigen::Index k = X.cols();
  if (n != y.size())
    throw ConfigError("pinball: X has " + std::to_string(n) + " rows but y " +
                      std::to_string(y.size()));
  if (k == 0) throw ConfigError("pinball: no columns");
  if (n < k)
    throw InsufficientDataError("pinball: fewer rows than columns");
  if (!(tau > 0.0 && tau < 1.0))
    throw DomainError("pinball: tau must lie in (0,1)");
  if (max_iter <= 0) max_iter = 100 * static_cast<int>(n + k) + 1000;

  // Starting basis: the k best-conditioned rows via column-pivoted QR of Xᵀ.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.transpose());
  if (qr.rank() < k) {
    throw SingularDesignError("pinball: design matrix has rank " +
                              std::to_string(qr.rank()) + " but " +
                              std::to_string(k) + " columns");
  }
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j)
    basis[static_cast<std::size_t>(j)] = qr.colsPermutation().indices()[j];

  const double ztol = 1e-11 * (1.0 + y.cwiseAbs().maxCoeff());

  Eigen::VectorXd beta(k), r(n);
  Eigen::MatrixXd D(k, k), S(n, k);
  std::vector<int> cls(static_cast<std::size_t>(n));  // -1, 0, +1 residual sign

  auto collect_breakpoints = [&](Eigen::Index h, double sigma) {
    std::vector<Breakpoint> bps;
    const double s_scale = 1e-12 * (1.0 + S.col(h).cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < n; ++i) {
      if (cls[static_cast<std::size_t>(i)] == 0) continue;
      const double s = sigma * S(i, h);
      if (std::abs(s) <= s_scale) continue;
      if ((r[i] > 0.0) != (s > 0.0)) continue;  // residual moves off zero
      bps.push_back({r[i] / s, std::abs(s), i});
    }
    std::sort(bps.begin(), bps.end(), [](const Breakpoint& a,
                                         const Breakpoint& b) {
      return a.t != b.t ? a.t < b.t : a.row < b.row;
    });
    return bps;
  };

  int iter = 0;
  for (;; ++iter) {
    // Rebuild the vertex from the current basis.
    Eigen::MatrixXd XH(k, k);
    Eigen::VectorXd yH(k);
    for (Eigen::Index j = 0; j < k; ++j) {
      XH.row(j) = X.row(basis[static_cast<std::size_t>(j)]);
      yH[j] = y[basis[static_cast<std::size_t>(j)]];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(XH);
    if (!lu.isInvertible())
      throw SolverError("pinball: basis became numerically singular");
    D = lu.inverse();
    beta = D * yH;
    r = y - X * beta;
    S = X * D;
    for (Eigen::Index j = 0; j < k; ++j) {
      r[basis[static_cast<std::size_t>(j)]] = 0.0;  // interpolated exactly
      S.row(basis[static_cast<std::size_t>(j)]) =
          Eigen::RowVectorXd::Unit(k, j);
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      cls[static_cast<std::size_t>(i)] =
          r[i] > ztol ? 1 : (r[i] < -ztol ? -1 : 0);
    }

    // One-sided derivatives along every edge; keep the steepest descent and
    // the first flat edge (for midpoint tie resolution at the optimum).
    double best_score = 0.0, best_g = 0.0;
    Eigen::Index best_h = -1;
    double best_sigma = 1.0;
    Eigen::Index flat_h = -1;
    double flat_sigma = 1.0;
    for (Eigen::Index h = 0; h < k; ++h) {
      double g_pos = 0.0, g_neg = 0.0, mass = 0.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double s = S(i, h);
        mass += std::abs(s);
        switch (cls[static_cast<std::size_t>(i)]) {
          case 1:
            g_pos -= tau * s;
            g_neg += tau * s;
            break;
          case -1:
            g_pos += (1.0 - tau) * s;
            g_neg -= (1.0 - tau) * s;
            break;
          default:
            g_pos += one_sided(s, tau);
            g_neg += one_sided(-s, tau);
        }
      }
      const double scale = 1.0 + mass;
      const double thr = 1e-10 * scale;
      for (int dir = 0; dir < 2; ++dir) {
        const double g = dir == 0 ? g_pos : g_neg;
        const double sigma = dir == 0 ? 1.0 : -1.0;
        const double score = g / scale;
        if (score < best_score) {
          best_score = score;
          best_g = g;
          best_h = h;
          best_sigma = sigma;
        }
        if (flat_h < 0 && std::abs(g) <= thr) {
          flat_h = h;
          flat_sigma = sigma;
        }
      }
    }

    if (best_score >= -1e-10) {
      // Optimal vertex. If an edge is flat, the minimizer is a facet: slide
      // to its midpoint so ties (e.g. the even-sample median) resolve to the
      // conventional central value.
      if (flat_h >= 0) {
        auto bps = collect_breakpoints(flat_h, flat_sigma);
        if (!bps.empty())
          beta += (bps.front().t / 2.0) * flat_sigma * D.col(flat_h);
      }
      PinballFit fit;
      fit.beta = beta;
      fit.objective = pinball_loss(y - X * beta, tau);
      fit.iterations = iter;
      return fit;
    }

    if (iter >= max_iter) {
      throw SolverError("pinball: no convergence in " +
                        std::to_string(max_iter) + " iterations; objective " +
                        std::to_string(pinball_loss(y - X * beta, tau)) +
                        ", steepest edge slope " + std::to_string(best_g));
    }

    // Walk the breakpoints of the steepest edge until the slope turns
    // non-negative; the residual crossing there enters the basis. Every
    // executed step has t > 0, so the objective strictly decreases and no
    // basis can repeat.
    auto bps = collect_breakpoints(best_h, best_sigma);
    if (bps.empty())
      throw SolverError("pinball: unbounded descent edge (internal)");
    double slope = best_g;
    Eigen::Index enter = -1;
    for (const auto& bp : bps) {
      slope += bp.weight;
      if (slope >= 0.0) {
        enter = bp.row;
        break;
      }
    }
    if (enter < 0)
      throw SolverError("pinball: line search ran past every breakpoint "
                        "(internal)");
    basis[static_cast<std::size_t>(best_h)] = enter;
  }
}

}  // namespace sri
