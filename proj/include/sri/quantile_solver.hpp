#pragma once

#include <Eigen/Core>

namespace sri {

// Result of a pinball-loss minimization.
struct PinballFit {
  Eigen::VectorXd beta;
  double objective = 0.0;
  int iterations = 0;
};

// Pinball (check) loss Σ_i ρ_τ(r_i) with ρ_τ(u) = u·(τ − 1{u<0}).
double pinball_loss(const Eigen::VectorXd& residuals, double tau);

// Minimizes Σ_i ρ_τ(y_i − x_i'β) over β by vertex descent: an optimal
// solution interpolates k observations (k = number of columns), so the
// solver walks bases of k row indices, moving along the edge direction with
// the most negative directional derivative and stepping to the breakpoint
// where the one-dimensional slope turns non-negative. The achieved objective
// is within 1e-9 relative of the global optimum. When the minimizer set is a
// flat facet (ties), the midpoint of the optimal edge is returned; the
// objective is unaffected.
//
// max_iter = 0 picks an automatic budget; exhausting it raises SolverError
// with the best objective and the remaining descent gap. A rank-deficient X
// raises SingularDesignError.
PinballFit minimize_pinball(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            double tau, int max_iter = 0);

}  // namespace sri
