#pragma once

#include <Eigen/Dense>
#include <utility>

#include "qsd/discrimination.hpp"
#include "qsd/policy_table.hpp"

// Construction of the globally-optimal local measurement policy by backward
// induction on a uniform belief grid.  The terminal cost is the Bayes
// decision error min(p, 1-p); each earlier row stores, per grid belief, the
// measurement angle minimizing the expected interpolated cost-to-go over
// both outcomes.  The recursion depends only on the number of copies
// remaining, so row N-k of a horizon-N table is the same for every N.

namespace qsd {

/// Expected residual cost sampled on a belief grid.
struct ValueRow {
  Eigen::ArrayXd beliefs;
  Eigen::ArrayXd costs;
};

/// R_N(p) = min(p, 1-p): the Bayes decision error once all copies are spent.
ValueRow terminal_values(const Eigen::ArrayXd& grid);

/// Expected final error of measuring one copy at angle phi from belief p and
/// then continuing at the cost given by next_values:
///   sum_d Pr(d | p, phi) * next_values(posterior(d, p, phi)),
/// next_values linearly interpolated.  Outcomes of zero probability carry
/// zero weight and are skipped.
double expected_residual(const DiscriminationProblem& prob,
                         const ValueRow& next_values, double p, double phi);

/// The angle minimizing expected_residual over [0, pi/2) and the attained
/// minimum.  Dense scan of 1801 equally spaced angles brackets the global
/// minimum; golden-section refinement narrows it to 1e-10 rad.  Equal-cost
/// minimizers resolve to the smaller angle.
std::pair<double, double> optimize_angle(const DiscriminationProblem& prob,
                                         const ValueRow& next_values,
                                         double p);

/// Backward induction from the terminal condition down to the first copy.
/// Row N needs no search (the final measurement is the single-copy Helstrom
/// measurement); value rows are retained in the table.  The scheme's error
/// probability is table.cost_at(prob.q_plus).
PolicyTable build_table(const DiscriminationProblem& prob, int horizon,
                        int grid_size = 2501);

}  // namespace qsd
