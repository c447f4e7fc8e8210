#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "qsd/schemes.hpp"

// Exact (non-sampled) error probabilities.  Local schemes are evaluated by
// enumerating the binary outcome tree: the belief is a sufficient statistic,
// so nodes at the same depth with equal beliefs are merged, which collapses
// the fixed-angle schemes to a linear number of states per level.  The
// collective benchmark is the N-copy Helstrom bound, computed from the
// spectrum of q+ rho+^(xN) - q- rho-^(xN).

namespace qsd {

struct EvaluationResult {
  SchemeKind scheme;
  int horizon;
  double cost;          // exact Bayes error of scheme + optimal decision
  std::int64_t leaf_count;  // enumerated outcome paths after merging
};

struct CollectiveBenchmark {
  int horizon;
  double cost;  // error of the joint N-copy Helstrom measurement
};

/// Exact error probability of a local scheme over N copies.  Ties at the
/// final decision contribute half their path probability.
EvaluationResult exact_cost(const DiscriminationProblem& prob,
                            const SchemeSpec& spec, int horizon);

/// Fixed-angle fast path: for the unbiased and fully-biased schemes the
/// posterior depends only on the outcome count, so level n has n+1 states.
/// Rejects schemes with belief-dependent angles.
EvaluationResult coalesced_cost(const DiscriminationProblem& prob,
                                const SchemeSpec& spec, int horizon);

/// N-copy collective Helstrom benchmark.  Closed form for nu = 0; otherwise
/// the trace norm of the 2^N x 2^N difference operator, which is real
/// symmetric in the {x,y}^(xN) product basis since both Bloch vectors lie in
/// the X-Z plane.  Supported for 1 <= N <= 12.
CollectiveBenchmark collective_cost(const DiscriminationProblem& prob,
                                    int horizon);

/// All eigenvalues of a real symmetric matrix (ascending).  Rejects input
/// whose asymmetry exceeds 1e-12 relative to its Frobenius norm.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& matrix);

/// Kronecker product, row-major block convention.
Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace qsd
