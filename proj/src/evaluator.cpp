#include "qsd/evaluator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <vector>

namespace qsd {

namespace {

constexpr double kBeliefMergeTol = 1e-12;

// A tree node: joint masses of the two hypotheses along the paths reaching
// it.  belief = mass_plus / (mass_plus + mass_minus).
struct Node {
  double mass_plus;
  double mass_minus;
  double belief;
};

void merge_by_belief(std::vector<Node>& nodes) {
  std::sort(nodes.begin(), nodes.end(),
            [](const Node& a, const Node& b) { return a.belief < b.belief; });
  std::vector<Node> merged;
  merged.reserve(nodes.size());
  for (const Node& n : nodes) {
    if (!merged.empty() && n.belief - merged.back().belief <= kBeliefMergeTol) {
      merged.back().mass_plus += n.mass_plus;
      merged.back().mass_minus += n.mass_minus;
      merged.back().belief = merged.back().mass_plus /
                             (merged.back().mass_plus +
                              merged.back().mass_minus);
    } else {
      merged.push_back(n);
    }
  }
  nodes.swap(merged);
}

}  // namespace

EvaluationResult exact_cost(const DiscriminationProblem& prob,
                            const SchemeSpec& spec, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (spec.horizon != horizon)
    throw std::invalid_argument("scheme horizon mismatch");

  std::vector<Node> level;
  level.push_back({prob.q_plus, prob.q_minus(), prob.q_plus});

  std::vector<Node> next;
  for (int n = 1; n <= horizon; ++n) {
    next.clear();
    next.reserve(2 * level.size());
    for (const Node& node : level) {
      const double phi = angle_for(spec, prob, n, node.belief);
      const double a_plus =
          outcome_probability(prob, Sign::Plus, phi, Outcome::Plus);
      const double a_minus =
          outcome_probability(prob, Sign::Minus, phi, Outcome::Plus);
      const double plus_mass_p = node.mass_plus * a_plus;
      const double plus_mass_m = node.mass_minus * a_minus;
      if (plus_mass_p + plus_mass_m > 0.0)
        next.push_back({plus_mass_p, plus_mass_m,
                        plus_mass_p / (plus_mass_p + plus_mass_m)});
      const double minus_mass_p = node.mass_plus * (1.0 - a_plus);
      const double minus_mass_m = node.mass_minus * (1.0 - a_minus);
      if (minus_mass_p + minus_mass_m > 0.0)
        next.push_back({minus_mass_p, minus_mass_m,
                        minus_mass_p / (minus_mass_p + minus_mass_m)});
    }
    merge_by_belief(next);
    level.swap(next);
  }

  double cost = 0.0;
  for (const Node& leaf : level)
    cost += std::min(leaf.mass_plus, leaf.mass_minus);
  return {spec.kind, horizon, cost, static_cast<std::int64_t>(level.size())};
}

EvaluationResult coalesced_cost(const DiscriminationProblem& prob,
                                const SchemeSpec& spec, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (spec.kind != SchemeKind::Unbiased && spec.kind != SchemeKind::FullyBiased)
    throw std::invalid_argument(
        "coalesced evaluation requires a fixed-angle scheme");
  if (spec.horizon != horizon)
    throw std::invalid_argument("scheme horizon mismatch");

  const double phi = angle_for(spec, prob, 1, prob.q_plus);
  const double a_plus =
      outcome_probability(prob, Sign::Plus, phi, Outcome::Plus);
  const double a_minus =
      outcome_probability(prob, Sign::Minus, phi, Outcome::Plus);

  // mass[k] = per-hypothesis probability of any one path with k Plus
  // outcomes, times the running path multiplicity (Pascal recurrence).
  std::vector<double> mass_plus{prob.q_plus}, mass_minus{prob.q_minus()};
  for (int n = 1; n <= horizon; ++n) {
    std::vector<double> np(n + 1, 0.0), nm(n + 1, 0.0);
    for (int k = 0; k < n; ++k) {
      np[k] += mass_plus[k] * (1.0 - a_plus);
      np[k + 1] += mass_plus[k] * a_plus;
      nm[k] += mass_minus[k] * (1.0 - a_minus);
      nm[k + 1] += mass_minus[k] * a_minus;
    }
    mass_plus.swap(np);
    mass_minus.swap(nm);
  }

  double cost = 0.0;
  for (int k = 0; k <= horizon; ++k)
    cost += std::min(mass_plus[k], mass_minus[k]);
  return {spec.kind, horizon, cost, horizon + 1};
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols())
    throw std::invalid_argument("matrix must be square");
  const double scale = matrix.norm();
  const double asym = (matrix - matrix.transpose()).norm();
  if (asym > 1e-12 * std::max(scale, 1.0))
    throw std::invalid_argument("matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue iteration failed");
  return solver.eigenvalues();
}

CollectiveBenchmark collective_cost(const DiscriminationProblem& prob,
                                    int horizon) {
  if (horizon < 1 || horizon > 12)
    throw std::invalid_argument("collective benchmark supports 1 <= N <= 12");
  if (prob.nu == 0.0) return {horizon, cost_local_pure(prob, horizon)};

  // Single-copy density matrices in the {x, y} basis; everything is real
  // because the Bloch vectors lie in the X-Z plane.
  const double r = 1.0 - prob.nu;
  const double cz = r * std::cos(2.0 * prob.theta);
  const double cx = r * std::sin(2.0 * prob.theta);
  Eigen::Matrix2d rho_plus, rho_minus;
  rho_plus << 0.5 * (1.0 + cz), 0.5 * cx, 0.5 * cx, 0.5 * (1.0 - cz);
  rho_minus << 0.5 * (1.0 + cz), -0.5 * cx, -0.5 * cx, 0.5 * (1.0 - cz);

  Eigen::MatrixXd pow_plus = rho_plus;
  Eigen::MatrixXd pow_minus = rho_minus;
  for (int n = 1; n < horizon; ++n) {
    pow_plus = kron(pow_plus, rho_plus);
    pow_minus = kron(pow_minus, rho_minus);
  }
  const Eigen::MatrixXd diff =
      prob.q_plus * pow_plus - prob.q_minus() * pow_minus;
  const double trace_norm = symmetric_eigenvalues(diff).cwiseAbs().sum();
  return {horizon, 0.5 * (1.0 - trace_norm)};
}

}  // namespace qsd
