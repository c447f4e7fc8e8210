#include "qsd/schemes.hpp"

#include <cmath>

namespace qsd {

std::string scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::Unbiased: return "unbiased";
    case SchemeKind::FullyBiased: return "fully-biased";
    case SchemeKind::LocallyOptimal: return "locally-optimal";
    case SchemeKind::GloballyOptimal: return "globally-optimal";
  }
  throw std::logic_error("unknown scheme kind");
}

Decision decide(double p_final) {
  if (p_final == 0.5) return {Sign::Plus, true};
  return {p_final > 0.5 ? Sign::Plus : Sign::Minus, false};
}

double angle_for(const SchemeSpec& spec, const DiscriminationProblem& prob,
                 int n, double p) {
  if (n < 1 || n > spec.horizon)
    throw std::out_of_range("copy index outside scheme horizon");
  switch (spec.kind) {
    case SchemeKind::Unbiased:
      return helstrom_angle(prob, prob.q_plus);
    case SchemeKind::FullyBiased:
      return prob.theta;
    case SchemeKind::LocallyOptimal:
      return helstrom_angle(prob, p);
    case SchemeKind::GloballyOptimal:
      return interpolate_angle(*spec.table, n, p);
  }
  throw std::logic_error("unknown scheme kind");
}

double cost_unbiased_closed(const DiscriminationProblem& prob, int n) {
  if (n < 1) throw std::invalid_argument("copies must be >= 1");
  const int m = (n % 2 == 1) ? n : n - 1;  // even N performs as N-1
  const double c1 = single_copy_error(prob, prob.q_plus);
  // Binomial tail sum_{k > m/2} C(m,k) c1^k (1-c1)^(m-k) via the
  // multiplicative recurrence on terms.
  double term = std::pow(1.0 - c1, m);  // k = 0
  double tail = 0.0;
  for (int k = 0; k <= m; ++k) {
    if (2 * k > m) tail += term;
    term *= (static_cast<double>(m - k) / (k + 1)) * (c1 / (1.0 - c1));
  }
  return tail;
}

double cost_fully_biased_pure(const DiscriminationProblem& prob, int n) {
  if (n < 1) throw std::invalid_argument("copies must be >= 1");
  if (prob.nu != 0.0)
    throw std::invalid_argument(
        "fully-biased closed form holds for pure states only");
  return prob.q_plus * std::pow(prob.overlap(), 2 * n);
}

double cost_local_pure(const DiscriminationProblem& prob, int n) {
  if (n < 1) throw std::invalid_argument("copies must be >= 1");
  if (prob.nu != 0.0)
    throw std::invalid_argument(
        "locally-optimal closed form holds for pure states only");
  const double c2n = std::pow(prob.overlap(), 2 * n);
  return 0.5 * (1.0 - std::sqrt(1.0 - 4.0 * prob.q_plus * prob.q_minus() * c2n));
}

}  // namespace qsd
