#include "qsd/discrimination.hpp"

namespace qsd {

CanonicalAngle canonicalize_angle(double raw) {
  if (!std::isfinite(raw))
    throw std::invalid_argument("measurement angle must be finite");
  // The projector pair has period pi with labels intact.
  double m = std::fmod(raw, kPi);
  if (m < 0.0) m += kPi;
  if (m >= kPi) m -= kPi;  // fmod rounding guard
  if (m < kHalfPi) return {m, false};
  return {m - kHalfPi, true};
}

double outcome_probability(const DiscriminationProblem& prob, Sign true_state,
                           double phi, Outcome d) {
  const double signed_theta =
      true_state == Sign::Plus ? prob.theta : -prob.theta;
  const double plus = 0.5 * (1.0 + (1.0 - prob.nu) *
                                       std::cos(2.0 * (phi - signed_theta)));
  return d == Outcome::Plus ? plus : 1.0 - plus;
}

double outcome_marginal(const DiscriminationProblem& prob, double p,
                        double phi, Outcome d) {
  return outcome_probability(prob, Sign::Plus, phi, d) * p +
         outcome_probability(prob, Sign::Minus, phi, d) * (1.0 - p);
}

double bayes_update(const DiscriminationProblem& prob, double p, double phi,
                    Outcome d) {
  const double marginal = outcome_marginal(prob, p, phi, d);
  if (marginal <= 0.0)
    throw std::domain_error("bayes_update: outcome has zero probability");
  return outcome_probability(prob, Sign::Plus, phi, d) * p / marginal;
}

double helstrom_angle(const DiscriminationProblem& prob, double p) {
  // arccot with range (0, pi): arccot(x) = pi/2 - atan(x).
  const double x = (2.0 * p - 1.0) / std::tan(2.0 * prob.theta);
  return 0.5 * (kHalfPi - std::atan(x));
}

double single_copy_error(const DiscriminationProblem& prob, double p) {
  const double a = 2.0 * p - 1.0;
  const double s = std::sin(2.0 * prob.theta);
  const double c = std::cos(2.0 * prob.theta);
  const double w = (1.0 - prob.nu) * std::sqrt(s * s + a * a * c * c);
  // Trace norm of p*rho+ - (1-p)*rho-; when |2p-1| dominates, measuring
  // cannot beat guessing the prior.
  return 0.5 * (1.0 - std::max(std::abs(a), w));
}

}  // namespace qsd
