#pragma once

#include <cmath>
#include <stdexcept>

// Minimum-error discrimination of two nonorthogonal qubit states under
// depolarizing noise: problem definition, measurement outcome statistics,
// Bayesian updating, and single-copy Helstrom quantities.
//
// Conventions used throughout:
//   * hypothesis states  psi_pm = cos(theta)|x> +/- sin(theta)|y>, mixed by
//     depolarizing noise of strength nu into Bloch vectors
//     (1-nu)*(+/- sin 2theta, 0, cos 2theta),
//   * measurements are projective in a basis {|phi>, |phi - pi/2>} with
//     phi in [0, pi/2),
//   * a "belief" is the posterior probability that the prepared state is
//     psi_plus given all results so far.
// All state algebra is carried out on Bloch components; nothing here needs a
// complex matrix.

namespace qsd {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kHalfPi = kPi / 2.0;

/// Which of the two hypothesis states was prepared.
enum class Sign { Plus, Minus };

/// Detector click: Plus is the |phi> arm, Minus the |phi - pi/2> arm.
enum class Outcome { Plus, Minus };

inline Outcome flipped(Outcome d) {
  return d == Outcome::Plus ? Outcome::Minus : Outcome::Plus;
}

/// The triple (theta, q_plus, nu) defining states, priors, and noise.
/// q_minus = 1 - q_plus is derived, never stored.
struct DiscriminationProblem {
  double theta;   // half the Bloch separation, 0 < theta < pi/4
  double q_plus;  // prior of psi_plus, 1/2 <= q_plus <= 1
  double nu;      // depolarizing strength, 0 <= nu <= 1

  DiscriminationProblem(double theta_, double q_plus_, double nu_)
      : theta(theta_), q_plus(q_plus_), nu(nu_) {
    if (!(theta > 0.0 && theta < kPi / 4.0))
      throw std::invalid_argument("theta must lie in (0, pi/4)");
    if (!(q_plus >= 0.5 && q_plus <= 1.0))
      throw std::invalid_argument("q_plus must lie in [0.5, 1]");
    if (!(nu >= 0.0 && nu <= 1.0))
      throw std::invalid_argument("nu must lie in [0, 1]");
  }

  double q_minus() const { return 1.0 - q_plus; }
  double overlap() const { return std::cos(2.0 * theta); }  // c = <psi+|psi->

  DiscriminationProblem noiseless() const {
    return DiscriminationProblem(theta, q_plus, 0.0);
  }
};

/// An angle reduced to [0, pi/2) together with the outcome-label swap the
/// reduction implied.  The projective basis {phi, phi - pi/2} is invariant
/// under phi -> phi + pi, and invariant with labels exchanged under
/// phi -> phi + pi/2.
struct CanonicalAngle {
  double phi;    // in [0, pi/2)
  bool swapped;  // true iff Plus/Minus labels exchanged by the reduction
};

/// Reduce an arbitrary finite angle to the canonical representative of its
/// basis pair.  Throws on non-finite input.
CanonicalAngle canonicalize_angle(double raw);

/// Pr(outcome d | prepared state, measurement at canonical angle phi).
/// Equals 1/2 * (1 + (1-nu) * cos 2(phi -/+ theta)) for d = Plus.
double outcome_probability(const DiscriminationProblem& prob, Sign true_state,
                           double phi, Outcome d);

/// Marginal Pr(d | belief p, phi) = Pr(d|+,phi) p + Pr(d|-,phi) (1-p).
double outcome_marginal(const DiscriminationProblem& prob, double p,
                        double phi, Outcome d);

/// Posterior belief after observing outcome d at angle phi.
/// Throws std::domain_error if the outcome has zero probability
/// (impossible evidence; only reachable at nu = 0 with an aligned basis).
double bayes_update(const DiscriminationProblem& prob, double p, double phi,
                    Outcome d);

/// Optimal single-copy measurement angle at belief p:
///   phi_Hel(p) = 1/2 * arccot((2p - 1) cot 2theta),
/// arccot taken with range (0, pi) so the result is continuous in p and
/// equals pi/4 at p = 1/2.  Independent of nu (depolarizing noise shrinks
/// the Bloch vectors without rotating them).
double helstrom_angle(const DiscriminationProblem& prob, double p);

/// Exact error probability of measuring one copy at helstrom_angle(p) and
/// guessing the likelier state: 1/2 * (1 - max(|2p-1|, |w(p)|)) with
/// |w(p)| = (1-nu) sqrt(sin^2 2theta + (2p-1)^2 cos^2 2theta).
/// Reduces to (1 - sqrt(1 - 4 p (1-p) c^2)) / 2 at nu = 0.
double single_copy_error(const DiscriminationProblem& prob, double p);

}  // namespace qsd
