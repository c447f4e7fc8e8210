#include "qsd/simulator.hpp"

#include <cmath>

namespace qsd {

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Beliefs this close to 1/2 are treated as exact ties.  True-tie paths
// (equal counts under the unbiased scheme) accumulate only O(1e-15) of
// rounding residue, while the nearest genuinely non-tied posterior sits
// O(1e-2) away.
constexpr double kTieBand = 1e-12;

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial_index)
    : base_(mix64(seed + kGamma * (trial_index + 1))) {}

double RandomStream::next() {
  const std::uint64_t bits = mix64(base_ + kGamma * ++counter_);
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

CanonicalAngle apply_noise_flip(double phi, double nu, double random_draw) {
  const double quarter = 0.25 * nu;
  double raw;
  if (random_draw < 1.0 - 3.0 * quarter) {
    raw = phi;  // identity
  } else if (random_draw < 1.0 - 2.0 * quarter) {
    raw = kHalfPi - phi;  // bit flip
  } else if (random_draw < 1.0 - quarter) {
    raw = -phi;  // phase flip
  } else {
    raw = kHalfPi + phi;  // bit-phase flip
  }
  return canonicalize_angle(raw);
}

TrialRecord run_trial(const DiscriminationProblem& prob,
                      const SchemeSpec& spec, int horizon,
                      RandomStream& stream) {
  const DiscriminationProblem pure = prob.noiseless();
  TrialRecord record;
  record.true_state =
      stream.next() < prob.q_plus ? Sign::Plus : Sign::Minus;
  record.outcomes.reserve(horizon);

  double belief = prob.q_plus;
  for (int n = 1; n <= horizon; ++n) {
    const double nominal = angle_for(spec, prob, n, belief);
    const CanonicalAngle physical =
        apply_noise_flip(nominal, prob.nu, stream.next());
    // The states entering the apparatus are pure; all of the noise lives in
    // the flips.
    const double click_plus = outcome_probability(
        pure, record.true_state, physical.phi, Outcome::Plus);
    Outcome observed =
        stream.next() < click_plus ? Outcome::Plus : Outcome::Minus;
    if (physical.swapped) observed = flipped(observed);
    // The processor knows only the nominal angle and the noise model.
    belief = bayes_update(prob, belief, nominal, observed);
    record.outcomes.push_back(observed);
  }

  if (std::abs(belief - 0.5) <= kTieBand) belief = 0.5;
  record.final_belief = belief;
  record.decision = decide(belief);
  if (record.decision.was_tie)
    record.decision.guess = stream.next() < 0.5 ? Sign::Plus : Sign::Minus;
  record.correct = record.decision.guess == record.true_state;
  return record;
}

BatchStats run_batch(const DiscriminationProblem& prob, const SchemeSpec& spec,
                     int horizon, std::int64_t trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  std::int64_t errors = 0;
  for (std::int64_t t = 0; t < trials; ++t) {
    RandomStream stream(seed, static_cast<std::uint64_t>(t));
    if (!run_trial(prob, spec, horizon, stream).correct) ++errors;
  }
  const double rate = static_cast<double>(errors) / trials;
  return {trials, errors, rate, std::sqrt(rate * (1.0 - rate) / trials)};
}

}  // namespace qsd
