#pragma once

#include <cstdint>
#include <vector>

#include "qsd/schemes.hpp"

// Seeded Monte Carlo reproduction of the discrimination experiment.  Noise
// enters exactly as in the apparatus: the nominal measurement angle passes
// through a depolarizing flip subroutine before "reaching the wave plate",
// while the Bayesian processor only ever sees the nominal angle and the
// nu-aware outcome model.

namespace qsd {

/// Counter-based uniform stream: draw i of trial t under seed s is a pure
/// function of (s, t, i), so per-trial substreams are independent and
/// insensitive to scheduling order.  SplitMix64 finalizer underneath.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t trial_index);

  /// Uniform double in [0, 1).
  double next();

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

struct TrialRecord {
  Sign true_state;
  std::vector<Outcome> outcomes;  // as seen by the processor, length N
  double final_belief;
  Decision decision;
  bool correct;
};

struct BatchStats {
  std::int64_t trials;
  std::int64_t errors;
  double error_rate;  // errors / trials
  double std_err;     // sqrt(r (1 - r) / trials)
};

/// Depolarizing filter subroutine: maps the nominal angle to itself with
/// probability 1 - 3 nu / 4, or through a bit (phi -> pi/2 - phi), phase
/// (phi -> -phi), or bit-phase (phi -> pi/2 + phi) flip, each with
/// probability nu / 4, thresholds on the draw in that order.  The result is
/// canonicalized; the swap flag tells the caller how to relabel the click.
CanonicalAngle apply_noise_flip(double phi, double nu, double random_draw);

/// One full discrimination: sample the prepared state, run N adaptive
/// measurements through the flip subroutine (pure-state statistics at the
/// flipped angle, labels un-swapped back), Bayes-update on the nominal angle
/// with the nu-aware model, decide, resolving an exact tie by one fair draw.
TrialRecord run_trial(const DiscriminationProblem& prob,
                      const SchemeSpec& spec, int horizon,
                      RandomStream& stream);

/// Aggregate independent trials on per-trial substreams of the seed.
/// Identical (inputs, seed) give bit-identical results.
BatchStats run_batch(const DiscriminationProblem& prob, const SchemeSpec& spec,
                     int horizon, std::int64_t trials, std::uint64_t seed);

}  // namespace qsd
