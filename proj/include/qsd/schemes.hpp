#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "qsd/discrimination.hpp"
#include "qsd/policy_table.hpp"

// The four local measurement policies behind one abstraction, plus the
// closed-form pure-state costs used as oracles for the exact evaluator.

namespace qsd {

enum class SchemeKind {
  Unbiased,         // fixed single-copy Helstrom angle at the prior
  FullyBiased,      // fixed angle theta (aligned with psi_plus)
  LocallyOptimal,   // Helstrom angle at the running posterior
  GloballyOptimal,  // backward-induction policy table lookup
};

/// CLI-facing names: unbiased, fully-biased, locally-optimal,
/// globally-optimal.
std::string scheme_name(SchemeKind kind);

struct SchemeSpec {
  SchemeKind kind;
  int horizon;  // N, total copies
  std::shared_ptr<const PolicyTable> table;  // required iff GloballyOptimal

  SchemeSpec(SchemeKind kind_, int horizon_,
             std::shared_ptr<const PolicyTable> table_ = nullptr)
      : kind(kind_), horizon(horizon_), table(std::move(table_)) {
    if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (kind == SchemeKind::GloballyOptimal) {
      if (!table)
        throw std::invalid_argument("globally-optimal scheme needs a table");
      if (table->horizon != horizon)
        throw std::invalid_argument("table row count must equal horizon");
    } else if (table) {
      throw std::invalid_argument("only the globally-optimal scheme carries "
                                  "a table");
    }
  }
};

/// Final guess.  was_tie is set iff the posterior is exactly 1/2, in which
/// case the caller resolves by fair coin (Monte Carlo) or cost 1/2 (exact
/// evaluation); guess defaults to Plus on a tie.
struct Decision {
  Sign guess;
  bool was_tie;
};

Decision decide(double p_final);

/// The scheme's prescribed measurement angle for copy n (1-based) at the
/// current belief p.
double angle_for(const SchemeSpec& spec, const DiscriminationProblem& prob,
                 int n, double p);

/// Majority-vote cost of repeating the single-copy Helstrom measurement:
/// binomial tail over copies with per-copy error single_copy_error(q_plus),
/// with the even-N rule C_N = C_{N-1}.  Valid for mixed states.
double cost_unbiased_closed(const DiscriminationProblem& prob, int n);

/// Unanimity-vote cost q_plus * c^(2n).  Pure states only (nu = 0); the
/// mixed-state fully-biased cost has no closed form and comes from the
/// exact evaluator.
double cost_fully_biased_pure(const DiscriminationProblem& prob, int n);

/// Locally-optimal adaptive cost (1 - sqrt(1 - 4 q+ q- c^(2n))) / 2, which
/// for pure states equals the collective n-copy Helstrom bound.
double cost_local_pure(const DiscriminationProblem& prob, int n);

}  // namespace qsd
