#pragma once

// Direct semantic decision for formulas of probability depth at most one
// without justification terms: guess the truth values of the probability
// literals, then ask whether some distribution over the valuations of the
// probed propositions realises the guess. Feasibility goes through
// Fourier-Motzkin only, independently of the simplex used by the tableau.

#include <optional>
#include <vector>

#include "ppj/linarith.hpp"
#include "ppj/syntax.hpp"

namespace ppj::oracle {

struct Guess {
  /// Probability literals of the input with the truth value chosen for each.
  std::vector<std::pair<Formula, bool>> literals;
  /// One variable per valuation of `props` (bit j of the index set means
  /// props[j] is true).
  std::vector<std::string> props;
  lin::LinearSystem system;
};

struct OracleResult {
  bool sat = false;
  std::optional<Guess> guess;  // the feasible guess behind a Sat answer
};

bool in_fragment(const Formula& a);

/// Throws ContractError outside the fragment.
OracleResult oracle_decide(const Formula& a);

}  // namespace ppj::oracle
