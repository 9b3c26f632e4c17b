#pragma once

// Random formulas and linear systems for property tests. Everything is
// driven by an explicit std::mt19937 so runs are reproducible.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "ppj/linarith.hpp"
#include "ppj/syntax.hpp"

namespace gen {

inline int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline const std::vector<ppj::Rational>& thresholds() {
  static const std::vector<ppj::Rational> t = {
      ppj::Rational(0),    ppj::Rational(1, 4), ppj::Rational(1, 3), ppj::Rational(1, 2),
      ppj::Rational(2, 3), ppj::Rational(3, 4), ppj::Rational(1)};
  return t;
}

inline ppj::Rational threshold(std::mt19937& rng) {
  const auto& t = thresholds();
  return t[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(t.size()) - 1))];
}

inline ppj::Formula connect(std::mt19937& rng, const ppj::Formula& a, const ppj::Formula& b) {
  switch (pick(rng, 0, 3)) {
    case 0:
    case 1: return ppj::Formula::conjunction(a, b);
    case 2: return ppj::disjunction(a, b);
    default: return ppj::implies(a, b);
  }
}

inline ppj::Formula maybe_negate(std::mt19937& rng, const ppj::Formula& a, int percent = 30) {
  return pick(rng, 0, 99) < percent ? ppj::Formula::negation(a) : a;
}

/// Propositional formula over `props` with at most `leaves` leaves.
inline ppj::Formula propositional(std::mt19937& rng, const std::vector<std::string>& props,
                                  int leaves) {
  if (leaves <= 1) {
    auto p = ppj::Formula::prop(props[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(props.size()) - 1))]);
    return maybe_negate(rng, p);
  }
  int left = pick(rng, 1, leaves - 1);
  return maybe_negate(rng, connect(rng, propositional(rng, props, left),
                                   propositional(rng, props, leaves - left)), 15);
}

/// One probability literal in any of the surface shapes (>=, <, <=, >).
inline ppj::Formula probability_literal(std::mt19937& rng, const ppj::Formula& body) {
  auto s = threshold(rng);
  switch (pick(rng, 0, 3)) {
    case 0: return ppj::Formula::pgeq(s, body);
    case 1: return ppj::p_less(s, body);
    case 2: return ppj::p_at_most(s, body);
    default: return ppj::p_greater(s, body);
  }
}

/// Folds the leaves into one formula with random connectives.
inline ppj::Formula combine(std::mt19937& rng, std::vector<ppj::Formula> leaves) {
  std::shuffle(leaves.begin(), leaves.end(), rng);
  while (leaves.size() > 1) {
    auto i = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(leaves.size()) - 2));
    leaves[i] = maybe_negate(rng, connect(rng, leaves[i], leaves[i + 1]), 15);
    leaves.erase(leaves.begin() + static_cast<std::ptrdiff_t>(i) + 1);
  }
  return leaves.front();
}

inline std::vector<std::string> prop_names(std::mt19937& rng, int max_props = 4) {
  static const std::vector<std::string> all = {"p", "q", "r", "s"};
  return {all.begin(), all.begin() + pick(rng, 1, max_props)};
}

/// Probability depth exactly one, no justification terms, at most 4 props
/// and 4 probability literals.
inline ppj::Formula depth_one(std::mt19937& rng) {
  auto props = prop_names(rng);
  std::vector<ppj::Formula> leaves;
  int literals = pick(rng, 1, 4);
  for (int i = 0; i < literals; ++i) {
    leaves.push_back(probability_literal(rng, propositional(rng, props, pick(rng, 1, 3))));
  }
  int outer = pick(rng, 0, 2);
  for (int i = 0; i < outer; ++i) leaves.push_back(propositional(rng, props, 1));
  return combine(rng, leaves);
}

/// Formula whose probability depth is at most `depth`, with up to 3
/// probability literals per level.
inline ppj::Formula nested(std::mt19937& rng, int depth) {
  static const std::vector<std::string> props = {"p", "q", "r"};
  if (depth == 0) return propositional(rng, props, pick(rng, 1, 2));
  std::vector<ppj::Formula> leaves;
  int literals = pick(rng, 1, 3);
  for (int i = 0; i < literals; ++i) {
    auto body = i == 0 ? nested(rng, depth - 1) : propositional(rng, props, pick(rng, 1, 2));
    leaves.push_back(probability_literal(rng, body));
  }
  if (pick(rng, 0, 1) == 1) leaves.push_back(propositional(rng, props, 1));
  return combine(rng, leaves);
}

/// Up to 6 variables and 6 constraints, integer coefficients in [-4,4].
inline ppj::lin::LinearSystem linear_system(std::mt19937& rng) {
  using namespace ppj::lin;
  LinearSystem sys;
  sys.nonneg = pick(rng, 0, 1) == 1;
  int vars = pick(rng, 1, 6);
  for (int v = 0; v < vars; ++v) sys.add_variable();
  int rows = pick(rng, 1, 6);
  static const Relation rels[] = {Relation::Eq, Relation::Le, Relation::Lt, Relation::Ge,
                                  Relation::Gt};
  for (int i = 0; i < rows; ++i) {
    std::map<VarId, ppj::Rational> coeffs;
    for (int v = 0; v < vars; ++v) {
      int c = pick(rng, -4, 4);
      if (c != 0 && pick(rng, 0, 3) != 0) coeffs[static_cast<VarId>(v)] = ppj::Rational(c);
    }
    sys.add(std::move(coeffs), rels[pick(rng, 0, 4)], ppj::Rational(pick(rng, -4, 4)));
  }
  return sys;
}

}  // namespace gen
