#pragma once

// Exact rational feasibility for linear systems with strict and non-strict
// relations. Two independent back-ends: a dense simplex (Bland's rule, strict
// relations through one shared slack delta that is maximised) and
// Fourier-Motzkin elimination with native strictness tracking.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ppj/errors.hpp"
#include "ppj/rational.hpp"

namespace ppj::lin {

using VarId = std::uint32_t;

enum class Relation : std::uint8_t { Eq, Le, Lt, Ge, Gt };

const char* to_string(Relation rel);
bool is_strict(Relation rel);

struct LinearConstraint {
  std::map<VarId, Rational> coefficients;
  Relation relation = Relation::Eq;
  Rational bound;

  /// Value of the left-hand side under `values` (absent variables are 0).
  [[nodiscard]] Rational evaluate(const std::map<VarId, Rational>& values) const;
  [[nodiscard]] bool holds(const std::map<VarId, Rational>& values) const;
};

struct LinearSystem {
  std::vector<VarId> variables;
  std::vector<LinearConstraint> constraints;
  bool nonneg = true;

  VarId add_variable();
  void add(LinearConstraint c);
  void add(std::map<VarId, Rational> coefficients, Relation relation, Rational bound);

  /// Throws ContractError if a constraint mentions an undeclared variable or
  /// a variable is declared twice.
  void validate() const;
};

struct Witness {
  std::map<VarId, Rational> assignment;

  [[nodiscard]] const Rational& at(VarId v) const;
  [[nodiscard]] std::size_t support_size() const;
  [[nodiscard]] std::vector<VarId> support() const;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<Witness> witness;
  explicit operator bool() const { return feasible; }
};

/// Substitution check: every constraint holds and, if `nonneg`, every value is >= 0.
bool satisfies(const LinearSystem& sys, const Witness& w);

/// Exact simplex decision; a feasible result always carries a vertex witness.
FeasibilityResult feasible(const LinearSystem& sys);

/// Witness of `sys` with at most `constraints.size()` positive entries whose
/// support is contained in the support of `w`. Requires `sys.nonneg` and
/// `satisfies(sys, w)`; throws ContractError otherwise.
Witness reduce_support(const LinearSystem& sys, const Witness& w);

/// ceil(2 * (r*l + r*ceil(log2 r) + 1)), with log2 0 taken as 0.
std::size_t size_bound(std::size_t r, std::size_t l);

/// Fourier-Motzkin elimination; verdict only.
bool fm_feasible(const LinearSystem& sys);

/// Each constraint multiplied by the LCM of its denominators.
LinearSystem scale_to_integers(const LinearSystem& sys);

/// Largest bit length among the (integer) coefficients and bounds of `sys`.
std::size_t max_coefficient_size(const LinearSystem& sys);

std::string to_string(const LinearSystem& sys);

}  // namespace ppj::lin
