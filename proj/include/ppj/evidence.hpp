#pragma once

// Justification constraints. A branch asserting `w T u:B` and `w F t:A`
// is consistent iff A is outside evid(t) for the least evidence function
// generated by the positive assertions, the axiom schemata (every constant
// justifies every axiom instance, and !^n c justifies the corresponding
// chain), and closure under application. Evidence sets are infinite, so
// they are described by schemas: formulas with formula, term and rational
// metavariables plus linear side conditions on the rational ones.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ppj/linarith.hpp"
#include "ppj/syntax.hpp"

namespace ppj::ev {

using MetaId = std::uint32_t;

/// Affine expression `constant + sum coef * meta` at a probability position.
struct RatExpr {
  Rational constant;
  std::map<MetaId, Rational> coefficients;

  static RatExpr of(Rational value) { return RatExpr{std::move(value), {}}; }
  static RatExpr meta(MetaId id) { return RatExpr{Rational(0), {{id, Rational(1)}}}; }

  [[nodiscard]] bool is_constant() const { return coefficients.empty(); }
  friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
  friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
  friend bool operator==(const RatExpr& a, const RatExpr& b) = default;
};

class STerm {
 public:
  enum class Kind : std::uint8_t { Const, Var, App, Bang, Meta };

  static STerm ground(const Term& t);
  static STerm meta(MetaId id);
  static STerm app(STerm left, STerm right);
  static STerm bang(STerm inner);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] MetaId id() const;
  [[nodiscard]] const STerm& left() const;
  [[nodiscard]] const STerm& right() const;
  [[nodiscard]] const STerm& inner() const;

 private:
  struct Node;
  explicit STerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

class SFormula {
 public:
  enum class Kind : std::uint8_t { Prop, Not, And, Just, PGeq, Meta };

  static SFormula ground(const Formula& a);
  static SFormula meta(MetaId id);
  static SFormula prop(std::string name);
  static SFormula negation(SFormula body);
  static SFormula conjunction(SFormula left, SFormula right);
  static SFormula just(STerm term, SFormula body);
  static SFormula pgeq(RatExpr threshold, SFormula body);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] MetaId id() const;
  [[nodiscard]] const SFormula& body() const;
  [[nodiscard]] const SFormula& left() const;
  [[nodiscard]] const SFormula& right() const;
  [[nodiscard]] const STerm& term() const;
  [[nodiscard]] const RatExpr& threshold() const;

  /// Converts back to a formula when no metavariable remains and every
  /// threshold is a constant in [0,1].
  [[nodiscard]] std::optional<Formula> to_formula() const;

 private:
  struct Node;
  explicit SFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

SFormula s_implies(const SFormula& a, const SFormula& b);
SFormula s_or(const SFormula& a, const SFormula& b);

struct SchemaFormula {
  SFormula skeleton;
  /// Linear constraints over rational metavariables.
  std::vector<lin::LinearConstraint> conditions;
  std::string label;
};

std::string to_string(const STerm& t);
std::string to_string(const SFormula& a);
std::string to_string(const SchemaFormula& s);

/// Source of fresh metavariable ids.
class MetaSupply {
 public:
  MetaId fresh() { return next_++; }

 private:
  MetaId next_ = 0;
};

/// Copy of `s` with every metavariable replaced by a fresh one.
SchemaFormula rename_apart(const SchemaFormula& s, MetaSupply& supply);

struct Substitution {
  std::map<MetaId, SFormula> formula_map;
  std::map<MetaId, STerm> term_map;
  std::vector<lin::LinearConstraint> rational_eqs;

  [[nodiscard]] SFormula apply(const SFormula& a) const;
  [[nodiscard]] STerm apply(const STerm& t) const;
};

/// Most general unifier. Structural clashes and occurs-check failures yield
/// nullopt; rational positions never clash but add an equation to
/// `rational_eqs`. Metavariables of `a` and `b` must be disjoint.
std::optional<Substitution> unify(const SFormula& a, const SFormula& b);

/// Continues unification from an existing substitution.
std::optional<Substitution> unify(const SFormula& a, const SFormula& b, Substitution start);

/// Feasibility of a set of linear conditions over rational metavariables
/// (every metavariable is taken nonnegative).
bool conditions_feasible(const std::vector<lin::LinearConstraint>& conditions);
std::optional<std::map<MetaId, Rational>> solve_conditions(
    const std::vector<lin::LinearConstraint>& conditions);

/// The fixed schema base: CL1-CL6, PI, WE, LE, DIS (split at r+s = 1), UN
/// and the application axiom. Metavariable ids are fixed; rename before use.
const std::vector<SchemaFormula>& axiom_schemas();

struct EvidenceBase {
  std::vector<std::pair<Term, Formula>> positives;
  std::vector<std::pair<Term, Formula>> negatives;
};

/// Evaluates minimal evidence against one base, memoising per term.
class EvidenceOracle {
 public:
  explicit EvidenceOracle(const EvidenceBase& base) : base_(base) {}

  /// Finite schematic description of evid(t).
  const std::vector<SchemaFormula>& schemas(const Term& t);

  struct Match {
    SchemaFormula schema;
    Substitution substitution;
    std::map<MetaId, Rational> rational_values;
  };
  /// A schema of evid(t) matching `query`, with feasible conditions.
  std::optional<Match> find(const Term& t, const Formula& query);
  bool member(const Term& t, const Formula& query) { return find(t, query).has_value(); }

 private:
  std::vector<SchemaFormula> compute(const Term& t);

  const EvidenceBase& base_;
  MetaSupply supply_;
  std::unordered_map<Term, std::vector<SchemaFormula>> cache_;
};

std::vector<SchemaFormula> evid_schemas(const Term& t, const EvidenceBase& base);
bool member(const Term& t, const Formula& query, const EvidenceBase& base);

struct JustificationCheck {
  bool consistent = true;
  std::optional<std::pair<Term, Formula>> witness;
};

/// Inconsistent iff some negative assertion (t, A) has A in evid(t).
JustificationCheck check_branch_justifications(const EvidenceBase& base);

/// `!^(n-1) c : ... : !c : c : a`; n = 0 gives `a`.
Formula ane_chain(std::size_t n, const Term& c, const Formula& a);

}  // namespace ppj::ev
