#pragma once

// Prefixed tableau for PPJ. Phase one saturates each world under the
// propositional rules and spawns one child world per atom over the probed
// formulas (rule PROB); phase two marks worlds and PROB applications
// satisfiable bottom-up, using exact linear feasibility for the measure
// constraints and minimal evidence for the justification constraints.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ppj/evidence.hpp"
#include "ppj/linarith.hpp"
#include "ppj/syntax.hpp"

namespace ppj::tab {

/// Path from the root world; the root is `w`, child i of `w.3` is `w.3.i`.
struct WorldId {
  std::vector<std::uint32_t> path;

  [[nodiscard]] WorldId child(std::uint32_t index) const;
  [[nodiscard]] std::string str() const;
  static std::optional<WorldId> parse(const std::string& text);

  friend bool operator==(const WorldId&, const WorldId&) = default;
  friend auto operator<=>(const WorldId&, const WorldId&) = default;
};

enum class Sign : std::uint8_t { T, F };

struct PrefixedNode {
  WorldId world;
  Sign sign = Sign::T;
  Formula formula;
};

std::string to_string(const PrefixedNode& n);

struct ProbLiteral {
  Sign sign = Sign::T;
  Formula literal;  // the P>=s B formula itself
  [[nodiscard]] const Rational& threshold() const { return literal.threshold(); }
  [[nodiscard]] const Formula& body() const { return literal.body(); }
};

struct Branch {
  WorldId world;
  std::vector<PrefixedNode> nodes;
  bool closed = false;

  [[nodiscard]] bool contains(Sign sign, const Formula& f) const;
  /// Distinct probability literals in node order.
  [[nodiscard]] std::vector<ProbLiteral> probability_literals() const;
  /// Justification assertions of the branch.
  [[nodiscard]] ev::EvidenceBase evidence() const;
  /// No rule applies: closed, or open without probability literals.
  [[nodiscard]] bool complete() const;
};

/// Saturates under the propositional rules; t:A and P>=s A are atomic.
/// Returns the maximal branches (closed ones included, flagged) in a fixed
/// order: the left conjunct's branch of an F-conjunction comes first.
std::vector<Branch> expand_propositional(const Branch& b);

struct ProbApplication {
  WorldId parent;
  std::vector<ProbLiteral> literals;
  /// Distinct bodies of the literals; children range over their atoms.
  std::vector<Formula> probed;

  [[nodiscard]] std::uint64_t child_count() const;
  [[nodiscard]] AtomStream children() const { return atoms_of(probed); }
  /// Zero-based index i names world `parent.(i+1)`.
  [[nodiscard]] WorldId child_world(std::uint64_t index) const;
  [[nodiscard]] Formula child_formula(std::uint64_t index) const;
};

/// Requires an open branch carrying at least one probability literal;
/// throws ContractError otherwise.
ProbApplication apply_prob_rule(const Branch& b);

enum class Verdict : std::uint8_t { Sat, Unsat };

struct MarkingResult {
  bool satisfiable = false;
  /// Weight per child index (zero-based), only for a satisfiable marking.
  std::map<std::uint64_t, Rational> weights;
  lin::LinearSystem system;
};

/// Marking system of `app`: one variable per child (x_i = 0 for unsat
/// children), total mass 1, and per literal T/F P>=s C the mass of the
/// children whose atom makes C true is >= s / < s. The weights returned
/// are a basic solution with minimal support found greedily.
MarkingResult mark_prob_application(const ProbApplication& app,
                                    const std::vector<Verdict>& child_verdicts);

struct ModelWorld {
  WorldId id;
  std::map<std::string, bool> valuation;
  /// Children with positive weight. An empty support stands for the point
  /// measure on the world itself (no probability constraints there).
  std::vector<std::pair<WorldId, Rational>> support;
  ev::EvidenceBase evidence;
  std::size_t probability_literals = 0;
};

struct SmallModel {
  std::vector<ModelWorld> worlds;  // worlds[0] is the root

  [[nodiscard]] const ModelWorld* find(const WorldId& id) const;
};

std::string to_json(const SmallModel& m);
/// Throws std::invalid_argument on malformed input.
SmallModel model_from_json(const std::string& text);

struct VerifyResult {
  bool holds = true;
  std::optional<WorldId> at;
  std::optional<Formula> sub;
};

/// Evaluates `a` at the root by direct recursion over the finite model.
/// Throws ContractError when a support does not sum to 1, has a negative
/// weight or names a missing world.
VerifyResult verify_model(const SmallModel& m, const Formula& a);

enum class SupportMode : std::uint8_t { Full, Bounded };

/// Observed feasible marking system, with the witness found by the solver
/// and the reduced witness that ends up in the model.
using MarkingObserver = std::function<void(const lin::LinearSystem& system,
                                           const lin::Witness& found,
                                           const lin::Witness& reduced)>;

struct DecideOptions {
  SupportMode support_mode = SupportMode::Full;
  std::optional<std::chrono::milliseconds> timeout;
  std::optional<std::uint64_t> step_budget;
  bool trace = false;
  MarkingObserver on_marking;
};

enum class Outcome : std::uint8_t { Sat, Unsat, Aborted };

const char* to_string(Outcome o);

struct Decision {
  Outcome outcome = Outcome::Aborted;
  std::optional<SmallModel> model;
  std::string trace;
  std::string abort_reason;
  std::uint64_t steps = 0;
};

/// Decides satisfiability of `a` in measurable models.
Decision decide(const Formula& a, const DecideOptions& options = {});

struct WorldOutcome;

/// Marks one world whose tableau root is `w T a`; deeper worlds are
/// evaluated on demand and memoised per root formula.
class Engine {
 public:
  explicit Engine(DecideOptions options = {});
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  Verdict mark_world(const WorldId& w, const Formula& a);
  [[nodiscard]] std::uint64_t steps() const;

 private:
  friend Decision decide(const Formula& a, const DecideOptions& options);
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ppj::tab
