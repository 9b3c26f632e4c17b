#pragma once

// Core syntax of probabilistic justification logic: justification terms,
// formulas over the five primitive constructors, atoms over a formula list,
// and the syntactic measures used by the decision procedure.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppj/rational.hpp"

namespace ppj {

class Term {
 public:
  enum class Kind : std::uint8_t { Const, Var, App, Bang };

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term app(Term left, Term right);
  static Term bang(Term inner);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool is_const() const { return kind() == Kind::Const; }
  [[nodiscard]] bool is_var() const { return kind() == Kind::Var; }
  [[nodiscard]] bool is_app() const { return kind() == Kind::App; }
  [[nodiscard]] bool is_bang() const { return kind() == Kind::Bang; }

  /// Const / Var only.
  [[nodiscard]] const std::string& name() const;
  /// App only.
  [[nodiscard]] const Term& left() const;
  [[nodiscard]] const Term& right() const;
  /// Bang only.
  [[nodiscard]] const Term& inner() const;

  [[nodiscard]] std::size_t hash() const;
  /// Number of symbols (names, `.` and `!`).
  [[nodiscard]] std::size_t size() const;

  friend bool operator==(const Term& a, const Term& b);
  friend int compare(const Term& a, const Term& b);
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// `!^n t`, with `!^0 t = t`.
Term bang_power(std::size_t n, const Term& t);

/// If `t` is `!^n c` for a constant `c`, returns n.
std::optional<std::size_t> bang_tower_height(const Term& t);

class Formula {
 public:
  enum class Kind : std::uint8_t { Prop, Not, And, Just, PGeq };

  static Formula prop(std::string name);
  static Formula negation(Formula body);
  static Formula conjunction(Formula left, Formula right);
  static Formula just(Term term, Formula body);
  /// Throws std::out_of_range unless 0 <= threshold <= 1.
  static Formula pgeq(Rational threshold, Formula body);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] bool is_prop() const { return kind() == Kind::Prop; }
  [[nodiscard]] bool is_not() const { return kind() == Kind::Not; }
  [[nodiscard]] bool is_and() const { return kind() == Kind::And; }
  [[nodiscard]] bool is_just() const { return kind() == Kind::Just; }
  [[nodiscard]] bool is_pgeq() const { return kind() == Kind::PGeq; }

  [[nodiscard]] const std::string& name() const;    // Prop
  [[nodiscard]] const Formula& body() const;        // Not, Just, PGeq
  [[nodiscard]] const Formula& left() const;        // And
  [[nodiscard]] const Formula& right() const;       // And
  [[nodiscard]] const Term& term() const;           // Just
  [[nodiscard]] const Rational& threshold() const;  // PGeq

  [[nodiscard]] std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend int compare(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Derived connectives, always expanded into the core constructors.
Formula implies(const Formula& a, const Formula& b);      // ~(a & ~b)
Formula disjunction(const Formula& a, const Formula& b);  // ~(~a & ~b)
Formula p_less(const Rational& s, const Formula& a);       // ~P>=s a
Formula p_at_most(const Rational& s, const Formula& a);    // P>=1-s ~a
Formula p_greater(const Rational& s, const Formula& a);    // ~P>=1-s ~a
Formula p_exactly(const Rational& s, const Formula& a);    // P>=s a & P<=s a

/// Left-nested conjunction of a nonempty list.
Formula conjunction_of(const std::vector<Formula>& parts);

/// Distinct subformulas in post-order, first occurrence kept.
std::vector<Formula> subformulas(const Formula& a);

/// Number of symbols; a rational counts as one symbol, parentheses are not counted.
std::size_t size(const Formula& a);

/// Largest bit size of a probability threshold occurring in `a`; 0 if none.
std::size_t norm(const Formula& a);

/// Nesting depth of probability operators.
std::size_t prob_depth(const Formula& a);

/// Proposition names occurring in `a` (including under justifications).
std::set<std::string> props_of(const Formula& a);

bool contains_justification(const Formula& a);

/// A choice of polarity for every formula of a fixed list.
class Atom {
 public:
  Atom(std::shared_ptr<const std::vector<Formula>> formulas, std::vector<bool> positive);

  [[nodiscard]] const std::vector<Formula>& formulas() const { return *formulas_; }
  [[nodiscard]] const std::vector<bool>& signs() const { return positive_; }
  /// Polarity of `f`; nullopt when `f` is not in the list.
  [[nodiscard]] std::optional<bool> sign_of(const Formula& f) const;
  /// `±A1 & ... & ±Ak`.
  [[nodiscard]] Formula conjunction() const;

  /// Order-independent: equal iff both cover the same formulas with the same signs.
  friend bool operator==(const Atom& a, const Atom& b);

 private:
  std::shared_ptr<const std::vector<Formula>> formulas_;
  std::vector<bool> positive_;
};

/// Lazy enumeration of the 2^k atoms over k formulas. The first atom is all
/// positive; atom i negates formula j iff bit (k-1-j) of i is set.
class AtomStream {
 public:
  /// Throws std::invalid_argument on an empty list, duplicates, or k > 62.
  explicit AtomStream(std::vector<Formula> formulas);

  [[nodiscard]] std::uint64_t count() const { return std::uint64_t{1} << formulas_->size(); }
  [[nodiscard]] Atom at(std::uint64_t index) const;
  std::optional<Atom> next();
  [[nodiscard]] const std::vector<Formula>& formulas() const { return *formulas_; }

 private:
  std::shared_ptr<const std::vector<Formula>> formulas_;
  std::uint64_t cursor_ = 0;
};

AtomStream atoms_of(std::vector<Formula> formulas);

struct SourcePos {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Probability index outside [0,1].
class RangeError : public std::out_of_range {
 public:
  RangeError(const std::string& what, SourcePos pos) : std::out_of_range(what), pos_(pos) {}
  [[nodiscard]] const SourcePos& pos() const { return pos_; }

 private:
  SourcePos pos_;
};

/// Parse tree before abbreviation expansion.
struct SurfaceFormula {
  enum class Kind : std::uint8_t {
    Prop, Not, And, Or, Implies, Just,
    PGeq, PLess, PAtMost, PGreater, PExactly,
  };
  Kind kind = Kind::Prop;
  std::string name;                      // Prop
  std::optional<Term> term;              // Just
  Rational threshold;                    // probability operators
  std::vector<SurfaceFormula> children;  // 1 or 2 operands
  SourcePos pos;

  static SurfaceFormula from_core(const Formula& a);
};

/// Rewrites the abbreviations into the five core constructors.
/// Throws RangeError when a threshold lies outside [0,1].
Formula expand_sugar(const SurfaceFormula& surface);

}  // namespace ppj

template <>
struct std::hash<ppj::Formula> {
  std::size_t operator()(const ppj::Formula& f) const noexcept { return f.hash(); }
};

template <>
struct std::hash<ppj::Term> {
  std::size_t operator()(const ppj::Term& t) const noexcept { return t.hash(); }
};
