#include "ppj/syntax.hpp"

#include <algorithm>
#include <unordered_set>

namespace ppj {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

// ---------------------------------------------------------------- Term

struct Term::Node {
  Kind kind;
  std::string name;
  std::optional<Term> a;
  std::optional<Term> b;
  std::size_t hash = 0;
  std::size_t size = 1;
};

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Const;
  n->hash = mix(std::hash<std::string>{}(name), 11);
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->hash = mix(std::hash<std::string>{}(name), 13);
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::app(Term left, Term right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->hash = mix(mix(17, left.hash()), right.hash());
  n->size = 1 + left.size() + right.size();
  n->a = std::move(left);
  n->b = std::move(right);
  return Term(std::move(n));
}

Term Term::bang(Term inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Bang;
  n->hash = mix(19, inner.hash());
  n->size = 1 + inner.size();
  n->a = std::move(inner);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::left() const { return *node_->a; }
const Term& Term::right() const { return *node_->b; }
const Term& Term::inner() const { return *node_->a; }
std::size_t Term::hash() const { return node_->hash; }
std::size_t Term::size() const { return node_->size; }

int compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Term::Kind::Const:
    case Term::Kind::Var:
      return a.name().compare(b.name()) < 0 ? -1 : (a.name() == b.name() ? 0 : 1);
    case Term::Kind::App:
      if (int c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
    case Term::Kind::Bang:
      return compare(a.inner(), b.inner());
  }
  return 0;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

Term bang_power(std::size_t n, const Term& t) {
  Term out = t;
  for (std::size_t i = 0; i < n; ++i) out = Term::bang(out);
  return out;
}

std::optional<std::size_t> bang_tower_height(const Term& t) {
  std::size_t n = 0;
  const Term* cur = &t;
  while (cur->is_bang()) {
    cur = &cur->inner();
    ++n;
  }
  if (!cur->is_const()) return std::nullopt;
  return n;
}

// ---------------------------------------------------------------- Formula

struct Formula::Node {
  Kind kind;
  std::string name;
  std::optional<Formula> a;
  std::optional<Formula> b;
  std::optional<Term> term;
  Rational threshold;
  std::size_t hash = 0;
};

Formula Formula::prop(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->hash = mix(std::hash<std::string>{}(name), 23);
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::negation(Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->hash = mix(29, body.hash());
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula left, Formula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->hash = mix(mix(31, left.hash()), right.hash());
  n->a = std::move(left);
  n->b = std::move(right);
  return Formula(std::move(n));
}

Formula Formula::just(Term term, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Just;
  n->hash = mix(mix(37, term.hash()), body.hash());
  n->term = std::move(term);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula Formula::pgeq(Rational threshold, Formula body) {
  if (threshold < Rational(0) || threshold > Rational(1)) {
    throw std::out_of_range("probability threshold " + threshold.str() + " outside [0,1]");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::PGeq;
  n->hash = mix(mix(41, threshold.hash()), body.hash());
  n->threshold = std::move(threshold);
  n->a = std::move(body);
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const Formula& Formula::body() const { return *node_->a; }
const Formula& Formula::left() const { return *node_->a; }
const Formula& Formula::right() const { return *node_->b; }
const Term& Formula::term() const { return *node_->term; }
const Rational& Formula::threshold() const { return node_->threshold; }
std::size_t Formula::hash() const { return node_->hash; }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  if (a.kind() != b.kind()) return a.kind() < b.kind() ? -1 : 1;
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return a.name() < b.name() ? -1 : (a.name() == b.name() ? 0 : 1);
    case Formula::Kind::Not:
      return compare(a.body(), b.body());
    case Formula::Kind::And:
      if (int c = compare(a.left(), b.left()); c != 0) return c;
      return compare(a.right(), b.right());
    case Formula::Kind::Just:
      if (int c = compare(a.term(), b.term()); c != 0) return c;
      return compare(a.body(), b.body());
    case Formula::Kind::PGeq:
      if (a.threshold() != b.threshold()) return a.threshold() < b.threshold() ? -1 : 1;
      return compare(a.body(), b.body());
  }
  return 0;
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash()) return false;
  return compare(a, b) == 0;
}

Formula implies(const Formula& a, const Formula& b) {
  return Formula::negation(Formula::conjunction(a, Formula::negation(b)));
}

Formula disjunction(const Formula& a, const Formula& b) {
  return Formula::negation(Formula::conjunction(Formula::negation(a), Formula::negation(b)));
}

Formula p_less(const Rational& s, const Formula& a) {
  return Formula::negation(Formula::pgeq(s, a));
}

Formula p_at_most(const Rational& s, const Formula& a) {
  return Formula::pgeq(Rational(1) - s, Formula::negation(a));
}

Formula p_greater(const Rational& s, const Formula& a) {
  return Formula::negation(p_at_most(s, a));
}

Formula p_exactly(const Rational& s, const Formula& a) {
  return Formula::conjunction(Formula::pgeq(s, a), p_at_most(s, a));
}

Formula conjunction_of(const std::vector<Formula>& parts) {
  if (parts.empty()) throw std::invalid_argument("conjunction_of: empty list");
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conjunction(out, parts[i]);
  return out;
}

// ---------------------------------------------------------------- measures

namespace {

void collect_post_order(const Formula& a, std::vector<Formula>& out,
                        std::unordered_set<Formula>& seen) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Just:
    case Formula::Kind::PGeq:
      collect_post_order(a.body(), out, seen);
      break;
    case Formula::Kind::And:
      collect_post_order(a.left(), out, seen);
      collect_post_order(a.right(), out, seen);
      break;
  }
  if (seen.insert(a).second) out.push_back(a);
}

void collect_props(const Formula& a, std::set<std::string>& out) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      out.insert(a.name());
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Just:
    case Formula::Kind::PGeq:
      collect_props(a.body(), out);
      break;
    case Formula::Kind::And:
      collect_props(a.left(), out);
      collect_props(a.right(), out);
      break;
  }
}

}  // namespace

std::vector<Formula> subformulas(const Formula& a) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  collect_post_order(a, out, seen);
  return out;
}

std::size_t size(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return 1;
    case Formula::Kind::Not:
      return 1 + size(a.body());
    case Formula::Kind::And:
      return 1 + size(a.left()) + size(a.right());
    case Formula::Kind::Just:
      return 1 + a.term().size() + size(a.body());
    case Formula::Kind::PGeq:
      return 2 + size(a.body());
  }
  return 0;
}

std::size_t norm(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return 0;
    case Formula::Kind::Not:
    case Formula::Kind::Just:
      return norm(a.body());
    case Formula::Kind::And:
      return std::max(norm(a.left()), norm(a.right()));
    case Formula::Kind::PGeq:
      return std::max(a.threshold().bit_size(), norm(a.body()));
  }
  return 0;
}

std::size_t prob_depth(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return 0;
    case Formula::Kind::Not:
    case Formula::Kind::Just:
      return prob_depth(a.body());
    case Formula::Kind::And:
      return std::max(prob_depth(a.left()), prob_depth(a.right()));
    case Formula::Kind::PGeq:
      return 1 + prob_depth(a.body());
  }
  return 0;
}

std::set<std::string> props_of(const Formula& a) {
  std::set<std::string> out;
  collect_props(a, out);
  return out;
}

bool contains_justification(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::Prop:
      return false;
    case Formula::Kind::Just:
      return true;
    case Formula::Kind::Not:
    case Formula::Kind::PGeq:
      return contains_justification(a.body());
    case Formula::Kind::And:
      return contains_justification(a.left()) || contains_justification(a.right());
  }
  return false;
}

// ---------------------------------------------------------------- atoms

Atom::Atom(std::shared_ptr<const std::vector<Formula>> formulas, std::vector<bool> positive)
    : formulas_(std::move(formulas)), positive_(std::move(positive)) {
  if (formulas_->size() != positive_.size()) {
    throw std::invalid_argument("atom: sign count does not match formula count");
  }
}

std::optional<bool> Atom::sign_of(const Formula& f) const {
  for (std::size_t i = 0; i < formulas_->size(); ++i) {
    if ((*formulas_)[i] == f) return positive_[i];
  }
  return std::nullopt;
}

Formula Atom::conjunction() const {
  std::vector<Formula> parts;
  parts.reserve(formulas_->size());
  for (std::size_t i = 0; i < formulas_->size(); ++i) {
    const Formula& f = (*formulas_)[i];
    parts.push_back(positive_[i] ? f : Formula::negation(f));
  }
  return conjunction_of(parts);
}

bool operator==(const Atom& a, const Atom& b) {
  if (a.formulas_->size() != b.formulas_->size()) return false;
  for (std::size_t i = 0; i < a.formulas_->size(); ++i) {
    auto other = b.sign_of((*a.formulas_)[i]);
    if (!other || *other != a.positive_[i]) return false;
  }
  return true;
}

AtomStream::AtomStream(std::vector<Formula> formulas) {
  if (formulas.empty()) throw std::invalid_argument("atoms_of: empty formula list");
  if (formulas.size() > 62) throw std::invalid_argument("atoms_of: too many formulas");
  std::unordered_set<Formula> seen;
  for (const auto& f : formulas) {
    if (!seen.insert(f).second) throw std::invalid_argument("atoms_of: duplicate formula");
  }
  formulas_ = std::make_shared<const std::vector<Formula>>(std::move(formulas));
}

Atom AtomStream::at(std::uint64_t index) const {
  const std::size_t k = formulas_->size();
  std::vector<bool> positive(k);
  for (std::size_t j = 0; j < k; ++j) {
    positive[j] = ((index >> (k - 1 - j)) & 1U) == 0;
  }
  return Atom(formulas_, std::move(positive));
}

std::optional<Atom> AtomStream::next() {
  if (cursor_ >= count()) return std::nullopt;
  return at(cursor_++);
}

AtomStream atoms_of(std::vector<Formula> formulas) { return AtomStream(std::move(formulas)); }

// ---------------------------------------------------------------- sugar

SurfaceFormula SurfaceFormula::from_core(const Formula& a) {
  SurfaceFormula s;
  switch (a.kind()) {
    case Formula::Kind::Prop:
      s.kind = Kind::Prop;
      s.name = a.name();
      break;
    case Formula::Kind::Not:
      s.kind = Kind::Not;
      s.children.push_back(from_core(a.body()));
      break;
    case Formula::Kind::And:
      s.kind = Kind::And;
      s.children.push_back(from_core(a.left()));
      s.children.push_back(from_core(a.right()));
      break;
    case Formula::Kind::Just:
      s.kind = Kind::Just;
      s.term = a.term();
      s.children.push_back(from_core(a.body()));
      break;
    case Formula::Kind::PGeq:
      s.kind = Kind::PGeq;
      s.threshold = a.threshold();
      s.children.push_back(from_core(a.body()));
      break;
  }
  return s;
}

Formula expand_sugar(const SurfaceFormula& s) {
  using K = SurfaceFormula::Kind;
  switch (s.kind) {
    case K::Prop:
      return Formula::prop(s.name);
    case K::Not:
      return Formula::negation(expand_sugar(s.children.at(0)));
    case K::And:
      return Formula::conjunction(expand_sugar(s.children.at(0)), expand_sugar(s.children.at(1)));
    case K::Or:
      return disjunction(expand_sugar(s.children.at(0)), expand_sugar(s.children.at(1)));
    case K::Implies:
      return implies(expand_sugar(s.children.at(0)), expand_sugar(s.children.at(1)));
    case K::Just:
      return Formula::just(*s.term, expand_sugar(s.children.at(0)));
    default:
      break;
  }
  if (s.threshold < Rational(0) || s.threshold > Rational(1)) {
    throw RangeError("probability threshold " + s.threshold.str() + " outside [0,1]", s.pos);
  }
  Formula body = expand_sugar(s.children.at(0));
  switch (s.kind) {
    case K::PGeq:
      return Formula::pgeq(s.threshold, body);
    case K::PLess:
      return p_less(s.threshold, body);
    case K::PAtMost:
      return p_at_most(s.threshold, body);
    case K::PGreater:
      return p_greater(s.threshold, body);
    case K::PExactly:
      return p_exactly(s.threshold, body);
    default:
      break;
  }
  throw std::logic_error("expand_sugar: unhandled surface node");
}

}  // namespace ppj
