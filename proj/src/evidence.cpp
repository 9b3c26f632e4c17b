#include "ppj/evidence.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "ppj/parser.hpp"

namespace ppj::ev {

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
  RatExpr out = a;
  out.constant += b.constant;
  for (const auto& [id, c] : b.coefficients) {
    Rational& slot = out.coefficients[id];
    slot += c;
    if (slot.is_zero()) out.coefficients.erase(id);
  }
  return out;
}

RatExpr operator-(const RatExpr& a, const RatExpr& b) {
  RatExpr neg = b;
  neg.constant = -neg.constant;
  for (auto& [id, c] : neg.coefficients) c = -c;
  return a + neg;
}

// ---------------------------------------------------------------- nodes

struct STerm::Node {
  Kind kind;
  std::string name;
  MetaId id = 0;
  std::optional<STerm> a;
  std::optional<STerm> b;
  bool ground = true;
};

STerm STerm::ground(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Const:
      return STerm(std::make_shared<const Node>(Node{Kind::Const, t.name(), 0, {}, {}, true}));
    case Term::Kind::Var:
      return STerm(std::make_shared<const Node>(Node{Kind::Var, t.name(), 0, {}, {}, true}));
    case Term::Kind::App:
      return app(ground(t.left()), ground(t.right()));
    case Term::Kind::Bang:
      return bang(ground(t.inner()));
  }
  throw std::logic_error("STerm::ground: unhandled term");
}

STerm STerm::meta(MetaId id) {
  return STerm(std::make_shared<const Node>(Node{Kind::Meta, {}, id, {}, {}, false}));
}

STerm STerm::app(STerm left, STerm right) {
  const bool g = left.node_->ground && right.node_->ground;
  return STerm(std::make_shared<const Node>(Node{Kind::App, {}, 0, std::move(left), std::move(right), g}));
}

STerm STerm::bang(STerm inner) {
  const bool g = inner.node_->ground;
  return STerm(std::make_shared<const Node>(Node{Kind::Bang, {}, 0, std::move(inner), {}, g}));
}

STerm::Kind STerm::kind() const { return node_->kind; }
const std::string& STerm::name() const { return node_->name; }
MetaId STerm::id() const { return node_->id; }
const STerm& STerm::left() const { return *node_->a; }
const STerm& STerm::right() const { return *node_->b; }
const STerm& STerm::inner() const { return *node_->a; }

struct SFormula::Node {
  Kind kind;
  std::string name;
  MetaId id = 0;
  std::optional<SFormula> a;
  std::optional<SFormula> b;
  std::optional<STerm> term;
  RatExpr threshold;
  bool ground = true;
};

namespace {

bool sterm_ground(const STerm& t) {
  switch (t.kind()) {
    case STerm::Kind::Meta: return false;
    case STerm::Kind::Const:
    case STerm::Kind::Var: return true;
    case STerm::Kind::App: return sterm_ground(t.left()) && sterm_ground(t.right());
    case STerm::Kind::Bang: return sterm_ground(t.inner());
  }
  return false;
}

}  // namespace

SFormula SFormula::ground(const Formula& a) {
  switch (a.kind()) {
    case Formula::Kind::Prop: return prop(a.name());
    case Formula::Kind::Not: return negation(ground(a.body()));
    case Formula::Kind::And: return conjunction(ground(a.left()), ground(a.right()));
    case Formula::Kind::Just: return just(STerm::ground(a.term()), ground(a.body()));
    case Formula::Kind::PGeq: return pgeq(RatExpr::of(a.threshold()), ground(a.body()));
  }
  throw std::logic_error("SFormula::ground: unhandled formula");
}

SFormula SFormula::meta(MetaId id) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Meta;
  n->id = id;
  n->ground = false;
  return SFormula(std::move(n));
}

SFormula SFormula::prop(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Prop;
  n->name = std::move(name);
  return SFormula(std::move(n));
}

SFormula SFormula::negation(SFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->ground = body.node_->ground;
  n->a = std::move(body);
  return SFormula(std::move(n));
}

SFormula SFormula::conjunction(SFormula left, SFormula right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->ground = left.node_->ground && right.node_->ground;
  n->a = std::move(left);
  n->b = std::move(right);
  return SFormula(std::move(n));
}

SFormula SFormula::just(STerm term, SFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Just;
  n->ground = body.node_->ground && sterm_ground(term);
  n->term = std::move(term);
  n->a = std::move(body);
  return SFormula(std::move(n));
}

SFormula SFormula::pgeq(RatExpr threshold, SFormula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::PGeq;
  n->ground = body.node_->ground && threshold.is_constant();
  n->threshold = std::move(threshold);
  n->a = std::move(body);
  return SFormula(std::move(n));
}

SFormula::Kind SFormula::kind() const { return node_->kind; }
const std::string& SFormula::name() const { return node_->name; }
MetaId SFormula::id() const { return node_->id; }
const SFormula& SFormula::body() const { return *node_->a; }
const SFormula& SFormula::left() const { return *node_->a; }
const SFormula& SFormula::right() const { return *node_->b; }
const STerm& SFormula::term() const { return *node_->term; }
const RatExpr& SFormula::threshold() const { return node_->threshold; }

namespace {

std::optional<Term> to_term(const STerm& t) {
  switch (t.kind()) {
    case STerm::Kind::Const: return Term::constant(t.name());
    case STerm::Kind::Var: return Term::variable(t.name());
    case STerm::Kind::Meta: return std::nullopt;
    case STerm::Kind::App: {
      auto l = to_term(t.left());
      auto r = to_term(t.right());
      if (!l || !r) return std::nullopt;
      return Term::app(*l, *r);
    }
    case STerm::Kind::Bang: {
      auto i = to_term(t.inner());
      if (!i) return std::nullopt;
      return Term::bang(*i);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Formula> SFormula::to_formula() const {
  switch (kind()) {
    case Kind::Meta: return std::nullopt;
    case Kind::Prop: return Formula::prop(name());
    case Kind::Not: {
      auto b = body().to_formula();
      if (!b) return std::nullopt;
      return Formula::negation(*b);
    }
    case Kind::And: {
      auto l = left().to_formula();
      auto r = right().to_formula();
      if (!l || !r) return std::nullopt;
      return Formula::conjunction(*l, *r);
    }
    case Kind::Just: {
      auto t = to_term(term());
      auto b = body().to_formula();
      if (!t || !b) return std::nullopt;
      return Formula::just(*t, *b);
    }
    case Kind::PGeq: {
      if (!threshold().is_constant()) return std::nullopt;
      const Rational& s = threshold().constant;
      if (s < Rational(0) || s > Rational(1)) return std::nullopt;
      auto b = body().to_formula();
      if (!b) return std::nullopt;
      return Formula::pgeq(s, *b);
    }
  }
  return std::nullopt;
}

SFormula s_implies(const SFormula& a, const SFormula& b) {
  return SFormula::negation(SFormula::conjunction(a, SFormula::negation(b)));
}

SFormula s_or(const SFormula& a, const SFormula& b) {
  return SFormula::negation(SFormula::conjunction(SFormula::negation(a), SFormula::negation(b)));
}

// ---------------------------------------------------------------- printing

namespace {

std::string rat_to_string(const RatExpr& e) {
  std::ostringstream os;
  bool first = true;
  if (!e.constant.is_zero() || e.coefficients.empty()) {
    os << e.constant;
    first = false;
  }
  for (const auto& [id, c] : e.coefficients) {
    if (c.sign() < 0) {
      os << (first ? "-" : "-");
    } else if (!first) {
      os << "+";
    }
    const Rational mag = c.sign() < 0 ? -c : c;
    if (mag != Rational(1)) os << mag << "*";
    os << "?r" << id;
    first = false;
  }
  return os.str();
}

void print_sterm(const STerm& t, std::ostream& os) {
  switch (t.kind()) {
    case STerm::Kind::Const:
    case STerm::Kind::Var: os << t.name(); break;
    case STerm::Kind::Meta: os << "?t" << t.id(); break;
    case STerm::Kind::App:
      print_sterm(t.left(), os);
      os << '.';
      if (t.right().kind() == STerm::Kind::App) os << '(';
      print_sterm(t.right(), os);
      if (t.right().kind() == STerm::Kind::App) os << ')';
      break;
    case STerm::Kind::Bang:
      os << '!';
      if (t.inner().kind() == STerm::Kind::App) os << '(';
      print_sterm(t.inner(), os);
      if (t.inner().kind() == STerm::Kind::App) os << ')';
      break;
  }
}

void print_sformula(const SFormula& a, std::ostream& os) {
  auto unary = [&os](const SFormula& b) {
    if (b.kind() == SFormula::Kind::And) os << '(';
    print_sformula(b, os);
    if (b.kind() == SFormula::Kind::And) os << ')';
  };
  switch (a.kind()) {
    case SFormula::Kind::Meta: os << "?A" << a.id(); break;
    case SFormula::Kind::Prop: os << a.name(); break;
    case SFormula::Kind::Not: os << '~'; unary(a.body()); break;
    case SFormula::Kind::And:
      print_sformula(a.left(), os);
      os << " & ";
      unary(a.right());
      break;
    case SFormula::Kind::Just:
      print_sterm(a.term(), os);
      os << ':';
      unary(a.body());
      break;
    case SFormula::Kind::PGeq:
      os << "P>=" << (a.threshold().is_constant() ? a.threshold().constant.str()
                                                  : "{" + rat_to_string(a.threshold()) + "}")
         << ' ';
      unary(a.body());
      break;
  }
}

std::string condition_to_string(const lin::LinearConstraint& c) {
  RatExpr lhs;
  lhs.coefficients = c.coefficients;
  return rat_to_string(lhs) + " " + lin::to_string(c.relation) + " " + c.bound.str();
}

}  // namespace

std::string to_string(const STerm& t) {
  std::ostringstream os;
  print_sterm(t, os);
  return os.str();
}

std::string to_string(const SFormula& a) {
  std::ostringstream os;
  print_sformula(a, os);
  return os.str();
}

std::string to_string(const SchemaFormula& s) {
  std::string out = to_string(s.skeleton);
  if (!s.conditions.empty()) {
    out += "  where ";
    for (std::size_t i = 0; i < s.conditions.size(); ++i) {
      if (i) out += ", ";
      out += condition_to_string(s.conditions[i]);
    }
  }
  return out;
}

// ---------------------------------------------------------------- renaming

namespace {

class Renamer {
 public:
  explicit Renamer(std::function<MetaId(MetaId)> map) : map_(std::move(map)) {}

  STerm term(const STerm& t) {
    switch (t.kind()) {
      case STerm::Kind::Meta: return STerm::meta(map_(t.id()));
      case STerm::Kind::App: return STerm::app(term(t.left()), term(t.right()));
      case STerm::Kind::Bang: return STerm::bang(term(t.inner()));
      default: return t;
    }
  }

  RatExpr rat(const RatExpr& e) {
    RatExpr out;
    out.constant = e.constant;
    for (const auto& [id, c] : e.coefficients) out.coefficients[map_(id)] = c;
    return out;
  }

  SFormula formula(const SFormula& a) {
    switch (a.kind()) {
      case SFormula::Kind::Meta: return SFormula::meta(map_(a.id()));
      case SFormula::Kind::Prop: return a;
      case SFormula::Kind::Not: return SFormula::negation(formula(a.body()));
      case SFormula::Kind::And:
        return SFormula::conjunction(formula(a.left()), formula(a.right()));
      case SFormula::Kind::Just: return SFormula::just(term(a.term()), formula(a.body()));
      case SFormula::Kind::PGeq: return SFormula::pgeq(rat(a.threshold()), formula(a.body()));
    }
    return a;
  }

  lin::LinearConstraint condition(const lin::LinearConstraint& c) {
    lin::LinearConstraint out{{}, c.relation, c.bound};
    for (const auto& [id, coef] : c.coefficients) out.coefficients[map_(id)] = coef;
    return out;
  }

 private:
  std::function<MetaId(MetaId)> map_;
};

}  // namespace

SchemaFormula rename_apart(const SchemaFormula& s, MetaSupply& supply) {
  std::map<MetaId, MetaId> fresh;
  Renamer r([&](MetaId id) {
    auto [it, inserted] = fresh.try_emplace(id, 0);
    if (inserted) it->second = supply.fresh();
    return it->second;
  });
  SchemaFormula out{r.formula(s.skeleton), {}, s.label};
  for (const auto& c : s.conditions) out.conditions.push_back(r.condition(c));
  return out;
}

namespace {

// Canonical text of a schema up to renaming of metavariables.
std::string canonical_key(const SchemaFormula& s) {
  std::map<MetaId, MetaId> order;
  Renamer r([&](MetaId id) {
    auto [it, inserted] = order.try_emplace(id, static_cast<MetaId>(order.size()));
    return it->second;
  });
  std::string key = to_string(r.formula(s.skeleton));
  std::vector<std::string> conds;
  for (const auto& c : s.conditions) conds.push_back(condition_to_string(r.condition(c)));
  std::sort(conds.begin(), conds.end());
  conds.erase(std::unique(conds.begin(), conds.end()), conds.end());
  for (const auto& c : conds) key += " | " + c;
  return key;
}

}  // namespace

// ---------------------------------------------------------------- unification

SFormula Substitution::apply(const SFormula& a) const {
  switch (a.kind()) {
    case SFormula::Kind::Meta: {
      auto it = formula_map.find(a.id());
      return it == formula_map.end() ? a : apply(it->second);
    }
    case SFormula::Kind::Prop: return a;
    case SFormula::Kind::Not: return SFormula::negation(apply(a.body()));
    case SFormula::Kind::And: return SFormula::conjunction(apply(a.left()), apply(a.right()));
    case SFormula::Kind::Just: return SFormula::just(apply(a.term()), apply(a.body()));
    case SFormula::Kind::PGeq: return SFormula::pgeq(a.threshold(), apply(a.body()));
  }
  return a;
}

STerm Substitution::apply(const STerm& t) const {
  switch (t.kind()) {
    case STerm::Kind::Meta: {
      auto it = term_map.find(t.id());
      return it == term_map.end() ? t : apply(it->second);
    }
    case STerm::Kind::App: return STerm::app(apply(t.left()), apply(t.right()));
    case STerm::Kind::Bang: return STerm::bang(apply(t.inner()));
    default: return t;
  }
}

namespace {

class Unifier {
 public:
  explicit Unifier(Substitution s) : s_(std::move(s)) {}

  bool formulas(const SFormula& x, const SFormula& y) {
    const SFormula a = walk(x);
    const SFormula b = walk(y);
    if (a.kind() == SFormula::Kind::Meta) {
      if (b.kind() == SFormula::Kind::Meta && b.id() == a.id()) return true;
      if (occurs(a.id(), b)) return false;
      s_.formula_map.emplace(a.id(), b);
      return true;
    }
    if (b.kind() == SFormula::Kind::Meta) return formulas(b, a);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case SFormula::Kind::Prop: return a.name() == b.name();
      case SFormula::Kind::Not: return formulas(a.body(), b.body());
      case SFormula::Kind::And: return formulas(a.left(), b.left()) && formulas(a.right(), b.right());
      case SFormula::Kind::Just: return terms(a.term(), b.term()) && formulas(a.body(), b.body());
      case SFormula::Kind::PGeq: {
        const RatExpr diff = a.threshold() - b.threshold();
        if (!(diff.is_constant() && diff.constant.is_zero())) {
          s_.rational_eqs.push_back(lin::LinearConstraint{diff.coefficients, lin::Relation::Eq,
                                                          -diff.constant});
        }
        return formulas(a.body(), b.body());
      }
      case SFormula::Kind::Meta: break;
    }
    return false;
  }

  bool terms(const STerm& x, const STerm& y) {
    const STerm a = walk(x);
    const STerm b = walk(y);
    if (a.kind() == STerm::Kind::Meta) {
      if (b.kind() == STerm::Kind::Meta && b.id() == a.id()) return true;
      if (occurs(a.id(), b)) return false;
      s_.term_map.emplace(a.id(), b);
      return true;
    }
    if (b.kind() == STerm::Kind::Meta) return terms(b, a);
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
      case STerm::Kind::Const:
      case STerm::Kind::Var: return a.name() == b.name();
      case STerm::Kind::App: return terms(a.left(), b.left()) && terms(a.right(), b.right());
      case STerm::Kind::Bang: return terms(a.inner(), b.inner());
      case STerm::Kind::Meta: break;
    }
    return false;
  }

  Substitution finish() && {
    // Resolve the triangular bindings into an idempotent substitution.
    Substitution out;
    out.rational_eqs = std::move(s_.rational_eqs);
    for (const auto& [id, f] : s_.formula_map) out.formula_map.emplace(id, s_.apply(f));
    for (const auto& [id, t] : s_.term_map) out.term_map.emplace(id, s_.apply(t));
    return out;
  }

 private:
  SFormula walk(SFormula a) const {
    while (a.kind() == SFormula::Kind::Meta) {
      auto it = s_.formula_map.find(a.id());
      if (it == s_.formula_map.end()) break;
      a = it->second;
    }
    return a;
  }

  STerm walk(STerm t) const {
    while (t.kind() == STerm::Kind::Meta) {
      auto it = s_.term_map.find(t.id());
      if (it == s_.term_map.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(MetaId id, const SFormula& x) const {
    const SFormula a = walk(x);
    switch (a.kind()) {
      case SFormula::Kind::Meta: return a.id() == id;
      case SFormula::Kind::Prop: return false;
      case SFormula::Kind::Not:
      case SFormula::Kind::PGeq: return occurs(id, a.body());
      case SFormula::Kind::And: return occurs(id, a.left()) || occurs(id, a.right());
      case SFormula::Kind::Just: return occurs(id, a.body());  // terms hold no formula metas
    }
    return false;
  }

  bool occurs(MetaId id, const STerm& x) const {
    const STerm t = walk(x);
    switch (t.kind()) {
      case STerm::Kind::Meta: return t.id() == id;
      case STerm::Kind::App: return occurs(id, t.left()) || occurs(id, t.right());
      case STerm::Kind::Bang: return occurs(id, t.inner());
      default: return false;
    }
  }

  Substitution s_;
};

}  // namespace

std::optional<Substitution> unify(const SFormula& a, const SFormula& b, Substitution start) {
  Unifier u(std::move(start));
  if (!u.formulas(a, b)) return std::nullopt;
  return std::move(u).finish();
}

std::optional<Substitution> unify(const SFormula& a, const SFormula& b) {
  return unify(a, b, Substitution{});
}

std::optional<std::map<MetaId, Rational>> solve_conditions(
    const std::vector<lin::LinearConstraint>& conditions) {
  std::set<MetaId> metas;
  for (const auto& c : conditions) {
    if (c.coefficients.empty()) {
      if (!c.holds({})) return std::nullopt;
      continue;
    }
    for (const auto& [id, coef] : c.coefficients) metas.insert(id);
  }
  if (metas.empty()) return std::map<MetaId, Rational>{};
  lin::LinearSystem sys;
  sys.variables.assign(metas.begin(), metas.end());
  sys.nonneg = true;
  for (const auto& c : conditions) {
    if (!c.coefficients.empty()) sys.constraints.push_back(c);
  }
  auto result = lin::feasible(sys);
  if (!result) return std::nullopt;
  return result.witness->assignment;
}

bool conditions_feasible(const std::vector<lin::LinearConstraint>& conditions) {
  return solve_conditions(conditions).has_value();
}

// ---------------------------------------------------------------- schema base

namespace {

std::vector<SchemaFormula> build_axiom_schemas() {
  const MetaId kA = 0, kB = 1, kC = 2, kR = 3, kS = 4, kU = 5, kV = 6;
  const SFormula A = SFormula::meta(kA);
  const SFormula B = SFormula::meta(kB);
  const SFormula C = SFormula::meta(kC);
  const RatExpr r = RatExpr::meta(kR);
  const RatExpr s = RatExpr::meta(kS);
  const RatExpr one = RatExpr::of(Rational(1));
  const STerm u = STerm::meta(kU);
  const STerm v = STerm::meta(kV);
  using lin::Relation;
  auto not_ = [](const SFormula& x) { return SFormula::negation(x); };
  auto and_ = [](const SFormula& x, const SFormula& y) { return SFormula::conjunction(x, y); };
  auto p_geq = [](const RatExpr& e, const SFormula& x) { return SFormula::pgeq(e, x); };
  auto p_at_most = [&](const RatExpr& e, const SFormula& x) { return p_geq(one - e, not_(x)); };
  auto p_less = [&](const RatExpr& e, const SFormula& x) { return not_(p_geq(e, x)); };
  auto unit = [](MetaId m) {
    return std::vector<lin::LinearConstraint>{
        {{{m, Rational(1)}}, Relation::Ge, Rational(0)},
        {{{m, Rational(1)}}, Relation::Le, Rational(1)},
    };
  };
  auto rs = [&](lin::LinearConstraint extra) {
    auto c = unit(kR);
    auto cs = unit(kS);
    c.insert(c.end(), cs.begin(), cs.end());
    c.push_back(std::move(extra));
    return c;
  };
  const std::map<MetaId, Rational> r_plus_s{{kR, Rational(1)}, {kS, Rational(1)}};

  std::vector<SchemaFormula> base;
  base.push_back({s_implies(A, s_implies(B, A)), {}, "CL1"});
  base.push_back({s_implies(s_implies(A, s_implies(B, C)),
                            s_implies(s_implies(A, B), s_implies(A, C))),
                  {}, "CL2"});
  base.push_back({s_implies(s_implies(not_(A), not_(B)), s_implies(B, A)), {}, "CL3"});
  base.push_back({s_implies(and_(A, B), A), {}, "CL4"});
  base.push_back({s_implies(and_(A, B), B), {}, "CL5"});
  base.push_back({s_implies(A, s_implies(B, and_(A, B))), {}, "CL6"});
  base.push_back({p_geq(RatExpr::of(Rational(0)), A), {}, "PI"});
  base.push_back({s_implies(p_at_most(r, A), p_less(s, A)),
                  rs({{{kS, Rational(1)}, {kR, Rational(-1)}}, Relation::Gt, Rational(0)}),
                  "WE"});
  {
    auto c = unit(kS);
    base.push_back({s_implies(p_less(s, A), p_at_most(s, A)), c, "LE"});
  }
  const SFormula dis_premise = and_(and_(p_geq(r, A), p_geq(s, B)), p_geq(one, not_(and_(A, B))));
  base.push_back({s_implies(dis_premise, p_geq(r + s, s_or(A, B))),
                  rs({r_plus_s, Relation::Le, Rational(1)}), "DIS<="});
  base.push_back({s_implies(dis_premise, p_geq(one, s_or(A, B))),
                  rs({r_plus_s, Relation::Ge, Rational(1)}), "DIS>"});
  base.push_back({s_implies(and_(p_at_most(r, A), p_less(s, B)), p_less(r + s, s_or(A, B))),
                  rs({r_plus_s, Relation::Le, Rational(1)}), "UN"});
  base.push_back({s_implies(SFormula::just(u, s_implies(A, B)),
                            s_implies(SFormula::just(v, A), SFormula::just(STerm::app(u, v), B))),
                  {}, "J"});
  return base;
}

}  // namespace

const std::vector<SchemaFormula>& axiom_schemas() {
  static const std::vector<SchemaFormula> base = build_axiom_schemas();
  return base;
}

// ---------------------------------------------------------------- evidence

const std::vector<SchemaFormula>& EvidenceOracle::schemas(const Term& t) {
  if (auto it = cache_.find(t); it != cache_.end()) return it->second;
  auto computed = compute(t);
  return cache_.emplace(t, std::move(computed)).first->second;
}

std::vector<SchemaFormula> EvidenceOracle::compute(const Term& t) {
  std::vector<SchemaFormula> out;
  std::set<std::string> seen;
  auto add = [&](SchemaFormula s) {
    if (seen.insert(canonical_key(s)).second) out.push_back(std::move(s));
  };

  for (const auto& [term, formula] : base_.positives) {
    if (term == t) add(SchemaFormula{SFormula::ground(formula), {}, "assumed"});
  }

  if (auto height = bang_tower_height(t)) {
    const Term* c = &t;
    while (c->is_bang()) c = &c->inner();
    for (const auto& axiom : axiom_schemas()) {
      SchemaFormula s = rename_apart(axiom, supply_);
      for (std::size_t k = 0; k < *height; ++k) {
        s.skeleton = SFormula::just(STerm::ground(bang_power(k, *c)), s.skeleton);
      }
      if (*height > 0) s.label = "ANE(" + std::to_string(*height) + ")/" + s.label;
      add(std::move(s));
    }
  } else if (t.is_app()) {
    // Copies: the recursive calls may grow the cache and move its vectors.
    const std::vector<SchemaFormula> left = schemas(t.left());
    const std::vector<SchemaFormula> right = schemas(t.right());
    for (const auto& l0 : left) {
      for (const auto& r0 : right) {
        SchemaFormula l = rename_apart(l0, supply_);
        SchemaFormula r = rename_apart(r0, supply_);
        const SFormula premise = SFormula::meta(supply_.fresh());
        const SFormula conclusion = SFormula::meta(supply_.fresh());
        auto sigma = unify(l.skeleton, s_implies(premise, conclusion));
        if (!sigma) continue;
        sigma = unify(premise, r.skeleton, std::move(*sigma));
        if (!sigma) continue;
        SchemaFormula result{sigma->apply(conclusion), l.conditions,
                             "app(" + l.label + "," + r.label + ")"};
        result.conditions.insert(result.conditions.end(), r.conditions.begin(), r.conditions.end());
        result.conditions.insert(result.conditions.end(), sigma->rational_eqs.begin(),
                                 sigma->rational_eqs.end());
        if (!conditions_feasible(result.conditions)) continue;
        add(std::move(result));
      }
    }
  }
  return out;
}

std::optional<EvidenceOracle::Match> EvidenceOracle::find(const Term& t, const Formula& query) {
  const SFormula target = SFormula::ground(query);
  for (const auto& s : schemas(t)) {
    auto sigma = unify(s.skeleton, target);
    if (!sigma) continue;
    std::vector<lin::LinearConstraint> all = s.conditions;
    all.insert(all.end(), sigma->rational_eqs.begin(), sigma->rational_eqs.end());
    auto values = solve_conditions(all);
    if (!values) continue;
    return Match{s, std::move(*sigma), std::move(*values)};
  }
  return std::nullopt;
}

std::vector<SchemaFormula> evid_schemas(const Term& t, const EvidenceBase& base) {
  EvidenceOracle oracle(base);
  return oracle.schemas(t);
}

bool member(const Term& t, const Formula& query, const EvidenceBase& base) {
  EvidenceOracle oracle(base);
  return oracle.member(t, query);
}

JustificationCheck check_branch_justifications(const EvidenceBase& base) {
  EvidenceOracle oracle(base);
  for (const auto& [t, a] : base.negatives) {
    if (oracle.member(t, a)) return JustificationCheck{false, std::make_pair(t, a)};
  }
  return JustificationCheck{};
}

Formula ane_chain(std::size_t n, const Term& c, const Formula& a) {
  Formula out = a;
  for (std::size_t k = 0; k < n; ++k) out = Formula::just(bang_power(k, c), out);
  return out;
}

}  // namespace ppj::ev
