#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ppj/evidence.hpp"
#include "ppj/parser.hpp"

using namespace ppj;
using namespace ppj::ev;

namespace {

Formula f(const std::string& s) { return parse_formula(s); }
Term t(const std::string& s) { return parse_term(s); }

Rational value_of(const RatExpr& e, const std::map<MetaId, Rational>& values) {
  Rational out = e.constant;
  for (const auto& [m, c] : e.coefficients) out += c * values.at(m);
  return out;
}

std::optional<Term> to_term(const STerm& s) {
  switch (s.kind()) {
    case STerm::Kind::Const: return Term::constant(s.name());
    case STerm::Kind::Var: return Term::variable(s.name());
    case STerm::Kind::App: {
      auto l = to_term(s.left());
      auto r = to_term(s.right());
      if (!l || !r) return std::nullopt;
      return Term::app(*l, *r);
    }
    case STerm::Kind::Bang: {
      auto i = to_term(s.inner());
      if (!i) return std::nullopt;
      return Term::bang(*i);
    }
    case STerm::Kind::Meta: return std::nullopt;
  }
  return std::nullopt;
}

// Plugs rational values into a schema skeleton whose formula and term
// metavariables are already resolved.
std::optional<Formula> instantiate(const SFormula& s, const std::map<MetaId, Rational>& values) {
  switch (s.kind()) {
    case SFormula::Kind::Prop: return Formula::prop(s.name());
    case SFormula::Kind::Not: {
      auto b = instantiate(s.body(), values);
      if (!b) return std::nullopt;
      return Formula::negation(*b);
    }
    case SFormula::Kind::And: {
      auto l = instantiate(s.left(), values);
      auto r = instantiate(s.right(), values);
      if (!l || !r) return std::nullopt;
      return Formula::conjunction(*l, *r);
    }
    case SFormula::Kind::Just: {
      auto term = to_term(s.term());
      auto b = instantiate(s.body(), values);
      if (!term || !b) return std::nullopt;
      return Formula::just(*term, *b);
    }
    case SFormula::Kind::PGeq: {
      auto b = instantiate(s.body(), values);
      if (!b) return std::nullopt;
      return Formula::pgeq(value_of(s.threshold(), values), *b);
    }
    case SFormula::Kind::Meta: return std::nullopt;
  }
  return std::nullopt;
}

// Membership re-checked by substitution: the match must rebuild the query.
bool checked_member(const Term& term, const Formula& query, const EvidenceBase& base) {
  EvidenceOracle oracle(base);
  auto m = oracle.find(term, query);
  if (!m) return false;
  auto rebuilt = instantiate(m->substitution.apply(m->schema.skeleton), m->rational_values);
  REQUIRE_MESSAGE(rebuilt.has_value(), to_string(m->schema));
  CHECK_MESSAGE(*rebuilt == query, to_string(m->schema));
  for (const auto& c : m->schema.conditions) CHECK(c.holds(m->rational_values));
  for (const auto& c : m->substitution.rational_eqs) CHECK(c.holds(m->rational_values));
  return true;
}

const EvidenceBase kEmpty{};

}  // namespace

TEST_CASE("unification examples") {
  auto pq = SFormula::ground(f("p & q"));
  auto u = unify(SFormula::meta(0), pq);
  REQUIRE(u.has_value());
  CHECK(to_string(u->apply(SFormula::meta(0))) == to_string(pq));

  auto v = unify(SFormula::pgeq(RatExpr::meta(1), SFormula::meta(0)), SFormula::ground(f("P>=1/2 p")));
  REQUIRE(v.has_value());
  CHECK(to_string(v->apply(SFormula::meta(0))) == "p");
  REQUIRE(v->rational_eqs.size() == 1);
  CHECK(v->rational_eqs[0].holds({{1, Rational(1, 2)}}));
  CHECK_FALSE(v->rational_eqs[0].holds({{1, Rational(1, 3)}}));

  CHECK_FALSE(unify(SFormula::ground(f("p")), SFormula::ground(f("q"))).has_value());
}

TEST_CASE("occurs check") {
  auto a = SFormula::meta(0);
  CHECK_FALSE(unify(a, SFormula::negation(a)).has_value());
  auto x = STerm::meta(1);
  CHECK_FALSE(unify(SFormula::just(x, SFormula::prop("p")),
                    SFormula::just(STerm::bang(x), SFormula::prop("p")))
                  .has_value());
}

TEST_CASE("unifier is most general and idempotent") {
  // A & B  vs  (C & p) & C
  auto lhs = SFormula::conjunction(SFormula::meta(0), SFormula::meta(1));
  auto rhs = SFormula::conjunction(SFormula::conjunction(SFormula::meta(2), SFormula::prop("p")),
                                   SFormula::meta(2));
  auto u = unify(lhs, rhs);
  REQUIRE(u.has_value());
  CHECK(to_string(u->apply(lhs)) == to_string(u->apply(rhs)));
  CHECK(to_string(u->apply(u->apply(lhs))) == to_string(u->apply(lhs)));
}

TEST_CASE("schema base") {
  const auto& base = axiom_schemas();
  CHECK(base.size() == 13);
  std::set<std::string> labels;
  for (const auto& s : base) labels.insert(s.label);
  for (const char* l : {"CL1", "CL2", "CL3", "CL4", "CL5", "CL6", "PI", "WE", "LE", "DIS<=", "DIS>", "UN", "J"})
    CHECK(labels.count(l) == 1);
}

TEST_CASE("variables justify nothing minimally") {
  CHECK(evid_schemas(t("x"), kEmpty).empty());
  CHECK_FALSE(member(t("x"), f("p"), kEmpty));
}

TEST_CASE("constants justify axiom instances") {
  CHECK(checked_member(t("c"), f("p -> (q -> p)"), kEmpty));
  CHECK(checked_member(t("c"), f("P>=0 (p & q)"), kEmpty));
  CHECK(checked_member(t("c"), f("P<=1/4 p -> P<1/3 p"), kEmpty));
  CHECK_FALSE(member(t("c"), f("P<=1/3 p -> P<1/3 p"), kEmpty));  // WE needs s > r
  CHECK(checked_member(t("c"), f("P<1/3 p -> P<=1/3 p"), kEmpty));
  CHECK(checked_member(t("c"), f("P>=1/4 p & P>=1/2 q & P>=1 ~(p & q) -> P>=3/4 (p | q)"), kEmpty));
  CHECK(checked_member(t("c"), f("P>=2/3 p & P>=3/4 q & P>=1 ~(p & q) -> P>=1 (p | q)"), kEmpty));
  CHECK_FALSE(member(t("c"), f("P>=2/3 p & P>=3/4 q & P>=1 ~(p & q) -> P>=3/4 (p | q)"), kEmpty));
  CHECK(checked_member(t("c"), f("P<=1/4 p & P<1/2 q -> P<3/4 (p | q)"), kEmpty));
  CHECK_FALSE(member(t("c"), f("P<=3/4 p & P<1/2 q -> P<1 (p | q)"), kEmpty));  // UN needs r+s <= 1
  CHECK(checked_member(t("c"), f("x:(p -> q) -> (y:p -> (x.y):q)"), kEmpty));
  CHECK_FALSE(member(t("c"), f("p"), kEmpty));
  CHECK_FALSE(member(t("c"), f("p -> q"), kEmpty));
}

TEST_CASE("application closure") {
  EvidenceBase base{{{t("c"), f("p")}}, {}};
  // c justifies p -> (X -> p) by CL1 and p by assumption, so c.c justifies X -> p.
  CHECK(checked_member(t("c.c"), f("q -> p"), base));
  CHECK(checked_member(t("c.c"), f("P>=1/2 r -> p"), base));
  CHECK_FALSE(member(t("c.c"), f("p -> q"), base));

  EvidenceBase mp{{{t("c"), f("p -> q")}, {t("x"), f("p")}}, {}};
  CHECK(checked_member(t("c.x"), f("q"), mp));
  CHECK_FALSE(member(t("x.c"), f("q"), mp));
}

TEST_CASE("branch consistency examples") {
  EvidenceBase a{{{t("c"), f("p -> q")}, {t("x"), f("p")}}, {{t("c.x"), f("q")}}};
  auto ra = check_branch_justifications(a);
  CHECK_FALSE(ra.consistent);
  REQUIRE(ra.witness.has_value());
  CHECK(ra.witness->first == t("c.x"));

  CHECK(check_branch_justifications(EvidenceBase{{}, {{t("x"), f("p")}}}).consistent);
  CHECK(check_branch_justifications(EvidenceBase{{}, {{t("c"), f("p")}}}).consistent);
}

TEST_CASE("ANE chains") {
  const std::vector<std::string> axioms = {
      "p -> (q -> p)", "p & q -> p", "P>=0 r", "P<=0 p -> P<1/2 p",
      "(~p -> ~q) -> (q -> p)", "x:(p -> q) -> (y:p -> (x.y):q)"};
  auto c = Term::constant("c");
  for (const auto& ax : axioms) {
    for (std::size_t n = 1; n <= 4; ++n) {
      auto chain = ane_chain(n - 1, c, f(ax));
      CHECK_MESSAGE(checked_member(bang_power(n - 1, c), chain, kEmpty), n << " " << ax);
      // The tower has to match the chain exactly.
      CHECK_FALSE(member(bang_power(n, c), chain, kEmpty));
    }
  }
  CHECK(ane_chain(0, c, f("p")) == f("p"));
  CHECK(ane_chain(1, c, f("p")) == f("c:p"));
  CHECK(ane_chain(2, c, f("p")) == f("!c:c:p"));
}

TEST_CASE("schema lists stay finite and small") {
  EvidenceBase base{{{t("c"), f("p")}, {t("x"), f("p -> q")}}, {}};
  EvidenceOracle oracle(base);
  CHECK(oracle.schemas(t("c")).size() <= 14);
  CHECK(oracle.schemas(t("x")).size() == 1);
  CHECK(oracle.schemas(t("x.c")).size() <= 14);
  CHECK(oracle.schemas(t("(c.c).c")).size() <= 14 * 14 * 14);
  CHECK(oracle.schemas(t("!c")).size() == 13);
}

TEST_CASE("monotonicity under added assertions") {
  std::mt19937 rng(21);
  const std::vector<std::string> terms = {"c", "x", "c.x", "x.c", "x.y", "c.c", "!c", "(c.x).y"};
  const std::vector<std::string> formulas = {"p", "q", "p -> q", "q -> p", "p -> (q -> p)",
                                             "P>=1/2 p", "P>=0 q", "x:p", "~p", "p & q"};
  auto pick_term = [&] { return t(terms[static_cast<std::size_t>(gen::pick(rng, 0, 7))]); };
  auto pick_formula = [&] { return f(formulas[static_cast<std::size_t>(gen::pick(rng, 0, 9))]); };
  for (int i = 0; i < 150; ++i) {
    EvidenceBase small;
    for (int k = gen::pick(rng, 0, 2); k > 0; --k) small.positives.emplace_back(pick_term(), pick_formula());
    EvidenceBase large = small;
    for (int k = gen::pick(rng, 1, 2); k > 0; --k) large.positives.emplace_back(pick_term(), pick_formula());
    auto qt = pick_term();
    auto qf = pick_formula();
    if (member(qt, qf, small)) CHECK(member(qt, qf, large));
  }
}

TEST_CASE("assumed formulas are members") {
  EvidenceBase base{{{t("x"), f("P>=1/3 p")}}, {}};
  CHECK(checked_member(t("x"), f("P>=1/3 p"), base));
  CHECK_FALSE(member(t("x"), f("P>=1/2 p"), base));
}
