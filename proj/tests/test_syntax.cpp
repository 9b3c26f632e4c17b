#include <doctest.h>

#include <random>
#include <set>

#include "generators.hpp"
#include "ppj/parser.hpp"
#include "ppj/syntax.hpp"

using namespace ppj;

namespace {

// Independent bit length: count halvings.
std::size_t naive_bits(long n) {
  if (n == 0) return 1;
  std::size_t b = 0;
  for (n = n < 0 ? -n : n; n > 0; n /= 2) ++b;
  return b;
}

Formula p() { return Formula::prop("p"); }
Formula q() { return Formula::prop("q"); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(Rational::parse("1/2") == Rational(1, 2));
  CHECK(Rational::parse("2/4") == Rational(1, 2));
  CHECK(Rational::parse("0.5") == Rational(1, 2));
  CHECK(Rational::parse("0.125") == Rational(1, 8));
  CHECK(Rational::parse("1") == Rational(1));
  CHECK(Rational(3, 6).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");
  CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);

  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    Rational x(gen::pick(rng, -1000, 1000), gen::pick(rng, 1, 1000));
    CHECK(Rational::parse(x.str()) == x);
  }
}

TEST_CASE("rational bit size") {
  for (long n = 0; n <= 40; ++n) {
    for (long d = 1; d <= 40; ++d) {
      Rational x(n, d);
      long g = std::gcd(n, d);
      CHECK(x.bit_size() == naive_bits(n / g) + naive_bits(d / g));
    }
  }
  CHECK(Rational(1, 2).bit_size() == 3);
  CHECK(Rational(0).bit_size() == 2);
}

TEST_CASE("rational arithmetic") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(1) - Rational(1, 4) == Rational(3, 4));
  CHECK(Rational(2, 3) * Rational(3, 4) == Rational(1, 2));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2).sign() < 0);
}

TEST_CASE("terms") {
  auto c = Term::constant("c");
  auto x = Term::variable("x");
  CHECK(Term::app(c, x) == Term::app(Term::constant("c"), Term::variable("x")));
  CHECK_FALSE(Term::app(c, x) == Term::app(x, c));
  CHECK(bang_power(0, c) == c);
  CHECK(bang_power(2, c) == Term::bang(Term::bang(c)));
  CHECK(bang_tower_height(bang_power(3, c)) == std::optional<std::size_t>(3));
  CHECK(bang_tower_height(c) == std::optional<std::size_t>(0));
  CHECK_FALSE(bang_tower_height(Term::bang(x)).has_value());
  CHECK_FALSE(bang_tower_height(Term::app(c, c)).has_value());
  CHECK(Term::app(c, x).size() == 3);
}

TEST_CASE("probability operator rejects thresholds outside the unit interval") {
  CHECK_THROWS_AS(Formula::pgeq(Rational(3, 2), p()), std::out_of_range);
  CHECK_THROWS_AS(Formula::pgeq(Rational(-1, 2), p()), std::out_of_range);
  CHECK_NOTHROW(Formula::pgeq(Rational(0), p()));
  CHECK_NOTHROW(Formula::pgeq(Rational(1), p()));
}

TEST_CASE("abbreviations") {
  const Rational half(1, 2);
  CHECK(p_less(half, p()) == Formula::negation(Formula::pgeq(half, p())));
  CHECK(p_at_most(Rational(1, 4), p()) == Formula::pgeq(Rational(3, 4), Formula::negation(p())));
  CHECK(p_greater(Rational(1, 4), p()) ==
        Formula::negation(Formula::pgeq(Rational(3, 4), Formula::negation(p()))));
  CHECK(p_exactly(Rational(1, 3), p()) ==
        Formula::conjunction(Formula::pgeq(Rational(1, 3), p()),
                             Formula::pgeq(Rational(2, 3), Formula::negation(p()))));
  CHECK(implies(p(), q()) == Formula::negation(Formula::conjunction(p(), Formula::negation(q()))));
  CHECK(disjunction(p(), q()) ==
        Formula::negation(Formula::conjunction(Formula::negation(p()), Formula::negation(q()))));
}

TEST_CASE("expand_sugar examples and idempotence") {
  CHECK(expand_sugar(parse_surface("P<1/2 p")) == Formula::negation(Formula::pgeq(Rational(1, 2), p())));
  CHECK(expand_sugar(parse_surface("p")) == p());
  CHECK(expand_sugar(parse_surface("P=1/3 p")) ==
        Formula::conjunction(Formula::pgeq(Rational(1, 3), p()),
                             Formula::pgeq(Rational(2, 3), Formula::negation(p()))));
  SurfaceFormula bad;
  bad.kind = SurfaceFormula::Kind::PAtMost;
  bad.threshold = Rational(3, 2);
  bad.children.push_back(SurfaceFormula::from_core(p()));
  CHECK_THROWS_AS(expand_sugar(bad), RangeError);

  std::mt19937 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto a = gen::nested(rng, 2);
    CHECK(expand_sugar(SurfaceFormula::from_core(a)) == a);
  }
}

TEST_CASE("subformulas") {
  CHECK(subformulas(p()) == std::vector<Formula>{p()});
  CHECK(subformulas(Formula::negation(p())) == std::vector<Formula>{p(), Formula::negation(p())});
  auto pp = Formula::conjunction(p(), p());
  auto a = Formula::pgeq(Rational(1, 2), pp);
  CHECK(subformulas(a) == std::vector<Formula>{p(), pp, a});

  std::mt19937 rng(3);
  for (int i = 0; i < 300; ++i) {
    auto f = gen::nested(rng, 3);
    CHECK(subformulas(f).size() <= size(f));
  }
}

TEST_CASE("size, norm and depth") {
  CHECK(size(p()) == 1);
  CHECK(size(Formula::negation(p())) == 2);
  CHECK(size(Formula::pgeq(Rational(1, 2), p())) == 3);
  CHECK(size(Formula::just(Term::app(Term::constant("c"), Term::variable("x")), p())) == 5);

  CHECK(norm(p()) == 0);
  CHECK(norm(Formula::pgeq(Rational(1, 2), p())) == naive_bits(1) + naive_bits(2));
  auto two = Formula::conjunction(Formula::pgeq(Rational(1, 3), p()), Formula::pgeq(Rational(1, 2), q()));
  CHECK(norm(two) == std::max(naive_bits(1) + naive_bits(3), naive_bits(1) + naive_bits(2)));

  CHECK(prob_depth(p()) == 0);
  CHECK(prob_depth(Formula::pgeq(Rational(1), p())) == 1);
  CHECK(prob_depth(Formula::pgeq(Rational(1), Formula::pgeq(Rational(1, 2), p()))) == 2);
}

TEST_CASE("atoms") {
  auto one = atoms_of({p()});
  CHECK(one.count() == 2);
  CHECK(one.at(0).sign_of(p()) == std::optional<bool>(true));
  CHECK(one.at(1).sign_of(p()) == std::optional<bool>(false));
  CHECK(one.at(0).conjunction() == p());
  CHECK(one.at(1).conjunction() == Formula::negation(p()));

  CHECK(atoms_of({p(), q()}).count() == 4);

  auto r = Formula::prop("r");
  auto three = atoms_of({p(), q(), r});
  std::set<std::vector<bool>> seen;
  while (auto atom = three.next()) {
    CHECK(atom->signs().size() == 3);
    seen.insert(atom->signs());
  }
  CHECK(seen.size() == 8);

  CHECK_THROWS_AS(atoms_of({}), std::invalid_argument);
  CHECK_THROWS_AS(atoms_of({p(), p()}), std::invalid_argument);
}

TEST_CASE("atom equality ignores list order") {
  auto a = atoms_of({p(), q()}).at(1);  // p, ~q
  auto b = atoms_of({q(), p()}).at(2);  // ~q, p
  CHECK(a == b);
}
