#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ppj/oracle.hpp"
#include "ppj/parser.hpp"

using namespace ppj;

namespace {

bool sat(const std::string& s) { return oracle::oracle_decide(parse_formula(s)).sat; }

}  // namespace

TEST_CASE("examples") {
  CHECK(sat("P>=1/2 p & P>=1/2 ~p"));
  CHECK_FALSE(sat("P>=3/5 p & P>=3/5 ~p"));
  CHECK_FALSE(sat("p & ~p"));
  CHECK(sat("p"));
  CHECK_FALSE(sat("~P>=0 p"));
  CHECK_FALSE(sat("P>=1/2 p & ~P>=1/2 p"));
  CHECK(sat("~P>=1 ~p"));
  CHECK_FALSE(sat("P>=1/2 (p & ~p)"));
  CHECK(sat("(P>=3/5 p & P>=3/5 ~p) | q"));
}

TEST_CASE("fragment") {
  CHECK(oracle::in_fragment(parse_formula("P>=1/2 p & q")));
  CHECK_FALSE(oracle::in_fragment(parse_formula("P>=1/2 P>=1/2 p")));
  CHECK_FALSE(oracle::in_fragment(parse_formula("x:p")));
  CHECK_FALSE(oracle::in_fragment(parse_formula("P>=1/2 x:p")));
  CHECK_THROWS_AS(oracle::oracle_decide(parse_formula("P>=1/2 P>=1/2 p")), ContractError);
  CHECK_THROWS_AS(oracle::oracle_decide(parse_formula("x:p")), ContractError);
}

TEST_CASE("sat answers carry a system that re-checks by substitution") {
  std::mt19937 rng(17);
  int sat_count = 0;
  for (int i = 0; i < 300; ++i) {
    auto a = gen::depth_one(rng);
    auto r = oracle::oracle_decide(a);
    if (!r.sat) {
      CHECK_FALSE(r.guess.has_value());
      continue;
    }
    ++sat_count;
    REQUIRE(r.guess.has_value());
    // Independent check with the simplex back-end.
    auto res = lin::feasible(r.guess->system);
    REQUIRE(res.feasible);
    CHECK(lin::satisfies(r.guess->system, *res.witness));
    CHECK(r.guess->system.variables.size() == (std::size_t{1} << r.guess->props.size()));
  }
  CHECK(sat_count > 0);
}
