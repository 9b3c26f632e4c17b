#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "ppj/linarith.hpp"

using namespace ppj;
using namespace ppj::lin;

namespace {

LinearSystem with_vars(int n) {
  LinearSystem sys;
  for (int i = 0; i < n; ++i) sys.add_variable();
  return sys;
}

std::map<VarId, Rational> row(std::initializer_list<std::pair<VarId, long>> entries) {
  std::map<VarId, Rational> out;
  for (auto [v, c] : entries) out[v] = Rational(c);
  return out;
}

Witness witness(std::initializer_list<Rational> values) {
  Witness w;
  VarId v = 0;
  for (const auto& x : values) w.assignment[v++] = x;
  return w;
}

bool subset(const std::vector<VarId>& a, const std::vector<VarId>& b) {
  for (auto v : a) {
    if (std::find(b.begin(), b.end(), v) == b.end()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("feasible: spec examples") {
  auto a = with_vars(1);
  a.add(row({{0, 1}}), Relation::Eq, Rational(1));
  auto ra = feasible(a);
  REQUIRE(ra.feasible);
  CHECK(ra.witness->at(0) == Rational(1));

  auto b = with_vars(2);
  b.add(row({{0, 1}, {1, 1}}), Relation::Eq, Rational(1));
  b.add(row({{0, 1}}), Relation::Ge, Rational(3, 5));
  b.add(row({{1, 1}}), Relation::Ge, Rational(3, 5));
  CHECK_FALSE(feasible(b).feasible);
  CHECK_FALSE(fm_feasible(b));

  auto c = with_vars(2);
  c.add(row({{0, 1}, {1, 1}}), Relation::Eq, Rational(1));
  c.add(row({{0, 1}}), Relation::Ge, Rational(1, 2));
  c.add(row({{1, 1}}), Relation::Lt, Rational(1, 2));
  auto rc = feasible(c);
  REQUIRE(rc.feasible);
  CHECK(satisfies(c, *rc.witness));
  CHECK(rc.witness->at(1) < Rational(1, 2));
  CHECK(fm_feasible(c));
  CHECK(satisfies(c, witness({Rational(3, 4), Rational(1, 4)})));
}

TEST_CASE("strict constraints") {
  auto s = with_vars(1);
  s.add(row({{0, 1}}), Relation::Lt, Rational(0));
  CHECK_FALSE(feasible(s).feasible);
  CHECK_FALSE(fm_feasible(s));

  auto t = with_vars(2);
  t.add(row({{0, 1}, {1, 1}}), Relation::Eq, Rational(1));
  t.add(row({{0, 1}}), Relation::Gt, Rational(0));
  t.add(row({{1, 1}}), Relation::Gt, Rational(0));
  auto rt = feasible(t);
  REQUIRE(rt.feasible);
  CHECK(rt.witness->at(0).sign() > 0);
  CHECK(rt.witness->at(1).sign() > 0);

  auto u = with_vars(1);
  u.nonneg = false;
  u.add(row({{0, 1}}), Relation::Lt, Rational(-3));
  auto ru = feasible(u);
  REQUIRE(ru.feasible);
  CHECK(ru.witness->at(0) < Rational(-3));
}

TEST_CASE("empty rows") {
  auto s = with_vars(1);
  s.add({}, Relation::Ge, Rational(1, 2));
  CHECK_FALSE(feasible(s).feasible);
  CHECK_FALSE(fm_feasible(s));
  auto t = with_vars(1);
  t.add({}, Relation::Lt, Rational(1, 2));
  CHECK(feasible(t).feasible);
  CHECK(fm_feasible(t));
}

TEST_CASE("validate rejects undeclared variables") {
  auto s = with_vars(1);
  s.add(row({{3, 1}}), Relation::Eq, Rational(1));
  CHECK_THROWS_AS(s.validate(), ContractError);
  CHECK_THROWS_AS(feasible(s), ContractError);
}

TEST_CASE("reduce_support: spec examples") {
  auto a = with_vars(3);
  a.add(row({{0, 1}, {1, 1}, {2, 1}}), Relation::Eq, Rational(1));
  auto w = witness({Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  auto ra = reduce_support(a, w);
  CHECK(satisfies(a, ra));
  CHECK(ra.support_size() <= 1);
  CHECK(subset(ra.support(), w.support()));

  auto basic = witness({Rational(1), Rational(0), Rational(0)});
  CHECK(reduce_support(a, basic).support_size() == 1);

  auto b = with_vars(2);
  b.add(row({{0, 1}, {1, 1}}), Relation::Eq, Rational(1));
  b.add(row({{0, 1}}), Relation::Ge, Rational(1, 4));
  auto wb = witness({Rational(1, 2), Rational(1, 2)});
  auto rb = reduce_support(b, wb);
  CHECK(satisfies(b, rb));
  CHECK(rb.support_size() <= 2);
}

TEST_CASE("reduce_support contract") {
  auto a = with_vars(2);
  a.add(row({{0, 1}, {1, 1}}), Relation::Eq, Rational(1));
  CHECK_THROWS_AS(reduce_support(a, witness({Rational(1), Rational(1)})), ContractError);
  a.nonneg = false;
  CHECK_THROWS_AS(reduce_support(a, witness({Rational(1), Rational(0)})), ContractError);
}

TEST_CASE("size bound") {
  CHECK(size_bound(0, 5) == 2);
  CHECK(size_bound(1, 3) == 2 * (3 + 0 + 1));
  CHECK(size_bound(3, 2) == 2 * (6 + 3 * 2 + 1));
  CHECK(size_bound(4, 1) == 2 * (4 + 4 * 2 + 1));
}

TEST_CASE("integer scaling") {
  auto s = with_vars(2);
  s.add({{0, Rational(1, 2)}, {1, Rational(1, 3)}}, Relation::Le, Rational(1, 4));
  auto scaled = scale_to_integers(s);
  const auto& c = scaled.constraints.front();
  CHECK(c.coefficients.at(0) == Rational(6));
  CHECK(c.coefficients.at(1) == Rational(4));
  CHECK(c.bound == Rational(3));
  CHECK(max_coefficient_size(scaled) == 3);
}

TEST_CASE("simplex and Fourier-Motzkin agree on random systems") {
  std::mt19937 rng(1234);
  int feasible_count = 0;
  for (int i = 0; i < 1500; ++i) {
    auto sys = gen::linear_system(rng);
    auto res = feasible(sys);
    CHECK_MESSAGE(res.feasible == fm_feasible(sys), to_string(sys));
    if (res.feasible) {
      ++feasible_count;
      CHECK(satisfies(sys, *res.witness));
    }
  }
  CHECK(feasible_count > 300);
  CHECK(feasible_count < 1200);
}

TEST_CASE("reduce_support on random nonnegative systems") {
  std::mt19937 rng(8);
  int reduced = 0;
  for (int i = 0; i < 800; ++i) {
    auto sys = gen::linear_system(rng);
    sys.nonneg = true;
    auto res = feasible(sys);
    if (!res.feasible) continue;
    auto w = reduce_support(sys, *res.witness);
    CHECK(satisfies(sys, w));
    CHECK(w.support_size() <= sys.constraints.size());
    CHECK(subset(w.support(), res.witness->support()));
    const auto bound = size_bound(sys.constraints.size(), max_coefficient_size(scale_to_integers(sys)));
    for (const auto& [v, x] : w.assignment) CHECK(x.bit_size() <= bound);
    ++reduced;
  }
  CHECK(reduced > 100);
}

TEST_CASE("reduce_support shrinks an interior point") {
  // x0 + x1 + x2 + x3 = 1, x0 + x1 >= 1/2: r = 2, an interior witness has 4.
  auto sys = with_vars(4);
  sys.add(row({{0, 1}, {1, 1}, {2, 1}, {3, 1}}), Relation::Eq, Rational(1));
  sys.add(row({{0, 1}, {1, 1}}), Relation::Ge, Rational(1, 2));
  auto w = witness({Rational(1, 4), Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  auto r = reduce_support(sys, w);
  CHECK(satisfies(sys, r));
  CHECK(r.support_size() <= 2);
}
