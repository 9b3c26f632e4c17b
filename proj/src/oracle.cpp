#include "ppj/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ppj/errors.hpp"

namespace ppj::oracle {

namespace {

void collect_literals(const Formula& f, std::vector<Formula>& out) {
  switch (f.kind()) {
    case Formula::Kind::Prop: return;
    case Formula::Kind::Not: collect_literals(f.body(), out); return;
    case Formula::Kind::And:
      collect_literals(f.left(), out);
      collect_literals(f.right(), out);
      return;
    case Formula::Kind::PGeq:
      if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
      return;
    case Formula::Kind::Just: return;
  }
}

void collect_outer_props(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Prop: out.insert(f.name()); return;
    case Formula::Kind::Not: collect_outer_props(f.body(), out); return;
    case Formula::Kind::And:
      collect_outer_props(f.left(), out);
      collect_outer_props(f.right(), out);
      return;
    default: return;
  }
}

// Skeleton value: props from `val`, probability literals from `lits`.
bool eval(const Formula& f, const std::map<std::string, bool>& val,
          const std::map<Formula, bool>& lits) {
  switch (f.kind()) {
    case Formula::Kind::Prop: {
      auto it = val.find(f.name());
      return it != val.end() && it->second;
    }
    case Formula::Kind::Not: return !eval(f.body(), val, lits);
    case Formula::Kind::And: return eval(f.left(), val, lits) && eval(f.right(), val, lits);
    case Formula::Kind::PGeq: return lits.at(f);
    case Formula::Kind::Just: break;
  }
  throw ContractError("justification outside the oracle fragment");
}

}  // namespace

bool in_fragment(const Formula& a) { return prob_depth(a) <= 1 && !contains_justification(a); }

OracleResult oracle_decide(const Formula& a) {
  if (!in_fragment(a)) throw ContractError("oracle needs probability depth <= 1 and no justifications");

  std::vector<Formula> literals;
  collect_literals(a, literals);
  std::set<std::string> outer_set;
  collect_outer_props(a, outer_set);
  const std::vector<std::string> outer(outer_set.begin(), outer_set.end());

  std::set<std::string> body_set;
  for (const auto& l : literals) {
    auto ps = props_of(l.body());
    body_set.insert(ps.begin(), ps.end());
  }
  const std::vector<std::string> body_props(body_set.begin(), body_set.end());
  if (outer.size() + literals.size() > 30 || body_props.size() > 20)
    throw ContractError("oracle instance too large to enumerate");

  // Which valuations make each body true.
  const std::uint64_t valuations = std::uint64_t{1} << body_props.size();
  std::vector<std::vector<bool>> body_true(literals.size(), std::vector<bool>(valuations));
  for (std::uint64_t v = 0; v < valuations; ++v) {
    std::map<std::string, bool> val;
    for (std::size_t j = 0; j < body_props.size(); ++j) val[body_props[j]] = ((v >> j) & 1U) != 0;
    for (std::size_t i = 0; i < literals.size(); ++i) body_true[i][v] = eval(literals[i].body(), val, {});
  }

  std::set<std::uint64_t> tried;
  const std::size_t n_outer = outer.size();
  const std::uint64_t total = std::uint64_t{1} << (n_outer + literals.size());
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::map<std::string, bool> val;
    for (std::size_t j = 0; j < n_outer; ++j) val[outer[j]] = ((bits >> j) & 1U) != 0;
    const std::uint64_t lit_bits = bits >> n_outer;
    std::map<Formula, bool> lits;
    for (std::size_t i = 0; i < literals.size(); ++i) lits[literals[i]] = ((lit_bits >> i) & 1U) != 0;
    if (!eval(a, val, lits)) continue;
    if (!tried.insert(lit_bits).second) continue;

    Guess g;
    g.props = body_props;
    std::map<lin::VarId, Rational> sum;
    for (std::uint64_t v = 0; v < valuations; ++v) sum[g.system.add_variable()] = Rational(1);
    g.system.add(std::move(sum), lin::Relation::Eq, Rational(1));
    for (std::size_t i = 0; i < literals.size(); ++i) {
      std::map<lin::VarId, Rational> row;
      for (std::uint64_t v = 0; v < valuations; ++v) {
        if (body_true[i][v]) row[static_cast<lin::VarId>(v)] = Rational(1);
      }
      const bool value = lits[literals[i]];
      g.system.add(std::move(row), value ? lin::Relation::Ge : lin::Relation::Lt,
                   literals[i].threshold());
      g.literals.emplace_back(literals[i], value);
    }
    if (lin::fm_feasible(g.system)) return OracleResult{true, std::move(g)};
  }
  return OracleResult{};
}

}  // namespace ppj::oracle
