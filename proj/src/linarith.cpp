#include "ppj/linarith.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ppj::lin {

const char* to_string(Relation rel) {
  switch (rel) {
    case Relation::Eq: return "=";
    case Relation::Le: return "<=";
    case Relation::Lt: return "<";
    case Relation::Ge: return ">=";
    case Relation::Gt: return ">";
  }
  return "?";
}

bool is_strict(Relation rel) { return rel == Relation::Lt || rel == Relation::Gt; }

Rational LinearConstraint::evaluate(const std::map<VarId, Rational>& values) const {
  Rational sum;
  for (const auto& [v, c] : coefficients) {
    if (auto it = values.find(v); it != values.end()) sum += c * it->second;
  }
  return sum;
}

bool LinearConstraint::holds(const std::map<VarId, Rational>& values) const {
  const Rational lhs = evaluate(values);
  switch (relation) {
    case Relation::Eq: return lhs == bound;
    case Relation::Le: return lhs <= bound;
    case Relation::Lt: return lhs < bound;
    case Relation::Ge: return lhs >= bound;
    case Relation::Gt: return lhs > bound;
  }
  return false;
}

VarId LinearSystem::add_variable() {
  VarId next = 0;
  if (!variables.empty()) next = *std::max_element(variables.begin(), variables.end()) + 1;
  variables.push_back(next);
  return next;
}

void LinearSystem::add(LinearConstraint c) { constraints.push_back(std::move(c)); }

void LinearSystem::add(std::map<VarId, Rational> coefficients, Relation relation, Rational bound) {
  constraints.push_back(LinearConstraint{std::move(coefficients), relation, std::move(bound)});
}

void LinearSystem::validate() const {
  std::set<VarId> declared;
  for (VarId v : variables) {
    if (!declared.insert(v).second) {
      throw ContractError("variable x" + std::to_string(v) + " declared twice");
    }
  }
  for (const auto& c : constraints) {
    for (const auto& [v, coef] : c.coefficients) {
      if (!declared.count(v)) {
        throw ContractError("constraint mentions undeclared variable x" + std::to_string(v));
      }
    }
  }
}

const Rational& Witness::at(VarId v) const {
  static const Rational kZero;
  auto it = assignment.find(v);
  return it == assignment.end() ? kZero : it->second;
}

std::size_t Witness::support_size() const {
  return static_cast<std::size_t>(std::count_if(
      assignment.begin(), assignment.end(), [](const auto& kv) { return !kv.second.is_zero(); }));
}

std::vector<VarId> Witness::support() const {
  std::vector<VarId> out;
  for (const auto& [v, value] : assignment) {
    if (!value.is_zero()) out.push_back(v);
  }
  return out;
}

bool satisfies(const LinearSystem& sys, const Witness& w) {
  for (VarId v : sys.variables) {
    if (sys.nonneg && w.at(v).sign() < 0) return false;
  }
  return std::all_of(sys.constraints.begin(), sys.constraints.end(),
                     [&](const LinearConstraint& c) { return c.holds(w.assignment); });
}

// ---------------------------------------------------------------- simplex

namespace {

// Dense tableau for  min c.x  s.t.  A x = b, x >= 0, b >= 0, kept in
// canonical form with respect to `basis`.
struct Tableau {
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> b;
  std::vector<std::size_t> basis;
  std::size_t cols = 0;

  void pivot(std::size_t row, std::size_t col) {
    const Rational p = a[row][col];
    for (auto& x : a[row]) {
      if (!x.is_zero()) x /= p;
    }
    b[row] /= p;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (i == row || a[i][col].is_zero()) continue;
      const Rational f = a[i][col];
      for (std::size_t j = 0; j < cols; ++j) {
        if (!a[row][j].is_zero()) a[i][j] -= f * a[row][j];
      }
      b[i] -= f * b[row];
    }
    basis[row] = col;
  }

  void remove_row(std::size_t row) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(row));
    b.erase(b.begin() + static_cast<std::ptrdiff_t>(row));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(row));
  }

  [[nodiscard]] Rational value(std::size_t col) const {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (basis[i] == col) return b[i];
    }
    return Rational(0);
  }
};

enum class SimplexStatus { Optimal, Unbounded };

// Primal simplex with Bland's rule (lowest index enters, lowest basic index
// leaves on ratio ties).
SimplexStatus minimize(Tableau& t, const std::vector<Rational>& cost,
                       const std::vector<bool>& allowed) {
  const std::size_t m = t.a.size();
  for (;;) {
    std::vector<bool> is_basic(t.cols, false);
    for (std::size_t col : t.basis) is_basic[col] = true;

    std::optional<std::size_t> entering;
    for (std::size_t j = 0; j < t.cols && !entering; ++j) {
      if (!allowed[j] || is_basic[j]) continue;
      Rational d = cost[j];
      for (std::size_t i = 0; i < m; ++i) {
        const Rational& cb = cost[t.basis[i]];
        if (!cb.is_zero() && !t.a[i][j].is_zero()) d -= cb * t.a[i][j];
      }
      if (d.sign() < 0) entering = j;
    }
    if (!entering) return SimplexStatus::Optimal;

    const std::size_t j = *entering;
    std::optional<std::size_t> leaving;
    Rational best;
    for (std::size_t i = 0; i < m; ++i) {
      if (t.a[i][j].sign() <= 0) continue;
      Rational ratio = t.b[i] / t.a[i][j];
      if (!leaving || ratio < best || (ratio == best && t.basis[i] < t.basis[*leaving])) {
        leaving = i;
        best = std::move(ratio);
      }
    }
    if (!leaving) return SimplexStatus::Unbounded;
    t.pivot(*leaving, j);
  }
}

// Decides `sys` restricted to the variables in `active` (all others are
// fixed at zero). Returns the vertex reached, or nullopt when infeasible.
std::optional<std::map<VarId, Rational>> solve_restricted(const LinearSystem& sys,
                                                          const std::vector<VarId>& active) {
  const bool split = !sys.nonneg;
  std::unordered_map<VarId, std::size_t> column_of;
  for (std::size_t k = 0; k < active.size(); ++k) column_of[active[k]] = split ? 2 * k : k;
  const std::size_t var_cols = split ? 2 * active.size() : active.size();

  const bool has_strict = std::any_of(sys.constraints.begin(), sys.constraints.end(),
                                      [](const LinearConstraint& c) { return is_strict(c.relation); });
  const std::size_t delta = var_cols;
  const std::size_t structural = var_cols + (has_strict ? 1 : 0);

  struct Row {
    std::vector<Rational> a;
    bool equality = false;
    Rational b;
  };
  std::vector<Row> rows;
  for (const auto& c : sys.constraints) {
    Row row;
    row.a.assign(structural, Rational(0));
    const bool flip = c.relation == Relation::Ge || c.relation == Relation::Gt;
    bool any = false;
    for (const auto& [v, coef] : c.coefficients) {
      auto it = column_of.find(v);
      if (it == column_of.end() || coef.is_zero()) continue;
      const Rational value = flip ? -coef : coef;
      row.a[it->second] += value;
      if (split) row.a[it->second + 1] -= value;
      any = true;
    }
    row.b = flip ? -c.bound : c.bound;
    row.equality = c.relation == Relation::Eq;
    if (is_strict(c.relation)) {
      row.a[delta] = Rational(1);
      any = true;
    }
    if (!any) {
      const bool ok = row.equality ? row.b.is_zero() : row.b.sign() >= 0;
      if (!ok) return std::nullopt;
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (has_strict) {
    Row cap;
    cap.a.assign(structural, Rational(0));
    cap.a[delta] = Rational(1);
    cap.b = Rational(1);
    rows.push_back(std::move(cap));
  }

  const std::size_t m = rows.size();
  std::size_t slack_count = 0;
  for (const auto& r : rows) slack_count += r.equality ? 0 : 1;
  const std::size_t art_begin = structural + slack_count;
  Tableau t;
  t.cols = art_begin + m;
  t.a.assign(m, std::vector<Rational>(t.cols, Rational(0)));
  t.b.resize(m);
  t.basis.resize(m);
  std::size_t slack = structural;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < structural; ++j) t.a[i][j] = rows[i].a[j];
    if (!rows[i].equality) t.a[i][slack++] = Rational(1);
    t.b[i] = rows[i].b;
    if (t.b[i].sign() < 0) {
      for (std::size_t j = 0; j < art_begin; ++j) t.a[i][j] = -t.a[i][j];
      t.b[i] = -t.b[i];
    }
    t.a[i][art_begin + i] = Rational(1);
    t.basis[i] = art_begin + i;
  }

  // Phase 1: minimise the sum of artificials.
  std::vector<Rational> cost(t.cols, Rational(0));
  for (std::size_t j = art_begin; j < t.cols; ++j) cost[j] = Rational(1);
  std::vector<bool> allowed(t.cols, true);
  minimize(t, cost, allowed);
  for (std::size_t i = 0; i < t.basis.size(); ++i) {
    if (t.basis[i] >= art_begin && !t.b[i].is_zero()) return std::nullopt;
  }

  // Drive zero-level artificials out of the basis; rows where that is
  // impossible are linearly dependent and dropped.
  for (std::size_t i = 0; i < t.basis.size();) {
    if (t.basis[i] < art_begin) {
      ++i;
      continue;
    }
    std::optional<std::size_t> col;
    for (std::size_t j = 0; j < art_begin && !col; ++j) {
      if (!t.a[i][j].is_zero()) col = j;
    }
    if (col) {
      t.pivot(i, *col);
      ++i;
    } else {
      t.remove_row(i);
    }
  }
  for (std::size_t j = art_begin; j < t.cols; ++j) allowed[j] = false;

  if (has_strict) {
    std::vector<Rational> objective(t.cols, Rational(0));
    objective[delta] = Rational(-1);
    if (minimize(t, objective, allowed) == SimplexStatus::Unbounded) {
      throw std::logic_error("simplex: capped delta reported unbounded");
    }
    if (t.value(delta).sign() <= 0) return std::nullopt;
  }

  std::map<VarId, Rational> values;
  for (VarId v : sys.variables) values[v] = Rational(0);
  for (VarId v : active) {
    const std::size_t col = column_of.at(v);
    values[v] = split ? t.value(col) - t.value(col + 1) : t.value(col);
  }
  return values;
}

}  // namespace

FeasibilityResult feasible(const LinearSystem& sys) {
  sys.validate();
  auto values = solve_restricted(sys, sys.variables);
  if (!values) return FeasibilityResult{};
  return FeasibilityResult{true, Witness{std::move(*values)}};
}

Witness reduce_support(const LinearSystem& sys, const Witness& w) {
  sys.validate();
  if (!sys.nonneg) throw ContractError("reduce_support requires a nonnegative system");
  if (!satisfies(sys, w)) throw ContractError("reduce_support: witness does not satisfy the system");
  auto values = solve_restricted(sys, w.support());
  if (!values) throw std::logic_error("reduce_support: restricted system lost feasibility");
  return Witness{std::move(*values)};
}

std::size_t size_bound(std::size_t r, std::size_t l) {
  std::size_t log2r = 0;
  while ((std::size_t{1} << log2r) < r) ++log2r;
  return 2 * (r * l + r * log2r + 1);
}

LinearSystem scale_to_integers(const LinearSystem& sys) {
  LinearSystem out;
  out.variables = sys.variables;
  out.nonneg = sys.nonneg;
  for (const auto& c : sys.constraints) {
    mpz_class lcm = c.bound.denominator();
    for (const auto& [v, coef] : c.coefficients) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), coef.denominator().get_mpz_t());
    }
    const Rational factor{mpq_class(lcm)};
    LinearConstraint scaled{{}, c.relation, c.bound * factor};
    for (const auto& [v, coef] : c.coefficients) scaled.coefficients[v] = coef * factor;
    out.constraints.push_back(std::move(scaled));
  }
  return out;
}

std::size_t max_coefficient_size(const LinearSystem& sys) {
  std::size_t best = 0;
  for (const auto& c : sys.constraints) {
    best = std::max(best, bit_length(c.bound.numerator()));
    for (const auto& [v, coef] : c.coefficients) {
      best = std::max(best, bit_length(coef.numerator()));
    }
  }
  return best;
}

std::string to_string(const LinearSystem& sys) {
  std::ostringstream os;
  for (const auto& c : sys.constraints) {
    bool first = true;
    for (const auto& [v, coef] : c.coefficients) {
      if (!first) os << " + ";
      os << coef << "*x" << v;
      first = false;
    }
    if (first) os << "0";
    os << ' ' << to_string(c.relation) << ' ' << c.bound << '\n';
  }
  if (sys.nonneg) os << "x >= 0\n";
  return os.str();
}

// ---------------------------------------------------------------- Fourier-Motzkin

namespace {

struct FmRow {
  std::vector<Rational> a;
  Rational b;
  bool strict = false;  // a.x < b  versus  a.x <= b
};

bool trivially_ok(const FmRow& r) { return r.strict ? r.b.sign() > 0 : r.b.sign() >= 0; }

bool is_zero_row(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

// Scales so that the first nonzero coefficient has magnitude 1, then keeps
// only the tightest bound per coefficient vector. Returns false on a
// contradiction among constant rows.
bool normalize(std::vector<FmRow>& rows) {
  std::map<std::vector<Rational>, std::pair<Rational, bool>> best;
  for (auto& r : rows) {
    auto lead = std::find_if(r.a.begin(), r.a.end(), [](const Rational& x) { return !x.is_zero(); });
    if (lead == r.a.end()) {
      if (!trivially_ok(r)) return false;
      continue;
    }
    const Rational scale = lead->sign() > 0 ? *lead : -*lead;
    for (auto& x : r.a) {
      if (!x.is_zero()) x /= scale;
    }
    r.b /= scale;
    auto [it, inserted] = best.try_emplace(r.a, r.b, r.strict);
    if (!inserted) {
      auto& [b, strict] = it->second;
      if (r.b < b || (r.b == b && r.strict)) {
        b = r.b;
        strict = r.strict;
      }
    }
  }
  rows.clear();
  for (auto& [a, bs] : best) rows.push_back(FmRow{a, bs.first, bs.second});
  return true;
}

}  // namespace

bool fm_feasible(const LinearSystem& sys) {
  sys.validate();

  // Nonnegative variables with identical columns can be merged into one.
  std::vector<VarId> vars = sys.variables;
  if (sys.nonneg) {
    std::map<std::vector<Rational>, VarId> by_column;
    std::vector<VarId> kept;
    for (VarId v : vars) {
      std::vector<Rational> column;
      column.reserve(sys.constraints.size());
      for (const auto& c : sys.constraints) {
        auto it = c.coefficients.find(v);
        column.push_back(it == c.coefficients.end() ? Rational(0) : it->second);
      }
      if (by_column.try_emplace(std::move(column), v).second) kept.push_back(v);
    }
    vars = std::move(kept);
  }
  std::unordered_map<VarId, std::size_t> index;
  for (std::size_t k = 0; k < vars.size(); ++k) index[vars[k]] = k;
  const std::size_t n = vars.size();

  std::vector<FmRow> eqs;
  std::vector<FmRow> rows;
  for (const auto& c : sys.constraints) {
    FmRow r;
    r.a.assign(n, Rational(0));
    const bool flip = c.relation == Relation::Ge || c.relation == Relation::Gt;
    for (const auto& [v, coef] : c.coefficients) {
      auto it = index.find(v);
      if (it != index.end()) r.a[it->second] += flip ? -coef : coef;
    }
    r.b = flip ? -c.bound : c.bound;
    r.strict = is_strict(c.relation);
    (c.relation == Relation::Eq ? eqs : rows).push_back(std::move(r));
  }
  if (sys.nonneg) {
    for (std::size_t j = 0; j < n; ++j) {
      FmRow r;
      r.a.assign(n, Rational(0));
      r.a[j] = Rational(-1);
      rows.push_back(std::move(r));
    }
  }

  // Equalities: Gaussian substitution.
  while (!eqs.empty()) {
    FmRow e = std::move(eqs.back());
    eqs.pop_back();
    auto lead = std::find_if(e.a.begin(), e.a.end(), [](const Rational& x) { return !x.is_zero(); });
    if (lead == e.a.end()) {
      if (!e.b.is_zero()) return false;
      continue;
    }
    const std::size_t j = static_cast<std::size_t>(lead - e.a.begin());
    auto eliminate = [&](FmRow& r) {
      if (r.a[j].is_zero()) return;
      const Rational f = r.a[j] / e.a[j];
      for (std::size_t k = 0; k < n; ++k) {
        if (!e.a[k].is_zero()) r.a[k] -= f * e.a[k];
      }
      r.b -= f * e.b;
    };
    for (auto& r : eqs) eliminate(r);
    for (auto& r : rows) eliminate(r);
  }

  if (!normalize(rows)) return false;
  std::vector<bool> eliminated(n, false);
  for (;;) {
    std::optional<std::size_t> pick;
    std::size_t pick_cost = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (eliminated[j]) continue;
      std::size_t pos = 0;
      std::size_t neg = 0;
      for (const auto& r : rows) {
        const int s = r.a[j].sign();
        pos += s > 0 ? 1 : 0;
        neg += s < 0 ? 1 : 0;
      }
      if (pos + neg == 0) {
        eliminated[j] = true;
        continue;
      }
      const std::size_t cost = pos * neg;
      if (!pick || cost < pick_cost) {
        pick = j;
        pick_cost = cost;
      }
    }
    if (!pick) break;
    const std::size_t j = *pick;
    eliminated[j] = true;

    std::vector<FmRow> upper;  // a_j > 0
    std::vector<FmRow> lower;  // a_j < 0
    std::vector<FmRow> next;
    for (auto& r : rows) {
      const int s = r.a[j].sign();
      if (s > 0) upper.push_back(std::move(r));
      else if (s < 0) lower.push_back(std::move(r));
      else next.push_back(std::move(r));
    }
    for (const auto& u : upper) {
      for (const auto& l : lower) {
        const Rational fu = Rational(1) / u.a[j];
        const Rational fl = Rational(1) / -l.a[j];
        FmRow r;
        r.a.resize(n);
        for (std::size_t k = 0; k < n; ++k) r.a[k] = u.a[k] * fu + l.a[k] * fl;
        r.a[j] = Rational(0);
        r.b = u.b * fu + l.b * fl;
        r.strict = u.strict || l.strict;
        next.push_back(std::move(r));
      }
    }
    rows = std::move(next);
    if (!normalize(rows)) return false;
  }
  return std::all_of(rows.begin(), rows.end(), [](const FmRow& r) {
    return !is_zero_row(r.a) || trivially_ok(r);
  });
}

}  // namespace ppj::lin
