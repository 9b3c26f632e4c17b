#include "ppj/tableau.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "ppj/errors.hpp"
#include "ppj/parser.hpp"

namespace ppj::tab {

WorldId WorldId::child(std::uint32_t index) const {
  WorldId out = *this;
  out.path.push_back(index);
  return out;
}

std::string WorldId::str() const {
  std::string out = "w";
  for (auto i : path) out += "." + std::to_string(i);
  return out;
}

std::optional<WorldId> WorldId::parse(const std::string& text) {
  if (text.empty() || text[0] != 'w') return std::nullopt;
  WorldId id;
  std::size_t pos = 1;
  while (pos < text.size()) {
    if (text[pos] != '.') return std::nullopt;
    ++pos;
    std::size_t end = pos;
    while (end < text.size() && text[end] >= '0' && text[end] <= '9') ++end;
    if (end == pos || end - pos > 9) return std::nullopt;
    id.path.push_back(static_cast<std::uint32_t>(std::stoul(text.substr(pos, end - pos))));
    pos = end;
  }
  return id;
}

std::string to_string(const PrefixedNode& n) {
  return n.world.str() + (n.sign == Sign::T ? " T " : " F ") + print_formula(n.formula);
}

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Sat: return "SAT";
    case Outcome::Unsat: return "UNSAT";
    case Outcome::Aborted: return "ABORTED";
  }
  return "?";
}

// ---------------------------------------------------------------- branches

bool Branch::contains(Sign sign, const Formula& f) const {
  return std::any_of(nodes.begin(), nodes.end(),
                     [&](const PrefixedNode& n) { return n.sign == sign && n.formula == f; });
}

std::vector<ProbLiteral> Branch::probability_literals() const {
  std::vector<ProbLiteral> out;
  for (const auto& n : nodes) {
    if (!n.formula.is_pgeq()) continue;
    bool seen = std::any_of(out.begin(), out.end(), [&](const ProbLiteral& l) {
      return l.sign == n.sign && l.literal == n.formula;
    });
    if (!seen) out.push_back(ProbLiteral{n.sign, n.formula});
  }
  return out;
}

ev::EvidenceBase Branch::evidence() const {
  ev::EvidenceBase base;
  for (const auto& n : nodes) {
    if (!n.formula.is_just()) continue;
    auto& side = n.sign == Sign::T ? base.positives : base.negatives;
    std::pair<Term, Formula> entry{n.formula.term(), n.formula.body()};
    if (std::find(side.begin(), side.end(), entry) == side.end()) side.push_back(std::move(entry));
  }
  return base;
}

bool Branch::complete() const { return closed || probability_literals().empty(); }

namespace {

struct SignedKey {
  Sign sign;
  Formula formula;
  friend bool operator==(const SignedKey&, const SignedKey&) = default;
};

struct SignedKeyHash {
  std::size_t operator()(const SignedKey& k) const {
    return k.formula.hash() * 2 + (k.sign == Sign::T ? 1 : 0);
  }
};

struct Saturation {
  Branch branch;
  std::unordered_set<SignedKey, SignedKeyHash> seen;

  // False when the new node closes the branch.
  bool add(Sign sign, const Formula& f) {
    if (seen.contains({sign, f})) return true;
    branch.nodes.push_back(PrefixedNode{branch.world, sign, f});
    seen.insert({sign, f});
    if (seen.contains({sign == Sign::T ? Sign::F : Sign::T, f})) {
      branch.closed = true;
      return false;
    }
    return true;
  }
};

void saturate(Saturation st, std::size_t next, std::vector<Branch>& out) {
  while (next < st.branch.nodes.size()) {
    const PrefixedNode node = st.branch.nodes[next++];
    const Formula& f = node.formula;
    if (f.is_not()) {
      if (!st.add(node.sign == Sign::T ? Sign::F : Sign::T, f.body())) {
        out.push_back(std::move(st.branch));
        return;
      }
    } else if (f.is_and() && node.sign == Sign::T) {
      if (!st.add(Sign::T, f.left()) || !st.add(Sign::T, f.right())) {
        out.push_back(std::move(st.branch));
        return;
      }
    } else if (f.is_and()) {
      for (const Formula* side : {&f.left(), &f.right()}) {
        Saturation copy = st;
        if (!copy.add(Sign::F, *side)) {
          out.push_back(std::move(copy.branch));
        } else {
          saturate(std::move(copy), next, out);
        }
      }
      return;
    }
  }
  out.push_back(std::move(st.branch));
}

}  // namespace

std::vector<Branch> expand_propositional(const Branch& b) {
  Saturation st;
  st.branch.world = b.world;
  for (const auto& n : b.nodes) {
    if (!st.add(n.sign, n.formula)) return {st.branch};
  }
  std::vector<Branch> out;
  saturate(std::move(st), 0, out);
  return out;
}

// ---------------------------------------------------------------- PROB

std::uint64_t ProbApplication::child_count() const { return std::uint64_t{1} << probed.size(); }

WorldId ProbApplication::child_world(std::uint64_t index) const {
  return parent.child(static_cast<std::uint32_t>(index + 1));
}

Formula ProbApplication::child_formula(std::uint64_t index) const {
  return children().at(index).conjunction();
}

ProbApplication apply_prob_rule(const Branch& b) {
  if (b.closed) throw ContractError("PROB applied to a closed branch");
  ProbApplication app;
  app.parent = b.world;
  app.literals = b.probability_literals();
  if (app.literals.empty()) throw ContractError("PROB needs a probability literal on the branch");
  for (const auto& l : app.literals) {
    if (std::find(app.probed.begin(), app.probed.end(), l.body()) == app.probed.end())
      app.probed.push_back(l.body());
  }
  if (app.probed.size() > 62) throw ContractError("too many probed formulas at one world");
  return app;
}

namespace {

// Positive polarity of probed formula j in atom `index` over k formulas.
bool atom_positive(std::uint64_t index, std::size_t j, std::size_t k) {
  return ((index >> (k - 1 - j)) & 1U) == 0;
}

// Marking system over the listed children; variable v stands for children[v].
lin::LinearSystem marking_system(const ProbApplication& app,
                                 const std::vector<std::uint64_t>& children) {
  lin::LinearSystem sys;
  std::map<lin::VarId, Rational> total;
  for (std::size_t v = 0; v < children.size(); ++v) total[sys.add_variable()] = Rational(1);
  sys.add(std::move(total), lin::Relation::Eq, Rational(1));
  const std::size_t k = app.probed.size();
  for (const auto& lit : app.literals) {
    const auto j = static_cast<std::size_t>(
        std::find(app.probed.begin(), app.probed.end(), lit.body()) - app.probed.begin());
    std::map<lin::VarId, Rational> row;
    for (std::size_t v = 0; v < children.size(); ++v) {
      if (atom_positive(children[v], j, k)) row[static_cast<lin::VarId>(v)] = Rational(1);
    }
    sys.add(std::move(row), lit.sign == Sign::T ? lin::Relation::Ge : lin::Relation::Lt,
            lit.threshold());
  }
  return sys;
}

// Greedily drops support variables while the system stays feasible; every
// step re-solves on a smaller column set, so the result is a vertex.
lin::Witness minimise_support(const lin::LinearSystem& sys, const lin::Witness& found) {
  lin::Witness current = lin::reduce_support(sys, found);
  bool improved = true;
  while (improved) {
    improved = false;
    const auto support = current.support();
    if (support.size() <= 1) break;
    for (auto drop : support) {
      lin::LinearSystem narrowed = sys;
      for (auto v : sys.variables) {
        bool keep = v != drop && std::find(support.begin(), support.end(), v) != support.end();
        if (!keep) narrowed.add({{v, Rational(1)}}, lin::Relation::Eq, Rational(0));
      }
      auto res = lin::feasible(narrowed);
      if (!res) continue;
      current = lin::reduce_support(narrowed, *res.witness);
      improved = true;
      break;
    }
  }
  return current;
}

struct SolvedMarking {
  bool satisfiable = false;
  std::map<std::uint64_t, Rational> weights;
  lin::LinearSystem system;
};

SolvedMarking solve_marking(const ProbApplication& app, const std::vector<std::uint64_t>& children,
                            const MarkingObserver& observer) {
  SolvedMarking out;
  out.system = marking_system(app, children);
  auto res = lin::feasible(out.system);
  if (!res) return out;
  lin::Witness reduced = minimise_support(out.system, *res.witness);
  if (observer) observer(out.system, *res.witness, reduced);
  out.satisfiable = true;
  for (const auto& [v, value] : reduced.assignment) {
    if (value.sign() > 0) out.weights.emplace(children[v], value);
  }
  return out;
}

}  // namespace

MarkingResult mark_prob_application(const ProbApplication& app,
                                    const std::vector<Verdict>& child_verdicts) {
  if (child_verdicts.size() != app.child_count())
    throw ContractError("one verdict per child world is required");
  std::vector<std::uint64_t> alive;
  for (std::uint64_t i = 0; i < child_verdicts.size(); ++i) {
    if (child_verdicts[i] == Verdict::Sat) alive.push_back(i);
  }
  auto solved = solve_marking(app, alive, {});
  return MarkingResult{solved.satisfiable, std::move(solved.weights), std::move(solved.system)};
}

// ---------------------------------------------------------------- engine

namespace {

struct Aborted {
  std::string reason;
};

enum class BranchStatus : std::uint8_t { Closed, Inconsistent, Complete, ProbSat, ProbUnsat, Skipped };

}  // namespace

struct WorldOutcome {
  struct BranchRecord {
    Branch branch;
    BranchStatus status = BranchStatus::Skipped;
    std::optional<std::pair<Term, Formula>> inconsistency;
    std::optional<ProbApplication> app;
    std::map<std::uint64_t, Verdict> child_verdicts;
    std::map<std::uint64_t, Rational> weights;
    std::map<std::uint64_t, std::shared_ptr<const WorldOutcome>> children;
  };

  explicit WorldOutcome(Formula a) : root(std::move(a)) {}

  Formula root;
  bool sat = false;
  std::vector<BranchRecord> branches;
  std::optional<std::size_t> chosen;
};

struct Engine::Impl {
  DecideOptions options;
  std::chrono::steady_clock::time_point deadline;
  std::uint64_t steps = 0;
  std::unordered_map<Formula, std::shared_ptr<const WorldOutcome>> memo;

  explicit Impl(DecideOptions o) : options(std::move(o)) {
    deadline = options.timeout ? std::chrono::steady_clock::now() + *options.timeout
                               : std::chrono::steady_clock::time_point::max();
  }

  void tick() {
    ++steps;
    if (options.step_budget && steps > *options.step_budget) throw Aborted{"step budget exhausted"};
    if (options.timeout && std::chrono::steady_clock::now() > deadline) throw Aborted{"timeout"};
  }

  std::shared_ptr<const WorldOutcome> world(const WorldId& id, const Formula& a) {
    if (auto it = memo.find(a); it != memo.end()) return it->second;
    tick();
    auto out = std::make_shared<WorldOutcome>(a);
    Branch start;
    start.world = id;
    start.nodes.push_back(PrefixedNode{id, Sign::T, a});
    for (auto& b : expand_propositional(start)) {
      WorldOutcome::BranchRecord rec;
      rec.branch = std::move(b);
      out->branches.push_back(std::move(rec));
    }
    for (std::size_t i = 0; i < out->branches.size(); ++i) {
      auto& rec = out->branches[i];
      if (rec.branch.closed) {
        rec.status = BranchStatus::Closed;
        continue;
      }
      tick();
      auto check = ev::check_branch_justifications(rec.branch.evidence());
      if (!check.consistent) {
        rec.status = BranchStatus::Inconsistent;
        rec.inconsistency = check.witness;
        continue;
      }
      if (rec.branch.probability_literals().empty()) {
        rec.status = BranchStatus::Complete;
        out->chosen = i;
        break;
      }
      rec.app = apply_prob_rule(rec.branch);
      bool ok = options.support_mode == SupportMode::Full ? mark_full(rec) : mark_bounded(rec);
      rec.status = ok ? BranchStatus::ProbSat : BranchStatus::ProbUnsat;
      if (ok) {
        out->chosen = i;
        break;
      }
    }
    out->sat = out->chosen.has_value();
    memo.emplace(a, out);
    return out;
  }

  Verdict child_verdict(WorldOutcome::BranchRecord& rec, std::uint64_t index) {
    if (auto it = rec.child_verdicts.find(index); it != rec.child_verdicts.end()) return it->second;
    auto child = world(rec.app->child_world(index), rec.app->child_formula(index));
    Verdict v = child->sat ? Verdict::Sat : Verdict::Unsat;
    rec.child_verdicts.emplace(index, v);
    return v;
  }

  bool finish(WorldOutcome::BranchRecord& rec, const std::vector<std::uint64_t>& alive) {
    tick();
    auto solved = solve_marking(*rec.app, alive, options.on_marking);
    if (!solved.satisfiable) return false;
    rec.weights = std::move(solved.weights);
    for (const auto& [index, weight] : rec.weights) {
      rec.children.emplace(index, memo.at(rec.app->child_formula(index)));
    }
    return true;
  }

  bool mark_full(WorldOutcome::BranchRecord& rec) {
    std::vector<std::uint64_t> alive;
    const auto n = rec.app->child_count();
    for (std::uint64_t i = 0; i < n; ++i) {
      if (child_verdict(rec, i) == Verdict::Sat) alive.push_back(i);
    }
    return finish(rec, alive);
  }

  // Candidate supports of at most L+1 children (L = number of literals),
  // by size then lexicographically; children are evaluated on first use.
  bool mark_bounded(WorldOutcome::BranchRecord& rec) {
    const auto n = rec.app->child_count();
    const auto limit = std::min<std::uint64_t>(rec.app->literals.size() + 1, n);
    for (std::uint64_t size = 1; size <= limit; ++size) {
      std::vector<std::uint64_t> pick(size);
      for (std::uint64_t j = 0; j < size; ++j) pick[j] = j;
      while (true) {
        bool alive = true;
        for (auto idx : pick) {
          if (child_verdict(rec, idx) == Verdict::Unsat) {
            alive = false;
            break;
          }
        }
        if (alive && finish(rec, pick)) return true;
        // next combination
        std::int64_t j = static_cast<std::int64_t>(size) - 1;
        while (j >= 0 && pick[j] == n - size + static_cast<std::uint64_t>(j)) --j;
        if (j < 0) break;
        ++pick[j];
        for (auto m = static_cast<std::uint64_t>(j) + 1; m < size; ++m) pick[m] = pick[m - 1] + 1;
      }
    }
    return false;
  }
};

Engine::Engine(DecideOptions options) : impl_(std::make_unique<Impl>(std::move(options))) {}
Engine::~Engine() = default;

Verdict Engine::mark_world(const WorldId& w, const Formula& a) {
  return impl_->world(w, a)->sat ? Verdict::Sat : Verdict::Unsat;
}

std::uint64_t Engine::steps() const { return impl_->steps; }

namespace {

void extract(const WorldOutcome& o, const WorldId& id, const std::set<std::string>& props,
             SmallModel& m) {
  const auto& rec = o.branches.at(*o.chosen);
  ModelWorld w;
  w.id = id;
  for (const auto& p : props) w.valuation[p] = false;
  for (const auto& n : rec.branch.nodes) {
    if (n.sign == Sign::T && n.formula.is_prop()) w.valuation[n.formula.name()] = true;
  }
  w.evidence = rec.branch.evidence();
  w.probability_literals = rec.branch.probability_literals().size();
  for (const auto& [index, weight] : rec.weights) {
    w.support.emplace_back(id.child(static_cast<std::uint32_t>(index + 1)), weight);
  }
  m.worlds.push_back(std::move(w));
  for (const auto& [index, child] : rec.children) {
    extract(*child, id.child(static_cast<std::uint32_t>(index + 1)), props, m);
  }
}

const char* status_text(BranchStatus s) {
  switch (s) {
    case BranchStatus::Closed: return "closed";
    case BranchStatus::Inconsistent: return "open, justifications inconsistent";
    case BranchStatus::Complete: return "open, complete";
    case BranchStatus::ProbSat: return "open, PROB satisfiable";
    case BranchStatus::ProbUnsat: return "open, PROB unsatisfiable";
    case BranchStatus::Skipped: return "not explored";
  }
  return "?";
}

void write_trace(const WorldOutcome& o, const WorldId& id, int indent, std::ostringstream& os) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << "world " << id.str() << ": T " << print_formula(o.root) << " => "
     << (o.sat ? "sat" : "unsat") << '\n';
  for (std::size_t i = 0; i < o.branches.size(); ++i) {
    const auto& rec = o.branches[i];
    os << pad << "  branch " << i + 1 << ": " << status_text(rec.status) << '\n';
    if (rec.status == BranchStatus::Skipped) continue;
    for (const auto& n : rec.branch.nodes) {
      os << pad << "    " << (n.sign == Sign::T ? "T " : "F ") << print_formula(n.formula) << '\n';
    }
    if (rec.inconsistency) {
      os << pad << "    justified negative: " << print_term(rec.inconsistency->first) << ':'
         << print_formula(rec.inconsistency->second) << '\n';
    }
    if (!rec.app) continue;
    os << pad << "    PROB over";
    for (const auto& p : rec.app->probed) os << " [" << print_formula(p) << ']';
    os << ", " << rec.app->child_count() << " children\n";
    for (const auto& [index, v] : rec.child_verdicts) {
      os << pad << "      " << id.child(static_cast<std::uint32_t>(index + 1)).str() << ' '
         << (v == Verdict::Sat ? "sat" : "unsat");
      if (auto it = rec.weights.find(index); it != rec.weights.end()) os << " weight " << it->second;
      os << '\n';
    }
    for (const auto& [index, child] : rec.children) {
      write_trace(*child, id.child(static_cast<std::uint32_t>(index + 1)), indent + 3, os);
    }
  }
}

}  // namespace

Decision decide(const Formula& a, const DecideOptions& options) {
  Decision d;
  Engine engine(options);
  try {
    auto root = engine.impl_->world(WorldId{}, a);
    d.outcome = root->sat ? Outcome::Sat : Outcome::Unsat;
    if (root->sat) {
      SmallModel m;
      extract(*root, WorldId{}, props_of(a), m);
      d.model = std::move(m);
    }
    if (options.trace) {
      std::ostringstream os;
      write_trace(*root, WorldId{}, 0, os);
      d.trace = os.str();
    }
  } catch (const Aborted& e) {
    d.outcome = Outcome::Aborted;
    d.abort_reason = e.reason;
    d.model.reset();
  }
  d.steps = engine.steps();
  return d;
}

// ---------------------------------------------------------------- models

const ModelWorld* SmallModel::find(const WorldId& id) const {
  for (const auto& w : worlds) {
    if (w.id == id) return &w;
  }
  return nullptr;
}

namespace {

class ModelChecker {
 public:
  explicit ModelChecker(const SmallModel& m) : m_(m) {
    for (std::size_t i = 0; i < m.worlds.size(); ++i) {
      if (!index_.emplace(m.worlds[i].id.str(), i).second)
        throw ContractError("duplicate world " + m.worlds[i].id.str());
    }
    for (const auto& w : m.worlds) {
      std::vector<std::size_t> kids;
      Rational total(0);
      for (const auto& [child, weight] : w.support) {
        auto it = index_.find(child.str());
        if (it == index_.end()) throw ContractError("support of " + w.id.str() + " names missing world " + child.str());
        if (weight.sign() < 0) throw ContractError("negative weight at " + w.id.str());
        total += weight;
        kids.push_back(it->second);
      }
      if (!w.support.empty() && total != Rational(1))
        throw ContractError("weights at " + w.id.str() + " sum to " + total.str());
      children_.push_back(std::move(kids));
      oracles_.push_back(std::make_unique<ev::EvidenceOracle>(w.evidence));
    }
  }

  bool eval(std::size_t w, const Formula& f) {
    Key key{w, f};
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool value = false;
    switch (f.kind()) {
      case Formula::Kind::Prop: {
        const auto& val = m_.worlds[w].valuation;
        auto it = val.find(f.name());
        value = it != val.end() && it->second;
        break;
      }
      case Formula::Kind::Not: value = !eval(w, f.body()); break;
      case Formula::Kind::And: value = eval(w, f.left()) && eval(w, f.right()); break;
      case Formula::Kind::Just: value = oracles_[w]->member(f.term(), f.body()); break;
      case Formula::Kind::PGeq: {
        Rational mass(0);
        const auto& support = m_.worlds[w].support;
        if (support.empty()) {
          if (eval(w, f.body())) mass = Rational(1);
        } else {
          for (std::size_t i = 0; i < support.size(); ++i) {
            if (eval(children_[w][i], f.body())) mass += support[i].second;
          }
        }
        value = mass >= f.threshold();
        break;
      }
    }
    memo_.emplace(std::move(key), value);
    return value;
  }

  // Narrows a failure down through conjunctions and negations.
  std::pair<std::size_t, Formula> locate(std::size_t w, const Formula& f, bool expected) {
    if (f.is_not()) return locate(w, f.body(), !expected);
    if (f.is_and() && expected) {
      if (!eval(w, f.left())) return locate(w, f.left(), true);
      return locate(w, f.right(), true);
    }
    return {w, expected ? f : Formula::negation(f)};
  }

 private:
  struct Key {
    std::size_t world;
    Formula formula;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.formula.hash() * 31 + k.world; }
  };

  const SmallModel& m_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::unique_ptr<ev::EvidenceOracle>> oracles_;
  std::unordered_map<Key, bool, KeyHash> memo_;
};

}  // namespace

VerifyResult verify_model(const SmallModel& m, const Formula& a) {
  if (m.worlds.empty()) throw ContractError("model has no worlds");
  ModelChecker checker(m);
  if (checker.eval(0, a)) return VerifyResult{};
  auto [w, sub] = checker.locate(0, a, true);
  return VerifyResult{false, m.worlds[w].id, sub};
}

std::string to_json(const SmallModel& m) {
  using nlohmann::ordered_json;
  ordered_json worlds = ordered_json::array();
  for (const auto& w : m.worlds) {
    ordered_json jw;
    jw["id"] = w.id.str();
    jw["valuation"] = ordered_json::object();
    for (const auto& [p, v] : w.valuation) jw["valuation"][p] = v;
    jw["support"] = ordered_json::array();
    for (const auto& [child, weight] : w.support) {
      jw["support"].push_back({{"child", child.str()}, {"weight", weight.str()}});
    }
    auto pairs = [](const std::vector<std::pair<Term, Formula>>& xs) {
      ordered_json arr = ordered_json::array();
      for (const auto& [t, f] : xs) arr.push_back({print_term(t), print_formula(f)});
      return arr;
    };
    jw["evidence"] = {{"positives", pairs(w.evidence.positives)},
                      {"negatives", pairs(w.evidence.negatives)}};
    jw["probability_literals"] = w.probability_literals;
    worlds.push_back(std::move(jw));
  }
  ordered_json out;
  out["worlds"] = std::move(worlds);
  return out.dump();
}

SmallModel model_from_json(const std::string& text) {
  SmallModel m;
  try {
    auto j = nlohmann::json::parse(text);
    for (const auto& jw : j.at("worlds")) {
      ModelWorld w;
      auto id = WorldId::parse(jw.at("id").get<std::string>());
      if (!id) throw std::invalid_argument("bad world id");
      w.id = *id;
      if (jw.contains("valuation")) {
        for (const auto& [p, v] : jw.at("valuation").items()) w.valuation[p] = v.get<bool>();
      }
      if (jw.contains("support")) {
        for (const auto& s : jw.at("support")) {
          auto child = WorldId::parse(s.at("child").get<std::string>());
          if (!child) throw std::invalid_argument("bad child id");
          w.support.emplace_back(*child, Rational::parse(s.at("weight").get<std::string>()));
        }
      }
      if (jw.contains("evidence")) {
        const auto& e = jw.at("evidence");
        auto read = [](const nlohmann::json& arr, std::vector<std::pair<Term, Formula>>& out) {
          for (const auto& pr : arr) {
            out.emplace_back(parse_term(pr.at(0).get<std::string>()),
                             parse_formula(pr.at(1).get<std::string>()));
          }
        };
        if (e.contains("positives")) read(e.at("positives"), w.evidence.positives);
        if (e.contains("negatives")) read(e.at("negatives"), w.evidence.negatives);
      }
      if (jw.contains("probability_literals"))
        w.probability_literals = jw.at("probability_literals").get<std::size_t>();
      m.worlds.push_back(std::move(w));
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("malformed model: ") + e.what());
  }
  return m;
}

}  // namespace ppj::tab
