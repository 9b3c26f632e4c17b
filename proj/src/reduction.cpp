#include "ppj/reduction.hpp"

#include <optional>

namespace ppj {

struct ModalFormula::Node {
  Kind kind;
  std::string name;
  std::optional<ModalFormula> a;
  std::optional<ModalFormula> b;
};

ModalFormula ModalFormula::prop(std::string name) {
  return ModalFormula(std::make_shared<const Node>(Node{Kind::Prop, std::move(name), {}, {}}));
}

ModalFormula ModalFormula::negation(ModalFormula body) {
  return ModalFormula(std::make_shared<const Node>(Node{Kind::Not, {}, std::move(body), {}}));
}

ModalFormula ModalFormula::conjunction(ModalFormula left, ModalFormula right) {
  return ModalFormula(
      std::make_shared<const Node>(Node{Kind::And, {}, std::move(left), std::move(right)}));
}

ModalFormula ModalFormula::box(ModalFormula body) {
  return ModalFormula(std::make_shared<const Node>(Node{Kind::Box, {}, std::move(body), {}}));
}

ModalFormula::Kind ModalFormula::kind() const { return node_->kind; }
const std::string& ModalFormula::name() const { return node_->name; }
const ModalFormula& ModalFormula::body() const { return *node_->a; }
const ModalFormula& ModalFormula::left() const { return *node_->a; }
const ModalFormula& ModalFormula::right() const { return *node_->b; }

bool operator==(const ModalFormula& a, const ModalFormula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ModalFormula::Kind::Prop:
      return a.name() == b.name();
    case ModalFormula::Kind::Not:
    case ModalFormula::Kind::Box:
      return a.body() == b.body();
    case ModalFormula::Kind::And:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

ModalFormula modal_implies(const ModalFormula& a, const ModalFormula& b) {
  return ModalFormula::negation(ModalFormula::conjunction(a, ModalFormula::negation(b)));
}

ModalFormula modal_or(const ModalFormula& a, const ModalFormula& b) {
  return ModalFormula::negation(
      ModalFormula::conjunction(ModalFormula::negation(a), ModalFormula::negation(b)));
}

ModalFormula diamond(const ModalFormula& a) {
  return ModalFormula::negation(ModalFormula::box(ModalFormula::negation(a)));
}

std::size_t size(const ModalFormula& a) {
  switch (a.kind()) {
    case ModalFormula::Kind::Prop:
      return 1;
    case ModalFormula::Kind::Not:
    case ModalFormula::Kind::Box:
      return 1 + size(a.body());
    case ModalFormula::Kind::And:
      return 1 + size(a.left()) + size(a.right());
  }
  return 0;
}

Formula translate_d(const ModalFormula& a) {
  switch (a.kind()) {
    case ModalFormula::Kind::Prop:
      return Formula::prop(a.name());
    case ModalFormula::Kind::Not:
      return Formula::negation(translate_d(a.body()));
    case ModalFormula::Kind::And:
      return Formula::conjunction(translate_d(a.left()), translate_d(a.right()));
    case ModalFormula::Kind::Box:
      return Formula::pgeq(Rational(1), translate_d(a.body()));
  }
  throw std::logic_error("translate_d: unhandled node");
}

}  // namespace ppj
