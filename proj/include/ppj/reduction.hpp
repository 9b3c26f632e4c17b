#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "ppj/syntax.hpp"

namespace ppj {

/// Formula of the modal logic D over {Prop, Not, And, Box}.
class ModalFormula {
 public:
  enum class Kind : std::uint8_t { Prop, Not, And, Box };

  static ModalFormula prop(std::string name);
  static ModalFormula negation(ModalFormula body);
  static ModalFormula conjunction(ModalFormula left, ModalFormula right);
  static ModalFormula box(ModalFormula body);

  [[nodiscard]] Kind kind() const;
  [[nodiscard]] const std::string& name() const;
  [[nodiscard]] const ModalFormula& body() const;  // Not, Box
  [[nodiscard]] const ModalFormula& left() const;  // And
  [[nodiscard]] const ModalFormula& right() const;

  friend bool operator==(const ModalFormula& a, const ModalFormula& b);

 private:
  struct Node;
  explicit ModalFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

ModalFormula modal_implies(const ModalFormula& a, const ModalFormula& b);
ModalFormula modal_or(const ModalFormula& a, const ModalFormula& b);
ModalFormula diamond(const ModalFormula& a);  // ~[]~a

std::size_t size(const ModalFormula& a);

/// Replaces every box by P>=1; the result is satisfiable in a measurable
/// model iff the input is satisfiable on serial Kripke frames.
Formula translate_d(const ModalFormula& a);

}  // namespace ppj
