#pragma once

#include <stdexcept>
#include <string>

namespace ppj {

/// A caller broke an operation's precondition.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace ppj
