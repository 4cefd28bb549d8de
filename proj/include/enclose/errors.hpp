#pragma once

#include <stdexcept>
#include <string>

namespace enclose {

// A construction was refused because a counting condition fails; the message
// names the violated bound.
class infeasible_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parameters fall outside the regimes the decision procedure covers. The
// library refuses such instances instead of guessing.
class out_of_regime_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void check_arg(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

// Internal invariant; a failure here is a bug in the library, not caller error.
inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) throw std::logic_error(msg);
}

}  // namespace enclose
