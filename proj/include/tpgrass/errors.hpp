#pragma once

#include <stdexcept>
#include <string>

namespace tpgrass {

// Raised when an exact-mode cross-check that is a theorem fails; indicates a bug,
// never bad input.
class internal_check_error : public std::logic_error {
 public:
  explicit internal_check_error(const std::string& what) : std::logic_error(what) {}
};

// A flag-chain precondition (condition (i) or (ii)) does not hold for the input.
class flag_precondition_error : public std::invalid_argument {
 public:
  flag_precondition_error(std::string tag, const std::string& what)
      : std::invalid_argument(what), tag_(std::move(tag)) {}
  const std::string& tag() const { return tag_; }

 private:
  std::string tag_;
};

// Minor enumeration is exponential; inputs beyond the guard are rejected.
class size_limit_error : public std::invalid_argument {
 public:
  explicit size_limit_error(const std::string& what) : std::invalid_argument(what) {}
};

// Power iteration did not settle within its iteration budget.
class convergence_failure : public std::runtime_error {
 public:
  explicit convergence_failure(const std::string& what) : std::runtime_error(what) {}
};

// A flow trajectory lost a Plucker sign (margin collapsed below tolerance).
class boundary_contact_error : public std::runtime_error {
 public:
  boundary_contact_error(int step, const std::string& what)
      : std::runtime_error(what), step_(step) {}
  int step() const { return step_; }

 private:
  int step_ = 0;
};

// A sampler exhausted its retry budget.
class generation_failure : public std::runtime_error {
 public:
  explicit generation_failure(const std::string& what) : std::runtime_error(what) {}
};

// A verification pipeline was handed an input outside its hypothesis.
class hypothesis_not_met : public std::invalid_argument {
 public:
  explicit hypothesis_not_met(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace tpgrass
