#pragma once
#include <stdexcept>
#include <string>

// Error taxonomy shared by the library and the command line driver.  The
// driver maps each class to a distinct process exit code so scripted runs can
// tell bad input, mathematically infeasible parameters, and blown resource
// budgets apart.
namespace zetalab {

// malformed or contradictory configuration -> exit code 2
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// parameters that are syntactically fine but mathematically unusable -> exit 3
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// resource budget exceeded (sieve memory, enumeration caps, ...) -> exit 4
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_config = 2;
inline constexpr int exit_infeasible = 3;
inline constexpr int exit_budget = 4;

}  // namespace zetalab
