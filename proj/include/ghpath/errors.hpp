#pragma once

#include <stdexcept>
#include <string>

namespace ghpath {

// Error taxonomy shared by the library and the CLI. The CLI maps each kind to
// a process exit code: validation 2, precondition 3, verification 4, budget 5.
enum class errc {
  validation,    // malformed input: bad table, bad label, bad scalar, bad file
  precondition,  // arguments violate a documented requirement of the operation
  verification,  // a certified property failed its re-check
  budget,        // instance exceeds a configured search budget
};

class error : public std::runtime_error {
public:
  error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  errc kind() const { return kind_; }

private:
  errc kind_;
};

[[noreturn]] inline void fail_validation(const std::string& what) { throw error(errc::validation, what); }
[[noreturn]] inline void fail_precondition(const std::string& what) { throw error(errc::precondition, what); }
[[noreturn]] inline void fail_verification(const std::string& what) { throw error(errc::verification, what); }
[[noreturn]] inline void fail_budget(const std::string& what) { throw error(errc::budget, what); }

} // namespace ghpath
