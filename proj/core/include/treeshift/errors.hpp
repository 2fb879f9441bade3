#ifndef TREESHIFT_ERRORS_HPP
#define TREESHIFT_ERRORS_HPP

// Error model shared by every module.
//
// Three failure classes, chosen because callers react to them differently:
//
//   Parse   — the input document is malformed (bad JSON, unknown symbol,
//             arity mismatch, duplicate entries).  A caller can fix the input.
//   Domain  — the input is well-formed but the requested computation has no
//             answer (empty shift after pruning, iteration that refuses to
//             converge, pattern not present).
//   Budget  — the computation would exceed a configured resource bound
//             (enumeration budget, digit budget, dimension cap).  A caller can
//             raise the bound or pick a smaller instance.
//
// The CLI maps these onto process exit codes (2 / 1 / 3); library users can
// switch on kind() without string matching.

#include <stdexcept>
#include <string>

namespace treeshift {

enum class ErrorKind { Parse, Domain, Budget };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void throw_parse(const std::string& message) {
  throw Error(ErrorKind::Parse, message);
}
[[noreturn]] inline void throw_domain(const std::string& message) {
  throw Error(ErrorKind::Domain, message);
}
[[noreturn]] inline void throw_budget(const std::string& message) {
  throw Error(ErrorKind::Budget, message);
}

}  // namespace treeshift

#endif  // TREESHIFT_ERRORS_HPP
