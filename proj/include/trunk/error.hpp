#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trunk {

// Base class for everything thrown by the library. Each condition gets its
// own type so callers can react precisely; the message is always printable
// as-is in CLI reports.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OrderExceedsCap : Error {
  explicit OrderExceedsCap(std::size_t cap)
      : Error("enumeration exceeded the element cap of " + std::to_string(cap)),
        cap(cap) {}
  std::size_t cap;
};

struct NotTransitive : Error {
  explicit NotTransitive(const std::string& what = "group is not transitive")
      : Error(what) {}
};

struct DegreeTooLarge : Error {
  DegreeTooLarge(int degree, int limit)
      : Error("degree " + std::to_string(degree) +
              " exceeds the brute-force limit of " + std::to_string(limit)) {}
};

struct Overflow : Error {
  explicit Overflow(const std::string& what = "128-bit overflow") : Error(what) {}
};

struct InvalidAddress : Error {
  explicit InvalidAddress(const std::string& what) : Error(what) {}
};

struct ProfileMismatch : Error {
  explicit ProfileMismatch(const std::string& what) : Error(what) {}
};

struct ChildNotFixed : Error {
  explicit ChildNotFixed(int child)
      : Error("root label does not fix child " + std::to_string(child)) {}
};

struct NotPrefixFree : Error {
  NotPrefixFree(const std::string& a, const std::string& b)
      : Error("leaf " + a + " is a prefix of leaf " + b) {}
};

struct NotComplete : Error {
  explicit NotComplete(const std::string& kraft_sum)
      : Error("leaf set is not complete: Kraft sum = " + kraft_sum) {}
};

struct LeafAbsent : Error {
  explicit LeafAbsent(const std::string& addr)
      : Error("address " + addr + " is not a leaf of the set") {}
};

struct NotARefinement : Error {
  explicit NotARefinement(const std::string& what) : Error(what) {}
};

struct LevelTooShallow : Error {
  LevelTooShallow(int level, int needed)
      : Error("level " + std::to_string(level) + " is shallower than the element's total depth " +
              std::to_string(needed)) {}
};

struct IncompatibleParameters : Error {
  explicit IncompatibleParameters(const std::string& what) : Error(what) {}
};

struct RecipeDegenerate : Error {
  explicit RecipeDegenerate(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace trunk
