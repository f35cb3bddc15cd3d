#pragma once

#include <stdexcept>
#include <string>

namespace normsys {

// Thrown when an input file (matrix / function / hypergraph) is malformed.
// Carries a 1-based line number when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string msg, std::size_t line = 0)
        : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Thrown when an enumeration / search would exceed its configured budget.
class BudgetExceeded : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when operands disagree on field, group, or shape.
class DimensionMismatch : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an operation is invoked outside its documented domain
// (e.g. an odd-girth construction on a system of even girth).
class NotApplicable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by the rank <= 2 classifier when given a system of higher rank.
class RankTooHigh : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a falsifier's preconditions hold but its search space is
// exhausted without producing a certified violation.  The message carries
// diagnostics; callers report this as inconclusive, never as a pass.
class SearchFailed : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown by cycle-space computations when the input is not a 2-uniform
// hypergraph.
class NotAGraph : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Enumeration / search budgets.  All exact enumerations check these before
// starting and throw BudgetExceeded instead of running unbounded loops.
struct Budgets {
    std::uint64_t max_rowspace = 10'000'000;     // row-space vectors (q^m)
    std::uint64_t max_table = 1u << 20;          // dense table size (q^n)
    std::uint64_t max_perm_nodes = 1'000'000;    // canonical-form search nodes
    std::uint64_t max_enum = 100'000'000;        // solution/frequency tuples
};

struct Tolerances {
    double rel = 1e-9;   // relative, for density comparisons
    double abs = 1e-12;  // absolute, for transforms and identities
};

}  // namespace normsys
