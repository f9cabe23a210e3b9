#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rtprof {

// Raised when an argument violates a documented precondition.
class validation_error : public std::invalid_argument {
public:
    explicit validation_error(const std::string& what)
        : std::invalid_argument(what) {}
};

// Raised when a construction or enumeration would exceed a configured
// budget. The message carries the projected size so callers can shrink
// their parameters.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::uint64_t projected,
                 std::uint64_t limit)
        : std::runtime_error(what + " (projected " + std::to_string(projected) +
                             ", budget " + std::to_string(limit) + ")"),
          projected(projected),
          limit(limit) {}

    std::uint64_t projected;
    std::uint64_t limit;
};

// Budgets guarding graph constructors (vertices) and pair enumeration
// (ordered vertex pairs). The environment variable RTPROF_BUDGET
// overrides the defaults: either a bare integer (vertex budget) or a
// comma list such as "vertex=4000000,work=2000000000".
struct Budgets {
    std::uint64_t vertex = 2'000'000;
    std::uint64_t work = 1'000'000'000;

    static Budgets from_env();
};

}  // namespace rtprof
