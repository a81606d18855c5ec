#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pmx {

using Complex = std::complex<double>;

/// Where a series lives: Zero means exponents increase from the leading
/// index (series in z), Infinity means they decrease (series in 1/z).
enum class Center { Zero, Infinity };

inline long direction(Center c) { return c == Center::Zero ? 1 : -1; }

inline const char* center_name(Center c) {
    return c == Center::Zero ? "zero" : "infinity";
}

/// Comparison thresholds plus the stopping threshold for infinite sums.
struct Tolerance {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double tail_tol = 1e-15;
};

inline bool tolerance_valid(const Tolerance& t) {
    return std::isfinite(t.abs_tol) && std::isfinite(t.rel_tol) &&
           std::isfinite(t.tail_tol) && t.abs_tol >= 0 && t.rel_tol >= 0 &&
           t.tail_tol >= 0 && t.abs_tol + t.rel_tol > 0;
}

/// Error thrown when an operation's domain preconditions are violated.
/// `name()` is the stable identifier (e.g. "CenterMismatch") that the CLI
/// reports and tests match on.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string name, const std::string& detail)
        : std::runtime_error(name + ": " + detail), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const char* name, const std::string& detail) {
    throw DomainError(name, detail);
}

}  // namespace pmx
