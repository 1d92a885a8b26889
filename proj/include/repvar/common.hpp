#pragma once

// Shared vocabulary: element indices, exact numbers, and the error hierarchy.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace repvar {

using element_t = std::uint32_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input. `position` is a 0-based character offset when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position = npos)
        : Error(position == npos ? what : what + " (at offset " + std::to_string(position) + ")"),
          position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// The requested computation exceeds a configured work budget.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, double required, double budget)
        : Error(what + ": requires ~" + std::to_string(required) + " units, budget " +
                std::to_string(budget)),
          required_(required), budget_(budget) {}

    double required() const noexcept { return required_; }
    double budget() const noexcept { return budget_; }

private:
    double required_;
    double budget_;
};

/// Input violates a structural requirement (group axioms, graph shape, move preconditions).
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// A floating-point quantity that must be (near-)integral or orthogonal failed its residual gate.
class NumericValidationError : public Error {
public:
    using Error::Error;
};

inline constexpr std::size_t kDefaultOrderBudget = 2000;
inline constexpr std::size_t kTableThreshold = 512;
inline constexpr double kDefaultEvalBudget = 1e9;
inline constexpr double kOrthogonalityTol = 1e-9;
inline constexpr double kRoundingTol = 1e-6;

/// Worker count: `MP_THREADS` if set, else the hardware concurrency (at least 1).
inline unsigned default_threads() {
    if (const char* env = std::getenv("MP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1u : hw;
}

/// Evaluation budget: `MP_BUDGET` if set, else the library default.
inline double default_eval_budget() {
    if (const char* env = std::getenv("MP_BUDGET")) {
        const double v = std::strtod(env, nullptr);
        if (v > 0) return v;
    }
    return kDefaultEvalBudget;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
    BigInt r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

inline Rational rpow(const Rational& base, int exp) {
    Rational r = 1;
    const Rational b = exp < 0 ? Rational(1) / base : base;
    for (int i = 0; i < (exp < 0 ? -exp : exp); ++i) r *= b;
    return r;
}

}  // namespace repvar
