#pragma once

#include <stdexcept>
#include <string>

namespace nilorbit {

/// Error categories surfaced across the library and mapped to CLI exit codes.
/// `input` covers malformed data and precondition violations (exit 2);
/// `invariant` covers internal consistency failures that indicate the
/// algorithm's structural assumptions broke down on the given input (exit 3).
enum class ErrorKind {
    parse,
    triangularity_violation,
    jacobi_violation,
    algebra_mismatch,
    arity_mismatch,
    zero_slope,
    odd_size,
    inconsistent_index_set,
    section_solve_invariant_violation,
    not_heisenberg,
    not_generic_layer,
    quadrature_budget_exceeded,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

    /// true for errors callers caused (bad input, violated precondition),
    /// false for internal invariant violations.
    bool is_input_error() const {
        return kind_ != ErrorKind::section_solve_invariant_violation &&
               kind_ != ErrorKind::quadrature_budget_exceeded;
    }

    static const char *kind_name(ErrorKind k) {
        switch (k) {
        case ErrorKind::parse: return "ParseError";
        case ErrorKind::triangularity_violation: return "TriangularityViolation";
        case ErrorKind::jacobi_violation: return "JacobiViolation";
        case ErrorKind::algebra_mismatch: return "AlgebraMismatch";
        case ErrorKind::arity_mismatch: return "ArityMismatch";
        case ErrorKind::zero_slope: return "ZeroSlope";
        case ErrorKind::odd_size: return "OddSize";
        case ErrorKind::inconsistent_index_set: return "InconsistentIndexSet";
        case ErrorKind::section_solve_invariant_violation:
            return "SectionSolveInvariantViolation";
        case ErrorKind::not_heisenberg: return "NotHeisenberg";
        case ErrorKind::not_generic_layer: return "NotGenericLayer";
        case ErrorKind::quadrature_budget_exceeded: return "QuadratureBudgetExceeded";
        }
        return "Error";
    }

    const char *kind_name() const { return kind_name(kind_); }

  private:
    ErrorKind kind_;
};

} // namespace nilorbit
