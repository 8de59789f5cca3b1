#pragma once

#include <stdexcept>
#include <string>

namespace plab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Shape or size of an argument is wrong for the operation.
struct DimensionError : Error { using Error::Error; };

// A mathematical precondition fails (zero input, not idempotent, ...).
struct PreconditionError : Error { using Error::Error; };

// Inversion of a singular matrix, division by zero.
struct SingularError : Error { using Error::Error; };

// Sylvester equation is not uniquely solvable: spectra of a and -b meet.
struct SpectraError : Error { using Error::Error; };

// A reconstruction probe contradicts the canonical-map shape. `step` names
// the pipeline step whose contract the oracle broke.
struct StepViolation : Error {
    StepViolation(std::string step_, const std::string& what)
        : Error("step " + step_ + ": " + what), step(std::move(step_)) {}
    std::string step;
};

// Oracle broke its own contract (table miss, wrong output shape, ...).
struct OracleError : Error { using Error::Error; };

// distinguish() ran out of probes with the operands still unseparated.
// Deliberately distinct from an "equal" verdict.
struct BudgetExhausted : Error {
    BudgetExhausted(long probes_, const std::string& what)
        : Error(what), probes(probes_) {}
    long probes;
};

} // namespace plab
