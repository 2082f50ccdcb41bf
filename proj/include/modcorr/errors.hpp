// ---------------------------------------------------------------------------
// Failure taxonomy shared by every module.  The CLI maps each class to a
// distinct process exit code, so library code must throw these rather than
// plain std::runtime_error.
// ---------------------------------------------------------------------------
#pragma once

#include <stdexcept>
#include <string>

namespace modcorr {

// Violated operation precondition (bad domain, unsatisfied range constraint).
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Requested work exceeds a hard cost ceiling; nothing was computed.
struct cost_guard_error : std::runtime_error {
    explicit cost_guard_error(const std::string& what) : std::runtime_error(what) {}
};

// Certified rounding-error bound exceeds the advertised tolerance.
struct precision_loss_error : std::runtime_error {
    explicit precision_loss_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace modcorr
