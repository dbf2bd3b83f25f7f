#pragma once

#include <stdexcept>
#include <string>

namespace intres {

/// A resolution kernel stayed nonzero past the depth budget. Signals a defect
/// or a too-small budget, never a mathematical possibility at unlimited depth.
struct depth_exceeded : std::runtime_error {
    explicit depth_exceeded(const std::string& what) : std::runtime_error(what) {}
};

/// A join required by an operation does not exist in the interval order.
struct join_missing : std::runtime_error {
    explicit join_missing(const std::string& what) : std::runtime_error(what) {}
};

/// An internal invariant failed; indicates a bug, not bad input.
struct internal_inconsistency : std::logic_error {
    explicit internal_inconsistency(const std::string& what) : std::logic_error(what) {}
};

}  // namespace intres
