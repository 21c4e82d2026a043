#pragma once

// Shared assertion helpers for error-code checks.

#include <functional>
#include <stdexcept>

#include "semacc/error.hpp"

namespace checks {

// Runs fn, which must throw semacc::Error, and returns the code it threw.
inline semacc::Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const semacc::Error& e) {
        return e.code();
    }
    throw std::logic_error("expected a semacc::Error, none was thrown");
}

}  // namespace checks
