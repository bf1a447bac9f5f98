#ifndef VBETTI_TESTS_SUPPORT_HPP
#define VBETTI_TESTS_SUPPORT_HPP

#include <optional>

#include "vbetti/error.hpp"

/// Code of the vbetti::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<vbetti::ErrorCode> error_code_of(F&& f) {
    try {
        f();
    } catch (const vbetti::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

#endif
