#pragma once

#include <optional>

#include "doctest.h"
#include "star/error.hpp"

// Runs body and reports the library error code it threw, if any.
template <class F>
std::optional<star::Errc> error_of(F&& body) {
    try {
        body();
    } catch (const star::Error& e) {
        return e.code();
    }
    return std::nullopt;
}

#define CHECK_ERRC(expr, code) CHECK(error_of([&] { (void)(expr); }) == std::optional<star::Errc>(code))
