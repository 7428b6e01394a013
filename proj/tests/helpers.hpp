#pragma once

#include <vector>

#include "polymod/combinatorics.hpp"
#include "polymod/error.hpp"

// Runs `f` and returns the code of the polymod::Error it throws.
template <typename F>
polymod::ErrorCode error_code_of(F&& f) {
    try {
        f();
    } catch (const polymod::Error& e) {
        return e.code();
    }
    throw std::logic_error("expected a polymod::Error");
}

inline std::vector<double> raw(const polymod::WeightVector& theta) {
    return {theta.values().begin(), theta.values().end()};
}
