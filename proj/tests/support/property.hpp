#pragma once

// Minimal property-testing helpers: a seeded generator of random parameter
// values and a loop that reports the failing case number.

#include <cmath>
#include <cstdint>
#include <random>

#include "doctest.h"

namespace prop {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }

    /// Log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi)
    {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }

    std::uint64_t bits() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

template <class F>
void for_all(int cases, std::uint64_t seed, F&& body)
{
    Gen g(seed);
    for (int i = 0; i < cases; ++i) {
        CAPTURE(i);
        body(g);
    }
}

}  // namespace prop
