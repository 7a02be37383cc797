#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>

#include "ripp/core.hpp"

// Shared test utilities. The sweep locator below is the independent oracle
// for reversal horizons: it sees only prefer()'s sign, never a closed form.

namespace testutil {

struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(eng);
    }
};

/// Locate the horizon at which prefer() stops choosing the earlier payment,
/// by doubling/halving to bracket the flip and then refining a 32-cell grid
/// until the bracket is narrower than `resolution`. Scans cells from the
/// small end, so it reports the first flip.
inline double sweep_reversal_horizon(const ripp::Specification& spec, double delay, double dx_a,
                                     double dx_b, double wealth, double resolution) {
    const auto prefers_earlier = [&](double h) {
        const ripp::Problem p(0.0, h, h + delay, dx_a, dx_b, wealth);
        return ripp::prefer(spec, p).preference == ripp::Preference::EarlierPreferred;
    };

    double lo = delay;
    double hi = delay;
    int guard = 0;
    while (!prefers_earlier(lo)) {
        lo /= 2.0;
        if (++guard > 2000) throw std::runtime_error("sweep: no earlier-preferred region found");
    }
    guard = 0;
    while (prefers_earlier(hi)) {
        hi *= 2.0;
        if (++guard > 2000) throw std::runtime_error("sweep: no later-preferred region found");
    }

    while (hi - lo > resolution) {
        const int cells = 32;
        const double step = (hi - lo) / cells;
        double new_lo = lo;
        double new_hi = hi;
        for (int i = 1; i <= cells; ++i) {
            const double x = i == cells ? hi : lo + i * step;
            if (prefers_earlier(x)) {
                new_lo = x;
            } else {
                new_hi = x;
                break;
            }
        }
        lo = new_lo;
        hi = new_hi;
    }
    return 0.5 * (lo + hi);
}

}  // namespace testutil
