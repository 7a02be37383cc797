#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "ripp/core.hpp"

// Root finding for the adaptive/multiplicative (case D) quantities that have
// no closed form: the general indifference ratio, the preference-reversal
// horizon, and the wealth threshold. Everything here is deterministic: the
// same inputs and configuration produce bit-identical results.

namespace ripp::solvers {

struct NoSignChange : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MaxIterations : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Tolerances and bracketing policy shared by all solver entry points.
struct RootConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_iter = 200;
    double bracket_expansion_factor = 2.0;
    int max_bracket_expansions = 60;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0))
            throw std::invalid_argument("ripp::solvers::RootConfig: tolerances must be positive");
        if (max_iter <= 0)
            throw std::invalid_argument("ripp::solvers::RootConfig: max_iter must be positive");
        if (!(bracket_expansion_factor > 1))
            throw std::invalid_argument(
                "ripp::solvers::RootConfig: bracket expansion factor must exceed 1");
        if (max_bracket_expansions < 0)
            throw std::invalid_argument(
                "ripp::solvers::RootConfig: max bracket expansions must be nonnegative");
    }
};

namespace detail {

/// Root plus the sign-changing bracket it was isolated in.
struct RootResult {
    double root;
    double lo, hi;
    double f_lo, f_hi;
};

template <typename F>
RootResult solve_root_core(F&& f, double lo, double hi, const RootConfig& cfg) {
    cfg.validate();
    if (!(std::isfinite(lo) && std::isfinite(hi)))
        throw std::invalid_argument("ripp::solvers::solve_root: bracket must be finite");
    if (lo > hi) std::swap(lo, hi);

    double f_lo = f(lo);
    double f_hi = f(hi);
    if (std::isnan(f_lo) || std::isnan(f_hi))
        throw std::invalid_argument("ripp::solvers::solve_root: f is NaN at a bracket end");
    if (f_lo == 0.0) return {lo, lo, lo, 0.0, 0.0};
    if (f_hi == 0.0) return {hi, hi, hi, 0.0, 0.0};

    double width = hi - lo;
    for (int n = 0; std::signbit(f_lo) == std::signbit(f_hi); ++n) {
        if (n >= cfg.max_bracket_expansions)
            throw NoSignChange("ripp::solvers::solve_root: no sign change within bracket after " +
                               std::to_string(cfg.max_bracket_expansions) + " expansions");
        width *= cfg.bracket_expansion_factor;
        if (n % 2 == 0) {
            hi = lo + width;
            f_hi = f(hi);
            if (f_hi == 0.0) return {hi, hi, hi, 0.0, 0.0};
        } else {
            lo = hi - width;
            f_lo = f(lo);
            if (f_lo == 0.0) return {lo, lo, lo, 0.0, 0.0};
        }
    }

    for (int iter = 0; iter < cfg.max_iter; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double tol = cfg.abs_tol + cfg.rel_tol * std::abs(mid);
        if (hi - lo <= 2.0 * tol) return {mid, lo, hi, f_lo, f_hi};

        double x = mid;
        if (iter % 2 == 1 && f_hi != f_lo) {
            const double s = hi - f_hi * (hi - lo) / (f_hi - f_lo);
            if (s > lo + 0.5 * tol && s < hi - 0.5 * tol) x = s;
        }
        const double f_x = f(x);
        if (f_x == 0.0) return {x, x, x, 0.0, 0.0};
        if (std::isnan(f_x))
            throw std::invalid_argument("ripp::solvers::solve_root: f returned NaN");
        if (std::signbit(f_x) == std::signbit(f_lo)) {
            lo = x;
            f_lo = f_x;
        } else {
            hi = x;
            f_hi = f_x;
        }
    }
    throw MaxIterations("ripp::solvers::solve_root: not converged after " +
                        std::to_string(cfg.max_iter) + " iterations");
}

/// Continue plain bisection past interval convergence until the residual
/// drops below `target` or the bracket is exhausted at double resolution.
/// Needed where the objective's slope blows up (1/x near tiny roots): an
/// abs_tol-wide bracket there can still carry a sizable residual.
template <typename F>
double polish_to_residual(F&& f, RootResult r, double target) {
    double x = r.root;
    double f_x = r.lo == r.hi ? 0.0 : f(x);
    double lo = r.lo, hi = r.hi, f_lo = r.f_lo;
    while (std::abs(f_x) > target) {
        if (std::signbit(f_x) == std::signbit(f_lo)) {
            lo = x;
            f_lo = f_x;
        } else {
            hi = x;
        }
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        x = mid;
        f_x = f(x);
    }
    return x;
}

}  // namespace detail

/** Find a root of f on [lo, hi].
 *
 * If f(lo) and f(hi) share a sign the bracket is first grown geometrically
 * (alternating ends, width scaled by bracket_expansion_factor each step); if
 * no sign change appears within max_bracket_expansions steps, NoSignChange
 * is thrown. The root is then isolated by bisection with a secant step
 * attempted on alternate iterations, so the bracket provably halves at least
 * every other iteration. Returns x once f(x) == 0 exactly or the bracket
 * width falls below abs_tol + rel_tol * |x|; throws MaxIterations otherwise.
 */
template <typename F>
double solve_root(F&& f, double lo, double hi, const RootConfig& cfg = {}) {
    return detail::solve_root_core(f, lo, hi, cfg).root;
}

namespace detail {

/// Residual bound honored by every solver entry point below: re-evaluating
/// g_a - g_b at a returned threshold stays within this, in rate units.
inline constexpr double kResidualBound = 1e-9;

/// Case-D growth-rate difference g_a - g_b with the shared background rate
/// cancelled analytically. Subtracting the two excess terms directly keeps
/// full precision when payments are tiny relative to wealth.
inline double case_d_excess_difference(double dx_a, double dx_b, double horizon, double delay,
                                       double wealth, double r) {
    return multiplicative_excess(dx_a, wealth, horizon, horizon, r) -
           multiplicative_excess(dx_b, wealth, horizon + delay, horizon + delay, r);
}

/// Grow a one-sided geometric bracket from `seed` along the positive axis in
/// the direction that chases f's sign change, and return the bracketing
/// interval adjacent to the last same-signed point (the first sign change
/// encountered when walking away from the seed).
template <typename F>
std::pair<double, double> directed_bracket(F&& f, double seed, const RootConfig& cfg,
                                           const char* what) {
    const double f_seed = f(seed);
    if (f_seed == 0.0) return {seed, seed};
    // Callers orient f so it is positive near 0+ and negative at infinity:
    // a positive seed value means the crossing lies above the seed.
    double inner = seed;
    double outer = seed;
    if (f_seed > 0) {
        for (int n = 0; n < cfg.max_bracket_expansions; ++n) {
            inner = outer;
            outer *= cfg.bracket_expansion_factor;
            if (f(outer) <= 0.0) return {inner, outer};
        }
    } else {
        for (int n = 0; n < cfg.max_bracket_expansions; ++n) {
            inner = outer;
            outer /= cfg.bracket_expansion_factor;
            if (f(outer) >= 0.0) return {outer, inner};
        }
    }
    throw NoSignChange(std::string("ripp::solvers: no sign change found while bracketing ") +
                       what);
}

}  // namespace detail

/** General case-D indifference ratio, found numerically.
 *
 * For fixed {H, D, wealth, dx_b, r}, finds the earlier payment dx_a_star at
 * which both options imply equal growth and returns delta = dx_a_star / dx_b
 * tagged DiscountForm::Numeric. g_a is strictly increasing in dx_a from the
 * background rate r while g_b stays constant, so the root is unique. For
 * r >= 0 it lies inside (0, dx_b); for negative r it can exceed dx_b
 * (delta > 1), in which case the upper end is expanded geometrically.
 */
inline DiscountFactor indifference_ratio_numeric(double horizon, double delay, double wealth0,
                                                 double dx_b, double r,
                                                 const RootConfig& cfg = {}) {
    cfg.validate();
    if (!(wealth0 > 0))
        throw WealthNonPositive("ripp::solvers::indifference_ratio_numeric: wealth0 must be positive");
    if (!(dx_b > 0) || !(horizon > 0) || !(delay > 0))
        throw std::invalid_argument(
            "ripp::solvers::indifference_ratio_numeric: dx_b, horizon and delay must be positive");

    const double excess_b =
        multiplicative_excess(dx_b, wealth0, horizon + delay, horizon + delay, r);
    const auto f = [&](double dx_a) {
        return multiplicative_excess(dx_a, wealth0, horizon, horizon, r) - excess_b;
    };

    double hi = dx_b;
    int expansions = 0;
    while (f(hi) < 0.0) {
        if (expansions++ >= cfg.max_bracket_expansions)
            throw NoSignChange(
                "ripp::solvers::indifference_ratio_numeric: failed to bracket dx_a_star");
        hi *= cfg.bracket_expansion_factor;
    }
    const double dx_a_star = detail::polish_to_residual(
        f, detail::solve_root_core(f, 0.0, hi, cfg), 0.5 * detail::kResidualBound);
    return {dx_a_star / dx_b, DiscountForm::Numeric, delay, horizon, r};
}

/** Case-D preference-reversal horizon, found numerically.
 *
 * Exists iff dx_b > dx_a e^{rD} (strictly); otherwise the earlier payment is
 * preferred at every horizon and None is returned without solving. When it
 * exists, g_a - g_b is positive as H -> 0 and negative as H -> infinity; the
 * search expands geometrically from H = D and reports the first sign change.
 */
inline Threshold reversal_horizon_numeric(double delay, double dx_a, double dx_b, double wealth0,
                                          double r, const RootConfig& cfg = {}) {
    cfg.validate();
    if (!(wealth0 > 0))
        throw WealthNonPositive("ripp::solvers::reversal_horizon_numeric: wealth0 must be positive");
    if (!(delay > 0) || !(dx_a > 0) || !(dx_b > 0))
        throw std::invalid_argument(
            "ripp::solvers::reversal_horizon_numeric: delay and payments must be positive");

    if (!(dx_b > dx_a * std::exp(r * delay)))
        return Threshold::none(
            "earlier payment is always preferred: requires dx_b > dx_a*exp(r*D)");

    const auto f = [&](double horizon) {
        return detail::case_d_excess_difference(dx_a, dx_b, horizon, delay, wealth0, r);
    };
    const auto [lo, hi] = detail::directed_bracket(f, delay, cfg, "the reversal horizon");
    if (lo == hi) return Threshold::horizon(lo);
    return Threshold::horizon(detail::polish_to_residual(
        f, detail::solve_root_core(f, lo, hi, cfg), 0.5 * detail::kResidualBound));
}

/** Case-D wealth threshold, found numerically.
 *
 * The problem's own wealth0 is ignored; the growth-rate difference is solved
 * as a function of initial wealth. Under the existence condition
 * dx_b > dx_a e^{rD} (H+D)/H the difference is positive as wealth -> 0 and
 * negative as wealth -> infinity; the search expands geometrically from
 * wealth = dx_b. Returns None with the violated condition otherwise.
 */
inline Threshold wealth_threshold(const Problem& problem, double r, const RootConfig& cfg = {}) {
    cfg.validate();
    if (!wealth_effect_condition(problem, r))
        return Threshold::none(
            "later payment never preferred: requires dx_b > dx_a*exp(r*D)*(H+D)/H");

    const double horizon = problem.horizon();
    const double delay = problem.delay();
    const auto f = [&](double wealth) {
        return detail::case_d_excess_difference(problem.dx_a(), problem.dx_b(), horizon, delay,
                                                wealth, r);
    };
    const auto [lo, hi] = detail::directed_bracket(f, problem.dx_b(), cfg, "the wealth threshold");
    if (lo == hi) return Threshold::wealth(lo);
    return Threshold::wealth(detail::polish_to_residual(
        f, detail::solve_root_core(f, lo, hi, cfg), 0.5 * detail::kResidualBound));
}

}  // namespace ripp::solvers
