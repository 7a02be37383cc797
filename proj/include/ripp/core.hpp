#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

// Core vocabulary for riskless intertemporal payment problems (RIPPs):
// a decision maker at t0 chooses between an earlier payment dx_a at t_a and
// a later, larger payment dx_b at t_b, so that the growth rate of her wealth
// is maximized. Growth rates depend on the wealth dynamics (additive or
// multiplicative) and on the time frame over which rates are computed (fixed:
// decision to later payment; adaptive: decision to chosen payment). The four
// combinations are labelled A-D and produce no discounting, exponential,
// hyperbolic, and hybrid exponential-hyperbolic discounting respectively.

namespace ripp {

// ---------------------------------------------------------------------------
// Errors

/// A Problem that violates its invariants (time ordering, payment ordering,
/// positivity) cannot be constructed.
struct InvalidProblem : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Multiplicative growth rates require strictly positive wealth.
struct WealthNonPositive : std::domain_error {
    using std::domain_error::domain_error;
};

/// Comparing growth rates with different units is a contract violation.
struct UnitsMismatch : std::logic_error {
    using std::logic_error::logic_error;
};

/// The fixed/additive specification has no discount function: with
/// dx_b > dx_a the indifference condition is never satisfied.
struct UndefinedDiscount : std::domain_error {
    using std::domain_error::domain_error;
};

/// Closed forms that divide by the horizon require H > 0.
struct NonPositiveHorizon : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Enums and small value types

/// Absolute indifference band on g_a - g_b, in the rate's own units.
/// Exact equality is measure-zero in floating point.
inline constexpr double kDefaultTolerance = 1e-12;

/// Period over which growth rates are computed. Fixed: always decision to
/// later payment (the timing of the next decision does not depend on the
/// choice). Adaptive: decision to chosen payment (receiving the earlier
/// payment frees the decision maker sooner).
enum class TimeFrame { Fixed, Adaptive };

/// Case labels for the four (time frame, dynamics) specifications:
/// A = fixed/additive, B = fixed/multiplicative,
/// C = adaptive/additive, D = adaptive/multiplicative.
enum class CaseLabel { A, B, C, D };

/// Additive rates are currency per unit time; multiplicative rates are
/// inverse time. The two are never cross-comparable.
enum class RateUnits { CurrencyPerTime, PerTime };

enum class Option { Earlier, Later };

enum class Preference { EarlierPreferred, LaterPreferred, Indifferent };

/// Background wealth dynamics. Additive: wealth grows linearly at rate k
/// (currency/time, may be negative, e.g. a metabolic cost). Multiplicative:
/// wealth compounds at rate r (1/time, any finite real); received payments
/// are reinvested at r from receipt.
class Dynamics {
  public:
    enum class Kind { Additive, Multiplicative };

    static Dynamics additive(double k) { return Dynamics(Kind::Additive, k); }
    static Dynamics multiplicative(double r) { return Dynamics(Kind::Multiplicative, r); }

    Kind kind() const { return kind_; }
    double rate() const { return rate_; }
    bool is_additive() const { return kind_ == Kind::Additive; }
    bool is_multiplicative() const { return kind_ == Kind::Multiplicative; }
    RateUnits rate_units() const {
        return is_additive() ? RateUnits::CurrencyPerTime : RateUnits::PerTime;
    }

  private:
    Dynamics(Kind kind, double rate) : kind_(kind), rate_(rate) {
        if (!std::isfinite(rate))
            throw std::invalid_argument("ripp::Dynamics: background rate must be finite");
    }

    Kind kind_;
    double rate_;
};

/// A full model specification: dynamics plus time frame.
struct Specification {
    Dynamics dynamics;
    TimeFrame time_frame;

    CaseLabel case_label() const {
        if (time_frame == TimeFrame::Fixed)
            return dynamics.is_additive() ? CaseLabel::A : CaseLabel::B;
        return dynamics.is_additive() ? CaseLabel::C : CaseLabel::D;
    }
};

// ---------------------------------------------------------------------------
// Problem

/** One riskless intertemporal payment problem.
 *
 * Invariants, enforced at construction:
 *   - t0 < t_a < t_b (strict),
 *   - dx_a > 0 and dx_b > dx_a (the later payment is strictly larger; the
 *     model confines attention to this regime),
 *   - wealth0 >= 0 (multiplicative growth rates additionally require > 0,
 *     checked at evaluation).
 *
 * Times are in years, amounts in abstract currency units. The horizon
 * H = t_a - t0 is the time from the decision to the earlier payment; the
 * delay D = t_b - t_a is the time between the payments. Results for very
 * small H should be treated with care: under the adaptive time frame the
 * earlier option's growth rate diverges as H -> 0, which signals a loss of
 * model realism rather than an actual infinite-growth opportunity.
 */
class Problem {
  public:
    Problem(double t0, double t_a, double t_b, double dx_a, double dx_b, double wealth0)
        : t0_(t0), t_a_(t_a), t_b_(t_b), dx_a_(dx_a), dx_b_(dx_b), wealth0_(wealth0) {
        if (!std::isfinite(t0) || !std::isfinite(t_a) || !std::isfinite(t_b) ||
            !std::isfinite(dx_a) || !std::isfinite(dx_b) || !std::isfinite(wealth0))
            throw InvalidProblem("ripp::Problem: all fields must be finite");
        if (!(t0 < t_a))
            throw InvalidProblem("ripp::Problem: decision time t0 must precede t_a");
        if (!(t_a < t_b))
            throw InvalidProblem("ripp::Problem: earlier payment time t_a must precede t_b");
        if (!(dx_a > 0))
            throw InvalidProblem("ripp::Problem: earlier payment dx_a must be positive");
        if (!(dx_b > dx_a))
            throw InvalidProblem("ripp::Problem: later payment dx_b must exceed dx_a");
        if (!(wealth0 >= 0))
            throw InvalidProblem("ripp::Problem: initial wealth must be nonnegative");
    }

    double t0() const { return t0_; }
    double t_a() const { return t_a_; }
    double t_b() const { return t_b_; }
    double dx_a() const { return dx_a_; }
    double dx_b() const { return dx_b_; }
    double wealth0() const { return wealth0_; }

    /// Time from decision to the earlier payment (> 0).
    double horizon() const { return t_a_ - t0_; }
    /// Time between the two payments (> 0).
    double delay() const { return t_b_ - t_a_; }

  private:
    double t0_, t_a_, t_b_;
    double dx_a_, dx_b_;
    double wealth0_;
};

// ---------------------------------------------------------------------------
// Growth rates

/// A growth rate tagged with its units. Additive and multiplicative rates
/// live on different scales and must never be compared directly.
struct GrowthRate {
    double value;
    RateUnits units;
};

/// g_a - g_b in the shared units; throws UnitsMismatch if the units differ.
inline double rate_difference(const GrowthRate& a, const GrowthRate& b) {
    if (a.units != b.units)
        throw UnitsMismatch("ripp::rate_difference: growth rates have different units");
    return a.value - b.value;
}

/// Outcome of a growth-optimal comparison. EarlierPreferred iff
/// g_a - g_b > tolerance, LaterPreferred iff g_b - g_a > tolerance,
/// Indifferent otherwise.
struct Decision {
    Preference preference;
    GrowthRate g_a;
    GrowthRate g_b;
    double tolerance_used;
};

// Formula layer. These are the raw per-option growth expressions; they take
// plain parameters so that limits the Problem invariants exclude (zero
// payments, hypothetical background-only evolution) stay testable and so the
// solvers can vary one coordinate freely.

/// Additive rate over `period`: dx / period + k.
inline double additive_growth(double dx, double period, double k) {
    return dx / period + k;
}

/// Multiplicative rate in excess of the background rate r, for a payment dx
/// received `pay_offset` after the decision and evaluated over `period`:
/// ln(1 + (dx / wealth) * exp(-r * pay_offset)) / period.
/// The form ln(1 + dx * e^{r*(period-offset)} / (wealth * e^{r*period})) is
/// the same quantity; this arrangement avoids overflowing the intermediate
/// exponentials and keeps full precision for dx << wealth.
inline double multiplicative_excess(double dx, double wealth, double pay_offset, double period,
                                    double r) {
    return std::log1p((dx / wealth) * std::exp(-r * pay_offset)) / period;
}

/// Full multiplicative rate: excess plus the background rate.
inline double multiplicative_growth(double dx, double wealth, double pay_offset, double period,
                                    double r) {
    return multiplicative_excess(dx, wealth, pay_offset, period, r) + r;
}

/** Growth rate of wealth under `spec` for one option of `problem`.
 *
 * The evaluation period is H+D under the fixed time frame and the time to
 * the chosen payment under the adaptive one. Per case:
 *   A: dx/(H+D) + k            B: ln(1 + dx_a e^{rD} / (x0 e^{r(H+D)}))/(H+D) + r
 *   C: dx_a/H + k, dx_b/(H+D)+k  (the linear payment rate of each option)
 *   D: ln(1 + dx/(x0 e^{r tau}))/tau + r with tau the time to the payment.
 *
 * Throws WealthNonPositive for multiplicative dynamics with wealth0 <= 0.
 */
inline GrowthRate growth_rate(const Specification& spec, Option option, const Problem& problem) {
    const double horizon = problem.horizon();
    const double delay = problem.delay();
    const double dx = option == Option::Earlier ? problem.dx_a() : problem.dx_b();
    const double pay_offset = option == Option::Earlier ? horizon : horizon + delay;
    const double period = spec.time_frame == TimeFrame::Fixed ? horizon + delay : pay_offset;

    if (spec.dynamics.is_additive())
        return {additive_growth(dx, period, spec.dynamics.rate()), RateUnits::CurrencyPerTime};

    if (!(problem.wealth0() > 0))
        throw WealthNonPositive(
            "ripp::growth_rate: multiplicative dynamics require positive initial wealth");
    return {multiplicative_growth(dx, problem.wealth0(), pay_offset, period,
                                  spec.dynamics.rate()),
            RateUnits::PerTime};
}

/// Growth-optimal preference: prefer the option with the larger growth rate,
/// indifferent within `tolerance` of equality.
inline Decision prefer(const Specification& spec, const Problem& problem,
                       double tolerance = kDefaultTolerance) {
    if (!(tolerance >= 0))
        throw std::invalid_argument("ripp::prefer: tolerance must be nonnegative");
    const GrowthRate g_a = growth_rate(spec, Option::Earlier, problem);
    const GrowthRate g_b = growth_rate(spec, Option::Later, problem);
    const double diff = rate_difference(g_a, g_b);
    Preference preference = Preference::Indifferent;
    if (diff > tolerance)
        preference = Preference::EarlierPreferred;
    else if (-diff > tolerance)
        preference = Preference::LaterPreferred;
    return {preference, g_a, g_b, tolerance};
}

// ---------------------------------------------------------------------------
// Discount functions

/// The discount factor's functional form. Exponential belongs to case B,
/// Hyperbolic to case C, HybridApprox is case D's small-payment limit, and
/// Numeric marks a case-D factor obtained by root finding (see solvers).
enum class DiscountForm { Exponential, Hyperbolic, HybridApprox, Numeric };

/// A dimensionless discount factor delta together with the inputs it was
/// computed from. For r >= 0 the closed forms satisfy 0 < delta <= 1 with
/// delta = 1 exactly at zero delay; negative r may push delta above 1.
struct DiscountFactor {
    double value;
    DiscountForm form;
    double delay;
    std::optional<double> horizon;  ///< absent for the exponential form
    std::optional<double> rate;     ///< absent for the hyperbolic form
};

/// Discount form implied by a case label. Case A has none: the larger
/// payment always wins and indifference never occurs, so UndefinedDiscount
/// is thrown. Case D maps to Numeric (no closed form for general payments).
inline DiscountForm discount_form(CaseLabel label) {
    switch (label) {
        case CaseLabel::A:
            throw UndefinedDiscount(
                "ripp::discount_form: no discounting in this specification");
        case CaseLabel::B: return DiscountForm::Exponential;
        case CaseLabel::C: return DiscountForm::Hyperbolic;
        case CaseLabel::D: return DiscountForm::Numeric;
    }
    throw std::logic_error("ripp::discount_form: unreachable");
}

/** Closed-form discount factor.
 *
 *   Exponential:  delta = e^{-r D}           (horizon ignored)
 *   Hyperbolic:   delta = 1 / (1 + D/H)      (rate ignored)
 *   HybridApprox: delta = e^{-r D} / (1 + D/H)
 *
 * The hybrid form is the case-D small-payment limit; it is close to the
 * hyperbolic form for short delays and to the exponential one for long
 * delays. The Numeric form has no closed expression and is rejected here;
 * use solvers::indifference_ratio_numeric.
 */
inline DiscountFactor discount_closed(DiscountForm form, double delay, double horizon,
                                      double rate) {
    if (!(delay >= 0))
        throw std::invalid_argument("ripp::discount_closed: delay must be nonnegative");
    switch (form) {
        case DiscountForm::Exponential:
            if (!std::isfinite(rate))
                throw std::invalid_argument("ripp::discount_closed: rate must be finite");
            return {std::exp(-rate * delay), form, delay, std::nullopt, rate};
        case DiscountForm::Hyperbolic:
            if (!(horizon > 0))
                throw NonPositiveHorizon("ripp::discount_closed: horizon must be positive");
            return {1.0 / (1.0 + delay / horizon), form, delay, horizon, std::nullopt};
        case DiscountForm::HybridApprox:
            if (!(horizon > 0))
                throw NonPositiveHorizon("ripp::discount_closed: horizon must be positive");
            if (!std::isfinite(rate))
                throw std::invalid_argument("ripp::discount_closed: rate must be finite");
            return {std::exp(-rate * delay) / (1.0 + delay / horizon), form, delay, horizon,
                    rate};
        case DiscountForm::Numeric:
            throw std::invalid_argument(
                "ripp::discount_closed: the general case-D factor has no closed form; "
                "use solvers::indifference_ratio_numeric");
    }
    throw std::logic_error("ripp::discount_closed: unreachable");
}

// ---------------------------------------------------------------------------
// Thresholds

/// A preference-reversal threshold: a horizon, a decision time, or a wealth
/// level at which indifference occurs, or None with the violated existence
/// condition when no such point exists.
class Threshold {
  public:
    enum class Kind { Horizon, DecisionTime, Wealth, None };

    static Threshold horizon(double h) { return Threshold(Kind::Horizon, h, {}); }
    static Threshold decision_time(double t) { return Threshold(Kind::DecisionTime, t, {}); }
    static Threshold wealth(double x) { return Threshold(Kind::Wealth, x, {}); }
    static Threshold none(std::string reason) {
        return Threshold(Kind::None, std::nan(""), std::move(reason));
    }

    Kind kind() const { return kind_; }
    bool exists() const { return kind_ != Kind::None; }
    /// The threshold value; only meaningful when exists().
    double value() const {
        if (!exists())
            throw std::logic_error("ripp::Threshold: no value, threshold does not exist");
        return value_;
    }
    /// The violated existence condition; empty unless kind is None.
    const std::string& reason() const { return reason_; }

  private:
    Threshold(Kind kind, double value, std::string reason)
        : kind_(kind), value_(value), reason_(std::move(reason)) {}

    Kind kind_;
    double value_;
    std::string reason_;
};

/** Closed-form preference-reversal horizon.
 *
 * Hyperbolic (adaptive/additive): H_pr = D dx_a / (dx_b - dx_a), defined
 * whenever dx_b > dx_a. For H < H_pr the earlier payment's rate wins; for
 * H > H_pr the later one's does.
 *
 * HybridApprox (adaptive/multiplicative, payments small relative to wealth):
 * H_pr = D dx_a e^{rD} / (dx_b - dx_a e^{rD}), defined when
 * dx_b > dx_a e^{rD}; otherwise the earlier payment is always preferred and
 * None is returned. Equality in either condition counts as non-existence.
 */
inline Threshold reversal_horizon_closed(DiscountForm form, double delay, double dx_a,
                                         double dx_b, double rate) {
    if (!(delay > 0))
        throw std::invalid_argument("ripp::reversal_horizon_closed: delay must be positive");
    if (!(dx_a > 0) || !(dx_b > 0))
        throw std::invalid_argument("ripp::reversal_horizon_closed: payments must be positive");
    switch (form) {
        case DiscountForm::Hyperbolic: {
            if (!(dx_b > dx_a))
                return Threshold::none("no reversal: requires dx_b > dx_a");
            return Threshold::horizon(delay * dx_a / (dx_b - dx_a));
        }
        case DiscountForm::HybridApprox: {
            const double grown = dx_a * std::exp(rate * delay);
            if (!(dx_b > grown))
                return Threshold::none(
                    "earlier payment is always preferred: requires dx_b > dx_a*exp(r*D)");
            return Threshold::horizon(delay * grown / (dx_b - grown));
        }
        default:
            throw std::invalid_argument(
                "ripp::reversal_horizon_closed: only the hyperbolic and hybrid forms have "
                "closed-form reversal horizons");
    }
}

/// Critical decision time for the adaptive/additive case: the t0 at which
/// the decision maker is indifferent, t0_pr = (dx_b t_a - dx_a t_b)/(dx_b - dx_a).
/// Computed as t_a - H_pr so the identity t0_pr == t_a - H_pr holds exactly.
inline Threshold critical_decision_time(const Problem& problem) {
    const double h_pr = problem.delay() * problem.dx_a() / (problem.dx_b() - problem.dx_a());
    return Threshold::decision_time(problem.t_a() - h_pr);
}

/// Existence condition for the case-D wealth effect: true iff the later
/// payment is preferred in the large-wealth limit, i.e.
/// dx_b > dx_a e^{rD} (H+D)/H strictly, in which case a wealth threshold
/// separating the two preferences exists.
inline bool wealth_effect_condition(const Problem& problem, double r) {
    const double horizon = problem.horizon();
    const double delay = problem.delay();
    return problem.dx_b() >
           problem.dx_a() * std::exp(r * delay) * (horizon + delay) / horizon;
}

// ---------------------------------------------------------------------------
// Report labels

inline const char* to_string(CaseLabel label) {
    switch (label) {
        case CaseLabel::A: return "A";
        case CaseLabel::B: return "B";
        case CaseLabel::C: return "C";
        case CaseLabel::D: return "D";
    }
    return "?";
}

inline const char* to_string(TimeFrame frame) {
    return frame == TimeFrame::Fixed ? "fixed" : "adaptive";
}

inline const char* to_string(RateUnits units) {
    return units == RateUnits::CurrencyPerTime ? "currency/time" : "1/time";
}

inline const char* to_string(Preference preference) {
    switch (preference) {
        case Preference::EarlierPreferred: return "earlier";
        case Preference::LaterPreferred: return "later";
        case Preference::Indifferent: return "indifferent";
    }
    return "?";
}

inline const char* to_string(Option option) {
    return option == Option::Earlier ? "a" : "b";
}

inline const char* to_string(DiscountForm form) {
    switch (form) {
        case DiscountForm::Exponential: return "exponential";
        case DiscountForm::Hyperbolic: return "hyperbolic";
        case DiscountForm::HybridApprox: return "hybrid";
        case DiscountForm::Numeric: return "numeric";
    }
    return "?";
}

inline const char* to_string(Dynamics::Kind kind) {
    return kind == Dynamics::Kind::Additive ? "additive" : "multiplicative";
}

}  // namespace ripp
