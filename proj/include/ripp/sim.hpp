#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ripp/core.hpp"
#include "ripp/detail/format.hpp"

// Repeated-choice simulator. A growth rate attached to a single choice is,
// in effect, the rate of wealth growth achieved when choices like it repeat;
// this module makes that operational: it draws a seeded stream of problems,
// runs a choice policy through them, and measures the realized growth of the
// resulting wealth trajectory.

namespace ripp::sim {

struct DegenerateTrajectory : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Closed uniform-draw bounds. lo == hi pins the value.
struct Range {
    double lo;
    double hi;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double u01(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline double uniform(const Range& range, double u) {
    return range.lo + u * (range.hi - range.lo);
}

}  // namespace detail

/** A reproducible stream of payment problems.
 *
 * Each index yields one problem shape: horizon and delay drawn uniformly
 * from their ranges, dx_a from its range, and dx_b = dx_a * (1 + u) with u
 * drawn from the positive `premium` range, so every draw satisfies the
 * dx_b > dx_a invariant. Draws are a pure function of (seed, index) —
 * evaluating out of order or twice changes nothing. The horizon range's
 * lower bound doubles as the floor below which the repetition reading of
 * growth rates stops being meaningful; keep it well above zero.
 */
struct RippStream {
    std::uint64_t seed = 0;
    std::size_t count = 0;
    Range horizon{0.5, 2.0};
    Range delay{0.5, 2.0};
    Range dx_a{50.0, 150.0};
    Range premium{0.1, 3.0};

    struct Draw {
        double horizon;
        double delay;
        double dx_a;
        double dx_b;
    };

    void validate() const {
        const auto bad = [](const Range& r) {
            return !(std::isfinite(r.lo) && std::isfinite(r.hi)) || r.lo > r.hi;
        };
        if (bad(horizon) || bad(delay) || bad(dx_a) || bad(premium))
            throw std::invalid_argument("ripp::sim::RippStream: ranges must be finite with lo <= hi");
        if (!(horizon.lo > 0) || !(delay.lo > 0))
            throw std::invalid_argument("ripp::sim::RippStream: horizon and delay must stay positive");
        if (!(dx_a.lo > 0) || !(premium.lo > 0))
            throw std::invalid_argument(
                "ripp::sim::RippStream: payments and the dx_b premium must stay positive");
    }

    Draw draw(std::size_t index) const {
        // Four consecutive outputs of one global splitmix64 sequence per
        // index, so streams are disjoint across indices yet addressable.
        std::uint64_t state =
            seed + 0x9e3779b97f4a7c15ULL * (4 * static_cast<std::uint64_t>(index));
        const double u_h = detail::u01(detail::splitmix64(state));
        const double u_d = detail::u01(detail::splitmix64(state));
        const double u_x = detail::u01(detail::splitmix64(state));
        const double u_p = detail::u01(detail::splitmix64(state));
        Draw d;
        d.horizon = detail::uniform(horizon, u_h);
        d.delay = detail::uniform(delay, u_d);
        d.dx_a = detail::uniform(dx_a, u_x);
        d.dx_b = d.dx_a * (1.0 + detail::uniform(premium, u_p));
        return d;
    }
};

/** A choice rule applied to each drawn problem.
 *
 * GrowthOptimal delegates to prefer() with the simulation's true
 * specification and the decision maker's current wealth; indifference is
 * broken toward the earlier payment so logs stay deterministic.
 * ExponentialDiscounter chooses the earlier payment iff
 * dx_a >= dx_b * e^{-rate * D}; ties also go to the earlier payment.
 * The remaining kinds are self-describing baselines.
 */
class Policy {
  public:
    enum class Kind { GrowthOptimal, AlwaysEarlier, AlwaysLater, LargerPayment, ExponentialDiscounter };

    static Policy growth_optimal() { return Policy(Kind::GrowthOptimal, 0.0); }
    static Policy always_earlier() { return Policy(Kind::AlwaysEarlier, 0.0); }
    static Policy always_later() { return Policy(Kind::AlwaysLater, 0.0); }
    static Policy larger_payment() { return Policy(Kind::LargerPayment, 0.0); }
    static Policy exponential_discounter(double rate) {
        if (!std::isfinite(rate))
            throw std::invalid_argument("ripp::sim::Policy: discount rate must be finite");
        return Policy(Kind::ExponentialDiscounter, rate);
    }

    Kind kind() const { return kind_; }
    double discount_rate() const { return rate_; }

    std::string name() const {
        switch (kind_) {
            case Kind::GrowthOptimal: return "growth-optimal";
            case Kind::AlwaysEarlier: return "always-earlier";
            case Kind::AlwaysLater: return "always-later";
            case Kind::LargerPayment: return "larger-payment";
            case Kind::ExponentialDiscounter: return "exp-discounter";
        }
        return "?";
    }

    Option choose(const Specification& spec, const Problem& problem, double tolerance) const {
        switch (kind_) {
            case Kind::GrowthOptimal:
                return prefer(spec, problem, tolerance).preference == Preference::LaterPreferred
                           ? Option::Later
                           : Option::Earlier;
            case Kind::AlwaysEarlier:
                return Option::Earlier;
            case Kind::AlwaysLater:
                return Option::Later;
            case Kind::LargerPayment:
                return problem.dx_a() >= problem.dx_b() ? Option::Earlier : Option::Later;
            case Kind::ExponentialDiscounter:
                return problem.dx_a() >= problem.dx_b() * std::exp(-rate_ * problem.delay())
                           ? Option::Earlier
                           : Option::Later;
        }
        throw std::logic_error("ripp::sim::Policy::choose: unreachable");
    }

  private:
    Policy(Kind kind, double rate) : kind_(kind), rate_(rate) {}

    Kind kind_;
    double rate_;
};

enum class EventType { Decision, Payment };

inline const char* to_string(EventType type) {
    return type == EventType::Decision ? "decision" : "payment";
}

struct TrajectoryEvent {
    double time;
    double wealth;
    EventType type;
    Option chosen;
};

/** A realized wealth path: one decision event and one payment event per
 * draw, plus the run's endpoints. Event times never decrease; under the
 * adaptive frame a payment and the following decision share a timestamp
 * (the next choice is made the moment the payment lands). Successive
 * decision times are strictly increasing.
 */
struct Trajectory {
    double start_time = 0.0;
    double final_time = 0.0;
    double initial_wealth = 0.0;
    double final_wealth = 0.0;
    std::vector<TrajectoryEvent> events;
    std::vector<Option> choices;

    /// CSV export: time,wealth,event_type,chosen_option with a terminal
    /// "end" row carrying the run endpoint. 12 significant digits, LF only.
    void write_csv(std::ostream& out) const {
        out << "time,wealth,event_type,chosen_option\n";
        for (const auto& ev : events)
            out << ripp::detail::fmt12(ev.time) << ',' << ripp::detail::fmt12(ev.wealth) << ','
                << to_string(ev.type) << ',' << ripp::to_string(ev.chosen) << '\n';
        out << ripp::detail::fmt12(final_time) << ',' << ripp::detail::fmt12(final_wealth)
            << ",end,\n";
    }
};

namespace detail {

inline double evolve(const Dynamics& dynamics, double wealth, double dt) {
    return dynamics.is_additive() ? wealth + dynamics.rate() * dt
                                  : wealth * std::exp(dynamics.rate() * dt);
}

inline void check_wealth(const Dynamics& dynamics, double wealth) {
    if (!std::isfinite(wealth))
        throw std::overflow_error("ripp::sim::simulate: wealth left the representable range");
    if (dynamics.is_multiplicative() && !(wealth > 0))
        throw WealthNonPositive("ripp::sim::simulate: multiplicative wealth hit zero or below");
}

}  // namespace detail

/** Run `policy` through every draw of `stream` under `spec`.
 *
 * At each decision time a problem is drawn with the current wealth, the
 * policy picks an option, wealth evolves under the background dynamics to
 * the payment time and the payment is added (and from then on compounds with
 * the rest of the wealth under multiplicative dynamics). The next decision
 * happens at t_b under the fixed frame — with background evolution filling
 * any gap after an earlier payment — and at the chosen payment's time under
 * the adaptive frame. Deterministic given (spec, stream, policy, wealth0).
 */
inline Trajectory simulate(const Specification& spec, const RippStream& stream,
                           const Policy& policy, double wealth0,
                           double tolerance = kDefaultTolerance) {
    stream.validate();
    if (spec.dynamics.is_multiplicative() && !(wealth0 > 0))
        throw WealthNonPositive("ripp::sim::simulate: multiplicative dynamics require positive wealth");

    Trajectory trajectory;
    trajectory.initial_wealth = wealth0;
    trajectory.events.reserve(2 * stream.count + 1);
    trajectory.choices.reserve(stream.count);

    double t = 0.0;
    double wealth = wealth0;
    for (std::size_t i = 0; i < stream.count; ++i) {
        const auto d = stream.draw(i);
        const Problem problem(t, t + d.horizon, t + d.horizon + d.delay, d.dx_a, d.dx_b, wealth);
        const Option choice = policy.choose(spec, problem, tolerance);
        trajectory.events.push_back({t, wealth, EventType::Decision, choice});
        trajectory.choices.push_back(choice);

        const double t_pay = choice == Option::Earlier ? problem.t_a() : problem.t_b();
        wealth = detail::evolve(spec.dynamics, wealth, t_pay - t);
        wealth += choice == Option::Earlier ? d.dx_a : d.dx_b;
        detail::check_wealth(spec.dynamics, wealth);
        trajectory.events.push_back({t_pay, wealth, EventType::Payment, choice});

        const double t_next = spec.time_frame == TimeFrame::Fixed ? problem.t_b() : t_pay;
        if (t_next > t_pay) {
            wealth = detail::evolve(spec.dynamics, wealth, t_next - t_pay);
            detail::check_wealth(spec.dynamics, wealth);
        }
        t = t_next;
    }
    trajectory.final_time = t;
    trajectory.final_wealth = wealth;
    return trajectory;
}

/// Growth rate realized over a whole trajectory: (x_T - x_0)/T for additive
/// dynamics, (ln x_T - ln x_0)/T for multiplicative.
inline GrowthRate realized_growth(const Trajectory& trajectory, const Dynamics& dynamics) {
    const double elapsed = trajectory.final_time - trajectory.start_time;
    if (!(elapsed > 0))
        throw DegenerateTrajectory("ripp::sim::realized_growth: trajectory spans no time");
    if (dynamics.is_additive())
        return {(trajectory.final_wealth - trajectory.initial_wealth) / elapsed,
                RateUnits::CurrencyPerTime};
    if (!(trajectory.initial_wealth > 0) || !(trajectory.final_wealth > 0))
        throw WealthNonPositive(
            "ripp::sim::realized_growth: multiplicative growth needs positive endpoint wealth");
    return {(std::log(trajectory.final_wealth) - std::log(trajectory.initial_wealth)) / elapsed,
            RateUnits::PerTime};
}

}  // namespace ripp::sim
