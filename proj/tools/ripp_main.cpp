// Command-line front end: evaluate single problems, sweep discount curves
// and preference-reversal thresholds, and run the repeated-choice simulator.
// CSV goes to stdout (or --out); human-readable notes accompanying a CSV go
// to stderr so machine output stays clean. Exit codes: 0 success (a
// non-existent threshold is data, not failure), 2 input/schema error,
// 3 domain/solver error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ripp/core.hpp"
#include "ripp/detail/format.hpp"
#include "ripp/document.hpp"
#include "ripp/sim.hpp"
#include "ripp/solvers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDomain = 3;

using nlohmann::json;
using ripp::detail::fmt12;
using ripp::detail::round12;

std::string fmt4(double x) {
    const double ax = std::abs(x);
    char buf[48];
    if (x != 0.0 && (ax < 1e-3 || ax >= 1e6))
        std::snprintf(buf, sizeof(buf), "%.4g", x);
    else
        std::snprintf(buf, sizeof(buf), "%.4f", x);
    return buf;
}

ripp::Dynamics parse_dynamics(const std::string& type, double rate) {
    if (type == "additive") return ripp::Dynamics::additive(rate);
    if (type == "multiplicative") return ripp::Dynamics::multiplicative(rate);
    throw std::invalid_argument("dynamics must be \"additive\" or \"multiplicative\"");
}

ripp::TimeFrame parse_frame(const std::string& frame) {
    if (frame == "fixed") return ripp::TimeFrame::Fixed;
    if (frame == "adaptive") return ripp::TimeFrame::Adaptive;
    throw std::invalid_argument("time frame must be \"fixed\" or \"adaptive\"");
}

ripp::DiscountForm parse_discount_form(const std::string& name) {
    if (name == "B" || name == "exponential") return ripp::DiscountForm::Exponential;
    if (name == "C" || name == "hyperbolic") return ripp::DiscountForm::Hyperbolic;
    if (name == "hybrid") return ripp::DiscountForm::HybridApprox;
    if (name == "numeric") return ripp::DiscountForm::Numeric;
    throw std::invalid_argument(
        "curve case must be one of B|exponential, C|hyperbolic, hybrid, numeric");
}

/// CSV and sweep text goes to --out when given, else stdout.
void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file \"" + out_path + "\"");
    out << text;
}

json growth_rate_json(const ripp::GrowthRate& g) {
    return json{{"value", round12(g.value)}, {"units", ripp::to_string(g.units)}};
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
    std::string doc_path;
    double t0 = 0.0, t_a = 0.0, t_b = 0.0, dx_a = 0.0, dx_b = 0.0, wealth0 = 0.0;
    std::string dynamics, frame;
    double rate = 0.0;
    double tolerance = ripp::kDefaultTolerance;
    bool inline_given = false;
    bool as_json = false;
};

int run_evaluate(const EvaluateArgs& args) {
    std::optional<ripp::io::ProblemDocument> doc;
    if (!args.doc_path.empty()) {
        doc = ripp::io::ProblemDocument::load(args.doc_path);
    } else {
        if (!args.inline_given)
            throw std::invalid_argument(
                "evaluate needs either --doc or the full inline problem "
                "(--t0 --ta --tb --dxa --dxb --wealth --dynamics --rate --frame)");
        ripp::Problem problem(args.t0, args.t_a, args.t_b, args.dx_a, args.dx_b, args.wealth0);
        ripp::Specification spec{parse_dynamics(args.dynamics, args.rate),
                                 parse_frame(args.frame)};
        doc = ripp::io::ProblemDocument{problem, spec, args.tolerance, {}};
    }

    const ripp::Specification& spec = doc->spec;
    const ripp::Decision decision = ripp::prefer(spec, doc->problem, doc->tolerance);
    const ripp::CaseLabel label = spec.case_label();
    const bool no_discounting = label == ripp::CaseLabel::A;

    if (args.as_json) {
        json report{{"case", ripp::to_string(label)},
                    {"time_frame", ripp::to_string(spec.time_frame)},
                    {"dynamics",
                     {{"type", ripp::to_string(spec.dynamics.kind())},
                      {"rate", round12(spec.dynamics.rate())}}},
                    {"g_a", growth_rate_json(decision.g_a)},
                    {"g_b", growth_rate_json(decision.g_b)},
                    {"preference", ripp::to_string(decision.preference)},
                    {"tolerance", round12(decision.tolerance_used)}};
        if (no_discounting) report["note"] = "no discounting in this specification";
        std::cout << report.dump(2) << '\n';
        return kExitOk;
    }

    std::cout << "case: " << ripp::to_string(label) << " (" << ripp::to_string(spec.time_frame)
              << " time frame, " << ripp::to_string(spec.dynamics.kind()) << " dynamics)\n";
    std::cout << "g_a: " << fmt4(decision.g_a.value) << " (" << ripp::to_string(decision.g_a.units)
              << ")\n";
    std::cout << "g_b: " << fmt4(decision.g_b.value) << " (" << ripp::to_string(decision.g_b.units)
              << ")\n";
    std::cout << "preference: " << ripp::to_string(decision.preference) << '\n';
    if (no_discounting) std::cout << "note: no discounting in this specification\n";
    return kExitOk;
}

// ---------------------------------------------------------------------------
// curve

struct CurveArgs {
    std::string form;
    bool triple = false;
    double d_min = 0.0, d_max = 10.0, d_step = 0.1;
    double horizon = 0.0, rate = 0.0, wealth0 = 0.0, dx_b = 0.0;
    bool horizon_given = false, rate_given = false;
    std::string out;
};

std::vector<double> sweep_values(double lo, double hi, double step) {
    if (!(step > 0)) throw std::invalid_argument("sweep step must be positive");
    if (!(hi >= lo)) throw std::invalid_argument("sweep range must satisfy max >= min");
    std::vector<double> values;
    for (int i = 0;; ++i) {
        const double v = lo + i * step;
        if (v > hi + 0.5 * step) break;
        values.push_back(std::min(v, hi));
        if (values.size() > 2'000'000) throw std::invalid_argument("sweep has too many rows");
    }
    return values;
}

int run_curve(const CurveArgs& args) {
    std::ostringstream csv;
    int exit_code = kExitOk;

    if (args.triple) {
        if (!args.horizon_given || !args.rate_given)
            throw std::invalid_argument("--triple needs --horizon and --rate");
        csv << "D,delta_hybrid,delta_hyperbolic,delta_exponential\n";
        for (double d : sweep_values(args.d_min, args.d_max, args.d_step)) {
            const auto hybrid =
                ripp::discount_closed(ripp::DiscountForm::HybridApprox, d, args.horizon, args.rate);
            const auto hyperbolic =
                ripp::discount_closed(ripp::DiscountForm::Hyperbolic, d, args.horizon, 0.0);
            const auto exponential =
                ripp::discount_closed(ripp::DiscountForm::Exponential, d, 0.0, args.rate);
            csv << fmt12(d) << ',' << fmt12(hybrid.value) << ',' << fmt12(hyperbolic.value) << ','
                << fmt12(exponential.value) << '\n';
        }
        emit_text(csv.str(), args.out);
        return kExitOk;
    }

    if (args.form.empty())
        throw std::invalid_argument("curve needs --case (or --triple)");
    const ripp::DiscountForm form = parse_discount_form(args.form);

    if (form == ripp::DiscountForm::Numeric) {
        if (!(args.wealth0 > 0) || !(args.dx_b > 0) || !args.horizon_given)
            throw std::invalid_argument("numeric curve needs --horizon, --wealth and --dxb");
        csv << "D,delta,dx_a_star,error\n";
        for (double d : sweep_values(args.d_min, args.d_max, args.d_step)) {
            if (d == 0.0) {
                // Zero delay: both payments coincide, so indifference is at
                // equal payments exactly.
                csv << fmt12(d) << ',' << fmt12(1.0) << ',' << fmt12(args.dx_b) << ",\n";
                continue;
            }
            try {
                const auto delta = ripp::solvers::indifference_ratio_numeric(
                    args.horizon, d, args.wealth0, args.dx_b, args.rate);
                csv << fmt12(d) << ',' << fmt12(delta.value) << ','
                    << fmt12(delta.value * args.dx_b) << ",\n";
            } catch (const std::exception& error) {
                csv << fmt12(d) << ",,," << error.what() << '\n';
                exit_code = kExitDomain;
            }
        }
        emit_text(csv.str(), args.out);
        return exit_code;
    }

    const bool needs_horizon = form != ripp::DiscountForm::Exponential;
    const bool needs_rate = form != ripp::DiscountForm::Hyperbolic;
    if (needs_horizon && !args.horizon_given)
        throw std::invalid_argument("this curve needs --horizon");
    if (needs_rate && !args.rate_given) throw std::invalid_argument("this curve needs --rate");
    csv << "D,delta\n";
    for (double d : sweep_values(args.d_min, args.d_max, args.d_step)) {
        const auto delta = ripp::discount_closed(form, d, args.horizon, args.rate);
        csv << fmt12(d) << ',' << fmt12(delta.value) << '\n';
    }
    emit_text(csv.str(), args.out);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// reversal

struct ReversalArgs {
    std::string dynamics, frame, mode = "closed";
    double delay = 0.0, dx_a = 0.0, dx_b = 0.0, rate = 0.0, wealth0 = 0.0;
    double t_a = 0.0;
    bool t_a_given = false, wealth_given = false;
    bool sweep = false;
    double sweep_min = 0.0, sweep_max = 0.0, sweep_step = 0.0;
    bool sweep_range_given = false;
    std::string out;
    bool as_json = false;
};

void print_threshold_report(std::ostream& out, const char* name, const ripp::Threshold& threshold,
                            const std::optional<double>& t0_pr) {
    if (threshold.exists()) {
        out << name << ": " << fmt4(threshold.value()) << '\n';
        if (t0_pr) out << "t0_pr: " << fmt4(*t0_pr) << '\n';
    } else {
        out << name << ": none (" << threshold.reason() << ")\n";
    }
}

json threshold_json(const char* key, const ripp::Threshold& threshold) {
    json report;
    if (threshold.exists()) {
        report[key] = round12(threshold.value());
    } else {
        report[key] = nullptr;
        report["reason"] = threshold.reason();
    }
    return report;
}

int run_reversal(const ReversalArgs& args) {
    const ripp::Dynamics dynamics = parse_dynamics(args.dynamics, args.rate);
    const ripp::Specification spec{dynamics, parse_frame(args.frame)};
    const ripp::CaseLabel label = spec.case_label();
    if (!(args.delay > 0) || !(args.dx_a > 0) || !(args.dx_b > 0))
        throw std::invalid_argument("reversal needs positive --delay, --dxa and --dxb");
    if (args.mode != "closed" && args.mode != "numeric")
        throw std::invalid_argument("--mode must be closed or numeric");

    ripp::Threshold threshold = ripp::Threshold::none("unset");
    std::string model;
    std::optional<double> small_payment;
    if (spec.time_frame == ripp::TimeFrame::Fixed) {
        threshold = ripp::Threshold::none(
            "preference does not depend on the horizon in this specification");
        model = "none";
    } else if (label == ripp::CaseLabel::C) {
        if (args.mode == "numeric")
            throw std::invalid_argument(
                "the additive/adaptive reversal horizon has a closed form; use --mode closed");
        threshold = ripp::reversal_horizon_closed(ripp::DiscountForm::Hyperbolic, args.delay,
                                                  args.dx_a, args.dx_b, 0.0);
        model = "hyperbolic";
    } else if (args.mode == "closed") {
        threshold = ripp::reversal_horizon_closed(ripp::DiscountForm::HybridApprox, args.delay,
                                                  args.dx_a, args.dx_b, args.rate);
        model = "hybrid (small-payment approximation)";
    } else {
        if (!args.wealth_given || !(args.wealth0 > 0))
            throw std::invalid_argument("numeric reversal needs positive --wealth");
        threshold = ripp::solvers::reversal_horizon_numeric(args.delay, args.dx_a, args.dx_b,
                                                            args.wealth0, args.rate);
        model = "numeric";
        // Report the small-payment closed form alongside, for comparison.
        const auto approx = ripp::reversal_horizon_closed(ripp::DiscountForm::HybridApprox,
                                                          args.delay, args.dx_a, args.dx_b,
                                                          args.rate);
        if (approx.exists()) small_payment = approx.value();
    }

    std::optional<double> t0_pr;
    if (args.t_a_given && threshold.exists()) t0_pr = args.t_a - threshold.value();

    std::ostream& report_stream = args.sweep ? std::cerr : std::cout;
    if (args.as_json && !args.sweep) {
        json report = threshold_json("H_pr", threshold);
        report["model"] = model;
        report["case"] = ripp::to_string(label);
        if (t0_pr) report["t0_pr"] = round12(*t0_pr);
        if (small_payment) report["H_pr_small_payment"] = round12(*small_payment);
        std::cout << report.dump(2) << '\n';
    } else {
        report_stream << "model: " << model << " (case " << ripp::to_string(label) << ")\n";
        print_threshold_report(report_stream, "H_pr", threshold, t0_pr);
        if (small_payment)
            report_stream << "H_pr_small_payment: " << fmt4(*small_payment) << '\n';
    }

    if (args.sweep) {
        if (spec.time_frame == ripp::TimeFrame::Fixed)
            throw std::invalid_argument("--sweep needs an adaptive time frame");
        double lo = args.sweep_min, hi = args.sweep_max, step = args.sweep_step;
        if (!args.sweep_range_given) {
            lo = args.delay / 10.0;
            hi = args.delay * 10.0;
            step = (hi - lo) / 60.0;
        }
        if (label == ripp::CaseLabel::D && !(args.wealth0 > 0))
            throw std::invalid_argument("a case-D sweep needs positive --wealth");
        std::ostringstream csv;
        csv << "H,g_a,g_b,preference\n";
        for (double h : sweep_values(lo, hi, step)) {
            if (!(h > 0)) continue;
            const ripp::Problem problem(0.0, h, h + args.delay, args.dx_a, args.dx_b,
                                        label == ripp::CaseLabel::D ? args.wealth0 : 0.0);
            const ripp::Decision decision = ripp::prefer(spec, problem);
            csv << fmt12(h) << ',' << fmt12(decision.g_a.value) << ','
                << fmt12(decision.g_b.value) << ',' << ripp::to_string(decision.preference)
                << '\n';
        }
        emit_text(csv.str(), args.out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// wealth-threshold

struct WealthThresholdArgs {
    double horizon = 0.0, delay = 0.0, dx_a = 0.0, dx_b = 0.0, rate = 0.0;
    bool sweep = false;
    double sweep_min = 0.0, sweep_max = 0.0, sweep_step = 0.0;
    bool sweep_range_given = false;
    std::string out;
    bool as_json = false;
};

int run_wealth_threshold(const WealthThresholdArgs& args) {
    if (!(args.horizon > 0) || !(args.delay > 0) || !(args.dx_a > 0) || !(args.dx_b > args.dx_a))
        throw std::invalid_argument(
            "wealth-threshold needs positive --horizon and --delay and payments with dxb > dxa");
    const ripp::Problem shape(0.0, args.horizon, args.horizon + args.delay, args.dx_a, args.dx_b,
                              1.0);  // wealth field is ignored by the solver
    const ripp::Threshold threshold = ripp::solvers::wealth_threshold(shape, args.rate);

    std::ostream& report_stream = args.sweep ? std::cerr : std::cout;
    if (args.as_json && !args.sweep) {
        json report = threshold_json("x_pr", threshold);
        report["case"] = "D";
        std::cout << report.dump(2) << '\n';
    } else {
        print_threshold_report(report_stream, "x_pr", threshold, std::nullopt);
    }

    if (args.sweep) {
        double lo = args.sweep_min, hi = args.sweep_max, step = args.sweep_step;
        if (!args.sweep_range_given) {
            const double center = threshold.exists() ? threshold.value() : args.dx_b;
            lo = center / 10.0;
            hi = center * 10.0;
            step = (hi - lo) / 60.0;
        }
        const ripp::Specification spec{ripp::Dynamics::multiplicative(args.rate),
                                       ripp::TimeFrame::Adaptive};
        std::ostringstream csv;
        csv << "x0,g_a,g_b,ga_minus_gb\n";
        for (double x0 : sweep_values(lo, hi, step)) {
            if (!(x0 > 0)) continue;
            const ripp::Problem problem(0.0, args.horizon, args.horizon + args.delay, args.dx_a,
                                        args.dx_b, x0);
            const ripp::Decision decision = ripp::prefer(spec, problem);
            csv << fmt12(x0) << ',' << fmt12(decision.g_a.value) << ','
                << fmt12(decision.g_b.value) << ','
                << fmt12(decision.g_a.value - decision.g_b.value) << '\n';
        }
        emit_text(csv.str(), args.out);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate

struct SimulateArgs {
    std::string dynamics, frame;
    double rate = 0.0;
    std::uint64_t seed = 0;
    std::size_t count = 1000;
    double h_min = 0.5, h_max = 2.0;
    double delay_min = 0.5, delay_max = 2.0;
    double dxa_min = 50.0, dxa_max = 150.0;
    double premium_min = 0.1, premium_max = 3.0;
    std::string policy = "growth-optimal";
    double policy_rate = 0.0;
    bool policy_rate_given = false;
    double wealth0 = 0.0;
    double tolerance = ripp::kDefaultTolerance;
    bool compare = false;
    std::string out;
    bool as_json = false;
};

ripp::sim::Policy parse_policy(const std::string& name, double exp_rate) {
    if (name == "growth-optimal") return ripp::sim::Policy::growth_optimal();
    if (name == "always-earlier") return ripp::sim::Policy::always_earlier();
    if (name == "always-later") return ripp::sim::Policy::always_later();
    if (name == "larger-payment") return ripp::sim::Policy::larger_payment();
    if (name == "exp-discounter") return ripp::sim::Policy::exponential_discounter(exp_rate);
    throw std::invalid_argument(
        "policy must be growth-optimal, always-earlier, always-later, larger-payment or "
        "exp-discounter");
}

int run_simulate(const SimulateArgs& args) {
    const ripp::Specification spec{parse_dynamics(args.dynamics, args.rate),
                                   parse_frame(args.frame)};
    ripp::sim::RippStream stream;
    stream.seed = args.seed;
    stream.count = args.count;
    stream.horizon = {args.h_min, args.h_max};
    stream.delay = {args.delay_min, args.delay_max};
    stream.dx_a = {args.dxa_min, args.dxa_max};
    stream.premium = {args.premium_min, args.premium_max};

    // Default baseline discounting rate: the true multiplicative rate when
    // available, otherwise zero.
    const double exp_rate = args.policy_rate_given
                                ? args.policy_rate
                                : (spec.dynamics.is_multiplicative() ? spec.dynamics.rate() : 0.0);

    if (args.compare) {
        const std::vector<ripp::sim::Policy> policies = {
            ripp::sim::Policy::growth_optimal(), ripp::sim::Policy::always_earlier(),
            ripp::sim::Policy::always_later(), ripp::sim::Policy::larger_payment(),
            ripp::sim::Policy::exponential_discounter(exp_rate)};
        std::ostringstream csv;
        csv << "policy,realized_growth,units,final_wealth,final_time,decisions\n";
        for (const auto& policy : policies) {
            const auto trajectory = ripp::sim::simulate(spec, stream, policy, args.wealth0,
                                                        args.tolerance);
            const auto growth = ripp::sim::realized_growth(trajectory, spec.dynamics);
            csv << policy.name() << ',' << fmt12(growth.value) << ','
                << ripp::to_string(growth.units) << ',' << fmt12(trajectory.final_wealth) << ','
                << fmt12(trajectory.final_time) << ',' << trajectory.choices.size() << '\n';
        }
        emit_text(csv.str(), args.out);
        return kExitOk;
    }

    const ripp::sim::Policy policy = parse_policy(args.policy, exp_rate);
    const auto trajectory = ripp::sim::simulate(spec, stream, policy, args.wealth0, args.tolerance);
    const auto growth = ripp::sim::realized_growth(trajectory, spec.dynamics);

    if (!args.out.empty()) {
        std::ofstream out(args.out, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file \"" + args.out + "\"");
        trajectory.write_csv(out);
    }

    if (args.as_json) {
        json report{{"policy", policy.name()},
                    {"case", ripp::to_string(spec.case_label())},
                    {"seed", args.seed},
                    {"decisions", trajectory.choices.size()},
                    {"final_time", round12(trajectory.final_time)},
                    {"final_wealth", round12(trajectory.final_wealth)},
                    {"realized_growth",
                     {{"value", round12(growth.value)}, {"units", ripp::to_string(growth.units)}}}};
        std::cout << report.dump(2) << '\n';
    } else {
        std::cout << "policy: " << policy.name() << '\n';
        std::cout << "decisions: " << trajectory.choices.size() << '\n';
        std::cout << "final_time: " << fmt4(trajectory.final_time) << '\n';
        std::cout << "final_wealth: " << fmt4(trajectory.final_wealth) << '\n';
        std::cout << "realized_growth: " << fmt4(growth.value) << " ("
                  << ripp::to_string(growth.units) << ")\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"growth-rate decision engine for intertemporal payment choices"};
    app.require_subcommand(1);

    EvaluateArgs ev;
    auto* evaluate = app.add_subcommand("evaluate", "evaluate one problem and report the preference");
    evaluate->add_option("--doc", ev.doc_path, "problem document (JSON)");
    auto* ev_t0 = evaluate->add_option("--t0", ev.t0, "decision time (years)");
    evaluate->add_option("--ta", ev.t_a, "earlier payment time");
    evaluate->add_option("--tb", ev.t_b, "later payment time");
    evaluate->add_option("--dxa", ev.dx_a, "earlier payment amount");
    evaluate->add_option("--dxb", ev.dx_b, "later payment amount");
    evaluate->add_option("--wealth", ev.wealth0, "initial wealth");
    evaluate->add_option("--dynamics", ev.dynamics, "additive|multiplicative");
    evaluate->add_option("--rate", ev.rate, "background growth rate (k or r)");
    evaluate->add_option("--frame", ev.frame, "fixed|adaptive");
    evaluate->add_option("--tol", ev.tolerance, "indifference tolerance");
    evaluate->add_flag("--json", ev.as_json, "machine-readable report");

    CurveArgs cv;
    auto* curve = app.add_subcommand("curve", "discount factor as a function of the delay (CSV)");
    curve->add_option("--case", cv.form, "B|exponential, C|hyperbolic, hybrid, numeric");
    curve->add_flag("--triple", cv.triple, "emit hybrid, hyperbolic and exponential columns");
    curve->add_option("--d-min", cv.d_min, "first delay");
    curve->add_option("--d-max", cv.d_max, "last delay");
    curve->add_option("--d-step", cv.d_step, "delay step");
    auto* cv_h = curve->add_option("--horizon", cv.horizon, "horizon H");
    auto* cv_r = curve->add_option("--rate", cv.rate, "background rate r");
    curve->add_option("--wealth", cv.wealth0, "initial wealth (numeric case)");
    curve->add_option("--dxb", cv.dx_b, "later payment (numeric case)");
    curve->add_option("--out", cv.out, "write CSV here instead of stdout");

    ReversalArgs rv;
    auto* reversal =
        app.add_subcommand("reversal", "preference-reversal horizon H_pr (and t0_pr)");
    reversal->add_option("--dynamics", rv.dynamics, "additive|multiplicative")->required();
    reversal->add_option("--frame", rv.frame, "fixed|adaptive")->required();
    reversal->add_option("--delay", rv.delay, "delay D")->required();
    reversal->add_option("--dxa", rv.dx_a, "earlier payment")->required();
    reversal->add_option("--dxb", rv.dx_b, "later payment")->required();
    reversal->add_option("--rate", rv.rate, "background rate");
    auto* rv_w = reversal->add_option("--wealth", rv.wealth0, "initial wealth (numeric mode)");
    reversal->add_option("--mode", rv.mode, "closed|numeric");
    auto* rv_ta = reversal->add_option("--ta", rv.t_a, "earlier payment time, to report t0_pr");
    reversal->add_flag("--sweep", rv.sweep, "emit a sign(g_a-g_b) sweep over H (CSV)");
    auto* rv_smin = reversal->add_option("--sweep-min", rv.sweep_min, "sweep start");
    reversal->add_option("--sweep-max", rv.sweep_max, "sweep end");
    reversal->add_option("--sweep-step", rv.sweep_step, "sweep step");
    reversal->add_option("--out", rv.out, "write sweep CSV here");
    reversal->add_flag("--json", rv.as_json, "machine-readable report");

    WealthThresholdArgs wt;
    auto* wealth_threshold =
        app.add_subcommand("wealth-threshold", "wealth level x_pr at which the preference flips");
    wealth_threshold->add_option("--horizon", wt.horizon, "horizon H")->required();
    wealth_threshold->add_option("--delay", wt.delay, "delay D")->required();
    wealth_threshold->add_option("--dxa", wt.dx_a, "earlier payment")->required();
    wealth_threshold->add_option("--dxb", wt.dx_b, "later payment")->required();
    wealth_threshold->add_option("--rate", wt.rate, "background rate r");
    wealth_threshold->add_flag("--sweep", wt.sweep, "emit (x0, g_a-g_b) sweep (CSV)");
    auto* wt_smin = wealth_threshold->add_option("--sweep-min", wt.sweep_min, "sweep start");
    wealth_threshold->add_option("--sweep-max", wt.sweep_max, "sweep end");
    wealth_threshold->add_option("--sweep-step", wt.sweep_step, "sweep step");
    wealth_threshold->add_option("--out", wt.out, "write sweep CSV here");
    wealth_threshold->add_flag("--json", wt.as_json, "machine-readable report");

    SimulateArgs sm;
    auto* simulate = app.add_subcommand("simulate", "repeated-choice simulation on a seeded stream");
    simulate->add_option("--dynamics", sm.dynamics, "additive|multiplicative")->required();
    simulate->add_option("--rate", sm.rate, "background rate");
    simulate->add_option("--frame", sm.frame, "fixed|adaptive")->required();
    simulate->add_option("--seed", sm.seed, "stream seed")->required();
    simulate->add_option("--count", sm.count, "number of decisions");
    simulate->add_option("--h-min", sm.h_min, "horizon range low");
    simulate->add_option("--h-max", sm.h_max, "horizon range high");
    simulate->add_option("--delay-min", sm.delay_min, "delay range low");
    simulate->add_option("--delay-max", sm.delay_max, "delay range high");
    simulate->add_option("--dxa-min", sm.dxa_min, "earlier payment range low");
    simulate->add_option("--dxa-max", sm.dxa_max, "earlier payment range high");
    simulate->add_option("--premium-min", sm.premium_min, "dx_b premium range low");
    simulate->add_option("--premium-max", sm.premium_max, "dx_b premium range high");
    simulate->add_option("--policy", sm.policy,
                         "growth-optimal|always-earlier|always-later|larger-payment|exp-discounter");
    auto* sm_pr = simulate->add_option("--policy-rate", sm.policy_rate,
                                       "discount rate for exp-discounter");
    simulate->add_option("--wealth", sm.wealth0, "initial wealth")->required();
    simulate->add_option("--tol", sm.tolerance, "indifference tolerance");
    simulate->add_flag("--compare", sm.compare, "run all policies on the matched stream");
    simulate->add_option("--out", sm.out, "trajectory CSV (single policy) or comparison CSV");
    simulate->add_flag("--json", sm.as_json, "machine-readable summary");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return kExitInput;
    }

    ev.inline_given = ev_t0->count() > 0;
    cv.horizon_given = cv_h->count() > 0;
    cv.rate_given = cv_r->count() > 0;
    rv.t_a_given = rv_ta->count() > 0;
    rv.wealth_given = rv_w->count() > 0;
    rv.sweep_range_given = rv_smin->count() > 0;
    wt.sweep_range_given = wt_smin->count() > 0;
    sm.policy_rate_given = sm_pr->count() > 0;

    try {
        if (app.got_subcommand(evaluate)) return run_evaluate(ev);
        if (app.got_subcommand(curve)) return run_curve(cv);
        if (app.got_subcommand(reversal)) return run_reversal(rv);
        if (app.got_subcommand(wealth_threshold)) return run_wealth_threshold(wt);
        if (app.got_subcommand(simulate)) return run_simulate(sm);
    } catch (const ripp::io::SchemaError& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitInput;
    } catch (const ripp::InvalidProblem& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitInput;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitDomain;
    }
    return kExitOk;
}
