// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion.
//
//   ripp_acceptance [--criterion N] --cli /path/to/ripp
//
// The exit code is the number of failed criteria.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "ripp/core.hpp"
#include "ripp/sim.hpp"
#include "ripp/solvers.hpp"

namespace {

using namespace ripp;
using testutil::Rng;

std::string g_cli_path;

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

struct CommandResult {
    int exit_code;
    std::string output;
};

CommandResult run_command(const std::string& command) {
    FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string output;
    char buffer[4096];
    size_t n = 0;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) output.append(buffer, n);
    const int status = pclose(pipe);
    return {WEXITSTATUS(status), output};
}

Specification spec_for(CaseLabel label, double rate) {
    switch (label) {
        case CaseLabel::A: return {Dynamics::additive(rate), TimeFrame::Fixed};
        case CaseLabel::B: return {Dynamics::multiplicative(rate), TimeFrame::Fixed};
        case CaseLabel::C: return {Dynamics::additive(rate), TimeFrame::Adaptive};
        case CaseLabel::D: return {Dynamics::multiplicative(rate), TimeFrame::Adaptive};
    }
    throw std::logic_error("unreachable");
}

// Criterion 1: the worked example. Case D, x0 = 500: g_a within 1.1086 +/-
// 0.0001 and g_b within 0.9010 +/- 0.0001, earlier preferred; x0 = 5500:
// g_a 0.1925 +/- 0.0005, g_b 0.2082 +/- 0.0005, later preferred.
bool criterion_worked_example(std::string& detail) {
    const auto spec = spec_for(CaseLabel::D, 0.03);
    const Decision poor = prefer(spec, Problem(0.0, 1.0, 2.0, 1000.0, 2500.0, 500.0));
    const Decision rich = prefer(spec, Problem(0.0, 1.0, 2.0, 1000.0, 2500.0, 5500.0));

    const bool ga_ok = std::abs(poor.g_a.value - 1.1086) <= 1e-4;
    const bool gb_ok = std::abs(poor.g_b.value - 0.9010) <= 1e-4;
    const bool pref_ok = poor.preference == Preference::EarlierPreferred;
    const bool ga2_ok = std::abs(rich.g_a.value - 0.1925) <= 5e-4;
    const bool gb2_ok = std::abs(rich.g_b.value - 0.2082) <= 5e-4;
    const bool pref2_ok = rich.preference == Preference::LaterPreferred;

    std::ostringstream s;
    s << "g_a=" << fmt(poor.g_a.value) << " (target 1.1086+/-0.0001"
      << (ga_ok ? ""
                : " MISSED; ln(1+1000/(500 e^0.03))+0.03 = 1.1087126, so the pinned 1.1086 is "
                  "off in its fourth decimal")
      << "), g_b=" << fmt(poor.g_b.value) << ", at 5500: g_a=" << fmt(rich.g_a.value)
      << ", g_b=" << fmt(rich.g_b.value);
    detail = s.str();
    return ga_ok && gb_ok && pref_ok && ga2_ok && gb2_ok && pref2_ok;
}

// Criterion 2: wealth threshold on the same parameters is 2277 +/- 1.
bool criterion_wealth_threshold(std::string& detail) {
    const Problem fig(0.0, 1.0, 2.0, 1000.0, 2500.0, 500.0);
    const Threshold threshold = solvers::wealth_threshold(fig, 0.03);
    if (!threshold.exists()) {
        detail = "threshold unexpectedly missing";
        return false;
    }
    detail = "x_pr=" + fmt(threshold.value());
    return std::abs(threshold.value() - 2277.0) <= 1.0;
}

// Criterion 3: over 1e4 random parameter sets per case, case-B preference
// equals sign(dx_a e^{rD} - dx_b) and case-C preference equals
// sign(dx_a/H - dx_b/(H+D)), exactly, outside a 1e-12 indifference band.
bool criterion_closed_form_oracles(std::string& detail) {
    Rng rng(301);
    int mismatches = 0;
    int checked_b = 0, checked_c = 0;
    for (int i = 0; i < 10000; ++i) {
        const double h = rng.uniform(0.05, 10.0);
        const double d = rng.uniform(0.05, 10.0);
        const double dxa = rng.uniform(0.1, 1000.0);
        const double dxb = dxa * (1.0 + rng.uniform(1e-6, 3.0));
        const Problem p(0.0, h, h + d, dxa, dxb, rng.uniform(1.0, 1e5));

        const double r = rng.uniform(-0.3, 0.5);
        const Decision b = prefer(spec_for(CaseLabel::B, r), p);
        if (b.preference != Preference::Indifferent) {
            ++checked_b;
            const bool earlier = dxa * std::exp(r * d) - dxb > 0.0;
            if ((b.preference == Preference::EarlierPreferred) != earlier) ++mismatches;
        }

        const double k = rng.uniform(-50.0, 50.0);
        const Decision c = prefer(spec_for(CaseLabel::C, k), p);
        if (c.preference != Preference::Indifferent) {
            ++checked_c;
            const bool earlier = dxa / h - dxb / (h + d) > 0.0;
            if ((c.preference == Preference::EarlierPreferred) != earlier) ++mismatches;
        }
    }
    std::ostringstream s;
    s << checked_b << " case-B and " << checked_c << " case-C comparisons, " << mismatches
      << " mismatches";
    detail = s.str();
    return mismatches == 0;
}

// Criterion 4: for 1e3 random case-C instances the closed-form reversal
// horizon agrees with a brute-force prefer() sweep to within 1e-6, and
// t0_pr equals t_a - H_pr to 1e-12.
bool criterion_hyperbolic_threshold(std::string& detail) {
    Rng rng(401);
    double worst_sweep = 0.0;
    double worst_identity = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double delay = rng.uniform(0.1, 5.0);
        const double dxa = rng.uniform(1.0, 100.0);
        const double dxb = dxa * (1.0 + rng.uniform(0.1, 5.0));
        const double k = rng.uniform(-5.0, 5.0);
        const auto spec = spec_for(CaseLabel::C, k);

        const double closed =
            reversal_horizon_closed(DiscountForm::Hyperbolic, delay, dxa, dxb, 0.0).value();
        const double swept =
            testutil::sweep_reversal_horizon(spec, delay, dxa, dxb, 0.0, 1e-6);
        worst_sweep = std::max(worst_sweep, std::abs(closed - swept));

        const double t0 = rng.uniform(-5.0, 5.0);
        const double t_a = t0 + rng.uniform(0.05, 5.0);
        const Problem p(t0, t_a, t_a + delay, dxa, dxb, 0.0);
        const double t0_pr = critical_decision_time(p).value();
        const double h_pr =
            reversal_horizon_closed(DiscountForm::Hyperbolic, p.delay(), dxa, dxb, 0.0).value();
        worst_identity = std::max(worst_identity, std::abs(t0_pr - (t_a - h_pr)));
    }
    detail = "max |closed-sweep|=" + fmt(worst_sweep) +
             ", max |t0_pr-(t_a-H_pr)|=" + fmt(worst_identity);
    return worst_sweep <= 1e-6 && worst_identity <= 1e-12;
}

// Criterion 5: with payments at 1e-6 of wealth the numeric case-D discount
// factor matches e^{-rD}/(1+D/H) within 1e-4 relative over a grid of
// (r, H, D), and halving the payment scale roughly halves the discrepancy.
bool criterion_small_payment_convergence(std::string& detail) {
    solvers::RootConfig tight;
    tight.abs_tol = 1e-18;
    tight.rel_tol = 1e-13;
    tight.max_iter = 500;

    const double wealth = 1000.0;
    double worst_rel = 0.0;
    double worst_ratio_err = 0.0;
    int cells = 0;
    for (const double r : {0.01, 0.1, 0.25, 0.5}) {
        for (const double h : {0.1, 0.5, 1.0, 2.5, 5.0}) {
            for (const double d : {0.1, 1.0, 5.0, 10.0}) {
                ++cells;
                const double hybrid = discount_closed(DiscountForm::HybridApprox, d, h, r).value;
                const double full = solvers::indifference_ratio_numeric(h, d, wealth,
                                                                        1e-6 * wealth, r, tight)
                                        .value;
                const double err_full = std::abs(full - hybrid) / hybrid;
                worst_rel = std::max(worst_rel, err_full);

                const double half = solvers::indifference_ratio_numeric(h, d, wealth,
                                                                        5e-7 * wealth, r, tight)
                                        .value;
                const double err_half = std::abs(half - hybrid) / hybrid;
                if (err_full > 1e-12) {
                    const double ratio = err_half / err_full;
                    worst_ratio_err = std::max(worst_ratio_err, std::abs(ratio - 0.5));
                }
            }
        }
    }
    std::ostringstream s;
    s << cells << " grid cells, max rel err=" << fmt(worst_rel)
      << ", max |err_half/err_full - 0.5|=" << fmt(worst_ratio_err);
    detail = s.str();
    return worst_rel <= 1e-4 && worst_ratio_err <= 0.1;
}

// Criterion 6: Fig.-6-style asymptotics at r=0.4, H=0.65:
// |ln d_hybrid - ln d_hyp| < 0.01 at D=0.02 and
// |ln d_hybrid - ln d_exp| / |ln d_hybrid| < 0.05 at D=50.
bool criterion_hybrid_asymptotics(std::string& detail) {
    const double r = 0.4, h = 0.65;
    const auto log_delta = [&](DiscountForm form, double delay) {
        return std::log(discount_closed(form, delay, h, r).value);
    };

    const double short_gap = std::abs(log_delta(DiscountForm::HybridApprox, 0.02) -
                                      log_delta(DiscountForm::Hyperbolic, 0.02));
    const bool short_ok = short_gap < 0.01;

    const auto long_ratio = [&](double delay) {
        const double hybrid = log_delta(DiscountForm::HybridApprox, delay);
        return std::abs(hybrid - log_delta(DiscountForm::Exponential, delay)) / std::abs(hybrid);
    };
    const double ratio_50 = long_ratio(50.0);
    const bool long_ok = ratio_50 < 0.05;

    std::ostringstream s;
    s << "|ln gap|(D=0.02)=" << fmt(short_gap) << " (<0.01), ratio(D=50)=" << fmt(ratio_50)
      << " (<0.05 required; the form gives ln(1+D/H)/(rD+ln(1+D/H)) = 0.1788 at D=50 and "
         "first drops below 0.05 near D=300: ratio(D=300)="
      << fmt(long_ratio(300.0)) << ")";
    detail = s.str();
    return short_ok && long_ok;
}

// Criterion 7: transitivity over 1e4 random payment triples per case, for
// strict chains and for chains constructed at exact indifference points.
bool criterion_transitivity(std::string& detail) {
    Rng rng(701);
    long strict_checked = 0;
    long violations = 0;

    const auto relation = [](const Specification& spec, double t0, double wealth, double t_x,
                             double x_x, double t_y, double x_y) {
        // x precedes y; returns +1 when x is preferred, -1 when y is, 0 at
        // indifference. Valid only when x_y > x_x, which the callers ensure.
        // The 1e-12 indifference band is scaled to the magnitude of the two
        // rates: constructed equality points carry rounding noise of a few
        // ulps of the rates themselves.
        const Decision d = prefer(spec, Problem(t0, t_x, t_y, x_x, x_y, wealth));
        const double diff = rate_difference(d.g_a, d.g_b);
        const double band =
            1e-12 * std::max({1.0, std::abs(d.g_a.value), std::abs(d.g_b.value)});
        if (diff > band) return +1;
        if (-diff > band) return -1;
        return 0;
    };

    for (const CaseLabel label : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D}) {
        for (int i = 0; i < 10000; ++i) {
            const double rate = label == CaseLabel::A || label == CaseLabel::C
                                    ? rng.uniform(-10.0, 10.0)
                                    : rng.uniform(-0.1, 0.4);
            const auto spec = spec_for(label, rate);
            const double t0 = 0.0;
            const double wealth = rng.uniform(10.0, 1e4);
            const double t1 = rng.uniform(0.05, 3.0);
            const double t2 = t1 + rng.uniform(0.05, 3.0);
            const double t3 = t2 + rng.uniform(0.05, 3.0);
            const double x1 = rng.uniform(0.5, 500.0);
            const double x2 = x1 * (1.0 + rng.uniform(0.01, 2.0));
            const double x3 = x2 * (1.0 + rng.uniform(0.01, 2.0));

            const int ab = relation(spec, t0, wealth, t1, x1, t2, x2);
            const int bc = relation(spec, t0, wealth, t2, x2, t3, x3);
            const int ac = relation(spec, t0, wealth, t1, x1, t3, x3);
            ++strict_checked;
            if (ab == +1 && bc == +1 && ac != +1) ++violations;
            if (ab == -1 && bc == -1 && ac != -1) ++violations;
            if (ab == 0 && bc == 0 && ac != 0) ++violations;
        }
    }

    // Exact indifference chains. Case A has none inside the problem domain
    // (equal payments are excluded by dx_b > dx_a), so cases B, C and D are
    // constructed here.
    long indifference_checked = 0;
    for (int i = 0; i < 10000; ++i) {
        const double t0 = 0.0;
        const double t1 = rng.uniform(0.05, 3.0);
        const double t2 = t1 + rng.uniform(0.05, 3.0);
        const double t3 = t2 + rng.uniform(0.05, 3.0);
        const double wealth = rng.uniform(10.0, 1e4);
        const double x1 = rng.uniform(0.5, 500.0);

        {  // case B: equal compounded value
            const double r = rng.uniform(0.01, 0.4);
            const auto spec = spec_for(CaseLabel::B, r);
            const double x2 = x1 * std::exp(r * (t2 - t1));
            const double x3 = x2 * std::exp(r * (t3 - t2));
            const int ab = relation(spec, t0, wealth, t1, x1, t2, x2);
            const int bc = relation(spec, t0, wealth, t2, x2, t3, x3);
            const int ac = relation(spec, t0, wealth, t1, x1, t3, x3);
            ++indifference_checked;
            if (ab != 0 || bc != 0 || ac != 0) ++violations;
        }
        {  // case C: equal payment rate
            const auto spec = spec_for(CaseLabel::C, rng.uniform(-10.0, 10.0));
            const double x2 = x1 * (t2 - t0) / (t1 - t0);
            const double x3 = x1 * (t3 - t0) / (t1 - t0);
            const int ab = relation(spec, t0, wealth, t1, x1, t2, x2);
            const int bc = relation(spec, t0, wealth, t2, x2, t3, x3);
            const int ac = relation(spec, t0, wealth, t1, x1, t3, x3);
            ++indifference_checked;
            if (ab != 0 || bc != 0 || ac != 0) ++violations;
        }
        {  // case D: equal adaptive growth rate, inverted analytically
            const double r = rng.uniform(0.0, 0.3);
            const auto spec = spec_for(CaseLabel::D, r);
            const double g1 = multiplicative_growth(x1, wealth, t1 - t0, t1 - t0, r);
            const auto payment_at = [&](double t) {
                const double tau = t - t0;
                return wealth * std::exp(r * tau) * std::expm1((g1 - r) * tau);
            };
            const double x2 = payment_at(t2);
            const double x3 = payment_at(t3);
            const int ab = relation(spec, t0, wealth, t1, x1, t2, x2);
            const int bc = relation(spec, t0, wealth, t2, x2, t3, x3);
            const int ac = relation(spec, t0, wealth, t1, x1, t3, x3);
            ++indifference_checked;
            if (ab != 0 || bc != 0 || ac != 0) ++violations;
        }
    }

    std::ostringstream s;
    s << strict_checked << " strict triples (all four cases), " << indifference_checked
      << " constructed indifference triples (cases B/C/D; case A has no indifference points "
         "inside the domain), "
      << violations << " violations";
    detail = s.str();
    return violations == 0;
}

// Criterion 8: scaling (x0, dx_a, dx_b) by lambda in {1e-3, 1, 1e3} moves
// case B and D growth rates by less than 1e-12 relative.
bool criterion_scale_invariance(std::string& detail) {
    Rng rng(801);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
        const double h = rng.uniform(0.1, 5.0);
        const double d = rng.uniform(0.1, 5.0);
        const double dxa = rng.uniform(1.0, 1000.0);
        const double dxb = dxa * (1.0 + rng.uniform(0.01, 3.0));
        const double wealth = rng.uniform(1.0, 1e4);
        const double r = rng.uniform(-0.2, 0.5);
        for (const CaseLabel label : {CaseLabel::B, CaseLabel::D}) {
            const auto spec = spec_for(label, r);
            const Problem base(0.0, h, h + d, dxa, dxb, wealth);
            const double g_a = growth_rate(spec, Option::Earlier, base).value;
            const double g_b = growth_rate(spec, Option::Later, base).value;
            for (const double lambda : {1e-3, 1.0, 1e3}) {
                const Problem scaled(0.0, h, h + d, lambda * dxa, lambda * dxb, lambda * wealth);
                worst = std::max(worst,
                                 std::abs(growth_rate(spec, Option::Earlier, scaled).value - g_a) /
                                     std::abs(g_a));
                worst = std::max(worst,
                                 std::abs(growth_rate(spec, Option::Later, scaled).value - g_b) /
                                     std::abs(g_b));
            }
        }
    }
    detail = "max relative change " + fmt(worst);
    return worst < 1e-12;
}

// Criterion 9: on matched seeded streams of 1e4 decisions per specification
// the growth-optimal policy realizes at least every baseline's growth minus
// 1% slack, and strictly exceeds the best baseline in cases C and D.
bool criterion_simulator_dominance(std::string& detail) {
    using sim::Policy;
    using sim::RippStream;

    std::ostringstream s;
    bool ok = true;
    for (const CaseLabel label : {CaseLabel::A, CaseLabel::B, CaseLabel::C, CaseLabel::D}) {
        const bool multiplicative = label == CaseLabel::B || label == CaseLabel::D;
        // Multiplicative rates are kept low so 1e4 compounding periods stay
        // comfortably inside double range.
        const double rate = multiplicative ? 0.01 : (label == CaseLabel::A ? 1.0 : 0.0);
        const auto spec = spec_for(label, rate);
        const double wealth0 = multiplicative ? 100.0 : 0.0;

        RippStream stream;
        stream.seed = 90000 + static_cast<std::uint64_t>(label);
        stream.count = 10000;

        const std::vector<Policy> baselines = {
            Policy::always_earlier(), Policy::always_later(), Policy::larger_payment(),
            Policy::exponential_discounter(multiplicative ? rate : 0.2)};

        const double optimal =
            sim::realized_growth(sim::simulate(spec, stream, Policy::growth_optimal(), wealth0),
                                 spec.dynamics)
                .value;
        double best_baseline = -1e300;
        for (const auto& policy : baselines) {
            const double value =
                sim::realized_growth(sim::simulate(spec, stream, policy, wealth0), spec.dynamics)
                    .value;
            best_baseline = std::max(best_baseline, value);
            if (!(optimal >= value - 0.01 * std::abs(optimal))) ok = false;
        }
        const bool strict_needed = label == CaseLabel::C || label == CaseLabel::D;
        if (strict_needed && !(optimal > best_baseline)) ok = false;
        s << "case " << to_string(label) << ": optimal=" << fmt(optimal)
          << " best baseline=" << fmt(best_baseline) << "; ";
    }
    detail = s.str();
    return ok;
}

// Criterion 10: repeated CLI runs with identical inputs and seeds produce
// byte-identical CSV output.
bool criterion_cli_determinism(std::string& detail) {
    if (g_cli_path.empty()) {
        detail = "no --cli path provided";
        return false;
    }
    const std::string simulate =
        g_cli_path +
        " simulate --dynamics multiplicative --rate 0.01 --frame adaptive --seed 12345 "
        "--count 2000 --wealth 100 --compare";
    const CommandResult sim_a = run_command(simulate);
    const CommandResult sim_b = run_command(simulate);

    const std::string curve =
        g_cli_path + " curve --triple --rate 0.4 --horizon 0.65 --d-min 0 --d-max 50 --d-step 0.5";
    const CommandResult curve_a = run_command(curve);
    const CommandResult curve_b = run_command(curve);

    const bool ok = sim_a.exit_code == 0 && sim_b.exit_code == 0 &&
                    sim_a.output == sim_b.output && !sim_a.output.empty() &&
                    curve_a.exit_code == 0 && curve_a.output == curve_b.output &&
                    !curve_a.output.empty();
    std::ostringstream s;
    s << "simulate: " << sim_a.output.size() << " bytes x2 "
      << (sim_a.output == sim_b.output ? "identical" : "DIFFER") << "; curve: "
      << curve_a.output.size() << " bytes x2 "
      << (curve_a.output == curve_b.output ? "identical" : "DIFFER");
    detail = s.str();
    return ok;
}

struct Criterion {
    int id;
    const char* name;
    bool (*run)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "worked example growth rates and preferences", criterion_worked_example},
    {2, "wealth threshold 2277 +/- 1", criterion_wealth_threshold},
    {3, "closed-form preference oracles (cases B and C)", criterion_closed_form_oracles},
    {4, "hyperbolic reversal horizon vs sweep and t0 identity", criterion_hyperbolic_threshold},
    {5, "small-payment convergence of the numeric discount factor",
     criterion_small_payment_convergence},
    {6, "hybrid discount asymptotics", criterion_hybrid_asymptotics},
    {7, "transitivity of growth-optimal preferences", criterion_transitivity},
    {8, "scale invariance of multiplicative growth rates", criterion_scale_invariance},
    {9, "simulator dominance of the growth-optimal policy", criterion_simulator_dominance},
    {10, "CLI determinism", criterion_cli_determinism},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
        } else if (std::strcmp(argv[i], "--cli") == 0 && i + 1 < argc) {
            g_cli_path = argv[++i];
        } else {
            std::cerr << "usage: ripp_acceptance [--criterion N] --cli /path/to/ripp\n";
            return 64;
        }
    }

    int failures = 0;
    for (const auto& criterion : kCriteria) {
        if (selected != 0 && criterion.id != selected) continue;
        std::string detail;
        const bool pass = criterion.run(detail);
        if (!pass) ++failures;
        std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion.id << ": "
                  << criterion.name << (detail.empty() ? "" : " -- " + detail) << '\n';
    }
    return failures;
}
