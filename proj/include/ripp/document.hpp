#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "ripp/core.hpp"
#include "ripp/solvers.hpp"

// Structured problem input. One JSON document fully describes a problem and
// its model specification, with optional tolerance and solver overrides:
//
//   {
//     "t0": 0, "t_a": 1, "t_b": 2,            // years
//     "dx_a": 1000, "dx_b": 2500,             // currency units
//     "wealth0": 500,
//     "dynamics": {"type": "multiplicative", "rate": 0.03},
//     "time_frame": "adaptive",
//     "tolerance": 1e-12,                     // optional
//     "solver": {"abs_tol": 1e-12}            // optional, keys below
//   }
//
// Unknown keys are rejected everywhere: a typo should fail loudly, not
// silently fall back to a default.

namespace ripp::io {

struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

using json = nlohmann::json;

inline const json& require_key(const json& object, const std::string& key, const char* where) {
    const auto it = object.find(key);
    if (it == object.end())
        throw SchemaError("document: missing key \"" + key + "\" in " + where);
    return *it;
}

inline double require_number(const json& object, const std::string& key, const char* where) {
    const json& value = require_key(object, key, where);
    if (!value.is_number())
        throw SchemaError("document: key \"" + key + "\" in " + where + " must be a number");
    return value.get<double>();
}

inline std::string require_string(const json& object, const std::string& key, const char* where) {
    const json& value = require_key(object, key, where);
    if (!value.is_string())
        throw SchemaError("document: key \"" + key + "\" in " + where + " must be a string");
    return value.get<std::string>();
}

inline void reject_unknown_keys(const json& object, std::initializer_list<const char*> allowed,
                                const char* where) {
    for (const auto& item : object.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw SchemaError("document: unknown key \"" + item.key() + "\" in " + where);
    }
}

}  // namespace detail

/// A parsed problem document: the problem, its specification, the
/// indifference tolerance, and the solver configuration.
struct ProblemDocument {
    Problem problem;
    Specification spec;
    double tolerance = kDefaultTolerance;
    solvers::RootConfig solver;

    static ProblemDocument from_json(const nlohmann::json& doc) {
        using detail::require_number;
        using detail::require_string;
        if (!doc.is_object()) throw SchemaError("document: top level must be a JSON object");
        detail::reject_unknown_keys(doc,
                                    {"t0", "t_a", "t_b", "dx_a", "dx_b", "wealth0", "dynamics",
                                     "time_frame", "tolerance", "solver"},
                                    "the document");

        const nlohmann::json& dyn = detail::require_key(doc, "dynamics", "the document");
        if (!dyn.is_object()) throw SchemaError("document: \"dynamics\" must be an object");
        detail::reject_unknown_keys(dyn, {"type", "rate"}, "\"dynamics\"");
        const std::string type = require_string(dyn, "type", "\"dynamics\"");
        const double rate = require_number(dyn, "rate", "\"dynamics\"");
        Dynamics dynamics = Dynamics::additive(0.0);
        if (type == "additive")
            dynamics = Dynamics::additive(rate);
        else if (type == "multiplicative")
            dynamics = Dynamics::multiplicative(rate);
        else
            throw SchemaError("document: dynamics type must be \"additive\" or \"multiplicative\"");

        const std::string frame = require_string(doc, "time_frame", "the document");
        TimeFrame time_frame;
        if (frame == "fixed")
            time_frame = TimeFrame::Fixed;
        else if (frame == "adaptive")
            time_frame = TimeFrame::Adaptive;
        else
            throw SchemaError("document: time_frame must be \"fixed\" or \"adaptive\"");

        double tolerance = kDefaultTolerance;
        if (doc.contains("tolerance")) {
            tolerance = require_number(doc, "tolerance", "the document");
            if (!(tolerance >= 0)) throw SchemaError("document: tolerance must be nonnegative");
        }

        solvers::RootConfig solver;
        if (doc.contains("solver")) {
            const nlohmann::json& cfg = doc.at("solver");
            if (!cfg.is_object()) throw SchemaError("document: \"solver\" must be an object");
            detail::reject_unknown_keys(cfg,
                                        {"abs_tol", "rel_tol", "max_iter",
                                         "bracket_expansion_factor", "max_bracket_expansions"},
                                        "\"solver\"");
            if (cfg.contains("abs_tol")) solver.abs_tol = require_number(cfg, "abs_tol", "\"solver\"");
            if (cfg.contains("rel_tol")) solver.rel_tol = require_number(cfg, "rel_tol", "\"solver\"");
            if (cfg.contains("max_iter"))
                solver.max_iter = static_cast<int>(require_number(cfg, "max_iter", "\"solver\""));
            if (cfg.contains("bracket_expansion_factor"))
                solver.bracket_expansion_factor =
                    require_number(cfg, "bracket_expansion_factor", "\"solver\"");
            if (cfg.contains("max_bracket_expansions"))
                solver.max_bracket_expansions =
                    static_cast<int>(require_number(cfg, "max_bracket_expansions", "\"solver\""));
            try {
                solver.validate();
            } catch (const std::invalid_argument& error) {
                throw SchemaError(std::string("document: ") + error.what());
            }
        }

        try {
            Problem problem(require_number(doc, "t0", "the document"),
                            require_number(doc, "t_a", "the document"),
                            require_number(doc, "t_b", "the document"),
                            require_number(doc, "dx_a", "the document"),
                            require_number(doc, "dx_b", "the document"),
                            require_number(doc, "wealth0", "the document"));
            return ProblemDocument{problem, Specification{dynamics, time_frame}, tolerance, solver};
        } catch (const InvalidProblem& error) {
            throw SchemaError(std::string("document: ") + error.what());
        }
    }

    static ProblemDocument load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw SchemaError("document: cannot open \"" + path + "\"");
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& error) {
            throw SchemaError(std::string("document: invalid JSON: ") + error.what());
        }
        return from_json(doc);
    }

    nlohmann::json to_json() const {
        return nlohmann::json{
            {"t0", problem.t0()},
            {"t_a", problem.t_a()},
            {"t_b", problem.t_b()},
            {"dx_a", problem.dx_a()},
            {"dx_b", problem.dx_b()},
            {"wealth0", problem.wealth0()},
            {"dynamics",
             {{"type", to_string(spec.dynamics.kind())}, {"rate", spec.dynamics.rate()}}},
            {"time_frame", to_string(spec.time_frame)},
            {"tolerance", tolerance},
            {"solver",
             {{"abs_tol", solver.abs_tol},
              {"rel_tol", solver.rel_tol},
              {"max_iter", solver.max_iter},
              {"bracket_expansion_factor", solver.bracket_expansion_factor},
              {"max_bracket_expansions", solver.max_bracket_expansions}}}};
    }
};

}  // namespace ripp::io
