#pragma once

// Structured reports for the CLI: a single Report type serialized to a fixed
// JSON shape (keys: input, field, lambda, parity, genus, splitting,
// assumptions, errors) or rendered as text.  Output is deterministic; no
// timestamps or volatile data in the payload.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "field.hpp"
#include "lambda.hpp"
#include "oracle.hpp"
#include "parity.hpp"
#include "tower.hpp"

namespace mq2::cli {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitHypothesis = 3;
constexpr int kExitInternal = 4;

struct CliError {
    std::string kind; // "input" | "hypothesis" | "internal"
    std::string message;
};

struct Report {
    nlohmann::json input = nlohmann::json::object();
    std::optional<std::string> field;
    std::optional<LambdaResult> lambda;
    std::optional<ParityVerdict> parity;
    std::optional<GenusFieldResult> genus;
    std::vector<SplittingReport> splitting;
    std::vector<std::string> assumptions;
    std::vector<CliError> errors;
};

inline nlohmann::json to_json(const LambdaResult& r) {
    auto terms = [](const std::vector<LambdaTerm>& ts) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& t : ts)
            a.push_back({{"prime", t.prime}, {"exponent", t.exponent}, {"contribution", t.contribution}});
        return a;
    };
    return {
        {"lambda2", r.lambda2},
        {"lambda_plus", r.assumed_lambda_plus},
        {"greenberg_assumed", r.greenberg_assumed},
        {"r", r.r},
        {"theta", r.theta ? 1 : 0},
        {"delta", r.delta ? 1 : 0},
        {"real_prime_terms", terms(r.real_prime_terms)},
        {"imaginary_prime_terms", terms(r.imaginary_prime_terms)},
        {"s_terms", r.s_terms},
        {"f_terms", r.f_terms},
        {"presentation",
         {{"real_radicands", r.presentation.real_radicands},
          {"imaginary_radicand", r.presentation.imaginary_radicand},
          {"theta", r.presentation.theta ? 1 : 0},
          {"admissible", r.presentation.admissible}}},
    };
}

inline nlohmann::json to_json(const ParityVerdict& v) {
    nlohmann::json j{{"verdict", to_string(v.verdict)},
                     {"matched_case", nullptr},
                     {"witness", v.witness},
                     {"notes", v.notes}};
    if (v.matched_case) j["matched_case"] = *v.matched_case;
    return j;
}

inline nlohmann::json to_json(const GenusFieldResult& g) {
    nlohmann::json gens = nlohmann::json::array();
    for (const auto& c : g.narrow_generators) gens.push_back(c.to_integer());
    return {{"base", g.base.serialize()},
            {"narrow_generators", gens},
            {"narrow_field", g.narrow.serialize()},
            {"genus_field", g.genus.serialize()}};
}

inline nlohmann::json to_json(const SplittingReport& s) {
    nlohmann::json steps = nlohmann::json::object();
    for (const auto& [d, b] : s.quadratic_steps) steps[std::to_string(d)] = to_string(b);
    return {{"prime", s.prime}, {"level", s.level}, {"e", s.e},
            {"f", s.f},         {"g", s.g},         {"quadratic_steps", steps}};
}

inline nlohmann::json to_json(const Report& r) {
    nlohmann::json j;
    j["input"] = r.input;
    j["field"] = r.field ? nlohmann::json(*r.field) : nlohmann::json(nullptr);
    j["lambda"] = r.lambda ? to_json(*r.lambda) : nlohmann::json(nullptr);
    j["parity"] = r.parity ? to_json(*r.parity) : nlohmann::json(nullptr);
    j["genus"] = r.genus ? to_json(*r.genus) : nlohmann::json(nullptr);
    nlohmann::json split = nlohmann::json::array();
    for (const auto& s : r.splitting) split.push_back(to_json(s));
    j["splitting"] = split;
    j["assumptions"] = r.assumptions;
    nlohmann::json errs = nlohmann::json::array();
    for (const auto& e : r.errors) errs.push_back({{"kind", e.kind}, {"message", e.message}});
    j["errors"] = errs;
    return j;
}

inline std::string render_text(const Report& r) {
    std::string out;
    if (r.field) out += "field: canonical radicands [" + *r.field + "]\n";
    if (r.lambda) {
        const auto& l = *r.lambda;
        out += "lambda2 = " + std::to_string(l.lambda2) + "\n";
        out += "  r = " + std::to_string(l.r) + ", theta = " + std::to_string(l.theta) +
               ", delta = " + std::to_string(l.delta) + "\n";
        for (const auto& t : l.real_prime_terms)
            out += "  prime " + std::to_string(t.prime) + " (real side): +2^" +
                   std::to_string(t.exponent) + " = " + std::to_string(t.contribution) + "\n";
        for (const auto& t : l.imaginary_prime_terms)
            out += "  prime " + std::to_string(t.prime) + " (imaginary side): +2^" +
                   std::to_string(t.exponent) + " = " + std::to_string(t.contribution) + "\n";
        out += "  rank term: -2^" + std::to_string(l.r - (l.theta ? 1 : 0)) + "\n";
    }
    if (r.parity) {
        out += "parity: " + std::string(to_string(r.parity->verdict));
        if (r.parity->matched_case) out += " (case " + *r.parity->matched_case + ")";
        out += "\n  " + r.parity->witness + "\n";
        for (const auto& n : r.parity->notes) out += "  note: " + n + "\n";
    }
    if (r.genus) {
        out += "narrow genus field: [" + r.genus->narrow.serialize() + "]\n";
        out += "genus field:        [" + r.genus->genus.serialize() + "]\n";
    }
    if (!r.splitting.empty()) {
        out += "level  e  f  g";
        if (!r.splitting.front().quadratic_steps.empty()) out += "  behavior";
        out += "\n";
        for (const auto& s : r.splitting) {
            out += "  " + std::to_string(s.level) + "    " + std::to_string(s.e) + "  " +
                   std::to_string(s.f) + "  " + std::to_string(s.g);
            for (const auto& [d, b] : s.quadratic_steps)
                out += "  sqrt(" + std::to_string(d) + "): " + to_string(b);
            out += "\n";
        }
    }
    for (const auto& a : r.assumptions) out += "assumption: " + a + "\n";
    for (const auto& e : r.errors) out += "error (" + e.kind + "): " + e.message + "\n";
    return out;
}

inline nlohmann::json to_json(const oracle::SweepReport& rep) {
    nlohmann::json fails = nlohmann::json::array();
    for (const auto& f : rep.failures)
        fails.push_back({{"input", f.input}, {"expected", f.expected}, {"got", f.got}});
    return {{"suite", rep.suite},
            {"checked", rep.checked},
            {"failure_count", rep.failure_count},
            {"failures", fails},
            {"passed", rep.passed()}};
}

} // namespace mq2::cli
