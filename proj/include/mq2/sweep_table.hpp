#pragma once

// Batch tables of lambda2 and parity verdicts over a bounded family of
// imaginary fields.  The enumeration, the row order and the file bytes are
// all deterministic: running the same sweep twice must produce identical
// files.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "field.hpp"
#include "lambda.hpp"
#include "parity.hpp"

namespace mq2::cli {

struct SweepRow {
    std::string field;
    std::optional<i64> lambda2;
    std::string parity;
    std::string matched_case;
    std::string assumptions;
};

// Radicand alphabet: squarefree products of at most two primes below the
// bound.  The table enumerates Q(sqrt(-d)) and Q(sqrt(a), sqrt(-d)) over it,
// deduplicated by canonical basis.
inline std::vector<SweepRow> sweep_table(u64 bound) {
    std::vector<SweepRow> rows;
    if (bound == 0) return rows;

    std::vector<u64> ps = primes_below(bound);
    std::vector<i64> alphabet{1};
    for (size_t i = 0; i < ps.size(); ++i) {
        alphabet.push_back(static_cast<i64>(ps[i]));
        for (size_t j = i + 1; j < ps.size(); ++j)
            alphabet.push_back(static_cast<i64>(ps[i] * ps[j]));
    }
    std::sort(alphabet.begin(), alphabet.end());

    std::set<std::string> seen;
    auto visit = [&](const std::vector<i64>& gens) {
        MultiQuadField k = MultiQuadField::from_radicands(gens);
        if (!k.is_imaginary()) return;
        if (!seen.insert(k.serialize()).second) return;
        SweepRow row;
        row.field = k.serialize();
        try {
            LambdaResult l = lambda2_multiquad_imaginary(k);
            row.lambda2 = l.lambda2;
            if (l.greenberg_assumed) row.assumptions = "greenberg";
        } catch (const hypothesis_error&) {
            row.assumptions = "inadmissible";
        }
        ParityVerdict v = classify_parity(k);
        row.parity = to_string(v.verdict);
        if (v.matched_case) row.matched_case = *v.matched_case;
        rows.push_back(std::move(row));
    };

    for (i64 d : alphabet) visit({-d});
    for (i64 a : alphabet) {
        if (a == 1) continue;
        for (i64 d : alphabet) visit({a, -d});
    }
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.field.size() != b.field.size()) return a.field.size() < b.field.size();
        return a.field < b.field;
    });
    return rows;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    auto quote = [](const std::string& s) {
        if (s.find(',') == std::string::npos && s.find('"') == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    std::string out = "field,lambda2,parity,case,assumptions\n";
    for (const auto& r : rows) {
        out += quote(r.field) + ",";
        out += (r.lambda2 ? std::to_string(*r.lambda2) : "") + ",";
        out += r.parity + "," + quote(r.matched_case) + "," + quote(r.assumptions) + "\n";
    }
    return out;
}

inline std::string sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json j{{"field", r.field},
                         {"lambda2", nullptr},
                         {"parity", r.parity},
                         {"case", r.matched_case},
                         {"assumptions", r.assumptions}};
        if (r.lambda2) j["lambda2"] = *r.lambda2;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

} // namespace mq2::cli
