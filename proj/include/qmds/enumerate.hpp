#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "qmds/construct.hpp"
#include "qmds/grs.hpp"

namespace qmds {

/// One valid parameter tuple and the code family it proves, evaluated at the
/// maximal dimension.
struct ParameterRecord {
    std::int64_t q = 0;
    Theorem theorem = Theorem::t4;
    std::int64_t s = 0, t = 0, h = 0, r = 0;
    std::int64_t n = 0, d_max = 0;
    QuantumParams quantum;
    bool verified = false;

    friend bool operator==(const ParameterRecord&, const ParameterRecord&) = default;
};

/// Exhaustive sweep of every valid (theorem, s, t, h, r) tuple for a fixed q,
/// in lexicographic order.
inline std::vector<ParameterRecord> enumerate_params(std::int64_t q) {
    if (q < 3)
        throw ParamError("enumerate_params requires a prime power q >= 3");
    std::vector<ParameterRecord> records;
    auto try_tuple = [&](Theorem theorem, std::int64_t s, std::int64_t t, std::int64_t h,
                         std::int64_t r) {
        if (!hypothesis_violations(q, theorem, s, t, h, r).empty())
            return;
        auto ar = derive_arithmetic(q, theorem, s, t, h, r);
        records.push_back(ParameterRecord{q, theorem, s, t, h, r, ar.n, ar.d_max,
                                          quantum_params(ar.n, ar.d_max, q), false});
    };
    // s = 1 drops out of t4/t5 on its own: h <= s-1 leaves no valid h.
    for (Theorem theorem : {Theorem::t4, Theorem::t5, Theorem::t6})
        for (std::int64_t s = 1; s <= q + 1; ++s) {
            if ((q + 1) % s != 0)
                continue;
            for (std::int64_t t = 2; t <= q - 1; t += 2) {
                if ((q - 1) % t != 0)
                    continue;
                const std::int64_t h_hi = theorem == Theorem::t6 ? s / 2 : s - 1;
                const std::int64_t r_hi = theorem == Theorem::t6 ? t / 2 : t;
                for (std::int64_t h = 1; h <= h_hi; ++h)
                    for (std::int64_t r = 1; r <= r_hi; ++r)
                        try_tuple(theorem, s, t, h, r);
            }
        }
    return records;
}

enum class ThresholdMode { all, at_least, strictly_greater }; // dmin vs q/2 + 1

inline bool passes_threshold(std::int64_t dmin, std::int64_t q, ThresholdMode mode) {
    switch (mode) {
    case ThresholdMode::all: return true;
    case ThresholdMode::at_least: return 2 * dmin >= q + 2;
    case ThresholdMode::strictly_greater: return 2 * dmin > q + 2;
    }
    return false;
}

/// Per-length best parameters: for each n keep the maximal d+1; provenance
/// lists every tuple attaining it.
struct BestCode {
    std::int64_t n = 0, k = 0, dmin = 0;
    std::vector<ParameterRecord> provenance;
};

inline std::vector<BestCode> best_codes(std::span<const ParameterRecord> records,
                                        ThresholdMode mode = ThresholdMode::all) {
    std::map<std::int64_t, BestCode> by_n;
    for (const auto& rec : records) {
        auto& slot = by_n[rec.n];
        const std::int64_t dmin = rec.d_max + 1;
        if (slot.provenance.empty() || dmin > slot.dmin) {
            slot = BestCode{rec.n, rec.n - 2 * rec.d_max, dmin, {rec}};
        } else if (dmin == slot.dmin) {
            slot.provenance.push_back(rec);
        }
    }
    std::vector<BestCode> out;
    for (auto& [n, best] : by_n)
        if (passes_threshold(best.dmin, best.provenance.front().q, mode))
            out.push_back(std::move(best));
    return out;
}

/// Attainable (n, d+1) pairs across all 1 <= d <= d_max of every record,
/// filtered by the threshold; a code count comparable to the conclusion's.
inline std::size_t attainable_pair_count(std::span<const ParameterRecord> records,
                                         ThresholdMode mode) {
    std::set<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& rec : records)
        for (std::int64_t d = 1; d <= rec.d_max; ++d)
            if (passes_threshold(d + 1, rec.q, mode))
                pairs.insert({rec.n, d + 1});
    return pairs.size();
}

enum class TableFormat { csv, json, markdown };

inline TableFormat table_format_from_string(const std::string& s) {
    if (s == "csv") return TableFormat::csv;
    if (s == "json") return TableFormat::json;
    if (s == "markdown" || s == "md") return TableFormat::markdown;
    throw ParamError("unknown table format '" + s + "', expected csv|json|markdown");
}

/// Render records as a document, stably sorted by n then d+1.
inline std::string emit_table(std::span<const ParameterRecord> records, TableFormat format) {
    std::vector<ParameterRecord> sorted(records.begin(), records.end());
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const ParameterRecord& a, const ParameterRecord& b) {
                         if (a.n != b.n)
                             return a.n < b.n;
                         return a.d_max < b.d_max;
                     });
    std::ostringstream out;
    switch (format) {
    case TableFormat::csv:
        out << "n,k,dmin,theorem,s,t,h,r,q\n";
        for (const auto& rec : sorted)
            out << rec.n << ',' << rec.quantum.k << ',' << rec.quantum.dmin << ','
                << to_string(rec.theorem) << ',' << rec.s << ',' << rec.t << ',' << rec.h << ','
                << rec.r << ',' << rec.q << '\n';
        break;
    case TableFormat::markdown:
        out << "| n | k | dmin | theorem | s | t | h | r | q |\n";
        out << "|---|---|------|---------|---|---|---|---|---|\n";
        for (const auto& rec : sorted)
            out << "| " << rec.n << " | " << rec.quantum.k << " | " << rec.quantum.dmin << " | "
                << to_string(rec.theorem) << " | " << rec.s << " | " << rec.t << " | " << rec.h
                << " | " << rec.r << " | " << rec.q << " |\n";
        break;
    case TableFormat::json: {
        out << "[\n";
        bool first = true;
        for (const auto& rec : sorted) {
            if (!first)
                out << ",\n";
            first = false;
            out << "  {\"n\": " << rec.n << ", \"k\": " << rec.quantum.k
                << ", \"dmin\": " << rec.quantum.dmin << ", \"theorem\": \""
                << to_string(rec.theorem) << "\", \"s\": " << rec.s << ", \"t\": " << rec.t
                << ", \"h\": " << rec.h << ", \"r\": " << rec.r << ", \"q\": " << rec.q
                << ", \"d_max\": " << rec.d_max << "}";
        }
        out << "\n]\n";
        break;
    }
    }
    return out.str();
}

} // namespace qmds
