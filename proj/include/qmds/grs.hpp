#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "qmds/errors.hpp"
#include "qmds/field.hpp"
#include "qmds/linalg.hpp"
#include "qmds/parallel.hpp"

namespace qmds {

/// Generalized Reed-Solomon code over F_{q^2}: evaluations of polynomials of
/// degree < d at the distinct points a, scaled coordinatewise by the nonzero
/// multipliers v. A valid code is an [n, d, n-d+1] MDS code.
struct GrsCode {
    FieldPtr ctx;
    std::vector<FieldElement> a;
    std::vector<FieldElement> v;
    std::int64_t d = 1;

    std::size_t length() const { return a.size(); }
};

inline void validate(const GrsCode& code) {
    if (!code.ctx)
        throw ParamError("GRS code without field context");
    const std::size_t n = code.a.size();
    if (code.v.size() != n)
        throw ParamError("GRS vectors a and v must have equal length");
    if (code.d < 1 || static_cast<std::size_t>(code.d) > n)
        throw ParamError("GRS dimension must satisfy 1 <= d <= n");
    if (n > static_cast<std::size_t>(code.ctx->order()))
        throw ParamError("GRS length exceeds q^2");
    std::set<std::uint64_t> seen;
    for (auto x : code.a)
        if (!seen.insert(x.is_zero() ? static_cast<std::uint64_t>(code.ctx->order())
                                     : x.exponent())
                 .second)
            throw ParamError("GRS evaluation points must be pairwise distinct");
    for (auto x : code.v)
        if (x.is_zero())
            throw ParamError("GRS multipliers must be nonzero");
}

/// d x n matrix with entry (i, j) = v_j * a_j^i; a_j^0 = 1 also for a_j = 0.
inline Matrix generator_matrix(const GrsCode& code) {
    const FieldContext& F = *code.ctx;
    const std::size_t n = code.length();
    Matrix g(code.ctx, static_cast<std::size_t>(code.d), n);
    for (std::size_t j = 0; j < n; ++j) {
        FieldElement cur = code.v[j];
        for (std::size_t i = 0; i < static_cast<std::size_t>(code.d); ++i) {
            g.at(i, j) = cur;
            cur = F.mul(cur, code.a[j]);
        }
    }
    return g;
}

/// Codeword (v_1 f(a_1), ..., v_n f(a_n)) for f given by its coefficient
/// vector, constant term first.
inline std::vector<FieldElement> encode(const GrsCode& code, std::span<const FieldElement> coeffs) {
    if (coeffs.size() != static_cast<std::size_t>(code.d))
        throw ParamError("coefficient vector must have length d");
    const FieldContext& F = *code.ctx;
    std::vector<FieldElement> word(code.length());
    for (std::size_t j = 0; j < code.length(); ++j) {
        FieldElement acc; // Horner
        for (std::size_t i = coeffs.size(); i-- > 0;)
            acc = F.add(F.mul(acc, code.a[j]), coeffs[i]);
        word[j] = F.mul(code.v[j], acc);
    }
    return word;
}

/// Hermitian inner product <x, y>_H = sum_i x_i y_i^q.
inline FieldElement hermitian_inner(const FieldContext& F, std::span<const FieldElement> x,
                                    std::span<const FieldElement> y) {
    if (x.size() != y.size())
        throw ParamError("hermitian_inner length mismatch");
    FieldElement acc;
    for (std::size_t i = 0; i < x.size(); ++i)
        acc = F.add(acc, F.mul(x[i], F.frobenius(y[i])));
    return acc;
}

/// sum_k a_k^{qi+j} v_k^{q+1}, with 0^0 = 1 so an evaluation point at zero
/// contributes exactly its v-weight to the (0,0) sum.
inline FieldElement power_sum(const FieldContext& F, std::span<const FieldElement> a,
                              std::span<const FieldElement> v, std::int64_t i, std::int64_t j) {
    if (i < 0 || j < 0)
        throw ParamError("power_sum requires i, j >= 0");
    const std::int64_t exp = F.q() * i + j;
    FieldElement acc;
    for (std::size_t k = 0; k < a.size(); ++k)
        acc = F.add(acc, F.mul(F.pow(a[k], exp), F.norm(v[k])));
    return acc;
}

inline FieldElement power_sum(const GrsCode& code, std::int64_t i, std::int64_t j) {
    return power_sum(*code.ctx, code.a, code.v, i, j);
}

struct PowerSumCounterexample {
    std::int64_t i = 0, j = 0;
    FieldElement value;
};

/// Scan the grid 0 <= i <= i_max, 0 <= j <= j_max of power sums and return
/// the lexicographically first nonzero cell, independent of thread count.
inline std::optional<PowerSumCounterexample>
first_nonzero_power_sum(const FieldContext& F, std::span<const FieldElement> a,
                        std::span<const FieldElement> v, std::int64_t i_max, std::int64_t j_max,
                        int threads = 1) {
    const std::uint64_t n_order = F.group_order();
    const std::uint64_t q = static_cast<std::uint64_t>(F.q());

    // split the zero evaluation point (contributes only at (i,j) = (0,0))
    std::vector<std::uint64_t> alog, wlog;
    alog.reserve(a.size());
    wlog.reserve(a.size());
    FieldElement zero_weight;
    for (std::size_t k = 0; k < a.size(); ++k) {
        FieldElement w = F.norm(v[k]);
        if (a[k].is_zero())
            zero_weight = F.add(zero_weight, w);
        else {
            alog.push_back(a[k].exponent());
            wlog.push_back(w.exponent());
        }
    }

    const std::size_t rows = static_cast<std::size_t>(i_max) + 1;
    const std::size_t jcount = static_cast<std::size_t>(j_max) + 1;
    std::vector<std::optional<std::pair<std::int64_t, FieldElement>>> row_hit(rows);

    detail::parallel_chunks(rows, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<FieldElement> acc(jcount);
        for (std::size_t row = begin; row < end; ++row) {
            std::fill(acc.begin(), acc.end(), FieldElement::zero());
            const std::uint64_t qi = (q * static_cast<std::uint64_t>(row)) % n_order;
            for (std::size_t k = 0; k < alog.size(); ++k) {
                std::uint64_t cur = (alog[k] * qi + wlog[k]) % n_order;
                const std::uint64_t step = alog[k];
                for (std::size_t j = 0; j < jcount; ++j) {
                    acc[j] = F.add(acc[j], FieldElement::from_exponent(static_cast<std::uint32_t>(cur)));
                    cur += step;
                    if (cur >= n_order)
                        cur -= n_order;
                }
            }
            if (row == 0)
                acc[0] = F.add(acc[0], zero_weight);
            for (std::size_t j = 0; j < jcount; ++j)
                if (!acc[j].is_zero()) {
                    row_hit[row] = {static_cast<std::int64_t>(j), acc[j]};
                    break;
                }
        }
    });

    for (std::size_t row = 0; row < rows; ++row)
        if (row_hit[row])
            return PowerSumCounterexample{static_cast<std::int64_t>(row), row_hit[row]->first,
                                          row_hit[row]->second};
    return std::nullopt;
}

/// Theorem-2 criterion: the code is Hermitian self-orthogonal iff every
/// power sum over 0 <= i, j <= d-1 vanishes.
inline bool is_hermitian_self_orthogonal(const GrsCode& code, int threads = 1) {
    return !first_nonzero_power_sum(*code.ctx, code.a, code.v, code.d - 1, code.d - 1, threads)
                .has_value();
}

/// Independent route to the same truth value: every Hermitian inner product
/// of generator-matrix row pairs vanishes.
inline bool gram_check(const GrsCode& code, int threads = 1) {
    const FieldContext& F = *code.ctx;
    Matrix g = generator_matrix(code);
    const std::size_t d = g.rows(), n = g.cols();
    std::vector<FieldElement> conj(d * n); // rows of G with Frobenius applied
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < n; ++c)
            conj[r * n + c] = F.frobenius(g.at(r, c));

    std::vector<char> row_ok(d, 1);
    detail::parallel_chunks(d, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t r1 = begin; r1 < end; ++r1)
            for (std::size_t r2 = r1; r2 < d; ++r2) {
                FieldElement acc;
                for (std::size_t c = 0; c < n; ++c)
                    acc = F.add(acc, F.mul(g.at(r1, c), conj[r2 * n + c]));
                if (!acc.is_zero()) {
                    row_ok[r1] = 0;
                    break;
                }
            }
    });
    return std::all_of(row_ok.begin(), row_ok.end(), [](char c) { return c != 0; });
}

/// Exact minimum Hamming weight by enumerating all q^{2d} - 1 nonzero
/// codewords; for a valid GRS code this equals n - d + 1.
inline std::int64_t brute_min_distance(const GrsCode& code, std::uint64_t budget = 1'000'000) {
    const FieldContext& F = *code.ctx;
    const std::uint64_t q2 = static_cast<std::uint64_t>(F.order());
    std::uint64_t total = 1;
    for (std::int64_t i = 0; i < code.d; ++i) {
        if (total > budget / q2)
            throw BudgetError("brute_min_distance enumeration budget exceeded");
        total *= q2;
    }
    if (total > budget)
        throw BudgetError("brute_min_distance enumeration budget exceeded");

    const std::size_t n = code.length();
    const std::size_t d = static_cast<std::size_t>(code.d);
    std::vector<std::uint64_t> idx(d, 0); // odometer over coefficient vectors
    std::vector<FieldElement> coeffs(d);
    auto decode = [&](std::uint64_t t) {
        return t == 0 ? FieldElement::zero()
                      : FieldElement::from_exponent(static_cast<std::uint32_t>(t - 1));
    };
    std::size_t best = n + 1;
    for (std::uint64_t count = 1; count < total; ++count) {
        std::size_t pos = 0;
        while (true) {
            idx[pos] = (idx[pos] + 1) % q2;
            coeffs[pos] = decode(idx[pos]);
            if (idx[pos] != 0)
                break;
            ++pos;
        }
        std::size_t weight = 0;
        for (std::size_t jcol = 0; jcol < n && weight < best; ++jcol) {
            FieldElement acc;
            for (std::size_t i = d; i-- > 0;)
                acc = F.add(F.mul(acc, code.a[jcol]), coeffs[i]);
            if (!acc.is_zero())
                ++weight; // v_j is nonzero, it cannot change the weight
        }
        if (weight < best)
            best = weight;
    }
    return static_cast<std::int64_t>(best);
}

/// Quantum code parameters [[n, n-2d, d+1]]_q from the Hermitian construction.
struct QuantumParams {
    std::int64_t n = 0, k = 0, dmin = 0, q = 0;
    friend bool operator==(const QuantumParams&, const QuantumParams&) = default;
};

inline QuantumParams quantum_params(std::int64_t n, std::int64_t d, std::int64_t q) {
    if (d < 1)
        throw ParamError("quantum_params requires d >= 1");
    if (2 * d > n)
        throw ParamError("quantum_params requires 2d <= n");
    QuantumParams qp{n, n - 2 * d, d + 1, q};
    if (qp.k != qp.n - 2 * qp.dmin + 2)
        throw InternalError("quantum Singleton equality violated");
    return qp;
}

} // namespace qmds
