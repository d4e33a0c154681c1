#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "qmds/errors.hpp"
#include "qmds/field.hpp"
#include "qmds/grs.hpp"
#include "qmds/linalg.hpp"

namespace qmds {

enum class Theorem { t4, t5, t6 };

inline std::string to_string(Theorem t) {
    switch (t) {
    case Theorem::t4: return "t4";
    case Theorem::t5: return "t5";
    case Theorem::t6: return "t6";
    }
    return "?";
}

inline Theorem theorem_from_string(const std::string& s) {
    if (s == "t4" || s == "T4") return Theorem::t4;
    if (s == "t5" || s == "T5") return Theorem::t5;
    if (s == "t6" || s == "T6") return Theorem::t6;
    throw ParamError("unknown theorem '" + s + "', expected t4|t5|t6");
}

/// Derived integer quantities shared by the three constructions.
struct ParamArithmetic {
    std::int64_t l = 0, m = 0, overlap = 0, n = 0, d_max = 0;
};

/// Check every hypothesis of the selected theorem; returns human-readable
/// violations, empty when the tuple is valid. Pure integer arithmetic.
inline std::vector<std::string> hypothesis_violations(std::int64_t q, Theorem theorem,
                                                      std::int64_t s, std::int64_t t,
                                                      std::int64_t h, std::int64_t r) {
    std::vector<std::string> bad;
    auto fail = [&](std::string msg) { bad.push_back(std::move(msg)); };

    if (s < 1 || (q + 1) % s != 0)
        fail("s must divide q+1 (s=" + std::to_string(s) + ", q=" + std::to_string(q) + ")");
    if (t < 2)
        fail("t must be at least 2 (t=" + std::to_string(t) + ")");
    if (t % 2 != 0)
        fail("t must be even (t=" + std::to_string(t) + ")");
    if (t >= 1 && (q - 1) % t != 0)
        fail("t must divide q-1 (t=" + std::to_string(t) + ", q=" + std::to_string(q) + ")");
    if (h < 1)
        fail("h must be at least 1");
    if (r < 1)
        fail("r must be at least 1");

    switch (theorem) {
    case Theorem::t4:
        if (s % 2 == 0)
            fail("theorem t4 requires odd s");
        if (h % 2 == 0 || h > s - 1)
            fail("theorem t4 requires odd h <= s-1 (h=" + std::to_string(h) + ", s=" +
                 std::to_string(s) + ")");
        if (r > t)
            fail("theorem t4 requires r <= t");
        break;
    case Theorem::t5:
        if (s % 2 == 0)
            fail("theorem t5 requires odd s");
        if (h > s - 1)
            fail("theorem t5 requires h <= s-1");
        if (r > t)
            fail("theorem t5 requires r <= t");
        break;
    case Theorem::t6:
        if (s % 2 != 0)
            fail("theorem t6 requires even s");
        if (h > s / 2)
            fail("theorem t6 requires h <= s/2");
        if (r > t / 2)
            fail("theorem t6 requires r <= t/2");
        break;
    }
    if (!bad.empty())
        return bad;

    const std::int64_t big = q * q - 1;
    if (theorem != Theorem::t6) {
        std::int64_t overlap = big / (s * t) * h * r;
        if (q - 1 <= overlap)
            fail("q-1 must exceed (q^2-1)/(st)*h*r = " + std::to_string(overlap));
    }
    std::int64_t first = (theorem == Theorem::t4) ? (s + h) / 2 * ((q + 1) / s) - 1
                                                  : (s + h) / 2 * ((q + 1) / s) - 2;
    std::int64_t second = (q + 1) / 2 + (q - 1) / t - 1;
    if (std::min(first, second) < 1)
        fail("derived d_max is below 1");
    return bad;
}

/// Derived lengths and the theorem-specific d bound. Precondition: the tuple
/// passes hypothesis_violations.
inline ParamArithmetic derive_arithmetic(std::int64_t q, Theorem theorem, std::int64_t s,
                                         std::int64_t t, std::int64_t h, std::int64_t r) {
    const std::int64_t big = q * q - 1;
    ParamArithmetic out;
    out.l = big / s;
    out.m = big / t;
    const std::int64_t second = (q + 1) / 2 + (q - 1) / t - 1;
    switch (theorem) {
    case Theorem::t4:
        out.overlap = big / (s * t) * h * r;
        out.n = 1 + out.l * h + out.m * r - out.overlap;
        out.d_max = std::min((s + h) / 2 * ((q + 1) / s) - 1, second);
        break;
    case Theorem::t5:
        out.overlap = big / (s * t) * h * r;
        out.n = out.l * h + out.m * r - out.overlap;
        out.d_max = std::min((s + h) / 2 * ((q + 1) / s) - 2, second);
        break;
    case Theorem::t6:
        out.overlap = 0;
        out.n = out.l * h + out.m * r;
        out.d_max = std::min((s + h) / 2 * ((q + 1) / s) - 2, second);
        break;
    }
    return out;
}

/// A validated construction tuple (q, theorem, s, t, h, r) plus everything
/// derived from it.
struct ConstructionParams {
    FieldPtr ctx;
    Theorem theorem = Theorem::t4;
    std::int64_t s = 0, t = 0, h = 0, r = 0;
    std::int64_t l = 0, m = 0, overlap = 0, n = 0, d_max = 0;

    std::int64_t q() const { return ctx->q(); }
    FieldElement delta() const { return ctx->g_power(s); } // order l
    FieldElement theta() const { return ctx->g_power(t); } // order m
};

inline ConstructionParams make_params(FieldPtr ctx, Theorem theorem, std::int64_t s,
                                      std::int64_t t, std::int64_t h, std::int64_t r) {
    auto bad = hypothesis_violations(ctx->q(), theorem, s, t, h, r);
    if (!bad.empty()) {
        std::string msg = "invalid " + to_string(theorem) + " parameters:";
        for (const auto& b : bad)
            msg += "\n  - " + b;
        throw ParamError(msg);
    }
    // s odd and gcd(q+1, q-1) <= 2 force gcd(s,t) = 1 for t4/t5; asserted.
    if (theorem != Theorem::t6 && std::gcd(s, t) != 1)
        throw InternalError("gcd(s,t) != 1 for a t4/t5 tuple");
    auto ar = derive_arithmetic(ctx->q(), theorem, s, t, h, r);
    return ConstructionParams{std::move(ctx), theorem, s, t, h, r,
                              ar.l, ar.m, ar.overlap, ar.n, ar.d_max};
}

namespace detail {

// Solve a homogeneous vanishing system for u in (F_q*)^h. The constraint
// count is h-1 or h-2 by construction:
//   h-1 rows: adjoin the all-ones normalization row and solve the square
//             system = e_1 (with a rank-deficient fallback for the corner
//             where the normalization conflicts with the constraints);
//   h-2 rows: the two-subsystem kernel combination.
inline std::vector<FieldElement> solve_vanishing_system(const FieldContext& F, const Matrix& m) {
    const std::size_t h = m.cols();
    const std::size_t count = m.rows();

    auto kernel_witness = [&]() -> std::optional<std::vector<FieldElement>> {
        auto res = solve(m, std::vector<FieldElement>(count));
        if (res.status == SolveStatus::no_solution)
            return std::nullopt;
        for (auto c : res.solution)
            if (c.is_zero())
                return std::nullopt;
        return res.solution;
    };

    if (count + 1 == h) {
        Matrix aug(m.field_ptr(), h, h);
        for (std::size_t c = 0; c < h; ++c)
            aug.at(0, c) = F.one();
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t c = 0; c < h; ++c)
                aug.at(i + 1, c) = m.at(i, c);
        std::vector<FieldElement> rhs(h);
        rhs[0] = F.one();
        auto res = solve(std::move(aug), std::move(rhs));
        if (res.status == SolveStatus::unique) {
            bool nonzero = std::none_of(res.solution.begin(), res.solution.end(),
                                        [](FieldElement c) { return c.is_zero(); });
            if (nonzero)
                return res.solution;
        }
        // normalization clashes with the constraints (possible only when the
        // system has a one-dimensional kernel missing the ones-row hyperplane)
        if (auto w = kernel_witness())
            return *w;
        throw InternalError("vanishing system has no all-nonzero solution");
    }
    if (count + 2 == h) {
        if (auto u = kernel_vector_nonzero_coords(m))
            return *u;
        throw InternalError("kernel combination failed for the vanishing system");
    }
    throw InternalError("unexpected constraint count in vanishing system");
}

// Range of mu for the lemma systems: ceil((s-h)/2)+1 .. floor((s+h)/2)-1.
struct MuRange {
    std::int64_t first, last; // empty when last < first
    std::int64_t count() const { return std::max<std::int64_t>(0, last - first + 1); }
};

inline MuRange lemma_mu_range(std::int64_t s, std::int64_t h) {
    return {(s - h + 1) / 2 + 1, (s + h) / 2 - 1};
}

} // namespace detail

/// Solution u in (F_q*)^h of the theorem-4 system: u_0 + ... + u_{h-1} = 1
/// together with sum_k g^{k mu l} u_k = 0 for every mu in the lemma range.
/// Verified by substitution before returning.
inline std::vector<FieldElement> lemma6_solve(const FieldPtr& ctx, std::int64_t s,
                                              std::int64_t h) {
    const FieldContext& F = *ctx;
    if (s < 1 || s % 2 == 0 || (F.q() + 1) % s != 0)
        throw ParamError("lemma6 requires odd s dividing q+1");
    if (h < 1 || h % 2 == 0 || h > s - 1)
        throw ParamError("lemma6 requires odd h <= s-1");
    const std::int64_t l = (F.q() * F.q() - 1) / s;
    auto mu = detail::lemma_mu_range(s, h);

    Matrix sys(ctx, static_cast<std::size_t>(mu.count()) + 1, static_cast<std::size_t>(h));
    for (std::int64_t k = 0; k < h; ++k)
        sys.at(0, static_cast<std::size_t>(k)) = F.one();
    for (std::int64_t m = mu.first; m <= mu.last; ++m)
        for (std::int64_t k = 0; k < h; ++k)
            sys.at(static_cast<std::size_t>(m - mu.first) + 1, static_cast<std::size_t>(k)) =
                F.g_power(k * m * l);
    std::vector<FieldElement> rhs(sys.rows());
    rhs[0] = F.one();
    auto res = solve(sys, rhs);
    if (res.status != SolveStatus::unique)
        throw InternalError("lemma6 system is not uniquely solvable");
    const auto& u = res.solution;

    for (auto c : u)
        if (c.is_zero() || !F.in_base_field(c))
            throw InternalError("lemma6 solution leaves (F_q*)^h");
    FieldElement total;
    for (auto c : u)
        total = F.add(total, c);
    if (total != F.one())
        throw InternalError("lemma6 normalization violated");
    for (std::int64_t m = mu.first; m <= mu.last; ++m) {
        FieldElement acc;
        for (std::int64_t k = 0; k < h; ++k)
            acc = F.add(acc, F.mul(F.g_power(k * m * l), u[static_cast<std::size_t>(k)]));
        if (!acc.is_zero())
            throw InternalError("lemma6 vanishing constraint violated");
    }
    return u;
}

namespace detail {

// Shared core of lemma 9 (weight(k) = k) and lemma 12 (weight(k) = 2k+1):
// constraints sum_k g^{weight(k) (mu l - q - 1)} u_k = 0 over the mu range.
template <typename WeightFn>
std::vector<FieldElement> lemma_homogeneous_solve(const FieldPtr& ctx, std::int64_t s,
                                                  std::int64_t h, WeightFn weight) {
    const FieldContext& F = *ctx;
    const std::int64_t l = (F.q() * F.q() - 1) / s;
    auto mu = lemma_mu_range(s, h);

    Matrix sys(ctx, static_cast<std::size_t>(mu.count()), static_cast<std::size_t>(h));
    for (std::int64_t m = mu.first; m <= mu.last; ++m)
        for (std::int64_t k = 0; k < h; ++k)
            sys.at(static_cast<std::size_t>(m - mu.first), static_cast<std::size_t>(k)) =
                F.g_power(weight(k) * (m * l - F.q() - 1));
    auto u = solve_vanishing_system(F, sys);

    for (auto c : u)
        if (c.is_zero() || !F.in_base_field(c))
            throw InternalError("lemma solution leaves (F_q*)^h");
    for (std::int64_t m = mu.first; m <= mu.last; ++m) {
        FieldElement acc;
        for (std::int64_t k = 0; k < h; ++k)
            acc = F.add(acc, F.mul(F.g_power(weight(k) * (m * l - F.q() - 1)),
                                   u[static_cast<std::size_t>(k)]));
        if (!acc.is_zero())
            throw InternalError("lemma vanishing constraint violated");
    }
    return u;
}

} // namespace detail

/// Solution u in (F_q*)^h of sum_k g^{k(mu l - q - 1)} u_k = 0 over the
/// lemma range (theorem 5). Odd h takes the normalization route, even h the
/// two-subsystem kernel combination.
inline std::vector<FieldElement> lemma9_solve(const FieldPtr& ctx, std::int64_t s,
                                              std::int64_t h) {
    if (s < 1 || s % 2 == 0 || (ctx->q() + 1) % s != 0)
        throw ParamError("lemma9 requires odd s dividing q+1");
    if (h < 1 || h > s - 1)
        throw ParamError("lemma9 requires h <= s-1");
    return detail::lemma_homogeneous_solve(ctx, s, h, [](std::int64_t k) { return k; });
}

/// Solution u in (F_q*)^h of sum_k g^{(2k+1)(mu l - q - 1)} u_k = 0 over the
/// lemma range (theorem 6, even s).
inline std::vector<FieldElement> lemma12_solve(const FieldPtr& ctx, std::int64_t s,
                                               std::int64_t h) {
    if (s < 2 || s % 2 != 0 || (ctx->q() + 1) % s != 0)
        throw ParamError("lemma12 requires even s dividing q+1");
    if (h < 1 || h > s / 2)
        throw ParamError("lemma12 requires h <= s/2");
    return detail::lemma_homogeneous_solve(ctx, s, h, [](std::int64_t k) { return 2 * k + 1; });
}

/// The multiplicative cosets behind theorems 4 and 5, as sorted dlog lists:
/// A = {x : dlog(x) mod s < h}, B = {x : dlog(x) mod t < r}.
struct CosetSets {
    std::vector<std::uint32_t> a_minus_b, b_minus_a, both; // dlogs, ascending
};

inline CosetSets coset_sets(const ConstructionParams& params) {
    if (params.theorem == Theorem::t6)
        throw ParamError("coset_sets applies to theorems 4 and 5 only");
    CosetSets cs;
    const std::uint64_t n = params.ctx->group_order();
    for (std::uint64_t dlog = 0; dlog < n; ++dlog) {
        bool in_a = static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.s)) < params.h;
        bool in_b = static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.t)) < params.r;
        if (in_a && in_b)
            cs.both.push_back(static_cast<std::uint32_t>(dlog));
        else if (in_a)
            cs.a_minus_b.push_back(static_cast<std::uint32_t>(dlog));
        else if (in_b)
            cs.b_minus_a.push_back(static_cast<std::uint32_t>(dlog));
    }
    // |A ∩ B| = (q^2-1)/(st) * h * r by the counting lemma; a mismatch would
    // mean gcd(s,t) != 1, impossible for validated parameters.
    if (static_cast<std::int64_t>(cs.both.size()) != params.overlap)
        throw InternalError("coset overlap count does not match the closed form");
    return cs;
}

/// First lambda = g^{(q+1)i}, i = 0, 1, ..., such that every f1_k + lambda
/// f2_k is nonzero. Exists whenever the overlap is smaller than q-1.
inline FieldElement choose_lambda(const FieldContext& F, std::span<const FieldElement> f1,
                                  std::span<const FieldElement> f2) {
    if (f1.size() != f2.size())
        throw ParamError("choose_lambda length mismatch");
    for (std::int64_t i = 0; i < F.q() - 1; ++i) {
        FieldElement lambda = F.g_power((F.q() + 1) * i);
        bool ok = true;
        for (std::size_t k = 0; k < f1.size(); ++k)
            if (F.add(f1[k], F.mul(lambda, f2[k])).is_zero()) {
                ok = false;
                break;
            }
        if (ok)
            return lambda;
    }
    throw ParamError("no valid lambda in F_q*; overlap must be smaller than q-1");
}

/// The component vectors the proofs work with, kept for the extended
/// lemma-range checks: (a1, v1) covers the delta-cosets (plus the zero point
/// and its multiplier e for theorem 4), (a2, v2) the theta-cosets.
struct WitnessVectors {
    std::vector<FieldElement> a1, v1, a2, v2;
    std::vector<FieldElement> u;
    FieldElement lambda; // merge multiplier; 1 when no overlap handling applies
    FieldElement e;      // zero-point multiplier with e^{q+1} = -l; ZERO unless t4
};

struct ConstructedCode {
    GrsCode code;
    ConstructionParams params;
    WitnessVectors witness;

    QuantumParams quantum() const {
        return quantum_params(static_cast<std::int64_t>(code.length()), code.d, params.q());
    }
};

namespace detail {

inline std::vector<FieldElement> norms_to_multipliers(const FieldContext& F,
                                                      const std::vector<FieldElement>& targets) {
    std::vector<FieldElement> v;
    v.reserve(targets.size());
    for (auto t : targets) {
        if (t.is_zero())
            throw InternalError("norm target vanished while assembling v");
        v.push_back(F.solve_norm(t));
    }
    return v;
}

} // namespace detail

/// Theorem 4 witness: a = (0, A\B, B\A, A∩B) with v-norms
/// (-l, f1, lambda f2, f1 + lambda f2); Hermitian self-orthogonal for every
/// 1 <= d <= d_max.
inline ConstructedCode build_t4(const ConstructionParams& params, std::int64_t d = -1) {
    if (params.theorem != Theorem::t4)
        throw ParamError("build_t4 requires t4 parameters");
    if (d == -1)
        d = params.d_max;
    if (d < 1 || d > params.d_max)
        throw ParamError("d must satisfy 1 <= d <= d_max = " + std::to_string(params.d_max));
    const FieldContext& F = *params.ctx;

    auto u = lemma6_solve(params.ctx, params.s, params.h);
    auto cs = coset_sets(params);

    auto f1 = [&](std::uint32_t dlog) { return u[dlog % static_cast<std::uint32_t>(params.s)]; };
    auto f2 = [&](std::uint32_t dlog) {
        std::int64_t j = dlog / static_cast<std::uint32_t>(params.t);
        return F.g_power(params.t * j * ((params.q() + 1) / 2));
    };

    std::vector<FieldElement> f1_overlap, f2_overlap;
    for (auto dlog : cs.both) {
        f1_overlap.push_back(f1(dlog));
        f2_overlap.push_back(f2(dlog));
    }
    FieldElement lambda = choose_lambda(F, f1_overlap, f2_overlap);

    const FieldElement minus_l = F.from_integer(-params.l);
    std::vector<FieldElement> a{FieldElement::zero()}, targets{minus_l};
    for (auto dlog : cs.a_minus_b) {
        a.push_back(FieldElement::from_exponent(dlog));
        targets.push_back(f1(dlog));
    }
    for (auto dlog : cs.b_minus_a) {
        a.push_back(FieldElement::from_exponent(dlog));
        targets.push_back(F.mul(lambda, f2(dlog)));
    }
    for (std::size_t i = 0; i < cs.both.size(); ++i) {
        a.push_back(FieldElement::from_exponent(cs.both[i]));
        targets.push_back(F.add(f1_overlap[i], F.mul(lambda, f2_overlap[i])));
    }

    ConstructedCode out{GrsCode{params.ctx, std::move(a),
                                detail::norms_to_multipliers(F, targets), d},
                        params, {}};
    if (out.code.length() != static_cast<std::size_t>(params.n))
        throw InternalError("t4 length bookkeeping failed");
    validate(out.code);

    WitnessVectors& w = out.witness;
    w.u = u;
    w.lambda = lambda;
    w.e = F.solve_norm(minus_l);
    w.a1.push_back(FieldElement::zero());
    w.v1.push_back(w.e);
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog)
        if (static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.s)) < params.h) {
            w.a1.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            w.v1.push_back(F.solve_norm(f1(static_cast<std::uint32_t>(dlog))));
        }
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog)
        if (static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.t)) < params.r) {
            w.a2.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            w.v2.push_back(F.solve_norm(f2(static_cast<std::uint32_t>(dlog))));
        }
    return out;
}

/// Theorem 5 witness: as theorem 4 without the zero point; the v-norms walk
/// each coset as u_alpha delta^{i(q+1)}.
inline ConstructedCode build_t5(const ConstructionParams& params, std::int64_t d = -1) {
    if (params.theorem != Theorem::t5)
        throw ParamError("build_t5 requires t5 parameters");
    if (d == -1)
        d = params.d_max;
    if (d < 1 || d > params.d_max)
        throw ParamError("d must satisfy 1 <= d <= d_max = " + std::to_string(params.d_max));
    const FieldContext& F = *params.ctx;

    auto u = lemma9_solve(params.ctx, params.s, params.h);
    auto cs = coset_sets(params);

    auto f1 = [&](std::uint32_t dlog) {
        std::uint32_t alpha = dlog % static_cast<std::uint32_t>(params.s);
        std::int64_t i = dlog / static_cast<std::uint32_t>(params.s);
        return F.mul(u[alpha], F.g_power(params.s * i * (params.q() + 1)));
    };
    auto f2 = [&](std::uint32_t dlog) {
        std::int64_t j = dlog / static_cast<std::uint32_t>(params.t);
        return F.g_power(params.t * j * ((params.q() + 1) / 2));
    };

    std::vector<FieldElement> f1_overlap, f2_overlap;
    for (auto dlog : cs.both) {
        f1_overlap.push_back(f1(dlog));
        f2_overlap.push_back(f2(dlog));
    }
    FieldElement lambda = choose_lambda(F, f1_overlap, f2_overlap);

    std::vector<FieldElement> a, targets;
    for (auto dlog : cs.a_minus_b) {
        a.push_back(FieldElement::from_exponent(dlog));
        targets.push_back(f1(dlog));
    }
    for (auto dlog : cs.b_minus_a) {
        a.push_back(FieldElement::from_exponent(dlog));
        targets.push_back(F.mul(lambda, f2(dlog)));
    }
    for (std::size_t i = 0; i < cs.both.size(); ++i) {
        a.push_back(FieldElement::from_exponent(cs.both[i]));
        targets.push_back(F.add(f1_overlap[i], F.mul(lambda, f2_overlap[i])));
    }

    ConstructedCode out{GrsCode{params.ctx, std::move(a),
                                detail::norms_to_multipliers(F, targets), d},
                        params, {}};
    if (out.code.length() != static_cast<std::size_t>(params.n))
        throw InternalError("t5 length bookkeeping failed");
    validate(out.code);

    WitnessVectors& w = out.witness;
    w.u = u;
    w.lambda = lambda;
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog)
        if (static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.s)) < params.h) {
            w.a1.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            w.v1.push_back(F.solve_norm(f1(static_cast<std::uint32_t>(dlog))));
        }
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog)
        if (static_cast<std::int64_t>(dlog % static_cast<std::uint64_t>(params.t)) < params.r) {
            w.a2.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            w.v2.push_back(F.solve_norm(f2(static_cast<std::uint32_t>(dlog))));
        }
    return out;
}

/// Theorem 6 witness: a1 ranges over the odd-exponent cosets g^{2k+1} delta^i
/// (all nonsquares), a2 over the even-exponent cosets g^{2k} theta^j (all
/// squares), so the two parts are disjoint without overlap handling.
inline ConstructedCode build_t6(const ConstructionParams& params, std::int64_t d = -1) {
    if (params.theorem != Theorem::t6)
        throw ParamError("build_t6 requires t6 parameters");
    if (d == -1)
        d = params.d_max;
    if (d < 1 || d > params.d_max)
        throw ParamError("d must satisfy 1 <= d <= d_max = " + std::to_string(params.d_max));
    const FieldContext& F = *params.ctx;

    auto u = lemma12_solve(params.ctx, params.s, params.h);

    auto f1 = [&](std::uint32_t dlog) {
        std::uint32_t k = (dlog % static_cast<std::uint32_t>(params.s) - 1) / 2;
        std::int64_t i = dlog / static_cast<std::uint32_t>(params.s);
        return F.mul(u[k], F.g_power(params.s * i * (params.q() + 1)));
    };
    auto f2 = [&](std::uint32_t dlog) {
        std::int64_t j = dlog / static_cast<std::uint32_t>(params.t);
        return F.g_power(params.t * j * ((params.q() + 1) / 2));
    };

    std::vector<FieldElement> a, targets;
    WitnessVectors w;
    w.u = u;
    w.lambda = F.one();
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog) {
        std::uint64_t res = dlog % static_cast<std::uint64_t>(params.s);
        if (res % 2 == 1 && static_cast<std::int64_t>(res) < 2 * params.h) {
            a.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            targets.push_back(f1(static_cast<std::uint32_t>(dlog)));
            w.a1.push_back(a.back());
            w.v1.push_back(F.solve_norm(targets.back()));
        }
    }
    for (std::uint64_t dlog = 0; dlog < F.group_order(); ++dlog) {
        std::uint64_t res = dlog % static_cast<std::uint64_t>(params.t);
        if (res % 2 == 0 && static_cast<std::int64_t>(res) < 2 * params.r) {
            a.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(dlog)));
            targets.push_back(f2(static_cast<std::uint32_t>(dlog)));
            w.a2.push_back(a.back());
            w.v2.push_back(F.solve_norm(targets.back()));
        }
    }

    ConstructedCode out{GrsCode{params.ctx, std::move(a),
                                detail::norms_to_multipliers(F, targets), d},
                        params, std::move(w)};
    if (out.code.length() != static_cast<std::size_t>(params.n))
        throw InternalError("t6 length bookkeeping failed");
    validate(out.code);
    return out;
}

inline ConstructedCode build_code(const ConstructionParams& params, std::int64_t d = -1) {
    switch (params.theorem) {
    case Theorem::t4: return build_t4(params, d);
    case Theorem::t5: return build_t5(params, d);
    case Theorem::t6: return build_t6(params, d);
    }
    throw ParamError("unknown theorem");
}

/// Bounds of the vanishing identities the component vectors satisfy; strictly
/// wider than the d-grid the final code needs.
struct LemmaRangeBounds {
    std::int64_t component1 = 0; // (a1, v1)
    std::int64_t component2 = 0; // (a2, v2)
};

inline LemmaRangeBounds lemma_range_bounds(const ConstructionParams& params) {
    const std::int64_t q = params.q();
    LemmaRangeBounds b;
    b.component1 = (params.theorem == Theorem::t4)
                       ? (params.s + params.h) / 2 * ((q + 1) / params.s) - 2
                       : (params.s + params.h) / 2 * ((q + 1) / params.s) - 3;
    b.component2 = (q + 1) / 2 + (q - 1) / params.t - 2;
    return b;
}

} // namespace qmds
