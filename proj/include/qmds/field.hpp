#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qmds/errors.hpp"

namespace qmds {

/// An element of F_{q^2}: either ZERO or an exponent k meaning g^k for the
/// canonical primitive element g of the owning FieldContext. Exponents are
/// kept reduced mod q^2-1. Elements from different contexts must not be mixed.
class FieldElement {
  public:
    constexpr FieldElement() = default; // ZERO

    static constexpr FieldElement zero() { return FieldElement{}; }

    static constexpr FieldElement from_exponent(std::uint32_t k) {
        FieldElement x;
        x.code_ = k;
        return x;
    }

    constexpr bool is_zero() const { return code_ == kZeroCode; }

    constexpr std::uint32_t exponent() const {
        assert(!is_zero());
        return code_;
    }

    friend constexpr bool operator==(FieldElement, FieldElement) = default;

  private:
    static constexpr std::uint32_t kZeroCode = 0xffffffffu;
    std::uint32_t code_ = kZeroCode;
};

/// Exact arithmetic in F_{q^2} (q = p^e) with a deterministic primitive
/// element g and full exp/log/Zech tables.
///
/// The modulus is the lexicographically smallest monic primitive polynomial
/// of degree 2e over F_p, comparing coefficient vectors
/// (c_{2e-1}, ..., c_1, c_0) entry by entry ascending, so the same (p, e)
/// always produces bit-identical tables. g is the residue class of the
/// polynomial variable itself.
class FieldContext {
  public:
    static constexpr std::int64_t kMaxQ = 1 << 16; // table budget

    FieldContext(std::int64_t p, int e) : p_(p), e_(e) {
        if (p < 2 || !is_prime(p))
            throw ParamError("p must be prime, got " + std::to_string(p));
        if (e < 1)
            throw ParamError("extension degree must be >= 1");
        q_ = 1;
        for (int i = 0; i < e; ++i) {
            q_ *= p;
            if (q_ > kMaxQ)
                throw BudgetError("table budget exceeded: q = p^e must be <= 2^16");
        }
        order_ = q_ * q_;
        n_ = static_cast<std::uint64_t>(order_ - 1);
        find_modulus();
        build_tables();
        minus_one_exp_ = (p_ == 2) ? 0 : static_cast<std::uint32_t>(n_ / 2);
    }

    std::int64_t p() const { return p_; }
    int e() const { return e_; }
    std::int64_t q() const { return q_; }
    std::int64_t order() const { return order_; } // q^2
    std::uint64_t group_order() const { return n_; } // q^2 - 1

    /// Modulus coefficients ascending by power, constant term first,
    /// including the leading 1 (2e + 1 entries).
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    FieldElement g() const { return FieldElement::from_exponent(1); }
    FieldElement one() const { return FieldElement::from_exponent(0); }

    /// g^k for any integer k, exponent reduced mod q^2-1.
    FieldElement g_power(std::int64_t k) const {
        std::int64_t m = k % static_cast<std::int64_t>(n_);
        if (m < 0)
            m += static_cast<std::int64_t>(n_);
        return FieldElement::from_exponent(static_cast<std::uint32_t>(m));
    }

    /// The prime-subfield element v mod p.
    FieldElement from_integer(std::int64_t v) const {
        std::int64_t r = v % p_;
        if (r < 0)
            r += p_;
        if (r == 0)
            return FieldElement::zero();
        return FieldElement::from_exponent(log_[static_cast<std::size_t>(r)]);
    }

    /// Polynomial coordinates of x packed as a base-p integer (0 for ZERO).
    std::uint32_t packed(FieldElement x) const {
        return x.is_zero() ? 0u : exp_[x.exponent()];
    }

    FieldElement from_packed(std::uint32_t w) const {
        if (w == 0)
            return FieldElement::zero();
        if (w >= static_cast<std::uint64_t>(order_))
            throw ParamError("packed value out of range");
        return FieldElement::from_exponent(log_[w]);
    }

    FieldElement add(FieldElement x, FieldElement y) const {
        if (x.is_zero())
            return y;
        if (y.is_zero())
            return x;
        std::uint64_t a = x.exponent(), b = y.exponent();
        std::uint64_t d = b >= a ? b - a : b + n_ - a;
        std::uint32_t z = zech_[d];
        if (z == kNoLog)
            return FieldElement::zero();
        std::uint64_t r = a + z;
        if (r >= n_)
            r -= n_;
        return FieldElement::from_exponent(static_cast<std::uint32_t>(r));
    }

    FieldElement sub(FieldElement x, FieldElement y) const { return add(x, neg(y)); }

    FieldElement mul(FieldElement x, FieldElement y) const {
        if (x.is_zero() || y.is_zero())
            return FieldElement::zero();
        std::uint64_t r = static_cast<std::uint64_t>(x.exponent()) + y.exponent();
        if (r >= n_)
            r -= n_;
        return FieldElement::from_exponent(static_cast<std::uint32_t>(r));
    }

    FieldElement neg(FieldElement x) const {
        return mul(x, FieldElement::from_exponent(minus_one_exp_));
    }

    FieldElement inv(FieldElement x) const {
        if (x.is_zero())
            throw ParamError("inversion of ZERO");
        std::uint32_t a = x.exponent();
        return FieldElement::from_exponent(a == 0 ? 0 : static_cast<std::uint32_t>(n_ - a));
    }

    /// x^k with the conventions ZERO^0 = 1 and ZERO^{k>0} = ZERO.
    FieldElement pow(FieldElement x, std::int64_t k) const {
        if (x.is_zero()) {
            if (k == 0)
                return one();
            if (k < 0)
                throw ParamError("negative power of ZERO");
            return FieldElement::zero();
        }
        std::int64_t m = k % static_cast<std::int64_t>(n_);
        if (m < 0)
            m += static_cast<std::int64_t>(n_);
        std::uint64_t r = (static_cast<std::uint64_t>(x.exponent()) * static_cast<std::uint64_t>(m)) % n_;
        return FieldElement::from_exponent(static_cast<std::uint32_t>(r));
    }

    /// The Frobenius automorphism x -> x^q; an involution fixing F_q.
    FieldElement frobenius(FieldElement x) const {
        if (x.is_zero())
            return x;
        std::uint64_t r = (static_cast<std::uint64_t>(x.exponent()) * static_cast<std::uint64_t>(q_)) % n_;
        return FieldElement::from_exponent(static_cast<std::uint32_t>(r));
    }

    /// The norm map x -> x^{q+1}, onto F_q.
    FieldElement norm(FieldElement x) const {
        if (x.is_zero())
            return x;
        std::uint64_t r =
            (static_cast<std::uint64_t>(x.exponent()) * static_cast<std::uint64_t>(q_ + 1)) % n_;
        return FieldElement::from_exponent(static_cast<std::uint32_t>(r));
    }

    /// x lies in the subfield F_q, i.e. x = 0 or x^q = x.
    bool in_base_field(FieldElement x) const {
        if (x.is_zero())
            return true;
        return x.exponent() % static_cast<std::uint32_t>(q_ + 1) == 0;
    }

    /// Canonical v with v^{q+1} = u for u in F_q*: the dlog of u is (q+1)*j
    /// for a unique 0 <= j < q-1 and the result is g^j.
    FieldElement solve_norm(FieldElement u) const {
        if (u.is_zero())
            throw ParamError("solve_norm requires a nonzero element of F_q");
        if (!in_base_field(u))
            throw ParamError("solve_norm requires an element of the base field F_q");
        return FieldElement::from_exponent(u.exponent() / static_cast<std::uint32_t>(q_ + 1));
    }

    std::string to_string(FieldElement x) const {
        if (x.is_zero())
            return "0";
        if (x.exponent() == 0)
            return "1";
        std::uint32_t w = packed(x);
        if (w < static_cast<std::uint64_t>(p_))
            return std::to_string(w);
        return "g^" + std::to_string(x.exponent());
    }

    // Table access, mainly for tests and determinism checks.
    std::span<const std::uint32_t> exp_table() const { return exp_; }
    std::span<const std::uint32_t> log_table() const { return log_; }
    std::span<const std::uint32_t> zech_table() const { return zech_; }

  private:
    static constexpr std::uint32_t kNoLog = 0xffffffffu;

    static bool is_prime(std::int64_t n) {
        if (n < 2)
            return false;
        for (std::int64_t d = 2; d * d <= n; ++d)
            if (n % d == 0)
                return false;
        return true;
    }

    // Polynomial helpers over F_p, coefficients ascending, used only during
    // construction. Representation: vector of size deg(modulus) = 2e.
    using Poly = std::vector<std::int64_t>;

    Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& mod) const {
        std::size_t d = mod.size() - 1;
        std::vector<std::int64_t> prod(2 * d - 1, 0);
        for (std::size_t i = 0; i < d; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < d; ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
        }
        for (std::size_t k = prod.size(); k-- > d;) {
            std::int64_t c = prod[k];
            if (c == 0)
                continue;
            prod[k] = 0;
            for (std::size_t i = 0; i < d; ++i)
                prod[k - d + i] = ((prod[k - d + i] - c * mod[i]) % p_ + p_) % p_;
        }
        prod.resize(d);
        return prod;
    }

    Poly poly_powmod(Poly base, std::uint64_t k, const Poly& mod) const {
        std::size_t d = mod.size() - 1;
        Poly r(d, 0);
        r[0] = 1;
        while (k) {
            if (k & 1)
                r = poly_mulmod(r, base, mod);
            base = poly_mulmod(base, base, mod);
            k >>= 1;
        }
        return r;
    }

    static bool poly_is_one(const Poly& a) {
        if (a.empty() || a[0] != 1)
            return false;
        for (std::size_t i = 1; i < a.size(); ++i)
            if (a[i] != 0)
                return false;
        return true;
    }

    // x has order q^2-1 mod f  <=>  f is irreducible and x is primitive;
    // checked via the prime factorization of q^2-1.
    bool x_is_primitive(const Poly& mod, const std::vector<std::uint64_t>& prime_factors) const {
        std::size_t d = mod.size() - 1;
        Poly x(d, 0);
        if (d > 1)
            x[1] = 1;
        else
            return false; // cannot happen: d = 2e >= 2
        if (!poly_is_one(poly_powmod(x, n_, mod)))
            return false;
        for (std::uint64_t r : prime_factors)
            if (poly_is_one(poly_powmod(x, n_ / r, mod)))
                return false;
        return true;
    }

    void find_modulus() {
        std::vector<std::uint64_t> factors;
        std::uint64_t rem = n_;
        for (std::uint64_t f = 2; f * f <= rem; ++f) {
            if (rem % f == 0) {
                factors.push_back(f);
                while (rem % f == 0)
                    rem /= f;
            }
        }
        if (rem > 1)
            factors.push_back(rem);

        const int d = 2 * e_;
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i)
            count *= static_cast<std::uint64_t>(p_);
        for (std::uint64_t cand = 0; cand < count; ++cand) {
            // digits of cand, most significant first = coefficient of x^{d-1}
            Poly coeffs(static_cast<std::size_t>(d) + 1, 0);
            coeffs[d] = 1;
            std::uint64_t t = cand;
            for (int i = 0; i < d; ++i) { // least significant digit = constant term
                coeffs[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p_));
                t /= static_cast<std::uint64_t>(p_);
            }
            if (coeffs[0] == 0)
                continue; // x divides f, x cannot generate
            if (x_is_primitive(coeffs, factors)) {
                modulus_ = coeffs;
                return;
            }
        }
        throw InternalError("no primitive polynomial found"); // unreachable
    }

    void build_tables() {
        const std::size_t d = static_cast<std::size_t>(2 * e_);
        exp_.resize(n_);
        log_.assign(static_cast<std::size_t>(order_), kNoLog);
        std::vector<std::int64_t> cur(d, 0);
        cur[0] = 1;
        for (std::uint64_t k = 0; k < n_; ++k) {
            std::uint64_t w = 0;
            for (std::size_t i = d; i-- > 0;)
                w = w * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(cur[i]);
            exp_[k] = static_cast<std::uint32_t>(w);
            if (log_[w] != kNoLog)
                throw InternalError("exp table period shorter than q^2-1");
            log_[w] = static_cast<std::uint32_t>(k);
            // multiply by x: shift and reduce by the monic modulus
            std::int64_t carry = cur[d - 1];
            for (std::size_t i = d - 1; i > 0; --i)
                cur[i] = cur[i - 1];
            cur[0] = 0;
            if (carry != 0)
                for (std::size_t i = 0; i < d; ++i)
                    cur[i] = ((cur[i] - carry * modulus_[i]) % p_ + p_) % p_;
        }
        bool back_to_one = cur[0] == 1;
        for (std::size_t i = 1; i < d; ++i)
            back_to_one = back_to_one && cur[i] == 0;
        if (!back_to_one)
            throw InternalError("g does not have order q^2-1");

        // Zech logarithms: zech[k] = dlog(1 + g^k), kNoLog when 1 + g^k = 0.
        zech_.resize(n_);
        for (std::uint64_t k = 0; k < n_; ++k) {
            std::uint64_t w = exp_[k];
            std::uint64_t low = w % static_cast<std::uint64_t>(p_);
            std::uint64_t w1 = w - low + (low + 1) % static_cast<std::uint64_t>(p_);
            zech_[k] = (w1 == 0) ? kNoLog : log_[w1];
        }
    }

    std::int64_t p_;
    int e_;
    std::int64_t q_ = 0;
    std::int64_t order_ = 0;
    std::uint64_t n_ = 0;
    std::uint32_t minus_one_exp_ = 0;
    std::vector<std::int64_t> modulus_;
    std::vector<std::uint32_t> exp_;
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> zech_;
};

using FieldPtr = std::shared_ptr<const FieldContext>;

/// Deterministic context factory: same (p, e) always yields identical tables.
inline FieldPtr make_field(std::int64_t p, int e) {
    return std::make_shared<const FieldContext>(p, e);
}

} // namespace qmds
