#pragma once

// Test-only oracles, deliberately independent of the exp/log/Zech machinery
// in qmds::FieldContext: elements are explicit coefficient vectors over F_p
// and all arithmetic is schoolbook polynomial arithmetic.

#include <cstdint>
#include <map>
#include <vector>

namespace oracle {

using Poly = std::vector<std::int64_t>; // coefficients ascending, fixed size deg(mod)

struct PolyField {
    std::int64_t p;
    Poly mod; // monic, coefficients ascending, size deg+1
    std::size_t deg() const { return mod.size() - 1; }

    Poly zero() const { return Poly(deg(), 0); }
    Poly one() const {
        Poly r(deg(), 0);
        r[0] = 1;
        return r;
    }
    Poly x() const {
        Poly r(deg(), 0);
        r[1] = 1;
        return r;
    }
    Poly from_int(std::int64_t v) const {
        Poly r(deg(), 0);
        r[0] = ((v % p) + p) % p;
        return r;
    }

    Poly add(const Poly& a, const Poly& b) const {
        Poly r(deg());
        for (std::size_t i = 0; i < deg(); ++i)
            r[i] = (a[i] + b[i]) % p;
        return r;
    }

    Poly mul(const Poly& a, const Poly& b) const {
        std::vector<std::int64_t> prod(2 * deg() - 1, 0);
        for (std::size_t i = 0; i < deg(); ++i)
            for (std::size_t j = 0; j < deg(); ++j)
                prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
        for (std::size_t k = prod.size(); k-- > deg();) {
            std::int64_t c = prod[k];
            if (!c)
                continue;
            prod[k] = 0;
            for (std::size_t i = 0; i < deg(); ++i)
                prod[k - deg() + i] = ((prod[k - deg() + i] - c * mod[i]) % p + p) % p;
        }
        prod.resize(deg());
        return prod;
    }

    Poly pow(Poly base, std::uint64_t k) const {
        Poly r = one();
        while (k) {
            if (k & 1)
                r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }

    // multiplicative order of x in F_p[x]/(mod); 0 if x never returns to 1
    std::uint64_t order_of_x(std::uint64_t limit) const {
        Poly cur = x();
        for (std::uint64_t k = 1; k <= limit; ++k) {
            if (cur == one())
                return k;
            cur = mul(cur, x());
        }
        return 0;
    }
};

// Exhaustively test each monic polynomial of degree d over F_p in the
// canonical lexicographic coefficient order (c_{d-1}, ..., c_0 ascending);
// select the first whose root has multiplicative order p^d - 1.
inline Poly first_primitive_modulus(std::int64_t p, std::size_t d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i)
        count *= static_cast<std::uint64_t>(p);
    std::uint64_t target = count - 1;
    for (std::uint64_t cand = 0; cand < count; ++cand) {
        Poly coeffs(d + 1, 0);
        coeffs[d] = 1;
        std::uint64_t t = cand;
        for (std::size_t i = 0; i < d; ++i) {
            coeffs[i] = static_cast<std::int64_t>(t % static_cast<std::uint64_t>(p));
            t /= static_cast<std::uint64_t>(p);
        }
        PolyField F{p, coeffs};
        if (F.order_of_x(target) == target)
            return coeffs;
    }
    return {};
}

} // namespace oracle
