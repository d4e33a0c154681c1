#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qmds/grs.hpp"

using namespace qmds;

namespace {

GrsCode random_code(FieldPtr F, std::size_t n, std::int64_t d, std::mt19937& rng) {
    std::vector<FieldElement> pool{FieldElement::zero()};
    for (std::uint64_t k = 0; k < F->group_order(); ++k)
        pool.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(k)));
    std::shuffle(pool.begin(), pool.end(), rng);
    GrsCode code;
    code.ctx = F;
    code.a.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
    std::uniform_int_distribution<std::uint64_t> nz(0, F->group_order() - 1);
    for (std::size_t i = 0; i < n; ++i)
        code.v.push_back(FieldElement::from_exponent(static_cast<std::uint32_t>(nz(rng))));
    code.d = d;
    validate(code);
    return code;
}

} // namespace

TEST_CASE("code validation", "[grs]") {
    auto F = make_field(5, 1);
    GrsCode code{F, {F->one(), F->one()}, {F->one(), F->one()}, 1};
    CHECK_THROWS_AS(validate(code), ParamError); // repeated point
    code.a[1] = F->g();
    validate(code);
    code.v[0] = FieldElement::zero();
    CHECK_THROWS_AS(validate(code), ParamError); // zero multiplier
    code.v[0] = F->one();
    code.d = 3;
    CHECK_THROWS_AS(validate(code), ParamError); // d > n
}

TEST_CASE("generator matrix", "[grs]") {
    auto F = make_field(5, 1);

    GrsCode row{F, {FieldElement::zero(), F->one(), F->g()}, {F->g(), F->one(), F->g_power(7)}, 1};
    Matrix g1 = generator_matrix(row);
    REQUIRE(g1.rows() == 1);
    for (std::size_t j = 0; j < 3; ++j)
        CHECK(g1.at(0, j) == row.v[j]);

    GrsCode two{F, {FieldElement::zero(), F->one()}, {F->one(), F->one()}, 2};
    Matrix g2 = generator_matrix(two);
    CHECK(g2.at(0, 0) == F->one());
    CHECK(g2.at(0, 1) == F->one());
    CHECK(g2.at(1, 0).is_zero());
    CHECK(g2.at(1, 1) == F->one());

    std::mt19937 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        auto code = random_code(F, 8, 1 + trial % 5, rng);
        CHECK(rank(generator_matrix(code)) == static_cast<std::size_t>(code.d));
    }
}

TEST_CASE("encode", "[grs]") {
    auto F = make_field(5, 1);
    std::mt19937 rng(11);
    auto code = random_code(F, 9, 4, rng);

    std::vector<FieldElement> zero_coeffs(4);
    for (auto w : encode(code, zero_coeffs))
        CHECK(w.is_zero());

    std::vector<FieldElement> constant(4);
    constant[0] = F->from_integer(3);
    auto cw = encode(code, constant);
    for (std::size_t j = 0; j < code.length(); ++j)
        CHECK(cw[j] == F->mul(code.v[j], constant[0]));

    // encode agrees with the row combination of the generator matrix
    Matrix g = generator_matrix(code);
    std::vector<FieldElement> coeffs{F->g(), FieldElement::zero(), F->from_integer(2), F->g_power(13)};
    auto word = encode(code, coeffs);
    for (std::size_t j = 0; j < code.length(); ++j) {
        FieldElement acc;
        for (std::size_t i = 0; i < 4; ++i)
            acc = F->add(acc, F->mul(coeffs[i], g.at(i, j)));
        CHECK(word[j] == acc);
    }

    CHECK_THROWS_AS(encode(code, std::span(constant).subspan(0, 3)), ParamError);
}

TEST_CASE("hermitian inner product", "[grs]") {
    auto F = make_field(5, 1);
    std::vector<FieldElement> zero(3), y{F->g(), F->one(), F->g_power(9)};
    CHECK(hermitian_inner(*F, zero, y).is_zero());

    std::vector<FieldElement> single{F->g()};
    CHECK(hermitian_inner(*F, single, single) == F->from_integer(2)); // g^{q+1} = g^6 = 2

    std::mt19937 rng(3);
    std::uniform_int_distribution<int> dist(0, 24);
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<FieldElement> x, w;
        for (int i = 0; i < 6; ++i) {
            int a = dist(rng), b = dist(rng);
            x.push_back(a == 24 ? FieldElement::zero() : FieldElement::from_exponent(a));
            w.push_back(b == 24 ? FieldElement::zero() : FieldElement::from_exponent(b));
        }
        CHECK(hermitian_inner(*F, x, w) == F->frobenius(hermitian_inner(*F, w, x)));
    }
}

TEST_CASE("power sums", "[grs]") {
    auto F = make_field(5, 1);

    // (0,0) power sum is exactly the sum of v-norms
    std::mt19937 rng(19);
    auto code = random_code(F, 10, 3, rng);
    FieldElement norms;
    for (auto v : code.v)
        norms = F->add(norms, F->norm(v));
    CHECK(power_sum(code, 0, 0) == norms);

    // a = all field elements, v = 1: the (0,1) sum is the sum over F_{q^2}
    GrsCode full;
    full.ctx = F;
    full.a.push_back(FieldElement::zero());
    for (std::uint32_t k = 0; k < 24; ++k)
        full.a.push_back(FieldElement::from_exponent(k));
    full.v.assign(25, F->one());
    full.d = 2;
    CHECK(power_sum(full, 0, 1).is_zero());

    // the fast grid scan agrees with the direct sums cell by cell
    for (int threads : {1, 3}) {
        auto hit = first_nonzero_power_sum(*F, code.a, code.v, 4, 4, threads);
        std::optional<PowerSumCounterexample> expect;
        for (std::int64_t i = 0; i <= 4 && !expect; ++i)
            for (std::int64_t j = 0; j <= 4; ++j) {
                auto s = power_sum(code, i, j);
                if (!s.is_zero()) {
                    expect = PowerSumCounterexample{i, j, s};
                    break;
                }
            }
        REQUIRE(hit.has_value() == expect.has_value());
        if (hit) {
            CHECK(hit->i == expect->i);
            CHECK(hit->j == expect->j);
            CHECK(hit->value == expect->value);
        }
    }
}

TEST_CASE("self-orthogonality criterion and gram check", "[grs]") {
    auto F4 = make_field(2, 1);

    // d = n = 3 over F_4: the (0,0) sum is 1+1+1 = 1, never self-orthogonal
    GrsCode fullrate{F4, {FieldElement::zero(), F4->one(), F4->g()},
                     {F4->one(), F4->one(), F4->one()}, 3};
    CHECK_FALSE(is_hermitian_self_orthogonal(fullrate));
    CHECK_FALSE(gram_check(fullrate));

    // d = 1 with vanishing norm sum: 1 + g^3 = 1 + 1 = 0 in characteristic 2
    GrsCode tiny{F4, {FieldElement::zero(), F4->one()}, {F4->one(), F4->g()}, 1};
    CHECK(is_hermitian_self_orthogonal(tiny));
    CHECK(gram_check(tiny));
    GrsCode tiny2{F4, {FieldElement::zero(), F4->one()}, {F4->one(), F4->one()}, 1};
    CHECK(is_hermitian_self_orthogonal(tiny2));
    CHECK(gram_check(tiny2));

    // the two routes agree on random codes
    std::mt19937 rng(23);
    for (auto [p, e] : {std::pair<std::int64_t, int>{2, 1}, {3, 1}, {5, 1}}) {
        auto F = make_field(p, e);
        for (int trial = 0; trial < 30; ++trial) {
            auto n = 2 + rng() % std::min<std::uint64_t>(F->group_order(), 8);
            auto code = random_code(F, n, 1 + rng() % n, rng);
            CHECK(is_hermitian_self_orthogonal(code) == gram_check(code));
        }
    }
}

TEST_CASE("brute-force minimum distance", "[grs]") {
    auto F = make_field(5, 1);
    std::mt19937 rng(31);

    auto d1 = random_code(F, 7, 1, rng);
    CHECK(brute_min_distance(d1) == 7); // constant polynomials have full weight

    auto full = random_code(F, 2, 2, rng);
    CHECK(brute_min_distance(full) == 1); // interpolation gives weight-1 words

    for (int trial = 0; trial < 5; ++trial) {
        auto code = random_code(F, 6 + trial, 2, rng);
        CHECK(brute_min_distance(code) == static_cast<std::int64_t>(code.length()) - code.d + 1);
    }

    auto big = random_code(F, 11, 5, rng);
    CHECK_THROWS_AS(brute_min_distance(big), BudgetError); // 25^5 > 10^6
}

TEST_CASE("quantum parameter map", "[grs]") {
    auto qp = quantum_params(13, 3, 5);
    CHECK(qp == QuantumParams{13, 7, 4, 5});

    auto table1 = quantum_params(588, 22, 37);
    CHECK(table1 == QuantumParams{588, 544, 23, 37});

    auto edge = quantum_params(10, 5, 7);
    CHECK(edge.k == 0);

    CHECK_THROWS_AS(quantum_params(10, 6, 7), ParamError);
    CHECK_THROWS_AS(quantum_params(10, 0, 7), ParamError);
}
