#include <doctest.h>

#include <random>

#include "quasiline/cyclotomic.hpp"

using namespace quasiline;

namespace {

// Uniform nonzero element with root-of-unity and small-rational parts,
// used by the field-law property checks.
CycNum random_nonzero(std::mt19937_64& rng, unsigned conductor) {
    std::uniform_int_distribution<long> exp_dist(0, conductor - 1);
    std::uniform_int_distribution<long> num_dist(-3, 3);
    CycNum x;
    do {
        x = CycNum::root_of_unity(conductor, exp_dist(rng));
        long a = num_dist(rng);
        if (a != 0) x *= CycNum(Rational(a, 2), conductor);
        x += CycNum(Rational(num_dist(rng)), conductor);
    } while (x.is_zero());
    return x;
}

}  // namespace

TEST_CASE("euler phi") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(2) == 1);
    CHECK(euler_phi(4) == 2);
    CHECK(euler_phi(9) == 6);
    CHECK(euler_phi(16) == 8);
    CHECK(euler_phi(36) == 12);
}

TEST_CASE("root_of_unity basics") {
    // zeta_4^2 = -1
    CHECK(CycNum::root_of_unity(4, 2) == CycNum(-1, 4));
    // identity case for several conductors
    for (unsigned N : {1u, 2u, 3u, 4u, 9u, 16u}) CHECK(CycNum::root_of_unity(N, 0).is_one());
    // zeta_9^3 cubes to 1 but is not 1
    CycNum z93 = CycNum::root_of_unity(9, 3);
    CHECK(z93.pow(3).is_one());
    CHECK(!z93.is_one());
    // negative exponents wrap
    CHECK(CycNum::root_of_unity(9, -2) == CycNum::root_of_unity(9, 7));
}

TEST_CASE("field operations are exact and canonical") {
    CycNum x = CycNum::one(4) + CycNum::root_of_unity(4, 1);  // 1 + zeta_4
    CycNum xinv = x.inverse();
    CHECK((x * xinv).is_one());
    CHECK(xinv.coeffs().size() == euler_phi(4));

    CHECK((x + (-x)).is_zero());
    CHECK(CycNum::root_of_unity(9, 1).pow(9).is_one());

    // canonicality: outputs always have degree < phi(N)
    CycNum big = CycNum::root_of_unity(9, 8);
    CHECK(big.coeffs().size() == euler_phi(9));
}

TEST_CASE("field laws on random elements") {
    std::mt19937_64 rng(1007);
    for (unsigned conductor : {4u, 9u, 12u}) {
        for (int trial = 0; trial < 25; ++trial) {
            CycNum x = random_nonzero(rng, conductor);
            CycNum y = random_nonzero(rng, conductor);
            CHECK((x * y) * x.inverse() == y);
            CHECK(x * y == y * x);
            CHECK(x + y == y + x);
            CHECK((x * y).coeffs().size() == euler_phi(conductor));
        }
    }
}

TEST_CASE("multiplicative order") {
    CHECK(CycNum::one(4).multiplicative_order() == 1u);
    CHECK(CycNum::root_of_unity(4, 1).multiplicative_order() == 4u);  // n = 2: zeta_{n^2}
    CHECK(CycNum::root_of_unity(9, 3).multiplicative_order() == 3u);
    CHECK(CycNum(-1, 9).multiplicative_order() == 2u);  // order 2N bound matters
    CHECK(!CycNum(2, 4).multiplicative_order().has_value());
    CHECK(!(CycNum::one(4) + CycNum::root_of_unity(4, 1)).multiplicative_order().has_value());
    CHECK_THROWS_AS((void)CycNum::zero(4).multiplicative_order(), std::domain_error);
}

TEST_CASE("order of zeta^(jz) q^(iz^2) in Q(zeta_p^2)") {
    // order of zeta^(jz) q^(iz^2) is n^2 / gcd(njz + iz^2, n^2), n prime
    for (unsigned p : {2u, 3u}) {
        unsigned n2 = p * p;
        for (unsigned i = 1; i < p; ++i)
            for (unsigned z = 1; z < p; ++z)
                for (unsigned j = 0; j < p; ++j) {
                    CycNum v = CycNum::root_of_unity(n2, static_cast<long>(p * j * z + i * z * z));
                    unsigned expected = n2 / std::gcd(p * j * z + i * z * z, n2);
                    CHECK(v.multiplicative_order() == expected);
                }
    }
}

TEST_CASE("q_binom basics") {
    CycNum q = CycNum::root_of_unity(9, 1);
    CHECK(q_binom(2, 1, q) == CycNum::one(9) + q);
    CHECK(q_binom(5, 0, q).is_one());
    CHECK(q_binom(5, 5, q).is_one());
    CHECK_THROWS_AS((void)q_binom(2, 3, q), std::domain_error);
}

TEST_CASE("q_binom vanishes at primitive roots") {
    // [N i]_q = 0 for 0 < i < N when q is a primitive N-th root of unity
    for (unsigned N : {2u, 3u, 4u, 6u, 9u}) {
        CycNum q = CycNum::root_of_unity(N, 1);
        REQUIRE(q.multiplicative_order() == N);
        for (unsigned i = 1; i < N; ++i) CHECK(q_binom(N, i, q).is_zero());
        CHECK(q_binom(N, 0, q).is_one());
        CHECK(q_binom(N, N, q).is_one());
    }
}

TEST_CASE("alternating q-binomial sum collapses to delta_n0") {
    // sum_i [n i]_q (-1)^i q^(i(i-1)/2) = delta_{n,0}
    std::vector<CycNum> qs;
    qs.push_back(CycNum(2, 1));                  // not a root of unity
    qs.push_back(CycNum::root_of_unity(4, 1));   // i
    qs.push_back(CycNum::root_of_unity(9, 2));   // primitive 9th
    qs.push_back(CycNum::root_of_unity(16, 3));  // primitive 16th
    for (const CycNum& q : qs) {
        for (unsigned n = 0; n <= 12; ++n) {
            CycNum sum;
            for (unsigned i = 0; i <= n; ++i) {
                CycNum term = q_binom(n, i, q) * q.pow(static_cast<long>(i) * (i - 1) / 2);
                if (i % 2 == 1) term = -term;
                sum += term;
            }
            if (n == 0) CHECK(sum.is_one());
            else CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("q_binom symmetry") {
    // [n i]_q = [n n-i]_q for roots of unity of order <= 16
    for (unsigned ord : {1u, 2u, 3u, 4u, 8u, 12u, 16u}) {
        CycNum q = CycNum::root_of_unity(16 * 3, (16 * 3) / ord);  // order `ord` root in a big field
        REQUIRE(q.multiplicative_order() == ord);
        for (unsigned n = 0; n <= 12; ++n)
            for (unsigned i = 0; i <= n; ++i) CHECK(q_binom(n, i, q) == q_binom(n, n - i, q));
    }
}

TEST_CASE("lifting between conductors preserves equality and arithmetic") {
    CycNum a = CycNum::root_of_unity(3, 1);
    CycNum b = a.lifted(9);
    CHECK(a == b);
    CHECK(b.conductor() == 9);
    CHECK(a * a == b * b);

    // mixed-conductor arithmetic goes through the lcm
    CycNum z4 = CycNum::root_of_unity(4, 1);
    CycNum z3 = CycNum::root_of_unity(3, 1);
    CycNum prod = z4 * z3;
    CHECK(prod.conductor() == 12);
    CHECK(prod == CycNum::root_of_unity(12, 3 + 4));
    CHECK(prod.multiplicative_order() == 12u);

    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        CycNum x = random_nonzero(rng, 4);
        CycNum y = random_nonzero(rng, 4);
        CHECK((x + y).lifted(12) == x.lifted(12) + y.lifted(12));
        CHECK((x * y).lifted(12) == x.lifted(12) * y.lifted(12));
    }
}

TEST_CASE("inverse of zero is a domain error") {
    CHECK_THROWS_AS((void)CycNum::zero(4).inverse(), std::domain_error);
}

TEST_CASE("rational parsing round trip") {
    Rational r = parse_rational("-7/3");
    CHECK(rational_to_string(r) == "-7/3");
    CHECK_THROWS_AS((void)parse_rational("1.5"), std::invalid_argument);
}
