#include <doctest.h>

#include <random>

#include "quasiline/qyd.hpp"

using namespace quasiline;

namespace {

// Raw datum test used as the independent oracle for enumeration: builds
// the power table chi(c^t) = u^t and runs the exhaustive verifier.
bool raw_cyclic_datum_passes(unsigned n, unsigned w, unsigned z, const CycNum& u) {
    DqbPtr A = group_dqb(cyclic_group(n), omega_zeta(n, w), false);
    Functional chi(1, n);
    for (unsigned t = 0; t < n; ++t) chi.set(pack1(t), u.pow(t));
    QuasiYDDatum D;
    D.H = A;
    D.g = z;
    D.chi = chi;
    D.q = chi.at(pack1(z));
    return verify_datum(D).ok();
}

}  // namespace

TEST_CASE("the basic datum chi(c^t) = q^t verifies") {
    for (unsigned n = 2; n <= 4; ++n) {
        CycNum q = CycNum::root_of_unity(n * n, 1);
        QuasiYDDatum D = datum_for_cyclic(n, 1, 1, q);
        CHECK(verify_datum(D).ok());
        CHECK(D.q == q);
        CHECK(D.N == n * n);
    }
}

TEST_CASE("trivial datum") {
    DqbPtr A = group_dqb(cyclic_group(3), omega_zeta(3, 1), false);
    Functional chi(1, 3);
    for (Idx t = 0; t < 3; ++t) chi.set(pack1(t), CycNum::one(9));
    QuasiYDDatum D = make_datum(A, 0, chi, true);
    CHECK(D.q.is_one());
    CHECK(D.N == 1u);
}

TEST_CASE("negative control: wrong chi on a product is caught at (c, c)") {
    DqbPtr A = group_dqb(cyclic_group(2), omega_zeta(2, 1), false);
    Functional chi(1, 2);
    // chi(1) = 1 keeps the unit pairs clean; chi(c) = -1 makes the product
    // rule fail first at (c, c), where the rule demands chi(c c) = -chi(c)^2
    chi.set(pack1(0), CycNum::one(4));
    chi.set(pack1(1), CycNum(-1, 4));
    QuasiYDDatum D;
    D.H = A;
    D.g = 1;
    D.chi = chi;
    D.q = chi.at(pack1(1));
    Report rep = verify_datum(D);
    CHECK(!rep.ok());
    const CheckItem* item = rep.find("chi product rule");
    REQUIRE(item != nullptr);
    CHECK(!item->pass);
    CHECK(item->counterexample == "(c, c)");
}

TEST_CASE("datum_for_cyclic matches the explicit family") {
    // chi(c^t) = q^{izt}: datum for chi(c^z) = q^{iz^2}
    unsigned n = 3, i = 1, z = 2;
    unsigned n2 = n * n;
    QuasiYDDatum D = datum_for_cyclic(n, i, z, CycNum::root_of_unity(n2, i * z));
    CHECK(D.q == CycNum::root_of_unity(n2, static_cast<long>(i) * z * z));
    // chi_j(c^t) = zeta^{jt} q^{izt}: datum for zeta^{jz} q^{iz^2}
    for (unsigned j = 0; j < n; ++j) {
        CycNum u = CycNum::root_of_unity(n2, static_cast<long>(n) * j + i * z);
        QuasiYDDatum Dj = datum_for_cyclic(n, i, z, u);
        CHECK(Dj.q == CycNum::root_of_unity(n2, static_cast<long>(n) * j * z + i * z * z));
        // order n^2/(njz + iz^2, n^2)
        unsigned e = (n * j * z + i * z * z) % n2;
        unsigned expected = n2 / std::gcd(e == 0 ? n2 : e, n2);
        CHECK(Dj.N == expected);
    }
    // trivial datum via z = 0
    QuasiYDDatum D0 = datum_for_cyclic(4, 1, 0, CycNum::one(16));
    CHECK(D0.q.is_one());
    // precondition violation: (q^2)^3 = zeta^2 != zeta
    CHECK_THROWS_AS((void)datum_for_cyclic(3, 1, 1, CycNum::root_of_unity(9, 2)),
                    std::domain_error);
}

TEST_CASE("enumeration counts and brute-force completeness") {
    SUBCASE("(n,w) = (3,1): 3 data per z, 9 total") {
        std::vector<QuasiYDDatum> data = enumerate_data(3, 1);
        CHECK(data.size() == 9);
    }
    SUBCASE("(n,w) = (2,0): the 4 character data") {
        std::vector<QuasiYDDatum> data = enumerate_data(2, 0);
        CHECK(data.size() == 4);
        for (const auto& D : data) CHECK(D.chi.at(pack1(1)).pow(2).is_one());
    }
    SUBCASE("independent brute force agrees for n <= 4") {
        for (unsigned n = 2; n <= 4; ++n) {
            for (unsigned w = 0; w < n; ++w) {
                std::vector<QuasiYDDatum> fast = enumerate_data(n, w);
                unsigned brute = 0;
                for (unsigned z = 0; z < n; ++z)
                    for (unsigned s = 0; s < n * n; ++s)
                        if (raw_cyclic_datum_passes(n, w, z, CycNum::root_of_unity(n * n, s)))
                            ++brute;
                CHECK(fast.size() == brute);
                for (const auto& D : fast) CHECK(verify_datum(D).ok());
            }
        }
    }
    SUBCASE("p choices of j per (i, z) with z != 0 at p = 3") {
        unsigned p = 3;
        for (unsigned i = 1; i < p; ++i) {
            std::vector<QuasiYDDatum> data = enumerate_data(p, i);
            for (unsigned z = 1; z < p; ++z) {
                unsigned count = 0;
                for (const auto& D : data)
                    if (D.g == z) ++count;
                CHECK(count == p);
            }
        }
    }
}

TEST_CASE("grouplike power formula") {
    unsigned n = 3;
    CycNum q = CycNum::root_of_unity(9, 1);
    QuasiYDDatum D = datum_for_cyclic(n, 1, 1, q);
    SUBCASE("t = 1 gives chi(c)") {
        CHECK(chi_power_formula(D, 1, 1) == D.chi.at(pack1(1)));
    }
    SUBCASE("matches chi(c^t) on every verified datum") {
        for (const auto& E : enumerate_data(3, 2))
            for (unsigned t = 1; t <= 6; ++t) {
                CHECK(chi_power_formula(E, 1, t) == chi_of_power(E, 1, t));
                if (omega_symmetric_last_two(E.H->omega, 3))
                    CHECK(chi_power_formula_short(E, 1, t) == chi_of_power(E, 1, t));
            }
    }
    SUBCASE("basic datum at t = z") {
        unsigned z = 2, i = 1;
        QuasiYDDatum E = datum_for_cyclic(n, i, z, CycNum::root_of_unity(9, i * z));
        CHECK(chi_power_formula(E, 1, z) ==
              CycNum::root_of_unity(9, static_cast<long>(i) * z * z));
    }
}

TEST_CASE("pullback along the identity returns the datum") {
    QuasiYDDatum D = datum_for_cyclic(2, 1, 1, CycNum::root_of_unity(4, 1));
    DqbMorphism id{D.H, D.H, LinearMap::identity(2)};
    QuasiYDDatum P = pullback_datum(id, D, D.g);
    CHECK(P.g == D.g);
    CHECK(P.chi == D.chi);
}

TEST_CASE("dicyclic pullback datum") {
    // ((kC_4, w_zeta), c^2, chi(c^t) = q^{2t}) pulled to (kDic_3, w_G) at x^2
    DqbMorphism pi = dicyclic_projection(3, false);
    QuasiYDDatum D = datum_for_cyclic(4, 1, 2, CycNum::root_of_unity(16, 2));
    CHECK(D.q == CycNum::root_of_unity(16, 4));  // zeta, a primitive 4th root
    CHECK(D.N == 4u);
    Idx x2 = dicyclic_index(3, 0, 2);
    QuasiYDDatum P = pullback_datum(pi, D, x2);
    CHECK(verify_datum(P).ok());
    CHECK(P.q == D.q);
    // the morphism of data it induces
    QydMorphism f{P, D, pi};
    CHECK(check_qyd_morphism(f).ok());
}

TEST_CASE("pullback precondition failure names a witness") {
    // pulling the dicyclic datum back at a non-central grouplike fails
    DqbMorphism pi = dicyclic_projection(3, false);
    QuasiYDDatum D = datum_for_cyclic(4, 1, 1, CycNum::root_of_unity(16, 1));
    Idx x1 = dicyclic_index(3, 0, 1);  // pi(x) = c, x not central
    CHECK_THROWS_AS((void)pullback_datum(pi, D, x1), std::domain_error);
}

TEST_CASE("cyclic projection datum: chi need not satisfy the power law") {
    // ((kC_{n^2}, d^2 v), C, chi . phi): chi phi(C^n) = 1 but (chi phi(C))^n = zeta
    unsigned n = 2;
    DqbMorphism phi = projection_phi(n, 1, false);
    QuasiYDDatum D = datum_for_cyclic(n, 1, 1, CycNum::root_of_unity(n * n, 1));
    QuasiYDDatum P = pullback_datum(phi, D, 1);
    CHECK(verify_datum(P).ok());
    CycNum at_n = chi_of_power(P, 1, n);
    CHECK(at_n.is_one());
    CycNum powered = P.chi.at(pack1(1)).pow(n);
    CHECK(powered == CycNum::root_of_unity(n * n, n));  // zeta
    CHECK(!(at_n == powered));
    // the power formula itself still matches, and the short form applies
    for (unsigned t = 1; t <= n * n; ++t) {
        CHECK(chi_power_formula(P, 1, t) == chi_of_power(P, 1, t));
        CHECK(chi_power_formula_short(P, 1, t) == chi_of_power(P, 1, t));
    }
    CHECK(omega_symmetric_last_two(P.H->omega, n * n));
}

TEST_CASE("group datum criterion") {
    SUBCASE("dicyclic datum: x^2 is central and all checks pass") {
        DqbMorphism pi = dicyclic_projection(3, false);
        QuasiYDDatum D = datum_for_cyclic(4, 1, 2, CycNum::root_of_unity(16, 2));
        Idx x2 = dicyclic_index(3, 0, 2);
        QuasiYDDatum P = pullback_datum(pi, D, x2);
        Report rep = group_datum_check(dicyclic_group(3), P.H->omega, x2, P.chi);
        INFO(rep.to_text_stable());
        CHECK(rep.ok());
    }
    SUBCASE("non-central grouplike fails with the non-commuting pair") {
        FiniteGroup G = dicyclic_group(3);
        DqbMorphism pi = dicyclic_projection(3, false);
        Functional chi(1, G.order);
        for (Idx h = 0; h < G.order; ++h) chi.set(pack1(h), CycNum::one(16));
        Report rep = group_datum_check(G, pi.source->omega, dicyclic_index(3, 0, 1), chi);
        CHECK(!rep.ok());
        const CheckItem* item = rep.find("g central");
        REQUIRE(item != nullptr);
        CHECK(!item->pass);
        CHECK(!item->counterexample.empty());
    }
    SUBCASE("abelian group: centrality is vacuous") {
        QuasiYDDatum D = datum_for_cyclic(3, 1, 1, CycNum::root_of_unity(9, 1));
        Report rep = group_datum_check(cyclic_group(3), D.H->omega, 1, D.chi);
        CHECK(rep.ok());
    }
}

TEST_CASE("chi nonzero on a grouplike forces gl = lg") {
    DqbMorphism pi = dicyclic_projection(3, false);
    QuasiYDDatum D = datum_for_cyclic(4, 1, 2, CycNum::root_of_unity(16, 2));
    Idx x2 = dicyclic_index(3, 0, 2);
    QuasiYDDatum P = pullback_datum(pi, D, x2);
    const FiniteGroup G = dicyclic_group(3);
    for (Idx l = 0; l < G.order; ++l) {
        if (P.chi.at(pack1(l)).is_zero()) continue;
        CHECK(G.table[x2][l] == G.table[l][x2]);
    }
}

TEST_CASE("one-dimensional module verifies iff the datum does") {
    std::mt19937_64 rng(101);
    for (unsigned n = 2; n <= 4; ++n) {
        unsigned n2 = n * n;
        DqbPtr A = group_dqb(cyclic_group(n), omega_zeta(n, 1), false);
        std::uniform_int_distribution<long> edist(0, n2 - 1);
        std::uniform_int_distribution<unsigned> zdist(0, n - 1);
        for (int trial = 0; trial < 12; ++trial) {
            Functional chi(1, n);
            chi.set(pack1(0), CycNum::one(n2));
            for (Idx t = 1; t < n; ++t)
                chi.set(pack1(t), CycNum::root_of_unity(n2, edist(rng)));
            QuasiYDDatum D;
            D.H = A;
            D.g = zdist(rng);
            D.chi = chi;
            D.q = chi.at(pack1(D.g));
            bool datum_ok = verify_datum(D).ok();
            bool module_ok = verify_yd_module(one_dim_module(D)).ok();
            CHECK(datum_ok == module_ok);
        }
    }
}

TEST_CASE("trivial module and braiding") {
    DqbPtr A = group_dqb(cyclic_group(2), omega_zeta(2, 1), false);
    YetterDrinfeldModule k = trivial_module(A);
    CHECK(verify_yd_module(k).ok());
    LinearMap c = braiding(k, k);
    CHECK(c == LinearMap::identity(1));
}

TEST_CASE("braiding on the one-dimensional module multiplies by q") {
    QuasiYDDatum D = datum_for_cyclic(2, 1, 1, CycNum::root_of_unity(4, 1));
    YetterDrinfeldModule V = one_dim_module(D);
    LinearMap c = braiding(V, V);
    REQUIRE(c.col[0].size() == 1);
    CHECK(c.col[0][0].second == D.q);
}

TEST_CASE("tensor products of YD modules are YD modules") {
    QuasiYDDatum D = datum_for_cyclic(3, 1, 1, CycNum::root_of_unity(9, 1));
    YetterDrinfeldModule V = one_dim_module(D);
    YetterDrinfeldModule VV = yd_tensor(V, V);
    CHECK(verify_yd_module(VV).ok());
    YetterDrinfeldModule VVV = yd_tensor(V, VV);
    CHECK(verify_yd_module(VVV).ok());
    // tensoring with the unit object changes nothing structurally
    YetterDrinfeldModule k = trivial_module(D.H);
    YetterDrinfeldModule kV = yd_tensor(k, V);
    CHECK(verify_yd_module(kV).ok());
    CHECK(kV.dim == V.dim);
}
