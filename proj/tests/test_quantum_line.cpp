#include <doctest.h>

#include "quasiline/quantum_line.hpp"

using namespace quasiline;

namespace {

QuasiYDDatum basic_datum(unsigned n) {
    return datum_for_cyclic(n, 1, 1, CycNum::root_of_unity(n * n, 1));
}

}  // namespace

TEST_CASE("chi_[0] = eps and chi_[1] = chi") {
    QuasiYDDatum D = basic_datum(2);
    Functional c0 = chi_n(D, 0);
    for (Idx h = 0; h < 2; ++h) CHECK(c0.at(pack1(h)).is_one());
    CHECK(chi_n(D, 1) == D.chi);
}

TEST_CASE("chi_[n](g) = q^n prod w(g, g^i, g)") {
    for (unsigned n : {2u, 3u}) {
        QuasiYDDatum D = basic_datum(n);
        const DualQuasiBialgebra& A = *D.H;
        for (unsigned k = 0; k < 2 * n; ++k) {
            CycNum expect = D.q.pow(k);
            for (unsigned i = 0; i < k; ++i)
                expect *= A.omega.at(pack3(D.g, A.H.basis_power(D.g, i), D.g));
            CHECK(chi_n(D, k).at(pack1(D.g)) == expect);
        }
    }
}

TEST_CASE("quantum line over (kC_2, w_zeta) has N = 4") {
    QuasiYDDatum D = basic_datum(2);
    QuantumLine R = build_quantum_line(D);
    CHECK(R.N == 4);
    CHECK(R.datum.q.multiplicative_order() == 4u);
    Report rep = verify_yd_bialgebra(R);
    INFO(rep.to_text_stable());
    CHECK(rep.ok());
}

TEST_CASE("trivial datum collapses the quantum line to the base field") {
    QuasiYDDatum D = datum_for_cyclic(3, 1, 0, CycNum::one(9));
    QuantumLine R = build_quantum_line(D);
    CHECK(R.N == 1);
    CHECK(verify_yd_bialgebra(R).ok());
}

TEST_CASE("dimension p^2 quantum lines over kC_p") {
    // ((kC_p, w_zeta^i), c^z, chi_j) with chi_j(c^z) of order p^2
    unsigned p = 3, i = 1, z = 1, j = 1;
    CycNum u = CycNum::root_of_unity(p * p, static_cast<long>(p) * j + i * z);
    QuasiYDDatum D = datum_for_cyclic(p, i, z, u);
    REQUIRE(D.N == p * p);
    QuantumLine R = build_quantum_line(D);
    CHECK(R.N == p * p);
    CHECK(verify_yd_bialgebra(R).ok());
}

TEST_CASE("antipode scalars and convolution axioms") {
    QuasiYDDatum D = basic_datum(2);
    QuantumLine R = build_quantum_line(D);
    LinearMap S = antipode(R);
    CHECK(S.apply_basis(0) == TensorElement::basis(1, pack1(0)));
    TensorElement s1(1);
    s1.add(pack1(1), -CycNum::one(4));
    CHECK(S.apply_basis(1) == s1);
    TensorElement s2(1);
    s2.add(pack1(2), D.q);
    CHECK(S.apply_basis(2) == s2);
    // sum_i beta(i,n) S(x^[i]) x^[n-i] = delta_{n,0} x^[0], N up to 9
    for (unsigned p : {2u, 3u}) {
        QuantumLine Rp = build_quantum_line(basic_datum(p));
        for (Idx n = 0; n < Rp.N; ++n) {
            TensorElement acc(1);
            for (const auto& [t, c] : Rp.delta_r(n)) {
                Idx i = tuple_slot(t, 0);
                acc.add_scaled(Rp.mul_r(i, tuple_slot(t, 1)), c * Rp.antipode_scalar[i]);
            }
            TensorElement expect(1);
            expect.add(pack1(0), Rp.eps_r(n));
            expect.prune();
            CHECK(acc == expect);
        }
    }
}

TEST_CASE("beta times the inverse reassociator product is the q-binomial") {
    for (unsigned n : {2u, 3u}) {
        QuantumLine R = build_quantum_line(basic_datum(n));
        const DualQuasiBialgebra& A = *R.datum.H;
        for (unsigned k = 0; k < R.N; ++k)
            for (unsigned i = 0; i <= k; ++i) {
                CycNum lhs = R.beta[k][i];
                for (unsigned j = 0; j < i; ++j)
                    lhs *= A.omega_inv.at(pack3(R.datum.g, R.g_power[j], R.g_power[k - i]));
                CHECK(lhs == q_binom(k, i, R.datum.q));
            }
    }
}

TEST_CASE("negative control: corrupted beta(1,2) breaks compatibility at (x[1], x[1])") {
    QuantumLine R = build_quantum_line(basic_datum(2));
    R.beta[2][1] *= R.datum.q;  // corrupt one coproduct coefficient
    Report rep = verify_yd_bialgebra(R);
    CHECK(!rep.ok());
    const CheckItem* item = rep.find("product-coproduct compatibility via Omega");
    REQUIRE(item != nullptr);
    CHECK(!item->pass);
    CHECK(item->counterexample == "(x[1], x[1])");
}

TEST_CASE("middle-four interchange on low tensor degrees") {
    // Omega((v (x) 1) (x) (v^[i] (x) v^[n-1-i]))
    //   = w(g, g^i, g^{n-1-i}) (v (x) v^[i]) (x) (1 (x) v^[n-1-i])
    // Omega((1 (x) v) (x) (v^[i] (x) v^[n-1-i]))
    //   = chi_[i](g) w(g, g^i, g^{n-1-i}) w^{-1}(g^i, g, g^{n-1-i})
    //     (1 (x) v^[i]) (x) (v (x) v^[n-1-i])
    QuantumLine R = build_quantum_line(basic_datum(2));
    const DualQuasiBialgebra& A = *R.datum.H;
    YetterDrinfeldModule M = R.module();
    LinearMap Om = omega_op(M, M, M, M);
    unsigned N = R.N;
    auto flat = [&](Idx u, Idx v, Idx w, Idx z) { return ((u * N + v) * N + w) * N + z; };
    for (unsigned n = 2; n < N; ++n) {
        for (unsigned i = 0; i + 1 <= n - 1; ++i) {
            unsigned j = n - 1 - i;
            {
                TensorElement expect(1);
                expect.add(pack1(flat(1, i, 0, j)),
                           A.omega.at(pack3(R.datum.g, R.g_power[i], R.g_power[j])));
                TensorElement got(1);
                for (const auto& [row, c] : Om.col[flat(1, 0, i, j)]) got.add(pack1(row), c);
                CHECK(got == expect);
            }
            {
                CycNum coeff = R.chi_n[i].at(pack1(R.datum.g)) *
                               A.omega.at(pack3(R.datum.g, R.g_power[i], R.g_power[j])) *
                               A.omega_inv.at(pack3(R.g_power[i], R.datum.g, R.g_power[j]));
                TensorElement expect(1);
                expect.add(pack1(flat(0, i, 1, j)), coeff);
                TensorElement got(1);
                for (const auto& [row, c] : Om.col[flat(0, 1, i, j)]) got.add(pack1(row), c);
                CHECK(got == expect);
            }
        }
    }
}

TEST_CASE("truncated tensor algebra and the quotient") {
    for (unsigned n : {2u, 3u}) {
        QuasiYDDatum D = basic_datum(n);
        QuantumLine R = build_quantum_line(D);
        TruncatedTensorAlgebra T = truncated_tensor_algebra(D, R.N + 3);
        SUBCASE("mixed coproduct terms of v^[N] vanish") {
            for (unsigned i = 1; i < R.N; ++i) CHECK(T.beta[R.N][i].is_zero());
            CHECK(T.beta[R.N][0].is_one());
            CHECK(T.beta[R.N][R.N].is_one());
        }
        SUBCASE("product coefficients match the displayed formula") {
            const DualQuasiBialgebra& A = *D.H;
            for (unsigned a = 0; a + 2 < T.max_degree; ++a)
                for (unsigned b = 0; a + b < T.max_degree; ++b) {
                    CycNum expect = CycNum::one(A.H.conductor);
                    for (unsigned i = 0; i < a; ++i)
                        expect *= A.omega_inv.at(pack3(D.g, T.g_power[i], T.g_power[b]));
                    CHECK(T.prod_coeff[a][b] == expect);
                }
            // v v^[k] = v^[k+1] with coefficient 1
            for (unsigned k = 0; k + 1 < T.max_degree; ++k)
                CHECK(T.prod_coeff[1][k].is_one());
        }
        SUBCASE("quotient check passes at D = N + 3") {
            Report rep = quotient_check(T, R);
            INFO(rep.to_text_stable());
            CHECK(rep.ok());
        }
    }
}

TEST_CASE("transport along a morphism of quasi-YD data") {
    SUBCASE("identity morphism") {
        QuasiYDDatum D = basic_datum(2);
        QuantumLine R = build_quantum_line(D);
        QydMorphism f{D, D, DqbMorphism{D.H, D.H, LinearMap::identity(2)}};
        Report rep = transport_intertwining(f, R, R);
        CHECK(rep.ok());
    }
    SUBCASE("projection (kC_4, d^2 v) -> (kC_2, w_zeta)") {
        unsigned n = 2;
        DqbMorphism phi = projection_phi(n, 1, false);
        QuasiYDDatum D = basic_datum(n);
        QuasiYDDatum P = pullback_datum(phi, D, 1);
        QuantumLine R_src = build_quantum_line(P);
        QuantumLine R_tgt = build_quantum_line(D, "y");
        REQUIRE(R_src.N == R_tgt.N);
        QydMorphism f{P, D, phi};
        CHECK(check_qyd_morphism(f).ok());
        Report rep = transport_intertwining(f, R_src, R_tgt);
        INFO(rep.to_text_stable());
        CHECK(rep.ok());
        // xi_[n] . phi = chi_[n] and q is preserved
        CHECK(P.q == D.q);
        for (unsigned k = 0; k < R_src.N; ++k)
            CHECK(pullback_functional(phi.matrix, R_tgt.chi_n[k], 4, 4) == R_src.chi_n[k]);
    }
}
