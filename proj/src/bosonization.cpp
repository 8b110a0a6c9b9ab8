#include "quasiline/bosonization.hpp"

#include <random>
#include <sstream>

namespace quasiline {

namespace {

// w^{+-1}(a (x) b (x) product) extended over a sparse H-product.
CycNum omega_at_product(const Functional& w, Idx a, Idx b,
                        const std::vector<std::pair<Idx, CycNum>>& prod) {
    CycNum acc;
    for (const auto& [u, cu] : prod) {
        const CycNum& f = w.at(pack3(a, b, u));
        if (!f.is_zero()) acc += cu * f;
    }
    return acc;
}

}  // namespace

Bosonization bosonize(const QuantumLine& R, DqbPtr Hp, bool verify, unsigned jobs) {
    const DualQuasiBialgebra& A = *Hp;
    const StructuredCoalgebra& H = A.H;
    if (R.datum.H != Hp)
        throw std::invalid_argument("bosonize: R is not a YD bialgebra over this H");
    unsigned nR = R.N, nH = H.dim;
    unsigned dim = nR * nH;
    if (dim > kMaxDim) throw std::domain_error("bosonize: dimension exceeds the index packing");
    H.precompute_delta(6);

    StructuredCoalgebra BC;
    BC.dim = dim;
    BC.conductor = H.conductor;
    BC.labels.resize(dim);
    BC.delta.resize(dim);
    BC.counit.assign(dim, CycNum::zero(H.conductor));
    BC.mul.assign(static_cast<size_t>(dim) * dim, {});
    BC.unit.assign(dim, CycNum::zero(H.conductor));
    auto idx = [&](Idx a, Idx h) { return a * nH + h; };
    for (Idx a = 0; a < nR; ++a)
        for (Idx h = 0; h < nH; ++h) {
            BC.labels[idx(a, h)] = R.label(a) + "#" + H.labels[h];
            BC.counit[idx(a, h)] = R.eps_r(a) * H.counit[h];
        }
    for (Idx h = 0; h < nH; ++h)
        if (!H.unit[h].is_zero()) BC.unit[idx(0, h)] = H.unit[h];

    // Delta_B(x^[n]#h) = sum_i beta(i,n) w^{-1}(g^i (x) g^{n-i} (x) h1)
    //                    (x^[i] # g^{n-i} h2) (x) (x^[n-i] # h3)
    for (Idx n = 0; n < nR; ++n) {
        for (Idx h = 0; h < nH; ++h) {
            TensorElement acc(2);
            for (Idx i = 0; i <= n; ++i) {
                const CycNum& beta = R.beta[n][i];
                if (beta.is_zero()) continue;
                Idx gi = R.g_power[i], gni = R.g_power[n - i];
                for (const auto& [t, ch] : H.delta_parts(h, 3)) {
                    const CycNum& f = A.omega_inv.at(pack3(gi, gni, tuple_slot(t, 0)));
                    if (f.is_zero()) continue;
                    CycNum base = beta * ch * f;
                    for (const auto& [u, cu] : H.mul_at(gni, tuple_slot(t, 1)))
                        acc.add(pack2(idx(i, u), idx(n - i, tuple_slot(t, 2))), base * cu);
                }
            }
            acc.prune();
            for (const auto& [t, c] : acc)
                BC.delta[idx(n, h)].push_back(
                    DeltaTerm{tuple_slot(t, 0), tuple_slot(t, 1), c});
        }
    }

    // m_B[(x^[a]#h)(x^[b]#k)] =
    //   w^{-1}(g^a, h1, g^b k1) w(h2, g^b, k2) chi_[b](h3)
    //   w^{-1}(g^b, h4, k3) w(g^a, g^b, h5 k4) (x^[a] x^[b]) # h6 k5
    for (Idx a = 0; a < nR; ++a) {
        for (Idx h = 0; h < nH; ++h) {
            for (Idx b = 0; b < nR; ++b) {
                Idx ga = R.g_power[a], gb = R.g_power[b];
                TensorElement rprod = R.mul_r(a, b);
                for (Idx k = 0; k < nH; ++k) {
                    TensorElement acc(1);
                    if (!rprod.is_zero()) {
                        for (const auto& [th, ch] : H.delta_parts(h, 6)) {
                            Idx h1 = tuple_slot(th, 0), h2 = tuple_slot(th, 1),
                                h3 = tuple_slot(th, 2), h4 = tuple_slot(th, 3),
                                h5 = tuple_slot(th, 4), h6 = tuple_slot(th, 5);
                            const CycNum& s = R.chi_n[b].at(pack1(h3));
                            if (s.is_zero()) continue;
                            for (const auto& [tk, ck] : H.delta_parts(k, 5)) {
                                Idx k1 = tuple_slot(tk, 0), k2 = tuple_slot(tk, 1),
                                    k3 = tuple_slot(tk, 2), k4 = tuple_slot(tk, 3),
                                    k5 = tuple_slot(tk, 4);
                                CycNum f1 = omega_at_product(A.omega_inv, ga, h1,
                                                             H.mul_at(gb, k1));
                                if (f1.is_zero()) continue;
                                const CycNum& f2 = A.omega.at(pack3(h2, gb, k2));
                                if (f2.is_zero()) continue;
                                const CycNum& f3 = A.omega_inv.at(pack3(gb, h4, k3));
                                if (f3.is_zero()) continue;
                                CycNum f4 =
                                    omega_at_product(A.omega, ga, gb, H.mul_at(h5, k4));
                                if (f4.is_zero()) continue;
                                CycNum base = ch * ck * s * f1 * f2 * f3 * f4;
                                for (const auto& [tr, cr] : rprod)
                                    for (const auto& [u, cu] : H.mul_at(h6, k5))
                                        acc.add(pack1(idx(tuple_slot(tr, 0), u)),
                                                base * cr * cu);
                            }
                        }
                    }
                    acc.prune();
                    auto& cell = BC.mul[static_cast<size_t>(idx(a, h)) * dim + idx(b, k)];
                    for (const auto& [t, c] : acc)
                        cell.push_back({tuple_slot(t, 0), c});
                }
            }
        }
    }

    // w_B = eps_R (x) eps_R (x) eps_R times w_H on the group part; its
    // convolution inverse is the same shape over w_H^{-1}.
    Functional omega_b(3, dim), omega_b_inv(3, dim);
    for (const auto& [t, v] : A.omega.values())
        omega_b.set(pack3(idx(0, tuple_slot(t, 0)), idx(0, tuple_slot(t, 1)),
                          idx(0, tuple_slot(t, 2))),
                    v);
    for (const auto& [t, v] : A.omega_inv.values())
        omega_b_inv.set(pack3(idx(0, tuple_slot(t, 0)), idx(0, tuple_slot(t, 1)),
                              idx(0, tuple_slot(t, 2))),
                        v);

    Bosonization out{R, Hp, nullptr, {}, {}};
    out.B = make_dqb(std::move(BC), std::move(omega_b), std::move(omega_b_inv), verify, jobs);

    LinearMap pi_m = LinearMap::zero(nH, dim);
    for (Idx a = 0; a < nR; ++a) {
        CycNum e = R.eps_r(a);
        if (e.is_zero()) continue;
        for (Idx h = 0; h < nH; ++h) pi_m.set(h, idx(a, h), e);
    }
    LinearMap sigma_m = LinearMap::zero(dim, nH);
    for (Idx h = 0; h < nH; ++h) sigma_m.set(idx(0, h), h, CycNum::one(H.conductor));
    out.pi = DqbMorphism{out.B, Hp, std::move(pi_m)};
    out.sigma = DqbMorphism{Hp, out.B, std::move(sigma_m)};
    if (verify) {
        Report rp = check_morphism(out.pi);
        if (!rp.ok()) throw AxiomFailure(rp);
        Report rs = check_morphism(out.sigma);
        if (!rs.ok()) throw AxiomFailure(rs);
        LinearMap comp = out.pi.matrix.compose(out.sigma.matrix);
        if (!(comp == LinearMap::identity(nH)))
            throw std::logic_error("bosonize: pi . sigma != id");
    }
    return out;
}

Report pi_id_pi_check(const Bosonization& Bz) {
    Report rep;
    rep.title = "pi (x) id (x) pi identity";
    const StructuredCoalgebra& BC = Bz.B->H;
    const StructuredCoalgebra& H = Bz.H->H;
    BC.precompute_delta(3);
    H.precompute_delta(3);
    auto& item = rep.add("pi((r#h)_1) (x) (r#h)_2 (x) pi((r#h)_3)");
    for (Idx b = 0; b < BC.dim && item.pass; ++b) {
        TensorElement lhs(3);  // H (x) B (x) H
        for (const auto& [t, c] : BC.delta_parts(b, 3)) {
            for (const auto& [t1, c1] : Bz.pi.image(tuple_slot(t, 0)))
                for (const auto& [t3, c3] : Bz.pi.image(tuple_slot(t, 2)))
                    lhs.add(pack3(tuple_slot(t1, 0), tuple_slot(t, 1), tuple_slot(t3, 0)),
                            c * c1 * c3);
        }
        TensorElement rhs(3);
        Idx a = Bz.degree(b), h = Bz.h_part(b);
        Idx ga = Bz.R.g_power[a];
        for (const auto& [t, c] : H.delta_parts(h, 3)) {
            for (const auto& [u, cu] : H.mul_at(ga, tuple_slot(t, 0)))
                rhs.add(pack3(u, Bz.index(a, tuple_slot(t, 1)), tuple_slot(t, 2)), c * cu);
        }
        if (!(lhs == rhs)) {
            item.pass = false;
            item.counterexample = BC.label_tuple(pack1(b), 1);
        }
    }
    return rep;
}

Report filtration_check(const Bosonization& Bz) {
    Report rep;
    rep.title = "coradical filtration bound";
    const StructuredCoalgebra& BC = Bz.B->H;
    {
        auto& item = rep.add("Delta_B(B_[n]) within sum B_[i] (x) B_[n-i]");
        for (Idx b = 0; b < BC.dim && item.pass; ++b) {
            Idx a = Bz.degree(b);
            for (const auto& dt : BC.delta[b]) {
                if (Bz.degree(dt.j) + Bz.degree(dt.k) > a) {
                    item.pass = false;
                    item.counterexample = BC.label_tuple(pack1(b), 1) + " -> " +
                                          BC.label_tuple(pack2(dt.j, dt.k), 2);
                    break;
                }
            }
        }
    }
    {
        auto& item = rep.add("1_R#h grouplike for grouplike h");
        const StructuredCoalgebra& H = Bz.H->H;
        for (Idx h = 0; h < H.dim && item.pass; ++h) {
            if (!H.is_grouplike(h)) continue;
            if (!BC.is_grouplike(Bz.index(0, h))) {
                item.pass = false;
                item.counterexample = BC.label_tuple(pack1(Bz.index(0, h)), 1);
            }
        }
    }
    return rep;
}

Report boson_datum_conditions(const Bosonization& Bz, Idx c_idx, const Functional& chi_B) {
    Report rep;
    rep.title = "quasi-YD datum consequences on R#H";
    const DualQuasiBialgebra& A = *Bz.H;
    const StructuredCoalgebra& H = A.H;
    const QuantumLine& R = Bz.R;
    H.precompute_delta(3);
    auto chiB = [&](Idx a, Idx h) { return chi_B.at(pack1(Bz.index(a, h))); };
    auto chiB_unit = [&](Idx a) {  // chi_B(x^[a] # 1_H)
        CycNum acc;
        for (Idx u = 0; u < H.dim; ++u)
            if (!H.unit[u].is_zero()) acc += H.unit[u] * chiB(a, u);
        return acc;
    };
    {
        // chi_B(r#h) = w^{-1}(r_{-2},h1,c) chi_B(1#h2) w(r_{-1},c,h3) chi_B(r_0#1)
        auto& item = rep.add("chi factorization through the group part");
        for (Idx a = 0; a < R.N && item.pass; ++a) {
            Idx ga = R.g_power[a];
            for (Idx h = 0; h < H.dim && item.pass; ++h) {
                CycNum rhs;
                for (const auto& [t, c] : H.delta_parts(h, 3)) {
                    const CycNum& f1 = A.omega_inv.at(pack3(ga, tuple_slot(t, 0), c_idx));
                    if (f1.is_zero()) continue;
                    CycNum x1 = chiB(0, tuple_slot(t, 1));
                    if (x1.is_zero()) continue;
                    const CycNum& f2 = A.omega.at(pack3(ga, c_idx, tuple_slot(t, 2)));
                    if (f2.is_zero()) continue;
                    rhs += c * f1 * x1 * f2 * chiB_unit(a);
                }
                if (!(chiB(a, h) == rhs)) {
                    item.pass = false;
                    item.counterexample = Bz.B->H.label_tuple(pack1(Bz.index(a, h)), 1);
                }
            }
        }
    }
    {
        // chi_B(r s # 1) = w^{-1}(r_{-1},s_{-1},c) chi_B(s_0#1) chi_B(r_0#1)
        auto& item = rep.add("chi on products of R");
        for (Idx a = 0; a < R.N && item.pass; ++a)
            for (Idx b = 0; b < R.N && item.pass; ++b) {
                CycNum lhs;
                for (const auto& [t, c] : R.mul_r(a, b))
                    lhs += c * chiB_unit(tuple_slot(t, 0));
                CycNum rhs = A.omega_inv.at(pack3(R.g_power[a], R.g_power[b], c_idx)) *
                             chiB_unit(b) * chiB_unit(a);
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = "(" + R.label(a) + ", " + R.label(b) + ")";
                }
            }
    }
    {
        // chi_B(r#h1) c h2 = (r_{-1} h1) chi_B(r_0#h2) c
        auto& item = rep.add("commutation with the grouplike");
        for (Idx a = 0; a < R.N && item.pass; ++a) {
            Idx ga = R.g_power[a];
            for (Idx h = 0; h < H.dim && item.pass; ++h) {
                TensorElement lhs(1), rhs(1);
                for (const auto& dt : H.delta[h]) {
                    CycNum x1 = chiB(a, dt.j);
                    if (!x1.is_zero()) {
                        for (const auto& [u, cu] : H.mul_at(c_idx, dt.k))
                            lhs.add(pack1(u), dt.c * x1 * cu);
                    }
                    CycNum x2 = chiB(a, dt.k);
                    if (!x2.is_zero()) {
                        for (const auto& [u, cu] : H.mul_at(ga, dt.j))
                            for (const auto& [w, cw] : H.mul_at(u, c_idx))
                                rhs.add(pack1(w), dt.c * x2 * cu * cw);
                    }
                }
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = Bz.B->H.label_tuple(pack1(Bz.index(a, h)), 1);
                }
            }
        }
    }
    {
        // chi_B(r^1 # r^2_{-1}) c |> r^2_0
        //   = w^{-1}(r^1_{-1}, r^2_{-1}, c) r^1_0 chi_B(r^2_0 # 1)
        auto& item = rep.add("comultiplication consequence");
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            TensorElement lhs(1), rhs(1);
            for (const auto& [t, c] : R.delta_r(n)) {
                Idx i = tuple_slot(t, 0), j = tuple_slot(t, 1);
                CycNum x1 = chiB(i, R.g_power[j]);
                if (!x1.is_zero()) {
                    const CycNum& act = R.chi_n[j].at(pack1(c_idx));
                    if (!act.is_zero()) lhs.add(pack1(j), c * x1 * act);
                }
                const CycNum& f = A.omega_inv.at(pack3(R.g_power[i], R.g_power[j], c_idx));
                if (!f.is_zero()) {
                    CycNum x2 = chiB_unit(j);
                    if (!x2.is_zero()) rhs.add(pack1(i), c * f * x2);
                }
            }
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
        }
    }
    {
        auto& item = rep.add("induced datum on H");
        Functional chi_sigma = pullback_functional(Bz.sigma.matrix, chi_B, H.dim, H.conductor);
        try {
            (void)make_datum(Bz.H, c_idx, chi_sigma, true);
        } catch (const std::exception& e) {
            item.pass = false;
            item.counterexample = e.what();
        }
    }
    return rep;
}

BosonDatumClassification classify_boson_data(const Bosonization& Bz) {
    const QuantumLine& R = Bz.R;
    const StructuredCoalgebra& H = Bz.H->H;
    unsigned n = H.dim;
    if (!H.is_grouplike_basis() || R.datum.g != 1 % n)
        throw std::domain_error("classify_boson_data: unsupported base datum");
    for (unsigned t = 0; t < n; ++t)
        if (!(R.datum.chi.at(pack1(t)) == R.datum.q.pow(t)))
            throw std::domain_error("classify_boson_data: base chi is not chi(c^t) = q^t");
    unsigned n2 = n * n;
    BosonDatumClassification out;
    for (unsigned w = 0; w < n; ++w) {
        Idx d = w;  // c^w
        if (H.mul_at(R.datum.g, d)[0].first == d) {
            // d = g_H d happens only for g_H = 1; the source offers no
            // classification for it, so report rather than decide.
            out.outside_classification.push_back(w);
            continue;
        }
        // eps_R-factored candidates: chi_B(x^[a]#c^t) = delta_{a0} u_t with
        // u_0 = 1 and u_t a root of unity in mu_{n^2} or zero.
        std::vector<unsigned> choice(n, 0);  // exponent, or n2 for "zero"
        auto build = [&]() {
            Functional chi_b(1, Bz.B->H.dim);
            for (unsigned t = 0; t < n; ++t) {
                if (choice[t] == n2) continue;
                chi_b.set(pack1(Bz.index(0, t)),
                          CycNum::root_of_unity(n2, static_cast<long>(choice[t])));
            }
            return chi_b;
        };
        while (true) {
            Functional cand = build();
            bool ok = true;
            try {
                QuasiYDDatum D = make_datum(Bz.B, Bz.index(0, d), cand, true);
                (void)D;
            } catch (const std::exception&) {
                ok = false;
            }
            if (ok) {
                // consequences: chi_B(1#g_H) chi_H(d) = 1 and d g_H = g_H d
                CycNum prod = cand.at(pack1(Bz.index(0, R.datum.g))) *
                              R.datum.chi.at(pack1(d));
                if (!prod.is_one())
                    throw std::logic_error("classify: chi_B(1#g_H) chi_H(d) != 1");
                if (H.mul_at(d, R.datum.g)[0].first != H.mul_at(R.datum.g, d)[0].first)
                    throw std::logic_error("classify: d g_H != g_H d");
                out.candidates.push_back({w, std::move(cand)});
            }
            // odometer over u_1..u_{n-1} in {q^0..q^{n2-1}, 0}
            unsigned t = 1;
            while (t < n && ++choice[t] > n2) choice[t++] = 0;
            if (t == n) break;
        }
    }
    return out;
}

IteratedExample build_iterated_example(unsigned n, unsigned jobs) {
    if (n < 2 || n % 2 != 0) throw std::domain_error("build_iterated_example: n must be even");
    unsigned m = n / 2, n2 = n * n;
    CycNum q = CycNum::root_of_unity(n2, 1);

    QuasiYDDatum D = datum_for_cyclic(n, 1, 1, q);  // chi(c^t) = q^t on (kC_n, w_zeta)
    QuantumLine R = build_quantum_line(D);
    Bosonization B = bosonize(R, D.H, true, jobs);

    IteratedExample ex{std::move(B), {}, CycNum(), {}, {}, {}};
    ex.checks.title = "iterated bosonization S#(R#kC_n)";
    {
        auto& item = ex.checks.add("dim(R#kC_n) = n^3");
        if (ex.B.B->dim() != n * n * n) item.pass = false;
    }
    {
        // chi_[a](c^m) = q^{m a'} for 0 <= a <= n^2 - 1
        auto& item = ex.checks.add("chi_[a](c^m) = q^(m a mod n)");
        for (unsigned a = 0; a < n2 && item.pass; ++a) {
            CycNum lhs = ex.B.R.chi_n[a].at(pack1(m % n));
            CycNum rhs = q.pow(static_cast<long>(m) * (a % n));
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = "a = " + std::to_string(a);
            }
        }
    }
    // chi~(c^t) = q^{-mt}; datum for c^m since chi~(c)^n = zeta^m
    QuasiYDDatum Dt = datum_for_cyclic(n, 1, m, q.pow(-(long)m));
    {
        auto& item = ex.checks.add("chi~(c)^n = zeta^m");
        CycNum zeta_m = CycNum::root_of_unity(n2, static_cast<long>(n) * m);
        if (!(Dt.chi.at(pack1(1)).pow(n) == zeta_m)) item.pass = false;
    }
    ex.datum_B = pullback_datum(ex.B.pi, Dt, ex.B.index(0, m));
    {
        auto& item = ex.checks.add("datum on B verified for iota");
        Report rep = verify_datum(ex.datum_B);
        if (!rep.ok()) {
            item.pass = false;
            item.counterexample = rep.to_text_stable();
        }
    }
    ex.iota = ex.datum_B.q;
    {
        auto& item = ex.checks.add("iota = q^(-m^2) of multiplicative order 4");
        if (!(ex.iota == q.pow(-static_cast<long>(m) * m)) ||
            ex.iota.multiplicative_order() != 4u) {
            item.pass = false;
            item.counterexample = ex.iota.to_string();
        }
    }
    ex.S = build_quantum_line(ex.datum_B, "y");
    ex.SB = bosonize(ex.S, ex.datum_B.H, false, jobs);
    {
        auto& item = ex.checks.add("dim(S#B) = 4n^3");
        if (ex.SB.B->dim() != 4 * n * n * n) item.pass = false;
    }
    {
        Report rep = verify_dqb(*ex.SB.B, jobs);
        for (auto& it : rep.items) {
            it.name = "S#B: " + it.name;
            ex.checks.items.push_back(std::move(it));
        }
    }
    {
        auto& item = ex.checks.add("S#B: pi and sigma are morphisms");
        Report rp = check_morphism(ex.SB.pi);
        Report rs = check_morphism(ex.SB.sigma);
        if (!rp.ok() || !rs.ok()) item.pass = false;
    }
    return ex;
}

GaugeTrivialization gauge_trivialize_A(unsigned n, unsigned jobs) {
    if (n < 2) throw std::domain_error("gauge_trivialize_A: n >= 2 required");
    unsigned n2 = n * n;
    CycNum q = CycNum::root_of_unity(n2, 1);
    GaugeTrivialization out{{}, {}};
    out.checks.title = "gauge trivialization of A = R#kC_(n^2)";

    DqbMorphism phi = projection_phi(n, 1);
    QuasiYDDatum D = datum_for_cyclic(n, 1, 1, q);
    // transport the datum up to (kC_{n^2}, w_zeta . phi^3): chi . phi at C
    QuasiYDDatum D_up = pullback_datum(phi, D, 1);
    QuantumLine R_up = build_quantum_line(D_up);
    out.A = bosonize(R_up, D_up.H, true, jobs);
    {
        auto& item = out.checks.add("dim A = n^4");
        if (out.A.B->dim() != n2 * n2) item.pass = false;
    }
    // mu = v^{-1} . (pi (x) pi); its inverse is v . (pi (x) pi).
    Functional v = v_gauge(n, 1);
    const StructuredCoalgebra& Hup = D_up.H->H;
    Functional v_inv = conv_inverse(v, Hup);
    const StructuredCoalgebra& AC = out.A.B->H;
    Functional mu = pullback_functional(out.A.pi.matrix, v_inv, AC.dim, AC.conductor);
    Functional mu_inv = pullback_functional(out.A.pi.matrix, v, AC.dim, AC.conductor);
    GaugeTransformation gauge = make_gauge(std::move(mu), std::move(mu_inv), AC);
    {
        auto& item = out.checks.add("omega_A^mu = eps^3");
        Functional tw = twisted_omega(*out.A.B, gauge);
        if (!reassociator_is_trivial(tw, AC)) item.pass = false;
    }
    {
        // X = x^[1]#1 is (1_A, Gamma)-primitive for Gamma = 1#C
        auto& item = out.checks.add("skew-primitive: Delta(X) = X(x)1 + Gamma(x)X");
        Idx X = out.A.index(1, 0), Gamma = out.A.index(0, 1), one = out.A.index(0, 0);
        TensorElement expect(2);
        expect.add(pack2(X, one), CycNum::one(AC.conductor));
        expect.add(pack2(Gamma, X), CycNum::one(AC.conductor));
        TensorElement got(2);
        for (const auto& dt : AC.delta[X]) got.add(pack2(dt.j, dt.k), dt.c);
        if (!(got == expect)) item.pass = false;
    }
    {
        auto& item = out.checks.add("pi . sigma = id on the group part");
        if (!(out.A.pi.matrix.compose(out.A.sigma.matrix) ==
              LinearMap::identity(Hup.dim)))
            item.pass = false;
    }
    {
        // pulled back along sigma: v^{-1} itself trivializes the base
        auto& item = out.checks.add("pullback along sigma trivializes (kC_(n^2), d^2 v)");
        GaugeTransformation pulled = pullback_gauge(out.A.sigma, gauge, nullptr);
        Functional tw = twisted_omega(*D_up.H, pulled);
        if (!reassociator_is_trivial(tw, Hup)) item.pass = false;
    }
    {
        // witness-level: no shipped gauge trivializes B = R#kC_n
        auto& item = out.checks.add("witness gauges do not trivialize B = R#kC_n");
        QuantumLine R = build_quantum_line(D);
        Bosonization B = bosonize(R, D.H, false, jobs);
        const StructuredCoalgebra& BC = B.B->H;
        std::mt19937_64 rng(2026);
        std::uniform_int_distribution<long> edist(0, n2 - 1);
        for (int trial = 0; trial < 8 && item.pass; ++trial) {
            Functional g(2, n);
            for (Idx a = 0; a < n; ++a)
                for (Idx b = 0; b < n; ++b)
                    g.set(pack2(a, b), (a == 0 || b == 0)
                                           ? CycNum::one(n2)
                                           : CycNum::root_of_unity(n2, edist(rng)));
            GaugeTransformation gamma = make_gauge(g, D.H->H);
            GaugeTransformation onB =
                make_gauge(pullback_functional(B.pi.matrix, gamma.v, BC.dim, BC.conductor),
                           pullback_functional(B.pi.matrix, gamma.v_inv, BC.dim, BC.conductor),
                           BC);
            if (reassociator_is_trivial(twisted_omega(*B.B, onB), BC)) {
                item.pass = false;
                item.counterexample = "trial " + std::to_string(trial);
            }
        }
    }
    return out;
}

IsoConditionResult boson_iso_necessary_conditions(unsigned p, unsigned i, unsigned z, unsigned j,
                                                  unsigned i2, unsigned w, unsigned k) {
    for (unsigned d = 2; d < p; ++d)
        if (p % d == 0) throw std::domain_error("boson_iso_necessary_conditions: p not prime");
    IsoConditionResult r;
    r.same_i = (i == i2);
    // chi_j(c^z) = chi_k(c^w): p^2 | p(jz - kw) + i(z^2 - w^2)
    long lhs = static_cast<long>(p) * (static_cast<long>(j) * z - static_cast<long>(k) * w) +
               static_cast<long>(i) * (static_cast<long>(z) * z - static_cast<long>(w) * w);
    long mod = static_cast<long>(p) * p;
    r.chi_values_equal = ((lhs % mod) + mod) % mod == 0;
    r.possibly_isomorphic = r.same_i && r.chi_values_equal;
    return r;
}

unsigned count_distinct_boson_classes_fixed_z(unsigned p, unsigned z) {
    // data (i, z, j), i in 1..p-1, j in 0..p-1; count pairwise-distinct ones
    std::vector<std::pair<unsigned, unsigned>> data;
    for (unsigned i = 1; i < p; ++i)
        for (unsigned j = 0; j < p; ++j) data.push_back({i, j});
    unsigned distinct = 0;
    for (size_t a = 0; a < data.size(); ++a) {
        bool duplicate = false;
        for (size_t b = 0; b < a && !duplicate; ++b) {
            auto r = boson_iso_necessary_conditions(p, data[a].first, z, data[a].second,
                                                    data[b].first, z, data[b].second);
            if (r.possibly_isomorphic) duplicate = true;
        }
        if (!duplicate) ++distinct;
    }
    return distinct;
}

Report transport(const QydMorphism& f, const QuantumLine& R_source, const QuantumLine& R_target,
                 unsigned jobs) {
    Report rep = transport_intertwining(f, R_source, R_target);
    {
        auto& item = rep.add("f (x) phi is a morphism of the bosonizations");
        Bosonization Bs = bosonize(R_source, f.phi.source, false, jobs);
        Bosonization Bt = bosonize(R_target, f.phi.target, false, jobs);
        LinearMap big = LinearMap::identity(R_source.N).tensor(f.phi.matrix);
        DqbMorphism whole{Bs.B, Bt.B, std::move(big)};
        Report sub = check_morphism(whole);
        if (!sub.ok()) {
            item.pass = false;
            item.counterexample = sub.to_text_stable();
        }
    }
    return rep;
}

}  // namespace quasiline
