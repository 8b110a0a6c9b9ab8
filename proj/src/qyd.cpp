#include "quasiline/qyd.hpp"

#include <numeric>
#include <sstream>

namespace quasiline {

namespace {

// chi(hl) for a basis pair, the right side of the product rule.
CycNum chi_prod_rhs(const DualQuasiBialgebra& A, Idx g, const Functional& chi, Idx h, Idx l) {
    const StructuredCoalgebra& H = A.H;
    CycNum acc(Rational(0), H.conductor);
    const TensorElement& dh = H.delta_parts(h, 4);
    const TensorElement& dl = H.delta_parts(l, 4);
    for (const auto& [th, ch] : dh) {
        for (const auto& [tl, cl] : dl) {
            const CycNum& f1 = A.omega_inv.at(pack3(tuple_slot(th, 0), tuple_slot(tl, 0), g));
            if (f1.is_zero()) continue;
            const CycNum& x2 = chi.at(pack1(tuple_slot(tl, 1)));
            if (x2.is_zero()) continue;
            const CycNum& f2 = A.omega.at(pack3(tuple_slot(th, 1), g, tuple_slot(tl, 2)));
            if (f2.is_zero()) continue;
            const CycNum& x3 = chi.at(pack1(tuple_slot(th, 2)));
            if (x3.is_zero()) continue;
            const CycNum& f3 = A.omega_inv.at(pack3(g, tuple_slot(th, 3), tuple_slot(tl, 3)));
            if (f3.is_zero()) continue;
            acc += ch * cl * f1 * x2 * f2 * x3 * f3;
        }
    }
    return acc;
}

// g chi(h1) h2 and h1 chi(h2) g as elements of H.
std::pair<TensorElement, TensorElement> commutation_sides(const StructuredCoalgebra& H,
                                                          const Functional& chi, Idx g, Idx h) {
    TensorElement lhs(1), rhs(1);
    for (const auto& dt : H.delta[h]) {
        const CycNum& c1 = chi.at(pack1(dt.j));
        if (!c1.is_zero()) {
            for (const auto& [k, ck] : H.mul_at(g, dt.k)) lhs.add(pack1(k), dt.c * c1 * ck);
        }
        const CycNum& c2 = chi.at(pack1(dt.k));
        if (!c2.is_zero()) {
            for (const auto& [k, ck] : H.mul_at(dt.j, g)) rhs.add(pack1(k), dt.c * c2 * ck);
        }
    }
    return {std::move(lhs), std::move(rhs)};
}

}  // namespace

QuasiYDDatum make_datum(DqbPtr H, Idx g, Functional chi, bool verify) {
    QuasiYDDatum D;
    D.q = chi.at(pack1(g));
    D.H = std::move(H);
    D.g = g;
    D.chi = std::move(chi);
    if (D.q.is_zero()) throw std::domain_error("make_datum: chi(g) = 0");
    D.N = D.q.multiplicative_order();
    if (verify) {
        Report rep = verify_datum(D);
        if (!rep.ok()) throw AxiomFailure(rep);
    }
    return D;
}

Report verify_datum(const QuasiYDDatum& D) {
    Report rep;
    rep.title = "quasi-YD datum";
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    H.precompute_delta(4);

    {
        auto& item = rep.add("g grouplike");
        if (!H.is_grouplike(D.g)) {
            item.pass = false;
            item.counterexample = H.label_tuple(pack1(D.g), 1);
        }
    }
    {
        auto& item = rep.add("chi unitary");
        if (!D.chi.apply(H.unit_element()).is_one()) {
            item.pass = false;
            item.counterexample = "chi(1) != 1";
        }
    }
    {
        auto& item = rep.add("chi product rule");
        for (Idx h = 0; h < H.dim && item.pass; ++h) {
            for (Idx l = 0; l < H.dim && item.pass; ++l) {
                CycNum lhs(Rational(0), H.conductor);
                for (const auto& [k, ck] : H.mul_at(h, l)) {
                    const CycNum& xv = D.chi.at(pack1(k));
                    if (!xv.is_zero()) lhs += ck * xv;
                }
                if (!(lhs == chi_prod_rhs(A, D.g, D.chi, h, l))) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack2(h, l), 2);
                }
            }
        }
    }
    {
        auto& item = rep.add("g commutation");
        for (Idx h = 0; h < H.dim && item.pass; ++h) {
            auto [lhs, rhs] = commutation_sides(H, D.chi, D.g, h);
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(h), 1);
            }
        }
    }
    return rep;
}

QuasiYDDatum datum_for_cyclic(unsigned n, unsigned w, unsigned z, const CycNum& chi_of_c) {
    if (z >= n || w >= n) throw std::domain_error("datum_for_cyclic: require 0 <= w,z < n");
    CycNum zeta_wz = CycNum::root_of_unity(n * n, static_cast<long>(n) * w * z);
    if (!(chi_of_c.pow(n) == zeta_wz))
        throw std::domain_error("datum_for_cyclic: chi(c)^n != zeta^(wz)");
    DqbPtr A = group_dqb(cyclic_group(n), omega_zeta(n, w), false);
    Functional chi(1, n);
    for (unsigned t = 0; t < n; ++t) chi.set(pack1(t), chi_of_c.pow(t));
    return make_datum(std::move(A), z, std::move(chi), true);
}

std::vector<QuasiYDDatum> enumerate_data(unsigned n, unsigned w) {
    std::vector<QuasiYDDatum> out;
    unsigned n2 = n * n;
    for (unsigned z = 0; z < n; ++z) {
        // chi(c) = q^s needs q^{sn} = zeta^{wz} = q^{n w z}: s = wz (mod n).
        for (unsigned s = (w * z) % n; s < n2; s += n)
            out.push_back(datum_for_cyclic(n, w, z, CycNum::root_of_unity(n2, s)));
    }
    return out;
}

CycNum chi_power_formula(const QuasiYDDatum& D, Idx c, unsigned t) {
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    if (!H.is_grouplike(c)) throw std::domain_error("chi_power_formula: c must be grouplike");
    CycNum acc = D.chi.at(pack1(c)).pow(t);
    for (unsigned i = 0; i < t; ++i) {
        Idx ci = H.basis_power(c, i);
        acc *= A.omega_inv.at(pack3(ci, c, D.g));
        acc *= A.omega.at(pack3(ci, D.g, c));
        acc *= A.omega_inv.at(pack3(D.g, ci, c));
    }
    return acc;
}

CycNum chi_power_formula_short(const QuasiYDDatum& D, Idx c, unsigned t) {
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    if (!H.is_grouplike(c)) throw std::domain_error("chi_power_formula_short: c must be grouplike");
    CycNum acc = D.chi.at(pack1(c)).pow(t);
    for (unsigned i = 0; i < t; ++i) acc *= A.omega_inv.at(pack3(D.g, H.basis_power(c, i), c));
    return acc;
}

CycNum chi_of_power(const QuasiYDDatum& D, Idx c, unsigned t) {
    return D.chi.at(pack1(D.H->H.basis_power(c, t)));
}

bool omega_symmetric_last_two(const Functional& omega, unsigned dim) {
    for (Idx a = 0; a < dim; ++a)
        for (Idx b = 0; b < dim; ++b)
            for (Idx c = 0; c < dim; ++c)
                if (!(omega.at(pack3(a, b, c)) == omega.at(pack3(a, c, b)))) return false;
    return true;
}

QuasiYDDatum pullback_datum(const DqbMorphism& pi, const QuasiYDDatum& D, Idx a) {
    const StructuredCoalgebra& SA = pi.source->H;
    if (!(pi.image(a) == TensorElement::basis(1, pack1(D.g))))
        throw std::domain_error("pullback_datum: pi(a) != g");
    Functional chi_a = pullback_functional(pi.matrix, D.chi, SA.dim, SA.conductor);
    for (Idx b = 0; b < SA.dim; ++b) {
        auto [lhs, rhs] = commutation_sides(SA, chi_a, a, b);
        if (!(lhs == rhs))
            throw std::domain_error("pullback_datum: commutation fails at basis " +
                                    SA.label_tuple(pack1(b), 1));
    }
    return make_datum(pi.source, a, std::move(chi_a), true);
}

Report check_qyd_morphism(const QydMorphism& f) {
    Report rep = check_morphism(f.phi);
    rep.title = "morphism of quasi-YD data";
    {
        auto& item = rep.add("phi(g) = l");
        if (!(f.phi.image(f.source.g) == TensorElement::basis(1, pack1(f.target.g)))) {
            item.pass = false;
            item.counterexample = f.phi.source->H.label_tuple(pack1(f.source.g), 1);
        }
    }
    {
        auto& item = rep.add("xi . phi = chi");
        Functional pulled = pullback_functional(f.phi.matrix, f.target.chi,
                                                f.phi.source->H.dim, f.phi.source->H.conductor);
        if (!(pulled == f.source.chi)) {
            item.pass = false;
            item.counterexample = "chi mismatch";
        }
    }
    return rep;
}

Report group_datum_check(const FiniteGroup& G, const Functional& omega, Idx g,
                         const Functional& chi) {
    Report rep;
    rep.title = "group-algebra quasi-YD datum criterion";
    unsigned conductor = 1;
    for (const auto& [t, v] : omega.values()) conductor = std::lcm(conductor, v.conductor());
    Functional omega_inv_pointwise(3, G.order);
    bool invertible_omega = true;
    for (Idx i = 0; i < G.order && invertible_omega; ++i)
        for (Idx j = 0; j < G.order && invertible_omega; ++j)
            for (Idx k = 0; k < G.order && invertible_omega; ++k) {
                const CycNum& v = omega.at(pack3(i, j, k));
                if (v.is_zero()) invertible_omega = false;
                else omega_inv_pointwise.set(pack3(i, j, k), v.inverse());
            }
    {
        auto& item = rep.add("omega invertible on group tuples");
        item.pass = invertible_omega;
    }
    {
        auto& item = rep.add("g central");
        for (Idx h = 0; h < G.order && item.pass; ++h) {
            if (G.table[g][h] != G.table[h][g]) {
                item.pass = false;
                item.counterexample =
                    "(" + G.labels[g] + ", " + G.labels[h] + ")";
            }
        }
    }
    {
        auto& item = rep.add("chi unitary");
        if (!chi.at(pack1(G.identity)).is_one()) {
            item.pass = false;
            item.counterexample = "chi(1) != 1";
        }
    }
    if (invertible_omega) {
        auto& item = rep.add("chi product rule (pointwise)");
        for (Idx h = 0; h < G.order && item.pass; ++h)
            for (Idx l = 0; l < G.order && item.pass; ++l) {
                CycNum lhs = chi.at(pack1(G.table[h][l]));
                CycNum rhs = omega_inv_pointwise.at(pack3(h, l, g)) * chi.at(pack1(l)) *
                             omega.at(pack3(h, g, l)) * chi.at(pack1(h)) *
                             omega_inv_pointwise.at(pack3(g, h, l));
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = "(" + G.labels[h] + ", " + G.labels[l] + ")";
                }
            }
    }
    {
        auto& item = rep.add("chi invertible per element");
        for (Idx h = 0; h < G.order && item.pass; ++h) {
            if (chi.at(pack1(h)).is_zero()) {
                item.pass = false;
                item.counterexample = G.labels[h];
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Yetter-Drinfeld modules

TensorElement YetterDrinfeldModule::act(Idx h, const TensorElement& x) const {
    TensorElement out(1);
    for (const auto& [t, c] : x)
        for (const auto& [k, ck] : action[h][tuple_slot(t, 0)]) out.add(pack1(k), c * ck);
    return out;
}

TensorElement YetterDrinfeldModule::act_element(const TensorElement& h_elt,
                                                const TensorElement& x) const {
    TensorElement out(1);
    for (const auto& [th, ch] : h_elt) out.add_scaled(act(tuple_slot(th, 0), x), ch);
    return out;
}

TensorElement YetterDrinfeldModule::coaction_parts(Idx j, int levels) const {
    // (Delta^{levels-1} (x) V) . rho, module slot last.
    TensorElement out(levels + 1);
    const StructuredCoalgebra& HC = H->H;
    for (const auto& [h, k, c] : coaction[j]) {
        const TensorElement& dh = HC.delta_parts(h, levels);
        for (const auto& [t, ct] : dh)
            out.add(t | (PackedTuple(k) << (kSlotBits * levels)), c * ct);
    }
    return out;
}

Report verify_yd_module(const YetterDrinfeldModule& V) {
    Report rep;
    rep.title = "Yetter-Drinfeld module";
    const DualQuasiBialgebra& A = *V.H;
    const StructuredCoalgebra& H = A.H;
    H.precompute_delta(4);

    {
        auto& item = rep.add("comodule coassociativity and counit");
        for (Idx j = 0; j < V.dim && item.pass; ++j) {
            TensorElement lhs(3), rhs(3);  // H (x) H (x) V
            TensorElement eps_side(1);
            for (const auto& [h, k, c] : V.coaction[j]) {
                for (const auto& dt : H.delta[h])
                    lhs.add(pack2(dt.j, dt.k) | (PackedTuple(k) << (kSlotBits * 2)), c * dt.c);
                for (const auto& [h2, k2, c2] : V.coaction[k])
                    rhs.add(pack2(h, h2) | (PackedTuple(k2) << (kSlotBits * 2)), c * c2);
                eps_side.add(pack1(k), c * H.counit[h]);
            }
            if (!(lhs == rhs) || !(eps_side == TensorElement::basis(1, pack1(j)))) {
                item.pass = false;
                item.counterexample = V.label(j);
            }
        }
    }
    {
        auto& item = rep.add("unit action");
        TensorElement one = H.unit_element();
        for (Idx j = 0; j < V.dim && item.pass; ++j) {
            if (!(V.act_element(one, TensorElement::basis(1, pack1(j))) ==
                  TensorElement::basis(1, pack1(j)))) {
                item.pass = false;
                item.counterexample = V.label(j);
            }
        }
    }
    {
        // (hl) |> v = w^{-1}(h1,l1,v_{-1}) w(h2,(l2|>v0)_{-1},l3)
        //             w^{-1}((h3|>(l2|>v0)0)_{-1},h4,l4) (h3|>(l2|>v0)0)0
        auto& item = rep.add("action associativity (reassociator-twisted)");
        for (Idx h = 0; h < H.dim && item.pass; ++h) {
            const TensorElement& dh = H.delta_parts(h, 4);
            for (Idx l = 0; l < H.dim && item.pass; ++l) {
                const TensorElement& dl = H.delta_parts(l, 4);
                for (Idx j = 0; j < V.dim && item.pass; ++j) {
                    TensorElement lhs(1);
                    for (const auto& [k, ck] : H.mul_at(h, l))
                        lhs.add_scaled(V.act(k, TensorElement::basis(1, pack1(j))), ck);
                    TensorElement rhs(1);
                    for (const auto& [th, ch] : dh) {
                        for (const auto& [tl, cl] : dl) {
                            for (const auto& [hv, v0, cv] : V.coaction[j]) {
                                const CycNum& f1 = A.omega_inv.at(
                                    pack3(tuple_slot(th, 0), tuple_slot(tl, 0), hv));
                                if (f1.is_zero()) continue;
                                CycNum base = ch * cl * cv * f1;
                                for (const auto& [w_idx, cw] :
                                     V.action[tuple_slot(tl, 1)][v0]) {
                                    for (const auto& [hw, w0, chw] : V.coaction[w_idx]) {
                                        const CycNum& f2 = A.omega.at(
                                            pack3(tuple_slot(th, 1), hw, tuple_slot(tl, 2)));
                                        if (f2.is_zero()) continue;
                                        CycNum base2 = base * cw * chw * f2;
                                        for (const auto& [u_idx, cu] :
                                             V.action[tuple_slot(th, 2)][w0]) {
                                            for (const auto& [hu, u0, chu] : V.coaction[u_idx]) {
                                                const CycNum& f3 = A.omega_inv.at(
                                                    pack3(hu, tuple_slot(th, 3),
                                                          tuple_slot(tl, 3)));
                                                if (f3.is_zero()) continue;
                                                rhs.add(pack1(u0), base2 * cu * chu * f3);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if (!(lhs == rhs)) {
                        item.pass = false;
                        item.counterexample =
                            H.label_tuple(pack2(h, l), 2) + " on " + V.label(j);
                    }
                }
            }
        }
    }
    {
        // (h1 |> v)_{-1} h2 (x) (h1 |> v)_0 = h1 v_{-1} (x) (h2 |> v_0)
        auto& item = rep.add("action-coaction compatibility");
        for (Idx h = 0; h < H.dim && item.pass; ++h) {
            for (Idx j = 0; j < V.dim && item.pass; ++j) {
                TensorElement lhs(2), rhs(2);  // H (x) V
                for (const auto& dt : H.delta[h]) {
                    for (const auto& [w_idx, cw] : V.action[dt.j][j]) {
                        for (const auto& [hw, w0, chw] : V.coaction[w_idx]) {
                            for (const auto& [k, ck] : H.mul_at(hw, dt.k))
                                lhs.add(pack1(k) | (PackedTuple(w0) << kSlotBits),
                                        dt.c * cw * chw * ck);
                        }
                    }
                    for (const auto& [hv, v0, cv] : V.coaction[j]) {
                        for (const auto& [k, ck] : H.mul_at(dt.j, hv)) {
                            for (const auto& [w_idx, cw] : V.action[dt.k][v0])
                                rhs.add(pack1(k) | (PackedTuple(w_idx) << kSlotBits),
                                        dt.c * cv * ck * cw);
                        }
                    }
                }
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack1(h), 1) + " on " + V.label(j);
                }
            }
        }
    }
    return rep;
}

YetterDrinfeldModule trivial_module(DqbPtr H) {
    YetterDrinfeldModule V;
    V.dim = 1;
    V.labels = {"1"};
    const StructuredCoalgebra& HC = H->H;
    V.coaction.resize(1);
    for (Idx i = 0; i < HC.dim; ++i)
        if (!HC.unit[i].is_zero()) V.coaction[0].push_back({i, 0, HC.unit[i]});
    V.action.assign(HC.dim, std::vector<std::vector<std::pair<Idx, CycNum>>>(1));
    for (Idx h = 0; h < HC.dim; ++h)
        if (!HC.counit[h].is_zero()) V.action[h][0].push_back({0, HC.counit[h]});
    V.H = std::move(H);
    return V;
}

YetterDrinfeldModule one_dim_module(const QuasiYDDatum& D) {
    YetterDrinfeldModule V;
    V.dim = 1;
    V.labels = {"v"};
    const StructuredCoalgebra& HC = D.H->H;
    V.coaction.resize(1);
    V.coaction[0].push_back({D.g, 0, CycNum::one(HC.conductor)});
    V.action.assign(HC.dim, std::vector<std::vector<std::pair<Idx, CycNum>>>(1));
    for (Idx h = 0; h < HC.dim; ++h) {
        const CycNum& x = D.chi.at(pack1(h));
        if (!x.is_zero()) V.action[h][0].push_back({0, x});
    }
    V.H = D.H;
    return V;
}

YetterDrinfeldModule yd_tensor(const YetterDrinfeldModule& V, const YetterDrinfeldModule& W) {
    if (V.H != W.H) throw std::invalid_argument("yd_tensor: modules over different H");
    const DualQuasiBialgebra& A = *V.H;
    const StructuredCoalgebra& H = A.H;
    H.precompute_delta(5);
    YetterDrinfeldModule T;
    T.H = V.H;
    T.dim = V.dim * W.dim;
    T.labels.resize(T.dim);
    T.coaction.resize(T.dim);
    T.action.assign(H.dim, std::vector<std::vector<std::pair<Idx, CycNum>>>(T.dim));
    auto flat = [&](Idx v, Idx w) { return v * W.dim + w; };
    for (Idx v = 0; v < V.dim; ++v)
        for (Idx w = 0; w < W.dim; ++w) {
            T.labels[flat(v, w)] = V.label(v) + "(x)" + W.label(w);
            // diagonal coaction through the product in H
            for (const auto& [hv, v0, cv] : V.coaction[v])
                for (const auto& [hw, w0, cw] : W.coaction[w])
                    for (const auto& [k, ck] : H.mul_at(hv, hw))
                        T.coaction[flat(v, w)].push_back({k, flat(v0, w0), cv * cw * ck});
        }
    // h |> (v (x) w) = w(h1, v_{-1}, w_{-2}) w^{-1}((h2|>v0)_{-2}, h3, w_{-1})
    //                  w((h2|>v0)_{-1}, (h4|>w0)_{-1}, h5) (h2|>v0)_0 (x) (h4|>w0)_0
    for (Idx h = 0; h < H.dim; ++h) {
        const TensorElement& dh = H.delta_parts(h, 5);
        for (Idx v = 0; v < V.dim; ++v) {
            for (Idx w = 0; w < W.dim; ++w) {
                TensorElement acc(1);
                for (const auto& [th, chh] : dh) {
                    for (const auto& [hv, v0, cv] : V.coaction[v]) {
                        const TensorElement& wparts = W.coaction_parts(w, 2);
                        for (const auto& [tw, cw] : wparts) {
                            Idx wm2 = tuple_slot(tw, 0), wm1 = tuple_slot(tw, 1),
                                w0 = tuple_slot(tw, 2);
                            const CycNum& f1 = A.omega.at(pack3(tuple_slot(th, 0), hv, wm2));
                            if (f1.is_zero()) continue;
                            CycNum base = chh * cv * cw * f1;
                            for (const auto& [a_idx, ca] : V.action[tuple_slot(th, 1)][v0]) {
                                const TensorElement& aparts = V.coaction_parts(a_idx, 2);
                                for (const auto& [ta, caa] : aparts) {
                                    Idx am2 = tuple_slot(ta, 0), am1 = tuple_slot(ta, 1),
                                        a0 = tuple_slot(ta, 2);
                                    const CycNum& f2 =
                                        A.omega_inv.at(pack3(am2, tuple_slot(th, 2), wm1));
                                    if (f2.is_zero()) continue;
                                    CycNum base2 = base * ca * caa * f2;
                                    for (const auto& [b_idx, cb] :
                                         W.action[tuple_slot(th, 3)][w0]) {
                                        for (const auto& [hb, b0, cbb] : W.coaction[b_idx]) {
                                            const CycNum& f3 = A.omega.at(
                                                pack3(am1, hb, tuple_slot(th, 4)));
                                            if (f3.is_zero()) continue;
                                            acc.add(pack1(flat(a0, b0)),
                                                    base2 * cb * cbb * f3);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                acc.prune();
                auto& cell = T.action[h][flat(v, w)];
                for (const auto& [t, c] : acc) cell.push_back({tuple_slot(t, 0), c});
            }
        }
    }
    return T;
}

LinearMap braiding(const YetterDrinfeldModule& V, const YetterDrinfeldModule& W) {
    if (V.H != W.H) throw std::invalid_argument("braiding: modules over different H");
    LinearMap c = LinearMap::zero(W.dim * V.dim, V.dim * W.dim);
    for (Idx v = 0; v < V.dim; ++v)
        for (Idx w = 0; w < W.dim; ++w) {
            TensorElement acc(1);
            for (const auto& [hv, v0, cv] : V.coaction[v])
                for (const auto& [w2, cw] : W.action[hv][w])
                    acc.add(pack1(w2 * V.dim + v0), cv * cw);
            acc.prune();
            for (const auto& [t, cc] : acc)
                c.col[v * W.dim + w].push_back({tuple_slot(t, 0), cc});
        }
    return c;
}

LinearMap omega_op(const YetterDrinfeldModule& U, const YetterDrinfeldModule& V,
                   const YetterDrinfeldModule& W, const YetterDrinfeldModule& Z) {
    if (U.H != V.H || V.H != W.H || W.H != Z.H)
        throw std::invalid_argument("omega_op: modules over different H");
    const DualQuasiBialgebra& A = *U.H;
    const StructuredCoalgebra& H = A.H;
    // state tuples live in the current slot order; dims per slot track it
    struct Slots {
        const YetterDrinfeldModule* m[4];
    };
    auto coaction_factor = [&](const Slots& sl, const TensorElement& state, int i0, int i1,
                               int i2, bool use_inverse, bool last_is_pair,
                               int pair_second) -> TensorElement {
        // multiplies each term by w^{+-1}(x_{i0,-1}, x_{i1,-1}, y) where y is
        // the coaction of slot i2, or of the product pair (i2, pair_second).
        TensorElement out(4);
        const Functional& w = use_inverse ? A.omega_inv : A.omega;
        for (const auto& [t, c] : state) {
            for (const auto& [h0, r0, c0] : sl.m[i0]->coaction[tuple_slot(t, i0)]) {
                for (const auto& [h1, r1, c1] : sl.m[i1]->coaction[tuple_slot(t, i1)]) {
                    if (!last_is_pair) {
                        for (const auto& [h2, r2, c2] : sl.m[i2]->coaction[tuple_slot(t, i2)]) {
                            const CycNum& f = w.at(pack3(h0, h1, h2));
                            if (f.is_zero()) continue;
                            PackedTuple nt = t;
                            nt = tuple_with(nt, i0, r0);
                            nt = tuple_with(nt, i1, r1);
                            nt = tuple_with(nt, i2, r2);
                            out.add(nt, c * c0 * c1 * c2 * f);
                        }
                    } else {
                        for (const auto& [h2, r2, c2] : sl.m[i2]->coaction[tuple_slot(t, i2)]) {
                            for (const auto& [h3, r3, c3] :
                                 sl.m[pair_second]->coaction[tuple_slot(t, pair_second)]) {
                                for (const auto& [k, ck] : H.mul_at(h2, h3)) {
                                    const CycNum& f = w.at(pack3(h0, h1, k));
                                    if (f.is_zero()) continue;
                                    PackedTuple nt = t;
                                    nt = tuple_with(nt, i0, r0);
                                    nt = tuple_with(nt, i1, r1);
                                    nt = tuple_with(nt, i2, r2);
                                    nt = tuple_with(nt, pair_second, r3);
                                    out.add(nt, c * c0 * c1 * c2 * c3 * ck * f);
                                }
                            }
                        }
                    }
                }
            }
        }
        out.prune();
        return out;
    };

    unsigned cols = U.dim * V.dim * W.dim * Z.dim;
    unsigned rows = U.dim * W.dim * V.dim * Z.dim;
    LinearMap out = LinearMap::zero(rows, cols);
    for (Idx u = 0; u < U.dim; ++u)
        for (Idx v = 0; v < V.dim; ++v)
            for (Idx w = 0; w < W.dim; ++w)
                for (Idx z = 0; z < Z.dim; ++z) {
                    TensorElement state(4);
                    state.add(pack4(u, v, w, z), CycNum::one(H.conductor));
                    Slots sl{{&U, &V, &W, &Z}};
                    // a_{U,V,W(x)Z}: w^{-1}(u_{-1}, v_{-1}, (wz)_{-1})
                    state = coaction_factor(sl, state, 0, 1, 2, true, true, 3);
                    // U (x) a^{-1}_{V,W,Z}: w(v_{-1}, w_{-1}, z_{-1})
                    state = coaction_factor(sl, state, 1, 2, 3, false, false, 0);
                    // U (x) c_{V,W} (x) Z: v (x) w -> (v_{-1} |> w) (x) v_0
                    {
                        TensorElement next(4);
                        for (const auto& [t, c] : state) {
                            for (const auto& [hv, v0, cv] : V.coaction[tuple_slot(t, 1)]) {
                                for (const auto& [w2, cw] : W.action[hv][tuple_slot(t, 2)]) {
                                    PackedTuple nt = t;
                                    nt = tuple_with(nt, 1, w2);
                                    nt = tuple_with(nt, 2, v0);
                                    next.add(nt, c * cv * cw);
                                }
                            }
                        }
                        next.prune();
                        state = std::move(next);
                    }
                    Slots sl2{{&U, &W, &V, &Z}};
                    // U (x) a_{W,V,Z}: w^{-1}(w_{-1}, v_{-1}, z_{-1})
                    state = coaction_factor(sl2, state, 1, 2, 3, true, false, 0);
                    // a^{-1}_{U,W,V(x)Z}: w(u_{-1}, w_{-1}, (vz)_{-1})
                    state = coaction_factor(sl2, state, 0, 1, 2, false, true, 3);
                    Idx colidx = ((u * V.dim + v) * W.dim + w) * Z.dim + z;
                    for (const auto& [t, c] : state) {
                        Idx rowidx = ((tuple_slot(t, 0) * W.dim + tuple_slot(t, 1)) * V.dim +
                                      tuple_slot(t, 2)) *
                                         Z.dim +
                                     tuple_slot(t, 3);
                        out.col[colidx].push_back({rowidx, c});
                    }
                }
    return out;
}

}  // namespace quasiline
