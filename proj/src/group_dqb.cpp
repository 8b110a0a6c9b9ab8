#include "quasiline/group_dqb.hpp"

#include <numeric>
#include <sstream>

namespace quasiline {

bool FiniteGroup::is_abelian() const {
    for (Idx i = 0; i < order; ++i)
        for (Idx j = i + 1; j < order; ++j)
            if (table[i][j] != table[j][i]) return false;
    return true;
}

std::vector<Idx> FiniteGroup::center() const {
    std::vector<Idx> z;
    for (Idx i = 0; i < order; ++i) {
        bool central = true;
        for (Idx j = 0; j < order && central; ++j)
            if (table[i][j] != table[j][i]) central = false;
        if (central) z.push_back(i);
    }
    return z;
}

void FiniteGroup::validate() const {
    for (Idx i = 0; i < order; ++i) {
        if (table[identity][i] != i || table[i][identity] != i)
            throw std::domain_error("group identity fails");
        if (table[i][inverse[i]] != identity || table[inverse[i]][i] != identity)
            throw std::domain_error("group inverse fails");
        for (Idx j = 0; j < order; ++j)
            for (Idx k = 0; k < order; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw std::domain_error("group associativity fails");
    }
}

FiniteGroup cyclic_group(unsigned n) {
    if (n < 1) throw std::domain_error("cyclic_group: n >= 1 required");
    FiniteGroup G;
    G.order = n;
    G.identity = 0;
    G.table.assign(n, std::vector<Idx>(n));
    G.inverse.resize(n);
    G.labels.resize(n);
    for (unsigned a = 0; a < n; ++a) {
        G.inverse[a] = (n - a) % n;
        G.labels[a] = a == 0 ? "1" : (a == 1 ? "c" : "c^" + std::to_string(a));
        for (unsigned b = 0; b < n; ++b) G.table[a][b] = (a + b) % n;
    }
    G.validate();
    return G;
}

FiniteGroup dicyclic_group(unsigned p) {
    if (p < 3 || p % 2 == 0) throw std::domain_error("dicyclic_group: p must be an odd prime");
    for (unsigned d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw std::domain_error("dicyclic_group: p must be an odd prime");
    FiniteGroup G;
    G.order = 4 * p;
    G.identity = dicyclic_index(p, 0, 0);
    G.table.assign(G.order, std::vector<Idx>(G.order));
    G.inverse.resize(G.order);
    G.labels.resize(G.order);
    for (unsigned i = 0; i < p; ++i) {
        for (unsigned j = 0; j < 4; ++j) {
            Idx a = dicyclic_index(p, i, j);
            std::ostringstream os;
            if (i == 0 && j == 0) {
                os << "1";
            } else {
                if (i > 0) os << (i == 1 ? "y" : "y^" + std::to_string(i));
                if (i > 0 && j > 0) os << "*";
                if (j > 0) os << (j == 1 ? "x" : "x^" + std::to_string(j));
            }
            G.labels[a] = os.str();
            for (unsigned k = 0; k < p; ++k) {
                for (unsigned l = 0; l < 4; ++l) {
                    // (y^i x^j)(y^k x^l) = y^{i + k (-1)^j} x^{j+l}
                    long sign = (j % 2 == 0) ? 1 : -1;
                    long ii =
                        (static_cast<long>(i) + sign * static_cast<long>(k)) % static_cast<long>(p);
                    if (ii < 0) ii += p;
                    G.table[a][dicyclic_index(p, k, l)] =
                        dicyclic_index(p, static_cast<unsigned>(ii), j + l);
                }
            }
        }
    }
    for (Idx a = 0; a < G.order; ++a)
        for (Idx b = 0; b < G.order; ++b)
            if (G.table[a][b] == G.identity) G.inverse[a] = b;
    G.validate();
    return G;
}

StructuredCoalgebra group_coalgebra(const FiniteGroup& G, unsigned conductor) {
    StructuredCoalgebra H;
    H.dim = G.order;
    H.conductor = conductor;
    H.labels = G.labels;
    H.delta.resize(G.order);
    H.counit.assign(G.order, CycNum::one(conductor));
    H.mul.assign(static_cast<size_t>(G.order) * G.order, {});
    H.unit.assign(G.order, CycNum::zero(conductor));
    H.unit[G.identity] = CycNum::one(conductor);
    for (Idx i = 0; i < G.order; ++i) {
        H.delta[i].push_back(DeltaTerm{i, i, CycNum::one(conductor)});
        for (Idx j = 0; j < G.order; ++j)
            H.mul[static_cast<size_t>(i) * G.order + j].push_back(
                {G.table[i][j], CycNum::one(conductor)});
    }
    return H;
}

Functional omega_zeta(unsigned n, unsigned i) {
    if (n < 1 || i >= n) throw std::domain_error("omega_zeta: require n >= 1, 0 <= i < n");
    unsigned n2 = n * n;
    Functional w(3, n);
    ResidueConvention res{n};
    for (unsigned a = 0; a < n; ++a)
        for (unsigned b = 0; b < n; ++b)
            for (unsigned d = 0; d < n; ++d) {
                bool bracket = res.reduce(b) + res.reduce(d) > n - 1;
                // zeta^{i a} = q^{n i a}
                long e = bracket ? static_cast<long>(n) * i * a : 0;
                w.set(pack3(a, b, d), CycNum::root_of_unity(n2, e));
            }
    return w;
}

DqbPtr group_dqb(const FiniteGroup& G, Functional omega, bool verify, unsigned jobs) {
    unsigned conductor = 1;
    for (const auto& [t, v] : omega.values()) conductor = std::lcm(conductor, v.conductor());
    StructuredCoalgebra H = group_coalgebra(G, conductor);
    Functional omega_inv = conv_inverse(omega, H);
    return make_dqb(std::move(H), std::move(omega), std::move(omega_inv), verify, jobs);
}

Functional v_gauge(unsigned n, unsigned i) {
    if (n < 1 || i >= n) throw std::domain_error("v_gauge: require n >= 1, 0 <= i < n");
    unsigned n2 = n * n;
    Functional v(2, n2);
    ResidueConvention res{n};
    for (unsigned a = 0; a < n2; ++a)
        for (unsigned b = 0; b < n2; ++b) {
            long e = static_cast<long>(i) * a * (static_cast<long>(b) - res.reduce(b));
            v.set(pack2(a, b), CycNum::root_of_unity(n2, e));
        }
    return v;
}

DqbMorphism projection_phi(unsigned n, unsigned i, bool verify) {
    DqbPtr target = group_dqb(cyclic_group(n), omega_zeta(n, i), verify);
    unsigned n2 = n * n;
    LinearMap phi = LinearMap::zero(n, n2);
    for (Idx k = 0; k < n2; ++k) phi.set(k % n, k, CycNum::one(n2));
    Functional omega_src = pullback_functional(phi, target->omega, n2, n2);
    DqbPtr source = group_dqb(cyclic_group(n2), std::move(omega_src), verify);
    DqbMorphism f{std::move(source), std::move(target), std::move(phi)};
    if (verify) {
        Report rep = check_morphism(f);
        if (!rep.ok()) throw AxiomFailure(rep);
    }
    return f;
}

DqbMorphism dicyclic_projection(unsigned p, bool verify) {
    DqbPtr target = group_dqb(cyclic_group(4), omega_zeta(4, 1), verify);
    FiniteGroup G = dicyclic_group(p);
    LinearMap pi = LinearMap::zero(4, G.order);
    for (unsigned i = 0; i < p; ++i)
        for (unsigned j = 0; j < 4; ++j) pi.set(j, dicyclic_index(p, i, j), CycNum::one(16));
    Functional omega_g = pullback_functional(pi, target->omega, G.order, 16);
    DqbPtr source = group_dqb(G, std::move(omega_g), verify);
    DqbMorphism f{std::move(source), std::move(target), std::move(pi)};
    if (verify) {
        Report rep = check_morphism(f);
        if (!rep.ok()) throw AxiomFailure(rep);
    }
    return f;
}

Report quasi_hopf_antipode_check(unsigned n, unsigned i) {
    Report rep;
    rep.title = "dual quasi-Hopf antipode on (kC_n, w_zeta^i)";
    DqbPtr A = group_dqb(cyclic_group(n), omega_zeta(n, i), false);
    const StructuredCoalgebra& H = A->H;
    // S(c^j) = c^{-j}; alpha = beta = eps.
    LinearMap S = LinearMap::zero(n, n);
    for (Idx j = 0; j < n; ++j) S.set((n - j) % n, j, CycNum::one(H.conductor));
    H.precompute_delta(5);
    TensorElement one = H.unit_element();

    {
        // S(h_1) alpha(h_2) h_3 = alpha(h) 1
        auto& item = rep.add("antipode left axiom");
        for (Idx h = 0; h < n && item.pass; ++h) {
            TensorElement lhs(1);
            for (const auto& [t, c] : H.delta_parts(h, 3)) {
                CycNum coeff = c * H.counit[tuple_slot(t, 1)];
                lhs.add_scaled(H.multiply(S.apply_basis(tuple_slot(t, 0)),
                                          TensorElement::basis(1, pack1(tuple_slot(t, 2)))),
                               coeff);
            }
            TensorElement rhs = one;
            rhs.scale(H.counit[h]);
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(h), 1);
            }
        }
    }
    {
        // h_1 beta(h_2) S(h_3) = beta(h) 1
        auto& item = rep.add("antipode right axiom");
        for (Idx h = 0; h < n && item.pass; ++h) {
            TensorElement lhs(1);
            for (const auto& [t, c] : H.delta_parts(h, 3)) {
                CycNum coeff = c * H.counit[tuple_slot(t, 1)];
                lhs.add_scaled(H.multiply(TensorElement::basis(1, pack1(tuple_slot(t, 0))),
                                          S.apply_basis(tuple_slot(t, 2))),
                               coeff);
            }
            TensorElement rhs = one;
            rhs.scale(H.counit[h]);
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(h), 1);
            }
        }
    }
    {
        // w(h_1 beta(h_2) (x) S(h_3) (x) alpha(h_4) h_5) = eps(h)  and
        // w^{-1}(S(h_1) (x) alpha(h_2) h_3 (x) beta(h_4) S(h_5)) = eps(h)
        auto& item = rep.add("antipode reassociator compatibility");
        for (Idx h = 0; h < n && item.pass; ++h) {
            CycNum lhs1(Rational(0), H.conductor), lhs2(Rational(0), H.conductor);
            for (const auto& [t, c] : H.delta_parts(h, 5)) {
                Idx h1 = tuple_slot(t, 0), h2 = tuple_slot(t, 1), h3 = tuple_slot(t, 2),
                    h4 = tuple_slot(t, 3), h5 = tuple_slot(t, 4);
                CycNum c1 = c * H.counit[h2] * H.counit[h4];
                for (const auto& [ts, cs] : S.apply_basis(h3))
                    lhs1 += c1 * cs * A->omega.at(pack3(h1, tuple_slot(ts, 0), h5));
                for (const auto& [ta, ca] : S.apply_basis(h1))
                    for (const auto& [tb, cb] : S.apply_basis(h5))
                        lhs2 += c1 * ca * cb *
                                A->omega_inv.at(pack3(tuple_slot(ta, 0), h3, tuple_slot(tb, 0)));
            }
            if (!(lhs1 == H.counit[h]) || !(lhs2 == H.counit[h])) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(h), 1);
            }
        }
    }
    {
        // the identity that would make alpha = beta = eps work outright;
        // in fact w(c^j, c^-j, c^j) = zeta^{ij}, so it holds only for i = 0
        auto& item = rep.add("w(c^j, c^-j, c^j) = 1");
        for (Idx j = 0; j < n && item.pass; ++j) {
            if (!A->omega.at(pack3(j, (n - j) % n, j)).is_one()) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack3(j, (n - j) % n, j), 3);
            }
        }
    }
    {
        // corrected witness: alpha = eps, beta(c^j) = w(c^j, c^-j, c^j)^{-1}
        // satisfies all four axioms; this is the dual quasi-Hopf structure.
        auto& item = rep.add("axioms with beta(c^j) = w(c^j,c^-j,c^j)^(-1)");
        Functional beta(1, n);
        for (Idx j = 0; j < n; ++j)
            beta.set(pack1(j), A->omega.at(pack3(j, (n - j) % n, j)).inverse());
        for (Idx h = 0; h < n && item.pass; ++h) {
            Idx sh = (n - h) % n;
            // h1 beta(h2) S(h3) = beta(h) 1 on grouplikes: beta scales both sides
            TensorElement lhs = H.multiply(TensorElement::basis(1, pack1(h)),
                                           TensorElement::basis(1, pack1(sh)));
            lhs.scale(beta.at(pack1(h)));
            TensorElement rhs = H.unit_element();
            rhs.scale(beta.at(pack1(h)));
            bool ax1 = lhs == rhs;
            // w(h beta(h) (x) S(h) (x) h) = eps(h) and the inverse twin
            CycNum c1 = beta.at(pack1(h)) * A->omega.at(pack3(h, sh, h));
            CycNum c2 = beta.at(pack1(h)) * A->omega_inv.at(pack3(sh, h, sh));
            if (!ax1 || !c1.is_one() || !c2.is_one()) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(h), 1);
            }
        }
    }
    return rep;
}

}  // namespace quasiline
