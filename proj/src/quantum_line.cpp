#include "quasiline/quantum_line.hpp"

#include <sstream>

namespace quasiline {

namespace {

// Arity-1 slices of the reassociator: h |-> w^{+-1}(...) with h in one slot.
Functional omega_slice_first(const DualQuasiBialgebra& A, bool inv, Idx a, Idx b) {
    const Functional& w = inv ? A.omega_inv : A.omega;
    Functional out(1, A.H.dim);
    for (Idx h = 0; h < A.H.dim; ++h) out.set(pack1(h), w.at(pack3(h, a, b)));
    return out;
}
Functional omega_slice_middle(const DualQuasiBialgebra& A, bool inv, Idx a, Idx b) {
    const Functional& w = inv ? A.omega_inv : A.omega;
    Functional out(1, A.H.dim);
    for (Idx h = 0; h < A.H.dim; ++h) out.set(pack1(h), w.at(pack3(a, h, b)));
    return out;
}
Functional omega_slice_last(const DualQuasiBialgebra& A, bool inv, Idx a, Idx b) {
    const Functional& w = inv ? A.omega_inv : A.omega;
    Functional out(1, A.H.dim);
    for (Idx h = 0; h < A.H.dim; ++h) out.set(pack1(h), w.at(pack3(a, b, h)));
    return out;
}

Functional counit_functional(const StructuredCoalgebra& H) {
    Functional out(1, H.dim);
    for (Idx h = 0; h < H.dim; ++h) out.set(pack1(h), H.counit[h]);
    return out;
}

bool is_cocommutative_element(const StructuredCoalgebra& H, Idx h) {
    TensorElement flipped(2);
    for (const auto& dt : H.delta[h]) flipped.add(pack2(dt.k, dt.j), dt.c);
    TensorElement plain(2);
    for (const auto& dt : H.delta[h]) plain.add(pack2(dt.j, dt.k), dt.c);
    return flipped == plain;
}

}  // namespace

Functional chi_n_iterative(const QuasiYDDatum& D, unsigned n) {
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    if (n == 0) return counit_functional(H);
    Functional prev = chi_n_iterative(D, n - 1);
    Idx gn1 = H.basis_power(D.g, n - 1);
    Functional a = omega_slice_first(A, false, D.g, gn1);
    Functional c = omega_slice_middle(A, true, D.g, gn1);
    Functional e = omega_slice_last(A, false, D.g, gn1);
    return convolve(convolve(a, D.chi, H), convolve(c, convolve(prev, e, H), H), H);
}

Functional chi_n_closed(const QuasiYDDatum& D, unsigned n) {
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    Functional acc = counit_functional(H);
    for (unsigned i = 0; i < n; ++i) {
        Idx gpow = H.basis_power(D.g, n - 1 - i);
        acc = convolve(acc, omega_slice_first(A, false, D.g, gpow), H);
        acc = convolve(acc, D.chi, H);
        acc = convolve(acc, omega_slice_middle(A, true, D.g, gpow), H);
    }
    for (unsigned i = 0; i < n; ++i)
        acc = convolve(acc, omega_slice_last(A, false, D.g, H.basis_power(D.g, i)), H);
    return acc;
}

Functional chi_n_cocommutative_form(const QuasiYDDatum& D, unsigned n) {
    const DualQuasiBialgebra& A = *D.H;
    const StructuredCoalgebra& H = A.H;
    Functional acc = counit_functional(H);
    for (unsigned i = 0; i < n; ++i) acc = convolve(acc, D.chi, H);
    for (unsigned i = 0; i < n; ++i) {
        Idx gpow = H.basis_power(D.g, i);
        acc = convolve(acc, omega_slice_first(A, false, D.g, gpow), H);
        acc = convolve(acc, omega_slice_middle(A, true, D.g, gpow), H);
        acc = convolve(acc, omega_slice_last(A, false, D.g, gpow), H);
    }
    return acc;
}

Functional chi_n(const QuasiYDDatum& D, unsigned n) {
    Functional iter = chi_n_iterative(D, n);
    Functional closed = chi_n_closed(D, n);
    if (!(iter == closed))
        throw std::logic_error("chi_[" + std::to_string(n) +
                               "]: iterative and closed forms disagree");
    const StructuredCoalgebra& H = D.H->H;
    Functional cocomm = chi_n_cocommutative_form(D, n);
    for (Idx h = 0; h < H.dim; ++h) {
        if (!is_cocommutative_element(H, h)) continue;
        if (!(iter.at(pack1(h)) == cocomm.at(pack1(h))))
            throw std::logic_error("chi_[" + std::to_string(n) +
                                   "]: cocommutative collapse fails at " +
                                   H.label_tuple(pack1(h), 1));
    }
    return iter;
}

QuantumLine build_quantum_line(const QuasiYDDatum& datum, std::string var) {
    if (!datum.N)
        throw std::domain_error("build_quantum_line: q = chi(g) is not a root of unity");
    QuantumLine R;
    R.datum = datum;
    R.N = *datum.N;
    R.var = std::move(var);
    const DualQuasiBialgebra& A = *datum.H;
    const StructuredCoalgebra& H = A.H;
    R.g_power.resize(R.N);
    for (unsigned k = 0; k < R.N; ++k) R.g_power[k] = H.basis_power(datum.g, k);

    // chi_[n], iterated; each level is cross-checked against the closed form.
    R.chi_n.reserve(R.N);
    for (unsigned k = 0; k < R.N; ++k) R.chi_n.push_back(chi_n(datum, k));

    R.prod_coeff.assign(R.N, std::vector<CycNum>(R.N, CycNum::zero(H.conductor)));
    for (unsigned a = 0; a < R.N; ++a)
        for (unsigned b = 0; b < R.N; ++b) {
            if (a + b > R.N - 1) continue;  // Iverson bracket
            CycNum c = CycNum::one(H.conductor);
            for (unsigned i = 0; i < a; ++i)
                c *= A.omega_inv.at(pack3(datum.g, R.g_power[i], R.g_power[b]));
            R.prod_coeff[a][b] = c;
        }

    R.beta.resize(R.N);
    for (unsigned n = 0; n < R.N; ++n) {
        R.beta[n].assign(n + 1, CycNum::zero(H.conductor));
        for (unsigned i = 0; i <= n; ++i) {
            CycNum c = q_binom(n, i, datum.q);
            for (unsigned j = 0; j < i; ++j)
                c *= A.omega.at(pack3(datum.g, R.g_power[j], R.g_power[n - i]));
            R.beta[n][i] = c;
        }
        if (!R.beta[n][0].is_one() || !R.beta[n][n].is_one())
            throw std::logic_error("beta(0,n) = beta(n,n) = 1 violated");
    }

    R.antipode_scalar.reserve(R.N);
    for (unsigned n = 0; n < R.N; ++n) {
        CycNum s = datum.q.pow(static_cast<long>(n) * (n - 1) / 2);
        if (n % 2 == 1) s = -s;
        R.antipode_scalar.push_back(s);
    }
    return R;
}

YetterDrinfeldModule QuantumLine::module() const {
    YetterDrinfeldModule V;
    V.H = datum.H;
    V.dim = N;
    const StructuredCoalgebra& H = datum.H->H;
    V.labels.resize(N);
    V.coaction.resize(N);
    V.action.assign(H.dim, std::vector<std::vector<std::pair<Idx, CycNum>>>(N));
    for (unsigned n = 0; n < N; ++n) {
        V.labels[n] = label(n);
        V.coaction[n].push_back({g_power[n], n, CycNum::one(H.conductor)});
        for (Idx h = 0; h < H.dim; ++h) {
            const CycNum& x = chi_n[n].at(pack1(h));
            if (!x.is_zero()) V.action[h][n].push_back({n, x});
        }
    }
    return V;
}

TensorElement QuantumLine::mul_r(Idx a, Idx b) const {
    TensorElement out(1);
    if (a + b <= N - 1) out.add(pack1(a + b), prod_coeff[a][b]);
    return out;
}

TensorElement QuantumLine::delta_r(Idx n) const {
    TensorElement out(2);
    for (unsigned i = 0; i <= n; ++i) out.add(pack2(i, n - i), beta[n][i]);
    return out;
}

CycNum QuantumLine::eps_r(Idx n) const {
    return n == 0 ? CycNum::one(conductor()) : CycNum::zero(conductor());
}

LinearMap antipode(const QuantumLine& R) {
    LinearMap S = LinearMap::zero(R.N, R.N);
    for (Idx n = 0; n < R.N; ++n) S.set(n, n, R.antipode_scalar[n]);
    return S;
}

Report verify_yd_bialgebra(const QuantumLine& R, unsigned jobs) {
    (void)jobs;
    const DualQuasiBialgebra& A = *R.datum.H;
    const StructuredCoalgebra& H = A.H;
    YetterDrinfeldModule Rmod = R.module();
    Report rep = verify_yd_module(Rmod);
    rep.title = "YD bialgebra (quantum line)";
    for (auto& item : rep.items) item.name = "module: " + item.name;

    YetterDrinfeldModule RR = yd_tensor(Rmod, Rmod);
    LinearMap M = LinearMap::zero(R.N, R.N * R.N);
    for (Idx a = 0; a < R.N; ++a)
        for (Idx b = 0; b < R.N; ++b)
            for (const auto& [t, c] : R.mul_r(a, b))
                M.col[a * R.N + b].push_back({tuple_slot(t, 0), c});
    LinearMap Dm = LinearMap::zero(R.N * R.N, R.N);
    for (Idx n = 0; n < R.N; ++n)
        for (const auto& [t, c] : R.delta_r(n))
            Dm.col[n].push_back({tuple_slot(t, 0) * R.N + tuple_slot(t, 1), c});

    {
        auto& item = rep.add("m_R is a YD-module morphism");
        for (Idx h = 0; h < H.dim && item.pass; ++h)
            for (Idx rs = 0; rs < R.N * R.N && item.pass; ++rs) {
                TensorElement acted(1);
                for (const auto& [k, ck] : RR.action[h][rs]) acted.add(pack1(k), ck);
                TensorElement lhs = M.apply(acted);
                TensorElement rhs = Rmod.act(h, M.apply_basis(rs));
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack1(h), 1) + " on " + RR.label(rs);
                }
            }
        // coaction: rho_R(m(r (x) s)) = (H (x) m) rho_{R(x)R}(r (x) s)
        for (Idx rs = 0; rs < R.N * R.N && item.pass; ++rs) {
            TensorElement lhs(2), rhs(2);
            for (const auto& [t, c] : M.apply_basis(rs))
                for (const auto& [hh, r0, cc] : Rmod.coaction[tuple_slot(t, 0)])
                    lhs.add(pack2(hh, r0), c * cc);
            for (const auto& [hh, rs0, cc] : RR.coaction[rs])
                for (const auto& [t, c] : M.apply_basis(rs0))
                    rhs.add(pack2(hh, tuple_slot(t, 0)), cc * c);
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = RR.label(rs);
            }
        }
    }
    {
        auto& item = rep.add("Delta_R is a YD-module morphism");
        for (Idx h = 0; h < H.dim && item.pass; ++h)
            for (Idx n = 0; n < R.N && item.pass; ++n) {
                TensorElement lhs = Dm.apply(Rmod.act(h, TensorElement::basis(1, pack1(n))));
                TensorElement rhs(1);
                for (const auto& [t, c] : Dm.apply_basis(n))
                    for (const auto& [k, ck] : RR.action[h][tuple_slot(t, 0)])
                        rhs.add(pack1(k), c * ck);
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack1(h), 1) + " on " + R.label(n);
                }
            }
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            TensorElement lhs(2), rhs(2);
            for (const auto& [t, c] : Dm.apply_basis(n))
                for (const auto& [hh, rs0, cc] : RR.coaction[tuple_slot(t, 0)])
                    lhs.add(pack2(hh, rs0), c * cc);
            for (const auto& [hh, r0, cc] : Rmod.coaction[n])
                for (const auto& [t, c] : Dm.apply_basis(r0))
                    rhs.add(pack2(hh, tuple_slot(t, 0)), cc * c);
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
        }
    }
    {
        auto& item = rep.add("eps_R and u_R are YD-module morphisms");
        TensorElement one_h = H.unit_element();
        for (Idx h = 0; h < H.dim && item.pass; ++h)
            for (Idx n = 0; n < R.N && item.pass; ++n) {
                CycNum lhs(Rational(0), H.conductor);
                for (const auto& [t, c] : Rmod.act(h, TensorElement::basis(1, pack1(n))))
                    lhs += c * R.eps_r(tuple_slot(t, 0));
                if (!(lhs == H.counit[h] * R.eps_r(n))) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack1(h), 1) + " on " + R.label(n);
                }
            }
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            // r_{-1} eps(r_0) = eps(r) 1_H
            TensorElement lhs(1);
            for (const auto& [hh, r0, cc] : Rmod.coaction[n])
                lhs.add(pack1(hh), cc * R.eps_r(r0));
            TensorElement rhs = one_h;
            rhs.scale(R.eps_r(n));
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
        }
        if (item.pass) {
            // unit: rho(1_R) = 1_H (x) 1_R and h |> 1_R = eps(h) 1_R
            TensorElement rho0(2);
            for (const auto& [hh, r0, cc] : Rmod.coaction[0]) rho0.add(pack2(hh, r0), cc);
            TensorElement expect(2);
            for (const auto& [t, c] : one_h) expect.add(pack2(tuple_slot(t, 0), 0), c);
            if (!(rho0 == expect)) {
                item.pass = false;
                item.counterexample = "rho(1_R)";
            }
            for (Idx h = 0; h < H.dim && item.pass; ++h) {
                TensorElement lhs = Rmod.act(h, TensorElement::basis(1, pack1(0)));
                TensorElement rhs = TensorElement::basis(1, pack1(0));
                rhs.scale(H.counit[h]);
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = "1_R under " + H.label_tuple(pack1(h), 1);
                }
            }
        }
    }
    {
        // m(m (x) R) = m(R (x) m) . a with a the comodule-category
        // associativity constraint.
        auto& item = rep.add("associativity through the constraint");
        for (Idx a = 0; a < R.N && item.pass; ++a)
            for (Idx b = 0; b < R.N && item.pass; ++b)
                for (Idx c = 0; c < R.N && item.pass; ++c) {
                    TensorElement lhs(1), rhs(1);
                    for (const auto& [t, cc] : R.mul_r(a, b))
                        lhs.add_scaled(R.mul_r(tuple_slot(t, 0), c), cc);
                    CycNum f =
                        A.omega_inv.at(pack3(R.g_power[a], R.g_power[b], R.g_power[c]));
                    for (const auto& [t, cc] : R.mul_r(b, c))
                        rhs.add_scaled(R.mul_r(a, tuple_slot(t, 0)), cc * f);
                    if (!(lhs == rhs)) {
                        item.pass = false;
                        item.counterexample = "(" + R.label(a) + ", " + R.label(b) + ", " +
                                              R.label(c) + ")";
                    }
                }
        item.millis = 0;
    }
    {
        // a . (Delta (x) R) . Delta = (R (x) Delta) . Delta, plus counit laws.
        auto& item = rep.add("coassociativity through the constraint");
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            TensorElement lhs(3), rhs(3);
            for (const auto& [t, c] : R.delta_r(n)) {
                Idx r1 = tuple_slot(t, 0), r2 = tuple_slot(t, 1);
                for (const auto& [t2, c2] : R.delta_r(r1)) {
                    Idx r11 = tuple_slot(t2, 0), r12 = tuple_slot(t2, 1);
                    CycNum f = A.omega_inv.at(
                        pack3(R.g_power[r11], R.g_power[r12], R.g_power[r2]));
                    lhs.add(pack3(r11, r12, r2), c * c2 * f);
                }
                for (const auto& [t2, c2] : R.delta_r(r2))
                    rhs.add(pack3(r1, tuple_slot(t2, 0), tuple_slot(t2, 1)), c * c2);
            }
            if (!(lhs == rhs)) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
            TensorElement left(1), right(1);
            for (const auto& [t, c] : R.delta_r(n)) {
                left.add(pack1(tuple_slot(t, 1)), c * R.eps_r(tuple_slot(t, 0)));
                right.add(pack1(tuple_slot(t, 0)), c * R.eps_r(tuple_slot(t, 1)));
            }
            if (!(left == TensorElement::basis(1, pack1(n))) ||
                !(right == TensorElement::basis(1, pack1(n)))) {
                item.pass = false;
                item.counterexample = R.label(n) + " (counit)";
            }
        }
    }
    {
        // Delta m = (m (x) m) . Omega . (Delta (x) Delta)
        auto& item = rep.add("product-coproduct compatibility via Omega");
        LinearMap Om = omega_op(Rmod, Rmod, Rmod, Rmod);
        unsigned N = R.N;
        for (Idx r = 0; r < N && item.pass; ++r)
            for (Idx s = 0; s < N && item.pass; ++s) {
                TensorElement lhs(2);
                for (const auto& [t, c] : R.mul_r(r, s))
                    lhs.add_scaled(R.delta_r(tuple_slot(t, 0)), c);
                TensorElement rhs(2);
                for (const auto& [td, cd] : R.delta_r(r)) {
                    for (const auto& [te, ce] : R.delta_r(s)) {
                        Idx colidx = ((tuple_slot(td, 0) * N + tuple_slot(td, 1)) * N +
                                      tuple_slot(te, 0)) *
                                         N +
                                     tuple_slot(te, 1);
                        for (const auto& [row, cc] : Om.col[colidx]) {
                            Idx z = row % N, v = (row / N) % N, w = (row / (N * N)) % N,
                                u = row / (N * N * N);
                            CycNum coeff = cd * ce * cc;
                            for (const auto& [t1, c1] : R.mul_r(u, w))
                                for (const auto& [t2, c2] : R.mul_r(v, z))
                                    rhs.add(pack2(tuple_slot(t1, 0), tuple_slot(t2, 0)),
                                            coeff * c1 * c2);
                        }
                    }
                }
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = "(" + R.label(r) + ", " + R.label(s) + ")";
                }
            }
    }
    {
        auto& item = rep.add("antipode convolution axioms");
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            TensorElement left(1), right(1);
            for (const auto& [t, c] : R.delta_r(n)) {
                Idx i = tuple_slot(t, 0), j = tuple_slot(t, 1);
                left.add_scaled(R.mul_r(i, j), c * R.antipode_scalar[i]);
                right.add_scaled(R.mul_r(i, j), c * R.antipode_scalar[j]);
            }
            TensorElement expect(1);
            expect.add(pack1(0), R.eps_r(n));
            expect.prune();
            if (!(left == expect) || !(right == expect)) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
        }
        // bijectivity: the diagonal scalars are nonzero
        for (Idx n = 0; n < R.N && item.pass; ++n) {
            if (R.antipode_scalar[n].is_zero()) {
                item.pass = false;
                item.counterexample = R.label(n) + " (singular antipode)";
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Truncated tensor algebra

TruncatedTensorAlgebra truncated_tensor_algebra(const QuasiYDDatum& datum, unsigned D) {
    if (datum.N && D < *datum.N)
        throw std::domain_error("truncated_tensor_algebra: D >= N required");
    TruncatedTensorAlgebra T;
    T.datum = datum;
    T.max_degree = D;
    const DualQuasiBialgebra& A = *datum.H;
    const StructuredCoalgebra& H = A.H;
    T.g_power.resize(D);
    for (unsigned k = 0; k < D; ++k) T.g_power[k] = H.basis_power(datum.g, k);
    for (unsigned k = 0; k < D; ++k) T.chi_n.push_back(chi_n(datum, k));
    T.prod_coeff.assign(D, std::vector<CycNum>(D, CycNum::zero(H.conductor)));
    for (unsigned a = 0; a < D; ++a)
        for (unsigned b = 0; a + b < D; ++b) {
            CycNum c = CycNum::one(H.conductor);
            for (unsigned i = 0; i < a; ++i)
                c *= A.omega_inv.at(pack3(datum.g, T.g_power[i], T.g_power[b]));
            T.prod_coeff[a][b] = c;
        }
    T.beta.resize(D);
    for (unsigned n = 0; n < D; ++n) {
        T.beta[n].assign(n + 1, CycNum::zero(H.conductor));
        for (unsigned i = 0; i <= n; ++i) {
            CycNum c = q_binom(n, i, datum.q);
            for (unsigned j = 0; j < i; ++j)
                c *= A.omega.at(pack3(datum.g, T.g_power[j], T.g_power[n - i]));
            T.beta[n][i] = c;
        }
    }
    return T;
}

Report quotient_check(const TruncatedTensorAlgebra& T, const QuantumLine& R) {
    Report rep;
    rep.title = "tensor-algebra quotient";
    unsigned N = R.N, D = T.max_degree;
    {
        // Delta_T(v^[n]) in T (x) I + I (x) T for N <= n < D: every term
        // v^[i] (x) v^[n-i] with both factors below degree N must vanish.
        auto& item = rep.add("coproduct lands in T(x)I + I(x)T above degree N");
        for (unsigned n = N; n < D && item.pass; ++n)
            for (unsigned i = 0; i <= n && item.pass; ++i) {
                if (i < N && n - i < N && !T.beta[n][i].is_zero()) {
                    item.pass = false;
                    item.counterexample = "beta(" + std::to_string(i) + "," + std::to_string(n) +
                                          ") != 0";
                }
            }
    }
    {
        auto& item = rep.add("product table reduces mod I");
        for (unsigned a = 0; a < N && item.pass; ++a)
            for (unsigned b = 0; b < N && item.pass; ++b) {
                if (a + b < N) {
                    if (!(T.prod_coeff[a][b] == R.prod_coeff[a][b])) {
                        item.pass = false;
                        item.counterexample =
                            "(" + R.label(a) + ", " + R.label(b) + ")";
                    }
                } else if (a + b < D) {
                    // image lies in I, so the reduced product is zero
                    if (!(R.mul_r(a, b).is_zero())) {
                        item.pass = false;
                        item.counterexample =
                            "(" + R.label(a) + ", " + R.label(b) + ") not truncated";
                    }
                }
            }
    }
    {
        auto& item = rep.add("coproduct table reduces mod I");
        for (unsigned n = 0; n < N && item.pass; ++n)
            for (unsigned i = 0; i <= n && item.pass; ++i)
                if (!(T.beta[n][i] == R.beta[n][i])) {
                    item.pass = false;
                    item.counterexample =
                        "beta(" + std::to_string(i) + "," + std::to_string(n) + ")";
                }
    }
    {
        auto& item = rep.add("action and coaction agree below degree N");
        for (unsigned n = 0; n < N && item.pass; ++n) {
            if (!(T.chi_n[n] == R.chi_n[n]) || T.g_power[n] != R.g_power[n]) {
                item.pass = false;
                item.counterexample = R.label(n);
            }
        }
    }
    return rep;
}

Report transport_intertwining(const QydMorphism& f, const QuantumLine& R_source,
                              const QuantumLine& R_target) {
    Report rep;
    rep.title = "quantum-line transport along a datum morphism";
    if (R_source.N != R_target.N)
        throw std::domain_error("transport: the two quantum lines have different N");
    unsigned N = R_source.N;
    const StructuredCoalgebra& SH = f.phi.source->H;
    {
        auto& item = rep.add("coaction intertwines: rho f = (phi (x) f) rho");
        for (unsigned n = 0; n < N && item.pass; ++n) {
            TensorElement img = f.phi.image(R_source.g_power[n]);
            if (!(img == TensorElement::basis(1, pack1(R_target.g_power[n])))) {
                item.pass = false;
                item.counterexample = R_source.label(n);
            }
        }
    }
    {
        auto& item = rep.add("action intertwines: chi^L_[n] . phi = chi^H_[n]");
        for (unsigned n = 0; n < N && item.pass; ++n) {
            Functional pulled =
                pullback_functional(f.phi.matrix, R_target.chi_n[n], SH.dim, SH.conductor);
            if (!(pulled == R_source.chi_n[n])) {
                item.pass = false;
                item.counterexample = "degree " + std::to_string(n);
            }
        }
    }
    {
        auto& item = rep.add("unit, product, coproduct, counit tables agree");
        for (unsigned a = 0; a < N && item.pass; ++a)
            for (unsigned b = 0; b < N && item.pass; ++b)
                if (!(R_source.prod_coeff[a][b] == R_target.prod_coeff[a][b])) {
                    item.pass = false;
                    item.counterexample =
                        "m(" + R_source.label(a) + ", " + R_source.label(b) + ")";
                }
        for (unsigned n = 0; n < N && item.pass; ++n)
            for (unsigned i = 0; i <= n && item.pass; ++i)
                if (!(R_source.beta[n][i] == R_target.beta[n][i])) {
                    item.pass = false;
                    item.counterexample =
                        "beta(" + std::to_string(i) + "," + std::to_string(n) + ")";
                }
    }
    return rep;
}

}  // namespace quasiline
