#include "quasiline/dqb.hpp"

#include <chrono>

#include "quasiline/parallel.hpp"

namespace quasiline {

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

PackedTuple nth_tuple(std::uint64_t n, unsigned dim, int arity) {
    PackedTuple t = 0;
    for (int s = 0; s < arity; ++s) {
        t |= PackedTuple(n % dim) << (kSlotBits * s);
        n /= dim;
    }
    return t;
}

// rev[k]: all (i, j, c) with m(e_i (x) e_j) containing c*e_k.
std::vector<std::vector<std::tuple<Idx, Idx, CycNum>>> reverse_mul(const StructuredCoalgebra& H) {
    std::vector<std::vector<std::tuple<Idx, Idx, CycNum>>> rev(H.dim);
    for (Idx i = 0; i < H.dim; ++i)
        for (Idx j = 0; j < H.dim; ++j)
            for (const auto& [k, c] : H.mul_at(i, j)) rev[k].push_back({i, j, c});
    return rev;
}

// f |-> eps (x) f (arity grows by one on the left).
Functional eps_tensor(const Functional& f, const StructuredCoalgebra& H) {
    Functional out(f.arity() + 1, H.dim);
    for (Idx a = 0; a < H.dim; ++a) {
        if (H.counit[a].is_zero()) continue;
        for (const auto& [t, v] : f.values()) out.set(tuple_cat(pack1(a), 1, t), H.counit[a] * v);
    }
    return out;
}

// f |-> f (x) eps.
Functional tensor_eps(const Functional& f, const StructuredCoalgebra& H) {
    Functional out(f.arity() + 1, H.dim);
    for (Idx a = 0; a < H.dim; ++a) {
        if (H.counit[a].is_zero()) continue;
        for (const auto& [t, v] : f.values())
            out.set(tuple_cat(t, f.arity(), pack1(a)), v * H.counit[a]);
    }
    return out;
}

// f |-> f . (H^{(x)slot} (x) m (x) H^{(x)rest}): inserts m at `slot`.
Functional compose_with_mul(const Functional& f, const StructuredCoalgebra& H, int slot) {
    auto rev = reverse_mul(H);
    Functional out(f.arity() + 1, H.dim);
    for (const auto& [t, v] : f.values()) {
        Idx mid = tuple_slot(t, slot);
        PackedTuple lo = subtuple(t, 0, slot);
        PackedTuple hi = subtuple(t, slot + 1, f.arity() - slot - 1);
        for (const auto& [i, j, c] : rev[mid]) {
            PackedTuple nt = lo | (PackedTuple(i) << (kSlotBits * slot)) |
                             (PackedTuple(j) << (kSlotBits * (slot + 1))) |
                             (hi << (kSlotBits * (slot + 2)));
            out.add(nt, v * c);
        }
    }
    return out;
}

}  // namespace

AxiomFailure::AxiomFailure(const Report& rep)
    : std::runtime_error("axiom verification failed:\n" + rep.to_text_stable()), report(rep) {}

// ---------------------------------------------------------------------------
// verify_dqb

Report verify_dqb(const DualQuasiBialgebra& A, unsigned jobs) {
    const StructuredCoalgebra& H = A.H;
    Report rep = check_coalgebra(H, jobs);
    rep.title = "dual quasi-bialgebra";
    unsigned dim = H.dim;

    auto t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("reassociator normalization");
        TensorElement one = H.unit_element();
        for (Idx i = 0; i < dim && item.pass; ++i) {
            for (Idx j = 0; j < dim && item.pass; ++j) {
                CycNum expect = H.counit[i] * H.counit[j];
                for (int pos = 0; pos < 3 && item.pass; ++pos) {
                    CycNum got;
                    for (const auto& [u, cu] : one) {
                        Idx m = tuple_slot(u, 0);
                        PackedTuple t = pos == 0 ? pack3(m, i, j)
                                       : pos == 1 ? pack3(i, m, j)
                                                  : pack3(i, j, m);
                        got += cu * A.omega.at(t);
                    }
                    if (!(got == expect)) {
                        item.pass = false;
                        item.counterexample =
                            H.label_tuple(pack2(i, j), 2) + " unit in slot " + std::to_string(pos);
                    }
                }
            }
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        // (eps (x) w) * w(H (x) m (x) H) * (w (x) eps)
        //   = w(H (x) H (x) m) * w(m (x) H (x) H)   on every basis 4-tuple.
        auto& item = rep.add("3-cocycle");
        Functional f1 = eps_tensor(A.omega, H);
        Functional f2 = compose_with_mul(A.omega, H, 1);
        Functional f3 = tensor_eps(A.omega, H);
        Functional g1 = compose_with_mul(A.omega, H, 2);
        Functional g2 = compose_with_mul(A.omega, H, 0);
        ConvolutionPlan lhs(H, {&f1, &f2, &f3});
        ConvolutionPlan rhs(H, {&g1, &g2});
        std::uint64_t total = ipow(dim, 4);
        auto fail = parallel_find_failure(total, jobs, [&](std::uint64_t n) {
            PackedTuple x = nth_tuple(n, dim, 4);
            return lhs.eval(x) == rhs.eval(x);
        });
        if (fail) {
            item.pass = false;
            item.counterexample = H.label_tuple(nth_tuple(*fail, dim, 4), 4);
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        // [m(H (x) m)] * (u w) = (u w) * [m(m (x) H)] as maps H^{(x)3} -> H,
        // evaluated literally: the unit element is multiplied in, not
        // assumed absorbed.
        auto& item = rep.add("quasi-associativity");
        H.precompute_delta(2);
        TensorElement one = H.unit_element();
        std::uint64_t total = ipow(dim, 3);
        auto fail = parallel_find_failure(total, jobs, [&](std::uint64_t n) {
            PackedTuple x = nth_tuple(n, dim, 3);
            TensorElement lhs(1), rhs(1);
            std::array<const TensorElement*, 3> split;
            for (int s = 0; s < 3; ++s) split[s] = &H.delta_parts(tuple_slot(x, s), 2);
            for (const auto& [ta, ca] : split[0]->terms()) {
                for (const auto& [tb, cb] : split[1]->terms()) {
                    CycNum cab = ca * cb;
                    for (const auto& [tc, cc] : split[2]->terms()) {
                        CycNum c = cab * cc;
                        PackedTuple first =
                            pack3(tuple_slot(ta, 0), tuple_slot(tb, 0), tuple_slot(tc, 0));
                        PackedTuple second =
                            pack3(tuple_slot(ta, 1), tuple_slot(tb, 1), tuple_slot(tc, 1));
                        // a1(b1 c1) . w(a2,b2,c2) u(1)
                        const CycNum& wl = A.omega.at(second);
                        if (!wl.is_zero()) {
                            TensorElement prod = H.multiply(
                                TensorElement::basis(1, pack1(tuple_slot(first, 0))),
                                H.multiply(TensorElement::basis(1, pack1(tuple_slot(first, 1))),
                                           TensorElement::basis(1, pack1(tuple_slot(first, 2)))));
                            lhs.add_scaled(H.multiply(prod, one), wl * c);
                        }
                        // w(a1,b1,c1) u(1) . (a2 b2)c2
                        const CycNum& wr = A.omega.at(first);
                        if (!wr.is_zero()) {
                            TensorElement prod = H.multiply(
                                H.multiply(TensorElement::basis(1, pack1(tuple_slot(second, 0))),
                                           TensorElement::basis(1, pack1(tuple_slot(second, 1)))),
                                TensorElement::basis(1, pack1(tuple_slot(second, 2))));
                            rhs.add_scaled(H.multiply(one, prod), wr * c);
                        }
                    }
                }
            }
            return lhs == rhs;
        });
        if (fail) {
            item.pass = false;
            item.counterexample = H.label_tuple(nth_tuple(*fail, dim, 3), 3);
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("unitarity");
        TensorElement one = H.unit_element();
        for (Idx i = 0; i < dim && item.pass; ++i) {
            TensorElement e = TensorElement::basis(1, pack1(i));
            if (!(H.multiply(one, e) == e) || !(H.multiply(e, one) == e)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(i), 1);
            }
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("omega convolution inverse");
        Functional eps3 = counit_power(H, 3);
        if (!(convolve(A.omega, A.omega_inv, H) == eps3) ||
            !(convolve(A.omega_inv, A.omega, H) == eps3)) {
            item.pass = false;
            item.counterexample = "omega * omega^-1 != eps^3";
        }
        item.millis = ms_since(t0);
    }

    return rep;
}

DqbPtr make_dqb(StructuredCoalgebra H, Functional omega, Functional omega_inv, bool verify,
                unsigned jobs) {
    auto A = std::make_shared<DualQuasiBialgebra>();
    A->H = std::move(H);
    A->omega = std::move(omega);
    A->omega_inv = std::move(omega_inv);
    if (verify) {
        Report rep = verify_dqb(*A, jobs);
        if (!rep.ok()) throw AxiomFailure(rep);
    }
    return A;
}

DqbPtr make_dqb(StructuredCoalgebra H, Functional omega, bool verify, unsigned jobs) {
    Functional inv = conv_inverse(omega, H);
    return make_dqb(std::move(H), std::move(omega), std::move(inv), verify, jobs);
}

// ---------------------------------------------------------------------------
// Gauges

bool gauge_is_normalized(const Functional& v, const StructuredCoalgebra& H) {
    TensorElement one = H.unit_element();
    for (Idx i = 0; i < H.dim; ++i) {
        CycNum left, right;
        for (const auto& [u, cu] : one) {
            left += cu * v.at(pack2(tuple_slot(u, 0), i));
            right += cu * v.at(pack2(i, tuple_slot(u, 0)));
        }
        if (!(left == H.counit[i]) || !(right == H.counit[i])) return false;
    }
    return true;
}

GaugeTransformation make_gauge(Functional v, const StructuredCoalgebra& H) {
    Functional inv = conv_inverse(v, H);
    return make_gauge(std::move(v), std::move(inv), H);
}

GaugeTransformation make_gauge(Functional v, Functional v_inv, const StructuredCoalgebra& H) {
    if (!gauge_is_normalized(v, H))
        throw std::domain_error("gauge transformation is not normalized");
    Functional eps2 = counit_power(H, 2);
    if (!(convolve(v, v_inv, H) == eps2) || !(convolve(v_inv, v, H) == eps2))
        throw std::domain_error("v_inv is not a two-sided convolution inverse");
    return GaugeTransformation{std::move(v), std::move(v_inv)};
}

GaugeTransformation gauge_inverse(const GaugeTransformation& g) {
    return GaugeTransformation{g.v_inv, g.v};
}

Functional coboundary(const GaugeTransformation& g, const StructuredCoalgebra& H) {
    // d^2 v = (eps (x) v) * v^{-1}(m (x) H) * v(H (x) m) * (v^{-1} (x) eps)
    Functional a = eps_tensor(g.v, H);
    Functional b = compose_with_mul(g.v_inv, H, 0);
    Functional c = compose_with_mul(g.v, H, 1);
    Functional d = tensor_eps(g.v_inv, H);
    return convolve(convolve(a, b, H), convolve(c, d, H), H);
}

Functional twisted_omega(const DualQuasiBialgebra& A, const GaugeTransformation& g) {
    const StructuredCoalgebra& H = A.H;
    // w^v = (eps (x) v) * v(H (x) m) * w * v^{-1}(m (x) H) * (v^{-1} (x) eps)
    Functional a = eps_tensor(g.v, H);
    Functional b = compose_with_mul(g.v, H, 1);
    Functional c = compose_with_mul(g.v_inv, H, 0);
    Functional d = tensor_eps(g.v_inv, H);
    return convolve(convolve(a, b, H), convolve(A.omega, convolve(c, d, H), H), H);
}

DqbPtr twist(const DualQuasiBialgebra& A, const GaugeTransformation& g, bool verify,
             unsigned jobs) {
    const StructuredCoalgebra& H = A.H;
    StructuredCoalgebra out;
    out.dim = H.dim;
    out.conductor = H.conductor;
    out.labels = H.labels;
    out.delta = H.delta;
    out.counit = H.counit;
    out.unit = H.unit;
    out.mul.assign(static_cast<size_t>(H.dim) * H.dim, {});
    H.precompute_delta(3);
    for (Idx i = 0; i < H.dim; ++i) {
        for (Idx j = 0; j < H.dim; ++j) {
            // m^v(e_i (x) e_j) = v(i1,j1) m(i2 (x) j2) v^{-1}(i3,j3)
            TensorElement acc(1);
            const TensorElement& di = H.delta_parts(i, 3);
            const TensorElement& dj = H.delta_parts(j, 3);
            for (const auto& [ti, ci] : di) {
                for (const auto& [tj, cj] : dj) {
                    const CycNum& vl = g.v.at(pack2(tuple_slot(ti, 0), tuple_slot(tj, 0)));
                    if (vl.is_zero()) continue;
                    const CycNum& vr = g.v_inv.at(pack2(tuple_slot(ti, 2), tuple_slot(tj, 2)));
                    if (vr.is_zero()) continue;
                    CycNum c = ci * cj * vl * vr;
                    for (const auto& [k, ck] : H.mul_at(tuple_slot(ti, 1), tuple_slot(tj, 1)))
                        acc.add(pack1(k), c * ck);
                }
            }
            acc.prune();
            auto& cell = out.mul[static_cast<size_t>(i) * H.dim + j];
            for (const auto& [t, c] : acc) cell.push_back({tuple_slot(t, 0), c});
        }
    }
    Functional omega_v = twisted_omega(A, g);
    // (w^v)^{-1} = (v (x) eps) * v(m (x) H) * w^{-1} * v^{-1}(H (x) m) * (eps (x) v^{-1})
    Functional a = tensor_eps(g.v, H);
    Functional b = compose_with_mul(g.v, H, 0);
    Functional c = compose_with_mul(g.v_inv, H, 1);
    Functional d = eps_tensor(g.v_inv, H);
    Functional omega_v_inv =
        convolve(convolve(a, b, H), convolve(A.omega_inv, convolve(c, d, H), H), H);
    return make_dqb(std::move(out), std::move(omega_v), std::move(omega_v_inv), verify, jobs);
}

GaugeTransformation normalize_gauge(const Functional& v, const DualQuasiBialgebra& A) {
    const StructuredCoalgebra& H = A.H;
    Functional v_inv = conv_inverse(v, H);
    GaugeTransformation raw{v, v_inv};
    Functional omega_v = twisted_omega(A, raw);
    TensorElement one = H.unit_element();
    for (Idx i = 0; i < H.dim; ++i) {
        for (Idx j = 0; j < H.dim; ++j) {
            CycNum got;
            for (const auto& [u, cu] : one)
                got += cu * omega_v.at(pack3(i, tuple_slot(u, 0), j));
            if (!(got == H.counit[i] * H.counit[j]))
                throw std::domain_error("normalize_gauge: omega^v is not normalized at " +
                                        H.label_tuple(pack2(i, j), 2));
        }
    }
    CycNum v11;
    for (const auto& [u, cu] : one)
        for (const auto& [w, cw] : one)
            v11 += cu * cw * v.at(pack2(tuple_slot(u, 0), tuple_slot(w, 0)));
    if (v11.is_zero()) throw std::domain_error("normalize_gauge: v(1 (x) 1) = 0");
    return make_gauge(v.scaled(v11.inverse()), v_inv.scaled(v11), H);
}

// ---------------------------------------------------------------------------
// Morphisms

Functional pullback_functional(const LinearMap& phi, const Functional& f, unsigned source_dim,
                               unsigned conductor) {
    int k = f.arity();
    Functional out(k, source_dim);
    std::uint64_t total = ipow(source_dim, k);
    for (std::uint64_t n = 0; n < total; ++n) {
        PackedTuple x = nth_tuple(n, source_dim, k);
        CycNum acc(Rational(0), conductor);
        std::array<const std::vector<std::pair<Idx, CycNum>>*, 8> cols;
        bool empty = false;
        for (int s = 0; s < k; ++s) {
            cols[s] = &phi.col[tuple_slot(x, s)];
            if (cols[s]->empty()) empty = true;
        }
        if (empty) continue;
        std::array<size_t, 8> pos{};
        while (true) {
            PackedTuple y = 0;
            CycNum c = CycNum::one(conductor);
            for (int s = 0; s < k; ++s) {
                const auto& [row, val] = (*cols[s])[pos[s]];
                y |= PackedTuple(row) << (kSlotBits * s);
                c *= val;
            }
            const CycNum& fv = f.at(y);
            if (!fv.is_zero()) acc += c * fv;
            int s = 0;
            while (s < k && ++pos[s] == cols[s]->size()) pos[s++] = 0;
            if (s == k) break;
        }
        if (!acc.is_zero()) out.set(x, acc);
    }
    return out;
}

Report check_morphism(const DqbMorphism& phi) {
    Report rep;
    rep.title = "dual quasi-bialgebra morphism";
    const auto& S = phi.source->H;
    const auto& T = phi.target->H;

    {
        auto& item = rep.add("coalgebra map");
        for (Idx j = 0; j < S.dim && item.pass; ++j) {
            TensorElement img = phi.image(j);
            TensorElement lhs(2);
            for (const auto& [t, c] : img)
                for (const auto& dt : T.delta[tuple_slot(t, 0)])
                    lhs.add(pack2(dt.j, dt.k), c * dt.c);
            TensorElement rhs(2);
            for (const auto& dt : S.delta[j])
                rhs.add_scaled(phi.image(dt.j).tensor(phi.image(dt.k)), dt.c);
            bool eps_ok = T.counit_of(img) == S.counit[j];
            if (!(lhs == rhs) || !eps_ok) {
                item.pass = false;
                item.counterexample = S.label_tuple(pack1(j), 1);
            }
        }
    }
    {
        auto& item = rep.add("multiplicative");
        for (Idx i = 0; i < S.dim && item.pass; ++i)
            for (Idx j = 0; j < S.dim && item.pass; ++j) {
                TensorElement lhs(1);
                for (const auto& [k, c] : S.mul_at(i, j)) lhs.add_scaled(phi.image(k), c);
                TensorElement rhs = T.multiply(phi.image(i), phi.image(j));
                if (!(lhs == rhs)) {
                    item.pass = false;
                    item.counterexample = S.label_tuple(pack2(i, j), 2);
                }
            }
    }
    {
        auto& item = rep.add("unital");
        TensorElement lhs = phi.matrix.apply(S.unit_element());
        if (!(lhs == T.unit_element())) {
            item.pass = false;
            item.counterexample = "u(1)";
        }
    }
    {
        auto& item = rep.add("omega compatibility");
        Functional pulled = pullback_functional(phi.matrix, phi.target->omega, S.dim, S.conductor);
        if (!(pulled == phi.source->omega)) {
            item.pass = false;
            item.counterexample = "omega_target . phi^3 != omega_source";
        }
    }
    return rep;
}

GaugeTransformation pullback_gauge(const DqbMorphism& phi, const GaugeTransformation& g,
                                   Report* verification) {
    const auto& S = phi.source->H;
    Functional pv = pullback_functional(phi.matrix, g.v, S.dim, S.conductor);
    Functional pv_inv = pullback_functional(phi.matrix, g.v_inv, S.dim, S.conductor);
    GaugeTransformation pulled = make_gauge(std::move(pv), std::move(pv_inv), S);
    if (verification) {
        verification->title = "twisted morphism equations";
        Functional omega_tw_target = twisted_omega(*phi.target, g);
        Functional lhs = pullback_functional(phi.matrix, omega_tw_target, S.dim, S.conductor);
        Functional rhs = twisted_omega(*phi.source, pulled);
        auto& item1 = verification->add("omega^v . phi^3 = omega^(v.phi^2)");
        if (!(lhs == rhs)) item1.pass = false;

        DqbPtr tw_target = twist(*phi.target, g, false);
        DqbPtr tw_source = twist(*phi.source, pulled, false);
        auto& item2 = verification->add("m^v . phi^2 = phi . m^(v.phi^2)");
        for (Idx i = 0; i < S.dim && item2.pass; ++i)
            for (Idx j = 0; j < S.dim && item2.pass; ++j) {
                TensorElement lhs2 = tw_target->H.multiply(phi.image(i), phi.image(j));
                TensorElement rhs2(1);
                for (const auto& [k, c] : tw_source->H.mul_at(i, j))
                    rhs2.add_scaled(phi.image(k), c);
                if (!(lhs2 == rhs2)) {
                    item2.pass = false;
                    item2.counterexample = S.label_tuple(pack2(i, j), 2);
                }
            }
    }
    return pulled;
}

bool reassociator_is_trivial(const Functional& omega, const StructuredCoalgebra& H) {
    return omega == counit_power(H, 3);
}

}  // namespace quasiline
