/**
 * @file qyd.hpp
 * @brief Quasi-Yetter-Drinfeld data and Yetter-Drinfeld modules over a
 *        dual quasi-bialgebra, with the prebraided tensor structure.
 *
 * A quasi-YD datum ((H,w), g, chi) packages a one-dimensional YD module:
 * g a grouplike, chi a unitary functional subject to the twisted
 * multiplicativity rule
 *
 *   chi(hl) = w^{-1}(h1,l1,g) chi(l2) w(h2,g,l3) chi(h3) w^{-1}(g,h4,l4)
 *
 * and the commutation rule g chi(h1) h2 = h1 chi(h2) g.
 */
#pragma once

#include <optional>

#include "quasiline/dqb.hpp"
#include "quasiline/group_dqb.hpp"

namespace quasiline {

struct QuasiYDDatum {
    DqbPtr H;
    Idx g = 0;          // grouplike basis index
    Functional chi;     // arity 1
    CycNum q;           // chi(g)
    std::optional<unsigned> N;  // multiplicative order of q, when finite
};

/// Builds the datum, computing q and N; verifies by default.
QuasiYDDatum make_datum(DqbPtr H, Idx g, Functional chi, bool verify = true);

/// Unitarity, the chi product rule on all basis pairs, and the
/// g-commutation rule on all basis elements. Exact and exhaustive.
Report verify_datum(const QuasiYDDatum& D);

/// Datum ((kC_n, w_{zeta^w}), c^z, chi) with chi(c^t) = chi(c)^t; requires
/// chi(c)^n = zeta^{wz} (throws std::domain_error otherwise).
QuasiYDDatum datum_for_cyclic(unsigned n, unsigned w, unsigned z, const CycNum& chi_of_c);

/// All quasi-YD data on (kC_n, w_{zeta^w}): for each z, the chi with
/// chi(c)^n = zeta^{wz} and chi(c^t) = chi(c)^t. Every returned datum is
/// verified.
std::vector<QuasiYDDatum> enumerate_data(unsigned n, unsigned w);

/// Right side of the grouplike power formula
///   chi(c^t) = chi(c)^t prod_i [w^{-1}(c^i,c,g) w(c^i,g,c) w^{-1}(g,c^i,c)].
CycNum chi_power_formula(const QuasiYDDatum& D, Idx c, unsigned t);
/// Simplified form valid when w = w(H (x) tau):
///   chi(c)^t prod_i w^{-1}(g,c^i,c).
CycNum chi_power_formula_short(const QuasiYDDatum& D, Idx c, unsigned t);
/// chi evaluated on the t-th power of the grouplike c.
CycNum chi_of_power(const QuasiYDDatum& D, Idx c, unsigned t);
/// Does w(a,b,c) = w(a,c,b) hold on all basis triples?
bool omega_symmetric_last_two(const Functional& omega, unsigned dim);

/// Transports a datum along pi: A -> H with pi(a) = g, checking the
/// commutation precondition a chi_A(b1) b2 = b1 chi_A(b2) a on every basis
/// b (throws std::domain_error with the witness otherwise).
QuasiYDDatum pullback_datum(const DqbMorphism& pi, const QuasiYDDatum& D, Idx a);

struct QydMorphism {
    QuasiYDDatum source, target;
    DqbMorphism phi;  // phi(g_source) = g_target, chi_target . phi = chi_source
};
Report check_qyd_morphism(const QydMorphism& f);

/// Group-algebra datum criterion: g central, chi unitary, and the chi
/// product rule; also reports per-element chi invertibility.
Report group_datum_check(const FiniteGroup& G, const Functional& omega, Idx g,
                         const Functional& chi);

// --------------------------------------------------------------------------
// Yetter-Drinfeld modules

struct YetterDrinfeldModule {
    DqbPtr H;
    unsigned dim = 0;
    std::vector<std::string> labels;
    /// rho(v_j) = sum c e_h (x) v_k : per j, list of (h, k, c).
    std::vector<std::vector<std::tuple<Idx, Idx, CycNum>>> coaction;
    /// act[h][j] = h |> v_j, sparse over the module basis.
    std::vector<std::vector<std::vector<std::pair<Idx, CycNum>>>> action;

    /// h |> x for sparse module elements; x keyed by single-slot tuples.
    TensorElement act(Idx h, const TensorElement& x) const;
    TensorElement act_element(const TensorElement& h_elt, const TensorElement& x) const;
    /// Iterated coaction v |-> v_{-levels} (x) ... (x) v_{-1} (x) v_0 as an
    /// arity-(levels+1) element, module slot last.
    TensorElement coaction_parts(Idx j, int levels) const;

    std::string label(Idx j) const { return j < labels.size() ? labels[j] : std::to_string(j); }
};

/// The YD axioms, the comodule laws, and unit-action, all exhaustively.
Report verify_yd_module(const YetterDrinfeldModule& V);

/// k with trivial coaction and eps-action.
YetterDrinfeldModule trivial_module(DqbPtr H);
/// The one-dimensional module carried by a datum.
YetterDrinfeldModule one_dim_module(const QuasiYDDatum& D);

/// V (x) W with diagonal coaction and the reassociator-corrected action;
/// flattened v-major.
YetterDrinfeldModule yd_tensor(const YetterDrinfeldModule& V, const YetterDrinfeldModule& W);

/// Prebraiding c_{V,W}(v (x) w) = (v_{-1} |> w) (x) v_0 as a linear map
/// from V (x) W to W (x) V (flattened).
LinearMap braiding(const YetterDrinfeldModule& V, const YetterDrinfeldModule& W);

/// The middle-four interchange
///   Omega: (U (x) V) (x) (W (x) Z) -> (U (x) W) (x) (V (x) Z)
/// composed from the five constraint/braiding factors.
LinearMap omega_op(const YetterDrinfeldModule& U, const YetterDrinfeldModule& V,
                   const YetterDrinfeldModule& W, const YetterDrinfeldModule& Z);

}  // namespace quasiline
