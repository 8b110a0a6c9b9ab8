/**
 * @file dqb.hpp
 * @brief Dual quasi-bialgebras: axioms, gauge transformations, twisting,
 *        coboundaries, and morphisms.
 *
 * A dual quasi-bialgebra is a coalgebra with multiplication and unit whose
 * multiplication is associative only up to a normalized convolution-
 * invertible 3-cocycle omega (the reassociator). Verifiers evaluate every
 * axiom exhaustively on basis tuples, exactly.
 */
#pragma once

#include <memory>

#include "quasiline/coalgebra.hpp"
#include "quasiline/report.hpp"

namespace quasiline {

struct DualQuasiBialgebra {
    StructuredCoalgebra H;
    Functional omega;      // arity 3
    Functional omega_inv;  // arity 3

    unsigned dim() const { return H.dim; }
};

using DqbPtr = std::shared_ptr<const DualQuasiBialgebra>;

struct AxiomFailure : std::runtime_error {
    explicit AxiomFailure(const Report& rep);
    Report report;
};

/// Builds a dual quasi-bialgebra, verifying all axioms by default
/// (throws AxiomFailure otherwise). The unchecked escape hatch exists for
/// performance experiments only.
DqbPtr make_dqb(StructuredCoalgebra H, Functional omega, Functional omega_inv,
                bool verify = true, unsigned jobs = 0);
/// Same, computing omega^{-1} by convolution-inverse solving.
DqbPtr make_dqb(StructuredCoalgebra H, Functional omega, bool verify = true, unsigned jobs = 0);

/// Exhaustive axiom check: coalgebra laws, reassociator normalization,
/// the 3-cocycle condition (on basis 4-tuples), quasi-associativity,
/// unitarity, and the two-sided omega inverse.
Report verify_dqb(const DualQuasiBialgebra& A, unsigned jobs = 0);

// --------------------------------------------------------------------------
// Gauges and twisting

struct GaugeTransformation {
    Functional v;      // arity 2, normalized
    Functional v_inv;  // two-sided convolution inverse
};

/// Is v(1 (x) h) = v(h (x) 1) = eps(h) for every basis h?
bool gauge_is_normalized(const Functional& v, const StructuredCoalgebra& H);

/// Wraps v into a gauge transformation: computes the convolution inverse
/// and insists on normalization.
GaugeTransformation make_gauge(Functional v, const StructuredCoalgebra& H);
/// Gauge with a known inverse (checked to be a two-sided inverse).
GaugeTransformation make_gauge(Functional v, Functional v_inv, const StructuredCoalgebra& H);

GaugeTransformation gauge_inverse(const GaugeTransformation& g);

/// Coboundary d^2 v = (eps (x) v) * v^{-1}(m (x) H) * v(H (x) m) * (v^{-1} (x) eps).
Functional coboundary(const GaugeTransformation& v, const StructuredCoalgebra& H);

/// Twisted structure: m^v = v * m * v^{-1}, omega^v per the reassociator
/// twist formula; Delta, eps, u are untouched.
DqbPtr twist(const DualQuasiBialgebra& A, const GaugeTransformation& v, bool verify = true,
             unsigned jobs = 0);

/// The twisted reassociator alone (usable without building the twist).
Functional twisted_omega(const DualQuasiBialgebra& A, const GaugeTransformation& v);

/// Normalizes a convolution-invertible v with normalized omega^v into a
/// gauge transformation a*v, a = v(1 (x) 1)^{-1}. Throws std::domain_error
/// when the hypothesis (omega^v normalized) fails.
GaugeTransformation normalize_gauge(const Functional& v, const DualQuasiBialgebra& A);

// --------------------------------------------------------------------------
// Morphisms

struct DqbMorphism {
    DqbPtr source, target;
    LinearMap matrix;  // dim(target) x dim(source)

    TensorElement image(Idx j) const { return matrix.apply_basis(j); }
};

/// f . phi^{(x)k} as a functional on the source.
Functional pullback_functional(const LinearMap& phi, const Functional& f, unsigned source_dim,
                               unsigned conductor);

/// Coalgebra map + multiplicative + unital + omega compatibility.
Report check_morphism(const DqbMorphism& phi);

/// v . (phi (x) phi) for a gauge v on the target, verified to be a gauge
/// transformation for the source; also checks the twisted-morphism
/// equations omega_A^v . phi^{(x)3} = omega_H^{v.phi^{(x)2}} and
/// m_A^v . phi^{(x)2} = phi . m_H^{v.phi^{(x)2}} exactly.
GaugeTransformation pullback_gauge(const DqbMorphism& phi, const GaugeTransformation& v,
                                   Report* verification = nullptr);

/// Does the functional equal eps^{(x)3} on every basis triple?
bool reassociator_is_trivial(const Functional& omega, const StructuredCoalgebra& H);

}  // namespace quasiline
