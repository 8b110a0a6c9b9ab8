/**
 * @file bosonization.hpp
 * @brief The bosonization R#H of a quantum line R by a dual
 *        quasi-bialgebra H, its projection/inclusion, the coradical
 *        filtration bound, quasi-YD data on bosonizations, the iterated
 *        construction S#(R#kC_n), and gauge trivialization.
 *
 * Basis of B = R#H: pairs (a, h) with a the R-degree and h a basis index
 * of H, flattened a-major, so the filtration degree of (a, h) is a and
 * B_[n] is a contiguous range.
 */
#pragma once

#include "quasiline/quantum_line.hpp"

namespace quasiline {

struct Bosonization {
    QuantumLine R;
    DqbPtr H;
    DqbPtr B;
    DqbMorphism pi;     // B -> H, r#h |-> eps_R(r) h
    DqbMorphism sigma;  // H -> B, h |-> 1_R#h

    unsigned dimR() const { return R.N; }
    unsigned dimH() const { return H->H.dim; }
    Idx index(Idx a, Idx h) const { return a * dimH() + h; }
    Idx degree(Idx b) const { return b / dimH(); }
    Idx h_part(Idx b) const { return b % dimH(); }
};

/// Builds B = R#H with the smash structure maps; verify runs the full
/// dual quasi-bialgebra check plus the morphism checks for pi and sigma.
Bosonization bosonize(const QuantumLine& R, DqbPtr H, bool verify = true, unsigned jobs = 0);

/// pi((r#h)_1) (x) (r#h)_2 (x) pi((r#h)_3) = r_{-1}h_1 (x) (r_0#h_2) (x) h_3
/// on every basis element.
Report pi_id_pi_check(const Bosonization& B);

/// Delta_B(B_[n]) lies in sum_i B_[i] (x) B_[n-i] (the linear inclusion
/// behind the coradical bound B_0 <= k1_R (x) H), and every 1_R#h with h a
/// basis grouplike is grouplike in B.
Report filtration_check(const Bosonization& B);

/// The four consequences of a quasi-YD datum ((B,w_B), 1#c, chi_B) plus
/// the induced datum ((H,w), c, chi_B . sigma). c_idx indexes the
/// grouplike c in H.
Report boson_datum_conditions(const Bosonization& B, Idx c_idx, const Functional& chi_B);

struct BosonDatumClassification {
    /// Verified data (w, chi_B) with g_B = 1_R#c^w; chi_B is eps_R-factored.
    std::vector<std::pair<unsigned, Functional>> candidates;
    /// w values in the unanalyzed branch d = g_H d (possible only when
    /// g_H = 1); reported, not decided.
    std::vector<unsigned> outside_classification;
};

/// Brute-force search over w and eps_R-factored value tables with values
/// in mu_{n^2} or 0; every candidate is verified through verify_datum and
/// checked against chi_B(r#c^t) = eps_R(r) q^{-wt}.
BosonDatumClassification classify_boson_data(const Bosonization& B);

struct IteratedExample {
    Bosonization B;        // R # kC_n
    QuasiYDDatum datum_B;  // ((B, w_B), sigma(c^m), chi~ . pi)
    CycNum iota;           // q^{-m^2}
    QuantumLine S;
    Bosonization SB;  // S # B, dimension 4 n^3
    Report checks;
};

/// The even-n iterated construction; n = 2m. Builds the quasi-YD datum on
/// B for iota = q^{-m^2}, verifies the power identity
/// chi_[a](c^m) = q^{m a'}, and forms S#B of dimension 4n^3.
IteratedExample build_iterated_example(unsigned n, unsigned jobs = 0);

struct GaugeTrivialization {
    Bosonization A;  // R_{n^2} # kC_{n^2} over the coboundary structure
    Report checks;
};

/// Twists A = R_{n^2}#kC_{n^2} by mu = v^{-1}(pi (x) pi) and verifies the
/// twisted reassociator is trivial; also checks that no implemented
/// witness gauge trivializes B = R_n#kC_n (witness-level only).
GaugeTrivialization gauge_trivialize_A(unsigned n, unsigned jobs = 0);

struct IsoConditionResult {
    bool same_i = false;
    bool chi_values_equal = false;  // p^2 | p(jz - kw) + i(z^2 - w^2)
    bool possibly_isomorphic = false;
};

/// Necessary conditions for R#H =~ S#H over kC_p from the data
/// (i, z, chi_j) and (i', w, chi_k).
IsoConditionResult boson_iso_necessary_conditions(unsigned p, unsigned i, unsigned z, unsigned j,
                                                  unsigned i2, unsigned w, unsigned k);

/// Pairwise-distinct count over (i', j') with z fixed; p(p-1) classes at
/// fixed z.
unsigned count_distinct_boson_classes_fixed_z(unsigned p, unsigned z);

/// Full transport along a morphism of quasi-YD data: the six intertwining
/// equations plus f (x) phi as a morphism of dual quasi-bialgebras between
/// the bosonizations.
Report transport(const QydMorphism& f, const QuantumLine& R_source, const QuantumLine& R_target,
                 unsigned jobs = 0);

}  // namespace quasiline
