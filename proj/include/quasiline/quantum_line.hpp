/**
 * @file quantum_line.hpp
 * @brief The quantum line R((H,w),g,chi): the N-dimensional quotient of
 *        the tensor algebra on a one-dimensional YD module, N the order
 *        of q = chi(g), with its full YD-bialgebra structure and antipode.
 *
 * Structure constants, with [[.]] the Iverson bracket:
 *   rho(x^[n])            = g^n (x) x^[n]
 *   h |> x^[n]            = chi_[n](h) x^[n]
 *   x^[a] x^[b]           = [[a+b <= N-1]] prod_{i<a} w^{-1}(g,g^i,g^b) x^[a+b]
 *   Delta(x^[n])          = sum_i beta(i,n) x^[i] (x) x^[n-i]
 *   beta(i,n)             = [n i]_q prod_{j<i} w(g,g^j,g^{n-i})
 *   eps(x^[n])            = delta_{n,0}
 *   S(x^[n])              = (-1)^n q^{n(n-1)/2} x^[n]
 */
#pragma once

#include "quasiline/qyd.hpp"

namespace quasiline {

struct QuantumLine {
    QuasiYDDatum datum;
    unsigned N = 1;                              // dim R = order of q
    std::vector<Functional> chi_n;               // chi_[0..N-1] on H
    std::vector<std::vector<CycNum>> prod_coeff; // [a][b], Iverson-truncated
    std::vector<std::vector<CycNum>> beta;       // beta[n][i], 0 <= i <= n < N
    std::vector<CycNum> antipode_scalar;         // per degree
    std::vector<Idx> g_power;                    // basis index of g^n, n < N
    std::string var = "x";

    unsigned conductor() const { return datum.H->H.conductor; }
    std::string label(Idx a) const { return var + "[" + std::to_string(a) + "]"; }

    /// R as a YD module over H (diagonal action through chi_[n]).
    YetterDrinfeldModule module() const;
    /// m_R(x^[a] (x) x^[b]), at most one term.
    TensorElement mul_r(Idx a, Idx b) const;
    /// Delta_R(x^[n]) as an arity-2 element over the R basis.
    TensorElement delta_r(Idx n) const;
    CycNum eps_r(Idx n) const;
};

/// chi_[n] by the iterative convolution recursion; throws on internal
/// mismatch with the closed form (both are computed and compared), and
/// checks the collapsed form on cocommutative basis elements.
Functional chi_n(const QuasiYDDatum& D, unsigned n);
Functional chi_n_iterative(const QuasiYDDatum& D, unsigned n);
Functional chi_n_closed(const QuasiYDDatum& D, unsigned n);
/// Collapsed closed form, valid on cocommutative elements.
Functional chi_n_cocommutative_form(const QuasiYDDatum& D, unsigned n);

/// Builds the quantum line; throws std::domain_error when q = chi(g) is
/// not a root of unity. N = 1 yields the base field (no error).
QuantumLine build_quantum_line(const QuasiYDDatum& datum, std::string var = "x");

/// S_R as a diagonal linear map on the R basis.
LinearMap antipode(const QuantumLine& R);

/// The five check families: (a) R is a YD module; (b) the structure maps
/// are YD-module morphisms; (c) associativity through the constraint;
/// (d) coassociativity through the constraint plus counit laws;
/// (e) Delta m = (m (x) m) Omega (Delta (x) Delta). Also both antipode
/// convolution axioms, exactly.
Report verify_yd_bialgebra(const QuantumLine& R, unsigned jobs = 0);

// --------------------------------------------------------------------------
// Degree-truncated tensor algebra cross-check

struct TruncatedTensorAlgebra {
    QuasiYDDatum datum;
    unsigned max_degree = 0;                      // basis v^[0..D-1]
    std::vector<Functional> chi_n;                // 0..D-1
    std::vector<std::vector<CycNum>> prod_coeff;  // [a][b] with a+b < D
    std::vector<std::vector<CycNum>> beta;        // [n][i], n < D
    std::vector<Idx> g_power;
};

/// The tensor algebra T(V) truncated at degree D (formulas untruncated
/// within range; D >= N).
TruncatedTensorAlgebra truncated_tensor_algebra(const QuasiYDDatum& datum, unsigned D);

/// Delta_T(v^[n]) lands in T (x) I + I (x) T for N <= n < D, and R's
/// tables equal T's tables reduced modulo I = span(v^[n] : n >= N).
Report quotient_check(const TruncatedTensorAlgebra& T, const QuantumLine& R);

/// The six intertwining equations for x^[n] |-> y^[n] along a morphism of
/// quasi-YD data (rho, action, unit, m, Delta, eps). The bosonization
/// half of the transport claim lives with the bosonization builder.
Report transport_intertwining(const QydMorphism& f, const QuantumLine& R_source,
                              const QuantumLine& R_target);

}  // namespace quasiline
