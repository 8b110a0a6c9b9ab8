/**
 * @file group_dqb.hpp
 * @brief Group-algebra dual quasi-bialgebras: cyclic and dicyclic groups,
 *        the explicit cocycle family on kC_n, the coboundary witnesses on
 *        kC_{n^2}, projections, and the dual quasi-Hopf antipode check.
 */
#pragma once

#include "quasiline/dqb.hpp"

namespace quasiline {

struct FiniteGroup {
    unsigned order = 0;
    std::vector<std::vector<Idx>> table;  // table[i][j] = index of g_i g_j
    Idx identity = 0;
    std::vector<Idx> inverse;
    std::vector<std::string> labels;

    bool is_abelian() const;
    std::vector<Idx> center() const;
    /// Group-axiom sanity check (associativity, identity, inverses).
    void validate() const;
};

/// C_n = <c>, elements c^0..c^{n-1}.
FiniteGroup cyclic_group(unsigned n);

/// Dic_p = C_p x| C_4 = <x,y | x^4 = 1 = y^p, x y x^{-1} = y^{-1}>,
/// p an odd prime, order 4p, elements y^i x^j (0<=i<p, 0<=j<4).
FiniteGroup dicyclic_group(unsigned p);

/// Index of y^i x^j in the dicyclic labeling.
inline Idx dicyclic_index(unsigned p, unsigned i, unsigned j) { return (i % p) * 4 + (j % 4); }

/// Residues a' in {0..n-1} with a' = a (mod n).
struct ResidueConvention {
    unsigned modulus;
    unsigned reduce(long a) const {
        long r = a % static_cast<long>(modulus);
        return static_cast<unsigned>(r < 0 ? r + modulus : r);
    }
};

/// The group coalgebra kG: grouplike basis, multiplication from the table.
StructuredCoalgebra group_coalgebra(const FiniteGroup& G, unsigned conductor);

/// w_{zeta^i}(c^a (x) c^b (x) c^d) = zeta^{i a [[b'+d' > n-1]]} on kC_n,
/// zeta = q^n for q = zeta_{n^2}; conductor n^2. Symmetric in the last
/// two slots.
Functional omega_zeta(unsigned n, unsigned i);

/// (kG, omega) with the cocycle checked; grouplike basis throughout.
DqbPtr group_dqb(const FiniteGroup& G, Functional omega, bool verify = true, unsigned jobs = 0);

/// v_i(C^a (x) C^b) = q^{i a (b - b')} on kC_{n^2} (C the generator),
/// the coboundary witness with d^2 v_i = w_{zeta^i} . phi^{(x)3}.
Functional v_gauge(unsigned n, unsigned i);

/// phi: (kC_{n^2}, w_{zeta^i} . phi^3) -> (kC_n, w_{zeta^i}), phi(C) = c.
DqbMorphism projection_phi(unsigned n, unsigned i, bool verify = true);

/// pi: (kDic_p, w_zeta . pi^3) -> (kC_4, w_zeta), pi(y^i x^j) = c^j.
DqbMorphism dicyclic_projection(unsigned p, bool verify = true);

/// Dual quasi-Hopf antipode report for (kC_n, w_{zeta^i}) with
/// S(c^j) = c^{-j}. Checks the axioms for alpha = beta = eps (these hold
/// exactly when i = 0, since w(c^j, c^-j, c^j) = zeta^{ij}) and for the
/// corrected witness beta(c^j) = w(c^j, c^-j, c^j)^{-1}, which always
/// passes and realizes the dual quasi-Hopf structure.
Report quasi_hopf_antipode_check(unsigned n, unsigned i);

}  // namespace quasiline
