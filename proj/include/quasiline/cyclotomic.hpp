/**
 * @file cyclotomic.hpp
 * @brief Exact arithmetic in cyclotomic fields Q(zeta_N).
 *
 * A CycNum is the canonical representative of an element of Q(zeta_N)
 * modulo the N-th cyclotomic polynomial Phi_N: a coefficient vector of
 * length phi(N) over arbitrary-precision rationals. Equality of values
 * is equality of coefficient vectors (after lifting to a common
 * conductor). No rounding ever occurs.
 */
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace quasiline {

using Rational = mpq_class;

/// Per-conductor data: Phi_N and the reduction rows for X^(phi+k) mod Phi_N.
/// Instances are cached in a process-wide registry (safe for concurrent
/// reads, single initialization per conductor).
class CycField {
  public:
    static std::shared_ptr<const CycField> get(unsigned conductor);

    unsigned conductor() const { return conductor_; }
    unsigned degree() const { return degree_; }  // phi(N)

    /// Monic Phi_N, coefficient of X^i at index i, size degree()+1.
    const std::vector<Rational>& modulus() const { return modulus_; }

    /// Canonical coefficients of X^(degree+k) mod Phi_N, 0 <= k < degree-1.
    const std::vector<Rational>& reduction_row(unsigned k) const { return reduction_[k]; }

  private:
    explicit CycField(unsigned conductor);

    unsigned conductor_;
    unsigned degree_;
    std::vector<Rational> modulus_;
    std::vector<std::vector<Rational>> reduction_;
};

/// Element of Q(zeta_N), immutable in spirit: arithmetic returns new values.
class CycNum {
  public:
    /// Zero of Q = Q(zeta_1).
    CycNum();
    /// A rational constant embedded into Q(zeta_conductor).
    explicit CycNum(Rational r, unsigned conductor = 1);
    explicit CycNum(long v, unsigned conductor = 1);

    static CycNum zero(unsigned conductor = 1);
    static CycNum one(unsigned conductor = 1);

    /// zeta_N^k, canonical representative. root_of_unity(N, 0) == 1.
    static CycNum root_of_unity(unsigned N, long k);

    /// From raw canonical coefficients (length must equal phi(conductor)).
    static CycNum from_coeffs(unsigned conductor, std::vector<Rational> coeffs);

    unsigned conductor() const { return field_->conductor(); }
    unsigned degree() const { return field_->degree(); }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;  // lies in Q
    /// The rational value, when is_rational().
    Rational rational_value() const;

    /// Canonical image in Q(zeta_M); requires conductor() | M.
    CycNum lifted(unsigned M) const;

    CycNum operator-() const;
    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }

    /// Multiplicative inverse; throws std::domain_error on zero.
    CycNum inverse() const;
    /// Integer power; negative exponents go through inverse().
    CycNum pow(long e) const;

    /// Least t >= 1 with x^t = 1, or nullopt when x is not a root of
    /// unity. Every root of unity in Q(zeta_N) has order dividing
    /// lcm(2, N), so the search is bounded by 2N.
    /// Throws std::domain_error on zero.
    std::optional<unsigned> multiplicative_order() const;

    bool operator==(const CycNum& o) const;
    bool operator!=(const CycNum& o) const { return !(*this == o); }

    /// Rational-coefficient rendering, e.g. "1 - 1/2*z^3" (z = zeta_N).
    std::string to_string() const;

  private:
    CycNum(std::shared_ptr<const CycField> f, std::vector<Rational> c);
    void reduce_product(std::vector<Rational>& prod);

    std::shared_ptr<const CycField> field_;
    std::vector<Rational> c_;  // length phi(N), degree < phi(N)
};

/// Gaussian binomial [n i]_q via the q-Pascal recurrence
/// [n i]_q = [n-1 i-1]_q + q^i [n-1 i]_q.
/// Throws std::domain_error when i > n.
CycNum q_binom(unsigned n, unsigned i, const CycNum& q);

/// Euler phi.
unsigned euler_phi(unsigned n);

/// Parse an exact rational string "p" or "p/q".
Rational parse_rational(const std::string& s);
std::string rational_to_string(const Rational& r);

}  // namespace quasiline
