/**
 * @file coalgebra.hpp
 * @brief Finite-dimensional coalgebras with multiplication and unit over a
 *        fixed basis: sparse structure constants, tensor elements,
 *        functionals on tensor powers, convolution, convolution inverses.
 *
 * Index tuples over the basis are packed 8 bits per slot into a 64-bit
 * word (dimension <= 255, arity <= 8), first tensor factor in the low
 * bits. All coefficients are exact CycNum scalars.
 */
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "quasiline/cyclotomic.hpp"
#include "quasiline/report.hpp"

namespace quasiline {

using Idx = std::uint32_t;
using PackedTuple = std::uint64_t;

constexpr int kSlotBits = 8;
constexpr unsigned kMaxDim = 255;
constexpr int kMaxArity = 8;

inline Idx tuple_slot(PackedTuple t, int j) {
    return static_cast<Idx>((t >> (kSlotBits * j)) & 0xffu);
}
inline PackedTuple tuple_with(PackedTuple t, int j, Idx v) {
    PackedTuple mask = PackedTuple(0xffu) << (kSlotBits * j);
    return (t & ~mask) | (PackedTuple(v) << (kSlotBits * j));
}
inline PackedTuple pack1(Idx a) { return PackedTuple(a); }
inline PackedTuple pack2(Idx a, Idx b) { return PackedTuple(a) | (PackedTuple(b) << 8); }
inline PackedTuple pack3(Idx a, Idx b, Idx c) { return pack2(a, b) | (PackedTuple(c) << 16); }
inline PackedTuple pack4(Idx a, Idx b, Idx c, Idx d) { return pack3(a, b, c) | (PackedTuple(d) << 24); }
/// Concatenate: a of arity ka, then b.
inline PackedTuple tuple_cat(PackedTuple a, int ka, PackedTuple b) {
    return a | (b << (kSlotBits * ka));
}
inline PackedTuple subtuple(PackedTuple t, int from, int len) {
    PackedTuple shifted = t >> (kSlotBits * from);
    if (len >= kMaxArity) return shifted;
    return shifted & ((PackedTuple(1) << (kSlotBits * len)) - 1);
}

/// Sparse element of H^{(x)arity}: sorted unique tuples, zero terms pruned.
class TensorElement {
  public:
    explicit TensorElement(int arity) : arity_(arity) {}

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    /// Accumulates c onto the coefficient of t (zeros pruned lazily).
    void add(PackedTuple t, const CycNum& c);
    void add_scaled(const TensorElement& o, const CycNum& c);
    void scale(const CycNum& c);
    /// Drop exact-zero coefficients.
    void prune();

    const std::map<PackedTuple, CycNum>& terms() const { return terms_; }
    /// Iterating the element itself keeps temporaries alive in range-for.
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    CycNum coefficient(PackedTuple t) const;

    /// Tensor concatenation (this (x) o).
    TensorElement tensor(const TensorElement& o) const;

    bool operator==(const TensorElement& o) const;
    bool operator!=(const TensorElement& o) const { return !(*this == o); }

    static TensorElement basis(int arity, PackedTuple t);

  private:
    int arity_;
    std::map<PackedTuple, CycNum> terms_;
};

/// Functional on H^{(x)arity}, extended linearly; stores nonzero values
/// only, with per-slot basis supports for pruning in convolution loops.
class Functional {
  public:
    Functional() : arity_(0), dim_(0) {}
    Functional(int arity, unsigned dim);

    int arity() const { return arity_; }
    unsigned dim() const { return dim_; }

    void set(PackedTuple t, const CycNum& c);
    void add(PackedTuple t, const CycNum& c);
    const CycNum& at(PackedTuple t) const;  // zero when absent
    bool has(PackedTuple t) const { return vals_.count(t) != 0; }
    const std::unordered_map<PackedTuple, CycNum>& values() const { return vals_; }

    bool slot_supported(int slot, Idx i) const {
        return (slot_support_[slot][i >> 6] >> (i & 63)) & 1u;
    }

    /// Linear extension to a tensor element of matching arity.
    CycNum apply(const TensorElement& x) const;

    Functional scaled(const CycNum& c) const;
    /// Pointwise (Hadamard) product; used for grouplike-basis convolution.
    Functional pointwise_product(const Functional& o) const;

    bool operator==(const Functional& o) const;
    bool operator!=(const Functional& o) const { return !(*this == o); }

    /// Arity-0 functionals are scalars.
    static Functional scalar(const CycNum& c);

  private:
    void rebuild_supports();

    int arity_;
    unsigned dim_;
    std::unordered_map<PackedTuple, CycNum> vals_;
    std::vector<std::vector<std::uint64_t>> slot_support_;  // [slot][word]
    friend class ConvolutionPlan;
};

struct DeltaTerm {
    Idx j, k;
    CycNum c;
};

/// Coalgebra (H, Delta, eps) with multiplication m and unit u given by
/// sparse structure constants over a fixed basis. Immutable once built;
/// verifier loops share it read-only (call precompute_delta first when
/// running parallel loops).
class StructuredCoalgebra {
  public:
    StructuredCoalgebra() = default;
    StructuredCoalgebra(const StructuredCoalgebra& o);
    StructuredCoalgebra& operator=(const StructuredCoalgebra& o);
    StructuredCoalgebra(StructuredCoalgebra&& o) noexcept;
    StructuredCoalgebra& operator=(StructuredCoalgebra&& o) noexcept;

    unsigned dim = 0;
    unsigned conductor = 1;
    std::vector<std::string> labels;
    std::vector<std::vector<DeltaTerm>> delta;                   // delta[i] = sum e_j (x) e_k
    std::vector<CycNum> counit;                                  // eps(e_i)
    std::vector<std::vector<std::pair<Idx, CycNum>>> mul;        // mul[i*dim+j] = m(e_i (x) e_j)
    std::vector<CycNum> unit;                                    // u(1) coefficients

    const std::vector<std::pair<Idx, CycNum>>& mul_at(Idx i, Idx j) const {
        return mul[static_cast<size_t>(i) * dim + j];
    }

    /// m extended to sparse arity-1 elements.
    TensorElement multiply(const TensorElement& a, const TensorElement& b) const;
    TensorElement unit_element() const;
    CycNum counit_of(const TensorElement& x) const;

    /// Iterated coproduct of e_i into `parts` tensor factors (left-nested;
    /// coassociativity makes the bracketing immaterial). Cached.
    const TensorElement& delta_parts(Idx i, int parts) const;
    /// Fill the coproduct cache up to max_parts for every basis element.
    void precompute_delta(int max_parts) const;

    bool is_grouplike(Idx i) const;
    bool is_grouplike_basis() const;
    /// Indices of basis grouplikes.
    std::vector<Idx> grouplike_basis_indices() const;

    /// k-th power of a basis element under m; throws unless every
    /// intermediate power is again a single basis element with
    /// coefficient 1 (grouplike powers in all uses here).
    Idx basis_power(Idx i, unsigned k) const;

    std::string label_tuple(PackedTuple t, int arity) const;

  private:
    mutable std::mutex cache_mutex_;
    mutable std::vector<std::vector<TensorElement>> delta_cache_;  // [parts-1][i]
};

/// Counit power eps^{(x)k}, the convolution unit of arity k.
Functional counit_power(const StructuredCoalgebra& H, int k);

/// Convolution (f*g)(x) = f(x_(1)) g(x_(2)) on the componentwise coproduct
/// of H^{(x)k}. Throws on arity mismatch.
Functional convolve(const Functional& f, const Functional& g, const StructuredCoalgebra& H);

/// Lazy evaluator for (f_1 * f_2 * ... * f_p)(x) with per-slot support
/// pruning; the instrument behind the exhaustive axiom loops.
class ConvolutionPlan {
  public:
    ConvolutionPlan(const StructuredCoalgebra& H, std::vector<const Functional*> factors);
    CycNum eval(PackedTuple x) const;
    int arity() const { return arity_; }

  private:
    struct SplitTerm {
        std::array<Idx, 8> part;
        CycNum c;
    };
    const StructuredCoalgebra& H_;
    std::vector<const Functional*> factors_;
    int arity_;
    // filtered[slot][basis] = admissible part-assignments for that slot
    std::vector<std::vector<std::vector<SplitTerm>>> filtered_;
};

/// Convolution inverse: solves f*g = eps^{(x)k} exactly, then verifies the
/// two-sided property. Grouplike bases take the pointwise-reciprocal path.
/// Throws NotConvInvertible when the system is singular (or a value on a
/// grouplike tuple vanishes).
struct NotConvInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
Functional conv_inverse(const Functional& f, const StructuredCoalgebra& H);

/// Exhaustive exact check of all StructuredCoalgebra invariants.
Report check_coalgebra(const StructuredCoalgebra& H, unsigned jobs = 0);

/// Sparse-column linear map between based spaces (used for morphisms).
struct LinearMap {
    unsigned rows = 0, cols = 0;
    std::vector<std::vector<std::pair<Idx, CycNum>>> col;

    static LinearMap identity(unsigned n);
    static LinearMap zero(unsigned rows, unsigned cols);
    void set(Idx row, Idx c, const CycNum& v);
    TensorElement apply_basis(Idx j) const;
    TensorElement apply(const TensorElement& x) const;  // arity-1
    LinearMap compose(const LinearMap& inner) const;    // this . inner
    LinearMap tensor(const LinearMap& o) const;         // row/col index: this-major
    bool operator==(const LinearMap& o) const;
};

}  // namespace quasiline
