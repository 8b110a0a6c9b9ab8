#include <doctest.h>

#include <random>

#include "quasiline/coalgebra.hpp"
#include "quasiline/group_dqb.hpp"

using namespace quasiline;

namespace {

StructuredCoalgebra cyclic_coalgebra(unsigned n, unsigned conductor) {
    return group_coalgebra(cyclic_group(n), conductor);
}

Functional random_functional(std::mt19937_64& rng, const StructuredCoalgebra& H, int arity) {
    std::uniform_int_distribution<long> exp_dist(0, H.conductor - 1);
    std::uniform_int_distribution<int> zero_dist(0, 3);
    Functional f(arity, H.dim);
    std::uint64_t total = 1;
    for (int s = 0; s < arity; ++s) total *= H.dim;
    for (std::uint64_t nth = 0; nth < total; ++nth) {
        PackedTuple t = 0;
        std::uint64_t v = nth;
        for (int s = 0; s < arity; ++s) {
            t |= PackedTuple(v % H.dim) << (kSlotBits * s);
            v /= H.dim;
        }
        if (zero_dist(rng) == 0) continue;  // leave a few zeros in
        f.set(t, CycNum::root_of_unity(H.conductor, exp_dist(rng)));
    }
    return f;
}

}  // namespace

TEST_CASE("group coalgebra passes all checks") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    Report rep = check_coalgebra(H);
    CHECK(rep.ok());
    CHECK(H.is_grouplike_basis());
}

TEST_CASE("corrupted delta entry is reported at a named triple") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    // Delta(c) := c (x) c + c (x) c^2 breaks coassociativity at c
    H.delta[1].push_back(DeltaTerm{1, 2, CycNum::one(9)});
    Report rep = check_coalgebra(H);
    CHECK(!rep.ok());
    const CheckItem* coassoc = rep.find("coassociativity");
    REQUIRE(coassoc != nullptr);
    CHECK(!coassoc->pass);
    CHECK(coassoc->counterexample == "(c)");
}

TEST_CASE("iterated delta") {
    StructuredCoalgebra H = cyclic_coalgebra(4, 16);
    // grouplike basis: Delta^2(g) = g (x) g (x) g
    const TensorElement& d3 = H.delta_parts(1, 3);
    CHECK(d3.term_count() == 1);
    CHECK(d3.coefficient(pack3(1, 1, 1)).is_one());
    // parts = 1 is the element itself
    CHECK(H.delta_parts(2, 1) == TensorElement::basis(1, pack1(2)));
}

TEST_CASE("applying the counit to one slot of an iterated delta drops a part") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    for (Idx i = 0; i < H.dim; ++i) {
        for (int parts = 2; parts <= 4; ++parts) {
            const TensorElement& big = H.delta_parts(i, parts);
            for (int drop = 0; drop < parts; ++drop) {
                TensorElement reduced(parts - 1);
                for (const auto& [t, c] : big) {
                    PackedTuple rest = 0;
                    int out = 0;
                    for (int s = 0; s < parts; ++s) {
                        if (s == drop) continue;
                        rest |= PackedTuple(tuple_slot(t, s)) << (kSlotBits * out++);
                    }
                    reduced.add(rest, c * H.counit[tuple_slot(t, drop)]);
                }
                CHECK(reduced == H.delta_parts(i, parts - 1));
            }
        }
    }
}

TEST_CASE("convolution unit and pointwise rule on grouplikes") {
    StructuredCoalgebra H = cyclic_coalgebra(4, 16);
    std::mt19937_64 rng(42);
    for (int arity = 1; arity <= 3; ++arity) {
        Functional f = random_functional(rng, H, arity);
        Functional eps = counit_power(H, arity);
        CHECK(convolve(eps, f, H) == f);
        CHECK(convolve(f, eps, H) == f);
        // on a grouplike basis convolution is the pointwise product
        Functional g = random_functional(rng, H, arity);
        CHECK(convolve(f, g, H) == f.pointwise_product(g));
    }
}

TEST_CASE("convolution is associative on random functionals") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    std::mt19937_64 rng(7);
    for (int arity = 1; arity <= 3; ++arity) {
        for (int trial = 0; trial < 3; ++trial) {
            Functional f = random_functional(rng, H, arity);
            Functional g = random_functional(rng, H, arity);
            Functional h = random_functional(rng, H, arity);
            CHECK(convolve(convolve(f, g, H), h, H) == convolve(f, convolve(g, h, H), H));
        }
    }
}

TEST_CASE("conv_inverse on grouplike bases is the pointwise reciprocal") {
    StructuredCoalgebra H = cyclic_coalgebra(2, 4);
    Functional omega = omega_zeta(2, 1);
    Functional inv = conv_inverse(omega, H);
    for (const auto& [t, v] : omega.values()) CHECK(inv.at(t) == v.inverse());
    CHECK(convolve(omega, inv, H) == counit_power(H, 3));
}

TEST_CASE("conv_inverse of the unit functional is itself") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    for (int arity = 1; arity <= 3; ++arity) {
        Functional eps = counit_power(H, arity);
        CHECK(conv_inverse(eps, H) == eps);
    }
}

TEST_CASE("conv_inverse is an involution where defined") {
    StructuredCoalgebra H = cyclic_coalgebra(4, 16);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 3; ++trial) {
        Functional f = random_functional(rng, H, 2);
        // make every grouplike value nonzero so f is invertible
        std::uint64_t total = static_cast<std::uint64_t>(H.dim) * H.dim;
        for (std::uint64_t nth = 0; nth < total; ++nth) {
            PackedTuple t = PackedTuple(nth % H.dim) | (PackedTuple(nth / H.dim) << kSlotBits);
            if (f.at(t).is_zero()) f.set(t, CycNum::one(H.conductor));
        }
        CHECK(conv_inverse(conv_inverse(f, H), H) == f);
    }
}

TEST_CASE("conv_inverse reports non-invertible functionals") {
    StructuredCoalgebra H = cyclic_coalgebra(2, 4);
    Functional f(1, H.dim);
    f.set(pack1(0), CycNum::one(4));  // vanishes on the grouplike c
    CHECK_THROWS_AS((void)conv_inverse(f, H), NotConvInvertible);
}

TEST_CASE("functional apply extends linearly") {
    StructuredCoalgebra H = cyclic_coalgebra(3, 9);
    Functional f(1, H.dim);
    f.set(pack1(1), CycNum(2, 9));
    TensorElement x(1);
    x.add(pack1(1), CycNum(3, 9));
    x.add(pack1(2), CycNum(5, 9));
    CHECK(f.apply(x) == CycNum(6, 9));
}

TEST_CASE("linear map compose and tensor") {
    LinearMap id2 = LinearMap::identity(2);
    LinearMap swap = LinearMap::zero(2, 2);
    swap.set(0, 1, CycNum::one());
    swap.set(1, 0, CycNum::one());
    CHECK(swap.compose(swap) == id2);
    LinearMap big = swap.tensor(id2);
    // (e1 (x) e0) -> (e0 (x) e0): column 1*2+0 = 2 maps to row 0
    CHECK(big.apply_basis(2) == TensorElement::basis(1, pack1(0)));
}
