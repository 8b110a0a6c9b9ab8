#include "quasiline/coalgebra.hpp"

#include <array>
#include <chrono>
#include <sstream>

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
}  // namespace

// ---------------------------------------------------------------------------
// TensorElement

void TensorElement::add(PackedTuple t, const CycNum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void TensorElement::add_scaled(const TensorElement& o, const CycNum& c) {
    if (c.is_zero()) return;
    for (const auto& [t, v] : o.terms_) add(t, v * c);
}

void TensorElement::scale(const CycNum& c) {
    if (c.is_zero()) {
        terms_.clear();
        return;
    }
    for (auto& [t, v] : terms_) v *= c;
}

void TensorElement::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero()) it = terms_.erase(it);
        else ++it;
    }
}

CycNum TensorElement::coefficient(PackedTuple t) const {
    auto it = terms_.find(t);
    return it == terms_.end() ? CycNum() : it->second;
}

TensorElement TensorElement::tensor(const TensorElement& o) const {
    TensorElement out(arity_ + o.arity_);
    for (const auto& [ta, ca] : terms_)
        for (const auto& [tb, cb] : o.terms_) out.add(tuple_cat(ta, arity_, tb), ca * cb);
    return out;
}

bool TensorElement::operator==(const TensorElement& o) const {
    if (arity_ != o.arity_) return false;
    // Maps are pruned on mutation, but zero coefficients can linger after
    // add() of cancelling terms; compare via difference.
    TensorElement diff = *this;
    for (const auto& [t, v] : o.terms_) diff.add(t, -v);
    diff.prune();
    return diff.is_zero();
}

TensorElement TensorElement::basis(int arity, PackedTuple t) {
    TensorElement e(arity);
    e.add(t, CycNum::one());
    return e;
}

// ---------------------------------------------------------------------------
// Functional

Functional::Functional(int arity, unsigned dim) : arity_(arity), dim_(dim) {
    if (arity < 0 || arity > kMaxArity) throw std::invalid_argument("functional arity out of range");
    slot_support_.assign(static_cast<size_t>(std::max(arity, 1)),
                         std::vector<std::uint64_t>((dim + 63) / 64 + 1, 0));
}

void Functional::set(PackedTuple t, const CycNum& c) {
    if (c.is_zero()) {
        vals_.erase(t);
        return;  // supports stay conservative (never under-approximate)
    }
    vals_[t] = c;
    for (int s = 0; s < std::max(arity_, 1); ++s) {
        Idx i = arity_ == 0 ? 0 : tuple_slot(t, s);
        slot_support_[s][i >> 6] |= std::uint64_t(1) << (i & 63);
    }
}

void Functional::add(PackedTuple t, const CycNum& c) {
    if (c.is_zero()) return;
    auto it = vals_.find(t);
    if (it == vals_.end()) {
        set(t, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) vals_.erase(it);
}

const CycNum& Functional::at(PackedTuple t) const {
    static const CycNum kZero;
    auto it = vals_.find(t);
    return it == vals_.end() ? kZero : it->second;
}

CycNum Functional::apply(const TensorElement& x) const {
    if (x.arity() != arity_) throw std::invalid_argument("apply: arity mismatch");
    CycNum acc;
    for (const auto& [t, c] : x) {
        const CycNum& v = at(t);
        if (!v.is_zero()) acc += v * c;
    }
    return acc;
}

Functional Functional::scaled(const CycNum& c) const {
    Functional out(arity_, dim_);
    if (c.is_zero()) return out;
    for (const auto& [t, v] : vals_) out.set(t, v * c);
    return out;
}

Functional Functional::pointwise_product(const Functional& o) const {
    if (arity_ != o.arity_ || dim_ != o.dim_)
        throw std::invalid_argument("pointwise_product: shape mismatch");
    Functional out(arity_, dim_);
    for (const auto& [t, v] : vals_) {
        const CycNum& w = o.at(t);
        if (!w.is_zero()) out.set(t, v * w);
    }
    return out;
}

bool Functional::operator==(const Functional& o) const {
    if (arity_ != o.arity_) return false;
    for (const auto& [t, v] : vals_)
        if (!(o.at(t) == v)) return false;
    for (const auto& [t, v] : o.vals_)
        if (!(at(t) == v)) return false;
    return true;
}

Functional Functional::scalar(const CycNum& c) {
    Functional f(0, 1);
    f.set(0, c);
    return f;
}

// ---------------------------------------------------------------------------
// StructuredCoalgebra

// The coproduct cache travels with the object; the mutex does not.
StructuredCoalgebra::StructuredCoalgebra(const StructuredCoalgebra& o)
    : dim(o.dim), conductor(o.conductor), labels(o.labels), delta(o.delta), counit(o.counit),
      mul(o.mul), unit(o.unit) {
    std::lock_guard<std::mutex> lock(o.cache_mutex_);
    delta_cache_ = o.delta_cache_;
}

StructuredCoalgebra& StructuredCoalgebra::operator=(const StructuredCoalgebra& o) {
    if (this == &o) return *this;
    dim = o.dim;
    conductor = o.conductor;
    labels = o.labels;
    delta = o.delta;
    counit = o.counit;
    mul = o.mul;
    unit = o.unit;
    std::scoped_lock lock(cache_mutex_, o.cache_mutex_);
    delta_cache_ = o.delta_cache_;
    return *this;
}

StructuredCoalgebra::StructuredCoalgebra(StructuredCoalgebra&& o) noexcept
    : dim(o.dim), conductor(o.conductor), labels(std::move(o.labels)), delta(std::move(o.delta)),
      counit(std::move(o.counit)), mul(std::move(o.mul)), unit(std::move(o.unit)) {
    std::lock_guard<std::mutex> lock(o.cache_mutex_);
    delta_cache_ = std::move(o.delta_cache_);
}

StructuredCoalgebra& StructuredCoalgebra::operator=(StructuredCoalgebra&& o) noexcept {
    if (this == &o) return *this;
    dim = o.dim;
    conductor = o.conductor;
    labels = std::move(o.labels);
    delta = std::move(o.delta);
    counit = std::move(o.counit);
    mul = std::move(o.mul);
    unit = std::move(o.unit);
    std::scoped_lock lock(cache_mutex_, o.cache_mutex_);
    delta_cache_ = std::move(o.delta_cache_);
    return *this;
}

TensorElement StructuredCoalgebra::multiply(const TensorElement& a, const TensorElement& b) const {
    if (a.arity() != 1 || b.arity() != 1) throw std::invalid_argument("multiply: arity-1 only");
    TensorElement out(1);
    for (const auto& [ta, ca] : a) {
        for (const auto& [tb, cb] : b) {
            CycNum c = ca * cb;
            for (const auto& [k, ck] : mul_at(tuple_slot(ta, 0), tuple_slot(tb, 0)))
                out.add(pack1(k), c * ck);
        }
    }
    return out;
}

TensorElement StructuredCoalgebra::unit_element() const {
    TensorElement e(1);
    for (Idx i = 0; i < dim; ++i)
        if (!unit[i].is_zero()) e.add(pack1(i), unit[i]);
    return e;
}

CycNum StructuredCoalgebra::counit_of(const TensorElement& x) const {
    if (x.arity() != 1) throw std::invalid_argument("counit_of: arity-1 only");
    CycNum acc;
    for (const auto& [t, c] : x) acc += counit[tuple_slot(t, 0)] * c;
    return acc;
}

const TensorElement& StructuredCoalgebra::delta_parts(Idx i, int parts) const {
    if (parts < 1 || parts > kMaxArity) throw std::invalid_argument("delta_parts: bad part count");
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        // Fill every level up to `parts`, basis-by-basis, left-nested:
        // expand the first tensor slot by Delta at each step.
        while (delta_cache_.size() < static_cast<size_t>(parts)) {
            int level = static_cast<int>(delta_cache_.size()) + 1;
            std::vector<TensorElement> row;
            row.reserve(dim);
            for (Idx b = 0; b < dim; ++b) {
                if (level == 1) {
                    row.push_back(TensorElement::basis(1, pack1(b)));
                    continue;
                }
                const TensorElement& prev = delta_cache_[level - 2][b];
                TensorElement cur(level);
                for (const auto& [t, c] : prev) {
                    Idx head = tuple_slot(t, 0);
                    PackedTuple tail = subtuple(t, 1, level - 2) << (kSlotBits * 2);
                    for (const auto& dt : delta[head])
                        cur.add(pack2(dt.j, dt.k) | tail, c * dt.c);
                }
                row.push_back(std::move(cur));
            }
            delta_cache_.push_back(std::move(row));
        }
    }
    return delta_cache_[parts - 1][i];
}

void StructuredCoalgebra::precompute_delta(int max_parts) const {
    if (dim == 0) return;
    delta_parts(0, max_parts);
}

bool StructuredCoalgebra::is_grouplike(Idx i) const {
    if (!counit[i].is_one()) return false;
    const auto& d = delta[i];
    return d.size() == 1 && d[0].j == i && d[0].k == i && d[0].c.is_one();
}

bool StructuredCoalgebra::is_grouplike_basis() const {
    for (Idx i = 0; i < dim; ++i)
        if (!is_grouplike(i)) return false;
    return true;
}

std::vector<Idx> StructuredCoalgebra::grouplike_basis_indices() const {
    std::vector<Idx> out;
    for (Idx i = 0; i < dim; ++i)
        if (is_grouplike(i)) out.push_back(i);
    return out;
}

Idx StructuredCoalgebra::basis_power(Idx i, unsigned k) const {
    TensorElement acc = unit_element();
    for (unsigned s = 0; s < k; ++s) acc = multiply(acc, TensorElement::basis(1, pack1(i)));
    acc.prune();
    if (acc.term_count() != 1 || !acc.terms().begin()->second.is_one())
        throw std::domain_error("basis_power: power is not a unimodular basis element");
    return tuple_slot(acc.terms().begin()->first, 0);
}

std::string StructuredCoalgebra::label_tuple(PackedTuple t, int arity) const {
    std::ostringstream os;
    os << "(";
    for (int s = 0; s < arity; ++s) {
        if (s) os << ", ";
        Idx i = tuple_slot(t, s);
        os << (i < labels.size() ? labels[i] : std::to_string(i));
    }
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Convolution

Functional counit_power(const StructuredCoalgebra& H, int k) {
    Functional out(k, H.dim);
    if (k == 0) {
        out.set(0, CycNum::one(H.conductor));
        return out;
    }
    // Cartesian product of the counit support.
    std::vector<Idx> supp;
    for (Idx i = 0; i < H.dim; ++i)
        if (!H.counit[i].is_zero()) supp.push_back(i);
    std::vector<size_t> pos(k, 0);
    while (true) {
        PackedTuple t = 0;
        CycNum v = CycNum::one(H.conductor);
        for (int s = 0; s < k; ++s) {
            Idx i = supp[pos[s]];
            t |= PackedTuple(i) << (kSlotBits * s);
            v *= H.counit[i];
        }
        out.set(t, v);
        int s = 0;
        while (s < k && ++pos[s] == supp.size()) pos[s++] = 0;
        if (s == k) break;
    }
    return out;
}

Functional convolve(const Functional& f, const Functional& g, const StructuredCoalgebra& H) {
    if (f.arity() != g.arity()) throw std::invalid_argument("convolve: arity mismatch");
    int k = f.arity();
    Functional out(k, H.dim);
    if (k == 0) {
        out.set(0, f.at(0) * g.at(0));
        return out;
    }
    ConvolutionPlan plan(H, {&f, &g});
    std::uint64_t total = ipow(H.dim, k);
    for (std::uint64_t n = 0; n < total; ++n) {
        PackedTuple x = nth_tuple(n, H.dim, k);
        CycNum v = plan.eval(x);
        if (!v.is_zero()) out.set(x, v);
    }
    return out;
}

ConvolutionPlan::ConvolutionPlan(const StructuredCoalgebra& H,
                                 std::vector<const Functional*> factors)
    : H_(H), factors_(std::move(factors)) {
    if (factors_.empty()) throw std::invalid_argument("ConvolutionPlan: no factors");
    arity_ = factors_[0]->arity();
    for (const auto* f : factors_)
        if (f->arity() != arity_) throw std::invalid_argument("ConvolutionPlan: arity mismatch");
    int p = static_cast<int>(factors_.size());
    H_.precompute_delta(p);
    filtered_.assign(arity_, std::vector<std::vector<SplitTerm>>(H_.dim));
    for (int s = 0; s < arity_; ++s) {
        for (Idx e = 0; e < H_.dim; ++e) {
            const TensorElement& parts = H_.delta_parts(e, p);
            for (const auto& [t, c] : parts) {
                bool keep = true;
                SplitTerm st;
                st.c = c;
                for (int m = 0; m < p; ++m) {
                    Idx part = tuple_slot(t, m);
                    st.part[m] = part;
                    if (!factors_[m]->slot_supported(s, part)) {
                        keep = false;
                        break;
                    }
                }
                if (keep) filtered_[s][e].push_back(std::move(st));
            }
        }
    }
}

CycNum ConvolutionPlan::eval(PackedTuple x) const {
    int p = static_cast<int>(factors_.size());
    std::array<const std::vector<SplitTerm>*, 8> lists;
    CycNum total;
    for (int s = 0; s < arity_; ++s) {
        lists[s] = &filtered_[s][tuple_slot(x, s)];
        if (lists[s]->empty()) return total;  // every split hits a zero factor
    }
    // Depth-first over slots; factor tuples are assembled componentwise.
    std::array<PackedTuple, 8> ft{};
    auto descend = [&](auto&& self, int s, const CycNum& coeff) -> void {
        if (s == arity_) {
            CycNum v = coeff;
            for (int m = 0; m < p; ++m) {
                v *= factors_[m]->at(ft[m]);
                if (v.is_zero()) return;
            }
            total += v;
            return;
        }
        for (const SplitTerm& st : *lists[s]) {
            for (int m = 0; m < p; ++m) ft[m] = tuple_with(ft[m], s, st.part[m]);
            self(self, s + 1, coeff * st.c);
        }
    };
    descend(descend, 0, CycNum::one(H_.conductor));
    return total;
}

// ---------------------------------------------------------------------------
// Convolution inverse

namespace {

// Exact sparse Gaussian elimination over Q(zeta_N); returns empty optional
// when the system is singular.
std::optional<std::vector<CycNum>> solve_exact_sparse(
    std::uint64_t n, std::vector<std::map<std::uint64_t, CycNum>> rows,
    std::vector<CycNum> rhs) {
    std::vector<std::int64_t> pivot_row_of_col(n, -1);
    std::vector<bool> row_used(n, false);
    for (std::uint64_t step = 0; step < n; ++step) {
        // Pick the sparsest unused row, then its first nonzero column.
        std::int64_t best = -1;
        size_t best_nnz = SIZE_MAX;
        for (std::uint64_t r = 0; r < n; ++r) {
            if (row_used[r]) continue;
            size_t nnz = rows[r].size();
            if (nnz > 0 && nnz < best_nnz) {
                best_nnz = nnz;
                best = static_cast<std::int64_t>(r);
            }
        }
        if (best < 0) return std::nullopt;  // remaining rows are zero: singular
        std::uint64_t r = static_cast<std::uint64_t>(best);
        std::uint64_t pcol = rows[r].begin()->first;
        CycNum pval = rows[r].begin()->second;
        CycNum pinv = pval.inverse();
        for (auto& [c, v] : rows[r]) v *= pinv;
        rhs[r] *= pinv;
        row_used[r] = true;
        pivot_row_of_col[pcol] = static_cast<std::int64_t>(r);
        for (std::uint64_t r2 = 0; r2 < n; ++r2) {
            if (r2 == r) continue;
            auto it = rows[r2].find(pcol);
            if (it == rows[r2].end()) continue;
            CycNum factor = it->second;
            rows[r2].erase(it);
            for (const auto& [c, v] : rows[r]) {
                if (c == pcol) continue;
                auto [jt, ins] = rows[r2].try_emplace(c, CycNum());
                jt->second -= factor * v;
                if (jt->second.is_zero()) rows[r2].erase(jt);
            }
            rhs[r2] -= factor * rhs[r];
        }
    }
    std::vector<CycNum> x(n);
    for (std::uint64_t c = 0; c < n; ++c) {
        if (pivot_row_of_col[c] < 0) return std::nullopt;
        x[c] = rhs[static_cast<std::uint64_t>(pivot_row_of_col[c])];
    }
    return x;
}

}  // namespace

Functional conv_inverse(const Functional& f, const StructuredCoalgebra& H) {
    int k = f.arity();
    if (k == 0) {
        CycNum v = f.at(0);
        if (v.is_zero()) throw NotConvInvertible("scalar functional is zero");
        return Functional::scalar(v.inverse());
    }
    std::uint64_t total = ipow(H.dim, k);
    Functional eps = counit_power(H, k);
    if (H.is_grouplike_basis()) {
        // (f*g)(t) = f(t) g(t) on grouplike tuples: pointwise reciprocal.
        Functional out(k, H.dim);
        for (std::uint64_t nth = 0; nth < total; ++nth) {
            PackedTuple t = nth_tuple(nth, H.dim, k);
            const CycNum& v = f.at(t);
            if (v.is_zero()) throw NotConvInvertible("vanishing value on a grouplike tuple");
            out.set(t, v.inverse());
        }
        return out;
    }
    // Linear system f*g = eps^{(x)k} in the d^k unknown values of g.
    H.precompute_delta(2);
    std::vector<std::map<std::uint64_t, CycNum>> rows(total);
    std::vector<CycNum> rhs(total);
    for (std::uint64_t nth = 0; nth < total; ++nth) {
        PackedTuple x = nth_tuple(nth, H.dim, k);
        rhs[nth] = eps.at(x);
        // Enumerate 2-splits; coefficient of unknown y is sum f(first) * c.
        std::array<const TensorElement*, 8> split;
        for (int s = 0; s < k; ++s) split[s] = &H.delta_parts(tuple_slot(x, s), 2);
        std::array<std::map<PackedTuple, CycNum>::const_iterator, 8> it;
        for (int s = 0; s < k; ++s) it[s] = split[s]->terms().begin();
        while (true) {
            PackedTuple first = 0, second = 0;
            CycNum c = CycNum::one(H.conductor);
            for (int s = 0; s < k; ++s) {
                first |= PackedTuple(tuple_slot(it[s]->first, 0)) << (kSlotBits * s);
                second |= PackedTuple(tuple_slot(it[s]->first, 1)) << (kSlotBits * s);
                c *= it[s]->second;
            }
            const CycNum& fv = f.at(first);
            if (!fv.is_zero()) {
                std::uint64_t ycol = 0, mulp = 1;
                for (int s = 0; s < k; ++s) {
                    ycol += tuple_slot(second, s) * mulp;
                    mulp *= H.dim;
                }
                auto [jt, ins] = rows[nth].try_emplace(ycol, CycNum());
                jt->second += fv * c;
                if (jt->second.is_zero()) rows[nth].erase(jt);
            }
            int s = 0;
            while (s < k && ++it[s] == split[s]->terms().end()) it[s++] = split[s]->terms().begin();
            if (s == k) break;
        }
    }
    auto sol = solve_exact_sparse(total, std::move(rows), std::move(rhs));
    if (!sol) throw NotConvInvertible("singular convolution system");
    Functional g(k, H.dim);
    for (std::uint64_t nth = 0; nth < total; ++nth) {
        if (!(*sol)[nth].is_zero()) g.set(nth_tuple(nth, H.dim, k), (*sol)[nth]);
    }
    // Two-sided verification.
    if (!(convolve(f, g, H) == eps) || !(convolve(g, f, H) == eps))
        throw NotConvInvertible("solution not a two-sided inverse");
    return g;
}

// ---------------------------------------------------------------------------
// check_coalgebra

Report check_coalgebra(const StructuredCoalgebra& H, unsigned jobs) {
    Report rep;
    rep.title = "coalgebra with multiplication and unit";
    auto t0 = std::chrono::steady_clock::now();

    {
        auto& item = rep.add("coassociativity");
        for (Idx i = 0; i < H.dim && item.pass; ++i) {
            TensorElement left(3), right(3);
            for (const auto& dt : H.delta[i]) {
                for (const auto& in : H.delta[dt.j]) left.add(pack3(in.j, in.k, dt.k), dt.c * in.c);
                for (const auto& in : H.delta[dt.k]) right.add(pack3(dt.j, in.j, in.k), dt.c * in.c);
            }
            if (!(left == right)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(i), 1);
            }
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("counit laws");
        for (Idx i = 0; i < H.dim && item.pass; ++i) {
            TensorElement left(1), right(1);
            for (const auto& dt : H.delta[i]) {
                left.add(pack1(dt.k), dt.c * H.counit[dt.j]);
                right.add(pack1(dt.j), dt.c * H.counit[dt.k]);
            }
            TensorElement self = TensorElement::basis(1, pack1(i));
            if (!(left == self) || !(right == self)) {
                item.pass = false;
                item.counterexample = H.label_tuple(pack1(i), 1);
            }
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("multiplication is a coalgebra map");
        for (Idx i = 0; i < H.dim && item.pass; ++i) {
            for (Idx j = 0; j < H.dim && item.pass; ++j) {
                TensorElement lhs(2);
                for (const auto& [k, c] : H.mul_at(i, j))
                    for (const auto& dt : H.delta[k]) lhs.add(pack2(dt.j, dt.k), c * dt.c);
                TensorElement rhs(2);
                for (const auto& di : H.delta[i]) {
                    for (const auto& dj : H.delta[j]) {
                        CycNum c = di.c * dj.c;
                        for (const auto& [a, ca] : H.mul_at(di.j, dj.j))
                            for (const auto& [b, cb] : H.mul_at(di.k, dj.k))
                                rhs.add(pack2(a, b), c * ca * cb);
                    }
                }
                CycNum el;
                for (const auto& [k, c] : H.mul_at(i, j)) el += c * H.counit[k];
                bool eps_ok = el == H.counit[i] * H.counit[j];
                if (!(lhs == rhs) || !eps_ok) {
                    item.pass = false;
                    item.counterexample = H.label_tuple(pack2(i, j), 2);
                }
            }
        }
        item.millis = ms_since(t0);
    }

    t0 = std::chrono::steady_clock::now();
    {
        auto& item = rep.add("unit is a coalgebra map");
        TensorElement one = H.unit_element();
        TensorElement lhs(2);
        for (const auto& [t, c] : one)
            for (const auto& dt : H.delta[tuple_slot(t, 0)]) lhs.add(pack2(dt.j, dt.k), c * dt.c);
        if (!(lhs == one.tensor(one)) || !H.counit_of(one).is_one()) {
            item.pass = false;
            item.counterexample = "u(1)";
        }
        item.millis = ms_since(t0);
    }

    (void)jobs;
    return rep;
}

// ---------------------------------------------------------------------------
// LinearMap

LinearMap LinearMap::identity(unsigned n) {
    LinearMap m;
    m.rows = m.cols = n;
    m.col.resize(n);
    for (Idx j = 0; j < n; ++j) m.col[j].push_back({j, CycNum::one()});
    return m;
}

LinearMap LinearMap::zero(unsigned rows, unsigned cols) {
    LinearMap m;
    m.rows = rows;
    m.cols = cols;
    m.col.resize(cols);
    return m;
}

void LinearMap::set(Idx row, Idx c, const CycNum& v) {
    for (auto& [r, val] : col[c]) {
        if (r == row) {
            val = v;
            return;
        }
    }
    if (!v.is_zero()) col[c].push_back({row, v});
}

TensorElement LinearMap::apply_basis(Idx j) const {
    TensorElement out(1);
    for (const auto& [r, v] : col[j]) out.add(pack1(r), v);
    return out;
}

TensorElement LinearMap::apply(const TensorElement& x) const {
    if (x.arity() != 1) throw std::invalid_argument("LinearMap::apply: arity-1 only");
    TensorElement out(1);
    for (const auto& [t, c] : x)
        for (const auto& [r, v] : col[tuple_slot(t, 0)]) out.add(pack1(r), c * v);
    return out;
}

LinearMap LinearMap::compose(const LinearMap& inner) const {
    if (cols != inner.rows) throw std::invalid_argument("compose: shape mismatch");
    LinearMap out = zero(rows, inner.cols);
    for (Idx j = 0; j < inner.cols; ++j) {
        std::map<Idx, CycNum> acc;
        for (const auto& [mid, v] : inner.col[j])
            for (const auto& [r, w] : col[mid]) {
                auto [it, ins] = acc.try_emplace(r, CycNum());
                it->second += v * w;
            }
        for (auto& [r, v] : acc)
            if (!v.is_zero()) out.col[j].push_back({r, v});
    }
    return out;
}

LinearMap LinearMap::tensor(const LinearMap& o) const {
    LinearMap out = zero(rows * o.rows, cols * o.cols);
    for (Idx j1 = 0; j1 < cols; ++j1)
        for (Idx j2 = 0; j2 < o.cols; ++j2) {
            auto& c = out.col[static_cast<size_t>(j1) * o.cols + j2];
            for (const auto& [r1, v1] : col[j1])
                for (const auto& [r2, v2] : o.col[j2])
                    c.push_back({r1 * o.rows + r2, v1 * v2});
        }
    return out;
}

bool LinearMap::operator==(const LinearMap& o) const {
    if (rows != o.rows || cols != o.cols) return false;
    for (Idx j = 0; j < cols; ++j)
        if (!(apply_basis(j) == o.apply_basis(j))) return false;
    return true;
}

}  // namespace quasiline
