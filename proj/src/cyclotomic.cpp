#include "quasiline/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace quasiline {

namespace {

// Dense polynomial helpers over Q, coefficient of X^i at index i.
using Poly = std::vector<Rational>;

void poly_trim(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

// Exact division; remainder must vanish.
Poly poly_divide_exact(const Poly& num, const Poly& den) {
    Poly rem = num;
    poly_trim(rem);
    Poly d = den;
    poly_trim(d);
    if (d.empty()) throw std::domain_error("polynomial division by zero");
    Poly quot(rem.size() >= d.size() ? rem.size() - d.size() + 1 : 0, Rational(0));
    while (rem.size() >= d.size()) {
        Rational f = rem.back() / d.back();
        size_t shift = rem.size() - d.size();
        quot[shift] = f;
        for (size_t i = 0; i < d.size(); ++i) rem[shift + i] -= f * d[i];
        poly_trim(rem);
    }
    if (!rem.empty()) throw std::domain_error("polynomial division was not exact");
    return quot;
}

// Phi_n by dividing X^n - 1 by the cyclotomic polynomials of the proper
// divisors of n (recursion grounded at Phi_1 = X - 1).
Poly cyclotomic_poly(unsigned n, std::map<unsigned, Poly>& memo) {
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    Poly num(n + 1, Rational(0));
    num[0] = Rational(-1);
    num[n] = Rational(1);
    Poly result = num;
    for (unsigned d = 1; d < n; ++d) {
        if (n % d == 0) {
            result = poly_divide_exact(result, cyclotomic_poly(d, memo));
        }
    }
    memo.emplace(n, result);
    return result;
}

std::mutex g_field_mutex;
std::map<unsigned, std::shared_ptr<const CycField>>& field_registry() {
    static std::map<unsigned, std::shared_ptr<const CycField>> reg;
    return reg;
}

}  // namespace

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    unsigned m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

CycField::CycField(unsigned conductor) : conductor_(conductor) {
    if (conductor == 0) throw std::domain_error("conductor must be positive");
    std::map<unsigned, Poly> memo;
    modulus_ = cyclotomic_poly(conductor, memo);
    degree_ = static_cast<unsigned>(modulus_.size()) - 1;
    // X^(degree+k) mod Phi: row 0 is X^degree, each next row multiplies by X.
    if (degree_ >= 1) {
        std::vector<Rational> cur(degree_, Rational(0));
        // X^degree = -(Phi - X^degree) since Phi is monic.
        for (unsigned i = 0; i < degree_; ++i) cur[i] = -modulus_[i];
        reduction_.push_back(cur);
        for (unsigned k = 1; k + 1 < degree_; ++k) {
            std::vector<Rational> next(degree_, Rational(0));
            Rational top = cur[degree_ - 1];
            for (unsigned i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
            next[0] = 0;
            if (sgn(top) != 0) {
                for (unsigned i = 0; i < degree_; ++i) next[i] += top * reduction_[0][i];
            }
            reduction_.push_back(next);
            cur = std::move(next);
        }
    }
}

std::shared_ptr<const CycField> CycField::get(unsigned conductor) {
    std::lock_guard<std::mutex> lock(g_field_mutex);
    auto& reg = field_registry();
    auto it = reg.find(conductor);
    if (it != reg.end()) return it->second;
    auto field = std::shared_ptr<const CycField>(new CycField(conductor));
    reg.emplace(conductor, field);
    return field;
}

CycNum::CycNum() : CycNum(Rational(0), 1) {}

CycNum::CycNum(Rational r, unsigned conductor)
    : field_(CycField::get(conductor)), c_(field_->degree(), Rational(0)) {
    r.canonicalize();
    c_[0] = std::move(r);
}

CycNum::CycNum(long v, unsigned conductor) : CycNum(Rational(v), conductor) {}

CycNum::CycNum(std::shared_ptr<const CycField> f, std::vector<Rational> c)
    : field_(std::move(f)), c_(std::move(c)) {}

CycNum CycNum::zero(unsigned conductor) { return CycNum(Rational(0), conductor); }
CycNum CycNum::one(unsigned conductor) { return CycNum(Rational(1), conductor); }

CycNum CycNum::from_coeffs(unsigned conductor, std::vector<Rational> coeffs) {
    auto field = CycField::get(conductor);
    if (coeffs.size() != field->degree())
        throw std::invalid_argument("coefficient vector length must equal phi(conductor)");
    for (auto& r : coeffs) r.canonicalize();
    return CycNum(std::move(field), std::move(coeffs));
}

CycNum CycNum::root_of_unity(unsigned N, long k) {
    if (N == 0) throw std::domain_error("root_of_unity: N must be positive");
    long r = k % static_cast<long>(N);
    if (r < 0) r += N;
    auto field = CycField::get(N);
    unsigned deg = field->degree();
    if (deg == 1) {
        // Q(zeta_1) = Q(zeta_2) = Q: zeta is 1 or -1.
        return CycNum(Rational((N == 2 && r == 1) ? -1 : 1), N);
    }
    std::vector<Rational> c(deg, Rational(0));
    if (static_cast<unsigned>(r) < deg) {
        c[static_cast<size_t>(r)] = Rational(1);
        return CycNum(std::move(field), std::move(c));
    }
    // X^r with r >= phi(N): power up the generator.
    c[1] = Rational(1);
    return CycNum(std::move(field), std::move(c)).pow(r);
}

bool CycNum::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

bool CycNum::is_one() const {
    if (sgn(c_[0] - 1) != 0) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

bool CycNum::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (sgn(c_[i]) != 0) return false;
    return true;
}

Rational CycNum::rational_value() const {
    if (!is_rational()) throw std::domain_error("value is not rational");
    return c_[0];
}

CycNum CycNum::lifted(unsigned M) const {
    unsigned N = conductor();
    if (M == N) return *this;
    if (M % N != 0) throw std::invalid_argument("lifted: target conductor must be a multiple");
    // zeta_N = zeta_M^(M/N); substitute X -> X^(M/N).
    unsigned step = M / N;
    CycNum zeta_step = root_of_unity(M, step);
    CycNum acc = zero(M);
    CycNum power = one(M);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) != 0) acc += CycNum(c_[i], M) * power;
        if (i + 1 < c_.size()) power *= zeta_step;
    }
    return acc;
}

CycNum CycNum::operator-() const {
    CycNum r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

namespace {
unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }
}  // namespace

CycNum& CycNum::operator+=(const CycNum& o) {
    if (field_ != o.field_ && conductor() != o.conductor()) {
        unsigned m = lcm_u(conductor(), o.conductor());
        *this = lifted(m);
        return *this += o.lifted(m);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) {
    if (field_ != o.field_ && conductor() != o.conductor()) {
        unsigned m = lcm_u(conductor(), o.conductor());
        *this = lifted(m);
        return *this -= o.lifted(m);
    }
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

void CycNum::reduce_product(std::vector<Rational>& prod) {
    unsigned deg = degree();
    // prod has length <= 2*deg-1; fold the high part through reduction rows.
    for (size_t k = prod.size(); k-- > deg;) {
        if (sgn(prod[k]) == 0) continue;
        const auto& row = field_->reduction_row(static_cast<unsigned>(k - deg));
        for (unsigned i = 0; i < deg; ++i) prod[i] += prod[k] * row[i];
        prod[k] = 0;
    }
    prod.resize(deg);
}

CycNum& CycNum::operator*=(const CycNum& o) {
    if (field_ != o.field_ && conductor() != o.conductor()) {
        unsigned m = lcm_u(conductor(), o.conductor());
        *this = lifted(m);
        return *this *= o.lifted(m);
    }
    unsigned deg = degree();
    std::vector<Rational> prod(2 * deg - 1, Rational(0));
    for (unsigned i = 0; i < deg; ++i) {
        if (sgn(c_[i]) == 0) continue;
        for (unsigned j = 0; j < deg; ++j) {
            if (sgn(o.c_[j]) == 0) continue;
            prod[i + j] += c_[i] * o.c_[j];
        }
    }
    reduce_product(prod);
    c_ = std::move(prod);
    return *this;
}

CycNum CycNum::inverse() const {
    if (is_zero()) throw std::domain_error("inverse of zero");
    // Extended Euclid in Q[X] against Phi_N, which is irreducible,
    // so gcd(f, Phi_N) = 1 for every nonzero f of smaller degree.
    Poly r0(field_->modulus());
    Poly r1(c_);
    poly_trim(r1);
    Poly s0{};          // coefficient of f in r0 = Phi
    Poly s1{Rational(1)};  // coefficient of f in r1 = f
    while (!r1.empty()) {
        // r0 = q*r1 + r; update (r0, s0) <- (r1, s1), (r1, s1) <- (r, s0 - q*s1)
        Poly rem = r0;
        Poly q(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, Rational(0));
        while (rem.size() >= r1.size() && !rem.empty()) {
            Rational f = rem.back() / r1.back();
            size_t shift = rem.size() - r1.size();
            q[shift] += f;
            for (size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
            poly_trim(rem);
        }
        Poly s_new = s0;
        // s_new -= q * s1
        if (!q.empty() && !s1.empty()) {
            s_new.resize(std::max(s_new.size(), q.size() + s1.size() - 1), Rational(0));
            for (size_t i = 0; i < q.size(); ++i) {
                if (sgn(q[i]) == 0) continue;
                for (size_t j = 0; j < s1.size(); ++j) s_new[i + j] -= q[i] * s1[j];
            }
        }
        poly_trim(s_new);
        r0 = std::move(r1);
        s0 = std::move(s1);
        r1 = std::move(rem);
        s1 = std::move(s_new);
    }
    // r0 is the gcd (a nonzero constant); inverse = s0 / r0 mod Phi.
    if (r0.size() != 1) throw std::domain_error("not invertible modulo Phi_N");
    std::vector<Rational> inv(degree(), Rational(0));
    for (size_t i = 0; i < s0.size() && i < inv.size(); ++i) inv[i] = s0[i] / r0[0];
    if (s0.size() > degree()) {
        // Cannot happen: deg(s0) < deg(Phi). Guard anyway.
        throw std::logic_error("inverse exceeded field degree");
    }
    return CycNum(field_, std::move(inv));
}

CycNum CycNum::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycNum base = *this;
    CycNum acc = one(conductor());
    unsigned long n = static_cast<unsigned long>(e);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

std::optional<unsigned> CycNum::multiplicative_order() const {
    if (is_zero()) throw std::domain_error("multiplicative order of zero");
    unsigned bound = 2 * conductor();
    CycNum acc = *this;
    for (unsigned t = 1; t <= bound; ++t) {
        if (acc.is_one()) return t;
        acc *= *this;
    }
    return std::nullopt;
}

bool CycNum::operator==(const CycNum& o) const {
    if (conductor() == o.conductor()) {
        for (size_t i = 0; i < c_.size(); ++i)
            if (sgn(c_[i] - o.c_[i]) != 0) return false;
        return true;
    }
    unsigned m = lcm_u(conductor(), o.conductor());
    return lifted(m) == o.lifted(m);
}

std::string CycNum::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (sgn(c_[i]) == 0) continue;
        Rational a = c_[i];
        if (first) {
            if (sgn(a) < 0) os << "-";
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
        }
        Rational mag = abs(a);
        if (i == 0) {
            os << mag.get_str();
        } else {
            if (sgn(mag - 1) != 0) os << mag.get_str() << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

CycNum q_binom(unsigned n, unsigned i, const CycNum& q) {
    if (i > n) throw std::domain_error("q_binom: require i <= n");
    // Row-by-row q-Pascal: [n i] = [n-1 i-1] + q^i [n-1 i].
    unsigned cond = q.conductor();
    std::vector<CycNum> row{CycNum::one(cond)};
    std::vector<CycNum> qpow(n + 1, CycNum::one(cond));
    for (unsigned k = 1; k <= n; ++k) qpow[k] = qpow[k - 1] * q;
    for (unsigned m = 1; m <= n; ++m) {
        std::vector<CycNum> next(m + 1, CycNum::zero(cond));
        for (unsigned j = 0; j <= m; ++j) {
            if (j > 0) next[j] += row[j - 1];
            if (j < m) next[j] += qpow[j] * row[j];
        }
        row = std::move(next);
    }
    return row[i];
}

Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational string: " + s);
    r.canonicalize();
    return r;
}

std::string rational_to_string(const Rational& r) { return r.get_str(); }

}  // namespace quasiline
