#pragma once

// Local cyclic algebra B = (E/F, tau, pi) = sum_i E u^i with u^n = pi and
// u x = tau(x) u, where E/F is unramified of degree n. With the unit norm
// element (u^n = 1) the same presentation gives the split algebra M_n(F).

#include <memory>
#include <numeric>
#include <sstream>
#include <utility>
#include <vector>

#include "pelks/algebra/smith.hpp"

namespace pelks::cyclic {

using algebra::Code;
using algebra::FieldPtr;
using algebra::LocalSeriesElement;
using algebra::SeriesMatrix;

enum class NormElement { Uniformizer, Unit };

struct CyclicAlgebraDescriptor {
    int n = 1;
    std::uint32_t q = 2;       // residue cardinality of F
    std::uint32_t p = 2;       // residue characteristic
    int q_exponent = 1;        // q = p^q_exponent
    int invariant = 1;         // invariant f/n
    int conj_exponent = 0;     // conjugation on E is tau^s
    int precision = algebra::kDefaultPrecision;
    NormElement norm = NormElement::Uniformizer;
    FieldPtr field;            // residue field of E, F_{q^n}

    bool split() const { return norm == NormElement::Unit; }

    // tau^k on series coefficients; tau is the q^f-power Frobenius.
    LocalSeriesElement tau(const LocalSeriesElement& x, int k = 1) const {
        long long e = static_cast<long long>(q_exponent) * invariant * k;
        return x.apply_frobenius(e);
    }
    LocalSeriesElement bar(const LocalSeriesElement& x) const { return tau(x, conj_exponent); }

    LocalSeriesElement zero() const { return LocalSeriesElement::zero(field, precision); }
    LocalSeriesElement one() const { return LocalSeriesElement::one(field, precision); }
    LocalSeriesElement pi() const { return LocalSeriesElement::uniformizer_power(field, 1, precision); }
    // u^n
    LocalSeriesElement norm_element() const { return split() ? one() : pi(); }
    LocalSeriesElement zeta_power(long long k) const {
        return LocalSeriesElement::constant(field, field->zeta_pow(k), precision);
    }
};

using DescriptorPtr = std::shared_ptr<const CyclicAlgebraDescriptor>;

inline DescriptorPtr make_descriptor(int n, std::uint32_t q, int invariant, int conj_exponent,
                                     int precision = algebra::kDefaultPrecision, bool split = false) {
    if (n < 1) throw InvalidInvariant("degree n must be positive");
    if (precision < 2) throw InvalidInvariant("precision must be at least 2");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d <= q; ++d)
        if (q % d == 0) { p = d; break; }
    if (p == 0) throw InvalidInvariant("residue cardinality must be a prime power");
    int m = 0;
    std::uint32_t rest = q;
    while (rest % p == 0) { rest /= p; ++m; }
    if (rest != 1) throw InvalidInvariant("residue cardinality must be a prime power");
    if (invariant < 1 || invariant > n || std::gcd(invariant, n) != 1) {
        std::ostringstream os;
        os << "invariant " << invariant << "/" << n << " is not a reduced fraction in (0,1]";
        throw InvalidInvariant(os.str());
    }
    if (conj_exponent < 0 || conj_exponent >= n || (2 * conj_exponent) % n != 0)
        throw InvalidInvariant("conjugation tau^s must be an involution: need 2s = 0 mod n");
    auto d = std::make_shared<CyclicAlgebraDescriptor>();
    d->n = n;
    d->q = q;
    d->p = p;
    d->q_exponent = m;
    d->invariant = invariant;
    d->conj_exponent = conj_exponent;
    d->precision = precision;
    d->norm = split ? NormElement::Unit : NormElement::Uniformizer;
    d->field = algebra::GaloisField::make(p, static_cast<std::uint32_t>(m * n));
    return d;
}

class CyclicAlgebraElement {
public:
    CyclicAlgebraElement(DescriptorPtr d, std::vector<LocalSeriesElement> coeffs)
        : d_(std::move(d)), c_(std::move(coeffs)) {
        if (static_cast<int>(c_.size()) != d_->n) throw std::invalid_argument("need n coefficients");
    }
    static CyclicAlgebraElement zero(DescriptorPtr d) {
        std::vector<LocalSeriesElement> c(d->n, d->zero());
        return {d, c};
    }
    static CyclicAlgebraElement scalar(DescriptorPtr d, const LocalSeriesElement& x) {
        std::vector<LocalSeriesElement> c(d->n, d->zero());
        c[0] = x;
        return {d, c};
    }
    static CyclicAlgebraElement one(DescriptorPtr d) { return scalar(d, d->one()); }
    // x u^i for 0 <= i < n
    static CyclicAlgebraElement monomial(DescriptorPtr d, const LocalSeriesElement& x, int i) {
        std::vector<LocalSeriesElement> c(d->n, d->zero());
        c.at(static_cast<std::size_t>(i)) = x;
        return {d, c};
    }
    static CyclicAlgebraElement u(DescriptorPtr d) {
        if (d->n == 1) return scalar(d, d->norm_element());
        return monomial(d, d->one(), 1);
    }

    const DescriptorPtr& descriptor() const { return d_; }
    const std::vector<LocalSeriesElement>& coefficients() const { return c_; }
    const LocalSeriesElement& coefficient(int i) const { return c_.at(static_cast<std::size_t>(i)); }

    friend CyclicAlgebraElement operator+(const CyclicAlgebraElement& a, const CyclicAlgebraElement& b) {
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] + b.c_.at(i);
        return {a.d_, c};
    }
    friend CyclicAlgebraElement operator-(const CyclicAlgebraElement& a, const CyclicAlgebraElement& b) {
        auto c = a.c_;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] - b.c_.at(i);
        return {a.d_, c};
    }
    // (x u^i)(y u^j) = x tau^i(y) u^{i+j}, folding u^n into the norm element.
    friend CyclicAlgebraElement operator*(const CyclicAlgebraElement& a, const CyclicAlgebraElement& b) {
        const auto& d = *a.d_;
        const int n = d.n;
        auto out = zero(a.d_).c_;
        const LocalSeriesElement nu = d.norm_element();
        for (int i = 0; i < n; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (b.c_[j].is_zero()) continue;
                LocalSeriesElement t = a.c_[i] * d.tau(b.c_[j], i);
                int k = i + j;
                if (k >= n) { k -= n; t = t * nu; }
                out[k] = out[k] + t;
            }
        }
        return {a.d_, out};
    }

    friend bool congruent(const CyclicAlgebraElement& a, const CyclicAlgebraElement& b) {
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!congruent(a.c_[i], b.c_.at(i))) return false;
        return true;
    }

private:
    DescriptorPtr d_;
    std::vector<LocalSeriesElement> c_;
};

// x -> diag(x, tau x, ..., tau^{n-1} x); u -> shift with the norm element in
// the bottom-left corner.
inline SeriesMatrix to_matrix(const CyclicAlgebraElement& a) {
    const auto& d = *a.descriptor();
    const int n = d.n;
    SeriesMatrix m = algebra::series_zero_matrix(n, n, d.field, d.precision);
    const LocalSeriesElement nu = d.norm_element();
    for (int i = 0; i < n; ++i) {
        const auto& x = a.coefficient(i);
        for (int r = 0; r < n; ++r) {
            LocalSeriesElement e = d.tau(x, r);
            int c = r + i;
            if (c >= n) { c -= n; e = e * nu; }
            m(r, c) = e;
        }
    }
    return m;
}

// Inverse of to_matrix on its image; NotInImage otherwise.
inline CyclicAlgebraElement from_matrix(DescriptorPtr d, const SeriesMatrix& m) {
    const int n = d->n;
    if (static_cast<int>(m.rows()) != n || static_cast<int>(m.cols()) != n)
        throw std::invalid_argument("matrix must be n x n");
    std::vector<LocalSeriesElement> c;
    for (int i = 0; i < n; ++i) c.push_back(m(0, i));
    CyclicAlgebraElement a(d, c);
    SeriesMatrix back = to_matrix(a);
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            if (!congruent(back(r, s), m(r, s))) throw NotInImage("matrix is not the image of an algebra element");
    return a;
}

// Integral on and above the diagonal, divisible by pi strictly below it.
inline bool in_maximal_order(const SeriesMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const int need = r > c ? 1 : 0;
            const auto& x = m(r, c);
            if (x.is_zero()) {
                if (x.precision() < need) throw InsufficientPrecision("entry not known to the required valuation");
                continue;
            }
            if (x.valuation() < need) return false;
        }
    return true;
}

inline bool in_maximal_order(const CyclicAlgebraElement& a) {
    if (a.descriptor()->split()) {
        for (const auto& x : a.coefficients())
            if (!x.is_integral()) return false;
        return true;
    }
    return in_maximal_order(to_matrix(a));
}

// beta* = H^{-1} tau(bar(beta)^t) H with H antidiagonal, read back into B.
// Stays in the image for n <= 2; NotInImage is raised otherwise.
inline CyclicAlgebraElement involution_star(const CyclicAlgebraElement& a) {
    const auto& d = *a.descriptor();
    const int n = d.n;
    SeriesMatrix m = to_matrix(a);
    SeriesMatrix star = algebra::series_zero_matrix(n, n, d.field, d.precision);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) star(r, c) = d.tau(d.bar(m(n - 1 - c, n - 1 - r)), 1);
    return from_matrix(a.descriptor(), star);
}

inline LocalSeriesElement reduced_trace(const CyclicAlgebraElement& a) {
    SeriesMatrix m = to_matrix(a);
    LocalSeriesElement t = m(0, 0);
    for (std::size_t i = 1; i < m.rows(); ++i) t = t + m(i, i);
    return t;
}

struct DiscriminantReport {
    int exponent = 0;  // pi-adic valuation of the discriminant of the maximal order
    int n_v = 0;       // 1 at a nonsplit place, 0 at a split one
};

inline DiscriminantReport discriminant_report(const CyclicAlgebraDescriptor& d) {
    if (d.split()) return {0, 0};
    return {d.n * (d.n - 1), 1};
}

// Valuation of det(trd(b_k b_l)) over the basis zeta^a u^i.
inline int maximal_order_discriminant_exponent(const DescriptorPtr& d) {
    const int n = d->n;
    std::vector<CyclicAlgebraElement> basis;
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < n; ++a) basis.push_back(CyclicAlgebraElement::monomial(d, d->zeta_power(a), i));
    const std::size_t N = basis.size();
    SeriesMatrix gram = algebra::series_zero_matrix(N, N, d->field, d->precision);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) gram(k, l) = reduced_trace(basis[k] * basis[l]);
    return algebra::determinant_valuation(gram);
}

}  // namespace pelks::cyclic
