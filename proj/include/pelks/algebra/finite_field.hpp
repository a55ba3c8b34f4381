#pragma once

// F_{p^d} with log/antilog tables. Elements are stored as base-p digit
// codes: code = sum c_k p^k for the polynomial sum c_k x^k mod the modulus.

#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "pelks/errors.hpp"

namespace pelks::algebra {

using Code = std::uint32_t;

namespace detail {

inline bool is_prime(std::uint32_t p) {
    if (p < 2) return false;
    for (std::uint32_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Polynomials over F_p as coefficient vectors, low degree first.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    std::int64_t t = 0, nt = 1, r = p, nr = a % p;
    while (nr) {
        std::int64_t q = r / nr;
        t -= q * nt; std::swap(t, nt);
        r -= q * nr; std::swap(r, nr);
    }
    if (r != 1) throw DivisionByZero("no inverse mod p");
    return static_cast<std::uint32_t>((t % p + p) % p);
}

inline Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint32_t lead_inv = inv_mod(m.back(), p);
    while (a.size() >= m.size()) {
        std::uint64_t c = std::uint64_t(a.back()) * lead_inv % p;
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t k = 0; k < m.size(); ++k)
            a[shift + k] = static_cast<std::uint32_t>((a[shift + k] + p - c * m[k] % p) % p);
        trim(a);
    }
    return a;
}

// Every monic polynomial of degree k, in order of its digit code.
inline Poly monic_from_code(std::uint32_t code, std::uint32_t deg, std::uint32_t p) {
    Poly f(deg + 1, 0);
    for (std::uint32_t k = 0; k < deg; ++k) { f[k] = code % p; code /= p; }
    f[deg] = 1;
    return f;
}

inline bool irreducible(const Poly& f, std::uint32_t p) {
    const std::uint32_t d = static_cast<std::uint32_t>(f.size() - 1);
    if (d == 1) return true;
    for (std::uint32_t k = 1; 2 * k <= d; ++k) {
        std::uint32_t count = 1;
        for (std::uint32_t i = 0; i < k; ++i) count *= p;
        for (std::uint32_t c = 0; c < count; ++c) {
            if (poly_mod(f, monic_from_code(c, k, p), p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

class GaloisField : public std::enable_shared_from_this<GaloisField> {
public:
    // Modulus is the first primitive monic polynomial in code order, so x is
    // a generator of the multiplicative group.
    static std::shared_ptr<const GaloisField> make(std::uint32_t p, std::uint32_t d) {
        check_params(p, d);
        if (d == 1) {
            // x - g for the least primitive root g
            auto field = std::shared_ptr<GaloisField>(new GaloisField(p, 1, {0, 1}));
            field->build_tables(false);
            Code g = field->generator();
            auto out = std::shared_ptr<GaloisField>(new GaloisField(p, 1, {(p - g) % p, 1}));
            out->build_tables(false);
            return out;
        }
        std::uint32_t count = ipow(p, d);
        for (std::uint32_t c = 0; c < count; ++c) {
            auto f = detail::monic_from_code(c, d, p);
            if (f[0] == 0) continue;
            if (!detail::irreducible(f, p)) continue;
            auto field = std::shared_ptr<GaloisField>(new GaloisField(p, d, f));
            if (field->build_tables(true)) return field;
        }
        throw InvalidField("no primitive polynomial found");
    }

    // Explicit modulus (monic, low degree first). Must be irreducible.
    static std::shared_ptr<const GaloisField> make(std::uint32_t p, std::uint32_t d,
                                                   const std::vector<std::uint32_t>& modulus) {
        check_params(p, d);
        if (modulus.size() != d + 1 || modulus.back() != 1)
            throw InvalidField("modulus must be monic of degree d");
        for (auto c : modulus)
            if (c >= p) throw InvalidField("modulus coefficient out of range");
        if (!detail::irreducible(modulus, p)) throw InvalidField("modulus is reducible");
        auto field = std::shared_ptr<GaloisField>(new GaloisField(p, d, modulus));
        field->build_tables(false);
        return field;
    }

    std::uint32_t characteristic() const { return p_; }
    std::uint32_t degree() const { return d_; }
    std::uint32_t size() const { return size_; }
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    Code generator() const { return exp_.size() > 1 ? exp_[1] : exp_[0]; }

    bool same_as(const GaloisField& o) const {
        return p_ == o.p_ && d_ == o.d_ && modulus_ == o.modulus_;
    }

    Code add(Code a, Code b) const {
        if (p_ == 2) return a ^ b;
        Code out = 0, scale = 1;
        for (std::uint32_t k = 0; k < d_; ++k) {
            out += ((a % p_ + b % p_) % p_) * scale;
            a /= p_; b /= p_; scale *= p_;
        }
        return out;
    }
    Code neg(Code a) const {
        if (p_ == 2) return a;
        Code out = 0, scale = 1;
        for (std::uint32_t k = 0; k < d_; ++k) {
            out += ((p_ - a % p_) % p_) * scale;
            a /= p_; scale *= p_;
        }
        return out;
    }
    Code sub(Code a, Code b) const { return add(a, neg(b)); }

    Code mul(Code a, Code b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(log_[a] + log_[b]) % (size_ - 1)];
    }
    Code inv(Code a) const {
        if (a == 0) throw DivisionByZero("inverse of zero in finite field");
        return exp_[(size_ - 1 - log_[a]) % (size_ - 1)];
    }
    Code div(Code a, Code b) const { return mul(a, inv(b)); }

    Code pow(Code a, std::int64_t e) const {
        if (a == 0) {
            if (e < 0) throw DivisionByZero("negative power of zero");
            return e == 0 ? 1 : 0;
        }
        std::int64_t m = size_ - 1;
        std::int64_t k = (std::int64_t(log_[a]) * (e % m)) % m;
        if (k < 0) k += m;
        return exp_[k];
    }

    // x -> x^{p^f}
    Code frobenius(Code a, std::int64_t f) const {
        if (a == 0) return 0;
        std::int64_t m = size_ - 1;
        std::int64_t ff = ((f % d_) + d_) % d_;
        std::int64_t e = 1;
        for (std::int64_t i = 0; i < ff; ++i) e = (e * p_) % m;
        return exp_[(std::int64_t(log_[a]) * e) % m];
    }

    // Power of the generator.
    Code zeta_pow(std::int64_t k) const {
        std::int64_t m = size_ - 1;
        return exp_[((k % m) + m) % m];
    }
    std::uint32_t log(Code a) const {
        if (a == 0) throw DivisionByZero("log of zero");
        return log_[a];
    }

    Code from_int(std::int64_t v) const {
        std::int64_t r = ((v % p_) + p_) % p_;
        return static_cast<Code>(r);
    }
    std::vector<std::uint32_t> coefficients(Code a) const {
        std::vector<std::uint32_t> c(d_);
        for (std::uint32_t k = 0; k < d_; ++k) { c[k] = a % p_; a /= p_; }
        return c;
    }
    Code from_coefficients(const std::vector<std::uint32_t>& c) const {
        if (c.size() > d_) throw InvalidField("too many coefficients");
        Code out = 0, scale = 1;
        for (auto v : c) { out += (v % p_) * scale; scale *= p_; }
        return out;
    }

    std::string describe() const {
        std::ostringstream os;
        os << "F_" << p_;
        if (d_ > 1) os << "^" << d_;
        return os.str();
    }

private:
    GaloisField(std::uint32_t p, std::uint32_t d, std::vector<std::uint32_t> m)
        : p_(p), d_(d), size_(ipow(p, d)), modulus_(std::move(m)) {}

    static std::uint32_t ipow(std::uint32_t b, std::uint32_t e) {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            r *= b;
            if (r > (1u << 20)) throw InvalidField("field too large for table arithmetic");
        }
        return static_cast<std::uint32_t>(r);
    }

    static void check_params(std::uint32_t p, std::uint32_t d) {
        if (!detail::is_prime(p)) throw InvalidField("characteristic must be prime");
        if (d == 0) throw InvalidField("degree must be positive");
        ipow(p, d);
    }

    Code poly_mul_code(Code a, Code b) const {
        auto pa = coefficients(a), pb = coefficients(b);
        detail::Poly prod(2 * d_, 0);
        for (std::uint32_t i = 0; i < d_; ++i)
            for (std::uint32_t j = 0; j < d_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t(pa[i]) * pb[j]) % p_);
        auto r = detail::poly_mod(prod, modulus_, p_);
        r.resize(d_, 0);
        return from_coefficients(r);
    }

    // With want_x_primitive the generator must be x itself; otherwise the
    // first element of full order is used.
    bool build_tables(bool want_x_primitive) {
        const std::uint32_t order = size_ - 1;
        exp_.assign(order, 0);
        log_.assign(size_, 0);
        auto try_gen = [&](Code g) {
            std::vector<char> seen(size_, 0);
            Code cur = 1;
            for (std::uint32_t k = 0; k < order; ++k) {
                if (seen[cur]) return false;
                seen[cur] = 1;
                exp_[k] = cur;
                log_[cur] = k;
                cur = poly_mul_code(cur, g);
            }
            return cur == 1;
        };
        if (want_x_primitive) return try_gen(p_);  // code p is the polynomial x
        for (Code g = 1; g < size_; ++g)
            if (try_gen(g)) return true;
        return false;
    }

    std::uint32_t p_, d_, size_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Code> exp_, log_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

class FiniteFieldElement {
public:
    FiniteFieldElement(FieldPtr f, Code c) : field_(std::move(f)), code_(c) {
        if (code_ >= field_->size()) throw InvalidField("code out of range");
    }
    static FiniteFieldElement zero(FieldPtr f) { return {std::move(f), 0}; }
    static FiniteFieldElement one(FieldPtr f) { return {std::move(f), 1}; }
    static FiniteFieldElement zeta(FieldPtr f) { Code g = f->generator(); return {std::move(f), g}; }

    const FieldPtr& field() const { return field_; }
    Code code() const { return code_; }
    bool is_zero() const { return code_ == 0; }

    friend FiniteFieldElement operator+(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check(a, b);
        return {a.field_, a.field_->add(a.code_, b.code_)};
    }
    friend FiniteFieldElement operator-(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check(a, b);
        return {a.field_, a.field_->sub(a.code_, b.code_)};
    }
    FiniteFieldElement operator-() const { return {field_, field_->neg(code_)}; }
    friend FiniteFieldElement operator*(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check(a, b);
        return {a.field_, a.field_->mul(a.code_, b.code_)};
    }
    friend FiniteFieldElement operator/(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        check(a, b);
        return {a.field_, a.field_->div(a.code_, b.code_)};
    }
    FiniteFieldElement inverse() const { return {field_, field_->inv(code_)}; }
    FiniteFieldElement pow(std::int64_t e) const { return {field_, field_->pow(code_, e)}; }

    friend bool operator==(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        return a.field_->same_as(*b.field_) && a.code_ == b.code_;
    }
    friend bool operator!=(const FiniteFieldElement& a, const FiniteFieldElement& b) { return !(a == b); }

private:
    static void check(const FiniteFieldElement& a, const FiniteFieldElement& b) {
        if (a.field_ != b.field_ && !a.field_->same_as(*b.field_))
            throw FieldMismatch("operands live in different fields");
    }
    FieldPtr field_;
    Code code_;
};

// x -> x^{p^f}
inline FiniteFieldElement frobenius(const FiniteFieldElement& x, std::int64_t f) {
    return {x.field(), x.field()->frobenius(x.code(), f)};
}

}  // namespace pelks::algebra
