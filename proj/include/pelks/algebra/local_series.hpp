#pragma once

// Truncated Laurent series in pi over a finite residue field, with capped
// absolute precision: an element is known modulo pi^precision.

#include <algorithm>
#include <climits>
#include <sstream>
#include <string>
#include <vector>

#include "pelks/algebra/finite_field.hpp"

namespace pelks::algebra {

inline constexpr int kInfiniteValuation = INT_MAX;
inline constexpr int kDefaultPrecision = 16;

class LocalSeriesElement {
public:
    LocalSeriesElement() = default;

    static LocalSeriesElement zero(FieldPtr f, int precision = kDefaultPrecision) {
        LocalSeriesElement z;
        z.field_ = std::move(f);
        z.precision_ = precision;
        return z;
    }
    static LocalSeriesElement constant(FieldPtr f, Code c, int precision = kDefaultPrecision) {
        return from_digits(std::move(f), 0, {c}, precision);
    }
    static LocalSeriesElement constant(const FiniteFieldElement& x, int precision = kDefaultPrecision) {
        return constant(x.field(), x.code(), precision);
    }
    static LocalSeriesElement one(FieldPtr f, int precision = kDefaultPrecision) {
        return constant(std::move(f), 1, precision);
    }
    static LocalSeriesElement from_int(FieldPtr f, std::int64_t v, int precision = kDefaultPrecision) {
        Code c = f->from_int(v);
        return constant(std::move(f), c, precision);
    }
    // pi^k
    static LocalSeriesElement uniformizer_power(FieldPtr f, int k, int precision = kDefaultPrecision) {
        return from_digits(std::move(f), k, {1}, precision);
    }
    // sum_t digits[t] pi^{start + t}, truncated below precision.
    static LocalSeriesElement from_digits(FieldPtr f, int start, const std::vector<Code>& digits,
                                          int precision = kDefaultPrecision) {
        LocalSeriesElement x;
        x.field_ = std::move(f);
        x.precision_ = precision;
        x.valuation_ = start;
        x.digits_ = digits;
        x.normalize();
        return x;
    }

    const FieldPtr& field() const { return field_; }
    int valuation() const { return valuation_; }
    int precision() const { return precision_; }
    bool is_zero() const { return valuation_ == kInfiniteValuation; }
    // Valuation used in precision bookkeeping; a zero counts as its precision.
    int effective_valuation() const { return is_zero() ? precision_ : valuation_; }
    bool is_unit() const { return valuation_ == 0; }
    bool is_integral() const { return is_zero() || valuation_ >= 0; }

    Code digit(int exponent) const {
        if (is_zero() || exponent < valuation_) return 0;
        std::size_t t = static_cast<std::size_t>(exponent - valuation_);
        return t < digits_.size() ? digits_[t] : 0;
    }
    Code leading_digit() const { return is_zero() ? 0 : digits_.front(); }

    LocalSeriesElement with_precision(int precision) const {
        LocalSeriesElement x = *this;
        x.precision_ = std::min(precision_, precision);
        x.normalize();
        return x;
    }

    friend LocalSeriesElement operator+(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        check(a, b);
        int prec = std::min(a.precision_, b.precision_);
        if (a.is_zero()) return b.with_precision(prec);
        if (b.is_zero()) return a.with_precision(prec);
        int lo = std::min(a.valuation_, b.valuation_);
        if (lo >= prec) return zero(a.field_, prec);
        std::vector<Code> d(static_cast<std::size_t>(prec - lo));
        const auto& F = *a.field_;
        for (int e = lo; e < prec; ++e) d[e - lo] = F.add(a.digit(e), b.digit(e));
        return from_digits(a.field_, lo, d, prec);
    }
    LocalSeriesElement operator-() const {
        LocalSeriesElement x = *this;
        for (auto& c : x.digits_) c = field_->neg(c);
        return x;
    }
    friend LocalSeriesElement operator-(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        return a + (-b);
    }

    friend LocalSeriesElement operator*(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        check(a, b);
        int prec = std::min(sat_add(a.precision_, b.effective_valuation()),
                            sat_add(b.precision_, a.effective_valuation()));
        prec = std::min(prec, std::max(a.precision_, b.precision_));
        if (a.is_zero() || b.is_zero()) return zero(a.field_, prec);
        int lo = a.valuation_ + b.valuation_;
        if (lo >= prec) return zero(a.field_, prec);
        std::vector<Code> d(static_cast<std::size_t>(prec - lo), 0);
        const auto& F = *a.field_;
        for (std::size_t i = 0; i < a.digits_.size(); ++i) {
            if (a.digits_[i] == 0) continue;
            for (std::size_t j = 0; j < b.digits_.size() && i + j < d.size(); ++j)
                d[i + j] = F.add(d[i + j], F.mul(a.digits_[i], b.digits_[j]));
        }
        return from_digits(a.field_, lo, d, prec);
    }

    // 1/a; loses 2v digits of absolute precision.
    LocalSeriesElement inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of a series that is zero to precision");
        const int v = valuation_;
        const int rel = precision_ - v;  // relative precision of the unit part
        const auto& F = *field_;
        std::vector<Code> out(static_cast<std::size_t>(rel), 0);
        const Code inv0 = F.inv(digits_[0]);
        // long division of 1 by the unit part
        for (int k = 0; k < rel; ++k) {
            Code acc = k == 0 ? 1 : 0;
            for (int i = 1; i <= k; ++i) acc = F.sub(acc, F.mul(unit_digit(i), out[k - i]));
            out[k] = F.mul(acc, inv0);
        }
        return from_digits(field_, -v, out, precision_ - 2 * v);
    }
    friend LocalSeriesElement operator/(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        return a * b.inverse();
    }

    // Multiply by pi^k exactly (shifts precision as well).
    LocalSeriesElement shift(int k) const {
        LocalSeriesElement x = *this;
        x.precision_ = sat_add(precision_, k);
        if (!is_zero()) x.valuation_ += k;
        return x;
    }

    // Coefficientwise x -> x^{p^f}; pi is fixed.
    LocalSeriesElement apply_frobenius(std::int64_t f) const {
        LocalSeriesElement x = *this;
        for (auto& c : x.digits_) c = field_->frobenius(c, f);
        return x;
    }

    // Same value and same precision.
    friend bool operator==(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        return a.field_ && b.field_ && a.field_->same_as(*b.field_) && a.precision_ == b.precision_ &&
               a.valuation_ == b.valuation_ && a.digits_ == b.digits_;
    }
    friend bool operator!=(const LocalSeriesElement& a, const LocalSeriesElement& b) { return !(a == b); }

    // Equal modulo the coarser of the two precisions.
    friend bool congruent(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        return (a - b).is_zero();
    }

    std::string to_string() const {
        std::ostringstream os;
        if (is_zero()) {
            os << "O(pi^" << precision_ << ")";
            return os.str();
        }
        bool first = true;
        for (std::size_t t = 0; t < digits_.size(); ++t) {
            if (digits_[t] == 0) continue;
            if (!first) os << " + ";
            first = false;
            os << "[" << digits_[t] << "]pi^" << valuation_ + int(t);
        }
        os << " + O(pi^" << precision_ << ")";
        return os.str();
    }

private:
    static int sat_add(int a, int b) {
        long long s = static_cast<long long>(a) + b;
        if (s > INT_MAX / 2) return INT_MAX / 2;
        if (s < INT_MIN / 2) return INT_MIN / 2;
        return static_cast<int>(s);
    }
    static void check(const LocalSeriesElement& a, const LocalSeriesElement& b) {
        if (!a.field_ || !b.field_) throw FieldMismatch("uninitialised series");
        if (a.field_ != b.field_ && !a.field_->same_as(*b.field_))
            throw FieldMismatch("series over different residue fields");
    }
    Code unit_digit(int i) const {
        return static_cast<std::size_t>(i) < digits_.size() ? digits_[i] : 0;
    }
    void normalize() {
        if (valuation_ == kInfiniteValuation) { digits_.clear(); return; }
        std::size_t lead = 0;
        while (lead < digits_.size() && digits_[lead] == 0) ++lead;
        valuation_ += static_cast<int>(lead);
        digits_.erase(digits_.begin(), digits_.begin() + static_cast<std::ptrdiff_t>(lead));
        if (digits_.empty() || valuation_ >= precision_) {
            valuation_ = kInfiniteValuation;
            digits_.clear();
            return;
        }
        digits_.resize(static_cast<std::size_t>(precision_ - valuation_), 0);
    }

    FieldPtr field_;
    int valuation_ = kInfiniteValuation;
    std::vector<Code> digits_;  // digits_[t] multiplies pi^{valuation_ + t}
    int precision_ = kDefaultPrecision;
};

}  // namespace pelks::algebra
