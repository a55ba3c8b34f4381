#pragma once

// Smith normal forms: over the valuation ring of a local series field (with
// certificates) and over Z (exact, arbitrary precision).

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <utility>
#include <vector>

#include "pelks/algebra/ring_matrix.hpp"

namespace pelks::algebra {

struct SmithDecomposition {
    // Valuations of the diagonal, nondecreasing. kInfiniteValuation marks a
    // diagonal slot that is zero to precision.
    std::vector<int> divisors;
    SeriesMatrix left;   // U, rows x rows
    SeriesMatrix right;  // V, cols x cols
    SeriesMatrix diagonal;  // U A V

    std::size_t finite_rank() const {
        return static_cast<std::size_t>(
            std::count_if(divisors.begin(), divisors.end(), [](int d) { return d != kInfiniteValuation; }));
    }
    // Sum of finite divisors, i.e. the valuation of the gcd of maximal minors
    // when every divisor is finite.
    long long finite_divisor_sum() const {
        long long s = 0;
        for (int d : divisors)
            if (d != kInfiniteValuation) s += d;
        return s;
    }
};

namespace detail {

inline void row_axpy(SeriesMatrix& m, std::size_t dst, const LocalSeriesElement& c, std::size_t src) {
    for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) = m(dst, j) - c * m(src, j);
}
inline void col_axpy(SeriesMatrix& m, std::size_t dst, const LocalSeriesElement& c, std::size_t src) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) = m(i, dst) - m(i, src) * c;
}

}  // namespace detail

// Full pivoting on minimal valuation, ties broken by smallest (row, col).
inline SmithDecomposition smith_normal_form(const SeriesMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    if (m == 0 || n == 0) throw std::invalid_argument("empty matrix");
    const FieldPtr field = a.zero().field();
    const int prec = common_precision(a);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (!a(i, j).is_integral())
                throw std::invalid_argument("matrix entry outside the valuation ring");

    SeriesMatrix d = a;
    SeriesMatrix u = series_identity(m, field, prec);
    SeriesMatrix v = series_identity(n, field, prec);
    SmithDecomposition out;
    const std::size_t steps = std::min(m, n);

    for (std::size_t t = 0; t < steps; ++t) {
        int best = kInfiniteValuation;
        std::size_t bi = 0, bj = 0;
        int min_zero_prec = kInfiniteValuation;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                const auto& x = d(i, j);
                if (x.is_zero()) {
                    min_zero_prec = std::min(min_zero_prec, x.precision());
                } else if (x.valuation() < best) {
                    best = x.valuation();
                    bi = i;
                    bj = j;
                }
            }
        if (best == kInfiniteValuation) {
            out.divisors.resize(steps, kInfiniteValuation);
            break;
        }
        if (min_zero_prec <= best) {
            std::ostringstream os;
            os << "pivot of valuation " << best << " is ambiguous: an entry is only known to be zero mod pi^"
               << min_zero_prec;
            throw InsufficientPrecision(os.str());
        }
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);

        // scale the pivot row so the pivot is exactly pi^best
        const LocalSeriesElement unit = d(t, t).shift(-best);
        const LocalSeriesElement unit_inv = unit.inverse();
        for (std::size_t j = 0; j < n; ++j) d(t, j) = unit_inv * d(t, j);
        for (std::size_t j = 0; j < m; ++j) u(t, j) = unit_inv * u(t, j);
        d(t, t) = LocalSeriesElement::uniformizer_power(field, best, d(t, t).precision());

        for (std::size_t i = t + 1; i < m; ++i) {
            if (d(i, t).is_zero()) continue;
            const LocalSeriesElement c = d(i, t).shift(-best);
            detail::row_axpy(d, i, c, t);
            detail::row_axpy(u, i, c, t);
        }
        for (std::size_t j = t + 1; j < n; ++j) {
            if (d(t, j).is_zero()) continue;
            const LocalSeriesElement c = d(t, j).shift(-best);
            detail::col_axpy(d, j, c, t);
            detail::col_axpy(v, j, c, t);
        }
        out.divisors.push_back(best);
    }
    out.left = std::move(u);
    out.right = std::move(v);
    out.diagonal = std::move(d);
    return out;
}

// U A V agrees with the diagonal form to the certificates' precision.
inline bool verify_smith(const SeriesMatrix& a, const SmithDecomposition& s) {
    SeriesMatrix prod = s.left * a * s.right;
    for (std::size_t i = 0; i < prod.rows(); ++i)
        for (std::size_t j = 0; j < prod.cols(); ++j) {
            LocalSeriesElement expected = LocalSeriesElement::zero(a.zero().field(), prod(i, j).precision());
            if (i == j && i < s.divisors.size() && s.divisors[i] != kInfiniteValuation)
                expected = LocalSeriesElement::uniformizer_power(a.zero().field(), s.divisors[i],
                                                                 prod(i, j).precision());
            if (!congruent(prod(i, j), expected)) return false;
        }
    return true;
}

// Valuation of det via Smith form; kInfiniteValuation when singular to precision.
inline int determinant_valuation(const SeriesMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    auto s = smith_normal_form(a);
    long long sum = 0;
    for (int dv : s.divisors) {
        if (dv == kInfiniteValuation) return kInfiniteValuation;
        sum += dv;
    }
    return static_cast<int>(sum);
}

// ---------------------------------------------------------------- over Z

using BigInt = boost::multiprecision::cpp_int;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct IntegerSmith {
    std::vector<BigInt> divisors;  // nonzero invariant factors, d_1 | d_2 | ...
    IntMatrix left;                // U, with U A V diagonal
    IntMatrix right;               // V
    std::size_t rank() const { return divisors.size(); }
};

inline IntegerSmith integer_smith(IntMatrix a) {
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : 0;
    IntegerSmith out;
    out.left.assign(m, std::vector<BigInt>(m, 0));
    out.right.assign(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < m; ++i) out.left[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) out.right[j][j] = 1;
    auto& u = out.left;
    auto& v = out.right;

    auto swap_rows = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        std::swap(u[x], u[y]);
    };
    auto swap_cols = [&](std::size_t x, std::size_t y) {
        if (x == y) return;
        for (auto& row : a) std::swap(row[x], row[y]);
        for (auto& row : v) std::swap(row[x], row[y]);
    };
    auto row_sub = [&](std::size_t dst, const BigInt& c, std::size_t src) {
        for (std::size_t j = 0; j < n; ++j) a[dst][j] -= c * a[src][j];
        for (std::size_t j = 0; j < m; ++j) u[dst][j] -= c * u[src][j];
    };
    auto col_sub = [&](std::size_t dst, const BigInt& c, std::size_t src) {
        for (std::size_t i = 0; i < m; ++i) a[i][dst] -= c * a[i][src];
        for (std::size_t i = 0; i < n; ++i) v[i][dst] -= c * v[i][src];
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        // smallest nonzero magnitude in the trailing block
        bool found = false;
        std::size_t bi = t, bj = t;
        BigInt best = 0;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (a[i][j] == 0) continue;
                BigInt mag = abs(a[i][j]);
                if (!found || mag < best) { found = true; best = mag; bi = i; bj = j; }
            }
        if (!found) break;
        swap_rows(t, bi);
        swap_cols(t, bj);
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                row_sub(i, q, t);
                if (a[i][t] != 0) { swap_rows(t, i); again = true; }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                col_sub(j, q, t);
                if (a[t][j] != 0) { swap_cols(t, j); again = true; }
            }
            if (again) continue;
            // pivot must divide the trailing block
            bool fixed = false;
            for (std::size_t i = t + 1; i < m && !fixed; ++i)
                for (std::size_t j = t + 1; j < n && !fixed; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        row_sub(t, BigInt(-1), i);
                        fixed = true;
                    }
            if (!fixed) break;
        }
        if (a[t][t] < 0) {
            for (std::size_t j = 0; j < n; ++j) a[t][j] = -a[t][j];
            for (std::size_t j = 0; j < m; ++j) u[t][j] = -u[t][j];
        }
        out.divisors.push_back(a[t][t]);
    }
    return out;
}

inline IntMatrix to_int_matrix(const std::vector<std::vector<long long>>& a) {
    IntMatrix out;
    for (const auto& row : a) {
        std::vector<BigInt> r;
        for (auto x : row) r.emplace_back(x);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace pelks::algebra
