#pragma once

#include <algorithm>
#include <climits>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "pelks/algebra/local_series.hpp"

namespace pelks::algebra {

// Dense matrix over a ring whose zero carries context (field, precision),
// so every matrix keeps a prototype zero.
template <class T>
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols, T zero)
        : rows_(rows), cols_(cols), zero_(zero), data_(rows * cols, zero) {}

    static RingMatrix identity(std::size_t n, const T& zero, const T& one) {
        RingMatrix m(n, n, zero);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const T& zero() const { return zero_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    friend RingMatrix operator*(const RingMatrix& a, const RingMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
        RingMatrix out(a.rows_, b.cols_, a.zero_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc = a.zero_;
                for (std::size_t k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
                out(i, j) = acc;
            }
        return out;
    }
    friend RingMatrix operator+(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        RingMatrix out = a;
        for (std::size_t t = 0; t < a.data_.size(); ++t) out.data_[t] = a.data_[t] + b.data_[t];
        return out;
    }
    friend RingMatrix operator-(const RingMatrix& a, const RingMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix shape mismatch");
        RingMatrix out = a;
        for (std::size_t t = 0; t < a.data_.size(); ++t) out.data_[t] = a.data_[t] - b.data_[t];
        return out;
    }

    RingMatrix transpose() const {
        RingMatrix out(cols_, rows_, zero_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    T zero_{};
    std::vector<T> data_;
};

using SeriesMatrix = RingMatrix<LocalSeriesElement>;

inline SeriesMatrix series_zero_matrix(std::size_t r, std::size_t c, FieldPtr f,
                                       int precision = kDefaultPrecision) {
    return SeriesMatrix(r, c, LocalSeriesElement::zero(std::move(f), precision));
}
inline SeriesMatrix series_identity(std::size_t n, FieldPtr f, int precision = kDefaultPrecision) {
    return SeriesMatrix::identity(n, LocalSeriesElement::zero(f, precision),
                                  LocalSeriesElement::one(f, precision));
}

// Smallest entry precision; the matrix is known to at least this precision.
inline int common_precision(const SeriesMatrix& m) {
    int p = INT_MAX;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) p = std::min(p, m(i, j).precision());
    return p;
}

inline bool all_zero(const SeriesMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (!m(i, j).is_zero()) return false;
    return true;
}

}  // namespace pelks::algebra
