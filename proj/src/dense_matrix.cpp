#include "cdmm/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace cdmm {

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw std::invalid_argument("DenseMatrix: entry count does not match shape");
    }
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

void DenseMatrix::add_scaled(const DenseMatrix& other, double scale) {
    if (other.rows_ != rows_ || other.cols_ != cols_) {
        throw std::invalid_argument("add_scaled: shape mismatch");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += scale * other.entries_[i];
}

DenseMatrix DenseMatrix::transposed() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
}

DenseMatrix block(const DenseMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
    if (r0 + rows > m.rows() || c0 + cols > m.cols()) {
        throw std::out_of_range("block: range exceeds matrix");
    }
    DenseMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = m(r0 + r, c0 + c);
    return out;
}

DenseMatrix hconcat(std::span<const DenseMatrix> parts) {
    if (parts.empty()) return {};
    const std::size_t rows = parts.front().rows();
    std::size_t cols = 0;
    for (const auto& p : parts) {
        if (p.rows() != rows) throw std::invalid_argument("hconcat: row mismatch");
        cols += p.cols();
    }
    DenseMatrix out(rows, cols);
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < p.cols(); ++c) out(r, offset + c) = p(r, c);
        offset += p.cols();
    }
    return out;
}

DenseMatrix vconcat(std::span<const DenseMatrix> parts) {
    if (parts.empty()) return {};
    const std::size_t cols = parts.front().cols();
    std::vector<double> entries;
    std::size_t rows = 0;
    for (const auto& p : parts) {
        if (p.cols() != cols) throw std::invalid_argument("vconcat: column mismatch");
        entries.insert(entries.end(), p.data().begin(), p.data().end());
        rows += p.rows();
    }
    return DenseMatrix(rows, cols, std::move(entries));
}

DenseMatrix linear_combination(std::span<const DenseMatrix> parts, std::span<const double> weights) {
    if (parts.empty() || parts.size() != weights.size()) {
        throw std::invalid_argument("linear_combination: need one weight per part");
    }
    DenseMatrix out(parts.front().rows(), parts.front().cols());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (weights[i] != 0.0) out.add_scaled(parts[i], weights[i]);
    }
    return out;
}

namespace {

void check_inner(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("multiply_transposed: inner dimension mismatch");
}

// Row i of a^T b: sum over l of a(l, i) * b.row(l).
inline void accumulate_row(const DenseMatrix& a, const DenseMatrix& b, std::size_t i, double* out) {
    const std::size_t n = b.cols();
    for (std::size_t l = 0; l < a.rows(); ++l) {
        const double s = a(l, i);
        const auto brow = b.row(l);
        for (std::size_t j = 0; j < n; ++j) out[j] += s * brow[j];
    }
}

}  // namespace

DenseMatrix multiply_transposed(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a, b);
    DenseMatrix c(a.cols(), b.cols());
    const auto rows = static_cast<long long>(a.cols());
    double* base = c.data().data();
    const std::size_t n = b.cols();
#pragma omp parallel for schedule(static) if (rows * static_cast<long long>(a.rows() * n) > 32768)
    for (long long i = 0; i < rows; ++i) {
        accumulate_row(a, b, static_cast<std::size_t>(i), base + static_cast<std::size_t>(i) * n);
    }
    return c;
}

DenseMatrix multiply_transposed_serial(const DenseMatrix& a, const DenseMatrix& b) {
    check_inner(a, b);
    DenseMatrix c(a.cols(), b.cols());
    double* base = c.data().data();
    for (std::size_t i = 0; i < a.cols(); ++i) accumulate_row(a, b, i, base + i * b.cols());
    return c;
}

double frobenius_norm(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data()) s += v * v;
    return std::sqrt(s);
}

double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("relative_frobenius_error: shape mismatch");
    }
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a.data()[i] - b.data()[i];
        diff += d * d;
    }
    const double ref = frobenius_norm(b);
    return ref > 0.0 ? std::sqrt(diff) / ref : std::sqrt(diff);
}

}  // namespace cdmm
