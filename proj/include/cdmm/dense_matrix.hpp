#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cdmm {

// Row-major real matrix. Shapes are fixed at construction.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols);
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    static DenseMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<const double> data() const { return entries_; }
    std::span<double> data() { return entries_; }

    // this += scale * other
    void add_scaled(const DenseMatrix& other, double scale);

    DenseMatrix transposed() const;

    bool operator==(const DenseMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

// Sub-block [r0, r0+rows) x [c0, c0+cols).
DenseMatrix block(const DenseMatrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols);

// Concatenations; all inputs must agree on the shared dimension.
DenseMatrix hconcat(std::span<const DenseMatrix> parts);
DenseMatrix vconcat(std::span<const DenseMatrix> parts);

// Sum_i weights[i] * parts[i]. parts must be non-empty and equally shaped.
DenseMatrix linear_combination(std::span<const DenseMatrix> parts, std::span<const double> weights);

// a^T * b, the worker kernel. OpenMP over output rows.
DenseMatrix multiply_transposed(const DenseMatrix& a, const DenseMatrix& b);

// Single-threaded reference for multiply_transposed; same loop order, same result bits.
DenseMatrix multiply_transposed_serial(const DenseMatrix& a, const DenseMatrix& b);

double frobenius_norm(const DenseMatrix& m);

// ||a - b||_F / ||b||_F (absolute error when b is zero).
double relative_frobenius_error(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace cdmm
