#include <doctest.h>

#include <stdexcept>
#include <tuple>

#include <omp.h>

#include "cdmm/dense_matrix.hpp"
#include "oracles.hpp"

using cdmm::DenseMatrix;

TEST_CASE("dense matrix construction and element access") {
    DenseMatrix m(2, 3, {1, 2, 3, 4, 5, 6});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m(1, 0) == 4.0);
    CHECK(m.row(1)[2] == 6.0);
    CHECK_THROWS_AS(DenseMatrix(2, 2, {1, 2, 3}), std::invalid_argument);

    const auto t = m.transposed();
    CHECK(t.rows() == 3);
    CHECK(t(2, 1) == 6.0);
    CHECK(t.transposed() == m);

    const auto id = DenseMatrix::identity(3);
    CHECK(id(0, 0) == 1.0);
    CHECK(id(0, 1) == 0.0);
}

TEST_CASE("block splitting and concatenation round-trip") {
    const auto m = oracle::random_matrix(6, 4, 11);
    std::vector<DenseMatrix> cols{cdmm::block(m, 0, 0, 6, 2), cdmm::block(m, 0, 2, 6, 2)};
    CHECK(cdmm::hconcat(cols) == m);
    std::vector<DenseMatrix> rows{cdmm::block(m, 0, 0, 3, 4), cdmm::block(m, 3, 0, 3, 4)};
    CHECK(cdmm::vconcat(rows) == m);
    CHECK_THROWS(cdmm::block(m, 5, 0, 2, 4));

    std::vector<DenseMatrix> mismatched{DenseMatrix(2, 2), DenseMatrix(3, 2)};
    CHECK_THROWS_AS(cdmm::hconcat(mismatched), std::invalid_argument);
}

TEST_CASE("linear combination and add_scaled") {
    DenseMatrix a(1, 2, {1, 2});
    DenseMatrix b(1, 2, {10, 20});
    std::vector<DenseMatrix> parts{a, b};
    std::vector<double> w{2.0, -0.5};
    const auto c = cdmm::linear_combination(parts, w);
    CHECK(c(0, 0) == doctest::Approx(-3.0));
    CHECK(c(0, 1) == doctest::Approx(-6.0));

    a.add_scaled(b, 0.1);
    CHECK(a(0, 1) == doctest::Approx(4.0));
    std::vector<double> short_w{1.0};
    CHECK_THROWS_AS(cdmm::linear_combination(parts, short_w), std::invalid_argument);
}

TEST_CASE("multiply_transposed matches the triple-loop reference") {
    for (auto [l, k, m] : {std::tuple{1, 1, 1}, {3, 2, 5}, {8, 4, 4}, {17, 9, 13}}) {
        const auto a = oracle::random_matrix(l, k, 100 + l);
        const auto b = oracle::random_matrix(l, m, 200 + l);
        const auto want = oracle::naive_transpose_product(a, b);
        CHECK(cdmm::relative_frobenius_error(cdmm::multiply_transposed(a, b), want) < 1e-14);
    }
    CHECK_THROWS_AS(cdmm::multiply_transposed(DenseMatrix(2, 2), DenseMatrix(3, 2)), std::invalid_argument);
}

TEST_CASE("parallel multiply_transposed is bit-identical to the serial reference") {
    const auto a = oracle::random_matrix(96, 80, 1);
    const auto b = oracle::random_matrix(96, 72, 2);
    const auto serial = cdmm::multiply_transposed_serial(a, b);
    for (int threads : {1, 2, 4, 7}) {
        omp_set_num_threads(threads);
        CHECK(cdmm::multiply_transposed(a, b) == serial);
    }
    omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("frobenius norm and relative error") {
    DenseMatrix a(2, 2, {3, 0, 0, 4});
    CHECK(cdmm::frobenius_norm(a) == doctest::Approx(5.0));
    DenseMatrix b(2, 2, {3, 0, 0, 4.5});
    CHECK(cdmm::relative_frobenius_error(b, a) == doctest::Approx(0.1));
    CHECK(cdmm::relative_frobenius_error(a, DenseMatrix(2, 2)) == doctest::Approx(5.0));
    CHECK_THROWS_AS(cdmm::relative_frobenius_error(a, DenseMatrix(1, 2)), std::invalid_argument);
}
