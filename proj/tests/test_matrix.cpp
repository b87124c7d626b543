#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "toda/errors.hpp"
#include "toda/matrix.hpp"
#include "toda/sampling.hpp"

using namespace toda;

namespace {

SquareMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    SquareMatrix m(rows.size());
    std::size_t i = 0;
    for (const auto& row : rows) {
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

SquareMatrix random_matrix(Rng& rng, std::size_t n, double range = 2.0) {
    SquareMatrix m(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) m(i, j) = rng.uniform(-range, range);
    return m;
}

} // namespace

TEST_CASE("qr_positive: identity factors as identity") {
    const auto [q, r] = qr_positive(SquareMatrix::identity(3));
    CHECK(max_abs(q - SquareMatrix::identity(3)) < 1e-15);
    CHECK(max_abs(r - SquareMatrix::identity(3)) < 1e-15);
}

TEST_CASE("qr_positive: 2x2 against hand Gram-Schmidt") {
    // Columns (1,1) and (1,0): normalize the first, orthogonalize the second.
    const auto [q, r] = qr_positive(from_rows({{1, 1}, {1, 0}}));
    const double s2 = std::sqrt(2.0);
    CHECK(r(0, 0) == doctest::Approx(s2).epsilon(1e-14));
    CHECK(q(0, 0) == doctest::Approx(1.0 / s2).epsilon(1e-14));
    CHECK(q(1, 0) == doctest::Approx(1.0 / s2).epsilon(1e-14));
    CHECK(r(0, 1) == doctest::Approx(1.0 / s2).epsilon(1e-14));
    CHECK(r(1, 1) == doctest::Approx(1.0 / s2).epsilon(1e-14));
    CHECK(r(1, 0) == 0.0);
}

TEST_CASE("qr_positive: positive diagonal input is already factored") {
    const auto [q, r] = qr_positive(from_rows({{2, 0}, {0, 3}}));
    CHECK(max_abs(q - SquareMatrix::identity(2)) < 1e-15);
    CHECK(r(0, 0) == doctest::Approx(2.0));
    CHECK(r(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("qr_positive: singular matrices are rejected") {
    CHECK_THROWS_AS(qr_positive(from_rows({{1, 1}, {1, 1}})), SingularMatrix);
    CHECK_THROWS_AS(qr_positive(SquareMatrix(3)), SingularMatrix);
}

TEST_CASE("qr_positive: random factorization properties") {
    Rng rng(42);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 10;
        const SquareMatrix a = random_matrix(rng, n);
        const auto [q, r] = qr_positive(a);
        CHECK(max_abs(q * r - a) <= 1e-10 * std::max(1.0, max_abs(a)));
        CHECK(max_abs(transpose(q) * q - SquareMatrix::identity(n)) <= 1e-12);
        for (std::size_t i = 0; i < n; ++i) CHECK(r(i, i) > 0.0);
    }
}

TEST_CASE("sym_eigen_desc: diagonal input") {
    const auto eig = sym_eigen_desc(from_rows({{3, 0}, {0, 1}}));
    CHECK(eig.values[0] == doctest::Approx(3.0));
    CHECK(eig.values[1] == doctest::Approx(1.0));
    CHECK(max_abs(eig.vectors - SquareMatrix::identity(2)) < 1e-14);
}

TEST_CASE("sym_eigen_desc: rank-one projector, eigenpairs by characteristic polynomial") {
    const auto eig = sym_eigen_desc(from_rows({{0.5, 0.5}, {0.5, 0.5}}));
    CHECK(eig.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(eig.values[1] == doctest::Approx(0.0).scale(1.0).epsilon(1e-13));
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(eig.vectors(0, 0) == doctest::Approx(s));
    CHECK(eig.vectors(1, 0) == doctest::Approx(s));
    CHECK(eig.vectors(0, 1) == doctest::Approx(s));
    CHECK(eig.vectors(1, 1) == doctest::Approx(-s));
}

TEST_CASE("sym_eigen_desc: off-diagonal flip has eigenvalues (1,-1)") {
    const auto eig = sym_eigen_desc(from_rows({{0, 1}, {1, 0}}));
    CHECK(eig.values[0] == doctest::Approx(1.0));
    CHECK(eig.values[1] == doctest::Approx(-1.0));
}

TEST_CASE("sym_eigen_desc: random 2x2 against the quadratic formula") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const double a = rng.uniform(-2, 2), b = rng.uniform(0.2, 2), c = rng.uniform(-2, 2);
        const double disc = std::sqrt((a - c) * (a - c) + 4 * b * b);
        const auto eig = sym_eigen_desc(from_rows({{a, b}, {b, c}}));
        CHECK(eig.values[0] == doctest::Approx(0.5 * (a + c + disc)).epsilon(1e-12));
        CHECK(eig.values[1] == doctest::Approx(0.5 * (a + c - disc)).epsilon(1e-12));
    }
}

TEST_CASE("sym_eigen_desc: asymmetric and degenerate inputs are rejected") {
    CHECK_THROWS_AS(sym_eigen_desc(from_rows({{0, 1}, {0, 0}})), NotSymmetric);
    CHECK_THROWS_AS(sym_eigen_desc(SquareMatrix::identity(2)), DegenerateSpectrum);
}

TEST_CASE("sym_eigen_desc: random reconstruction and orthonormality") {
    Rng rng(11);
    int accepted = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 1 + trial % 10;
        SquareMatrix a(n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i <= j; ++i) {
                const double v = rng.uniform(-2, 2);
                a(i, j) = v;
                a(j, i) = v;
            }
        EigenDecomposition eig;
        try {
            eig = sym_eigen_desc(a);
        } catch (const DegenerateSpectrum&) {
            continue; // legitimately outside the domain
        }
        ++accepted;
        const std::size_t nn = n;
        SquareMatrix recon = eig.vectors * SquareMatrix::diagonal(eig.values);
        recon = recon * transpose(eig.vectors);
        CHECK(max_abs(recon - a) <= 1e-10 * std::max(1.0, max_abs(a)));
        CHECK(max_abs(transpose(eig.vectors) * eig.vectors - SquareMatrix::identity(nn)) <= 1e-12);
        for (std::size_t j = 0; j < nn; ++j) CHECK(eig.vectors(0, j) >= 0.0);
    }
    CHECK(accepted > 40);
}

TEST_CASE("leading_minors: identity, 2x2 determinant, diagonal products") {
    const auto ident = leading_minors(SquareMatrix::identity(3));
    CHECK(ident == std::vector<double>{1, 1, 1});

    const auto pair = leading_minors(from_rows({{2, 1}, {1, 1}}));
    CHECK(pair[0] == doctest::Approx(2.0));
    CHECK(pair[1] == doctest::Approx(1.0)); // 2*1 - 1*1

    const auto diag = leading_minors(SquareMatrix::diagonal({2, 3, 4}));
    CHECK(diag[0] == doctest::Approx(2.0));
    CHECK(diag[1] == doctest::Approx(6.0));
    CHECK(diag[2] == doctest::Approx(24.0));
}

TEST_CASE("leading_minors: singular blocks give zero, no error") {
    const auto m = leading_minors(from_rows({{1, 1}, {1, 1}}));
    CHECK(m[0] == doctest::Approx(1.0));
    CHECK(m[1] == doctest::Approx(0.0));
}

TEST_CASE("leading_minors: random 2x2 against ad - bc") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const SquareMatrix a = random_matrix(rng, 2);
        const auto m = leading_minors(a);
        CHECK(m[0] == doctest::Approx(a(0, 0)));
        CHECK(m[1] ==
              doctest::Approx(a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("parts: definition unrolled and edge cases") {
    const auto p = parts(from_rows({{1, 2}, {3, 4}}));
    CHECK(p.strictly_lower == from_rows({{0, 0}, {3, 0}}));
    CHECK(p.diag == from_rows({{1, 0}, {0, 4}}));
    CHECK(p.strictly_upper == from_rows({{0, 2}, {0, 0}}));

    const auto sym = parts(from_rows({{1, 2}, {2, 5}}));
    CHECK(max_abs(sym.antisym) == 0.0);

    const auto zero = parts(SquareMatrix(2));
    CHECK(max_abs(zero.strictly_lower + zero.diag + zero.strictly_upper) == 0.0);
    CHECK(max_abs(zero.antisym + zero.sym) == 0.0);
}

TEST_CASE("parts: recombination of the pieces") {
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 8;
        const SquareMatrix x = random_matrix(rng, n);
        const auto p = parts(x);

        // Disjoint supports: the triangular pieces recombine bitwise.
        CHECK((p.strictly_lower + p.diag) + p.strictly_upper == x);

        // The halved split carries one rounding each way; 2 ulp covers it.
        const SquareMatrix sum = p.antisym + p.sym;
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i)
                CHECK(std::abs(sum(i, j) - x(i, j)) <= 4.5e-16 * std::max(1.0, std::abs(x(i, j))));
    }
}

TEST_CASE("inverse and solve round trip") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 1 + trial % 6;
        const SquareMatrix a = random_matrix(rng, n);
        const SquareMatrix inv = inverse(a);
        CHECK(max_abs(a * inv - SquareMatrix::identity(n)) < 1e-10);

        std::vector<double> b(n);
        for (double& v : b) v = rng.uniform(-1, 1);
        const auto x = solve(a, b);
        for (std::size_t i = 0; i < n; ++i) {
            double ax = 0.0;
            for (std::size_t j = 0; j < n; ++j) ax += a(i, j) * x[j];
            CHECK(ax == doctest::Approx(b[i]).epsilon(1e-9).scale(1.0));
        }
    }
}
