#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "maxdet/exact.hpp"
#include "maxdet/hadamard_gen.hpp"
#include "oracles.hpp"

using maxdet::AdjugateResult;
using maxdet::ExactInt;
using maxdet::ExactRational;
using maxdet::IntMatrix;

namespace {

IntMatrix from_list(int n, const std::vector<long>& v) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.at(i, j) = v[i * n + j];
    return m;
}

}  // namespace

TEST_CASE("determinant of small fixed matrices") {
    CHECK(maxdet::det_exact(IntMatrix(0, 0)) == 1);
    CHECK(maxdet::det_exact(from_list(1, {7})) == 7);
    CHECK(maxdet::det_exact(from_list(2, {0, 1, 1, 0})) == -1);
    CHECK(maxdet::det_exact(from_list(2, {1, 2, 3, 4})) == -2);
    CHECK(maxdet::det_exact(from_list(3, {0, 0, 1, 0, 1, 0, 1, 0, 0})) == -1);
    CHECK(maxdet::det_exact(from_list(3, {1, 2, 3, 4, 5, 6, 7, 8, 9})) == 0);
    CHECK(maxdet::det_exact(IntMatrix::identity(6)) == 1);
}

TEST_CASE("determinant agrees with cofactor expansion on random matrices") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 1 + trial % 6;
        IntMatrix a = oracle::random_int_matrix(n, -9, 9, rng);
        if (trial % 7 == 0) {
            // Force a zero pivot now and then.
            a.at(0, 0) = 0;
        }
        CHECK(maxdet::det_exact(a) == oracle::det_laplace(a));
    }
}

TEST_CASE("determinant of a Hadamard matrix has the expected magnitude") {
    maxdet::SignMatrix h = maxdet::sylvester(4);
    ExactInt d = maxdet::det_exact(IntMatrix::from_sign(h));
    ExactInt want;
    mpz_ui_pow_ui(want.get_mpz_t(), 16, 8);
    CHECK(abs(d) == want);
}

TEST_CASE("adjugate matches cofactor construction") {
    std::mt19937 rng(32);
    for (int trial = 0; trial < 120; ++trial) {
        int n = 1 + trial % 5;
        IntMatrix a = oracle::random_int_matrix(n, -6, 6, rng);
        AdjugateResult r = maxdet::adjugate_and_det(a);
        CHECK(r.det == oracle::det_laplace(a));
        CHECK(r.adjugate == oracle::adjugate_laplace(a));
    }
}

TEST_CASE("adjugate identity holds for singular matrices") {
    IntMatrix a = from_list(3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
    AdjugateResult r = maxdet::adjugate_and_det(a);
    CHECK(r.det == 0);
    CHECK(r.adjugate == oracle::adjugate_laplace(a));
    // adj(A) * A must be the zero matrix here.
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            ExactInt s = 0;
            for (int k = 0; k < 3; ++k) s += r.adjugate.at(i, k) * a.at(k, j);
            CHECK(s == 0);
        }
    }
}

TEST_CASE("rank one determinant update") {
    std::mt19937 rng(33);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 2 + trial % 7;
        IntMatrix a = oracle::random_int_matrix(n, -9, 9, rng);
        std::vector<ExactInt> x(n), y(n);
        std::uniform_int_distribution<long> d(-9, 9);
        for (int i = 0; i < n; ++i) {
            x[i] = d(rng);
            y[i] = d(rng);
        }
        IntMatrix b = a;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) b.at(i, j) += x[i] * y[j];
        CHECK(maxdet::det_rank1_update(a, x, y) == maxdet::det_exact(b));
    }
}

TEST_CASE("excess of the inverse") {
    IntMatrix h2 = from_list(2, {1, 1, 1, -1});
    // inv = [[1/2, 1/2], [1/2, -1/2]], entry sum 1.
    CHECK(maxdet::excess_of_inverse(h2) == ExactRational(1));
    CHECK_THROWS_AS(
        maxdet::excess_of_inverse(from_list(2, {1, 1, 1, 1})),
        std::domain_error);

    std::mt19937 rng(34);
    for (int trial = 0; trial < 60; ++trial) {
        int n = 1 + trial % 5;
        IntMatrix a = oracle::random_int_matrix(n, -5, 5, rng);
        ExactInt det = maxdet::det_exact(a);
        if (det == 0) continue;
        IntMatrix adj = maxdet::adjugate_and_det(a).adjugate;
        ExactInt num = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) num += adj.at(i, j);
        ExactRational want(num, det);
        want.canonicalize();
        CHECK(maxdet::excess_of_inverse(a) == want);
    }
}

TEST_CASE("bordering a matrix") {
    IntMatrix h2 = from_list(2, {1, 1, 1, -1});
    IntMatrix e = maxdet::bordered(h2);
    REQUIRE(e.rows() == 3);
    CHECK(e.at(0, 0) == 1);
    CHECK(e.at(0, 1) == 1);
    CHECK(e.at(0, 2) == 1);
    CHECK(e.at(1, 0) == -1);
    CHECK(e.at(2, 0) == -1);
    CHECK(e.at(1, 1) == 1);
    CHECK(e.at(2, 2) == -1);
    CHECK(maxdet::det_exact(e) == -4);
    CHECK(maxdet::det_of_bordered(h2) == -4);
}

TEST_CASE("bordered determinant equals det times one plus inverse excess") {
    std::mt19937 rng(35);
    int done = 0;
    while (done < 60) {
        int n = 1 + done % 6;
        IntMatrix a = oracle::random_int_matrix(n, -5, 5, rng);
        ExactInt det = maxdet::det_exact(a);
        if (det == 0) continue;
        ++done;
        ExactRational factor = 1 + maxdet::excess_of_inverse(a);
        ExactRational want = ExactRational(det) * factor;
        want.canonicalize();
        ExactInt got = maxdet::det_of_bordered(a);
        CHECK(ExactRational(got) == want);
    }
}

TEST_CASE("bordered determinant for singular input") {
    // det E(A) = det(A) + excess-sum of adj(A); with det 0 the adjugate term
    // survives.
    IntMatrix a = from_list(2, {1, 1, 1, 1});
    IntMatrix adj = maxdet::adjugate_and_det(a).adjugate;
    ExactInt s = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) s += adj.at(i, j);
    CHECK(maxdet::det_of_bordered(a) == s);
    CHECK(maxdet::det_of_bordered(a) == maxdet::det_exact(maxdet::bordered(a)));
}

TEST_CASE("integer matrix helpers") {
    maxdet::SignMatrix h = maxdet::sylvester(2);
    IntMatrix m = IntMatrix::from_sign(h);
    REQUIRE(m.rows() == 4);
    REQUIRE(m.cols() == 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(m.at(i, j) == h.entry(i, j));
    IntMatrix t = m.transposed();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) CHECK(t.at(i, j) == m.at(j, i));
    CHECK(IntMatrix::identity(3).at(1, 1) == 1);
    CHECK(IntMatrix::identity(3).at(0, 1) == 0);
}
