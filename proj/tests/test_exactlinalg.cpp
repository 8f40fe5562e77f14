#include <doctest.h>

#include <gmpxx.h>

#include <random>

#include "qnull/exactlinalg.hpp"

using namespace qnull;

namespace {

std::size_t rank_mpq(std::vector<std::vector<mpq_class>> a) {
    std::size_t rank = 0;
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const mpq_class factor = a[r][c] / a[rank][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= factor * a[rank][j];
        }
        ++rank;
    }
    return rank;
}

std::size_t rank_mpq(const IntMatrix& m) {
    std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) a[r][c] = static_cast<long>(m.at(r, c));
    return rank_mpq(std::move(a));
}

GfpMatrix random_gfp(unsigned p, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    GfpMatrix m(p, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rng() % 3 == 0 ? rng() : 0);
    return m;
}

bool is_rref(const RrefResult& res) {
    const auto& m = res.rref;
    for (std::size_t i = 0; i < res.rank; ++i) {
        if (i && res.pivots[i] <= res.pivots[i - 1]) return false;
        for (std::size_t c = 0; c < res.pivots[i]; ++c)
            if (m.at(i, c)) return false;
        for (std::size_t r = 0; r < m.rows(); ++r)
            if (m.at(r, res.pivots[i]) != (r == i)) return false;
    }
    for (std::size_t r = res.rank; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (m.at(r, c)) return false;
    return true;
}

}  // namespace

TEST_CASE("rref examples") {
    const auto id = GfpMatrix::identity(3, 4);
    const auto r = rref_gfp(id);
    CHECK(r.rank == 4);
    CHECK(r.rref == id);
    CHECK(rref_gfp(GfpMatrix(2, 3, 5)).rank == 0);
    CHECK(rref_gfp(GfpMatrix::from_incidence(wilson_matrix(2, 4, 1, 2), 2)).rank == 11);
    CHECK(rref_gfp(GfpMatrix::from_incidence(wilson_matrix(2, 3, 1, 2), 2)).rank == 4);
    CHECK(rref_gfp(GfpMatrix::from_incidence(wilson_matrix(3, 3, 1, 2), 3)).rank == 7);
    CHECK_THROWS(GfpMatrix(4, 2, 2));
    CHECK_THROWS(GfpMatrix::from_incidence(wilson_matrix(4, 3, 1, 2), 4));
}

TEST_CASE("rref structure, row space and rank over small primes") {
    std::mt19937_64 rng(23);
    for (unsigned p : {2u, 3u, 5u, 7u})
        for (int trial = 0; trial < 60; ++trial) {
            const auto m = random_gfp(p, 1 + rng() % 8, 1 + rng() % 10, rng);
            const auto res = rref_gfp(m);
            CHECK(is_rref(res));
            CHECK(res.pivots.size() == res.rank);
            // every kernel vector of the rref annihilates the original rows as well
            for (const auto& v : kernel_basis_gfp(res.rref)) {
                const auto mv = m.multiply(v);
                CHECK(std::all_of(mv.begin(), mv.end(), [](auto x) { return x == 0; }));
            }
            CHECK(rref_gfp(res.rref).rref == res.rref);
        }
}

TEST_CASE("kernel basis") {
    CHECK(kernel_basis_gfp(GfpMatrix::identity(5, 6)).empty());
    const auto zero = kernel_basis_gfp(GfpMatrix(3, 2, 4));
    REQUIRE(zero.size() == 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) CHECK(zero[i][j] == (i == j));
    const auto w = GfpMatrix::from_incidence(wilson_matrix(2, 4, 1, 2), 2);
    const auto basis = kernel_basis_gfp(w);
    CHECK(basis.size() == 24);
    for (const auto& v : basis) {
        const auto mv = w.multiply(v);
        CHECK(std::all_of(mv.begin(), mv.end(), [](auto x) { return x == 0; }));
    }
    // independence: the basis stacked as rows has full rank
    GfpMatrix stack(2, basis.size(), w.cols());
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j) stack.set(i, j, basis[i][j]);
    CHECK(rref_gfp(stack).rank == 24);
}

TEST_CASE("rank-nullity over GF(p)") {
    std::mt19937_64 rng(29);
    for (unsigned p : {2u, 3u, 5u})
        for (int trial = 0; trial < 40; ++trial) {
            const auto m = random_gfp(p, 1 + rng() % 7, 1 + rng() % 9, rng);
            CHECK(rref_gfp(m).rank + kernel_basis_gfp(m).size() == m.cols());
        }
}

TEST_CASE("rational rank examples") {
    CHECK(rank_rational(IntMatrix::from_incidence(wilson_matrix(2, 4, 1, 2))) == 15);
    CHECK(rank_rational(IntMatrix::from_incidence(wilson_matrix(3, 3, 1, 2))) == 13);
    CHECK(rank_rational(IntMatrix(4, 6)) == 0);
    CHECK(rank_rational(IntMatrix(0, 0)) == 0);
}

TEST_CASE("rational rank agrees with rational elimination on large entries") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 80; ++trial) {
        const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
        IntMatrix m(rows, cols);
        const std::size_t planted = rng() % (std::min(rows, cols) + 1);
        // low-rank product plus noise-free structure so the rank is not always full
        std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(planted)), b(planted, std::vector<std::int64_t>(cols));
        for (auto& r : a)
            for (auto& e : r) e = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
        for (auto& r : b)
            for (auto& e : r) e = static_cast<std::int64_t>(rng() % 2000001) - 1000000;
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                std::int64_t s = 0;
                for (std::size_t l = 0; l < planted; ++l) s += a[i][l] * b[l][j];
                m.set(i, j, s);
            }
        CHECK(rank_rational(m) == rank_mpq(m));
    }
}

TEST_CASE("rational rank of wilson matrices matches rational elimination") {
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 3; ++n)
            for (unsigned t = 0; t <= n; ++t)
                for (unsigned k = t; k <= n; ++k) {
                    const auto m = IntMatrix::from_incidence(wilson_matrix(q, n, t, k));
                    CHECK(rank_rational(m) == rank_mpq(m));
                }
}

TEST_CASE("column submatrix") {
    IntMatrix m(2, 3);
    m.set(0, 0, 1);
    m.set(0, 2, 5);
    m.set(1, 1, -2);
    const std::vector<std::size_t> pick{2, 0};
    const auto s = m.columns(pick);
    CHECK(s.cols() == 2);
    CHECK(s.at(0, 0) == 5);
    CHECK(s.at(0, 1) == 1);
    CHECK(s.at(1, 0) == 0);
}
