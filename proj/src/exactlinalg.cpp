#include "qnull/exactlinalg.hpp"

#include <cstdlib>

#include <gmpxx.h>

#include "qnull/gf.hpp"

namespace qnull {

namespace {

std::uint8_t inverse_mod(unsigned a, unsigned p) {
    for (unsigned b = 1; b < p; ++b)
        if (a * b % p == 1) return static_cast<std::uint8_t>(b);
    throw std::domain_error("no inverse mod p");
}

}  // namespace

GfpMatrix::GfpMatrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {
    if (!is_prime(p) || p > 255) throw std::invalid_argument("GF(p) matrix needs a prime p < 256");
}

GfpMatrix GfpMatrix::from_incidence(const IncidenceMatrix& m, unsigned p) {
    GfpMatrix out(p, m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) out.set(r, c, 1);
    return out;
}

GfpMatrix GfpMatrix::identity(unsigned p, std::size_t n) {
    GfpMatrix out(p, n, n);
    for (std::size_t i = 0; i < n; ++i) out.set(i, i, 1);
    return out;
}

std::vector<std::uint8_t> GfpMatrix::multiply(std::span<const std::uint8_t> v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length does not match column count");
    std::vector<std::uint8_t> out(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        unsigned acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc = (acc + at(r, c) * v[c]) % p_;
        out[r] = static_cast<std::uint8_t>(acc);
    }
    return out;
}

IntMatrix IntMatrix::from_incidence(const IncidenceMatrix& m) {
    IntMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) out.set(r, c, 1);
    return out;
}

IntMatrix IntMatrix::columns(std::span<const std::size_t> cols) const {
    IntMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j) out.set(r, j, at(r, cols[j]));
    return out;
}

RrefResult rref_gfp(const GfpMatrix& m) {
    const unsigned p = m.p();
    GfpMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t pr = rank;
        while (pr < a.rows() && a.at(pr, col) == 0) ++pr;
        if (pr == a.rows()) continue;
        if (pr != rank) {
            auto x = a.row(pr);
            auto y = a.row(rank);
            std::swap_ranges(x.begin(), x.end(), y.begin());
        }
        auto prow = a.row(rank);
        const auto s = inverse_mod(prow[col], p);
        for (std::size_t j = col; j < a.cols(); ++j) prow[j] = static_cast<std::uint8_t>(prow[j] * s % p);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == rank) continue;
            auto row = a.row(r);
            const unsigned f = row[col];
            if (f == 0) continue;
            for (std::size_t j = col; j < a.cols(); ++j)
                row[j] = static_cast<std::uint8_t>((row[j] + (p - f) * prow[j]) % p);
        }
        pivots.push_back(col);
        ++rank;
    }
    return {std::move(a), rank, std::move(pivots)};
}

std::vector<std::vector<std::uint8_t>> kernel_basis_gfp(const GfpMatrix& m) {
    const auto [rref, rank, pivots] = rref_gfp(m);
    const unsigned p = m.p();
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<std::uint8_t> v(m.cols(), 0);
        v[f] = 1;
        for (std::size_t i = 0; i < rank; ++i) v[pivots[i]] = static_cast<std::uint8_t>((p - rref.at(i, f)) % p);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank_rational(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    std::vector<mpz_class> a(rows * cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r * cols + c] = static_cast<long>(m.at(r, c));
    auto at = [&](std::size_t r, std::size_t c) -> mpz_class& { return a[r * cols + c]; };

    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rank;
        while (pr < rows && sgn(at(pr, col)) == 0) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            for (std::size_t j = 0; j < cols; ++j) swap(at(pr, j), at(rank, j));
        const mpz_class& piv = at(rank, col);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            const mpz_class f = at(r, col);
            for (std::size_t j = col + 1; j < cols; ++j) {
                mpz_class v = piv * at(r, j) - f * at(rank, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                at(r, j) = std::move(v);
            }
            at(r, col) = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

std::string to_string(SearchMode mode) {
    switch (mode) {
        case SearchMode::kernel_enumeration: return "kernel-enumeration";
        case SearchMode::support_enumeration: return "support-enumeration";
        case SearchMode::branch_and_bound: return "branch-and-bound";
    }
    return "unknown";
}

std::uint64_t default_budget() {
    if (const char* env = std::getenv("QNULL_BUDGET"); env && *env) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("QNULL_BUDGET must be a positive integer");
    }
    return std::uint64_t{1} << 22;
}

}  // namespace qnull
