#ifndef QNULL_INCIDENCE_HPP
#define QNULL_INCIDENCE_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "qnull/grassmannian.hpp"

namespace qnull {

/*
 * 0/1 matrix with sparse row and column lists. For the subspace Wilson
 * matrix W_{q;t,k}, rows are J_q(n,t) and columns J_q(n,k) in enumeration
 * order, and entry (y, x) is 1 iff y is contained in x. Entries carry no
 * modulus; reductions happen where the matrix is applied.
 */
class IncidenceMatrix {
public:
    IncidenceMatrix(unsigned q, unsigned n, unsigned t, unsigned k, std::size_t rows, std::size_t cols,
                    std::vector<std::pair<std::uint32_t, std::uint32_t>> nonzeros);

    unsigned q() const { return q_; }
    unsigned n() const { return n_; }
    unsigned t() const { return t_; }
    unsigned k() const { return k_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool entry(std::size_t row, std::size_t col) const;
    std::span<const std::uint32_t> column(std::size_t col) const { return col_rows_[col]; }
    std::span<const std::uint32_t> row(std::size_t r) const { return row_cols_[r]; }
    std::size_t nonzero_count() const;

    /// Subspaces behind row / column indices (Wilson matrices only).
    Subspace row_subspace(std::size_t r) const;
    Subspace col_subspace(std::size_t c) const;

    /// Copy with one entry toggled.
    IncidenceMatrix with_flipped(std::size_t row, std::size_t col) const;

    friend bool operator==(const IncidenceMatrix&, const IncidenceMatrix&) = default;

private:
    unsigned q_, n_, t_, k_;
    std::size_t rows_, cols_;
    std::vector<std::vector<std::uint32_t>> col_rows_;
    std::vector<std::vector<std::uint32_t>> row_cols_;
};

/// W_{q;t,k} over GF(q)^n; requires 0 <= t <= k <= n.
IncidenceMatrix wilson_matrix(unsigned q, unsigned n, unsigned t, unsigned k);

/// M c reduced mod r, where r is a power of the characteristic of GF(q) with r <= q.
std::vector<std::uint32_t> apply_check(const IncidenceMatrix& m, std::span<const std::uint32_t> c, unsigned r);

/// Coordinate export: header "q n t k rows cols", then "row col" per nonzero, row-major.
void write_coordinate(std::ostream& out, const IncidenceMatrix& m);
IncidenceMatrix read_coordinate(std::istream& in);

}  // namespace qnull

#endif
