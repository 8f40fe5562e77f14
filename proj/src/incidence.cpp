#include "qnull/incidence.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace qnull {

IncidenceMatrix::IncidenceMatrix(unsigned q, unsigned n, unsigned t, unsigned k, std::size_t rows, std::size_t cols,
                                 std::vector<std::pair<std::uint32_t, std::uint32_t>> nonzeros)
    : q_(q), n_(n), t_(t), k_(k), rows_(rows), cols_(cols), col_rows_(cols), row_cols_(rows) {
    std::sort(nonzeros.begin(), nonzeros.end());
    nonzeros.erase(std::unique(nonzeros.begin(), nonzeros.end()), nonzeros.end());
    for (auto [r, c] : nonzeros) {
        if (r >= rows || c >= cols) throw std::out_of_range("nonzero outside matrix bounds");
        row_cols_[r].push_back(c);
        col_rows_[c].push_back(r);
    }
}

bool IncidenceMatrix::entry(std::size_t row, std::size_t col) const {
    const auto& r = row_cols_.at(row);
    return std::binary_search(r.begin(), r.end(), static_cast<std::uint32_t>(col));
}

std::size_t IncidenceMatrix::nonzero_count() const {
    std::size_t total = 0;
    for (const auto& r : row_cols_) total += r.size();
    return total;
}

Subspace IncidenceMatrix::row_subspace(std::size_t r) const {
    return from_index(FieldSpec::get(q_), n_, t_, {r});
}

Subspace IncidenceMatrix::col_subspace(std::size_t c) const {
    return from_index(FieldSpec::get(q_), n_, k_, {c});
}

IncidenceMatrix IncidenceMatrix::with_flipped(std::size_t row, std::size_t col) const {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nz;
    for (std::uint32_t r = 0; r < rows_; ++r)
        for (auto c : row_cols_[r])
            if (r != row || c != col) nz.emplace_back(r, c);
    if (!entry(row, col)) nz.emplace_back(static_cast<std::uint32_t>(row), static_cast<std::uint32_t>(col));
    return IncidenceMatrix(q_, n_, t_, k_, rows_, cols_, std::move(nz));
}

IncidenceMatrix wilson_matrix(unsigned q, unsigned n, unsigned t, unsigned k) {
    if (t > k || k > n) throw std::invalid_argument("wilson matrix needs 0 <= t <= k <= n");
    const auto& field = FieldSpec::get(q);
    const auto rows = gaussian_binomial(static_cast<int>(n), static_cast<int>(t), q);
    const auto cols = gaussian_binomial(static_cast<int>(n), static_cast<int>(k), q);
    if (rows > UINT32_MAX || cols > UINT32_MAX) throw std::length_error("wilson matrix too large");

    std::vector<std::pair<std::uint32_t, std::uint32_t>> nz;
    nz.reserve(cols * gaussian_binomial(static_cast<int>(k), static_cast<int>(t), q));
    SubspaceEnumerator columns(field, n, k);
    std::uint32_t c = 0;
    while (auto x = columns.next()) {
        for (const auto& y : subspaces_of(*x, t)) nz.emplace_back(static_cast<std::uint32_t>(y.index().ordinal), c);
        ++c;
    }
    return IncidenceMatrix(q, n, t, k, rows, cols, std::move(nz));
}

std::vector<std::uint32_t> apply_check(const IncidenceMatrix& m, std::span<const std::uint32_t> c, unsigned r) {
    if (c.size() != m.cols()) throw std::invalid_argument("coefficient vector length does not match column count");
    const auto [p, s] = prime_power(m.q());
    if (!is_power_of(r, p) || r > m.q())
        throw std::invalid_argument("modulus r=" + std::to_string(r) + " is not a power of " + std::to_string(p) +
                                    " bounded by q");
    std::vector<std::uint32_t> out(m.rows(), 0);
    for (std::size_t col = 0; col < m.cols(); ++col) {
        const auto v = c[col] % r;
        if (v == 0) continue;
        for (auto row : m.column(col)) out[row] = (out[row] + v) % r;
    }
    return out;
}

void write_coordinate(std::ostream& out, const IncidenceMatrix& m) {
    out << m.q() << ' ' << m.n() << ' ' << m.t() << ' ' << m.k() << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) out << r << ' ' << c << '\n';
}

IncidenceMatrix read_coordinate(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("matrix file: missing header");
    std::istringstream header(line);
    unsigned q, n, t, k;
    std::size_t rows, cols;
    if (!(header >> q >> n >> t >> k >> rows >> cols)) throw std::runtime_error("matrix file: malformed header");
    std::vector<std::pair<std::uint32_t, std::uint32_t>> nz;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::uint64_t r, c;
        if (!(ls >> r >> c) || r >= rows || c >= cols)
            throw std::runtime_error("matrix file: bad entry on line " + std::to_string(lineno));
        nz.emplace_back(static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(c));
    }
    return IncidenceMatrix(q, n, t, k, rows, cols, std::move(nz));
}

}  // namespace qnull
