#ifndef QNULL_EXACTLINALG_HPP
#define QNULL_EXACTLINALG_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qnull/incidence.hpp"

namespace qnull {

/// Dense matrix over Z_p, p prime, row-major.
class GfpMatrix {
public:
    GfpMatrix(unsigned p, std::size_t rows, std::size_t cols);
    static GfpMatrix from_incidence(const IncidenceMatrix& m, unsigned p);
    static GfpMatrix identity(unsigned p, std::size_t n);

    unsigned p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::uint8_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint64_t v) { data_[r * cols_ + c] = static_cast<std::uint8_t>(v % p_); }
    std::span<const std::uint8_t> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<std::uint8_t> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    /// M v mod p.
    std::vector<std::uint8_t> multiply(std::span<const std::uint8_t> v) const;

    friend bool operator==(const GfpMatrix&, const GfpMatrix&) = default;

private:
    unsigned p_;
    std::size_t rows_, cols_;
    std::vector<std::uint8_t> data_;
};

/// Dense integer matrix for exact work over Q.
class IntMatrix {
public:
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
    static IntMatrix from_incidence(const IncidenceMatrix& m);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = v; }

    /// Submatrix on the given columns, in that order.
    IntMatrix columns(std::span<const std::size_t> cols) const;

private:
    std::size_t rows_, cols_;
    std::vector<std::int64_t> data_;
};

struct RrefResult {
    GfpMatrix rref;
    std::size_t rank;
    std::vector<std::size_t> pivots;
};

/// Reduced row echelon form over Z_p.
RrefResult rref_gfp(const GfpMatrix& m);

/// Basis of {c : M c = 0 mod p}: one vector per free column, in increasing free-column order,
/// with a 1 at that column.
std::vector<std::vector<std::uint8_t>> kernel_basis_gfp(const GfpMatrix& m);

/// Exact rank over Q by fraction-free (Bareiss) elimination on unbounded integers.
std::size_t rank_rational(const IntMatrix& m);

enum class SearchMode { kernel_enumeration, support_enumeration, branch_and_bound };

std::string to_string(SearchMode mode);

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/*
 * Result of a minimum-weight or minimum-support kernel search. The witness
 * (support positions ascending, matching values) has been re-checked to lie in
 * the kernel before the report is returned. When `exhaustive` holds, no
 * nonzero kernel vector of smaller weight exists; when no weight is reported,
 * none of weight <= cap exists.
 */
struct SearchReport {
    std::optional<std::size_t> weight;
    std::vector<std::size_t> support;
    /// Codes in [0, p) for GF(p) searches; a primitive integer vector for rational searches.
    std::vector<std::int64_t> values;
    SearchMode mode = SearchMode::support_enumeration;
    bool exhaustive = false;
    std::size_t cap = 0;
};

struct SearchOptions {
    /// Maximum number of kernel vectors walked by kernel enumeration.
    std::uint64_t budget = 0;
    unsigned threads = 1;
};

/// 2^22, or the value of QNULL_BUDGET when set.
std::uint64_t default_budget();

/// Minimum Hamming weight of a nonzero kernel vector of M over GF(p), searching weights <= cap.
/// Ties resolve to the lexicographically least support, then the scalar multiple with leading value 1.
/// kernel_enumeration throws BudgetExceeded when p^(kernel dim) exceeds the budget.
SearchReport min_weight_kernel_gfp(const GfpMatrix& m, std::size_t cap, SearchMode mode,
                                   const SearchOptions& options = {});

/// Smallest set of at most cap columns that is linearly dependent over Q, by increasing size and then
/// lexicographically, with the dependency as a primitive integer vector whose first entry is positive.
SearchReport min_support_kernel_rational(const IntMatrix& m, std::size_t cap, const SearchOptions& options = {});

}  // namespace qnull

#endif
