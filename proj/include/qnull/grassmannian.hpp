#ifndef QNULL_GRASSMANNIAN_HPP
#define QNULL_GRASSMANNIAN_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qnull/gf.hpp"

namespace qnull {

using Vec = std::vector<Code>;

/// Number of k-dimensional subspaces of GF(q)^n; 0 when k < 0 or k > n.
/// Throws std::overflow_error if the value does not fit in 64 bits.
std::uint64_t gaussian_binomial(int n, int k, unsigned q);

/// Position of a subspace in the fixed enumeration order of J_q(n,k).
struct SubspaceIndex {
    std::uint64_t ordinal = 0;
    auto operator<=>(const SubspaceIndex&) const = default;
};

/*
 * A k-dimensional subspace of GF(q)^n held as its canonical reduced row
 * echelon basis (k x n, pivots strictly increasing, pivot entries 1, zeros
 * above and below pivots). Two values are equal iff the bases are identical.
 *
 * Order within J_q(n,k): pivot-column sets lexicographically, then the free
 * (non-pivot-column) entries read row-major as a base-q number, most
 * significant first. Subspaces compare by (k, ordinal).
 */
class Subspace {
public:
    /// The zero space of GF(q)^n.
    Subspace(const FieldSpec& field, unsigned n);

    const FieldSpec& field() const { return *field_; }
    unsigned n() const { return n_; }
    unsigned k() const { return k_; }
    unsigned dim() const { return k_; }

    Code at(unsigned row, unsigned col) const { return basis_[row * n_ + col]; }
    std::span<const Code> row(unsigned i) const { return {basis_.data() + i * n_, n_}; }
    const Vec& basis() const { return basis_; }
    const std::vector<unsigned>& pivots() const { return pivots_; }

    SubspaceIndex index() const { return {ordinal_}; }

    /// Rows of n element-code digits joined by ';'. The zero space is "".
    std::string to_string() const;

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.field_ == b.field_ && a.n_ == b.n_ && a.k_ == b.k_ && a.basis_ == b.basis_;
    }
    friend std::strong_ordering operator<=>(const Subspace& a, const Subspace& b) {
        if (auto c = a.k_ <=> b.k_; c != 0) return c;
        return a.ordinal_ <=> b.ordinal_;
    }

private:
    friend Subspace canonicalize(const FieldSpec&, unsigned, std::span<const Vec>);
    friend Subspace from_index(const FieldSpec&, unsigned, unsigned, SubspaceIndex);
    friend class SubspaceEnumerator;

    Subspace(const FieldSpec& field, unsigned n, unsigned k, Vec basis, std::vector<unsigned> pivots);
    void compute_ordinal();

    const FieldSpec* field_;
    unsigned n_;
    unsigned k_;
    Vec basis_;
    std::vector<unsigned> pivots_;
    std::uint64_t ordinal_ = 0;
};

/// Canonical basis of the span of the given vectors (each of length n).
Subspace canonicalize(const FieldSpec& field, unsigned n, std::span<const Vec> rows);

/// Parses the textual form produced by Subspace::to_string and canonicalizes it.
Subspace parse_subspace(const FieldSpec& field, unsigned n, std::string_view text);

/// True iff y is a subspace of x.
bool contains(const Subspace& x, const Subspace& y);

/// x + y.
Subspace join(const Subspace& x, const Subspace& y);

/// Reduces v against the canonical basis of x in place; returns true iff v lies in x.
bool reduce_against(const Subspace& x, Vec& v);

SubspaceIndex index_of(const Subspace& x);
Subspace from_index(const FieldSpec& field, unsigned n, unsigned k, SubspaceIndex index);

/// Streams J_q(n,k) in the fixed order.
class SubspaceEnumerator {
public:
    SubspaceEnumerator(const FieldSpec& field, unsigned n, unsigned k);

    std::optional<Subspace> next();
    std::uint64_t size() const { return total_; }

private:
    bool advance_pivots();

    const FieldSpec* field_;
    unsigned n_;
    unsigned k_;
    std::uint64_t total_;
    std::vector<unsigned> pivots_;
    std::vector<std::pair<unsigned, unsigned>> free_cells_;
    std::vector<Code> free_values_;
    bool started_ = false;
    bool done_ = false;
};

/// Materialized J_q(n,k) in enumeration order.
std::vector<Subspace> enumerate(const FieldSpec& field, unsigned n, unsigned k);

/// All d-dimensional subspaces of x, in the order induced by J_q(dim x, d) on x's basis coordinates.
std::vector<Subspace> subspaces_of(const Subspace& x, unsigned d);

/// Span of the first `count` standard basis vectors of GF(q)^n.
Subspace coordinate_subspace(const FieldSpec& field, unsigned n, unsigned count);

}  // namespace qnull

#endif
