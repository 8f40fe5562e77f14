#ifndef QNULL_NULLDESIGN_HPP
#define QNULL_NULLDESIGN_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "qnull/grassmannian.hpp"

namespace qnull {

/// Raised when a design has support below the strength being checked.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/*
 * Finitely supported map from subspaces of GF(q)^n of dimension >= t_claimed
 * to nonzero residues mod r, where r is a power of p with r <= q. Zero
 * coefficients are never stored. Support is ordered by (dimension, ordinal).
 */
class NullDesign {
public:
    NullDesign(const FieldSpec& field, unsigned n, unsigned r, unsigned t_claimed);

    const FieldSpec& field() const { return *field_; }
    unsigned n() const { return n_; }
    unsigned r() const { return r_; }
    unsigned t_claimed() const { return t_claimed_; }

    /// Sets C(x) = coeff mod r; a zero residue removes x from the support.
    void set(const Subspace& x, std::uint64_t coeff);
    std::uint32_t at(const Subspace& x) const;

    const std::map<Subspace, std::uint32_t>& support() const { return support_; }
    std::size_t size() const { return support_.size(); }
    bool is_void() const { return support_.empty(); }

    /// True iff every nonzero lies in J_q(n,k).
    bool uniform(unsigned k) const;
    /// Smallest support dimension, or nullopt for the void design.
    std::optional<unsigned> min_dim() const;

    /// Same support read mod a divisor r' of r.
    NullDesign reduced(unsigned new_r) const;

private:
    const FieldSpec* field_;
    unsigned n_;
    unsigned r_;
    unsigned t_claimed_;
    std::map<Subspace, std::uint32_t> support_;
};

/// C(>= y) mod r.
std::uint32_t sum_over_superspaces(const NullDesign& c, const Subspace& y);

struct Violation {
    Subspace y;
    std::uint32_t value;
};

struct Verdict {
    bool ok = true;
    std::vector<Violation> violations;  // in J_q(n,t) order
};

/// Checks C(>= y) = 0 for every y in J_q(n,t). Throws DomainError if support has dimension < t.
Verdict verify_strength(const NullDesign& c, unsigned t);

/// The common value of C(>= z) over J_q(n,t), if there is one.
std::optional<std::uint32_t> check_constant_sum(const NullDesign& c, unsigned t);

/// Largest tau <= t_max (and <= the smallest support dimension) at which the design verifies;
/// nullopt if strength 0 already fails.
std::optional<unsigned> strength_of(const NullDesign& c, unsigned t_max);

/// C(v) = 1 on v = <e_1..e_{t+1}> and C(u) = r-1 on every t-dimensional u inside v.
/// r defaults to p.
NullDesign construct_lb_design(unsigned q, unsigned n, unsigned t, std::optional<unsigned> r = std::nullopt);

/// u in v in w with dims k-t-1, k-t, k+1.
struct Chain {
    Subspace u;
    Subspace v;
    Subspace w;
};

/// w = <e_1..e_{k+1}>, u = <e_1..e_{k-t-1}>, v = <e_1..e_{k-t}>.
Chain default_chain(const FieldSpec& field, unsigned n, unsigned k, unsigned t);

/// Uniformly chosen w, then v inside w, then u inside v.
Chain random_chain(const FieldSpec& field, unsigned n, unsigned k, unsigned t, std::mt19937_64& rng);

/// Indicator of {x in J(k): u < x < w} minus {x in J(k): v < x < w}, coefficients mod r (default q).
NullDesign construct_uniform_design(unsigned q, unsigned n, unsigned k, unsigned t,
                                    const std::optional<Chain>& chain = std::nullopt,
                                    std::optional<unsigned> r = std::nullopt);

/// Design file: header "q n r t_claimed", then "dim|subspace-text|coeff" per support element.
void write_design(std::ostream& out, const NullDesign& c);
NullDesign read_design(std::istream& in);

}  // namespace qnull

#endif
