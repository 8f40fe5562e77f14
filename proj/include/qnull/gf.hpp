#ifndef QNULL_GF_HPP
#define QNULL_GF_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnull {

/// Element code of GF(p^s): base-p digits c_0..c_{s-1} of the polynomial sum c_i x^i.
using Code = std::uint8_t;

class FieldError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/*
 * GF(q), q = p^s, with full addition, multiplication, negation and inverse
 * tables built at construction. Extension fields use a fixed modulus table:
 *
 *   GF(4)  x^2+x+1      GF(8)  x^3+x+1      GF(9)  x^2+2x+2
 *   GF(16) x^4+x+1      GF(25) x^2+4x+2     GF(27) x^3+2x+1
 *
 * The modulus is checked irreducible and primitive when the table is built.
 * Prime fields are supported for p < 32.
 */
class FieldSpec {
public:
    static constexpr unsigned kMaxOrder = 31;

    /// Shared immutable instance for q; throws FieldError if q is unsupported.
    static const FieldSpec& get(unsigned q);

    /// True if get(q) would succeed.
    static bool supported(unsigned q);

    unsigned p() const { return p_; }
    unsigned s() const { return s_; }
    unsigned q() const { return q_; }

    /// Modulus coefficients, constant term first, length s+1 (empty for s = 1).
    const std::vector<unsigned>& modulus() const { return modulus_; }

    /// Human-readable modulus, e.g. "x^2+x+1"; "-" for prime fields.
    std::string modulus_string() const;

    Code add(Code a, Code b) const { return add_[a * q_ + b]; }
    Code sub(Code a, Code b) const { return add_[a * q_ + neg_[b]]; }
    Code neg(Code a) const { return neg_[a]; }
    Code mul(Code a, Code b) const { return mul_[a * q_ + b]; }

    /// Multiplicative inverse; throws FieldError for 0.
    Code inv(Code a) const {
        if (a == 0) throw FieldError("inverse of zero in GF(" + std::to_string(q_) + ")");
        return inv_[a];
    }

    /// Multiplicative order of a nonzero element.
    unsigned order(Code a) const;

    bool operator==(const FieldSpec& other) const { return q_ == other.q_; }

private:
    FieldSpec(unsigned p, unsigned s, std::vector<unsigned> modulus);

    unsigned p_;
    unsigned s_;
    unsigned q_;
    std::vector<unsigned> modulus_;
    std::vector<Code> add_;
    std::vector<Code> mul_;
    std::vector<Code> neg_;
    std::vector<Code> inv_;
};

/// Returns true for primes (trial division).
bool is_prime(unsigned v);

/// Returns (p, s) with q = p^s, or throws FieldError if q is not a prime power.
std::pair<unsigned, unsigned> prime_power(unsigned q);

/// True if r is a power of p (r >= p).
bool is_power_of(unsigned r, unsigned p);

/// A field element tied to its field; arithmetic across fields throws.
struct GfElement {
    const FieldSpec* field;
    Code code;

    GfElement(const FieldSpec& f, unsigned c);

    bool operator==(const GfElement& o) const { return field == o.field && code == o.code; }
};

GfElement gf_add(GfElement a, GfElement b);
GfElement gf_mul(GfElement a, GfElement b);
GfElement gf_inv(GfElement a);

namespace detail {

/// Polynomial helpers over Z_p on coefficient vectors (constant term first).
bool poly_irreducible(const std::vector<unsigned>& f, unsigned p);

}  // namespace detail

}  // namespace qnull

#endif
