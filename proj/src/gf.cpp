#include "qnull/gf.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace qnull {

namespace {

const std::map<unsigned, std::vector<unsigned>>& modulus_table() {
    static const std::map<unsigned, std::vector<unsigned>> table = {
        {4, {1, 1, 1}},     {8, {1, 1, 0, 1}},  {9, {2, 2, 1}},
        {16, {1, 1, 0, 0, 1}}, {25, {2, 4, 1}}, {27, {1, 2, 0, 1}},
    };
    return table;
}

std::vector<unsigned> digits(unsigned code, unsigned p, unsigned s) {
    std::vector<unsigned> d(s);
    for (unsigned i = 0; i < s; ++i) {
        d[i] = code % p;
        code /= p;
    }
    return d;
}

unsigned from_digits(const std::vector<unsigned>& d, unsigned p) {
    unsigned code = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) code = code * p + *it;
    return code;
}

// Remainder of a modulo monic b over Z_p.
std::vector<unsigned> poly_mod(std::vector<unsigned> a, const std::vector<unsigned>& b, unsigned p) {
    const std::size_t db = b.size() - 1;
    while (a.size() > db) {
        const unsigned lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        if (lead != 0) {
            for (std::size_t i = 0; i <= db; ++i) a[shift + i] = (a[shift + i] + (p - lead) * b[i]) % p;
        }
        a.pop_back();
    }
    return a;
}

}  // namespace

bool is_prime(unsigned v) {
    if (v < 2) return false;
    for (unsigned d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

std::pair<unsigned, unsigned> prime_power(unsigned q) {
    for (unsigned p = 2; p <= q; ++p) {
        if (!is_prime(p) || q % p != 0) continue;
        unsigned s = 0;
        unsigned rest = q;
        while (rest % p == 0) {
            rest /= p;
            ++s;
        }
        if (rest != 1) break;
        return {p, s};
    }
    throw FieldError(std::to_string(q) + " is not a prime power");
}

bool is_power_of(unsigned r, unsigned p) {
    if (p < 2 || r < p) return false;
    while (r % p == 0) r /= p;
    return r == 1;
}

namespace detail {

bool poly_irreducible(const std::vector<unsigned>& f, unsigned p) {
    const std::size_t deg = f.size() - 1;
    for (std::size_t d = 1; 2 * d <= deg; ++d) {
        // all monic polynomials of degree d
        unsigned count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (unsigned c = 0; c < count; ++c) {
            auto g = digits(c, p, static_cast<unsigned>(d));
            g.push_back(1);
            auto rem = poly_mod(f, g, p);
            bool zero = true;
            for (unsigned v : rem) zero = zero && v == 0;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace detail

FieldSpec::FieldSpec(unsigned p, unsigned s, std::vector<unsigned> modulus)
    : p_(p), s_(s), q_(1), modulus_(std::move(modulus)) {
    for (unsigned i = 0; i < s; ++i) q_ *= p;
    add_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    neg_.resize(q_);
    inv_.assign(q_, 0);

    for (unsigned a = 0; a < q_; ++a) {
        const auto da = digits(a, p, s);
        std::vector<unsigned> dn(s);
        for (unsigned i = 0; i < s; ++i) dn[i] = (p - da[i]) % p;
        neg_[a] = static_cast<Code>(from_digits(dn, p));
        for (unsigned b = 0; b < q_; ++b) {
            const auto db = digits(b, p, s);
            std::vector<unsigned> sum(s);
            for (unsigned i = 0; i < s; ++i) sum[i] = (da[i] + db[i]) % p;
            add_[a * q_ + b] = static_cast<Code>(from_digits(sum, p));

            if (s == 1) {
                mul_[a * q_ + b] = static_cast<Code>(a * b % p);
                continue;
            }
            std::vector<unsigned> prod(2 * s - 1, 0);
            for (unsigned i = 0; i < s; ++i)
                for (unsigned j = 0; j < s; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            auto rem = poly_mod(prod, modulus_, p);
            rem.resize(s, 0);
            mul_[a * q_ + b] = static_cast<Code>(from_digits(rem, p));
        }
    }
    for (unsigned a = 1; a < q_; ++a)
        for (unsigned b = 1; b < q_; ++b)
            if (mul_[a * q_ + b] == 1) inv_[a] = static_cast<Code>(b);

    if (s > 1) {
        if (!detail::poly_irreducible(modulus_, p))
            throw FieldError("modulus " + modulus_string() + " is reducible");
        // the class of x has code p
        if (order(static_cast<Code>(p)) != q_ - 1)
            throw FieldError("modulus " + modulus_string() + " is not primitive");
    }
}

unsigned FieldSpec::order(Code a) const {
    if (a == 0) throw FieldError("order of zero");
    unsigned k = 1;
    Code x = a;
    while (x != 1) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::string FieldSpec::modulus_string() const {
    if (s_ == 1) return "-";
    std::string out;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
        const unsigned c = modulus_[i];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0 || c != 1) out += std::to_string(c);
        if (i >= 1) out += 'x';
        if (i >= 2) out += '^' + std::to_string(i);
    }
    return out;
}

bool FieldSpec::supported(unsigned q) {
    if (q < 2 || q > kMaxOrder) return false;
    if (is_prime(q)) return true;
    return modulus_table().count(q) != 0;
}

const FieldSpec& FieldSpec::get(unsigned q) {
    if (!supported(q)) throw FieldError("unsupported field order q=" + std::to_string(q));
    static std::mutex mutex;
    static std::map<unsigned, std::unique_ptr<FieldSpec>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[q];
    if (!slot) {
        const auto [p, s] = prime_power(q);
        std::vector<unsigned> modulus;
        if (s > 1) modulus = modulus_table().at(q);
        slot.reset(new FieldSpec(p, s, std::move(modulus)));
    }
    return *slot;
}

GfElement::GfElement(const FieldSpec& f, unsigned c) : field(&f), code(static_cast<Code>(c)) {
    if (c >= f.q()) throw FieldError("element code " + std::to_string(c) + " out of range for GF(" + std::to_string(f.q()) + ")");
}

namespace {
void same_field(GfElement a, GfElement b) {
    if (a.field != b.field) throw FieldError("operands from different fields");
}
}  // namespace

GfElement gf_add(GfElement a, GfElement b) {
    same_field(a, b);
    return {*a.field, a.field->add(a.code, b.code)};
}

GfElement gf_mul(GfElement a, GfElement b) {
    same_field(a, b);
    return {*a.field, a.field->mul(a.code, b.code)};
}

GfElement gf_inv(GfElement a) { return {*a.field, a.field->inv(a.code)}; }

}  // namespace qnull
