#include "qnull/nulldesign.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

namespace qnull {

namespace {

void check_modulus(const FieldSpec& field, unsigned r) {
    if (!is_power_of(r, field.p()) || r > field.q())
        throw std::invalid_argument("coefficient modulus r=" + std::to_string(r) + " must be a power of p=" +
                                    std::to_string(field.p()) + " with r <= q=" + std::to_string(field.q()));
}

}  // namespace

NullDesign::NullDesign(const FieldSpec& field, unsigned n, unsigned r, unsigned t_claimed)
    : field_(&field), n_(n), r_(r), t_claimed_(t_claimed) {
    check_modulus(field, r);
    if (t_claimed > n) throw std::invalid_argument("claimed strength exceeds ambient dimension");
}

void NullDesign::set(const Subspace& x, std::uint64_t coeff) {
    if (x.n() != n_ || !(x.field() == *field_)) throw std::invalid_argument("subspace from a different ambient space");
    if (x.k() < t_claimed_)
        throw DomainError("subspace of dimension " + std::to_string(x.k()) + " below claimed strength " +
                          std::to_string(t_claimed_));
    const auto v = static_cast<std::uint32_t>(coeff % r_);
    if (v == 0) support_.erase(x);
    else support_.insert_or_assign(x, v);
}

std::uint32_t NullDesign::at(const Subspace& x) const {
    auto it = support_.find(x);
    return it == support_.end() ? 0 : it->second;
}

bool NullDesign::uniform(unsigned k) const {
    for (const auto& [x, v] : support_)
        if (x.k() != k) return false;
    return true;
}

std::optional<unsigned> NullDesign::min_dim() const {
    if (support_.empty()) return std::nullopt;
    return support_.begin()->first.k();
}

NullDesign NullDesign::reduced(unsigned new_r) const {
    if (new_r == 0 || r_ % new_r != 0) throw std::invalid_argument("new modulus must divide the current one");
    NullDesign out(*field_, n_, new_r, t_claimed_);
    for (const auto& [x, v] : support_) out.set(x, v);
    return out;
}

std::uint32_t sum_over_superspaces(const NullDesign& c, const Subspace& y) {
    if (y.n() != c.n()) throw std::invalid_argument("subspace from a different ambient space");
    std::uint64_t total = 0;
    for (const auto& [x, v] : c.support())
        if (x.k() >= y.k() && contains(x, y)) total += v;
    return static_cast<std::uint32_t>(total % c.r());
}

namespace {

void check_domain(const NullDesign& c, unsigned t) {
    if (t > c.n()) throw std::invalid_argument("strength exceeds ambient dimension");
    if (auto d = c.min_dim(); d && *d < t)
        throw DomainError("design has support of dimension " + std::to_string(*d) + " below strength " +
                          std::to_string(t));
}

}  // namespace

namespace {

// C(>= y) for every y in J_q(n,t), indexed by ordinal: each support element adds its
// coefficient to all of its t-dimensional subspaces.
std::vector<std::uint32_t> superspace_sums(const NullDesign& c, unsigned t) {
    const auto rows = gaussian_binomial(static_cast<int>(c.n()), static_cast<int>(t), c.field().q());
    std::vector<std::uint32_t> sums(rows, 0);
    for (const auto& [x, v] : c.support())
        for (const auto& y : subspaces_of(x, t)) {
            auto& s = sums[y.index().ordinal];
            s = static_cast<std::uint32_t>((s + v) % c.r());
        }
    return sums;
}

}  // namespace

Verdict verify_strength(const NullDesign& c, unsigned t) {
    check_domain(c, t);
    Verdict verdict;
    if (c.is_void()) return verdict;
    const auto sums = superspace_sums(c, t);
    for (std::uint64_t i = 0; i < sums.size(); ++i)
        if (sums[i] != 0) verdict.violations.push_back({from_index(c.field(), c.n(), t, {i}), sums[i]});
    verdict.ok = verdict.violations.empty();
    return verdict;
}

std::optional<std::uint32_t> check_constant_sum(const NullDesign& c, unsigned t) {
    check_domain(c, t);
    const auto sums = superspace_sums(c, t);
    for (auto v : sums)
        if (v != sums.front()) return std::nullopt;
    return sums.front();
}

std::optional<unsigned> strength_of(const NullDesign& c, unsigned t_max) {
    const unsigned top = std::min({t_max, c.n(), c.min_dim().value_or(t_max)});
    std::optional<unsigned> best;
    // verifying sets are downward closed, so stop at the first failure
    for (unsigned tau = 0; tau <= top; ++tau) {
        if (!verify_strength(c, tau).ok) break;
        best = tau;
    }
    return best;
}

NullDesign construct_lb_design(unsigned q, unsigned n, unsigned t, std::optional<unsigned> r) {
    if (t >= n) throw std::invalid_argument("lower-bound design needs t < n");
    const auto& field = FieldSpec::get(q);
    const unsigned mod = r.value_or(field.p());
    NullDesign c(field, n, mod, t);
    const auto v = coordinate_subspace(field, n, t + 1);
    c.set(v, 1);
    for (const auto& u : subspaces_of(v, t)) c.set(u, mod - 1);
    return c;
}

namespace {

void check_chain_params(unsigned n, unsigned k, unsigned t) {
    if (!(t < k && k < n)) throw std::invalid_argument("uniform design needs 0 <= t < k < n");
}

Subspace random_subspace_of(const Subspace& x, unsigned d, std::mt19937_64& rng) {
    const auto& f = x.field();
    const auto count = gaussian_binomial(static_cast<int>(x.k()), static_cast<int>(d), f.q());
    const auto pick = from_index(f, x.k(), d, {rng() % count});
    std::vector<Vec> rows(d, Vec(x.n(), 0));
    for (unsigned i = 0; i < d; ++i)
        for (unsigned j = 0; j < x.k(); ++j) {
            const Code a = pick.at(i, j);
            if (a == 0) continue;
            for (unsigned m = 0; m < x.n(); ++m) rows[i][m] = f.add(rows[i][m], f.mul(a, x.at(j, m)));
        }
    return canonicalize(f, x.n(), rows);
}

}  // namespace

Chain default_chain(const FieldSpec& field, unsigned n, unsigned k, unsigned t) {
    check_chain_params(n, k, t);
    return {coordinate_subspace(field, n, k - t - 1), coordinate_subspace(field, n, k - t),
            coordinate_subspace(field, n, k + 1)};
}

Chain random_chain(const FieldSpec& field, unsigned n, unsigned k, unsigned t, std::mt19937_64& rng) {
    check_chain_params(n, k, t);
    const auto total = gaussian_binomial(static_cast<int>(n), static_cast<int>(k + 1), field.q());
    auto w = from_index(field, n, k + 1, {rng() % total});
    auto v = random_subspace_of(w, k - t, rng);
    auto u = random_subspace_of(v, k - t - 1, rng);
    return {std::move(u), std::move(v), std::move(w)};
}

NullDesign construct_uniform_design(unsigned q, unsigned n, unsigned k, unsigned t, const std::optional<Chain>& chain,
                                    std::optional<unsigned> r) {
    check_chain_params(n, k, t);
    const auto& field = FieldSpec::get(q);
    const Chain ch = chain ? *chain : default_chain(field, n, k, t);
    if (ch.u.n() != n || ch.v.n() != n || ch.w.n() != n || !(ch.w.field() == field))
        throw std::invalid_argument("chain lives in a different ambient space");
    if (ch.u.k() != k - t - 1 || ch.v.k() != k - t || ch.w.k() != k + 1)
        throw std::invalid_argument("chain dimensions must be k-t-1, k-t, k+1");
    if (!contains(ch.v, ch.u) || !contains(ch.w, ch.v)) throw std::invalid_argument("chain is not nested");

    NullDesign c(field, n, r.value_or(q), t);
    for (const auto& x : subspaces_of(ch.w, k))
        if (contains(x, ch.u) && !contains(x, ch.v)) c.set(x, 1);
    return c;
}

void write_design(std::ostream& out, const NullDesign& c) {
    out << c.field().q() << ' ' << c.n() << ' ' << c.r() << ' ' << c.t_claimed() << '\n';
    for (const auto& [x, v] : c.support()) out << x.k() << '|' << x.to_string() << '|' << v << '\n';
}

NullDesign read_design(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("design file: missing header");
    std::istringstream header(line);
    unsigned q, n, r, t;
    if (!(header >> q >> n >> r >> t)) throw std::runtime_error("design file: malformed header");
    const auto& field = FieldSpec::get(q);
    NullDesign c(field, n, r, t);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto a = line.find('|');
        const auto b = a == std::string::npos ? a : line.find('|', a + 1);
        if (b == std::string::npos) throw std::runtime_error("design file: bad record on line " + std::to_string(lineno));
        const auto dim = std::stoul(line.substr(0, a));
        auto x = parse_subspace(field, n, std::string_view(line).substr(a + 1, b - a - 1));
        if (x.k() != dim)
            throw std::runtime_error("design file: dimension mismatch on line " + std::to_string(lineno));
        const long long coeff = std::stoll(line.substr(b + 1));
        if (coeff <= 0 || coeff >= static_cast<long long>(r))
            throw std::runtime_error("design file: coefficient out of range on line " + std::to_string(lineno));
        c.set(x, static_cast<std::uint64_t>(coeff));
    }
    return c;
}

}  // namespace qnull
