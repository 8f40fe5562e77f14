#include "qnull/grassmannian.hpp"

#include <stdexcept>

namespace qnull {

namespace {

using u128 = unsigned __int128;

std::uint64_t checked_pow(unsigned q, unsigned e) {
    u128 v = 1;
    for (unsigned i = 0; i < e; ++i) {
        v *= q;
        if (v > UINT64_MAX) throw std::overflow_error("power overflows 64 bits");
    }
    return static_cast<std::uint64_t>(v);
}

// Number of free entries of an RREF matrix with the given pivot columns.
unsigned free_count(const std::vector<unsigned>& pivots, unsigned n) {
    const auto k = static_cast<unsigned>(pivots.size());
    unsigned f = 0;
    for (unsigned i = 0; i < k; ++i) f += n - k + i - pivots[i];
    return f;
}

std::vector<std::pair<unsigned, unsigned>> free_cells(const std::vector<unsigned>& pivots, unsigned n) {
    std::vector<bool> is_pivot(n, false);
    for (unsigned c : pivots) is_pivot[c] = true;
    std::vector<std::pair<unsigned, unsigned>> cells;
    for (unsigned i = 0; i < pivots.size(); ++i)
        for (unsigned j = pivots[i] + 1; j < n; ++j)
            if (!is_pivot[j]) cells.emplace_back(i, j);
    return cells;
}

// Advances a k-combination of {0..n-1} to its lexicographic successor.
bool next_combination(std::vector<unsigned>& c, unsigned n) {
    const auto k = static_cast<unsigned>(c.size());
    for (unsigned i = k; i-- > 0;) {
        if (c[i] < n - k + i) {
            ++c[i];
            for (unsigned j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
            return true;
        }
    }
    return false;
}

std::vector<unsigned> first_combination(unsigned k) {
    std::vector<unsigned> c(k);
    for (unsigned i = 0; i < k; ++i) c[i] = i;
    return c;
}

Vec build_basis(unsigned n, const std::vector<unsigned>& pivots,
                const std::vector<std::pair<unsigned, unsigned>>& cells, std::span<const Code> values) {
    Vec basis(pivots.size() * n, 0);
    for (unsigned i = 0; i < pivots.size(); ++i) basis[i * n + pivots[i]] = 1;
    for (std::size_t c = 0; c < cells.size(); ++c) basis[cells[c].first * n + cells[c].second] = values[c];
    return basis;
}

}  // namespace

std::uint64_t gaussian_binomial(int n, int k, unsigned q) {
    if (k < 0 || n < 0 || k > n) return 0;
    u128 result = 1;
    for (int i = 0; i < k; ++i) {
        const u128 num = checked_pow(q, static_cast<unsigned>(n - i)) - 1;
        const u128 den = checked_pow(q, static_cast<unsigned>(i + 1)) - 1;
        result = result * num / den;
        if (result > UINT64_MAX) throw std::overflow_error("gaussian binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(result);
}

Subspace::Subspace(const FieldSpec& field, unsigned n) : field_(&field), n_(n), k_(0) {}

Subspace::Subspace(const FieldSpec& field, unsigned n, unsigned k, Vec basis, std::vector<unsigned> pivots)
    : field_(&field), n_(n), k_(k), basis_(std::move(basis)), pivots_(std::move(pivots)) {
    compute_ordinal();
}

void Subspace::compute_ordinal() {
    const unsigned q = field_->q();
    std::uint64_t offset = 0;
    auto combo = first_combination(k_);
    while (combo != pivots_) {
        offset += checked_pow(q, free_count(combo, n_));
        if (!next_combination(combo, n_)) throw std::logic_error("pivot set not found");
    }
    std::uint64_t value = 0;
    for (auto [i, j] : free_cells(pivots_, n_)) value = value * q + at(i, j);
    ordinal_ = offset + value;
}

std::string Subspace::to_string() const {
    static constexpr std::string_view kDigits = "0123456789abcdefghijklmnopqrstuvwxyz";
    std::string out;
    for (unsigned i = 0; i < k_; ++i) {
        if (i) out += ';';
        for (unsigned j = 0; j < n_; ++j) out += kDigits[at(i, j)];
    }
    return out;
}

Subspace canonicalize(const FieldSpec& field, unsigned n, std::span<const Vec> rows) {
    std::vector<Vec> m(rows.begin(), rows.end());
    for (const auto& r : m)
        if (r.size() != n) throw std::invalid_argument("vector length differs from ambient dimension");
    std::vector<unsigned> pivots;
    std::size_t rank = 0;
    for (unsigned col = 0; col < n && rank < m.size(); ++col) {
        std::size_t pr = rank;
        while (pr < m.size() && m[pr][col] == 0) ++pr;
        if (pr == m.size()) continue;
        std::swap(m[rank], m[pr]);
        const Code s = field.inv(m[rank][col]);
        for (auto& e : m[rank]) e = field.mul(e, s);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const Code f = m[r][col];
            for (unsigned j = col; j < n; ++j) m[r][j] = field.sub(m[r][j], field.mul(f, m[rank][j]));
        }
        pivots.push_back(col);
        ++rank;
    }
    Vec basis;
    basis.reserve(rank * n);
    for (std::size_t r = 0; r < rank; ++r) basis.insert(basis.end(), m[r].begin(), m[r].end());
    return Subspace(field, n, static_cast<unsigned>(rank), std::move(basis), std::move(pivots));
}

Subspace parse_subspace(const FieldSpec& field, unsigned n, std::string_view text) {
    std::vector<Vec> rows;
    if (!text.empty()) {
        std::size_t start = 0;
        while (true) {
            const auto end = text.find(';', start);
            const auto part = text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start);
            if (part.size() != n) throw std::invalid_argument("subspace row '" + std::string(part) + "' has wrong length");
            Vec v(n);
            for (unsigned j = 0; j < n; ++j) {
                const char c = part[j];
                unsigned d;
                if (c >= '0' && c <= '9') d = static_cast<unsigned>(c - '0');
                else if (c >= 'a' && c <= 'z') d = static_cast<unsigned>(c - 'a') + 10;
                else throw std::invalid_argument(std::string("bad digit '") + c + "' in subspace text");
                if (d >= field.q()) throw std::invalid_argument("digit out of range in subspace text");
                v[j] = static_cast<Code>(d);
            }
            rows.push_back(std::move(v));
            if (end == std::string_view::npos) break;
            start = end + 1;
        }
    }
    return canonicalize(field, n, rows);
}

bool reduce_against(const Subspace& x, Vec& v) {
    const auto& f = x.field();
    for (unsigned i = 0; i < x.k(); ++i) {
        const Code c = v[x.pivots()[i]];
        if (c == 0) continue;
        const auto row = x.row(i);
        for (unsigned j = 0; j < x.n(); ++j) v[j] = f.sub(v[j], f.mul(c, row[j]));
    }
    for (Code c : v)
        if (c != 0) return false;
    return true;
}

namespace {
void same_ambient(const Subspace& x, const Subspace& y) {
    if (x.n() != y.n() || !(x.field() == y.field()))
        throw std::invalid_argument("subspaces live in different ambient spaces");
}
}  // namespace

bool contains(const Subspace& x, const Subspace& y) {
    same_ambient(x, y);
    if (y.k() > x.k()) return false;
    Vec v(x.n());
    for (unsigned i = 0; i < y.k(); ++i) {
        const auto r = y.row(i);
        v.assign(r.begin(), r.end());
        if (!reduce_against(x, v)) return false;
    }
    return true;
}

Subspace join(const Subspace& x, const Subspace& y) {
    same_ambient(x, y);
    std::vector<Vec> rows;
    for (unsigned i = 0; i < x.k(); ++i) rows.emplace_back(x.row(i).begin(), x.row(i).end());
    for (unsigned i = 0; i < y.k(); ++i) rows.emplace_back(y.row(i).begin(), y.row(i).end());
    return canonicalize(x.field(), x.n(), rows);
}

SubspaceIndex index_of(const Subspace& x) { return x.index(); }

Subspace from_index(const FieldSpec& field, unsigned n, unsigned k, SubspaceIndex index) {
    if (k > n || index.ordinal >= gaussian_binomial(static_cast<int>(n), static_cast<int>(k), field.q()))
        throw std::out_of_range("subspace ordinal " + std::to_string(index.ordinal) + " out of range");
    const unsigned q = field.q();
    auto combo = first_combination(k);
    std::uint64_t rest = index.ordinal;
    while (true) {
        const auto block = checked_pow(q, free_count(combo, n));
        if (rest < block) break;
        rest -= block;
        next_combination(combo, n);
    }
    const auto cells = free_cells(combo, n);
    std::vector<Code> values(cells.size());
    for (std::size_t c = cells.size(); c-- > 0;) {
        values[c] = static_cast<Code>(rest % q);
        rest /= q;
    }
    auto basis = build_basis(n, combo, cells, values);
    return Subspace(field, n, k, std::move(basis), std::move(combo));
}

SubspaceEnumerator::SubspaceEnumerator(const FieldSpec& field, unsigned n, unsigned k)
    : field_(&field), n_(n), k_(k), total_(gaussian_binomial(static_cast<int>(n), static_cast<int>(k), field.q())) {
    if (k > n) done_ = true;
}

bool SubspaceEnumerator::advance_pivots() {
    if (!started_) {
        pivots_ = first_combination(k_);
        started_ = true;
    } else if (!next_combination(pivots_, n_)) {
        return false;
    }
    free_cells_ = free_cells(pivots_, n_);
    free_values_.assign(free_cells_.size(), 0);
    return true;
}

std::optional<Subspace> SubspaceEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        advance_pivots();
    } else {
        // increment the base-q counter over free entries, last entry least significant
        std::size_t c = free_values_.size();
        bool carried_out = true;
        while (c-- > 0) {
            if (++free_values_[c] < field_->q()) {
                carried_out = false;
                break;
            }
            free_values_[c] = 0;
        }
        if (carried_out && !advance_pivots()) {
            done_ = true;
            return std::nullopt;
        }
    }
    auto basis = build_basis(n_, pivots_, free_cells_, free_values_);
    return Subspace(*field_, n_, k_, std::move(basis), pivots_);
}

std::vector<Subspace> enumerate(const FieldSpec& field, unsigned n, unsigned k) {
    SubspaceEnumerator e(field, n, k);
    std::vector<Subspace> out;
    out.reserve(e.size());
    while (auto s = e.next()) out.push_back(std::move(*s));
    return out;
}

std::vector<Subspace> subspaces_of(const Subspace& x, unsigned d) {
    const auto& f = x.field();
    std::vector<Subspace> out;
    if (d > x.k()) return out;
    SubspaceEnumerator e(f, x.k(), d);
    std::vector<Vec> rows(d, Vec(x.n()));
    while (auto s = e.next()) {
        for (unsigned i = 0; i < d; ++i) {
            std::fill(rows[i].begin(), rows[i].end(), Code{0});
            for (unsigned j = 0; j < x.k(); ++j) {
                const Code c = s->at(i, j);
                if (c == 0) continue;
                const auto r = x.row(j);
                for (unsigned m = 0; m < x.n(); ++m) rows[i][m] = f.add(rows[i][m], f.mul(c, r[m]));
            }
        }
        out.push_back(canonicalize(f, x.n(), rows));
    }
    return out;
}

Subspace coordinate_subspace(const FieldSpec& field, unsigned n, unsigned count) {
    if (count > n) throw std::invalid_argument("coordinate subspace larger than ambient space");
    std::vector<Vec> rows(count, Vec(n, 0));
    for (unsigned i = 0; i < count; ++i) rows[i][i] = 1;
    return canonicalize(field, n, rows);
}

}  // namespace qnull
