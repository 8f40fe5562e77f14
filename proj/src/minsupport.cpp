#include <algorithm>
#include <numeric>

#include <gmpxx.h>

#include "qnull/exactlinalg.hpp"
#include "parallel.hpp"

namespace qnull {

namespace {

// Columns are screened mod a large prime; a dependency there is confirmed over Q before it counts.
constexpr std::uint64_t kScreenPrime = 2147483647;  // 2^31 - 1

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
    std::uint64_t r = 1;
    b %= kScreenPrime;
    while (e) {
        if (e & 1) r = r * b % kScreenPrime;
        b = b * b % kScreenPrime;
        e >>= 1;
    }
    return r;
}

std::uint64_t inv_mod(std::uint64_t a) { return pow_mod(a, kScreenPrime - 2); }

std::uint64_t to_mod(std::int64_t v) {
    const auto m = static_cast<std::int64_t>(kScreenPrime);
    return static_cast<std::uint64_t>(((v % m) + m) % m);
}

// Primitive integer generator of the kernel of a column set known to be minimally dependent.
std::vector<std::int64_t> exact_dependency(const IntMatrix& sub) {
    const std::size_t rows = sub.rows();
    const std::size_t cols = sub.cols();
    std::vector<std::vector<mpq_class>> a(rows, std::vector<mpq_class>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) a[r][c] = static_cast<long>(sub.at(r, c));
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pr = rank;
        while (pr < rows && sgn(a[pr][c]) == 0) ++pr;
        if (pr == rows) continue;
        std::swap(a[pr], a[rank]);
        const mpq_class s = 1 / a[rank][c];
        for (auto& e : a[rank]) e *= s;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || sgn(a[r][c]) == 0) continue;
            const mpq_class f = a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
        }
        pivots.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::size_t free_col = cols;
    for (std::size_t c = 0; c < cols; ++c)
        if (!is_pivot[c]) {
            free_col = c;
            break;
        }
    if (free_col == cols) throw std::logic_error("column set is independent over Q");

    std::vector<mpq_class> v(cols, 0);
    v[free_col] = 1;
    for (std::size_t i = 0; i < rank; ++i) v[pivots[i]] = -a[i][free_col];

    mpz_class l = 1;
    for (const auto& e : v) l = lcm(l, mpz_class(e.get_den()));
    std::vector<mpz_class> z(cols);
    mpz_class g = 0;
    for (std::size_t i = 0; i < cols; ++i) {
        mpq_class scaled = v[i] * l;
        z[i] = scaled.get_num();
        g = gcd(g, z[i]);
    }
    std::size_t lead = 0;
    while (sgn(z[lead]) == 0) ++lead;
    if (sgn(z[lead]) < 0) g = -g;
    std::vector<std::int64_t> out(cols);
    for (std::size_t i = 0; i < cols; ++i) {
        z[i] /= g;
        if (!z[i].fits_slong_p()) throw std::overflow_error("dependency coefficient exceeds 64 bits");
        out[i] = z[i].get_si();
    }
    return out;
}

struct Hit {
    std::vector<std::size_t> support;
    std::vector<std::int64_t> values;
};

class RationalSearch {
public:
    explicit RationalSearch(const IntMatrix& m) : m_(m), len_(m.rows()), cols_(m.cols() * m.rows()) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t r = 0; r < m.rows(); ++r) cols_[c * len_ + r] = to_mod(m.at(r, c));
    }

    std::optional<Hit> search_root(std::size_t root, std::size_t w) const {
        Frame fr(w, len_);
        fr.chosen[0] = root;
        return descend(fr, 0, w);
    }

private:
    struct Frame {
        std::vector<std::size_t> chosen;
        std::vector<std::uint64_t> vecs;
        std::vector<std::size_t> pivots;
        Frame(std::size_t w, std::size_t len) : chosen(w), vecs(w * len), pivots(w) {}
    };

    bool push(Frame& fr, std::size_t d) const {
        std::uint64_t* v = &fr.vecs[d * len_];
        const std::uint64_t* src = &cols_[fr.chosen[d] * len_];
        std::copy(src, src + len_, v);
        for (std::size_t e = 0; e < d; ++e) {
            const std::uint64_t c = v[fr.pivots[e]];
            if (!c) continue;
            const std::uint64_t nc = kScreenPrime - c;
            const std::uint64_t* u = &fr.vecs[e * len_];
            for (std::size_t i = 0; i < len_; ++i)
                if (u[i]) v[i] = (v[i] + nc * u[i]) % kScreenPrime;
        }
        std::size_t pivot = 0;
        while (pivot < len_ && v[pivot] == 0) ++pivot;
        if (pivot == len_) return false;
        const auto s = inv_mod(v[pivot]);
        for (std::size_t i = 0; i < len_; ++i) v[i] = v[i] * s % kScreenPrime;
        fr.pivots[d] = pivot;
        return true;
    }

    std::optional<Hit> confirm(std::span<const std::size_t> chosen) const {
        const auto sub = m_.columns(chosen);
        if (rank_rational(sub) == chosen.size()) return std::nullopt;
        Hit hit;
        hit.support.assign(chosen.begin(), chosen.end());
        hit.values = exact_dependency(sub);
        for (auto v : hit.values)
            if (v == 0) throw std::logic_error("minimal rational dependency is not fully supported");
        return hit;
    }

    // Exhaustive exact checks below a prefix whose screening gave a false dependency.
    std::optional<Hit> exact_completions(std::vector<std::size_t> chosen, std::size_t d, std::size_t w) const {
        if (d + 1 == w) return confirm(chosen);
        const std::size_t last = m_.cols() - (w - d - 1);
        for (std::size_t c = chosen[d] + 1; c <= last; ++c) {
            chosen[d + 1] = c;
            if (auto hit = exact_completions(chosen, d + 1, w)) return hit;
        }
        return std::nullopt;
    }

    std::optional<Hit> descend(Frame& fr, std::size_t d, std::size_t w) const {
        if (!push(fr, d)) {
            const std::span<const std::size_t> prefix(fr.chosen.data(), d + 1);
            if (d + 1 == w) return confirm(prefix);
            if (confirm(prefix)) throw std::logic_error("dependent proper subset missed at a smaller size");
            return exact_completions(fr.chosen, d, w);
        }
        if (d + 1 == w) return std::nullopt;
        const std::size_t last = m_.cols() - (w - d - 1);
        for (std::size_t c = fr.chosen[d] + 1; c <= last; ++c) {
            fr.chosen[d + 1] = c;
            if (auto hit = descend(fr, d + 1, w)) return hit;
        }
        return std::nullopt;
    }

    const IntMatrix& m_;
    std::size_t len_;
    std::vector<std::uint64_t> cols_;
};

void certify(const IntMatrix& m, const Hit& hit) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        mpz_class acc = 0;
        for (std::size_t i = 0; i < hit.support.size(); ++i)
            acc += mpz_class(static_cast<long>(m.at(r, hit.support[i]))) * static_cast<long>(hit.values[i]);
        if (sgn(acc) != 0) throw std::logic_error("rational witness is not in the kernel");
    }
}

}  // namespace

SearchReport min_support_kernel_rational(const IntMatrix& m, std::size_t cap, const SearchOptions& options) {
    if (cap < 1) throw std::invalid_argument("support cap must be at least 1");
    SearchReport rep;
    rep.mode = SearchMode::support_enumeration;
    rep.cap = cap;
    rep.exhaustive = true;
    const RationalSearch search(m);
    for (std::size_t w = 1; w <= std::min(cap, m.cols()); ++w) {
        const std::size_t roots = m.cols() - w + 1;
        std::vector<std::optional<Hit>> found(roots);
        const auto root = detail::first_hit(roots, std::max(1u, options.threads), [&](std::size_t r) {
            found[r] = search.search_root(r, w);
            return found[r].has_value();
        });
        if (root < roots) {
            certify(m, *found[root]);
            rep.weight = w;
            rep.support = found[root]->support;
            rep.values = found[root]->values;
            return rep;
        }
    }
    return rep;
}

}  // namespace qnull
