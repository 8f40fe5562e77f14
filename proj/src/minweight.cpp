#include <algorithm>
#include <bit>
#include <limits>

#include "qnull/exactlinalg.hpp"
#include "qnull/gf.hpp"
#include "parallel.hpp"

namespace qnull {

namespace {

struct Witness {
    std::vector<std::size_t> support;
    std::vector<std::uint8_t> values;

    friend bool operator<(const Witness& a, const Witness& b) {
        if (a.support != b.support) return a.support < b.support;
        return a.values < b.values;
    }
};

struct ModP {
    unsigned p;
    std::vector<std::uint8_t> inv;

    explicit ModP(unsigned prime) : p(prime), inv(prime, 0) {
        for (unsigned a = 1; a < p; ++a)
            for (unsigned b = 1; b < p; ++b)
                if (a * b % p == 1) inv[a] = static_cast<std::uint8_t>(b);
    }
    std::uint8_t mul(unsigned a, unsigned b) const { return static_cast<std::uint8_t>(a * b % p); }
    std::uint8_t add(unsigned a, unsigned b) const { return static_cast<std::uint8_t>((a + b) % p); }
    std::uint8_t neg(unsigned a) const { return static_cast<std::uint8_t>((p - a) % p); }
};

// Scales so the first value is 1.
void normalize(Witness& w, const ModP& f) {
    if (w.values.empty()) return;
    const auto s = f.inv[w.values.front()];
    for (auto& v : w.values) v = f.mul(v, s);
}

void certify(const GfpMatrix& m, const Witness& w) {
    std::vector<std::uint8_t> full(m.cols(), 0);
    for (std::size_t i = 0; i < w.support.size(); ++i) {
        if (w.values[i] == 0) throw std::logic_error("witness has a zero on its support");
        full[w.support[i]] = w.values[i];
    }
    for (auto v : m.multiply(full))
        if (v != 0) throw std::logic_error("witness is not in the kernel");
}

SearchReport make_report(const GfpMatrix& m, SearchMode mode, std::size_t cap, std::optional<Witness> w) {
    SearchReport rep;
    rep.mode = mode;
    rep.cap = cap;
    rep.exhaustive = true;
    if (w) {
        certify(m, *w);
        rep.weight = w->support.size();
        rep.support = w->support;
        rep.values.assign(w->values.begin(), w->values.end());
    }
    return rep;
}

// ---------------------------------------------------------------------------
// kernel enumeration

std::optional<Witness> kernel_enumeration(const GfpMatrix& m, std::uint64_t budget) {
    const unsigned p = m.p();
    const ModP f(p);
    const auto basis = kernel_basis_gfp(m);
    const std::size_t dim = basis.size();
    if (dim == 0) return std::nullopt;

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < dim; ++i) {
        if (total > budget / p) throw BudgetExceeded("kernel has " + std::to_string(p) + "^" + std::to_string(dim) +
                                                     " vectors, above the budget of " + std::to_string(budget));
        total *= p;
    }

    struct Sparse {
        std::vector<std::uint32_t> pos;
        std::vector<std::uint8_t> val;
    };
    std::vector<Sparse> sparse(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t c = 0; c < m.cols(); ++c)
            if (basis[i][c]) {
                sparse[i].pos.push_back(static_cast<std::uint32_t>(c));
                sparse[i].val.push_back(basis[i][c]);
            }

    std::vector<std::uint8_t> v(m.cols(), 0);
    std::vector<std::uint8_t> counter(dim, 0);
    std::size_t weight = 0;
    std::size_t best_weight = std::numeric_limits<std::size_t>::max();
    Witness best;
    Witness cand;

    // Modular Gray code: each step adds basis vector i, where i is the lowest counter digit that does not wrap.
    for (std::uint64_t step = 1; step < total; ++step) {
        std::size_t i = 0;
        while (counter[i] == p - 1) counter[i++] = 0;
        ++counter[i];
        const auto& b = sparse[i];
        for (std::size_t j = 0; j < b.pos.size(); ++j) {
            auto& e = v[b.pos[j]];
            const bool was = e != 0;
            e = f.add(e, b.val[j]);
            weight += (e != 0) - was;
        }
        if (weight == 0 || weight > best_weight) continue;
        std::size_t lead = 0;
        while (v[lead] == 0) ++lead;
        if (v[lead] != 1) continue;  // the multiple with leading 1 is visited too
        cand.support.clear();
        cand.values.clear();
        for (std::size_t c = lead; c < v.size(); ++c)
            if (v[c]) {
                cand.support.push_back(c);
                cand.values.push_back(v[c]);
            }
        if (weight < best_weight || cand < best) {
            best_weight = weight;
            best = cand;
        }
    }
    if (best_weight == std::numeric_limits<std::size_t>::max()) return std::nullopt;
    return best;
}

// ---------------------------------------------------------------------------
// support enumeration: lexicographic w-subsets, incremental elimination per prefix

template <bool Binary>
class SupportSearch {
public:
    SupportSearch(const GfpMatrix& m) : m_(m), f_(m.p()) {
        len_ = Binary ? (m.rows() + 63) / 64 : m.rows();
        cols_.assign(m.cols() * len_, 0);
        for (std::size_t c = 0; c < m.cols(); ++c)
            for (std::size_t r = 0; r < m.rows(); ++r) {
                const auto e = m.at(r, c);
                if (!e) continue;
                if constexpr (Binary) cols_[c * len_ + r / 64] |= std::uint64_t{1} << (r % 64);
                else cols_[c * len_ + r] = e;
            }
    }

    // Lexicographically first dependent w-subset whose least element is root.
    std::optional<Witness> search_root(std::size_t root, std::size_t w) const {
        Frame fr(w, len_);
        fr.chosen[0] = root;
        return descend(fr, 0, w);
    }

private:
    using Word = std::conditional_t<Binary, std::uint64_t, std::uint8_t>;

    struct Frame {
        std::vector<std::size_t> chosen;
        std::vector<Word> vecs;              // one reduced vector per depth
        std::vector<std::size_t> pivots;
        std::vector<std::uint8_t> combos;    // combo[d][i]: coefficient of chosen[i] in vecs[d]
        Frame(std::size_t w, std::size_t len) : chosen(w), vecs(w * len), pivots(w), combos(w * w) {}
    };

    Word get(const Word* v, std::size_t r) const {
        if constexpr (Binary) return (v[r / 64] >> (r % 64)) & 1;
        else return v[r];
    }

    // Reduces column chosen[d] against levels < d; returns false if it became zero.
    bool push(Frame& fr, std::size_t d, std::size_t w) const {
        Word* v = &fr.vecs[d * len_];
        const Word* src = &cols_[fr.chosen[d] * len_];
        std::copy(src, src + len_, v);
        std::uint8_t* combo = &fr.combos[d * w];
        std::fill(combo, combo + w, 0);
        combo[d] = 1;
        for (std::size_t e = 0; e < d; ++e) {
            const Word c = get(v, fr.pivots[e]);
            if (!c) continue;
            const Word* u = &fr.vecs[e * len_];
            const std::uint8_t* uc = &fr.combos[e * w];
            if constexpr (Binary) {
                for (std::size_t i = 0; i < len_; ++i) v[i] ^= u[i];
                for (std::size_t i = 0; i < d; ++i) combo[i] ^= uc[i];
            } else {
                const auto nc = f_.neg(c);
                for (std::size_t i = 0; i < len_; ++i)
                    if (u[i]) v[i] = f_.add(v[i], f_.mul(nc, u[i]));
                for (std::size_t i = 0; i < d; ++i)
                    if (uc[i]) combo[i] = f_.add(combo[i], f_.mul(nc, uc[i]));
            }
        }
        std::size_t pivot = 0;
        if constexpr (Binary) {
            std::size_t i = 0;
            while (i < len_ && v[i] == 0) ++i;
            if (i == len_) return false;
            pivot = i * 64 + static_cast<std::size_t>(std::countr_zero(v[i]));
        } else {
            while (pivot < len_ && v[pivot] == 0) ++pivot;
            if (pivot == len_) return false;
            const auto s = f_.inv[v[pivot]];
            for (std::size_t i = 0; i < len_; ++i) v[i] = f_.mul(v[i], s);
            for (std::size_t i = 0; i <= d; ++i) combo[i] = f_.mul(combo[i], s);
        }
        fr.pivots[d] = pivot;
        return true;
    }

    std::optional<Witness> descend(Frame& fr, std::size_t d, std::size_t w) const {
        if (!push(fr, d, w)) {
            if (d + 1 != w) throw std::logic_error("dependent proper subset missed at a smaller weight");
            // the reduced vector vanished: combo[d] . chosen = 0
            Witness wit;
            const std::uint8_t* combo = &fr.combos[d * w];
            for (std::size_t i = 0; i < w; ++i) {
                if (!combo[i]) throw std::logic_error("minimal dependency is not fully supported");
                wit.support.push_back(fr.chosen[i]);
                wit.values.push_back(combo[i]);
            }
            normalize(wit, f_);
            return wit;
        }
        if (d + 1 == w) return std::nullopt;
        const std::size_t last = m_.cols() - (w - d - 1);
        for (std::size_t c = fr.chosen[d] + 1; c <= last; ++c) {
            fr.chosen[d + 1] = c;
            if (auto hit = descend(fr, d + 1, w)) return hit;
        }
        return std::nullopt;
    }

    const GfpMatrix& m_;
    ModP f_;
    std::size_t len_;
    std::vector<Word> cols_;
};

template <bool Binary>
std::optional<Witness> support_enumeration(const GfpMatrix& m, std::size_t cap, unsigned threads) {
    const SupportSearch<Binary> search(m);
    for (std::size_t w = 1; w <= std::min(cap, m.cols()); ++w) {
        std::vector<std::optional<Witness>> found(m.cols());
        const auto root = detail::first_hit(m.cols() - w + 1, threads, [&](std::size_t r) {
            found[r] = search.search_root(r, w);
            return found[r].has_value();
        });
        if (root < m.cols() - w + 1) return found[root];
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// branch and bound: fix the least support column, then repeatedly pick a row with nonzero
// syndrome and branch over the unused columns (beyond the root) that can cancel it.

class BranchSearch {
public:
    explicit BranchSearch(const GfpMatrix& m) : m_(m), f_(m.p()), col_rows_(m.cols()), row_cols_(m.rows()) {
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                if (const auto e = m.at(r, c)) {
                    col_rows_[c].push_back({static_cast<std::uint32_t>(r), e});
                    row_cols_[r].push_back({static_cast<std::uint32_t>(c), e});
                }
        for (const auto& c : col_rows_) max_col_weight_ = std::max(max_col_weight_, c.size());
    }

    // Least (support, values) witness of weight exactly w whose least support column is root.
    std::optional<Witness> search_root(std::size_t root, std::size_t w) const {
        State st(m_.rows(), m_.cols());
        st.root = root;
        st.chosen_cols.push_back(root);
        st.chosen_vals.push_back(1);
        st.used[root] = true;
        apply(st, root, 1);
        recurse(st, w - 1);
        return st.best;
    }

private:
    struct Entry {
        std::uint32_t index;
        std::uint8_t value;
    };

    struct State {
        std::size_t root = 0;
        std::vector<std::uint8_t> syndrome;
        std::vector<bool> used;
        std::vector<std::uint32_t> stamp;
        std::uint32_t epoch = 0;
        std::vector<std::size_t> chosen_cols;
        std::vector<std::uint8_t> chosen_vals;
        std::vector<std::uint32_t> live;
        std::optional<Witness> best;
        State(std::size_t rows, std::size_t cols) : syndrome(rows, 0), used(cols, false), stamp(rows, 0) {}
    };

    void apply(State& st, std::size_t col, std::uint8_t a) const {
        for (const auto& e : col_rows_[col])
            st.syndrome[e.index] = f_.add(st.syndrome[e.index], f_.mul(a, e.value));
    }

    void record(State& st) const {
        Witness w;
        std::vector<std::size_t> order(st.chosen_cols.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return st.chosen_cols[a] < st.chosen_cols[b]; });
        for (auto i : order) {
            w.support.push_back(st.chosen_cols[i]);
            w.values.push_back(st.chosen_vals[i]);
        }
        normalize(w, f_);
        if (!st.best || w < *st.best) st.best = std::move(w);
    }

    void recurse(State& st, std::size_t budget) const {
        // rows with nonzero syndrome can only be rows of chosen columns
        ++st.epoch;
        const std::size_t base = st.live.size();
        for (auto c : st.chosen_cols)
            for (const auto& e : col_rows_[c])
                if (st.stamp[e.index] != st.epoch) {
                    st.stamp[e.index] = st.epoch;
                    if (st.syndrome[e.index]) st.live.push_back(e.index);
                }
        const std::size_t live_count = st.live.size() - base;
        if (live_count == 0) {
            record(st);
            return;
        }
        if (budget == 0 || live_count > budget * max_col_weight_) {
            st.live.resize(base);
            return;
        }

        std::uint32_t pick = 0;
        std::size_t fewest = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = base; i < st.live.size(); ++i) {
            const auto r = st.live[i];
            std::size_t n = 0;
            for (const auto& e : row_cols_[r])
                if (e.index > st.root && !st.used[e.index]) ++n;
            if (n < fewest) {
                fewest = n;
                pick = r;
            }
        }
        st.live.resize(base);
        if (fewest == 0) return;

        const std::uint8_t need = st.syndrome[pick];
        for (const auto& e : row_cols_[pick]) {
            if (e.index <= st.root || st.used[e.index]) continue;
            st.used[e.index] = true;
            st.chosen_cols.push_back(e.index);
            st.chosen_vals.push_back(0);
            for (unsigned a = 1; a < f_.p; ++a) {
                // with one column left it must cancel the picked row
                if (budget == 1 && f_.add(need, f_.mul(a, e.value)) != 0) continue;
                st.chosen_vals.back() = static_cast<std::uint8_t>(a);
                apply(st, e.index, static_cast<std::uint8_t>(a));
                recurse(st, budget - 1);
                apply(st, e.index, f_.neg(a));
            }
            st.chosen_cols.pop_back();
            st.chosen_vals.pop_back();
            st.used[e.index] = false;
        }
    }

    const GfpMatrix& m_;
    ModP f_;
    std::vector<std::vector<Entry>> col_rows_;
    std::vector<std::vector<Entry>> row_cols_;
    std::size_t max_col_weight_ = 0;
};

std::optional<Witness> branch_and_bound(const GfpMatrix& m, std::size_t cap, unsigned threads) {
    const BranchSearch search(m);
    for (std::size_t w = 1; w <= std::min(cap, m.cols()); ++w) {
        std::vector<std::optional<Witness>> found(m.cols());
        const auto root = detail::first_hit(m.cols(), threads, [&](std::size_t r) {
            found[r] = search.search_root(r, w);
            return found[r].has_value();
        });
        if (root < m.cols()) return found[root];
    }
    return std::nullopt;
}

}  // namespace

SearchReport min_weight_kernel_gfp(const GfpMatrix& m, std::size_t cap, SearchMode mode,
                                   const SearchOptions& options) {
    if (cap < 1) throw std::invalid_argument("weight cap must be at least 1");
    const unsigned threads = std::max(1u, options.threads);
    std::optional<Witness> w;
    switch (mode) {
        case SearchMode::kernel_enumeration: {
            w = kernel_enumeration(m, options.budget ? options.budget : default_budget());
            if (w && w->support.size() > cap) w.reset();
            break;
        }
        case SearchMode::support_enumeration:
            w = m.p() == 2 ? support_enumeration<true>(m, cap, threads) : support_enumeration<false>(m, cap, threads);
            break;
        case SearchMode::branch_and_bound:
            w = branch_and_bound(m, cap, threads);
            break;
    }
    return make_report(m, mode, cap, std::move(w));
}

}  // namespace qnull
