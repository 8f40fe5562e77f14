#include "qnull/reproduce.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "qnull/exactlinalg.hpp"
#include "qnull/incidence.hpp"
#include "qnull/nulldesign.hpp"

namespace qnull {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

std::uint64_t binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string params(unsigned q, unsigned n, int t = -1, int k = -1) {
    std::ostringstream s;
    s << "q=" << q << " n=" << n;
    if (t >= 0) s << " t=" << t;
    if (k >= 0) s << " k=" << k;
    return s.str();
}

std::string describe(const SearchReport& r) {
    std::ostringstream s;
    if (r.weight) s << "weight=" << *r.weight;
    else s << "none found";
    s << (r.exhaustive ? " exhaustive" : " partial") << " mode=" << to_string(r.mode);
    return s.str();
}

struct Check {
    std::string id;
    std::vector<std::string> tags;
    std::function<ReproRow()> run;
};

ReproRow count_row(unsigned q, unsigned n) {
    const auto& field = FieldSpec::get(q);
    std::ostringstream expected, computed;
    bool pass = true;
    for (unsigned k = 0; k <= n; ++k) {
        const auto want = gaussian_binomial(static_cast<int>(n), static_cast<int>(k), q);
        SubspaceEnumerator e(field, n, k);
        std::uint64_t got = 0;
        while (e.next()) ++got;
        expected << (k ? "," : "") << want;
        computed << (k ? "," : "") << got;
        pass = pass && got == want;
    }
    return {"", {}, params(q, n), expected.str(), computed.str(), pass};
}

ReproRow congruence_row(unsigned q, unsigned n) {
    const auto& field = FieldSpec::get(q);
    const unsigned p = field.p();
    std::size_t checked = 0, mismatched = 0;
    for (unsigned t = 1; t <= n; ++t)
        for (unsigned d = t; d <= n; ++d) {
            const auto want = (ipow(q, d - t + 1) - 1) / (q - 1);
            const bool congruent = want % p == 1 % p && want % q == 1 % q;
            for (const auto& x : enumerate(field, n, d)) {
                const auto lows = subspaces_of(x, t - 1);
                const auto mids = subspaces_of(x, t);
                for (const auto* y : {&lows.front(), &lows.back()}) {
                    const auto got = static_cast<std::uint64_t>(
                        std::count_if(mids.begin(), mids.end(), [&](const Subspace& z) { return contains(z, *y); }));
                    ++checked;
                    if (got != want || !congruent) ++mismatched;
                }
            }
        }
    std::ostringstream computed;
    computed << checked << " pairs, " << mismatched << " mismatches";
    return {"", {}, params(q, n), "count=(q^(d-t+1)-1)/(q-1) = 1 mod p and mod q", computed.str(), mismatched == 0};
}

ReproRow lb_row(unsigned q, unsigned n, unsigned t) {
    const auto& field = FieldSpec::get(q);
    const auto want = 1 + (ipow(q, t + 1) - 1) / (q - 1);
    bool pass = true;
    std::ostringstream computed;
    for (unsigned r : {field.p(), q}) {
        const auto c = construct_lb_design(q, n, t, r);
        bool ok = c.size() == want && !c.uniform(t) && !c.uniform(t + 1);
        for (unsigned tau = 0; tau <= t; ++tau) ok = ok && verify_strength(c, tau).ok;
        computed << (r == field.p() ? "" : "; ") << "r=" << r << " support=" << c.size()
                 << (ok ? " verified" : " FAILED");
        pass = pass && ok;
        if (r == q) break;
    }
    std::ostringstream expected;
    expected << "support=" << want << ", strength tau<=" << t;
    return {"", {}, params(q, n, static_cast<int>(t)), expected.str(), computed.str(), pass};
}

ReproRow uniform_row(unsigned q, unsigned n, unsigned k, unsigned t, std::uint64_t seed) {
    const auto& field = FieldSpec::get(q);
    const auto want = ipow(q, t + 1);
    std::mt19937_64 rng(seed * 1000003 + q * 10007 + n * 1009 + k * 101 + t);
    std::size_t good = 0;
    std::optional<unsigned> strength;
    for (int i = 0; i <= 10; ++i) {
        const auto chain = i == 0 ? default_chain(field, n, k, t) : random_chain(field, n, k, t, rng);
        const auto c = construct_uniform_design(q, n, k, t, chain);
        const bool ok = c.size() == want && c.uniform(k) && c.r() == q && verify_strength(c, t).ok &&
                        verify_strength(c.reduced(field.p()), t).ok;
        good += ok;
        if (i == 0) strength = strength_of(c, n);
    }
    std::ostringstream expected, computed;
    expected << "11/11 chains: support=" << want << ", " << k << "-uniform, strength " << t << " over Z_" << q;
    if (field.p() != q) expected << " and Z_" << field.p();
    computed << good << "/11 chains ok; default-chain strength_of=";
    if (strength) computed << *strength;
    else computed << "none";
    return {"", {}, params(q, n, static_cast<int>(t), static_cast<int>(k)), expected.str(), computed.str(),
            good == 11 && strength && *strength >= t};
}

SearchReport auto_min_weight(const GfpMatrix& m, std::size_t cap, unsigned threads) {
    SearchOptions opts;
    opts.threads = threads;
    const auto dim = m.cols() - rref_gfp(m).rank;
    const auto budget = default_budget();
    std::uint64_t total = 1;
    bool fits = true;
    for (std::size_t i = 0; i < dim && fits; ++i) {
        fits = total <= budget / m.p();
        total *= m.p();
    }
    return min_weight_kernel_gfp(m, cap, fits ? SearchMode::kernel_enumeration : SearchMode::branch_and_bound, opts);
}

// Overwrites column 1 with column 0, creating a weight-2 kernel vector.
IncidenceMatrix duplicate_first_column(IncidenceMatrix w) {
    for (std::size_t r = 0; r < w.rows(); ++r)
        if (w.entry(r, 0) != w.entry(r, 1)) w = w.with_flipped(r, 1);
    return w;
}

ReproRow minweight_row(unsigned n, unsigned t, unsigned k, const ReproduceOptions& o, bool corrupt) {
    auto w = wilson_matrix(2, n, t, k);
    if (corrupt) w = duplicate_first_column(std::move(w));
    const auto m = GfpMatrix::from_incidence(w, 2);
    const auto want = ipow(2, t + 1);
    const auto rep = auto_min_weight(m, want, o.threads);
    std::ostringstream expected;
    expected << "weight=" << want << " exhaustive";
    return {"", {}, params(2, n, static_cast<int>(t), static_cast<int>(k)), expected.str(), describe(rep),
            rep.weight == want && rep.exhaustive};
}

ReproRow rank_gf2_row(unsigned n, unsigned k, bool corrupt) {
    auto w = wilson_matrix(2, n, 1, k);
    if (corrupt) w = w.with_flipped(0, 0);
    std::uint64_t want = 0;
    for (unsigned i = 0; i <= k; ++i) want += binomial(n, i);
    const auto rank = rref_gfp(GfpMatrix::from_incidence(w, 2)).rank;
    return {"", {}, params(2, n, 1, static_cast<int>(k)), "rank=" + std::to_string(want),
            "rank=" + std::to_string(rank), rank == want};
}

ReproRow rank_q_row(unsigned q, unsigned n, unsigned t, unsigned k) {
    const auto want = gaussian_binomial(static_cast<int>(n), static_cast<int>(t), q);
    const auto rank = rank_rational(IntMatrix::from_incidence(wilson_matrix(q, n, t, k)));
    return {"", {}, params(q, n, static_cast<int>(t), static_cast<int>(k)), "rank=" + std::to_string(want),
            "rank=" + std::to_string(rank), rank == want};
}

ReproRow minsupport_row(unsigned q, unsigned n, unsigned t, const ReproduceOptions& o) {
    std::uint64_t want = 1;
    for (unsigned i = 0; i <= t; ++i) want *= 1 + ipow(q, i);
    SearchOptions opts;
    opts.threads = o.threads;
    const auto rep = min_support_kernel_rational(IntMatrix::from_incidence(wilson_matrix(q, n, t, t + 1)), want, opts);
    return {"", {}, params(q, n, static_cast<int>(t), static_cast<int>(t + 1)), "support=" + std::to_string(want),
            describe(rep), rep.weight == want && rep.exhaustive};
}

ReproRow bracket_row(const ReproduceOptions& o) {
    const auto m = GfpMatrix::from_incidence(wilson_matrix(3, 3, 1, 2), 3);
    SearchOptions opts;
    opts.threads = o.threads;
    const auto a = min_weight_kernel_gfp(m, 9, SearchMode::kernel_enumeration, opts);
    const auto b = min_weight_kernel_gfp(m, 9, SearchMode::support_enumeration, opts);
    const auto c = min_weight_kernel_gfp(m, 9, SearchMode::branch_and_bound, opts);
    auto show = [](const SearchReport& r) { return r.weight ? std::to_string(*r.weight) : std::string("none"); };
    std::ostringstream computed;
    computed << "kernel=" << show(a) << " support=" << show(b) << " branch=" << show(c);
    const bool agree = a.weight == b.weight && b.weight == c.weight && a.support == b.support &&
                       b.support == c.support && a.values == b.values && b.values == c.values;
    const bool pass = agree && a.weight && *a.weight >= 5 && *a.weight <= 9 && a.exhaustive && b.exhaustive &&
                      c.exhaustive;
    return {"", {}, params(3, 3, 1, 2), "weight in [5,9], exhaustive, modes agree", computed.str(), pass};
}

ReproRow oracle_row(unsigned q, unsigned n, std::uint64_t seed) {
    const auto& field = FieldSpec::get(q);
    const unsigned r = field.p();
    std::mt19937_64 rng(seed * 7919 + q * 31 + n);
    std::size_t trials = 0, mismatched = 0;
    for (unsigned t = 0; t <= n; ++t)
        for (unsigned k = t; k <= n; ++k) {
            const auto w = wilson_matrix(q, n, t, k);
            const auto cols = enumerate(field, n, k);
            const auto rows = enumerate(field, n, t);
            for (int trial = 0; trial < 100; ++trial) {
                std::vector<std::uint32_t> c(w.cols(), 0);
                NullDesign design(field, n, r, t);
                const auto nnz = 1 + rng() % 3;
                for (std::uint64_t i = 0; i < nnz; ++i) {
                    const auto col = rng() % w.cols();
                    const auto v = static_cast<std::uint32_t>(1 + rng() % (r - 1));
                    c[col] = v;
                    design.set(cols[col], v);
                }
                const auto via_matrix = apply_check(w, c, r);
                const auto verdict = verify_strength(design, t);
                std::vector<std::size_t> naive_bad;
                bool same = true;
                for (std::size_t y = 0; y < rows.size(); ++y) {
                    const auto direct = sum_over_superspaces(design, rows[y]);
                    same = same && direct == via_matrix[y];
                    if (direct != 0) naive_bad.push_back(y);
                }
                same = same && verdict.ok == naive_bad.empty() && verdict.violations.size() == naive_bad.size();
                for (std::size_t i = 0; same && i < naive_bad.size(); ++i)
                    same = verdict.violations[i].y == rows[naive_bad[i]] &&
                           verdict.violations[i].value == via_matrix[naive_bad[i]];
                ++trials;
                mismatched += !same;
            }
        }
    std::ostringstream computed;
    computed << trials << " random designs, " << mismatched << " mismatches";
    return {"", {}, params(q, n), "matrix = direct sums; verifier = naive scan", computed.str(), mismatched == 0};
}

std::string qtag(unsigned q) { return "q" + std::to_string(q); }

std::vector<Check> build_checks(const ReproduceOptions& o) {
    std::vector<Check> checks;
    auto add = [&](std::string id, std::vector<std::string> tags, std::function<ReproRow()> fn) {
        checks.push_back({std::move(id), std::move(tags), std::move(fn)});
    };
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 5; ++n)
            add("count/" + params(q, n), {"count", qtag(q)}, [=] { return count_row(q, n); });
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 4; ++n)
            add("congruence/" + params(q, n), {"congruence", qtag(q)}, [=] { return congruence_row(q, n); });
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 5; ++n)
            for (unsigned t = 0; t < n; ++t)
                add("lb/" + params(q, n, static_cast<int>(t)), {"lb", qtag(q)}, [=] { return lb_row(q, n, t); });
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 2; n <= 5; ++n)
            for (unsigned k = 1; k < n; ++k)
                for (unsigned t = 0; t < k; ++t)
                    add("uniform/" + params(q, n, static_cast<int>(t), static_cast<int>(k)), {"uniform", qtag(q)},
                        [=, seed = o.seed] { return uniform_row(q, n, k, t, seed); });
    bool first = true;
    for (auto [n, t, k] : {std::tuple{3u, 1u, 2u}, {4u, 1u, 2u}, {4u, 1u, 3u}, {5u, 1u, 3u}, {4u, 2u, 3u}, {5u, 2u, 3u}}) {
        const bool corrupt = o.corrupt && first;
        first = false;
        add("minweight/" + params(2, n, static_cast<int>(t), static_cast<int>(k)), {"minweight", "q2"},
            [=] { return minweight_row(n, t, k, o, corrupt); });
    }
    first = true;
    for (auto [n, k] : {std::pair{4u, 2u}, {5u, 2u}, {5u, 3u}}) {
        const bool corrupt = o.corrupt && first;
        first = false;
        add("rank-gf2/" + params(2, n, 1, static_cast<int>(k)), {"rank-gf2", "q2"},
            [=] { return rank_gf2_row(n, k, corrupt); });
    }
    for (unsigned q : {2u, 3u})
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned t = 0; 2 * t <= n; ++t)
                for (unsigned k = t; k <= n - t; ++k)
                    add("rank-q/" + params(q, n, static_cast<int>(t), static_cast<int>(k)), {"rank-q", qtag(q)},
                        [=] { return rank_q_row(q, n, t, k); });
    add("minsupport/" + params(2, 4, 1, 2), {"minsupport", "q2"}, [=] { return minsupport_row(2, 4, 1, o); });
    add("minsupport/" + params(3, 3, 1, 2), {"minsupport", "q3"}, [=] { return minsupport_row(3, 3, 1, o); });
    add("bracket/" + params(3, 3, 1, 2), {"bracket", "q3"}, [=] { return bracket_row(o); });
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 1; n <= 4; ++n)
            add("oracle/" + params(q, n), {"oracle", qtag(q)}, [=, seed = o.seed] { return oracle_row(q, n, seed); });
    return checks;
}

}  // namespace

std::vector<ReproRow> reproduce(const ReproduceOptions& options) {
    std::vector<ReproRow> rows;
    for (auto& check : build_checks(options)) {
        if (!options.only.empty() && check.id != options.only && check.id.rfind(options.only + "/", 0) != 0 &&
            std::find(check.tags.begin(), check.tags.end(), options.only) == check.tags.end())
            continue;
        auto row = check.run();
        row.id = check.id;
        row.tags = check.tags;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace qnull
