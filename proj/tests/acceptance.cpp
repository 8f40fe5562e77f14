// Acceptance suite: one PASS/FAIL line per criterion, each checked against an oracle written here.
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qnull/exactlinalg.hpp"
#include "qnull/incidence.hpp"
#include "qnull/nulldesign.hpp"

using namespace qnull;

namespace {

constexpr double kSearchSeconds = 60.0;   // criterion 5 runtime bound
constexpr double kTotalSeconds = 300.0;   // whole suite runtime bound
constexpr int kRandomChains = 10;         // criterion 4
constexpr int kSamplesPerCell = 100;      // criterion 10
constexpr std::uint64_t kSeed = 20240601;
constexpr std::uint64_t kLargePrime = 1000000007;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// Product formula prod_{i<k} (q^(n-i) - 1) / (q^(i+1) - 1).
std::uint64_t product_formula(unsigned n, unsigned k, unsigned q) {
    unsigned __int128 num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= ipow(q, n - i) - 1;
        den *= ipow(q, i + 1) - 1;
    }
    return static_cast<std::uint64_t>(num / den);
}

std::uint64_t binomial(unsigned n, unsigned k) {
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Rank over GF(2) by bit-packed elimination.
std::size_t rank_gf2(const IncidenceMatrix& m) {
    const std::size_t words = (m.cols() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(m.rows(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) rows[r][c / 64] |= std::uint64_t{1} << (c % 64);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < rows.size(); ++c) {
        const auto bit = std::uint64_t{1} << (c % 64);
        std::size_t piv = rank;
        while (piv < rows.size() && !(rows[piv][c / 64] & bit)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && (rows[r][c / 64] & bit))
                for (std::size_t w = 0; w < words; ++w) rows[r][w] ^= rows[rank][w];
        ++rank;
    }
    return rank;
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
    std::uint64_t r = 1;
    for (b %= p; e; e >>= 1, b = b * b % p)
        if (e & 1) r = r * b % p;
    return r;
}

// Rank modulo a large prime, a lower bound for the rank over Q.
std::size_t rank_mod(const IncidenceMatrix& m, std::uint64_t p) {
    std::vector<std::vector<std::uint64_t>> a(m.rows(), std::vector<std::uint64_t>(m.cols(), 0));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (auto c : m.row(r)) a[r][c] = 1;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
        std::size_t piv = rank;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[rank]);
        const auto inv = powmod(a[rank][c], p - 2, p);
        for (std::size_t r = 0; r < a.size(); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            const auto f = a[r][c] * inv % p;
            for (std::size_t j = c; j < m.cols(); ++j) a[r][j] = (a[r][j] + (p - f) * a[rank][j]) % p;
        }
        ++rank;
    }
    return rank;
}

// Superspace sums of an arbitrary design through the Wilson matrices, one per support dimension.
std::vector<std::uint32_t> sums_via_matrices(const NullDesign& d, unsigned t) {
    const unsigned q = d.field().q();
    std::vector<std::uint64_t> acc(product_formula(d.n(), t, q), 0);
    for (unsigned k = t; k <= d.n(); ++k) {
        const auto m = wilson_matrix(q, d.n(), t, k);
        std::vector<std::uint32_t> c(m.cols(), 0);
        bool any = false;
        for (const auto& [x, v] : d.support())
            if (x.k() == k) {
                c[x.index().ordinal] = v;
                any = true;
            }
        if (!any) continue;
        const auto part = apply_check(m, c, d.r());
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += part[i];
    }
    std::vector<std::uint32_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint32_t>(acc[i] % d.r());
    return out;
}

bool all_zero(const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

// Strength check by listing J(t) and testing each support element directly.
bool naive_verify(const NullDesign& d, unsigned t) {
    for (const auto& y : enumerate(d.field(), d.n(), t)) {
        std::uint64_t s = 0;
        for (const auto& [x, v] : d.support())
            if (contains(x, y)) s += v;
        if (s % d.r()) return false;
    }
    return true;
}

bool certify_gfp(const IncidenceMatrix& m, unsigned p, const SearchReport& rep) {
    if (!rep.weight || rep.support.size() != *rep.weight) return false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rep.support.size(); ++i) s += m.entry(r, rep.support[i]) * rep.values[i];
        if (s % p) return false;
    }
    return std::all_of(rep.values.begin(), rep.values.end(), [p](auto v) { return v > 0 && v < p; });
}

bool certify_rational(const IncidenceMatrix& m, const SearchReport& rep) {
    if (!rep.weight || rep.support.size() != *rep.weight) return false;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < rep.support.size(); ++i) s += m.entry(r, rep.support[i]) * rep.values[i];
        if (s) return false;
    }
    return std::all_of(rep.values.begin(), rep.values.end(), [](auto v) { return v != 0; });
}

std::string capture(const std::string& cmd) {
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    pclose(pipe);
    return out;
}

struct Outcome {
    bool pass;
    std::string detail;
};

Outcome criterion1() {
    std::size_t cells = 0, bad = 0;
    for (unsigned q : {2u, 3u, 4u})
        for (unsigned n = 0; n <= 5; ++n)
            for (unsigned k = 0; k <= n; ++k) {
                ++cells;
                SubspaceEnumerator e(FieldSpec::get(q), n, k);
                std::uint64_t count = 0;
                while (e.next()) ++count;
                bad += count != product_formula(n, k, q) || gaussian_binomial(n, k, q) != count;
            }
    return {bad == 0, std::to_string(cells) + " cells, " + std::to_string(bad) + " mismatches"};
}

Outcome criterion2() {
    std::size_t pairs = 0, bad = 0;
    for (unsigned q : {2u, 3u, 4u}) {
        const auto& f = FieldSpec::get(q);
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned t = 1; t <= n; ++t) {
                const auto ts = enumerate(f, n, t);
                for (unsigned d = t; d <= n; ++d) {
                    const std::uint64_t want = (ipow(q, d - t + 1) - 1) / (q - 1);
                    for (unsigned r : {f.p(), q}) bad += want % r != 1 % r;
                    for (const auto& x : enumerate(f, n, d)) {
                        const auto ys = subspaces_of(x, t - 1);
                        for (std::size_t i = 0; i < ys.size(); i += std::max<std::size_t>(1, ys.size() / 3)) {
                            std::uint64_t count = 0;
                            for (const auto& z : ts) count += contains(z, ys[i]) && contains(x, z);
                            ++pairs;
                            bad += count != want;
                        }
                    }
                }
            }
    }
    return {bad == 0, std::to_string(pairs) + " (y, x) pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome criterion3() {
    std::size_t designs = 0, bad = 0;
    for (unsigned q : {2u, 3u, 4u}) {
        const auto& f = FieldSpec::get(q);
        for (unsigned n = 1; n <= 5; ++n)
            for (unsigned t = 0; t < n; ++t)
                for (unsigned r : {f.p(), q}) {
                    const auto d = construct_lb_design(q, n, t, r);
                    ++designs;
                    bool ok = d.size() == 1 + (ipow(q, t + 1) - 1) / (q - 1);
                    for (unsigned tau = 0; tau <= t; ++tau)
                        ok = ok && verify_strength(d, tau).ok && all_zero(sums_via_matrices(d, tau));
                    bad += !ok;
                }
    }
    return {bad == 0, std::to_string(designs) + " designs, " + std::to_string(bad) + " failures"};
}

Outcome criterion4() {
    std::mt19937_64 rng(kSeed);
    std::size_t designs = 0, bad = 0;
    for (unsigned q : {2u, 3u, 4u}) {
        const auto& f = FieldSpec::get(q);
        for (unsigned n = 2; n <= 5; ++n)
            for (unsigned k = 1; k < n; ++k)
                for (unsigned t = 0; t < k; ++t) {
                    const auto m = wilson_matrix(q, n, t, k);
                    std::vector<Chain> chains{default_chain(f, n, k, t)};
                    for (int i = 0; i < kRandomChains; ++i) chains.push_back(random_chain(f, n, k, t, rng));
                    for (const auto& ch : chains)
                        for (unsigned r : {q, f.p()}) {
                            const auto d = construct_uniform_design(q, n, k, t, ch, r);
                            ++designs;
                            std::vector<std::uint32_t> c(m.cols(), 0);
                            for (const auto& [x, v] : d.support()) c[x.index().ordinal] = v;
                            const bool ok = d.size() == ipow(q, t + 1) && d.uniform(k) && verify_strength(d, t).ok &&
                                            all_zero(apply_check(m, c, r));
                            bad += !ok;
                        }
                }
    }
    return {bad == 0, std::to_string(designs) + " designs, " + std::to_string(bad) + " failures"};
}

Outcome criterion5() {
    const auto start = Clock::now();
    std::ostringstream detail;
    bool ok = true;
    for (auto [n, t, k] : {std::tuple{3u, 1u, 2u}, {4u, 1u, 2u}, {4u, 1u, 3u}, {5u, 1u, 3u}, {4u, 2u, 3u}, {5u, 2u, 3u}}) {
        const auto w = wilson_matrix(2, n, t, k);
        const auto rep = min_weight_kernel_gfp(GfpMatrix::from_incidence(w, 2), ipow(2, t + 1), SearchMode::branch_and_bound);
        const bool row = rep.weight == ipow(2, t + 1) && rep.exhaustive && certify_gfp(w, 2, rep);
        ok = ok && row;
        detail << " n=" << n << ",t=" << t << ",k=" << k << ":" << (rep.weight ? std::to_string(*rep.weight) : "none");
    }
    const double secs = seconds_since(start);
    ok = ok && secs < kSearchSeconds;
    detail << " (" << static_cast<int>(secs * 1000) << " ms)";
    return {ok, "weights" + detail.str()};
}

Outcome criterion6() {
    std::ostringstream detail;
    bool ok = true;
    for (auto [n, k, claimed] : {std::tuple{4u, 2u, 11u}, {5u, 2u, 16u}, {5u, 3u, 26u}}) {
        const auto w = wilson_matrix(2, n, 1, k);
        const auto rank = rref_gfp(GfpMatrix::from_incidence(w, 2)).rank;
        const auto oracle_rank = rank_gf2(w);
        std::uint64_t formula = 0;
        for (unsigned i = 0; i <= k; ++i) formula += binomial(n, i);
        ok = ok && rank == claimed && rank == formula && rank == oracle_rank;
        detail << " n=" << n << ",k=" << k << ": rank " << rank << " (oracle " << oracle_rank << ", claimed "
               << claimed << ", formula " << formula << ");";
    }
    return {ok, detail.str()};
}

Outcome criterion7() {
    std::size_t cells = 0, bad = 0;
    for (unsigned q : {2u, 3u})
        for (unsigned n = 0; n <= 4; ++n)
            for (unsigned t = 0; 2 * t <= n; ++t)
                for (unsigned k = t; k <= n - t; ++k) {
                    const auto w = wilson_matrix(q, n, t, k);
                    const auto rank = rank_rational(IntMatrix::from_incidence(w));
                    const auto want = product_formula(n, t, q);
                    ++cells;
                    bad += rank != want || rank_mod(w, kLargePrime) != want;
                }
    return {bad == 0, std::to_string(cells) + " cells, " + std::to_string(bad) + " mismatches"};
}

Outcome criterion8() {
    std::ostringstream detail;
    bool ok = true;
    for (auto [q, n, cap] : {std::tuple{2u, 4u, 6u}, {3u, 3u, 8u}}) {
        const auto w = wilson_matrix(q, n, 1, 2);
        const auto rep = min_support_kernel_rational(IntMatrix::from_incidence(w), cap);
        const bool row = rep.weight == cap && rep.exhaustive && certify_rational(w, rep);
        ok = ok && row;
        detail << " q=" << q << ",n=" << n << ": " << (rep.weight ? std::to_string(*rep.weight) : "none found")
               << " (expected " << cap << ", " << w.rows() << "x" << w.cols() << " rank mod prime "
               << rank_mod(w, kLargePrime) << ");";
    }
    return {ok, detail.str()};
}

Outcome criterion9() {
    const auto w = wilson_matrix(3, 3, 1, 2);
    const auto m = GfpMatrix::from_incidence(w, 3);
    std::vector<SearchReport> reps;
    for (auto mode : {SearchMode::kernel_enumeration, SearchMode::support_enumeration, SearchMode::branch_and_bound})
        reps.push_back(min_weight_kernel_gfp(m, 9, mode));
    bool ok = true;
    for (const auto& rep : reps)
        ok = ok && rep.weight && *rep.weight >= 5 && *rep.weight <= 9 && rep.exhaustive && certify_gfp(w, 3, rep) &&
             rep.weight == reps[0].weight && rep.support == reps[0].support;
    return {ok, "minimum weight " + (reps[0].weight ? std::to_string(*reps[0].weight) : std::string("none")) +
                    ", three modes agree: " + (ok ? "yes" : "no")};
}

Outcome criterion10() {
    std::mt19937_64 rng(kSeed + 10);
    std::size_t cells = 0, bad = 0;
    for (unsigned q : {2u, 3u, 4u}) {
        const auto& f = FieldSpec::get(q);
        for (unsigned n = 1; n <= 4; ++n)
            for (unsigned t = 0; t <= n; ++t)
                for (unsigned k = t; k <= n; ++k) {
                    const auto m = wilson_matrix(q, n, t, k);
                    ++cells;
                    for (int s = 0; s < kSamplesPerCell; ++s) {
                        const unsigned r = s % 2 ? f.p() : q;
                        NullDesign d(f, n, r, k);
                        std::vector<std::uint32_t> c(m.cols(), 0);
                        for (std::size_t j = 0; j < c.size(); ++j)
                            if (rng() % 4 == 0) {
                                c[j] = static_cast<std::uint32_t>(rng() % r);
                                d.set(m.col_subspace(j), c[j]);
                            }
                        const auto sums = apply_check(m, c, r);
                        bool ok = true;
                        for (std::size_t i = 0; i < sums.size() && ok; ++i)
                            ok = sums[i] == sum_over_superspaces(d, m.row_subspace(i));
                        ok = ok && verify_strength(d, t).ok == naive_verify(d, t) && naive_verify(d, t) == all_zero(sums);
                        bad += !ok;
                    }
                }
    }
    return {bad == 0, std::to_string(cells) + " cells x " + std::to_string(kSamplesPerCell) + " samples, " +
                          std::to_string(bad) + " disagreements"};
}

Outcome criterion11() {
    const std::string cli = QNULL_CLI_PATH;
    const auto a = capture(cli + " reproduce --json --threads 1 2>&1");
    const auto b = capture(cli + " reproduce --json --threads 8 2>&1");
    return {!a.empty() && a == b, std::to_string(a.size()) + " and " + std::to_string(b.size()) + " bytes, " +
                                      (a == b ? "identical" : "different")};
}

}  // namespace

int main() {
    const auto start = Clock::now();
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"grassmannian counts", criterion1},
        {"t-space count congruence", criterion2},
        {"lower-bound construction", criterion3},
        {"uniform construction", criterion4},
        {"binary minimum weights", criterion5},
        {"GF(2) rank formula", criterion6},
        {"full rank over Q", criterion7},
        {"rational minimum support", criterion8},
        {"q=3 bracketing", criterion9},
        {"oracle equivalence", criterion10},
        {"thread-count determinism", criterion11},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << "  " << criteria[i].first << ":  " << o.detail
                  << std::endl;
    }
    const double secs = seconds_since(start);
    const bool in_time = secs < kTotalSeconds;
    std::cout << (in_time ? "PASS" : "FAIL") << "  runtime " << static_cast<int>(secs) << " s (limit "
              << static_cast<int>(kTotalSeconds) << " s)" << std::endl;
    std::cout << (criteria.size() - failed) << " of " << criteria.size() << " criteria passed" << std::endl;
    return failed || !in_time ? 1 : 0;
}
