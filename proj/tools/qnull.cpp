// qnull: construct, verify and search subspace null designs over GF(q).
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qnull/exactlinalg.hpp"
#include "qnull/incidence.hpp"
#include "qnull/nulldesign.hpp"
#include "qnull/reproduce.hpp"

using json = nlohmann::ordered_json;
using namespace qnull;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    unsigned q = 2, n = 0, t = 0, k = 0;
    std::optional<unsigned> r;
    std::optional<unsigned> p;
    std::size_t cap = 0;
    std::string mode = "auto";
    std::string kind;
    std::string over = "gf";
    std::string design_path, matrix_path, out_path;
    std::string chain_u, chain_v, chain_w;
    std::optional<unsigned> t_max;
    std::string only;
    bool json = false;
    bool inject_fault = false;
    unsigned threads = 1;
    std::uint64_t seed = 1;
};

const FieldSpec& field_for(unsigned q) {
    if (!FieldSpec::supported(q)) throw UsageError("unsupported field order --q " + std::to_string(q));
    return FieldSpec::get(q);
}

void check_dims(unsigned n, unsigned t, unsigned k) {
    if (!(t <= k && k <= n)) throw UsageError("parameters must satisfy 0 <= t <= k <= n");
}

std::string field_header(const FieldSpec& f) {
    return "GF(" + std::to_string(f.q()) + ") modulus " + f.modulus_string();
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    return in;
}

// Writes text to --out if given, else stdout.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(cfg.out_path);
    if (!out) throw UsageError("cannot write " + cfg.out_path);
    out << text;
}

int cmd_enumerate(const RunConfig& cfg) {
    const auto& f = field_for(cfg.q);
    if (cfg.k > cfg.n) throw UsageError("need 0 <= k <= n");
    const auto expected = gaussian_binomial(static_cast<int>(cfg.n), static_cast<int>(cfg.k), cfg.q);
    SubspaceEnumerator e(f, cfg.n, cfg.k);
    std::uint64_t count = 0;
    json list = json::array();
    while (auto x = e.next()) {
        if (cfg.json) list.push_back(x->to_string());
        else std::cout << x->to_string() << '\n';
        ++count;
    }
    if (cfg.json) {
        json j{{"subcommand", "enumerate"}, {"q", cfg.q}, {"modulus", f.modulus_string()}, {"n", cfg.n},
               {"k", cfg.k}, {"subspaces", list}, {"count", count}, {"gaussian_binomial", expected}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "count " << count << " gaussian_binomial " << expected << '\n';
    }
    return count == expected ? kOk : kCheckFailed;
}

int cmd_wilson(const RunConfig& cfg) {
    field_for(cfg.q);
    check_dims(cfg.n, cfg.t, cfg.k);
    const auto m = wilson_matrix(cfg.q, cfg.n, cfg.t, cfg.k);
    std::ostringstream s;
    write_coordinate(s, m);
    emit(cfg, s.str());
    return kOk;
}

int cmd_construct(const RunConfig& cfg) {
    const auto& f = field_for(cfg.q);
    if (cfg.r && (!is_power_of(*cfg.r, f.p()) || *cfg.r > cfg.q))
        throw UsageError("--r must be a power of p no larger than q");
    std::optional<NullDesign> c;
    if (cfg.kind == "lb") {
        if (cfg.t >= cfg.n) throw UsageError("lb construction needs t < n");
        c = construct_lb_design(cfg.q, cfg.n, cfg.t, cfg.r);
    } else {
        if (!(cfg.t < cfg.k && cfg.k < cfg.n)) throw UsageError("uniform construction needs t < k < n");
        std::optional<Chain> chain;
        const int given = !cfg.chain_u.empty() + !cfg.chain_v.empty() + !cfg.chain_w.empty();
        if (given == 3)
            chain = Chain{parse_subspace(f, cfg.n, cfg.chain_u), parse_subspace(f, cfg.n, cfg.chain_v),
                          parse_subspace(f, cfg.n, cfg.chain_w)};
        else if (given != 0)
            throw UsageError("--u, --v and --w must be given together");
        try {
            c = construct_uniform_design(cfg.q, cfg.n, cfg.k, cfg.t, chain, cfg.r);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    std::ostringstream s;
    write_design(s, *c);
    emit(cfg, s.str());
    return kOk;
}

NullDesign load_design(const RunConfig& cfg) {
    if (cfg.design_path.empty()) throw UsageError("--design is required");
    auto in = open_in(cfg.design_path);
    auto c = read_design(in);
    const unsigned r = cfg.r.value_or(c.field().p());
    if (r == c.r()) return c;
    if (c.r() % r != 0) throw UsageError("--r must divide the design's coefficient modulus " + std::to_string(c.r()));
    return c.reduced(r);
}

int cmd_verify(const RunConfig& cfg) {
    const auto c = load_design(cfg);
    const auto verdict = verify_strength(c, cfg.t);
    if (cfg.json) {
        json v = json::array();
        for (const auto& bad : verdict.violations) v.push_back({{"y", bad.y.to_string()}, {"value", bad.value}});
        json j{{"subcommand", "verify"}, {"q", c.field().q()}, {"modulus", c.field().modulus_string()},
               {"n", c.n()}, {"r", c.r()}, {"t", cfg.t}, {"support", c.size()}, {"ok", verdict.ok},
               {"violations", v}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "field      " << field_header(c.field()) << "\n"
                  << "n          " << c.n() << "\n"
                  << "r          " << c.r() << "\n"
                  << "support    " << c.size() << "\n"
                  << "strength   " << cfg.t << "\n"
                  << "verdict    " << (verdict.ok ? "ok" : "violated") << "\n";
        for (const auto& bad : verdict.violations)
            std::cout << "  " << bad.y.k() << '|' << bad.y.to_string() << '|' << bad.value << '\n';
    }
    return verdict.ok ? kOk : kCheckFailed;
}

int cmd_strength(const RunConfig& cfg) {
    const auto c = load_design(cfg);
    const auto s = strength_of(c, cfg.t_max.value_or(c.n()));
    if (cfg.json) {
        json j{{"subcommand", "strength"}, {"q", c.field().q()}, {"modulus", c.field().modulus_string()},
               {"n", c.n()}, {"r", c.r()}, {"support", c.size()}};
        j["strength"] = s ? json(*s) : json("none");
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "field      " << field_header(c.field()) << "\n"
                  << "strength   " << (s ? std::to_string(*s) : std::string("none")) << '\n';
    }
    return s ? kOk : kCheckFailed;
}

IncidenceMatrix load_matrix(const RunConfig& cfg) {
    if (cfg.matrix_path.empty()) throw UsageError("--matrix is required");
    auto in = open_in(cfg.matrix_path);
    try {
        return read_coordinate(in);
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
}

unsigned matrix_prime(const RunConfig& cfg, const IncidenceMatrix& m) {
    const unsigned p = cfg.p.value_or(prime_power(m.q()).first);
    if (!is_prime(p)) throw UsageError("--p must be prime");
    return p;
}

std::string matrix_header(const IncidenceMatrix& m) {
    std::ostringstream s;
    s << m.rows() << "x" << m.cols() << " (q=" << m.q() << " n=" << m.n() << " t=" << m.t() << " k=" << m.k() << ")";
    return s.str();
}

int cmd_rank(const RunConfig& cfg) {
    const auto m = load_matrix(cfg);
    std::size_t rank;
    std::string over;
    if (cfg.over == "q") {
        rank = rank_rational(IntMatrix::from_incidence(m));
        over = "Q";
    } else {
        const unsigned p = matrix_prime(cfg, m);
        rank = rref_gfp(GfpMatrix::from_incidence(m, p)).rank;
        over = "GF(" + std::to_string(p) + ")";
    }
    if (cfg.json) {
        json j{{"subcommand", "rank"}, {"rows", m.rows()}, {"cols", m.cols()}, {"over", over}, {"rank", rank}};
        std::cout << j.dump() << '\n';
    } else {
        std::cout << "matrix     " << matrix_header(m) << "\n"
                  << "over       " << over << "\n"
                  << "rank       " << rank << '\n';
    }
    return kOk;
}

// Witness in design-file form when the columns are the k-subspaces of a Wilson matrix.
std::string witness_text(const IncidenceMatrix& m, unsigned r, const SearchReport& rep) {
    std::ostringstream s;
    const bool structured = FieldSpec::supported(m.q()) &&
                            m.cols() == gaussian_binomial(static_cast<int>(m.n()), static_cast<int>(m.k()), m.q());
    s << m.q() << ' ' << m.n() << ' ' << r << ' ' << m.t() << '\n';
    for (std::size_t i = 0; i < rep.support.size(); ++i) {
        if (structured) {
            const auto x = m.col_subspace(rep.support[i]);
            s << x.k() << '|' << x.to_string() << '|' << rep.values[i] << '\n';
        } else {
            s << "col " << rep.support[i] << '|' << rep.values[i] << '\n';
        }
    }
    return s.str();
}

int print_search(const RunConfig& cfg, const IncidenceMatrix& m, const std::string& over, unsigned r,
                 const SearchReport& rep) {
    const auto witness = rep.weight ? witness_text(m, r, rep) : std::string();
    json record{{"weight", rep.weight ? json(*rep.weight) : json("none found")},
                {"exhaustive", rep.exhaustive},
                {"mode", to_string(rep.mode)},
                {"cap", rep.cap},
                {"witness", witness}};
    if (cfg.json) {
        std::cout << record.dump() << '\n';
    } else {
        std::cout << "field      " << field_header(FieldSpec::get(m.q())) << "\n"
                  << "matrix     " << matrix_header(m) << "\n"
                  << "over       " << over << "\n"
                  << "mode       " << to_string(rep.mode) << "\n"
                  << "cap        " << rep.cap << "\n"
                  << "weight     " << (rep.weight ? std::to_string(*rep.weight) : std::string("none found")) << "\n"
                  << "exhaustive " << (rep.exhaustive ? "yes" : "no") << "\n";
        if (rep.weight) std::cout << "witness\n" << witness;
        std::cout << "record " << record.dump() << '\n';
    }
    return kOk;
}

int cmd_minweight(const RunConfig& cfg) {
    const auto m = load_matrix(cfg);
    const unsigned p = matrix_prime(cfg, m);
    const auto g = GfpMatrix::from_incidence(m, p);
    if (cfg.cap < 1) throw UsageError("--cap must be at least 1");
    SearchOptions opts;
    opts.threads = cfg.threads;
    opts.budget = default_budget();
    SearchMode mode;
    if (cfg.mode == "kernel") mode = SearchMode::kernel_enumeration;
    else if (cfg.mode == "support") mode = SearchMode::support_enumeration;
    else if (cfg.mode == "branch") mode = SearchMode::branch_and_bound;
    else {
        const auto dim = g.cols() - rref_gfp(g).rank;
        std::uint64_t total = 1;
        bool fits = true;
        for (std::size_t i = 0; i < dim && fits; ++i) {
            fits = total <= opts.budget / p;
            total *= p;
        }
        mode = fits ? SearchMode::kernel_enumeration : SearchMode::branch_and_bound;
    }
    const auto rep = min_weight_kernel_gfp(g, cfg.cap, mode, opts);
    return print_search(cfg, m, "GF(" + std::to_string(p) + ")", p, rep);
}

int cmd_minsupport(const RunConfig& cfg) {
    const auto m = load_matrix(cfg);
    if (cfg.cap < 1) throw UsageError("--cap must be at least 1");
    SearchOptions opts;
    opts.threads = cfg.threads;
    const auto rep = min_support_kernel_rational(IntMatrix::from_incidence(m), cfg.cap, opts);
    return print_search(cfg, m, "Q", 0, rep);
}

int cmd_reproduce(const RunConfig& cfg) {
    ReproduceOptions o;
    o.threads = cfg.threads;
    o.only = cfg.only;
    o.corrupt = cfg.inject_fault;
    o.seed = cfg.seed;
    const auto rows = reproduce(o);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += !r.pass;
    if (cfg.json) {
        json list = json::array();
        for (const auto& r : rows)
            list.push_back({{"id", r.id}, {"params", r.params}, {"expected", r.expected}, {"computed", r.computed},
                            {"pass", r.pass}});
        json j{{"subcommand", "reproduce"}, {"rows", list}, {"passed", rows.size() - failed}, {"failed", failed}};
        std::cout << j.dump() << '\n';
    } else {
        std::size_t width = 0;
        for (const auto& r : rows) width = std::max(width, r.id.size());
        for (const auto& r : rows)
            std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.id << std::string(width - r.id.size() + 2, ' ')
                      << "expected: " << r.expected << "  computed: " << r.computed << '\n';
        std::cout << rows.size() - failed << " passed, " << failed << " failed\n";
    }
    if (rows.empty()) throw UsageError("--only matched no rows");
    return failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qnull: subspace null designs over GF(q)"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    app.add_flag("--json", cfg.json, "Emit machine-readable JSON records");
    app.add_option("--threads", cfg.threads, "Worker threads for searches")->check(CLI::PositiveNumber);
    app.add_option("--seed", cfg.seed, "Seed for randomized choices");

    auto* en = app.add_subcommand("enumerate", "List J_q(n,k) in canonical order");
    en->add_option("--q", cfg.q)->required();
    en->add_option("--n", cfg.n)->required();
    en->add_option("--k", cfg.k)->required();

    auto* wi = app.add_subcommand("wilson", "Export the subspace Wilson matrix W_{q;t,k}");
    wi->add_option("--q", cfg.q)->required();
    wi->add_option("--n", cfg.n)->required();
    wi->add_option("--t", cfg.t)->required();
    wi->add_option("--k", cfg.k)->required();
    wi->add_option("--out", cfg.out_path);

    auto* co = app.add_subcommand("construct", "Build an explicit null design");
    co->add_option("--kind", cfg.kind)->required()->check(CLI::IsMember({"lb", "uniform"}));
    co->add_option("--q", cfg.q)->required();
    co->add_option("--n", cfg.n)->required();
    co->add_option("--t", cfg.t)->required();
    co->add_option("--k", cfg.k, "Uniform dimension (uniform only)");
    co->add_option("--r", cfg.r, "Coefficient modulus");
    co->add_option("--u", cfg.chain_u, "Chain subspace u (uniform only)");
    co->add_option("--v", cfg.chain_v, "Chain subspace v (uniform only)");
    co->add_option("--w", cfg.chain_w, "Chain subspace w (uniform only)");
    co->add_option("--out", cfg.out_path);

    auto* ve = app.add_subcommand("verify", "Check a design file at strength t");
    ve->add_option("--design", cfg.design_path)->required();
    ve->add_option("--t", cfg.t)->required();
    ve->add_option("--r", cfg.r, "Coefficient modulus (default p)");

    auto* st = app.add_subcommand("strength", "Largest strength at which a design verifies");
    st->add_option("--design", cfg.design_path)->required();
    st->add_option("--t-max", cfg.t_max);
    st->add_option("--r", cfg.r, "Coefficient modulus (default p)");

    auto* ra = app.add_subcommand("rank", "Rank of a matrix file over GF(p) or Q");
    ra->add_option("--matrix", cfg.matrix_path)->required();
    ra->add_option("--over", cfg.over)->check(CLI::IsMember({"gf", "q"}));
    ra->add_option("--p", cfg.p);

    auto* mw = app.add_subcommand("minweight", "Minimum-weight kernel vector over GF(p)");
    mw->add_option("--matrix", cfg.matrix_path)->required();
    mw->add_option("--p", cfg.p);
    mw->add_option("--cap", cfg.cap)->required();
    mw->add_option("--mode", cfg.mode)->check(CLI::IsMember({"kernel", "support", "branch", "auto"}));

    auto* ms = app.add_subcommand("minsupport", "Minimum-support kernel vector over Q");
    ms->add_option("--matrix", cfg.matrix_path)->required();
    ms->add_option("--cap", cfg.cap)->required();

    auto* rp = app.add_subcommand("reproduce", "Run the reproduction grid");
    rp->add_option("--only", cfg.only, "Row id prefix or tag (e.g. q2, minweight)");
    rp->add_flag("--inject-fault", cfg.inject_fault, "Corrupt one matrix entry (negative control)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*en) return cmd_enumerate(cfg);
        if (*wi) return cmd_wilson(cfg);
        if (*co) return cmd_construct(cfg);
        if (*ve) return cmd_verify(cfg);
        if (*st) return cmd_strength(cfg);
        if (*ra) return cmd_rank(cfg);
        if (*mw) return cmd_minweight(cfg);
        if (*ms) return cmd_minsupport(cfg);
        if (*rp) return cmd_reproduce(cfg);
    } catch (const std::exception& e) {
        std::cerr << "qnull: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
