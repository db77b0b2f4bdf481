#include "permcc/bench.hpp"

#include <chrono>
#include <cmath>

namespace permcc {

namespace {

// splitmix64: deterministic across platforms, unlike <random> distributions
struct Rng {
    uint64_t state;
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    size_t below(size_t k) { return static_cast<size_t>(next() % k); }
};

TermPtr random_term(const Signature& sig, Rng& rng, const std::vector<SymbolId>& consts,
                    const std::vector<SymbolId>& funcs, int depth_budget) {
    if (depth_budget == 0 || rng.below(3) == 0)
        return Term::constant(consts[rng.below(consts.size())]);
    SymbolId f = funcs[rng.below(funcs.size())];
    std::vector<TermPtr> children;
    for (int i = 0; i < sig.symbol(f).arity; ++i)
        children.push_back(random_term(sig, rng, consts, funcs, depth_budget - 1));
    return Term::app(f, std::move(children));
}

}  // namespace

BenchInstance make_bench_instance(size_t n, uint64_t seed) {
    BenchInstance inst;
    std::vector<SymbolId> consts;
    for (const char* name : {"a", "b", "c", "d"}) consts.push_back(inst.sig.add_symbol(name, 0));
    SymbolId p = inst.sig.add_symbol("p", 4);
    SymbolId u = inst.sig.add_symbol("u", 1);
    SymbolId k = inst.sig.add_symbol("k", 2);
    inst.sig.add_perm_generator(p, Permutation::from_cycles(4, {{1, 2}}));
    inst.sig.add_perm_generator(p, Permutation::from_cycles(4, {{1, 2, 3, 4}}));
    std::vector<SymbolId> funcs{p, u, k};

    Rng rng{seed * 0x9e3779b97f4a7c15ull + n};
    size_t total = 0;
    while (total < n) {
        TermPtr lhs = random_term(inst.sig, rng, consts, funcs, 3);
        TermPtr rhs = random_term(inst.sig, rng, consts, funcs, 3);
        total += lhs->node_count() + rhs->node_count();
        inst.axioms.push_back(Equation{lhs, rhs});
    }
    return inst;
}

BenchRow run_bench_instance(size_t n, uint64_t seed) {
    BenchInstance inst = make_bench_instance(n, seed);
    BenchRow row;
    row.n = n;
    for (const Equation& e : inst.axioms)
        row.actual_n += e.lhs->node_count() + e.rhs->node_count();
    PermTheory th = decompose(inst.sig);
    auto start = std::chrono::steady_clock::now();
    EngineResult res = run_fair_mu(inst.axioms, inst.sig, th);
    auto stop = std::chrono::steady_clock::now();
    row.trace_len = res.trace.size();
    row.millis = std::chrono::duration<double, std::milli>(stop - start).count();
    return row;
}

std::vector<BenchRow> run_bench(const std::vector<size_t>& sizes, uint64_t seed) {
    std::vector<BenchRow> rows;
    rows.reserve(sizes.size());
    for (size_t n : sizes) rows.push_back(run_bench_instance(n, seed));
    return rows;
}

double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double min_pos = 0.0;
    for (double y : ys)
        if (y > 0.0 && (min_pos == 0.0 || y < min_pos)) min_pos = y;
    if (min_pos == 0.0) min_pos = 1.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t m = xs.size();
    for (size_t i = 0; i < m; ++i) {
        double lx = std::log(xs[i] > 1.0 ? xs[i] : 1.0);
        double ly = std::log(ys[i] > 0.0 ? ys[i] : min_pos);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    double denom = m * sxx - sx * sx;
    if (denom == 0.0) return 0.0;
    return (m * sxy - sx * sy) / denom;
}

double trace_slope(const std::vector<BenchRow>& rows) {
    std::vector<double> xs, ys;
    for (const BenchRow& r : rows) {
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(static_cast<double>(r.trace_len));
    }
    return loglog_slope(xs, ys);
}

double time_slope(const std::vector<BenchRow>& rows) {
    std::vector<double> xs, ys;
    for (const BenchRow& r : rows) {
        xs.push_back(static_cast<double>(r.n));
        ys.push_back(r.millis);
    }
    return loglog_slope(xs, ys);
}

}  // namespace permcc
