// Scaling measurements: random ground-equation instances of a given total
// size over a fixed small signature, engine runs, and log-log slope fits.

#pragma once

#include <cstdint>
#include <vector>

#include "permcc/problem.hpp"

namespace permcc {

struct BenchRow {
    size_t n = 0;          // requested instance size (total symbols in P0)
    size_t actual_n = 0;   // generated size
    size_t trace_len = 0;  // derivation length
    double millis = 0.0;
};

// Deterministic instance of roughly `n` total symbols: four constants, one
// permutation symbol of arity 4, a unary and a binary uninterpreted symbol.
struct BenchInstance {
    Signature sig;
    std::vector<Equation> axioms;
};
BenchInstance make_bench_instance(size_t n, uint64_t seed);

BenchRow run_bench_instance(size_t n, uint64_t seed);

std::vector<BenchRow> run_bench(const std::vector<size_t>& sizes, uint64_t seed);

// Least-squares slope of log(y) against log(x); points with y <= 0 count as
// the smallest positive observation.
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

double trace_slope(const std::vector<BenchRow>& rows);
double time_slope(const std::vector<BenchRow>& rows);

}  // namespace permcc
