#ifndef QNULL_REPRODUCE_HPP
#define QNULL_REPRODUCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace qnull {

struct ReproRow {
    std::string id;
    std::vector<std::string> tags;
    std::string params;
    std::string expected;
    std::string computed;
    bool pass = false;
};

struct ReproduceOptions {
    unsigned threads = 1;
    /// Keep only rows whose id or one of whose tags equals this (empty keeps all).
    std::string only;
    /// Corrupt the matrices behind the first minimum-weight row and the first GF(2) rank row.
    bool corrupt = false;
    std::uint64_t seed = 1;
};

/// Runs the reproduction grid: subspace counts, the strength-reduction congruence, both explicit
/// constructions, binary minimum weights, GF(2) and rational ranks, rational minimum supports,
/// the q = 3 bracketing and matrix/direct oracle agreement.
std::vector<ReproRow> reproduce(const ReproduceOptions& options);

}  // namespace qnull

#endif
