#pragma once

#include "qrank/bigint.hpp"
#include "qrank/code.hpp"
#include "qrank/qmatroid.hpp"

#include <map>
#include <vector>

namespace qrank {

// Census of the rank function: counts[d][u] = number of d-dimensional
// subspaces of rank u.  Square (n+1) x (n+1) table.
using RankCounts = std::vector<std::vector<BigInt>>;

RankCounts rank_counts(const QMatroid& m, uint64_t budget = kDefaultEnumerationBudget);
// Closed form for the uniform rank function: every d-space has rank min(d, k).
RankCounts uniform_rank_counts(uint32_t n, uint32_t k, const BigInt& q);

// Weight enumerator from the rank census, as a formal expression in the
// extension degree m: A_j = sum_{i<=j} (-1)^{j-i} q^binom(j-i,2)
// [n-i, n-j]_q Omega_i with Omega_i = sum_u q^{m(k-u)} counts[n-i][u].
// Entries can be negative when no code with these parameters exists.
std::vector<BigInt> weight_distribution_formula(const RankCounts& counts, uint32_t n,
                                                uint32_t m, uint32_t k, const BigInt& q);
// Same expression evaluated on the dual rank census with k replaced by n - k.
std::vector<BigInt> dual_weight_distribution_formula(const RankCounts& dual_counts,
                                                     uint32_t n, uint32_t m, uint32_t k,
                                                     const BigInt& q);

// Histogram of rank distances from the anchor over all codewords.
std::vector<BigInt> weight_distribution_bruteforce(const RankMetricCode& c,
                                                   const Word& anchor);

// Exact solution of the duality system
//   sum_j [n-j, n-i]_q A_j = q^{m(k+i-n)} sum_j [n-j, i]_q B_j
// by back-substitution from i = n downward.
std::vector<BigRat> macwilliams_solve(const std::vector<BigRat>& A, uint32_t n,
                                      uint32_t m, uint32_t k, const BigInt& q);

// First index j >= 1 with v[j] != 0, or -1 when none exists.
int32_t first_positive_weight(const std::vector<BigInt>& v);

struct DistributionsReport {
    uint32_t n = 0;
    uint32_t m = 0;
    uint32_t k = 0;  // rank of the ground space
    BigInt q;
    RankCounts counts;       // primal rank census
    RankCounts dual_counts;  // census of the dual rank function
    std::vector<BigInt> A;   // from the primal census
    std::vector<BigInt> B;   // from the dual census
    std::vector<BigRat> B_from_A;  // duality back-substitution applied to A
    bool negative_A = false;
    bool negative_B = false;
    bool duality_consistent = false;  // B equals B_from_A entrywise
    int32_t min_distance = -1;        // first positive-weight index of A
    int32_t dual_min_distance = -1;   // first positive-weight index of B
};

DistributionsReport distributions_report(const QMatroid& m, uint32_t ext_degree,
                                         uint64_t budget = kDefaultEnumerationBudget);

// The i-th generalized weight for i = 1..k, computed along three independent
// characterizations of the same quantity.
struct GeneralizedWeights {
    std::map<uint32_t, uint32_t> dual_nullity;  // min dim V with corank i in the dual
    std::map<uint32_t, uint32_t> flat_size;     // min dim V with rank(V^perp) = k - i
    std::map<uint32_t, uint32_t> rank_drop;     // n - max dim V with rank(V) = k - i
    bool consistent() const {
        return dual_nullity == flat_size && flat_size == rank_drop;
    }
};

GeneralizedWeights generalized_weights_matroid(const QMatroid& m,
                                               uint64_t budget = kDefaultEnumerationBudget);

// Code-level route: sweep the projection fibers C(U, anchor), record the
// minimal support dimension per log-size.  With all_anchors set, sweeps every
// fiber of every projection instead of only the anchor's.
std::map<uint32_t, uint32_t> generalized_weights_subcode(
    const RankMetricCode& c, bool all_anchors = false,
    uint64_t budget = kDefaultEnumerationBudget);

// Supports of the codewords minimal under support inclusion, relative to the
// anchor (inclusion-minimal elements among supports of w - anchor, w != anchor).
std::vector<Subspace> minimal_codeword_supports(const RankMetricCode& c,
                                                const Word& anchor);

// Closed-form enumerator of a maximum-rank-distance code with n <= m:
// A_{n-k+t} = [n, k-t]_q sum_{i<t} (-1)^i q^binom(i,2) [n-k+t, i]_q
//             (q^{m(t-i)} - 1).
std::vector<BigInt> mrd_closed_form_A(uint32_t n, uint32_t k, const BigInt& q,
                                      uint32_t m);
// Enumerator of the full ambient space: A_j = [n, j]_q prod_{i<j} (q^m - q^i).
std::vector<BigInt> full_space_A(uint32_t n, const BigInt& q, uint32_t m);

} // namespace qrank
