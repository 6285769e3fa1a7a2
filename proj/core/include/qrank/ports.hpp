#pragma once

#include "qrank/qmatroid.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qrank {

// How a subspace V of the carrier P relates to the distinguished part P0:
//   Spanning:    rank(P0 + V) == rank(V)             (V already accounts for P0)
//   Independent: rank(P0 + V) == rank(P0) + rank(V)  (V is rank-independent of P0)
// With rank(P0) >= 1 the two are mutually exclusive; both can fail.
enum class PortMembership { Spanning, Independent, Neither };

// A port of a rank function: a distinguished nonzero-rank part P0 and a
// complementary carrier P with P0 (+) P = E.
struct MatroidPort {
    QMatroid m;
    Subspace p0;
    Subspace p;
};

MatroidPort make_port(const QMatroid& m, const Subspace& p0, const Subspace& p);

PortMembership port_membership(const MatroidPort& port, const Subspace& v);

struct PortReport {
    uint64_t total = 0;        // number of subspaces of the carrier
    uint64_t spanning = 0;     // members classified Spanning
    uint64_t independent = 0;  // members classified Independent
    uint64_t neither = 0;
    bool partitioned = false;  // every member is Spanning or Independent
    std::vector<Subspace> minimal_spanning;  // inclusion-minimal Spanning members
    bool all_lines_rank_one = false;         // no rank-deficient line in the carrier
    bool lines_covered = false;  // every line of the carrier sits below a minimal member
};

PortReport analyze_port(const MatroidPort& port,
                        uint64_t budget = kDefaultEnumerationBudget);

// A vertical t-separation is an unordered direct-sum splitting A (+) B = E with
// min(rank A, rank B) >= t and rank A + rank B - rank E < t.
struct SeparationScan {
    uint32_t t = 0;
    std::vector<std::pair<Subspace, Subspace>> found;
    uint64_t checked = 0;       // candidate pairs inspected
    bool scope_complete = true; // false when sampled or budget-truncated
    std::string scope_description;
};

SeparationScan vertical_separations(const QMatroid& m, uint32_t t,
                                    const ScopeSpec& scope);

struct ConnectivityReport {
    uint32_t max_t_checked = 0;
    // smallest t <= max_t_checked admitting a vertical t-separation
    std::optional<uint32_t> first_separation_t;
    std::vector<std::pair<Subspace, Subspace>> witnesses;  // separations at that t
    bool scope_complete = true;
};

// Scans t = 1 .. max_t (default: rank of the ground space) for vertical
// separations; a structure with no separation below t is vertically
// t-connected.
ConnectivityReport connectivity(const QMatroid& m,
                                std::optional<uint32_t> max_t = std::nullopt,
                                const ScopeSpec& scope = ScopeSpec::all());

} // namespace qrank
