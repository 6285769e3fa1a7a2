#include "qrank/ports.hpp"

#include "qrank/errors.hpp"

#include <algorithm>

namespace qrank {

MatroidPort make_port(const QMatroid& m, const Subspace& p0, const Subspace& p) {
    if (p0.n() != m.n() || p.n() != m.n()) {
        throw data_error("port spaces must live in the ambient space of the rank function");
    }
    if (p0.dim() == 0) throw data_error("distinguished part must be nonzero");
    if (p0.dim() + p.dim() != m.n() || p0.sum(p).dim() != m.n()) {
        throw data_error("distinguished part and carrier must form a direct-sum splitting");
    }
    if (m.rank(p0) == 0) {
        throw data_error("distinguished part must have nonzero rank");
    }
    return MatroidPort{m, p0, p};
}

PortMembership port_membership(const MatroidPort& port, const Subspace& v) {
    if (!port.p.contains(v)) throw data_error("queried subspace is not inside the carrier");
    uint32_t joint = port.m.rank(port.p0.sum(v));
    uint32_t rv = port.m.rank(v);
    if (joint == rv) return PortMembership::Spanning;
    if (joint == port.m.rank(port.p0) + rv) return PortMembership::Independent;
    return PortMembership::Neither;
}

PortReport analyze_port(const MatroidPort& port, uint64_t budget) {
    PortReport rep;
    std::vector<Subspace> spanning_members;
    std::vector<Subspace> lines;
    for_each_subspace(port.m.field(), port.m.n(), {}, budget, [&](const Subspace& v) {
        if (!port.p.contains(v)) return;
        ++rep.total;
        switch (port_membership(port, v)) {
            case PortMembership::Spanning:
                ++rep.spanning;
                spanning_members.push_back(v);
                break;
            case PortMembership::Independent:
                ++rep.independent;
                break;
            case PortMembership::Neither:
                ++rep.neither;
                break;
        }
        if (v.dim() == 1) lines.push_back(v);
    });
    rep.partitioned = rep.neither == 0;
    for (const auto& v : spanning_members) {
        bool minimal = true;
        for (const auto& w : spanning_members) {
            if (!(w == v) && v.contains(w)) {
                minimal = false;
                break;
            }
        }
        if (minimal) rep.minimal_spanning.push_back(v);
    }
    std::sort(rep.minimal_spanning.begin(), rep.minimal_spanning.end());
    rep.all_lines_rank_one = std::all_of(lines.begin(), lines.end(), [&](const Subspace& l) {
        return port.m.rank(l) == 1;
    });
    rep.lines_covered = std::all_of(lines.begin(), lines.end(), [&](const Subspace& l) {
        return std::any_of(rep.minimal_spanning.begin(), rep.minimal_spanning.end(),
                           [&](const Subspace& g) { return g.contains(l); });
    });
    return rep;
}

namespace {

bool is_t_separation(const QMatroid& m, uint32_t t, uint32_t ground_rank,
                     const Subspace& a, const Subspace& b) {
    if (a.dim() + b.dim() != m.n()) return false;
    if (a.sum(b).dim() != m.n()) return false;
    uint32_t ra = m.rank(a), rb = m.rank(b);
    return std::min(ra, rb) >= t && ra + rb < ground_rank + t;
}

} // namespace

SeparationScan vertical_separations(const QMatroid& m, uint32_t t,
                                    const ScopeSpec& scope) {
    if (t == 0) throw data_error("separation order must be at least 1");
    SeparationScan scan;
    scan.t = t;
    scan.scope_description = scope.describe();
    uint32_t rE = m.rank_of_ground();
    const auto& f = m.field();
    uint32_t n = m.n();

    if (scope.kind == ScopeSpec::Kind::Sample) {
        scan.scope_complete = false;
        std::mt19937_64 rng(scope.seed);
        std::uniform_int_distribution<uint32_t> dim_dist(1, n - 1);
        std::vector<std::pair<Subspace, Subspace>> found;
        for (uint64_t i = 0; i < scope.sample_count; ++i) {
            uint32_t d = dim_dist(rng);
            Subspace a = random_subspace(f, n, d, rng);
            Subspace b = random_subspace(f, n, n - d, rng);
            ++scan.checked;
            if (!is_t_separation(m, t, rE, a, b)) continue;
            if (b < a) std::swap(a, b);
            auto pr = std::make_pair(a, b);
            if (std::find(found.begin(), found.end(), pr) == found.end()) {
                found.push_back(pr);
            }
        }
        scan.found = std::move(found);
        return scan;
    }

    // exhaustive scan over unordered pairs in enumeration order
    std::vector<uint32_t> dims;
    for (uint32_t d = 1; d < n; ++d) dims.push_back(d);
    if (dims.empty()) return scan;
    auto all = enumerate_subspaces(f, n, dims, scope.budget);
    BigInt pair_count = BigInt(all.size()) * BigInt(all.size() + 1) / 2;
    if (pair_count > BigInt(scope.budget)) {
        throw budget_error("separation pair scan exceeds the budget: " + pair_count.str() +
                           " pairs");
    }
    for (size_t i = 0; i < all.size(); ++i) {
        if (all[i].dim() > n / 2) continue;  // partner would be the smaller side
        for (size_t j = i; j < all.size(); ++j) {
            if (all[i].dim() + all[j].dim() != n) continue;
            ++scan.checked;
            if (is_t_separation(m, t, rE, all[i], all[j])) {
                scan.found.emplace_back(all[i], all[j]);
            }
        }
    }
    return scan;
}

ConnectivityReport connectivity(const QMatroid& m, std::optional<uint32_t> max_t,
                                const ScopeSpec& scope) {
    ConnectivityReport rep;
    uint32_t cap = max_t.value_or(std::max<uint32_t>(m.rank_of_ground(), 1));
    rep.max_t_checked = cap;
    for (uint32_t t = 1; t <= cap; ++t) {
        auto scan = vertical_separations(m, t, scope);
        rep.scope_complete = rep.scope_complete && scan.scope_complete;
        if (!scan.found.empty()) {
            rep.first_separation_t = t;
            rep.witnesses = std::move(scan.found);
            return rep;
        }
    }
    return rep;
}

} // namespace qrank
