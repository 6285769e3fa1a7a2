#include "qrank/invariants.hpp"

#include "qrank/errors.hpp"

#include <algorithm>

namespace qrank {

namespace {

BigInt binom2_pow(const BigInt& q, uint32_t d) {
    // q^binom(d, 2)
    return big_pow(q, uint64_t(d) * (d - 1) / 2);
}

std::vector<BigInt> enumerator_from_census(const RankCounts& counts, uint32_t n,
                                           uint32_t m, uint32_t rank_cap, const BigInt& q) {
    if (counts.size() != size_t(n) + 1) {
        throw data_error("rank census has wrong number of dimension rows");
    }
    std::vector<BigInt> omega(n + 1, 0);
    for (uint32_t i = 0; i <= n; ++i) {
        const auto& row = counts[n - i];
        if (row.size() != size_t(n) + 1) {
            throw data_error("rank census has wrong number of rank columns");
        }
        for (uint32_t u = 0; u <= n; ++u) {
            if (row[u] == 0) continue;
            if (u > rank_cap) {
                throw data_error("rank census contains ranks above the ground rank");
            }
            omega[i] += big_pow(q, uint64_t(m) * (rank_cap - u)) * row[u];
        }
    }
    std::vector<BigInt> A(n + 1, 0);
    for (uint32_t j = 0; j <= n; ++j) {
        for (uint32_t i = 0; i <= j; ++i) {
            BigInt term = binom2_pow(q, j - i) * gaussian_binomial(n - i, n - j, q) * omega[i];
            if ((j - i) % 2 == 0) {
                A[j] += term;
            } else {
                A[j] -= term;
            }
        }
    }
    return A;
}

} // namespace

RankCounts rank_counts(const QMatroid& m, uint64_t budget) {
    uint32_t n = m.n();
    RankCounts counts(n + 1, std::vector<BigInt>(n + 1, 0));
    for_each_subspace(m.field(), n, {}, budget,
                      [&](const Subspace& V) { counts[V.dim()][m.rank(V)] += 1; });
    return counts;
}

RankCounts uniform_rank_counts(uint32_t n, uint32_t k, const BigInt& q) {
    if (k > n) throw data_error("uniform rank parameter exceeds ambient dimension");
    RankCounts counts(n + 1, std::vector<BigInt>(n + 1, 0));
    for (uint32_t d = 0; d <= n; ++d) {
        counts[d][std::min(d, k)] = gaussian_binomial(n, d, q);
    }
    return counts;
}

std::vector<BigInt> weight_distribution_formula(const RankCounts& counts, uint32_t n,
                                                uint32_t m, uint32_t k, const BigInt& q) {
    return enumerator_from_census(counts, n, m, k, q);
}

std::vector<BigInt> dual_weight_distribution_formula(const RankCounts& dual_counts,
                                                     uint32_t n, uint32_t m, uint32_t k,
                                                     const BigInt& q) {
    return enumerator_from_census(dual_counts, n, m, n - k, q);
}

std::vector<BigInt> weight_distribution_bruteforce(const RankMetricCode& c,
                                                   const Word& anchor) {
    if (!c.contains_word(anchor)) throw data_error("anchor word is not in the code");
    std::vector<BigInt> A(c.n() + 1, 0);
    c.for_each_word([&](const Word& w) { A[c.distance(w, anchor)] += 1; });
    return A;
}

std::vector<BigRat> macwilliams_solve(const std::vector<BigRat>& A, uint32_t n,
                                      uint32_t m, uint32_t k, const BigInt& q) {
    if (A.size() != size_t(n) + 1) throw data_error("enumerator has wrong length");
    std::vector<BigRat> B(n + 1, 0);
    for (int32_t i = n; i >= 0; --i) {
        BigRat lhs = 0;
        for (uint32_t j = 0; j <= n; ++j) {
            lhs += BigRat(gaussian_binomial(n - j, n - i, q)) * A[j];
        }
        BigRat known = 0;
        for (uint32_t j = 0; j + i < n; ++j) {
            known += BigRat(gaussian_binomial(n - j, i, q)) * B[j];
        }
        // the coefficient of the new unknown B_{n-i} is [i, i]_q = 1
        B[n - i] = lhs * big_pow_signed(q, -(int64_t(m) * (int64_t(k) + i - int64_t(n)))) - known;
    }
    return B;
}

int32_t first_positive_weight(const std::vector<BigInt>& v) {
    for (size_t j = 1; j < v.size(); ++j) {
        if (v[j] != 0) return int32_t(j);
    }
    return -1;
}

DistributionsReport distributions_report(const QMatroid& m, uint32_t ext_degree,
                                         uint64_t budget) {
    DistributionsReport rep;
    rep.n = m.n();
    rep.m = ext_degree;
    rep.k = m.rank_of_ground();
    rep.q = BigInt(m.q());
    rep.counts = rank_counts(m, budget);
    rep.dual_counts = rank_counts(m.dual(), budget);
    rep.A = weight_distribution_formula(rep.counts, rep.n, rep.m, rep.k, rep.q);
    rep.B = dual_weight_distribution_formula(rep.dual_counts, rep.n, rep.m, rep.k, rep.q);
    std::vector<BigRat> Arat(rep.A.begin(), rep.A.end());
    rep.B_from_A = macwilliams_solve(Arat, rep.n, rep.m, rep.k, rep.q);
    rep.negative_A = std::any_of(rep.A.begin(), rep.A.end(),
                                 [](const BigInt& x) { return x < 0; });
    rep.negative_B = std::any_of(rep.B.begin(), rep.B.end(),
                                 [](const BigInt& x) { return x < 0; });
    rep.duality_consistent = true;
    for (uint32_t j = 0; j <= rep.n; ++j) {
        if (BigRat(rep.B[j]) != rep.B_from_A[j]) rep.duality_consistent = false;
    }
    rep.min_distance = first_positive_weight(rep.A);
    rep.dual_min_distance = first_positive_weight(rep.B);
    return rep;
}

GeneralizedWeights generalized_weights_matroid(const QMatroid& m, uint64_t budget) {
    uint32_t n = m.n();
    uint32_t k = m.rank_of_ground();
    auto dual = m.dual();
    GeneralizedWeights gw;
    // min/max trackers per target index
    std::map<uint32_t, uint32_t> min_dual, min_perp, max_drop;
    for_each_subspace(m.field(), n, {}, budget, [&](const Subspace& V) {
        uint32_t d = V.dim();
        uint32_t corank_dual = d - dual.rank(V);
        if (corank_dual >= 1 && corank_dual <= k) {
            auto it = min_dual.find(corank_dual);
            if (it == min_dual.end() || d < it->second) min_dual[corank_dual] = d;
        }
        uint32_t rperp = m.rank(V.orthogonal_complement());
        if (rperp < k) {
            uint32_t i = k - rperp;
            auto it = min_perp.find(i);
            if (it == min_perp.end() || d < it->second) min_perp[i] = d;
        }
        uint32_t r = m.rank(V);
        if (r < k) {
            uint32_t i = k - r;
            auto it = max_drop.find(i);
            if (it == max_drop.end() || d > it->second) max_drop[i] = d;
        }
    });
    for (uint32_t i = 1; i <= k; ++i) {
        if (min_dual.count(i)) gw.dual_nullity[i] = min_dual[i];
        if (min_perp.count(i)) gw.flat_size[i] = min_perp[i];
        if (max_drop.count(i)) gw.rank_drop[i] = n - max_drop[i];
    }
    return gw;
}

std::map<uint32_t, uint32_t> generalized_weights_subcode(const RankMetricCode& c,
                                                         bool all_anchors,
                                                         uint64_t budget) {
    auto klog = c.dim_log();
    if (!klog) throw verdict_error("code size is not a power of the top field order");
    uint32_t k = *klog;
    uint32_t n = c.n();
    std::vector<Word> anchors;
    if (all_anchors) {
        c.for_each_word([&](const Word& w) { anchors.push_back(w); });
    } else {
        anchors.push_back(c.min_word());
    }
    std::map<uint32_t, uint32_t> best;
    for_each_subspace(c.tower()->base(), n, {}, budget, [&](const Subspace& U) {
        auto lg = c.projection_log(U);
        if (!lg) throw verdict_error("projection image size is not a power of the top field order");
        if (*lg >= k) return;
        uint32_t i = k - *lg;
        for (const auto& x : anchors) {
            auto fiber = c.subcode(U, x);
            Subspace sup = Subspace::zero(c.tower()->base(), n);
            fiber.for_each_word([&](const Word& w) {
                sup = sup.sum(c.support(c.word_sub(w, x)));
            });
            auto it = best.find(i);
            if (it == best.end() || sup.dim() < it->second) best[i] = sup.dim();
        }
    });
    return best;
}

std::vector<Subspace> minimal_codeword_supports(const RankMetricCode& c,
                                                const Word& anchor) {
    if (!c.contains_word(anchor)) throw data_error("anchor word is not in the code");
    std::vector<Subspace> sups;
    c.for_each_word([&](const Word& w) {
        if (w == anchor) return;
        Subspace s = c.support(c.word_sub(w, anchor));
        if (std::find(sups.begin(), sups.end(), s) == sups.end()) sups.push_back(s);
    });
    std::vector<Subspace> mins;
    for (const auto& s : sups) {
        bool minimal = true;
        for (const auto& t : sups) {
            if (!(t == s) && s.contains(t)) {
                minimal = false;
                break;
            }
        }
        if (minimal) mins.push_back(s);
    }
    std::sort(mins.begin(), mins.end());
    return mins;
}

std::vector<BigInt> mrd_closed_form_A(uint32_t n, uint32_t k, const BigInt& q,
                                      uint32_t m) {
    if (k > n) throw data_error("rank parameter exceeds length");
    std::vector<BigInt> A(n + 1, 0);
    A[0] = 1;
    for (uint32_t t = 1; t <= k; ++t) {
        BigInt sum = 0;
        for (uint32_t i = 0; i < t; ++i) {
            BigInt term = binom2_pow(q, i) * gaussian_binomial(n - k + t, i, q) *
                          (big_pow(q, uint64_t(m) * (t - i)) - 1);
            if (i % 2 == 0) {
                sum += term;
            } else {
                sum -= term;
            }
        }
        A[n - k + t] = gaussian_binomial(n, k - t, q) * sum;
    }
    return A;
}

std::vector<BigInt> full_space_A(uint32_t n, const BigInt& q, uint32_t m) {
    std::vector<BigInt> A(n + 1, 0);
    BigInt qm = big_pow(q, m);
    for (uint32_t j = 0; j <= n; ++j) {
        BigInt prod = 1;
        for (uint32_t i = 0; i < j; ++i) prod *= qm - big_pow(q, i);
        A[j] = gaussian_binomial(n, j, q) * prod;
    }
    return A;
}

} // namespace qrank
