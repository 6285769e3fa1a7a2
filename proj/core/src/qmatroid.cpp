#include "qrank/qmatroid.hpp"

#include "qrank/errors.hpp"

#include <algorithm>

namespace qrank {

Subspace transform_subspace(const FqMatrix& A, const Subspace& V) {
    // rows of the image basis: A applied to each basis vector of V
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(V.dim());
    for (const auto& r : V.rows()) rows.push_back(A.mul_vec(r));
    if (rows.empty()) return Subspace::zero(A.field(), uint32_t(A.rows()));
    return Subspace::from_rows(A.field(), uint32_t(A.rows()), rows);
}

QMatroid QMatroid::from_table(GaloisField::Ptr f, uint32_t n, Table table, std::string origin) {
    BigInt want = galois_number(n, BigInt(f->order()));
    if (BigInt(table.size()) != want) {
        throw data_error("rank table incomplete: " + std::to_string(table.size()) + " entries, lattice has " +
                         want.str());
    }
    for (const auto& [sub, r] : table) {
        if (sub.n() != n || !sub.field()->same_field(*f)) {
            throw data_error("rank table entry over wrong ambient space");
        }
        if (r > sub.dim()) throw data_error("rank exceeds dimension in rank table");
    }
    auto st = std::make_shared<State>();
    st->f = std::move(f);
    st->n = n;
    st->origin = std::move(origin);
    st->table = std::move(table);
    st->complete = true;
    QMatroid m;
    m.s_ = std::move(st);
    return m;
}

QMatroid QMatroid::from_oracle(GaloisField::Ptr f, uint32_t n, RankFn fn, std::string origin) {
    auto st = std::make_shared<State>();
    st->f = std::move(f);
    st->n = n;
    st->origin = std::move(origin);
    st->oracle = std::move(fn);
    QMatroid m;
    m.s_ = std::move(st);
    return m;
}

QMatroid QMatroid::uniform(GaloisField::Ptr f, uint32_t n, uint32_t k) {
    if (k > n) throw data_error("uniform rank parameter exceeds ambient dimension");
    return from_oracle(std::move(f), n,
                       [k](const Subspace& V) { return std::min(V.dim(), k); }, "uniform");
}

const std::vector<std::vector<uint32_t>>& QMatroid::vamos_marked_index_sets() {
    static const std::vector<std::vector<uint32_t>> sets = {
        {1, 2, 3, 4}, {1, 4, 5, 6}, {2, 3, 5, 6}, {1, 4, 7, 8}, {2, 3, 7, 8}};
    return sets;
}

QMatroid QMatroid::vamos(GaloisField::Ptr f) {
    const uint32_t n = 8;
    auto marked = std::make_shared<std::vector<Subspace>>();
    for (const auto& idx : vamos_marked_index_sets()) {
        std::vector<std::vector<uint64_t>> rows;
        for (uint32_t i : idx) rows.push_back(standard_basis_vector(n, i - 1));
        marked->push_back(Subspace::from_rows(f, n, rows));
    }
    return from_oracle(std::move(f), n,
                       [marked](const Subspace& V) -> uint32_t {
                           if (V.dim() == 4) {
                               for (const auto& s : *marked) {
                                   if (s == V) return 3;
                               }
                           }
                           return std::min(V.dim(), 4u);
                       },
                       "vamos");
}

QMatroid QMatroid::induced_from_code(const RankMetricCode& c, uint64_t budget) {
    Table table;
    const auto& f = c.tower()->base();
    for_each_subspace(f, c.n(), {}, budget, [&](const Subspace& V) {
        auto r = c.projection_log(V);
        if (!r) {
            throw verdict_error(
                "code is not almost affine: projection image size " +
                c.projection_image_size(V).str() + " is not a power of the top field order");
        }
        table.emplace(V, *r);
    });
    return from_table(f, c.n(), std::move(table), "induced-from-code");
}

const GaloisField::Ptr& QMatroid::field() const { return s_->f; }
uint32_t QMatroid::n() const { return s_->n; }
const std::string& QMatroid::origin() const { return s_->origin; }

uint32_t QMatroid::rank(const Subspace& V) const {
    if (V.n() != s_->n || !V.field()->same_field(*s_->f)) {
        throw data_error("rank query over wrong ambient space");
    }
    auto it = s_->table.find(V);
    if (it != s_->table.end()) return it->second;
    if (!s_->oracle) throw data_error("rank table has no entry for the queried subspace");
    uint32_t r = s_->oracle(V);
    s_->table.emplace(V, r);
    return r;
}

uint32_t QMatroid::rank_of_ground() const { return rank(Subspace::full(s_->f, s_->n)); }

bool QMatroid::has_full_table() const { return s_->complete; }

void QMatroid::materialize(uint64_t budget) const {
    if (s_->complete) return;
    for_each_subspace(s_->f, s_->n, {}, budget, [&](const Subspace& V) { (void)rank(V); });
    s_->complete = true;
}

const QMatroid::Table& QMatroid::table() const {
    if (!s_->complete) throw data_error("rank table not materialized");
    return s_->table;
}

QMatroid QMatroid::dual() const {
    QMatroid self = *this;
    uint32_t n = s_->n;
    uint32_t rE = rank_of_ground();
    return from_oracle(s_->f, n,
                       [self, rE](const Subspace& V) {
                           return V.dim() - rE + self.rank(V.orthogonal_complement());
                       },
                       "derived");
}

QMatroid QMatroid::restriction(const Subspace& Z) const {
    if (Z.n() != s_->n) throw data_error("restriction space has wrong ambient dimension");
    QMatroid self = *this;
    FqMatrix gz = Z.basis_matrix();
    uint32_t d = Z.dim();
    return from_oracle(s_->f, d,
                       [self, gz, d](const Subspace& V) {
                           // lift V <= F_q^d into the ambient space through G_Z
                           std::vector<std::vector<uint64_t>> rows;
                           for (const auto& r : V.rows()) {
                               // row * G_Z
                               std::vector<uint64_t> lifted(gz.cols(), 0);
                               const auto& F = *gz.field();
                               for (size_t i = 0; i < r.size(); ++i) {
                                   if (r[i] == 0) continue;
                                   for (size_t j = 0; j < gz.cols(); ++j) {
                                       lifted[j] = F.add(lifted[j], F.mul(r[i], gz.at(i, j)));
                                   }
                               }
                               rows.push_back(std::move(lifted));
                           }
                           Subspace lift = rows.empty()
                                               ? Subspace::zero(gz.field(), uint32_t(gz.cols()))
                                               : Subspace::from_rows(gz.field(), uint32_t(gz.cols()), rows);
                           (void)d;
                           return self.rank(lift);
                       },
                       "derived");
}

Subspace QMatroid::contraction_complement(const Subspace& Z) const { return Z.direct_complement(); }

QMatroid QMatroid::contraction(const Subspace& Z) const {
    if (Z.n() != s_->n) throw data_error("contraction space has wrong ambient dimension");
    QMatroid self = *this;
    Subspace comp = contraction_complement(Z);
    FqMatrix g0 = comp.basis_matrix();
    uint32_t rz = rank(Z);
    Subspace zc = Z;
    return from_oracle(s_->f, comp.dim(),
                       [self, g0, rz, zc](const Subspace& W) {
                           std::vector<std::vector<uint64_t>> rows;
                           const auto& F = *g0.field();
                           for (const auto& r : W.rows()) {
                               std::vector<uint64_t> lifted(g0.cols(), 0);
                               for (size_t i = 0; i < r.size(); ++i) {
                                   if (r[i] == 0) continue;
                                   for (size_t j = 0; j < g0.cols(); ++j) {
                                       lifted[j] = F.add(lifted[j], F.mul(r[i], g0.at(i, j)));
                                   }
                               }
                               rows.push_back(std::move(lifted));
                           }
                           for (const auto& zr : zc.rows()) rows.push_back(zr);
                           Subspace lifted_plus_z =
                               rows.empty() ? Subspace::zero(g0.field(), uint32_t(g0.cols()))
                                            : Subspace::from_rows(g0.field(), uint32_t(g0.cols()), rows);
                           return self.rank(lifted_plus_z) - rz;
                       },
                       "derived");
}

AxiomReport QMatroid::verify_axioms(AxiomMode mode, const ScopeSpec& scope) const {
    AxiomReport rep;
    rep.scope_description = scope.describe();
    const auto& f = s_->f;
    uint32_t n = s_->n;

    // gather the subspace universe for the scope
    std::vector<Subspace> universe;
    std::mt19937_64 rng(scope.seed);
    bool sampled = scope.kind == ScopeSpec::Kind::Sample;
    if (!sampled) {
        std::vector<uint32_t> dims;
        if (scope.kind == ScopeSpec::Kind::MaxDim) {
            for (uint32_t d = 0; d <= std::min(scope.max_dim, n); ++d) dims.push_back(d);
        }
        try {
            universe = enumerate_subspaces(f, n, dims, scope.budget);
        } catch (const budget_error&) {
            rep.scope_complete = false;
            // fall back to a deterministic sample of the same seed
            sampled = true;
        }
    }
    auto draw = [&]() {
        std::uniform_int_distribution<uint32_t> dim_dist(0, n);
        uint32_t d = dim_dist(rng);
        return random_subspace(f, n, d, rng);
    };

    auto fail = [&](const std::string& which, const Subspace& a, const std::optional<Subspace>& b,
                    const std::optional<Subspace>& c) {
        if (!rep.pass) return;
        rep.pass = false;
        rep.failed_axiom = which;
        rep.witness_a = a;
        rep.witness_b = b;
        rep.witness_c = c;
    };

    if (mode == AxiomMode::Global) {
        auto check_pair = [&](const Subspace& V, const Subspace& W) {
            ++rep.checked;
            if (!rep.pass) return;
            uint32_t rv = rank(V), rw = rank(W);
            if (rv > V.dim()) fail("R1", V, std::nullopt, std::nullopt);
            if (W.contains(V) && rv > rw) fail("R2", V, W, std::nullopt);
            Subspace S = V.sum(W);
            Subspace I = V.intersect(W);
            if (rank(S) + rank(I) > rv + rw) fail("R3", V, W, std::nullopt);
        };
        if (sampled) {
            for (uint64_t i = 0; i < scope.sample_count && rep.pass; ++i) {
                Subspace V = draw();
                Subspace W = draw();
                check_pair(V, W);
            }
        } else {
            for (size_t i = 0; i < universe.size(); ++i) {
                for (size_t j = i; j < universe.size(); ++j) {
                    check_pair(universe[i], universe[j]);
                    if (!rep.pass) return rep;
                }
            }
        }
        return rep;
    }

    // local mode: R1' rank(0) = 0; R2' unit increments; R3' closure exchange
    Subspace zero = Subspace::zero(f, n);
    ++rep.checked;
    if (rank(zero) != 0) fail("R1'", zero, std::nullopt, std::nullopt);
    std::vector<Subspace> lines = enumerate_subspaces(f, n, {1}, scope.budget);
    auto check_triple = [&](const Subspace& V, const Subspace& x, const Subspace& y) {
        ++rep.checked;
        if (!rep.pass) return;
        uint32_t rv = rank(V);
        uint32_t rvx = rank(V.sum(x));
        if (rvx < rv || rvx > rv + 1) {
            fail("R2'", V, x, std::nullopt);
            return;
        }
        uint32_t rvy = rank(V.sum(y));
        if (rvx == rv && rvy == rv && rank(V.sum(x).sum(y)) != rv) fail("R3'", V, x, y);
    };
    if (sampled) {
        std::uniform_int_distribution<size_t> line_dist(0, lines.size() - 1);
        for (uint64_t i = 0; i < scope.sample_count && rep.pass; ++i) {
            Subspace V = draw();
            const Subspace& x = lines[line_dist(rng)];
            const Subspace& y = lines[line_dist(rng)];
            check_triple(V, x, y);
        }
    } else {
        for (const auto& V : universe) {
            for (const auto& x : lines) {
                for (const auto& y : lines) {
                    check_triple(V, x, y);
                    if (!rep.pass) return rep;
                }
            }
        }
    }
    return rep;
}

std::vector<Subspace> QMatroid::circuits(std::optional<uint32_t> max_dim, uint64_t budget) const {
    uint32_t dmax = max_dim.value_or(s_->n);
    std::vector<uint32_t> dims;
    for (uint32_t d = 1; d <= std::min(dmax, s_->n); ++d) dims.push_back(d);
    std::vector<Subspace> out;
    const auto& f = s_->f;
    for_each_subspace(f, s_->n, dims, budget, [&](const Subspace& V) {
        uint32_t d = V.dim();
        if (rank(V) >= d) return;  // independent
        // every codimension-1 subspace of V must be independent
        FqMatrix gv = V.basis_matrix();
        bool all_hyper_independent = true;
        for_each_subspace(f, d, {uint32_t(d - 1)}, budget, [&](const Subspace& H) {
            if (!all_hyper_independent) return;
            std::vector<std::vector<uint64_t>> rows;
            const auto& F = *f;
            for (const auto& r : H.rows()) {
                std::vector<uint64_t> lifted(s_->n, 0);
                for (size_t i = 0; i < r.size(); ++i) {
                    if (r[i] == 0) continue;
                    for (size_t j = 0; j < s_->n; ++j) {
                        lifted[j] = F.add(lifted[j], F.mul(r[i], gv.at(i, j)));
                    }
                }
                rows.push_back(std::move(lifted));
            }
            Subspace W = rows.empty() ? Subspace::zero(f, s_->n)
                                      : Subspace::from_rows(f, s_->n, rows);
            if (rank(W) != W.dim()) all_hyper_independent = false;
        });
        if (all_hyper_independent) out.push_back(V);
    });
    return out;
}

std::vector<Subspace> QMatroid::loops() const {
    std::vector<Subspace> out;
    for (const auto& x : enumerate_subspaces(s_->f, s_->n, {1})) {
        if (rank(x) == 0) out.push_back(x);
    }
    return out;
}

bool QMatroid::is_simple() const {
    for (const auto& x : enumerate_subspaces(s_->f, s_->n, {1})) {
        if (rank(x) != 1) return false;
    }
    if (s_->n >= 2) {
        for (const auto& v : enumerate_subspaces(s_->f, s_->n, {2})) {
            if (rank(v) != 2) return false;
        }
    }
    return true;
}

Subspace QMatroid::closure(const Subspace& V) const {
    Subspace cl = V;
    uint32_t rv = rank(V);
    for (const auto& x : enumerate_subspaces(s_->f, s_->n, {1})) {
        if (rank(V.sum(x)) == rv) cl = cl.sum(x);
    }
    return cl;
}

std::vector<Subspace> QMatroid::flats(uint64_t budget) const {
    std::vector<Subspace> out;
    for_each_subspace(s_->f, s_->n, {}, budget, [&](const Subspace& V) {
        if (closure(V) == V) out.push_back(V);
    });
    return out;
}

bool QMatroid::ranks_equal(const QMatroid& other, const std::optional<FqMatrix>& iso,
                           uint64_t budget, std::optional<Subspace>* first_difference) const {
    if (!iso && (other.n() != n() || other.q() != q())) return false;
    bool equal = true;
    for_each_subspace(s_->f, s_->n, {}, budget, [&](const Subspace& V) {
        if (!equal) return;
        Subspace image = iso ? transform_subspace(*iso, V) : V;
        if (rank(V) != other.rank(image)) {
            equal = false;
            if (first_difference) *first_difference = V;
        }
    });
    return equal;
}

} // namespace qrank
