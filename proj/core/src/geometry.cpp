#include "qrank/geometry.hpp"

#include "qrank/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace qrank {

namespace {

constexpr uint64_t kMissing = ~uint64_t(0);

std::string fmt_vec(const std::vector<uint64_t>& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << v[i];
    }
    os << ")";
    return os.str();
}

std::string fmt_rows(const Subspace& V) {
    std::ostringstream os;
    os << "[";
    auto rows = V.rows();
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) os << " ";
        os << fmt_vec(rows[i]);
    }
    os << "]";
    return os.str();
}

// Exact label-tuple keys: packed into a single integer when the label count
// raised to the tuple length fits, otherwise the raw bytes.  Hash sets over
// the packed form are collision-free by construction.
struct TupleCodec {
    uint64_t radix = 0;
    size_t len = 0;
    bool packed = false;

    TupleCodec(uint64_t label_count, size_t tuple_len) : radix(label_count), len(tuple_len) {
        packed = true;
        uint64_t acc = 1;
        for (size_t i = 0; i < len; ++i) {
            if (radix != 0 && acc > (~uint64_t(0) - 1) / radix) {
                packed = false;
                break;
            }
            acc *= radix;
        }
    }
    uint64_t pack(const uint64_t* t) const {
        uint64_t key = 0;
        for (size_t i = 0; i < len; ++i) key = key * radix + t[i];
        return key;
    }
    std::string bytes(const uint64_t* t) const {
        return std::string(reinterpret_cast<const char*>(t), len * sizeof(uint64_t));
    }
};

// Label table: lab[direction][point] with kMissing for uncovered points.
struct Tables {
    std::vector<std::vector<uint64_t>> lab;
    uint64_t duplicates = 0;  // (direction, point) slots covered more than once
    uint64_t missing = 0;     // slots covered by no hyperplane
    std::string first_defect;
};

void validate_structure_impl(const Geometry& g) {
    if (!g.tower) throw data_error("geometry has no field tower");
    if (g.n == 0) throw data_error("geometry ambient dimension must be positive");
    if (g.points.empty()) throw data_error("geometry has no points");
    const uint64_t q = g.q();
    const uint64_t Q = g.label_count();
    for (const auto& p : g.points) {
        if (p.size() != g.n) throw data_error("geometry point arity mismatch");
        for (uint64_t e : p)
            if (e >= Q) throw data_error("geometry point entry is not a top-field encoding");
    }
    if (g.classes.size() != g.directions.size())
        throw data_error("geometry stores a different number of classes and directions");
    BigInt expect = gaussian_binomial(g.n, 1, BigInt(q));
    if (BigInt(uint64_t(g.directions.size())) != expect)
        throw data_error("geometry direction list does not cover every direction");
    for (size_t d = 0; d < g.directions.size(); ++d) {
        const auto& v = g.directions[d];
        if (v.size() != g.n) throw data_error("geometry direction arity mismatch");
        size_t lead = v.size();
        for (size_t j = 0; j < v.size(); ++j) {
            if (v[j] >= q) throw data_error("geometry direction entry is not a base-field encoding");
            if (lead == v.size() && v[j] != 0) lead = j;
        }
        if (lead == v.size() || v[lead] != 1)
            throw data_error("geometry direction " + fmt_vec(v) + " is not normalized");
        if (d > 0 && !(g.directions[d - 1] < v))
            throw data_error("geometry directions are not sorted and distinct");
        uint64_t prev_alpha = 0;
        bool first = true;
        for (const auto& h : g.classes[d]) {
            if (h.alpha >= Q) throw data_error("hyperplane label is not a top-field encoding");
            if (!first && h.alpha <= prev_alpha)
                throw data_error("hyperplane labels are not strictly ascending");
            first = false;
            prev_alpha = h.alpha;
            uint32_t prev_id = 0;
            bool first_id = true;
            for (uint32_t id : h.members) {
                if (id >= g.points.size()) throw data_error("hyperplane member id out of range");
                if (!first_id && id <= prev_id)
                    throw data_error("hyperplane members are not strictly ascending");
                first_id = false;
                prev_id = id;
            }
        }
    }
}

Tables build_tables(const Geometry& g) {
    Tables t;
    t.lab.assign(g.directions.size(), std::vector<uint64_t>(g.points.size(), kMissing));
    for (size_t d = 0; d < g.directions.size(); ++d) {
        for (const auto& h : g.classes[d]) {
            for (uint32_t id : h.members) {
                if (t.lab[d][id] != kMissing) {
                    ++t.duplicates;
                    if (t.first_defect.empty())
                        t.first_defect = "point " + std::to_string(id) + " lies in two hyperplanes of direction " +
                                         fmt_vec(g.directions[d]);
                } else {
                    t.lab[d][id] = h.alpha;
                }
            }
        }
        for (size_t id = 0; id < g.points.size(); ++id) {
            if (t.lab[d][id] == kMissing) {
                ++t.missing;
                if (t.first_defect.empty())
                    t.first_defect = "point " + std::to_string(id) + " lies in no hyperplane of direction " +
                                     fmt_vec(g.directions[d]);
            }
        }
    }
    return t;
}

std::vector<uint32_t> sample_ids(size_t total, uint64_t want, uint64_t seed) {
    std::vector<uint32_t> ids(total);
    for (size_t i = 0; i < total; ++i) ids[i] = uint32_t(i);
    if (want >= total) return ids;
    std::mt19937_64 rng(seed);
    for (uint64_t i = 0; i < want; ++i) {
        uint64_t j = i + rng() % (total - i);
        std::swap(ids[i], ids[j]);
    }
    ids.resize(want);
    std::sort(ids.begin(), ids.end());
    return ids;
}

} // namespace

void validate_geometry_structure(const Geometry& g) { validate_structure_impl(g); }

std::optional<uint32_t> Geometry::direction_index(const std::vector<uint64_t>& rep) const {
    auto it = std::lower_bound(directions.begin(), directions.end(), rep);
    if (it == directions.end() || *it != rep) return std::nullopt;
    return uint32_t(it - directions.begin());
}

std::optional<Geometry::DirRef> Geometry::resolve_direction(const std::vector<uint64_t>& v) const {
    auto [rep, lambda] = normalize_direction(tower->base(), v);
    auto idx = direction_index(rep);
    if (!idx) return std::nullopt;
    return DirRef{*idx, lambda};
}

std::pair<std::vector<uint64_t>, uint64_t> normalize_direction(const GaloisField::Ptr& f,
                                                               const std::vector<uint64_t>& v) {
    size_t lead = v.size();
    for (size_t j = 0; j < v.size(); ++j) {
        if (v[j] != 0) {
            lead = j;
            break;
        }
    }
    if (lead == v.size()) throw data_error("the zero vector spans no direction");
    uint64_t lambda = v[lead];
    if (lambda == 1) return {v, 1};
    uint64_t inv = f->inv(lambda);
    std::vector<uint64_t> rep(v.size());
    for (size_t j = 0; j < v.size(); ++j) rep[j] = f->mul(inv, v[j]);
    return {rep, lambda};
}

Geometry geometry_from_code(const RankMetricCode& c, uint64_t budget) {
    const auto& tower = c.tower();
    auto f = tower->base();
    const uint32_t n = c.n();

    // Mandatory precondition: full projections on every subspace of dimension
    // 1 and 2.  The small layer runs first so e.g. a direction that fails to
    // separate the codewords is reported without enumerating the planes.
    for (uint32_t d = 1; d <= 2 && d <= n; ++d) {
        std::optional<std::string> defect;
        for_each_subspace(f, n, {d}, budget, [&](const Subspace& V) {
            if (defect) return;
            auto lg = c.projection_log(V);
            if (!lg || *lg != d) {
                defect = "projection onto " + fmt_rows(V) + " has image size " +
                         c.projection_image_size(V).str() + ", expected " +
                         big_pow(BigInt(tower->Q()), d).str();
            }
        });
        if (defect) {
            throw verdict_error("code does not induce a point-hyperplane geometry: " + *defect);
        }
    }

    BigInt dirs = gaussian_binomial(n, 1, BigInt(f->order()));
    BigInt entries = dirs * c.size();
    if (entries > BigInt(budget)) {
        throw budget_error("geometry needs " + entries.str() +
                           " membership entries, budget is " + std::to_string(budget));
    }

    Geometry g;
    g.tower = tower;
    g.n = n;
    c.for_each_word([&](const Word& w) { g.points.push_back(w); });
    std::sort(g.points.begin(), g.points.end());

    auto top = tower->top();
    for_each_subspace(f, n, {1}, budget, [&](const Subspace& V) {
        std::vector<uint64_t> rep = V.row(0);
        std::vector<uint64_t> ecoef(n);
        for (uint32_t j = 0; j < n; ++j) ecoef[j] = tower->embed(rep[j]);
        std::map<uint64_t, std::vector<uint32_t>> buckets;
        for (size_t id = 0; id < g.points.size(); ++id) {
            uint64_t alpha = 0;
            for (uint32_t j = 0; j < n; ++j) {
                if (ecoef[j] == 0) continue;
                alpha = top->add(alpha, top->mul(ecoef[j], g.points[id][j]));
            }
            buckets[alpha].push_back(uint32_t(id));
        }
        std::vector<GeometryHyperplane> cls;
        cls.reserve(buckets.size());
        for (auto& [alpha, members] : buckets) cls.push_back({alpha, std::move(members)});
        g.directions.push_back(std::move(rep));
        g.classes.push_back(std::move(cls));
    });
    return g;
}

GeometryVerdict verify_geometry_properties(const Geometry& g, const GeometryVerifyOptions& opt) {
    validate_geometry_structure(g);
    auto f = g.tower->base();
    auto top = g.tower->top();
    const uint64_t q = g.q();
    const size_t P = g.points.size();
    const size_t D = g.directions.size();

    GeometryVerdict out;
    Tables t = build_tables(g);

    // Partition: each class covers every point exactly once.
    out.partition.checked = uint64_t(D) * uint64_t(P);
    if (t.duplicates || t.missing) {
        out.partition.holds = false;
        out.partition.witness = t.first_defect;
    }

    // Parallelism: with at least two points, every direction must separate
    // some pair and no two directions may induce the same partition.
    out.parallelism.checked = D;
    if (P >= 2) {
        std::map<std::vector<uint32_t>, size_t> seen;
        for (size_t d = 0; d < D && out.parallelism.holds; ++d) {
            std::vector<uint32_t> sig(P);
            std::unordered_map<uint64_t, uint32_t> ord;
            for (size_t id = 0; id < P; ++id) {
                auto [it, fresh] = ord.try_emplace(t.lab[d][id], uint32_t(ord.size()));
                sig[id] = it->second;
            }
            if (ord.size() <= 1) {
                out.parallelism.holds = false;
                out.parallelism.witness =
                    "direction " + fmt_vec(g.directions[d]) + " separates no points";
                break;
            }
            auto [it, fresh] = seen.try_emplace(std::move(sig), d);
            if (!fresh) {
                out.parallelism.holds = false;
                out.parallelism.witness = "directions " + fmt_vec(g.directions[it->second]) +
                                          " and " + fmt_vec(g.directions[d]) +
                                          " induce the same partition";
            }
        }
    }

    // Label tuple of a point along a list of resolved directions; false when
    // some label is missing (partition defect, already reported).
    struct Ref {
        uint32_t index;
        uint64_t elambda;  // embedded scalar, 0 meaning "no scaling needed"
    };
    auto resolve_rows = [&](const std::vector<std::vector<uint64_t>>& rows) {
        std::vector<Ref> refs;
        refs.reserve(rows.size());
        for (const auto& r : rows) {
            auto ref = g.resolve_direction(r);
            if (!ref) throw data_error("direction lookup failed for " + fmt_vec(r));
            refs.push_back({ref->index, ref->lambda == 1 ? 0 : g.tower->embed(ref->lambda)});
        }
        return refs;
    };
    auto tuple_of = [&](const std::vector<Ref>& refs, size_t id, uint64_t* out_t) {
        for (size_t i = 0; i < refs.size(); ++i) {
            uint64_t a = t.lab[refs[i].index][id];
            if (a == kMissing) return false;
            out_t[i] = refs[i].elambda ? top->mul(refs[i].elambda, a) : a;
        }
        return true;
    };

    // Basis injectivity: label tuples along a basis identify points.
    {
        TupleCodec codec(g.label_count(), g.n);
        std::vector<uint64_t> tup(g.n);
        std::unordered_map<uint64_t, uint32_t> seen_packed;
        std::unordered_map<std::string, uint32_t> seen_bytes;
        auto check_basis = [&](const std::vector<std::vector<uint64_t>>& rows,
                               const std::string& tag) {
            auto refs = resolve_rows(rows);
            seen_packed.clear();
            seen_bytes.clear();
            for (size_t id = 0; id < P; ++id) {
                if (!tuple_of(refs, id, tup.data())) continue;
                uint32_t other;
                bool dup;
                if (codec.packed) {
                    auto [it, fresh] = seen_packed.try_emplace(codec.pack(tup.data()), uint32_t(id));
                    dup = !fresh;
                    other = it->second;
                } else {
                    auto [it, fresh] = seen_bytes.try_emplace(codec.bytes(tup.data()), uint32_t(id));
                    dup = !fresh;
                    other = it->second;
                }
                if (dup) {
                    out.basis_injectivity.holds = false;
                    out.basis_injectivity.witness = "points " + std::to_string(other) + " and " +
                                                    std::to_string(id) +
                                                    " share every label along the " + tag + " basis";
                    return false;
                }
            }
            ++out.basis_injectivity.checked;
            return true;
        };

        bool go = check_basis(standard_basis_rows(g.n), "standard");
        if (go && opt.all_bases) {
            BigInt q_n = big_pow(BigInt(q), g.n);
            BigInt count = 1;
            BigInt layer = 1;
            for (uint32_t i = 0; i < g.n; ++i) {
                count *= (q_n - layer);
                layer *= BigInt(q);
            }
            if (count > BigInt(opt.all_bases_budget)) {
                throw budget_error("ordered-basis sweep needs " + count.str() +
                                   " bases, budget is " + std::to_string(opt.all_bases_budget));
            }
            // Depth-first sweep over ordered bases; candidates are reduced
            // against the rows chosen so far to test independence.
            uint64_t total = 1;
            for (uint32_t i = 0; i < g.n; ++i) total *= q;
            std::vector<std::vector<uint64_t>> chosen;
            std::vector<std::vector<uint64_t>> reduced;  // echelon residues of chosen rows
            auto reduce = [&](std::vector<uint64_t> v) {
                for (const auto& r : reduced) {
                    size_t lead = 0;
                    while (lead < r.size() && r[lead] == 0) ++lead;
                    if (lead < v.size() && v[lead] != 0) {
                        uint64_t factor = f->div(v[lead], r[lead]);
                        for (size_t j = lead; j < v.size(); ++j)
                            v[j] = f->sub(v[j], f->mul(factor, r[j]));
                    }
                }
                return v;
            };
            std::function<bool()> dfs = [&]() -> bool {
                if (chosen.size() == g.n) return check_basis(chosen, "sampled");
                for (uint64_t enc = 1; enc < total; ++enc) {
                    std::vector<uint64_t> v(g.n);
                    uint64_t e = enc;
                    for (uint32_t j = 0; j < g.n; ++j) {
                        v[j] = e % q;
                        e /= q;
                    }
                    auto res = reduce(v);
                    bool zero = std::all_of(res.begin(), res.end(), [](uint64_t x) { return x == 0; });
                    if (zero) continue;
                    chosen.push_back(v);
                    reduced.push_back(res);
                    bool cont = dfs();
                    chosen.pop_back();
                    reduced.pop_back();
                    if (!cont) return false;
                }
                return true;
            };
            dfs();
        } else if (go) {
            std::mt19937_64 rng(opt.seed);
            for (uint64_t b = 0; b < opt.basis_samples; ++b) {
                std::vector<std::vector<uint64_t>> rows;
                while (true) {
                    rows.assign(g.n, std::vector<uint64_t>(g.n));
                    for (auto& r : rows)
                        for (auto& e : r) e = rng() % q;
                    if (FqMatrix::from_rows(f, rows, g.n).rank() == g.n) break;
                }
                if (!check_basis(rows, "sampled")) break;
            }
        }
    }

    // Additivity: labels transport along u + mu*v for every direction pair
    // and nonzero scalar, on a deterministic point sample.
    {
        auto ids = sample_ids(P, opt.point_samples, opt.seed + 1);
        for (size_t di = 0; di < D && out.additivity.holds; ++di) {
            for (size_t dj = di + 1; dj < D && out.additivity.holds; ++dj) {
                for (uint64_t mu = 1; mu < q && out.additivity.holds; ++mu) {
                    std::vector<uint64_t> w(g.n);
                    for (uint32_t j = 0; j < g.n; ++j)
                        w[j] = f->add(g.directions[di][j], f->mul(mu, g.directions[dj][j]));
                    auto ref = g.resolve_direction(w);
                    if (!ref) throw data_error("direction lookup failed for " + fmt_vec(w));
                    uint64_t emu = g.tower->embed(mu);
                    uint64_t elam = g.tower->embed(ref->lambda);
                    for (uint32_t id : ids) {
                        uint64_t a = t.lab[di][id];
                        uint64_t b = t.lab[dj][id];
                        uint64_t cw = t.lab[ref->index][id];
                        if (a == kMissing || b == kMissing || cw == kMissing) continue;
                        ++out.additivity.checked;
                        uint64_t expect = top->add(a, top->mul(emu, b));
                        uint64_t actual = top->mul(elam, cw);
                        if (expect != actual) {
                            out.additivity.holds = false;
                            out.additivity.witness =
                                "point " + std::to_string(id) + ": labels along " +
                                fmt_vec(g.directions[di]) + " and " + fmt_vec(g.directions[dj]) +
                                " do not add up along " + fmt_vec(w);
                            break;
                        }
                    }
                }
            }
        }
    }

    // Fiber balance: equal fiber sizes of the label-tuple map per subspace.
    {
        std::vector<uint64_t> tup;
        for (uint32_t d = 1; d <= g.n && out.fiber_balance.holds; ++d) {
            try {
                for_each_subspace(f, g.n, {d}, opt.subspace_budget, [&](const Subspace& V) {
                    if (!out.fiber_balance.holds) return;
                    auto refs = resolve_rows(V.rows());
                    TupleCodec codec(g.label_count(), refs.size());
                    tup.resize(refs.size());
                    std::map<uint64_t, uint64_t> fibers_packed;
                    std::map<std::string, uint64_t> fibers_bytes;
                    for (size_t id = 0; id < P; ++id) {
                        if (!tuple_of(refs, id, tup.data())) continue;
                        if (codec.packed)
                            ++fibers_packed[codec.pack(tup.data())];
                        else
                            ++fibers_bytes[codec.bytes(tup.data())];
                    }
                    uint64_t lo = ~uint64_t(0), hi = 0;
                    auto scan = [&](uint64_t sz) {
                        lo = std::min(lo, sz);
                        hi = std::max(hi, sz);
                    };
                    for (auto& [k, sz] : fibers_packed) scan(sz);
                    for (auto& [k, sz] : fibers_bytes) scan(sz);
                    ++out.fiber_balance.checked;
                    if (hi > lo) {
                        out.fiber_balance.holds = false;
                        out.fiber_balance.witness = "subspace " + fmt_rows(V) +
                                                    " has fibers of size " + std::to_string(lo) +
                                                    " and " + std::to_string(hi);
                    }
                });
            } catch (const budget_error&) {
                out.fiber_balance.scope_complete = false;
                break;
            }
        }
    }

    return out;
}

std::vector<std::vector<uint64_t>> standard_basis_rows(uint32_t n) {
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(n);
    for (uint32_t i = 0; i < n; ++i) rows.push_back(standard_basis_vector(n, i));
    return rows;
}

RankMetricCode code_from_geometry(const Geometry& g,
                                  const std::vector<std::vector<uint64_t>>& basis_rows) {
    validate_geometry_structure(g);
    auto f = g.tower->base();
    auto top = g.tower->top();
    if (basis_rows.size() != g.n) throw data_error("coordinatization needs exactly n basis rows");
    for (const auto& r : basis_rows) {
        if (r.size() != g.n) throw data_error("coordinatization basis row arity mismatch");
        for (uint64_t e : r)
            if (e >= g.q()) throw data_error("coordinatization basis entry is not a base-field encoding");
    }
    if (FqMatrix::from_rows(f, basis_rows, g.n).rank() != g.n)
        throw data_error("coordinatization rows do not form a basis");

    Tables t = build_tables(g);
    struct Ref {
        uint32_t index;
        uint64_t elambda;
    };
    std::vector<Ref> refs;
    for (const auto& r : basis_rows) {
        auto ref = g.resolve_direction(r);
        if (!ref) throw data_error("direction lookup failed for " + fmt_vec(r));
        refs.push_back({ref->index, ref->lambda == 1 ? 0 : g.tower->embed(ref->lambda)});
    }

    std::vector<Word> words;
    words.reserve(g.points.size());
    std::map<Word, uint32_t> seen;
    for (size_t id = 0; id < g.points.size(); ++id) {
        Word w(g.n);
        for (size_t i = 0; i < refs.size(); ++i) {
            uint64_t a = t.lab[refs[i].index][id];
            if (a == kMissing) {
                throw verdict_error("point " + std::to_string(id) +
                                    " has no label along direction " + fmt_vec(basis_rows[i]) +
                                    "; the class does not partition the points");
            }
            w[i] = refs[i].elambda ? top->mul(refs[i].elambda, a) : a;
        }
        auto [it, fresh] = seen.try_emplace(w, uint32_t(id));
        if (!fresh) {
            throw verdict_error("coordinatization collision: points " + std::to_string(it->second) +
                                " and " + std::to_string(id) + " share every basis label");
        }
        words.push_back(std::move(w));
    }
    return RankMetricCode::from_words(g.tower, g.n, std::move(words));
}

// ---------------------------------------------------------------------------
// Flats
// ---------------------------------------------------------------------------

namespace {

uint32_t code_dim_or_throw(const RankMetricCode& c) {
    auto k = c.dim_log();
    if (!k) throw verdict_error("code size is not a power of the top field order");
    return *k;
}

uint32_t flat_rank_or_throw(const RankMetricCode& c, const Subspace& V) {
    auto r = c.projection_log(V);
    if (!r) {
        throw verdict_error("projection image size onto " + fmt_rows(V) +
                            " is not a power of the top field order");
    }
    return *r;
}

void check_flat_operands(const RankMetricCode& c, const Subspace& V) {
    if (V.n() != c.n()) throw data_error("flat subspace lives in a different ambient space");
    if (!V.field()->same_field(*c.tower()->base()))
        throw data_error("flat subspace is defined over a different base field");
}

} // namespace

Flat flat_of(const RankMetricCode& c, const Subspace& V, const Word& x) {
    check_flat_operands(c, V);
    if (!c.contains_word(x)) throw data_error("flat anchor is not a codeword");
    uint32_t k = code_dim_or_throw(c);
    uint32_t r = flat_rank_or_throw(c, V);
    Flat out;
    out.V = V;
    out.labels = c.project_word(V, x);
    out.dim = k - r;
    c.for_each_word([&](const Word& w) {
        if (c.project_word(V, w) == out.labels) out.members.push_back(w);
    });
    std::sort(out.members.begin(), out.members.end());
    return out;
}

std::vector<Flat> parallel_class(const RankMetricCode& c, const Subspace& V) {
    check_flat_operands(c, V);
    uint32_t k = code_dim_or_throw(c);
    uint32_t r = flat_rank_or_throw(c, V);
    std::map<std::vector<uint64_t>, std::vector<Word>> buckets;
    c.for_each_word([&](const Word& w) { buckets[c.project_word(V, w)].push_back(w); });
    std::vector<Flat> out;
    out.reserve(buckets.size());
    for (auto& [labels, members] : buckets) {
        Flat fl;
        fl.V = V;
        fl.labels = labels;
        std::sort(members.begin(), members.end());
        fl.members = std::move(members);
        fl.dim = k - r;
        out.push_back(std::move(fl));
    }
    return out;
}

namespace {

std::optional<Word> common_member(const Flat& a, const Flat& b) {
    auto ia = a.members.begin();
    auto ib = b.members.begin();
    while (ia != a.members.end() && ib != b.members.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else
            return *ia;
    }
    return std::nullopt;
}

} // namespace

std::optional<Flat> flat_intersect(const RankMetricCode& c, const Flat& a, const Flat& b) {
    auto z = common_member(a, b);
    if (!z) return std::nullopt;
    return flat_of(c, a.V.sum(b.V), *z);
}

Flat flat_join(const RankMetricCode& c, const Flat& a, const Flat& b) {
    auto z = common_member(a, b);
    if (!z) throw data_error("disjoint flats have no common anchor for the join");
    return flat_of(c, a.V.intersect(b.V), *z);
}

} // namespace qrank
