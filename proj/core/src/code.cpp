#include "qrank/code.hpp"

#include "qrank/errors.hpp"

#include <algorithm>
#include <unordered_set>

namespace qrank {

namespace {

struct VecHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        size_t h = 1469598103934665603ull;
        for (uint64_t x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

// Reduced echelon form over F_p on flattened digit rows; drops zero rows.
// Returns pivot columns.
std::vector<size_t> fp_rref(std::vector<std::vector<uint64_t>>& rows, uint64_t p) {
    std::vector<size_t> pivots;
    if (rows.empty()) return pivots;
    size_t cols = rows[0].size();
    auto inv_mod = [p](uint64_t x) {
        uint64_t r = 1, b = x % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows.size(); ++col) {
        size_t piv = rows.size();
        for (size_t r = rank; r < rows.size(); ++r) {
            if (rows[r][col] % p != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        uint64_t scale = inv_mod(rows[rank][col]);
        if (scale != 1) {
            for (auto& x : rows[rank]) x = x * scale % p;
        }
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank) continue;
            uint64_t f = rows[r][col] % p;
            if (f == 0) continue;
            uint64_t fneg = p - f;
            for (size_t j = 0; j < cols; ++j) {
                rows[r][j] = (rows[r][j] + fneg * rows[rank][j]) % p;
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    rows.resize(rank);
    return pivots;
}

// Reduce a digit vector by rref rows (prime-field coset reduction); the result
// is the lexicographically minimal representative of its coset.
void fp_reduce(std::vector<uint64_t>& v, const std::vector<std::vector<uint64_t>>& rows,
               const std::vector<size_t>& pivots, uint64_t p) {
    for (size_t r = 0; r < rows.size(); ++r) {
        uint64_t c = v[pivots[r]] % p;
        if (c == 0) continue;
        uint64_t cneg = p - c;
        for (size_t j = 0; j < v.size(); ++j) {
            v[j] = (v[j] + cneg * rows[r][j]) % p;
        }
    }
}

} // namespace

std::string ScopeSpec::describe() const {
    switch (kind) {
        case Kind::All:
            return "all subspaces (budget " + std::to_string(budget) + ")";
        case Kind::MaxDim:
            return "subspaces of dimension <= " + std::to_string(max_dim) + " (budget " +
                   std::to_string(budget) + ")";
        case Kind::Sample:
            return std::to_string(sample_count) + " sampled subspaces (seed " +
                   std::to_string(seed) + ")";
    }
    return "unknown scope";
}

std::vector<uint64_t> RankMetricCode::word_digits(const Word& w) const {
    const auto& T = *tower_->top();
    uint32_t um = T.degree();
    uint64_t p = T.p();
    std::vector<uint64_t> out(size_t(n_) * um, 0);
    for (uint32_t i = 0; i < n_; ++i) {
        uint64_t a = w[i];
        for (uint32_t d = 0; d < um; ++d) {
            out[size_t(i) * um + (um - 1 - d)] = a % p;
            a /= p;
        }
    }
    return out;
}

Word RankMetricCode::word_from_digits(const std::vector<uint64_t>& dg) const {
    const auto& T = *tower_->top();
    uint32_t um = T.degree();
    uint64_t p = T.p();
    Word w(n_, 0);
    for (uint32_t i = 0; i < n_; ++i) {
        uint64_t a = 0;
        for (uint32_t d = 0; d < um; ++d) {
            a = a * p + dg[size_t(i) * um + d] % p;
        }
        w[i] = a;
    }
    return w;
}

RankMetricCode RankMetricCode::from_words(FieldTower::Ptr t, uint32_t n, std::vector<Word> words) {
    if (!t) throw data_error("code requires a tower");
    if (words.empty()) throw data_error("a code must contain at least one word");
    uint64_t Q = t->Q();
    for (const auto& w : words) {
        if (w.size() != n) throw data_error("codeword length mismatch");
        for (uint64_t x : w) {
            if (x >= Q) throw data_error("codeword entry out of field range");
        }
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    RankMetricCode c;
    c.tower_ = std::move(t);
    c.n_ = n;
    c.storage_ = std::move(words);
    return c;
}

RankMetricCode RankMetricCode::from_generators(FieldTower::Ptr t, uint32_t n,
                                               std::vector<Word> generators, Word offset) {
    if (!t) throw data_error("code requires a tower");
    uint64_t Q = t->Q();
    if (offset.size() != n) throw data_error("offset length mismatch");
    for (uint64_t x : offset) {
        if (x >= Q) throw data_error("offset entry out of field range");
    }
    for (const auto& g : generators) {
        if (g.size() != n) throw data_error("generator length mismatch");
        for (uint64_t x : g) {
            if (x >= Q) throw data_error("generator entry out of field range");
        }
    }
    RankMetricCode c;
    c.tower_ = std::move(t);
    c.n_ = n;
    uint64_t p = c.tower_->top()->p();
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(generators.size());
    for (const auto& g : generators) rows.push_back(c.word_digits(g));
    auto pivots = fp_rref(rows, p);
    auto off = c.word_digits(offset);
    fp_reduce(off, rows, pivots, p);
    AdditiveRep rep;
    rep.generators.reserve(rows.size());
    for (const auto& r : rows) rep.generators.push_back(c.word_from_digits(r));
    rep.offset = c.word_from_digits(off);
    c.storage_ = std::move(rep);
    return c;
}

BigInt RankMetricCode::size() const {
    if (additive_storage()) {
        return big_pow(BigInt(tower_->top()->p()), arep().generators.size());
    }
    return BigInt(std::get<std::vector<Word>>(storage_).size());
}

std::optional<uint32_t> RankMetricCode::dim_log() const {
    if (additive_storage()) {
        uint64_t g = arep().generators.size();
        uint64_t um = tower_->top()->degree();
        if (g % um == 0) return uint32_t(g / um);
        return std::nullopt;
    }
    int64_t t = exact_log(size(), BigInt(tower_->Q()));
    if (t < 0) return std::nullopt;
    return uint32_t(t);
}

const std::vector<Word>& RankMetricCode::words() const {
    if (additive_storage()) throw data_error("explicit word list not available for additive storage");
    return std::get<std::vector<Word>>(storage_);
}

const std::vector<Word>& RankMetricCode::generators() const {
    if (!additive_storage()) throw data_error("generators not available for explicit storage");
    return arep().generators;
}

const Word& RankMetricCode::offset() const {
    if (!additive_storage()) throw data_error("offset not available for explicit storage");
    return arep().offset;
}

Word RankMetricCode::min_word() const {
    if (additive_storage()) return arep().offset;
    return words().front();
}

bool RankMetricCode::contains_word(const Word& w) const {
    if (w.size() != n_) return false;
    for (uint64_t x : w) {
        if (x >= tower_->Q()) return false;
    }
    if (!additive_storage()) {
        const auto& ws = words();
        return std::binary_search(ws.begin(), ws.end(), w);
    }
    const auto& rep = arep();
    uint64_t p = tower_->top()->p();
    // digits of w - offset (digit-wise subtraction is top-field subtraction)
    auto dw = word_digits(w);
    auto doff = word_digits(rep.offset);
    for (size_t i = 0; i < dw.size(); ++i) dw[i] = (dw[i] + p - doff[i]) % p;
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(rep.generators.size());
    std::vector<size_t> pivots;
    for (const auto& g : rep.generators) {
        auto dg = word_digits(g);
        size_t piv = 0;
        while (piv < dg.size() && dg[piv] == 0) ++piv;
        pivots.push_back(piv);
        rows.push_back(std::move(dg));
    }
    fp_reduce(dw, rows, pivots, p);
    return std::all_of(dw.begin(), dw.end(), [](uint64_t x) { return x == 0; });
}

void RankMetricCode::for_each_word(const std::function<void(const Word&)>& fn) const {
    if (!additive_storage()) {
        for (const auto& w : words()) fn(w);
        return;
    }
    const auto& rep = arep();
    const auto& T = *tower_->top();
    uint64_t p = T.p();
    size_t g = rep.generators.size();
    std::vector<uint64_t> coeff(g, 0);
    Word w = rep.offset;
    while (true) {
        fn(w);
        size_t i = 0;
        for (; i < g; ++i) {
            // every digit change (increment or rollover) adds the generator once
            for (uint32_t j = 0; j < n_; ++j) w[j] = T.add(w[j], rep.generators[i][j]);
            if (++coeff[i] < p) break;
            coeff[i] = 0;
        }
        if (i == g) break;
    }
}

Word RankMetricCode::word_add(const Word& a, const Word& b) const {
    const auto& T = *tower_->top();
    Word r(n_);
    for (uint32_t i = 0; i < n_; ++i) r[i] = T.add(a[i], b[i]);
    return r;
}

Word RankMetricCode::word_sub(const Word& a, const Word& b) const {
    const auto& T = *tower_->top();
    Word r(n_);
    for (uint32_t i = 0; i < n_; ++i) r[i] = T.sub(a[i], b[i]);
    return r;
}

FqMatrix RankMetricCode::coordinate_matrix(const Word& w) const {
    FqMatrix m(tower_->base(), n_, tower_->m());
    std::vector<uint64_t> coords(tower_->m());
    for (uint32_t i = 0; i < n_; ++i) {
        tower_->decompose(w[i], coords.data());
        for (uint32_t j = 0; j < tower_->m(); ++j) m.at(i, j) = coords[j];
    }
    return m;
}

Subspace RankMetricCode::support(const Word& w) const {
    FqMatrix cm = coordinate_matrix(w);
    // columns of the coordinate matrix span the support in F_q^n
    std::vector<std::vector<uint64_t>> cols;
    cols.reserve(tower_->m());
    for (uint32_t j = 0; j < tower_->m(); ++j) {
        std::vector<uint64_t> col(n_);
        for (uint32_t i = 0; i < n_; ++i) col[i] = cm.at(i, j);
        cols.push_back(std::move(col));
    }
    return Subspace::from_rows(tower_->base(), n_, cols);
}

uint32_t RankMetricCode::rank_weight(const Word& w) const {
    return uint32_t(coordinate_matrix(w).rank());
}

Subspace RankMetricCode::support_rel(const Word& w, const Word& anchor) const {
    return support(word_sub(w, anchor));
}

uint32_t RankMetricCode::distance(const Word& a, const Word& b) const {
    return rank_weight(word_sub(a, b));
}

Word RankMetricCode::project_word(const Subspace& V, const Word& w) const {
    if (V.n() != n_) throw data_error("projection subspace has wrong ambient dimension");
    const auto& T = *tower_->top();
    uint32_t d = V.dim();
    Word out(d, 0);
    const auto& rows = V.flat_rows();
    for (uint32_t r = 0; r < d; ++r) {
        uint64_t acc = 0;
        for (uint32_t j = 0; j < n_; ++j) {
            uint64_t coeffq = rows[size_t(r) * n_ + j];
            if (coeffq == 0) continue;
            acc = T.add(acc, T.mul(tower_->embed(coeffq), w[j]));
        }
        out[r] = acc;
    }
    return out;
}

BigInt RankMetricCode::projection_image_size(const Subspace& V) const {
    if (V.dim() == 0) return 1;
    if (!additive_storage()) {
        std::unordered_set<std::vector<uint64_t>, VecHash> images;
        for (const auto& w : words()) images.insert(project_word(V, w));
        return BigInt(images.size());
    }
    // additive route: |pi_V(C)| = p^rank of the projected generator digit matrix
    const auto& rep = arep();
    const auto& T = *tower_->top();
    uint32_t um = T.degree();
    uint64_t p = T.p();
    std::vector<std::vector<uint64_t>> rows;
    rows.reserve(rep.generators.size());
    for (const auto& g : rep.generators) {
        Word pw = project_word(V, g);
        std::vector<uint64_t> dg(size_t(V.dim()) * um, 0);
        for (uint32_t i = 0; i < V.dim(); ++i) {
            uint64_t a = pw[i];
            for (uint32_t d = 0; d < um; ++d) {
                dg[size_t(i) * um + (um - 1 - d)] = a % p;
                a /= p;
            }
        }
        rows.push_back(std::move(dg));
    }
    size_t rank = fp_rref(rows, p).size();
    return big_pow(BigInt(p), rank);
}

std::optional<uint32_t> RankMetricCode::projection_log(const Subspace& V) const {
    BigInt s = projection_image_size(V);
    int64_t t = exact_log(s, BigInt(tower_->Q()));
    if (t < 0) return std::nullopt;
    return uint32_t(t);
}

AlmostAffineVerdict RankMetricCode::is_almost_affine(const ScopeSpec& scope) const {
    AlmostAffineVerdict v;
    v.scope_description = scope.describe();
    auto check = [&](const Subspace& V) {
        ++v.checked;
        if (!v.almost_affine) return;
        if (!projection_log(V).has_value()) {
            v.almost_affine = false;
            v.witness = V;
            v.witness_size = projection_image_size(V);
        }
    };
    const auto& f = tower_->base();
    if (scope.kind == ScopeSpec::Kind::Sample) {
        std::mt19937_64 rng(scope.seed);
        std::uniform_int_distribution<uint32_t> dim_dist(1, n_);
        for (uint64_t i = 0; i < scope.sample_count; ++i) {
            uint32_t d = dim_dist(rng);
            check(random_subspace(f, n_, d, rng));
        }
        return v;
    }
    uint32_t dmax = scope.kind == ScopeSpec::Kind::All ? n_ : std::min(scope.max_dim, n_);
    BigInt used = 0;
    for (uint32_t d = 0; d <= dmax; ++d) {
        BigInt layer = gaussian_binomial(n_, d, BigInt(q()));
        if (used + layer > BigInt(scope.budget)) {
            v.scope_complete = false;
            return v;
        }
        used += layer;
        for_each_subspace(f, n_, {d}, scope.budget, check);
    }
    return v;
}

RankMetricCode RankMetricCode::puncture(const Subspace& V) const {
    if (V.n() != n_) throw data_error("puncturing space has wrong ambient dimension");
    uint32_t d = V.dim();
    if (!additive_storage()) {
        std::vector<Word> out;
        out.reserve(words().size());
        for (const auto& w : words()) out.push_back(project_word(V, w));
        return from_words(tower_, d, std::move(out));
    }
    const auto& rep = arep();
    std::vector<Word> gens;
    gens.reserve(rep.generators.size());
    for (const auto& g : rep.generators) gens.push_back(project_word(V, g));
    return from_generators(tower_, d, std::move(gens), project_word(V, rep.offset));
}

RankMetricCode RankMetricCode::subcode(const Subspace& Z, const Word& x) const {
    if (!contains_word(x)) throw data_error("anchor word is not in the code");
    if (Z.n() != n_) throw data_error("subcode space has wrong ambient dimension");
    if (!additive_storage()) {
        Word px = project_word(Z, x);
        std::vector<Word> out;
        for (const auto& w : words()) {
            if (project_word(Z, w) == px) out.push_back(w);
        }
        return from_words(tower_, n_, std::move(out));
    }
    // additive: generators of the kernel of g -> pi_Z(g), plus offset x
    const auto& rep = arep();
    const auto& T = *tower_->top();
    uint32_t um = T.degree();
    uint64_t p = T.p();
    size_t g = rep.generators.size();
    // coefficient-space kernel over F_p: rows indexed by generators, columns by
    // digits of the projection
    std::vector<std::vector<uint64_t>> mat(g, std::vector<uint64_t>(size_t(Z.dim()) * um + g, 0));
    for (size_t r = 0; r < g; ++r) {
        Word pw = project_word(Z, rep.generators[r]);
        for (uint32_t i = 0; i < Z.dim(); ++i) {
            uint64_t a = pw[i];
            for (uint32_t dd = 0; dd < um; ++dd) {
                mat[r][size_t(i) * um + (um - 1 - dd)] = a % p;
                a /= p;
            }
        }
        mat[r][size_t(Z.dim()) * um + r] = 1;  // identity tail tracks coefficients
    }
    // eliminate on the projection columns only
    size_t proj_cols = size_t(Z.dim()) * um;
    size_t rank = 0;
    auto inv_mod = [p](uint64_t xx) {
        uint64_t r = 1, b = xx % p, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return r;
    };
    for (size_t col = 0; col < proj_cols && rank < g; ++col) {
        size_t piv = g;
        for (size_t r = rank; r < g; ++r) {
            if (mat[r][col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == g) continue;
        std::swap(mat[piv], mat[rank]);
        uint64_t scale = inv_mod(mat[rank][col]);
        if (scale != 1) {
            for (auto& xx : mat[rank]) xx = xx * scale % p;
        }
        for (size_t r = 0; r < g; ++r) {
            if (r == rank || mat[r][col] == 0) continue;
            uint64_t fneg = p - mat[r][col];
            for (size_t j = 0; j < mat[r].size(); ++j) {
                mat[r][j] = (mat[r][j] + fneg * mat[rank][j]) % p;
            }
        }
        ++rank;
    }
    // rows below rank have zero projection: their coefficient tails span the kernel
    std::vector<Word> kgens;
    for (size_t r = rank; r < g; ++r) {
        Word acc(n_, 0);
        for (size_t i = 0; i < g; ++i) {
            uint64_t coeff = mat[r][proj_cols + i];
            if (coeff == 0) continue;
            for (uint32_t j = 0; j < n_; ++j) {
                uint64_t term = rep.generators[i][j];
                // scalar coeff in F_p: add the generator coeff times
                for (uint64_t kk = 0; kk < coeff; ++kk) acc[j] = T.add(acc[j], term);
            }
        }
        kgens.push_back(std::move(acc));
    }
    return from_generators(tower_, n_, std::move(kgens), x);
}

RankMetricCode RankMetricCode::shorten(const Subspace& Z, const Word& x,
                                       const std::optional<Subspace>& complement) const {
    Subspace comp = complement ? *complement : Z.direct_complement();
    if (comp.n() != n_) throw data_error("complement has wrong ambient dimension");
    if (comp.dim() != n_ - Z.dim() || comp.intersect(Z).dim() != 0) {
        throw data_error("supplied space is not a complement of the shortening space");
    }
    return subcode(Z, x).puncture(comp);
}

RankMetricCode RankMetricCode::apply_equivalence(const FqMatrix& A, const Word& t) const {
    if (A.rows() != n_ || A.cols() != n_) throw data_error("equivalence matrix must be n x n");
    if (!A.field()->same_field(*tower_->base())) {
        throw data_error("equivalence matrix must be over the base field");
    }
    if (!A.inverse().has_value()) throw data_error("equivalence matrix must be invertible");
    if (t.size() != n_) throw data_error("translation length mismatch");
    const auto& T = *tower_->top();
    auto map_linear = [&](const Word& w) {
        Word out(n_, 0);
        for (uint32_t i = 0; i < n_; ++i) {
            uint64_t acc = 0;
            for (uint32_t j = 0; j < n_; ++j) {
                uint64_t a = A.at(i, j);
                if (a == 0) continue;
                acc = T.add(acc, T.mul(tower_->embed(a), w[j]));
            }
            out[i] = acc;
        }
        return out;
    };
    if (!additive_storage()) {
        std::vector<Word> out;
        out.reserve(words().size());
        for (const auto& w : words()) out.push_back(word_add(map_linear(w), t));
        return from_words(tower_, n_, std::move(out));
    }
    const auto& rep = arep();
    std::vector<Word> gens;
    gens.reserve(rep.generators.size());
    for (const auto& g : rep.generators) gens.push_back(map_linear(g));
    return from_generators(tower_, n_, std::move(gens), word_add(map_linear(rep.offset), t));
}

LinearityReport RankMetricCode::classify_linearity() const {
    LinearityReport rep;
    Word zero(n_, 0);
    rep.contains_zero = contains_word(zero);
    const auto& T = *tower_->top();
    if (additive_storage()) {
        rep.p_linear = rep.contains_zero;  // affine space containing 0 is linear
        if (rep.p_linear) {
            auto scaled_inside = [&](uint64_t lambda_top) {
                for (const auto& g : generators()) {
                    Word s(n_);
                    for (uint32_t i = 0; i < n_; ++i) s[i] = T.mul(lambda_top, g[i]);
                    if (!contains_word(s)) return false;
                }
                return true;
            };
            rep.q_linear = scaled_inside(tower_->embed(tower_->base()->generator()));
            rep.qm_linear = rep.q_linear && scaled_inside(T.generator());
        }
        return rep;
    }
    const auto& ws = words();
    if (rep.contains_zero) {
        bool closed = true;
        for (size_t i = 0; i < ws.size() && closed; ++i) {
            for (size_t j = i; j < ws.size() && closed; ++j) {
                if (!contains_word(word_add(ws[i], ws[j]))) closed = false;
            }
        }
        rep.p_linear = closed;
    }
    if (rep.p_linear) {
        auto scaled_inside = [&](uint64_t lambda_top) {
            for (const auto& w : ws) {
                Word s(n_);
                for (uint32_t i = 0; i < n_; ++i) s[i] = T.mul(lambda_top, w[i]);
                if (!contains_word(s)) return false;
            }
            return true;
        };
        rep.q_linear = scaled_inside(tower_->embed(tower_->base()->generator()));
        rep.qm_linear = rep.q_linear && scaled_inside(T.generator());
    }
    return rep;
}

uint32_t RankMetricCode::min_distance() const {
    if (size() == 1) throw data_error("minimum distance undefined for a one-word code");
    if (!additive_storage()) {
        const auto& ws = words();
        uint32_t best = n_ + 1;
        for (size_t i = 0; i < ws.size(); ++i) {
            for (size_t j = i + 1; j < ws.size(); ++j) {
                best = std::min(best, distance(ws[i], ws[j]));
                if (best == 1) return 1;
            }
        }
        return best;
    }
    // walk the difference span (offset-independent) with incremental
    // coordinate matrices; every odometer digit change adds one generator
    const auto& rep = arep();
    const auto& B = *tower_->base();
    uint64_t p = tower_->top()->p();
    size_t g = rep.generators.size();
    uint32_t mm = tower_->m();
    std::vector<std::vector<uint64_t>> gen_cm(g);
    for (size_t i = 0; i < g; ++i) {
        FqMatrix cm = coordinate_matrix(rep.generators[i]);
        gen_cm[i].resize(size_t(n_) * mm);
        for (uint32_t r = 0; r < n_; ++r) {
            for (uint32_t c = 0; c < mm; ++c) gen_cm[i][size_t(r) * mm + c] = cm.at(r, c);
        }
    }
    std::vector<uint64_t> cur(size_t(n_) * mm, 0);
    std::vector<uint64_t> coeff(g, 0);
    std::vector<uint64_t> scratch;
    uint32_t best = n_ + 1;
    auto rank_of_cur = [&]() {
        scratch = cur;
        // small in-place elimination over the base field
        uint32_t rank = 0;
        for (uint32_t col = 0; col < mm && rank < n_; ++col) {
            uint32_t piv = n_;
            for (uint32_t r = rank; r < n_; ++r) {
                if (scratch[size_t(r) * mm + col] != 0) {
                    piv = r;
                    break;
                }
            }
            if (piv == n_) continue;
            for (uint32_t c = 0; c < mm; ++c) {
                std::swap(scratch[size_t(piv) * mm + c], scratch[size_t(rank) * mm + c]);
            }
            uint64_t scale = B.inv(scratch[size_t(rank) * mm + col]);
            if (scale != 1) {
                for (uint32_t c = col; c < mm; ++c) {
                    scratch[size_t(rank) * mm + c] = B.mul(scratch[size_t(rank) * mm + c], scale);
                }
            }
            for (uint32_t r = rank + 1; r < n_; ++r) {
                uint64_t f = scratch[size_t(r) * mm + col];
                if (f == 0) continue;
                for (uint32_t c = col; c < mm; ++c) {
                    scratch[size_t(r) * mm + c] =
                        B.sub(scratch[size_t(r) * mm + c], B.mul(f, scratch[size_t(rank) * mm + c]));
                }
            }
            ++rank;
        }
        return rank;
    };
    while (true) {
        size_t i = 0;
        for (; i < g; ++i) {
            for (size_t k = 0; k < cur.size(); ++k) cur[k] = B.add(cur[k], gen_cm[i][k]);
            if (++coeff[i] < p) break;
            coeff[i] = 0;
        }
        if (i == g) break;
        uint32_t r = rank_of_cur();
        if (r > 0 && r < best) {
            best = r;
            if (best == 1) break;
        }
    }
    if (best > n_) throw data_error("minimum distance undefined: span has no nonzero element");
    return best;
}

FqMatrix RankMetricCode::linear_generator_matrix() const {
    auto lin = classify_linearity();
    if (!lin.qm_linear) throw data_error("code is not top-field-linear");
    auto k = dim_log();
    if (!k) throw data_error("code size is not a power of the top field order");
    const auto& top = tower_->top();
    FqMatrix gm(top, *k, n_);
    // collect a top-field basis greedily from the stored generators/words
    std::vector<Word> basis;
    auto try_add = [&](const Word& w) {
        if (basis.size() == *k) return;
        std::vector<std::vector<uint64_t>> rows;
        for (const auto& b : basis) rows.push_back(b);
        rows.push_back(w);
        FqMatrix mat = FqMatrix::from_rows(top, rows, n_);
        if (mat.rank() == basis.size() + 1) basis.push_back(w);
    };
    if (additive_storage()) {
        for (const auto& g : generators()) try_add(g);
    } else {
        for (const auto& w : words()) try_add(w);
    }
    if (basis.size() != *k) throw data_error("failed to extract a top-field basis (internal)");
    for (uint32_t r = 0; r < *k; ++r) {
        for (uint32_t c = 0; c < n_; ++c) gm.at(r, c) = basis[r][c];
    }
    return gm;
}

RankMetricCode RankMetricCode::linear_dual() const {
    FqMatrix gm = linear_generator_matrix();
    FqMatrix ns = gm.right_nullspace();
    const auto& T = *tower_->top();
    uint32_t um = T.degree();
    // additive generators: top-field basis rows scaled by the prime-field
    // basis (encodings p^d) of the top field
    std::vector<Word> gens;
    for (size_t r = 0; r < ns.rows(); ++r) {
        for (uint32_t d = 0; d < um; ++d) {
            uint64_t lambda = 1;
            for (uint32_t i = 0; i < d; ++i) lambda *= T.p();
            Word w(n_);
            for (uint32_t c = 0; c < n_; ++c) w[c] = T.mul(lambda, ns.at(r, c));
            gens.push_back(std::move(w));
        }
    }
    return from_generators(tower_, n_, std::move(gens), Word(n_, 0));
}

bool RankMetricCode::same_code(const RankMetricCode& other) const {
    if (n_ != other.n_ || !tower_->same_tower(*other.tower_)) return false;
    if (size() != other.size()) return false;
    if (additive_storage() && other.additive_storage()) {
        return arep().generators == other.arep().generators && arep().offset == other.arep().offset;
    }
    // mixed or explicit: compare by membership (sizes already equal)
    bool ok = true;
    for_each_word([&](const Word& w) {
        if (ok && !other.contains_word(w)) ok = false;
    });
    return ok;
}

// ---- projection-kernel routes ----

bool projects_to_zero_by_matvec(const RankMetricCode& c, const Subspace& V, const Word& v) {
    Word pw = c.project_word(V, v);
    return std::all_of(pw.begin(), pw.end(), [](uint64_t x) { return x == 0; });
}

bool projects_to_zero_by_support(const RankMetricCode& c, const Subspace& V, const Word& v) {
    return V.orthogonal_complement().contains(c.support(v));
}

bool projects_to_zero_by_span(const RankMetricCode& c, const Subspace& V, const Word& v) {
    // v lies in the top-field span of the embedded basis of V^perp
    Subspace perp = V.orthogonal_complement();
    const auto& top = c.tower()->top();
    std::vector<std::vector<uint64_t>> rows;
    for (const auto& r : perp.rows()) {
        std::vector<uint64_t> er(r.size());
        for (size_t i = 0; i < r.size(); ++i) er[i] = c.tower()->embed(r[i]);
        rows.push_back(std::move(er));
    }
    size_t base_rank = FqMatrix::from_rows(top, rows, c.n()).rank();
    rows.push_back(v);
    size_t ext_rank = FqMatrix::from_rows(top, rows, c.n()).rank();
    return ext_rank == base_rank;
}

} // namespace qrank
