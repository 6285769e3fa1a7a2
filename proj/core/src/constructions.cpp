#include "qrank/constructions.hpp"

#include "qrank/errors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qrank {

namespace {

// ---------------------------------------------------------------------------
// Evaluation-code family internals
// ---------------------------------------------------------------------------

struct PrimePower {
    uint64_t p = 0;
    uint32_t w = 0;  // q0 = p^w
};

PrimePower factor_prime_power(uint64_t q0) {
    if (q0 < 2) throw data_error("q0 must be at least 2");
    uint64_t p = q0;
    for (uint64_t d = 2; d * d <= q0; ++d) {
        if (q0 % d == 0) {
            p = d;
            break;
        }
    }
    uint64_t r = q0;
    uint32_t w = 0;
    while (r % p == 0) {
        r /= p;
        ++w;
    }
    if (r != 1) throw data_error("q0 must be a prime power");
    return {p, w};
}

std::optional<uint64_t> checked_pow(uint64_t base, uint64_t exp) {
    uint64_t r = 1;
    for (uint64_t i = 0; i < exp; ++i) {
        if (r > (uint64_t(1) << 62) / base) return std::nullopt;
        r *= base;
    }
    return r;
}

struct EvalShape {
    uint64_t p = 0;
    uint32_t w = 0;     // q0 = p^w
    uint32_t u = 0;     // q = q0^u
    uint32_t n = 0;
    uint32_t s = 0;
    uint32_t etop = 0;  // [F_{q^n} : F_p] = w*u*n
};

EvalShape eval_shape(uint64_t q0, uint32_t u, uint32_t n, uint32_t s) {
    auto pp = factor_prime_power(q0);
    if (u == 0 || n == 0 || s == 0) throw data_error("u, n and s must be positive");
    if (std::gcd(uint64_t(n), uint64_t(s)) != 1) throw data_error("n and s must be coprime");
    EvalShape sh;
    sh.p = pp.p;
    sh.w = pp.w;
    sh.u = u;
    sh.n = n;
    sh.s = s;
    uint64_t etop = uint64_t(pp.w) * u * n;
    // The evaluation field F_{q^n} backs full code machinery (tables, digit
    // matrices); the norm field F_{q^{sn}} additionally needs an embedding
    // table of size |F_{q^n}| when s > 1.  Keep both within practical cost.
    auto eval_order = checked_pow(pp.p, etop);
    if (!eval_order || *eval_order > (uint64_t(1) << 20)) {
        throw data_error("parameters exceed the supported field size");
    }
    if (s >= 2) {
        auto norm_order = checked_pow(pp.p, etop * s);
        if (!norm_order || *norm_order > (uint64_t(1) << 24)) {
            throw data_error("parameters exceed the supported field size");
        }
    }
    sh.etop = uint32_t(etop);
    return sh;
}

void require_valid_k(const EvalShape& sh, uint32_t k) {
    if (k == 0 || k >= sh.n) throw data_error("k must satisfy 1 <= k < n");
}

// Norm machinery: eta lives in F_{q^n}; the screen compares its relative norm
// down to F_{q0^s}, taken inside F_{q^{sn}}, against the forbidden value.
struct NormScreen {
    GaloisField::Ptr field;            // F_{q^{sn}} over F_p
    FieldTower::Ptr lift;              // null when s = 1 (field == F_{q^n})
    uint32_t down = 0;                 // target subfield degree over F_p = w*s
    uint64_t eta_modulus = 0;          // |F_{q^n}|

    uint64_t value(uint64_t eta) const {
        uint64_t e = lift ? lift->embed(eta) : eta;
        return field->norm_to_subfield(e, down);
    }
};

NormScreen make_norm_screen(const EvalShape& sh) {
    NormScreen ns;
    ns.down = sh.w * sh.s;
    ns.eta_modulus = *checked_pow(sh.p, sh.etop);
    if (sh.s == 1) {
        ns.field = GaloisField::make(sh.p, sh.etop);
    } else {
        ns.lift = FieldTower::make(sh.p, sh.etop, sh.s);
        ns.field = ns.lift->top();
    }
    return ns;
}

uint64_t forbidden_norm_encoding(const EvalShape& sh, uint32_t k) {
    uint64_t exp_parity = (uint64_t(sh.n) * k * sh.u) % 2;
    if (exp_parity == 0 || sh.p == 2) return 1;
    return sh.p - 1;  // constant polynomial -1, same encoding in every extension
}

// ---------------------------------------------------------------------------
// Semifield internals (q prime): element encodings are digit vectors base q.
// ---------------------------------------------------------------------------

uint64_t upow(uint64_t base, uint64_t exp) {
    uint64_t r = 1;
    while (exp--) r *= base;
    return r;
}

uint64_t vec_scale(uint64_t a, uint64_t lam, uint64_t q, uint32_t m) {
    if (q == 2) return lam ? a : 0;
    uint64_t r = 0, pw = 1;
    for (uint32_t i = 0; i < m; ++i) {
        r += (((a / pw) % q) * lam % q) * pw;
        pw *= q;
    }
    return r;
}

uint64_t vec_add(uint64_t a, uint64_t b, uint64_t q, uint32_t m) {
    if (q == 2) return a ^ b;
    uint64_t r = 0, pw = 1;
    for (uint32_t i = 0; i < m; ++i) {
        r += (((a / pw) % q + (b / pw) % q) % q) * pw;
        pw *= q;
    }
    return r;
}

uint64_t vec_sub(uint64_t a, uint64_t b, uint64_t q, uint32_t m) {
    return vec_add(a, vec_scale(b, q - 1, q, m), q, m);
}

uint64_t inv_mod_prime(uint64_t a, uint64_t q) {
    uint64_t r = 1, b = a % q, e = q - 2;
    while (e) {
        if (e & 1) r = r * b % q;
        b = b * b % q;
        e >>= 1;
    }
    return r;
}

// Columns (as encodings) span F_q^m, i.e. the matrix they form is invertible.
bool invertible_cols(const std::vector<uint64_t>& cols, uint64_t q, uint32_t m) {
    std::vector<uint64_t> piv;
    std::vector<uint64_t> pivpow;
    piv.reserve(m);
    pivpow.reserve(m);
    for (uint64_t c : cols) {
        uint64_t v = c;
        for (size_t t = 0; t < piv.size(); ++t) {
            uint64_t d = (v / pivpow[t]) % q;
            if (d) v = vec_sub(v, vec_scale(piv[t], d, q, m), q, m);
        }
        if (v == 0) return false;
        uint64_t pw = 1, lead = 1, leadd = 0;
        for (uint32_t i = 0; i < m; ++i) {
            uint64_t d = (v / pw) % q;
            if (d) {
                lead = pw;
                leadd = d;
            }
            pw *= q;
        }
        if (leadd != 1) v = vec_scale(v, inv_mod_prime(leadd, q), q, m);
        piv.push_back(v);
        pivpow.push_back(lead);
    }
    return piv.size() == m;
}

struct SearchCtx {
    uint64_t q = 0;
    uint32_t m = 0;
    uint64_t ord = 0;
    std::vector<uint64_t> qpow;                   // q^i for i < m
    std::vector<std::vector<uint64_t>> basis;     // basis[t] = columns of B_t
};

std::vector<uint64_t> combo_cols(const SearchCtx& cx, const std::vector<uint64_t>& coeffs,
                                 uint64_t lam, const std::vector<uint64_t>& cand) {
    std::vector<uint64_t> cols(cx.m, 0);
    for (uint32_t c = 0; c < cx.m; ++c) cols[c] = vec_scale(cand[c], lam, cx.q, cx.m);
    for (size_t t = 0; t < coeffs.size(); ++t) {
        if (!coeffs[t]) continue;
        for (uint32_t c = 0; c < cx.m; ++c) {
            cols[c] = vec_add(cols[c], vec_scale(cx.basis[t][c], coeffs[t], cx.q, cx.m),
                              cx.q, cx.m);
        }
    }
    return cols;
}

// Every nonzero F_q-combination involving the candidate must stay invertible.
bool span_ok(const SearchCtx& cx, const std::vector<uint64_t>& cand) {
    std::vector<uint64_t> coeffs(cx.basis.size(), 0);
    uint64_t total = upow(cx.q, cx.basis.size());
    for (uint64_t lam = 1; lam < cx.q; ++lam) {
        for (uint64_t idx = 0; idx < total; ++idx) {
            uint64_t v = idx;
            for (size_t t = 0; t < coeffs.size(); ++t) {
                coeffs[t] = v % cx.q;
                v /= cx.q;
            }
            if (!invertible_cols(combo_cols(cx, coeffs, lam, cand), cx.q, cx.m)) {
                return false;
            }
        }
    }
    return true;
}

uint64_t mat_vec(const std::vector<uint64_t>& cols, uint64_t x, uint64_t q, uint32_t m) {
    uint64_t r = 0, pw = 1;
    for (uint32_t i = 0; i < m; ++i) {
        uint64_t d = (x / pw) % q;
        if (d) r = vec_add(r, vec_scale(cols[i], d, q, m), q, m);
        pw *= q;
    }
    return r;
}

std::optional<std::array<uint64_t, 3>> first_nonassoc_triple(const std::vector<uint64_t>& prod,
                                                             uint64_t ord) {
    for (uint64_t x = 0; x < ord; ++x) {
        for (uint64_t y = 0; y < ord; ++y) {
            uint64_t xy = prod[x * ord + y];
            for (uint64_t z = 0; z < ord; ++z) {
                if (prod[xy * ord + z] != prod[x * ord + prod[y * ord + z]]) {
                    return std::array<uint64_t, 3>{x, y, z};
                }
            }
        }
    }
    return std::nullopt;
}

SemifieldTable table_from_basis(const SearchCtx& cx) {
    SemifieldTable t;
    t.q = cx.q;
    t.m = cx.m;
    t.identity = 1;
    t.prod.assign(cx.ord * cx.ord, 0);
    // M_a = sum digit_i(a) B_i; x o a = M_a x.
    std::vector<uint64_t> cols(cx.m, 0);
    for (uint64_t a = 0; a < cx.ord; ++a) {
        std::fill(cols.begin(), cols.end(), 0);
        uint64_t v = a;
        for (uint32_t t2 = 0; t2 < cx.m; ++t2) {
            uint64_t d = v % cx.q;
            v /= cx.q;
            if (!d) continue;
            for (uint32_t c = 0; c < cx.m; ++c) {
                cols[c] = vec_add(cols[c], vec_scale(cx.basis[t2][c], d, cx.q, cx.m),
                                  cx.q, cx.m);
            }
        }
        for (uint64_t x = 0; x < cx.ord; ++x) {
            t.prod[x * cx.ord + a] = mat_vec(cols, x, cx.q, cx.m);
        }
    }
    t.proper_witness = first_nonassoc_triple(t.prod, cx.ord);
    return t;
}

bool search_dfs(SearchCtx& cx, uint32_t level, std::optional<SemifieldTable>& out) {
    if (level == cx.m) {
        SemifieldTable t = table_from_basis(cx);
        if (t.proper_witness) {
            out = std::move(t);
            return true;
        }
        return false;
    }
    uint64_t free_cols = cx.m - 1;
    uint64_t total = upow(cx.ord, free_cols);
    std::vector<uint64_t> cand(cx.m, 0);
    cand[0] = cx.qpow[level];  // first column pinned to e_{level}
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t v = idx;
        for (uint64_t c = free_cols; c >= 1; --c) {
            cand[c] = v % cx.ord;
            v /= cx.ord;
        }
        if (!span_ok(cx, cand)) continue;
        cx.basis.push_back(cand);
        if (search_dfs(cx, level + 1, out)) return true;
        cx.basis.pop_back();
    }
    return false;
}

void require_prime_q(uint64_t q) {
    if (!is_prime_u64(q)) throw data_error("semifield machinery requires prime q");
}

uint64_t table_order(const SemifieldTable& t) {
    if (t.q < 2 || t.m == 0) throw data_error("semifield table has empty shape");
    auto o = checked_pow(t.q, t.m);
    if (!o) throw data_error("semifield table order overflows");
    return *o;
}

// The validated-table gate shared by the code constructions.
SemifieldCertificate require_valid(const SemifieldTable& t) {
    SemifieldCertificate cert = semifield_validate(t);
    if (!cert.valid) throw data_error("invalid semifield table: " + cert.failure);
    return cert;
}

} // namespace

// ---------------------------------------------------------------------------
// Evaluation codes
// ---------------------------------------------------------------------------

FieldTower::Ptr agtg_tower(uint64_t q0, uint32_t u, uint32_t n) {
    auto sh = eval_shape(q0, u, n, 1);
    return FieldTower::make(sh.p, sh.w * sh.u, sh.n);
}

uint64_t agtg_norm_value(uint64_t q0, uint32_t u, uint32_t n, uint32_t s, uint64_t eta) {
    auto sh = eval_shape(q0, u, n, s);
    auto ns = make_norm_screen(sh);
    if (eta >= ns.eta_modulus) throw data_error("eta is not an element encoding of F_{q^n}");
    return ns.value(eta);
}

uint64_t agtg_forbidden_norm(uint64_t q0, uint32_t u, uint32_t n, uint32_t k) {
    auto sh = eval_shape(q0, u, n, 1);
    require_valid_k(sh, k);
    return forbidden_norm_encoding(sh, k);
}

bool agtg_eta_valid(uint64_t q0, uint32_t u, uint32_t n, uint32_t k, uint32_t s,
                    uint64_t eta) {
    auto sh = eval_shape(q0, u, n, s);
    require_valid_k(sh, k);
    auto ns = make_norm_screen(sh);
    if (eta >= ns.eta_modulus) throw data_error("eta is not an element encoding of F_{q^n}");
    return ns.value(eta) != forbidden_norm_encoding(sh, k);
}

std::optional<uint64_t> agtg_first_valid_eta(uint64_t q0, uint32_t u, uint32_t n,
                                             uint32_t k, uint32_t s) {
    auto sh = eval_shape(q0, u, n, s);
    require_valid_k(sh, k);
    auto ns = make_norm_screen(sh);
    uint64_t target = forbidden_norm_encoding(sh, k);
    for (uint64_t eta = 1; eta < ns.eta_modulus; ++eta) {
        if (ns.value(eta) != target) return eta;
    }
    return std::nullopt;
}

std::vector<uint64_t> agtg_valid_etas(uint64_t q0, uint32_t u, uint32_t n, uint32_t k,
                                      uint32_t s, size_t count) {
    auto sh = eval_shape(q0, u, n, s);
    require_valid_k(sh, k);
    auto ns = make_norm_screen(sh);
    uint64_t target = forbidden_norm_encoding(sh, k);
    std::vector<uint64_t> out;
    for (uint64_t eta = 1; eta < ns.eta_modulus && out.size() < count; ++eta) {
        if (ns.value(eta) != target) out.push_back(eta);
    }
    return out;
}

RankMetricCode agtg_make(uint64_t q0, uint32_t u, uint32_t n, uint32_t k, uint32_t s,
                         uint32_t h, uint64_t eta) {
    auto sh = eval_shape(q0, u, n, s);
    require_valid_k(sh, k);
    auto ns = make_norm_screen(sh);
    if (eta >= ns.eta_modulus) throw data_error("eta is not an element encoding of F_{q^n}");
    if (ns.value(eta) == forbidden_norm_encoding(sh, k)) {
        throw data_error("eta violates the norm condition");
    }
    auto tower = FieldTower::make(sh.p, sh.w * sh.u, sh.n);
    const auto& top = tower->top();
    const auto& pts = tower->pi_basis();
    std::vector<Word> gens;
    gens.reserve(size_t(k) * sh.etop);
    for (uint32_t slot = 0; slot < k; ++slot) {
        uint64_t beta = 1;  // runs over the F_p-basis encodings p^t of F_{q^n}
        for (uint32_t t = 0; t < sh.etop; ++t) {
            Word wd(sh.n, 0);
            for (uint32_t j = 0; j < sh.n; ++j) {
                uint64_t x = pts[j];
                uint64_t val = top->mul(beta, top->frobenius(x, sh.w * sh.u * sh.s * slot));
                if (slot == 0 && eta != 0) {
                    uint64_t tw = top->mul(eta, top->frobenius(beta, sh.w * h));
                    tw = top->mul(tw, top->frobenius(x, sh.w * sh.u * sh.s * k));
                    val = top->add(val, tw);
                }
                wd[j] = val;
            }
            gens.push_back(std::move(wd));
            beta *= sh.p;
        }
    }
    return RankMetricCode::from_generators(tower, sh.n, std::move(gens), Word(sh.n, 0));
}

RankMetricCode gabidulin_make(uint64_t q0, uint32_t u, uint32_t n, uint32_t k, uint32_t s) {
    auto sh = eval_shape(q0, u, n, s);
    require_valid_k(sh, k);
    auto tower = FieldTower::make(sh.p, sh.w * sh.u, sh.n);
    const auto& top = tower->top();
    const auto& pts = tower->pi_basis();
    // Conjugate ladder per point via iterated single-step Frobenius, a
    // deliberately different route from the composite-index evaluation above.
    std::vector<std::vector<uint64_t>> ladder(sh.n);
    for (uint32_t j = 0; j < sh.n; ++j) {
        uint64_t cur = pts[j];
        ladder[j].push_back(cur);
        for (uint32_t i = 1; i < k; ++i) {
            for (uint32_t r = 0; r < sh.s; ++r) cur = top->frobenius(cur, sh.w * sh.u);
            ladder[j].push_back(cur);
        }
    }
    std::vector<Word> gens;
    gens.reserve(size_t(k) * sh.etop);
    for (uint32_t slot = 0; slot < k; ++slot) {
        uint64_t beta = 1;
        for (uint32_t t = 0; t < sh.etop; ++t) {
            Word wd(sh.n, 0);
            for (uint32_t j = 0; j < sh.n; ++j) wd[j] = top->mul(beta, ladder[j][slot]);
            gens.push_back(std::move(wd));
            beta *= sh.p;
        }
    }
    return RankMetricCode::from_generators(tower, sh.n, std::move(gens), Word(sh.n, 0));
}

// ---------------------------------------------------------------------------
// Semifields
// ---------------------------------------------------------------------------

uint64_t SemifieldTable::order() const {
    uint64_t r = 1;
    for (uint32_t i = 0; i < m; ++i) r *= q;
    return r;
}

SemifieldCertificate semifield_validate(const SemifieldTable& t) {
    SemifieldCertificate cert;
    auto fail = [&cert](const std::string& msg) -> SemifieldCertificate& {
        cert.valid = false;
        cert.failure = msg;
        return cert;
    };
    if (!is_prime_u64(t.q)) return fail("q must be prime");
    if (t.m == 0) return fail("m must be positive");
    uint64_t ord = table_order(t);
    if (ord > 4096) return fail("table order exceeds the supported size");
    if (t.prod.size() != ord * ord) return fail("product table has the wrong size");
    for (uint64_t v : t.prod) {
        if (v >= ord) return fail("product entry out of range");
    }
    // Additivity in both slots (F_q-bilinearity follows since q is prime).
    for (uint64_t x = 0; x < ord; ++x) {
        for (uint64_t y = 0; y < ord; ++y) {
            uint64_t sxy = vec_add(x, y, t.q, t.m);
            for (uint64_t z = 0; z < ord; ++z) {
                if (t.prod[sxy * ord + z] !=
                    vec_add(t.prod[x * ord + z], t.prod[y * ord + z], t.q, t.m)) {
                    return fail("left slot is not additive");
                }
                if (t.prod[z * ord + sxy] !=
                    vec_add(t.prod[z * ord + x], t.prod[z * ord + y], t.q, t.m)) {
                    return fail("right slot is not additive");
                }
            }
        }
    }
    // Two-sided identity as declared.
    uint64_t e = t.identity;
    if (e >= ord) return fail("identity encoding out of range");
    for (uint64_t x = 0; x < ord; ++x) {
        if (t.prod[e * ord + x] != x || t.prod[x * ord + e] != x) {
            return fail("declared identity is not two-sided");
        }
    }
    // No zero divisors: each nonzero row and column is a permutation.
    std::vector<char> seen(ord, 0);
    for (uint64_t x = 1; x < ord; ++x) {
        std::fill(seen.begin(), seen.end(), 0);
        for (uint64_t y = 0; y < ord; ++y) {
            uint64_t v = t.prod[x * ord + y];
            if (seen[v]) return fail("left multiplication has a repeated value");
            seen[v] = 1;
        }
        std::fill(seen.begin(), seen.end(), 0);
        for (uint64_t y = 0; y < ord; ++y) {
            uint64_t v = t.prod[y * ord + x];
            if (seen[v]) return fail("right multiplication has a repeated value");
            seen[v] = 1;
        }
    }
    auto witness = first_nonassoc_triple(t.prod, ord);
    if (t.proper_witness) {
        auto [a, b, c] = *t.proper_witness;
        if (a >= ord || b >= ord || c >= ord) return fail("declared witness out of range");
        if (t.prod[t.prod[a * ord + b] * ord + c] ==
            t.prod[a * ord + t.prod[b * ord + c]]) {
            return fail("declared properness witness associates");
        }
    }
    cert.valid = true;
    cert.identity = e;
    cert.proper = witness.has_value();
    cert.witness = witness;
    return cert;
}

std::optional<SemifieldTable> semifield_search(uint64_t q, uint32_t m) {
    require_prime_q(q);
    if (m == 0) throw data_error("m must be positive");
    auto ordo = checked_pow(q, m);
    if (!ordo || *ordo > 1024) throw budget_error("semifield search supports q^m up to 1024");
    SearchCtx cx;
    cx.q = q;
    cx.m = m;
    cx.ord = *ordo;
    cx.qpow.resize(m);
    uint64_t pw = 1;
    for (uint32_t i = 0; i < m; ++i) {
        cx.qpow[i] = pw;
        pw *= q;
    }
    // B_0 = identity matrix.
    std::vector<uint64_t> id(m);
    for (uint32_t i = 0; i < m; ++i) id[i] = cx.qpow[i];
    cx.basis.push_back(id);
    std::optional<SemifieldTable> out;
    search_dfs(cx, 1, out);
    return out;
}

SemifieldTable semifield_from_field(uint64_t q, uint32_t m) {
    require_prime_q(q);
    if (m == 0) throw data_error("m must be positive");
    auto ordo = checked_pow(q, m);
    if (!ordo || *ordo > 4096) throw budget_error("field table supports q^m up to 4096");
    auto f = GaloisField::make(q, m);
    SemifieldTable t;
    t.q = q;
    t.m = m;
    t.identity = 1;
    uint64_t ord = *ordo;
    t.prod.assign(ord * ord, 0);
    for (uint64_t x = 0; x < ord; ++x) {
        for (uint64_t y = 0; y < ord; ++y) t.prod[x * ord + y] = f->mul(x, y);
    }
    t.proper_witness = std::nullopt;
    return t;
}

std::vector<FqMatrix> semifield_left_mult_matrices(const SemifieldTable& t) {
    uint64_t ord = table_order(t);
    if (t.prod.size() != ord * ord) throw data_error("product table has the wrong size");
    auto f = GaloisField::make(t.q, 1);
    std::vector<FqMatrix> out;
    out.reserve(ord);
    for (uint64_t x = 0; x < ord; ++x) {
        FqMatrix L(f, t.m, t.m);
        for (uint32_t j = 0; j < t.m; ++j) {
            uint64_t col = t.prod[x * ord + upow(t.q, j)];
            for (uint32_t i = 0; i < t.m; ++i) {
                L.at(i, j) = (col / upow(t.q, i)) % t.q;
            }
        }
        out.push_back(std::move(L));
    }
    return out;
}

SemifieldTable semifield_from_left_mult(uint64_t q, uint32_t m,
                                        const std::vector<FqMatrix>& left_mult,
                                        uint64_t identity) {
    require_prime_q(q);
    if (m == 0) throw data_error("m must be positive");
    auto ordo = checked_pow(q, m);
    if (!ordo) throw data_error("semifield table order overflows");
    uint64_t ord = *ordo;
    if (left_mult.size() != ord) throw data_error("expected one matrix per element");
    SemifieldTable t;
    t.q = q;
    t.m = m;
    t.identity = identity;
    t.prod.assign(ord * ord, 0);
    for (uint64_t x = 0; x < ord; ++x) {
        const FqMatrix& L = left_mult[x];
        if (L.rows() != m || L.cols() != m) throw data_error("matrix has the wrong shape");
        for (uint64_t y = 0; y < ord; ++y) {
            uint64_t acc = 0;
            for (uint32_t j = 0; j < m; ++j) {
                uint64_t d = (y / upow(q, j)) % q;
                if (!d) continue;
                uint64_t col = 0;
                for (uint32_t i = 0; i < m; ++i) {
                    if (L.at(i, j) >= q) throw data_error("matrix entry out of range");
                    col += L.at(i, j) * upow(q, i);
                }
                acc = vec_add(acc, vec_scale(col, d, q, m), q, m);
            }
            t.prod[x * ord + y] = acc;
        }
    }
    t.proper_witness = first_nonassoc_triple(t.prod, ord);
    return t;
}

// ---------------------------------------------------------------------------
// Semifield codes
// ---------------------------------------------------------------------------

RankMetricCode semifield_code_2dim(const SemifieldTable& t) {
    auto cert = require_valid(t);
    if (!cert.proper) {
        throw data_error("a proper (strictly non-associative) semifield is required");
    }
    uint64_t ord = table_order(t);
    auto tower = FieldTower::make(t.q, 1, t.m);
    const auto& top = tower->top();
    uint32_t n = uint32_t(ord) + 1;
    std::vector<Word> gens;
    gens.reserve(2 * t.m);
    for (uint32_t i = 0; i < t.m; ++i) {
        uint64_t b = upow(t.q, i);
        Word wx(n, 0);  // the word of (x, y) = (b, 0)
        wx[0] = b;
        for (uint64_t a = 0; a < ord; ++a) wx[1 + a] = top->neg(t.mul(b, a));
        gens.push_back(std::move(wx));
        Word wy(n, b);  // the word of (x, y) = (0, b)
        wy[0] = 0;
        gens.push_back(std::move(wy));
    }
    return RankMetricCode::from_generators(tower, n, std::move(gens), Word(n, 0));
}

std::optional<std::vector<uint64_t>> find_kdim_witness_point(const SemifieldTable& t,
                                                             uint32_t k) {
    require_valid(t);
    if (k < 2) throw data_error("k must be at least 2");
    uint64_t ord = table_order(t);
    uint32_t slots = k - 1;
    auto defect_through = [&](uint64_t pj) {
        for (uint64_t g = 0; g < ord; ++g) {
            for (uint64_t x = 0; x < ord; ++x) {
                if (t.mul(g, t.mul(x, pj)) != t.mul(t.mul(g, x), pj)) return true;
            }
        }
        return false;
    };
    std::vector<char> good(ord, 0);
    for (uint64_t a = 0; a < ord; ++a) good[a] = defect_through(a) ? 1 : 0;
    std::vector<uint64_t> point(slots, 0);
    uint64_t total = upow(ord, slots);
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t v = idx;
        for (uint32_t i = slots; i-- > 0;) {
            point[i] = v % ord;  // last slot varies fastest: lexicographic order
            v /= ord;
        }
        for (uint32_t i = 0; i < slots; ++i) {
            if (good[point[i]]) return point;
        }
    }
    return std::nullopt;
}

RankMetricCode semifield_code_kdim(const SemifieldTable& t, uint32_t k,
                                   const std::vector<uint64_t>& point) {
    require_valid(t);
    if (k < 2) throw data_error("k must be at least 2");
    uint64_t ord = table_order(t);
    if (point.size() != size_t(k) - 1) throw data_error("point must have k-1 entries");
    for (uint64_t pj : point) {
        if (pj >= ord) throw data_error("point entry out of range");
    }
    bool defect = false;
    for (uint64_t pj : point) {
        for (uint64_t g = 0; g < ord && !defect; ++g) {
            for (uint64_t x = 0; x < ord && !defect; ++x) {
                if (t.mul(g, t.mul(x, pj)) != t.mul(t.mul(g, x), pj)) defect = true;
            }
        }
    }
    if (!defect) {
        throw data_error("the point admits no associativity defect");
    }
    auto tower = FieldTower::make(t.q, 1, t.m);
    const auto& top = tower->top();
    uint32_t slots = k - 1;
    uint32_t n = slots + uint32_t(t.q);
    std::vector<Word> gens;
    gens.reserve(size_t(k) * t.m);
    for (uint32_t i = 0; i < slots; ++i) {
        for (uint32_t d = 0; d < t.m; ++d) {
            uint64_t b = upow(t.q, d);
            Word wd(n, 0);  // the word with x_i = b, all else zero
            wd[i] = b;
            for (uint64_t lam = 0; lam < t.q; ++lam) {
                uint64_t scaled = top->mul(lam, point[i]);  // lambda p_i, scalar action
                wd[slots + lam] = top->neg(t.mul(b, scaled));
            }
            gens.push_back(std::move(wd));
        }
    }
    for (uint32_t d = 0; d < t.m; ++d) {
        uint64_t b = upow(t.q, d);
        Word wd(n, 0);  // the word with y = b
        for (uint64_t lam = 0; lam < t.q; ++lam) wd[slots + lam] = b;
        gens.push_back(std::move(wd));
    }
    return RankMetricCode::from_generators(tower, n, std::move(gens), Word(n, 0));
}

// ---------------------------------------------------------------------------
// Bundled examples
// ---------------------------------------------------------------------------

RankMetricCode bundled_examples(const std::string& name) {
    if (name == "example_3_4") {
        auto t = FieldTower::make(2, 1, 4);
        std::vector<Word> gens = {{1, 0, 6},  {2, 0, 14}, {4, 0, 9},  {8, 0, 11},
                                  {0, 1, 1},  {0, 2, 2},  {0, 4, 4},  {0, 8, 8}};
        return RankMetricCode::from_generators(t, 3, std::move(gens), {0, 0, 0});
    }
    if (name == "example_port_4") {
        auto t = FieldTower::make(2, 1, 2);
        std::vector<Word> gens = {{1, 2, 0, 0}, {2, 3, 0, 0}, {0, 0, 1, 2}, {0, 0, 2, 3}};
        return RankMetricCode::from_generators(t, 4, std::move(gens), {0, 0, 0, 0});
    }
    throw data_error("unknown bundled example: " + name);
}

} // namespace qrank
