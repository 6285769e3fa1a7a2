#include "qrank/tower.hpp"

#include <algorithm>

namespace qrank {

namespace {

// Gaussian elimination over F_p on a dense row-major matrix; returns rank.
// If inverse != nullptr and the matrix is square invertible, *inverse is the
// inverse (row-major).
size_t fp_rank(std::vector<uint64_t> a, size_t rows, size_t cols, uint64_t p,
               std::vector<uint64_t>* inverse = nullptr) {
    std::vector<uint64_t> inv;
    if (inverse) {
        inv.assign(rows * cols, 0);
        for (size_t i = 0; i < std::min(rows, cols); ++i) inv[i * cols + i] = 1;
    }
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
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t piv = rows;
        for (size_t r = rank; r < rows; ++r) {
            if (a[r * cols + col] != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows) continue;
        for (size_t j = 0; j < cols; ++j) {
            std::swap(a[piv * cols + j], a[rank * cols + j]);
            if (inverse) std::swap(inv[piv * cols + j], inv[rank * cols + j]);
        }
        uint64_t scale = inv_mod(a[rank * cols + col]);
        if (scale != 1) {
            for (size_t j = 0; j < cols; ++j) {
                a[rank * cols + j] = a[rank * cols + j] * scale % p;
                if (inverse) inv[rank * cols + j] = inv[rank * cols + j] * scale % p;
            }
        }
        for (size_t r = 0; r < rows; ++r) {
            if (r == rank) continue;
            uint64_t f = a[r * cols + col] % p;
            if (f == 0) continue;
            uint64_t fneg = p - f;
            for (size_t j = 0; j < cols; ++j) {
                a[r * cols + j] = (a[r * cols + j] + fneg * a[rank * cols + j]) % p;
                if (inverse) inv[r * cols + j] = (inv[r * cols + j] + fneg * inv[rank * cols + j]) % p;
            }
        }
        ++rank;
    }
    if (inverse) *inverse = std::move(inv);
    return rank;
}

} // namespace

FieldTower::Ptr FieldTower::make(uint64_t p, uint32_t u, uint32_t m) {
    return make(p, u, m, std::nullopt, std::nullopt, std::nullopt);
}

FieldTower::Ptr FieldTower::make(uint64_t p, uint32_t u, uint32_t m,
                                 std::optional<std::vector<uint64_t>> base_modulus,
                                 std::optional<std::vector<uint64_t>> top_modulus,
                                 std::optional<std::vector<uint64_t>> pi_basis) {
    if (u < 1 || m < 1) throw data_error("tower degrees must be >= 1");
    GaloisField::Ptr base = base_modulus ? GaloisField::make(p, u, *base_modulus)
                                         : GaloisField::make(p, u);
    GaloisField::Ptr top = top_modulus ? GaloisField::make(p, u * m, *top_modulus)
                                       : GaloisField::make(p, u * m);
    return make(std::move(base), std::move(top), std::move(pi_basis));
}

FieldTower::Ptr FieldTower::make(GaloisField::Ptr base, GaloisField::Ptr top,
                                 std::optional<std::vector<uint64_t>> pi_basis) {
    if (!base || !top) throw data_error("tower requires both fields");
    if (base->p() != top->p()) throw data_error("tower fields must share characteristic");
    if (top->degree() % base->degree() != 0) {
        throw data_error("base degree must divide top degree");
    }
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->base_ = std::move(base);
    t->top_ = std::move(top);
    t->m_ = t->top_->degree() / t->base_->degree();
    t->init_embed();
    t->init_pi(std::move(pi_basis));
    return t;
}

void FieldTower::init_embed() {
    const auto& B = *base_;
    const auto& T = *top_;
    uint64_t q = B.order();
    uint64_t Q = T.order();

    // Roots of the base modulus among the order-q subfield elements of the top
    // field (0 together with powers g^(i*(Q-1)/(q-1))).
    uint64_t step = (Q - 1) / (q - 1);
    uint64_t g = T.generator();
    uint64_t best = 0;
    bool found = false;
    auto eval_base_modulus = [&](uint64_t s) {
        // Horner; coefficients are prime-field constants, valid in both fields.
        uint64_t acc = 0;
        const auto& f = B.modulus();
        for (size_t i = f.size(); i-- > 0;) {
            acc = T.add(T.mul(acc, s), f[i]);
        }
        return acc;
    };
    // subfield elements: 0 together with s_i = g^(i*step)
    std::vector<uint64_t> subfield;
    subfield.reserve(q);
    subfield.push_back(0);
    uint64_t gs = T.pow(g, step);
    uint64_t cur = 1;
    for (uint64_t i = 0; i + 1 < q; ++i) {
        subfield.push_back(cur);
        cur = T.mul(cur, gs);
    }
    for (uint64_t s : subfield) {
        if (eval_base_modulus(s) == 0) {
            if (!found || s < best) best = s;
            found = true;
        }
    }
    if (!found) throw data_error("base modulus has no root in the top field (internal)");
    embed_root_ = best;

    embed_table_.assign(q, 0);
    for (uint64_t a = 0; a < q; ++a) {
        uint64_t acc = 0;
        uint64_t aa = a;
        // Horner over base-p digits of a, from most significant down
        std::vector<uint64_t> d(B.degree());
        for (uint32_t i = 0; i < B.degree(); ++i) {
            d[i] = aa % B.p();
            aa /= B.p();
        }
        for (size_t i = d.size(); i-- > 0;) {
            acc = T.add(T.mul(acc, embed_root_), d[i]);
        }
        embed_table_[a] = acc;
    }
    if (embed_table_[1] != 1) throw data_error("embedding does not send 1 to 1 (internal)");
    base_image_.insert(embed_table_.begin(), embed_table_.end());
    if (base_image_.size() != q) throw data_error("embedding is not injective (internal)");
}

void FieldTower::init_pi(std::optional<std::vector<uint64_t>> pi_basis) {
    const auto& B = *base_;
    const auto& T = *top_;
    uint64_t p = B.p();
    uint32_t u = B.degree();
    uint32_t um = T.degree();

    // alpha^t for t < u: embedded powers of the base residue class (encoding p)
    std::vector<uint64_t> alpha_pow(u);
    if (u == 1) {
        alpha_pow[0] = 1;
    } else {
        uint64_t ay = embed_table_[p];
        uint64_t acc = 1;
        for (uint32_t t = 0; t < u; ++t) {
            alpha_pow[t] = acc;
            acc = T.mul(acc, ay);
        }
    }

    auto coord_matrix = [&](const std::vector<uint64_t>& basis) {
        // columns indexed (j, t): digits of alpha^t * basis[j]
        std::vector<uint64_t> M(size_t(um) * um, 0);
        for (uint32_t j = 0; j < m_; ++j) {
            for (uint32_t t = 0; t < u; ++t) {
                uint64_t v = T.mul(alpha_pow[t], basis[j]);
                auto dv = T.digits(v);
                size_t col = size_t(j) * u + t;
                for (uint32_t r = 0; r < um; ++r) M[size_t(r) * um + col] = dv[r];
            }
        }
        return M;
    };

    if (pi_basis) {
        if (pi_basis->size() != m_) throw data_error("pi basis must have m elements");
        for (uint64_t v : *pi_basis) {
            if (v >= T.order()) throw data_error("pi basis element out of range");
        }
        auto M = coord_matrix(*pi_basis);
        std::vector<uint64_t> inv;
        if (fp_rank(M, um, um, p, &inv) != um) throw data_error("supplied pi basis is not F_q-independent");
        pi_basis_ = std::move(*pi_basis);
        pi_default_powers_ = false;
        minv_ = std::move(inv);
        return;
    }

    // default: powers of the top residue class x (encoding p)
    std::vector<uint64_t> powers(m_);
    uint64_t x = (T.degree() == 1) ? 1 : p;
    uint64_t acc = 1;
    for (uint32_t j = 0; j < m_; ++j) {
        powers[j] = acc;
        acc = T.mul(acc, x);
    }
    {
        auto M = coord_matrix(powers);
        std::vector<uint64_t> inv;
        if (fp_rank(M, um, um, p, &inv) == um) {
            pi_basis_ = std::move(powers);
            pi_default_powers_ = true;
            minv_ = std::move(inv);
            return;
        }
    }

    // fallback: lexicographically first independent tuple by ascending encodings
    std::vector<uint64_t> chosen;
    std::vector<uint64_t> flat;  // accumulated digit rows (row-major, um wide)
    size_t rank = 0;
    for (uint64_t cand = 1; cand < T.order() && chosen.size() < m_; ++cand) {
        std::vector<uint64_t> trial = flat;
        for (uint32_t t = 0; t < u; ++t) {
            uint64_t v = T.mul(alpha_pow[t], cand);
            auto dv = T.digits(v);
            trial.insert(trial.end(), dv.begin(), dv.end());
        }
        size_t r = fp_rank(trial, trial.size() / um, um, p);
        if (r == rank + u) {
            chosen.push_back(cand);
            flat = std::move(trial);
            rank = r;
        }
    }
    if (chosen.size() != m_) throw data_error("no F_q-basis of the top field found (internal)");
    auto M = coord_matrix(chosen);
    std::vector<uint64_t> inv;
    if (fp_rank(M, um, um, p, &inv) != um) throw data_error("fallback pi basis not independent (internal)");
    pi_basis_ = std::move(chosen);
    pi_default_powers_ = false;
    minv_ = std::move(inv);
}

void FieldTower::decompose(uint64_t xval, uint64_t* out) const {
    const auto& T = *top_;
    const auto& B = *base_;
    uint32_t um = T.degree();
    uint32_t u = B.degree();
    uint64_t p = B.p();
    // digit vector of x
    uint64_t a = xval;
    std::vector<uint64_t> d(um);
    for (uint32_t i = 0; i < um; ++i) {
        d[i] = a % p;
        a /= p;
    }
    // c = Minv * d over F_p, then group u digits per coordinate
    for (uint32_t j = 0; j < m_; ++j) {
        uint64_t enc = 0;
        uint64_t mult = 1;
        for (uint32_t t = 0; t < u; ++t) {
            size_t row = size_t(j) * u + t;
            uint64_t s = 0;
            for (uint32_t i = 0; i < um; ++i) {
                s += minv_[row * um + i] * d[i];
            }
            enc += (s % p) * mult;
            mult *= p;
        }
        out[j] = enc;
    }
}

std::vector<uint64_t> FieldTower::decompose_vec(uint64_t x) const {
    std::vector<uint64_t> out(m_);
    decompose(x, out.data());
    return out;
}

uint64_t FieldTower::compose(const uint64_t* coords) const {
    const auto& T = *top_;
    uint64_t acc = 0;
    for (uint32_t j = 0; j < m_; ++j) {
        acc = T.add(acc, T.mul(embed_table_[coords[j]], pi_basis_[j]));
    }
    return acc;
}

uint64_t FieldTower::compose(const std::vector<uint64_t>& coords) const {
    if (coords.size() != m_) throw data_error("coordinate vector has wrong length");
    return compose(coords.data());
}

} // namespace qrank
