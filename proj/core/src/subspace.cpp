#include "qrank/subspace.hpp"

#include "qrank/errors.hpp"

#include <algorithm>

namespace qrank {

Subspace Subspace::from_rows(GaloisField::Ptr f, uint32_t n,
                             const std::vector<std::vector<uint64_t>>& rows) {
    FqMatrix m = FqMatrix::from_rows(f, rows, n);
    size_t rank = m.rref_in_place(true);
    Subspace s;
    s.f_ = std::move(f);
    s.n_ = n;
    s.dim_ = uint32_t(rank);
    s.rows_.reserve(rank * n);
    for (size_t r = 0; r < rank; ++r) {
        for (size_t c = 0; c < n; ++c) s.rows_.push_back(m.at(r, c));
    }
    return s;
}

Subspace Subspace::zero(GaloisField::Ptr f, uint32_t n) {
    Subspace s;
    s.f_ = std::move(f);
    s.n_ = n;
    s.dim_ = 0;
    return s;
}

Subspace Subspace::full(GaloisField::Ptr f, uint32_t n) {
    std::vector<std::vector<uint64_t>> rows;
    for (uint32_t i = 0; i < n; ++i) rows.push_back(standard_basis_vector(n, i));
    return from_rows(std::move(f), n, rows);
}

Subspace Subspace::single(GaloisField::Ptr f, const std::vector<uint64_t>& v) {
    return from_rows(std::move(f), uint32_t(v.size()), {v});
}

std::vector<std::vector<uint64_t>> Subspace::rows() const {
    std::vector<std::vector<uint64_t>> out;
    out.reserve(dim_);
    for (uint32_t r = 0; r < dim_; ++r) out.push_back(row(r));
    return out;
}

std::vector<uint64_t> Subspace::row(uint32_t i) const {
    return std::vector<uint64_t>(rows_.begin() + size_t(i) * n_,
                                 rows_.begin() + size_t(i + 1) * n_);
}

FqMatrix Subspace::basis_matrix() const {
    FqMatrix m(f_, dim_, n_);
    for (uint32_t r = 0; r < dim_; ++r) {
        for (uint32_t c = 0; c < n_; ++c) m.at(r, c) = rows_[size_t(r) * n_ + c];
    }
    return m;
}

Subspace Subspace::sum(const Subspace& other) const {
    if (n_ != other.n_) throw data_error("subspace ambient mismatch in sum");
    auto rows = this->rows();
    auto orows = other.rows();
    rows.insert(rows.end(), orows.begin(), orows.end());
    return from_rows(f_, n_, rows);
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (n_ != other.n_) throw data_error("subspace ambient mismatch in intersection");
    // A ∩ B = (A^perp + B^perp)^perp  (standard form is non-degenerate)
    return orthogonal_complement().sum(other.orthogonal_complement()).orthogonal_complement();
}

bool Subspace::contains(const Subspace& other) const {
    if (n_ != other.n_) throw data_error("subspace ambient mismatch in containment");
    if (other.dim_ > dim_) return false;
    auto rows = this->rows();
    auto orows = other.rows();
    rows.insert(rows.end(), orows.begin(), orows.end());
    FqMatrix m = FqMatrix::from_rows(f_, rows, n_);
    return m.rank() == dim_;
}

bool Subspace::contains_vector(const std::vector<uint64_t>& v) const {
    if (v.size() != n_) throw data_error("vector length mismatch in containment");
    // reduce v by the rref rows
    const auto& F = *f_;
    std::vector<uint64_t> w = v;
    for (uint32_t r = 0; r < dim_; ++r) {
        // pivot column of row r = first nonzero entry
        size_t piv = 0;
        while (piv < n_ && rows_[size_t(r) * n_ + piv] == 0) ++piv;
        if (piv == n_) continue;
        uint64_t c = w[piv];
        if (c == 0) continue;
        for (size_t j = piv; j < n_; ++j) {
            w[j] = F.sub(w[j], F.mul(c, rows_[size_t(r) * n_ + j]));
        }
    }
    return std::all_of(w.begin(), w.end(), [](uint64_t x) { return x == 0; });
}

Subspace Subspace::orthogonal_complement() const {
    if (dim_ == 0) return full(f_, n_);
    FqMatrix ns = basis_matrix().right_nullspace();
    return from_rows(f_, n_, ns.row_vectors());
}

Subspace Subspace::direct_complement() const {
    auto rows = this->rows();
    size_t base_rank = dim_;
    std::vector<std::vector<uint64_t>> chosen;
    for (uint32_t i = 0; i < n_ && base_rank + chosen.size() < n_; ++i) {
        auto trial = rows;
        trial.insert(trial.end(), chosen.begin(), chosen.end());
        trial.push_back(standard_basis_vector(n_, i));
        FqMatrix m = FqMatrix::from_rows(f_, trial, n_);
        if (m.rank() == base_rank + chosen.size() + 1) {
            chosen.push_back(standard_basis_vector(n_, i));
        }
    }
    return from_rows(f_, n_, chosen);
}

void Subspace::for_each_vector(const std::function<void(const std::vector<uint64_t>&)>& fn) const {
    const auto& F = *f_;
    uint64_t q = F.order();
    std::vector<uint64_t> coeff(dim_, 0);
    std::vector<uint64_t> v(n_, 0);
    auto add_scaled_row = [&](uint32_t i, uint64_t scale) {
        if (scale == 0) return;
        for (uint32_t j = 0; j < n_; ++j) {
            v[j] = F.add(v[j], F.mul(scale, rows_[size_t(i) * n_ + j]));
        }
    };
    while (true) {
        fn(v);
        // odometer step over coefficient encodings, with incremental update
        // of v by the field delta between consecutive encodings
        uint32_t i = 0;
        for (; i < dim_; ++i) {
            uint64_t old_c = coeff[i];
            uint64_t new_c = old_c + 1;
            if (new_c < q) {
                coeff[i] = new_c;
                add_scaled_row(i, F.sub(new_c, old_c));
                break;
            }
            coeff[i] = 0;
            add_scaled_row(i, F.neg(old_c));
        }
        if (i == dim_) break;
    }
}

size_t Subspace::hash() const {
    size_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t x) {
        h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(n_);
    mix(dim_);
    for (uint64_t x : rows_) mix(x);
    return h;
}

BigInt gaussian_binomial(uint32_t n, uint32_t k, const BigInt& q) {
    if (k > n) return 0;
    BigInt num = 1, den = 1;
    for (uint32_t i = 0; i < k; ++i) {
        num *= big_pow(q, n - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

BigInt galois_number(uint32_t n, const BigInt& q) {
    BigInt total = 0;
    for (uint32_t k = 0; k <= n; ++k) total += gaussian_binomial(n, k, q);
    return total;
}

std::vector<uint64_t> standard_basis_vector(uint32_t n, uint32_t i) {
    std::vector<uint64_t> v(n, 0);
    v[i] = 1;
    return v;
}

namespace {

// Generate all canonical rref matrices with the given ordered pivot columns.
void generate_for_pivots(const GaloisField::Ptr& f, uint32_t n,
                         const std::vector<uint32_t>& pivots,
                         std::vector<Subspace>& out) {
    uint32_t k = uint32_t(pivots.size());
    uint64_t q = f->order();
    std::vector<bool> is_pivot(n, false);
    for (uint32_t c : pivots) is_pivot[c] = true;
    // free cells (r, c): c > pivots[r], c not a pivot
    std::vector<std::pair<uint32_t, uint32_t>> cells;
    for (uint32_t r = 0; r < k; ++r) {
        for (uint32_t c = pivots[r] + 1; c < n; ++c) {
            if (!is_pivot[c]) cells.emplace_back(r, c);
        }
    }
    std::vector<std::vector<uint64_t>> rows(k, std::vector<uint64_t>(n, 0));
    for (uint32_t r = 0; r < k; ++r) rows[r][pivots[r]] = 1;
    std::vector<uint64_t> vals(cells.size(), 0);
    while (true) {
        for (size_t i = 0; i < cells.size(); ++i) rows[cells[i].first][cells[i].second] = vals[i];
        out.push_back(Subspace::from_rows(f, n, rows));
        size_t i = 0;
        for (; i < vals.size(); ++i) {
            if (++vals[i] < q) break;
            vals[i] = 0;
        }
        if (i == vals.size()) break;
        if (cells.empty()) break;
    }
}

} // namespace

uint64_t for_each_subspace(const GaloisField::Ptr& f, uint32_t n,
                           const std::vector<uint32_t>& dims, uint64_t budget,
                           const std::function<void(const Subspace&)>& fn) {
    std::vector<uint32_t> want = dims;
    if (want.empty()) {
        for (uint32_t k = 0; k <= n; ++k) want.push_back(k);
    }
    std::sort(want.begin(), want.end());
    want.erase(std::unique(want.begin(), want.end()), want.end());
    BigInt q = f->order();
    BigInt total = 0;
    for (uint32_t k : want) {
        if (k > n) throw data_error("requested dimension exceeds ambient dimension");
        total += gaussian_binomial(n, k, q);
    }
    if (total > BigInt(budget)) {
        throw budget_error("subspace enumeration needs " + total.str() + " subspaces, budget is " +
                           std::to_string(budget));
    }
    uint64_t count = 0;
    for (uint32_t k : want) {
        std::vector<Subspace> layer;
        if (k == 0) {
            layer.push_back(Subspace::zero(f, n));
        } else {
            // iterate pivot column combinations in lexicographic order
            std::vector<uint32_t> pivots(k);
            for (uint32_t i = 0; i < k; ++i) pivots[i] = i;
            while (true) {
                generate_for_pivots(f, n, pivots, layer);
                // next combination
                int32_t i = int32_t(k) - 1;
                while (i >= 0 && pivots[i] == n - k + i) --i;
                if (i < 0) break;
                ++pivots[i];
                for (uint32_t j = uint32_t(i) + 1; j < k; ++j) pivots[j] = pivots[j - 1] + 1;
            }
        }
        std::sort(layer.begin(), layer.end());
        for (const auto& s : layer) {
            fn(s);
            ++count;
        }
    }
    return count;
}

std::vector<Subspace> enumerate_subspaces(const GaloisField::Ptr& f, uint32_t n,
                                          const std::vector<uint32_t>& dims, uint64_t budget) {
    std::vector<Subspace> out;
    for_each_subspace(f, n, dims, budget, [&out](const Subspace& s) { out.push_back(s); });
    return out;
}

Subspace random_subspace(const GaloisField::Ptr& f, uint32_t n, uint32_t dim,
                         std::mt19937_64& rng) {
    if (dim > n) throw data_error("requested dimension exceeds ambient dimension");
    if (dim == 0) return Subspace::zero(f, n);
    uint64_t q = f->order();
    std::uniform_int_distribution<uint64_t> dist(0, q - 1);
    std::vector<std::vector<uint64_t>> rows;
    while (true) {
        std::vector<uint64_t> v(n);
        for (auto& x : v) x = dist(rng);
        rows.push_back(v);
        Subspace s = Subspace::from_rows(f, n, rows);
        if (s.dim() == dim) return s;
        if (s.dim() < rows.size()) rows = s.rows();  // drop dependent vectors
    }
}

} // namespace qrank
