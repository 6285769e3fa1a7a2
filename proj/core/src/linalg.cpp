#include "qrank/linalg.hpp"

#include "qrank/errors.hpp"

#include <algorithm>

namespace qrank {

FqMatrix FqMatrix::identity(GaloisField::Ptr f, size_t n) {
    FqMatrix m(std::move(f), n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

FqMatrix FqMatrix::from_rows(GaloisField::Ptr f, const std::vector<std::vector<uint64_t>>& rows,
                             size_t cols) {
    FqMatrix m(std::move(f), rows.size(), cols);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw data_error("row length mismatch");
        for (size_t c = 0; c < cols; ++c) {
            if (rows[r][c] >= m.field()->order()) throw data_error("matrix entry out of field range");
            m.at(r, c) = rows[r][c];
        }
    }
    return m;
}

std::vector<uint64_t> FqMatrix::row(size_t r) const {
    return std::vector<uint64_t>(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

std::vector<std::vector<uint64_t>> FqMatrix::row_vectors() const {
    std::vector<std::vector<uint64_t>> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; ++r) out.push_back(row(r));
    return out;
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix t(f_, cols_, rows_);
    for (size_t r = 0; r < rows_; ++r) {
        for (size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    }
    return t;
}

FqMatrix FqMatrix::mul(const FqMatrix& other) const {
    if (cols_ != other.rows_) throw data_error("matrix shape mismatch in multiply");
    FqMatrix out(f_, rows_, other.cols_);
    const auto& F = *f_;
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t k = 0; k < cols_; ++k) {
            uint64_t v = at(i, k);
            if (v == 0) continue;
            for (size_t j = 0; j < other.cols_; ++j) {
                out.at(i, j) = F.add(out.at(i, j), F.mul(v, other.at(k, j)));
            }
        }
    }
    return out;
}

std::vector<uint64_t> FqMatrix::mul_vec(const std::vector<uint64_t>& v) const {
    if (v.size() != cols_) throw data_error("vector length mismatch in multiply");
    const auto& F = *f_;
    std::vector<uint64_t> out(rows_, 0);
    for (size_t i = 0; i < rows_; ++i) {
        uint64_t acc = 0;
        for (size_t j = 0; j < cols_; ++j) {
            acc = F.add(acc, F.mul(at(i, j), v[j]));
        }
        out[i] = acc;
    }
    return out;
}

size_t FqMatrix::rref_in_place(bool drop_zero_rows, std::vector<size_t>* pivots) {
    const auto& F = *f_;
    size_t rank = 0;
    if (pivots) pivots->clear();
    for (size_t col = 0; col < cols_ && rank < rows_; ++col) {
        size_t piv = rows_;
        for (size_t r = rank; r < rows_; ++r) {
            if (at(r, col) != 0) {
                piv = r;
                break;
            }
        }
        if (piv == rows_) continue;
        if (piv != rank) {
            for (size_t j = 0; j < cols_; ++j) std::swap(at(piv, j), at(rank, j));
        }
        uint64_t scale = F.inv(at(rank, col));
        if (scale != 1) {
            for (size_t j = col; j < cols_; ++j) at(rank, j) = F.mul(at(rank, j), scale);
        }
        for (size_t r = 0; r < rows_; ++r) {
            if (r == rank) continue;
            uint64_t fct = at(r, col);
            if (fct == 0) continue;
            for (size_t j = col; j < cols_; ++j) {
                at(r, j) = F.sub(at(r, j), F.mul(fct, at(rank, j)));
            }
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    if (drop_zero_rows && rank < rows_) {
        a_.resize(rank * cols_);
        rows_ = rank;
    }
    return rank;
}

size_t FqMatrix::rank() const {
    FqMatrix tmp = *this;
    return tmp.rref_in_place();
}

FqMatrix FqMatrix::right_nullspace() const {
    FqMatrix r = *this;
    std::vector<size_t> pivots;
    size_t rank = r.rref_in_place(true, &pivots);
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < cols_; ++c) {
        if (!is_pivot[c]) free_cols.push_back(c);
    }
    FqMatrix ns(f_, free_cols.size(), cols_);
    const auto& F = *f_;
    for (size_t k = 0; k < free_cols.size(); ++k) {
        size_t fc = free_cols[k];
        ns.at(k, fc) = 1;
        for (size_t i = 0; i < rank; ++i) {
            ns.at(k, pivots[i]) = F.neg(r.at(i, fc));
        }
    }
    return ns;
}

std::optional<FqMatrix> FqMatrix::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    FqMatrix aug(f_, rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    std::vector<size_t> pivots;
    size_t rank = aug.rref_in_place(false, &pivots);
    if (rank != rows_) return std::nullopt;
    // pivots escaping into the right block mean the left block was singular
    for (size_t p : pivots) {
        if (p >= cols_) return std::nullopt;
    }
    FqMatrix inv(f_, rows_, cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    }
    return inv;
}

} // namespace qrank
