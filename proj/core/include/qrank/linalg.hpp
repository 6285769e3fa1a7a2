#pragma once

#include "qrank/gf.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qrank {

// Dense matrix over an explicit finite field; entries are field encodings.
class FqMatrix {
public:
    FqMatrix() = default;
    FqMatrix(GaloisField::Ptr f, size_t rows, size_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    static FqMatrix identity(GaloisField::Ptr f, size_t n);
    static FqMatrix from_rows(GaloisField::Ptr f, const std::vector<std::vector<uint64_t>>& rows,
                              size_t cols);

    const GaloisField::Ptr& field() const { return f_; }
    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    uint64_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint64_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    std::vector<uint64_t> row(size_t r) const;
    std::vector<std::vector<uint64_t>> row_vectors() const;

    FqMatrix transpose() const;
    FqMatrix mul(const FqMatrix& other) const;
    std::vector<uint64_t> mul_vec(const std::vector<uint64_t>& v) const;

    // Reduced row echelon form in place; returns rank.  Zero rows are removed
    // when drop_zero_rows is true.
    size_t rref_in_place(bool drop_zero_rows = false, std::vector<size_t>* pivots = nullptr);
    size_t rank() const;

    // Basis of {x : A x = 0} as matrix rows (each of length cols()).
    FqMatrix right_nullspace() const;

    std::optional<FqMatrix> inverse() const;

    bool operator==(const FqMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    GaloisField::Ptr f_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint64_t> a_;
};

} // namespace qrank
