#pragma once

#include "qrank/bigint.hpp"
#include "qrank/linalg.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace qrank {

// An F_q-subspace of F_q^n in canonical form: rows of the reduced row echelon
// basis, stored flattened.  Canonical form makes equality, hashing and a
// total order well defined.
class Subspace {
public:
    Subspace() = default;
    // rows need not be independent or reduced; they are canonicalized.
    static Subspace from_rows(GaloisField::Ptr f, uint32_t n,
                              const std::vector<std::vector<uint64_t>>& rows);
    static Subspace zero(GaloisField::Ptr f, uint32_t n);
    static Subspace full(GaloisField::Ptr f, uint32_t n);
    static Subspace single(GaloisField::Ptr f, const std::vector<uint64_t>& v);

    const GaloisField::Ptr& field() const { return f_; }
    uint32_t n() const { return n_; }
    uint32_t dim() const { return dim_; }
    bool is_zero() const { return dim_ == 0; }

    std::vector<std::vector<uint64_t>> rows() const;
    const std::vector<uint64_t>& flat_rows() const { return rows_; }
    std::vector<uint64_t> row(uint32_t i) const;
    FqMatrix basis_matrix() const;  // dim x n

    Subspace sum(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    bool contains(const Subspace& other) const;
    bool contains_vector(const std::vector<uint64_t>& v) const;
    Subspace orthogonal_complement() const;  // w.r.t. the standard dot product
    // Complement spanned by greedily chosen standard basis vectors (smallest
    // indices first).
    Subspace direct_complement() const;

    // Enumerate all vectors of the subspace (q^dim of them), in the odometer
    // order of coefficient tuples over the canonical basis.
    void for_each_vector(const std::function<void(const std::vector<uint64_t>&)>& fn) const;

    bool operator==(const Subspace& o) const {
        return n_ == o.n_ && dim_ == o.dim_ && rows_ == o.rows_;
    }
    bool operator!=(const Subspace& o) const { return !(*this == o); }
    bool operator<(const Subspace& o) const {
        if (dim_ != o.dim_) return dim_ < o.dim_;
        return rows_ < o.rows_;
    }

    size_t hash() const;

private:
    GaloisField::Ptr f_;
    uint32_t n_ = 0;
    uint32_t dim_ = 0;
    std::vector<uint64_t> rows_;  // dim * n entries, RREF
};

struct SubspaceHash {
    size_t operator()(const Subspace& s) const { return s.hash(); }
};

BigInt gaussian_binomial(uint32_t n, uint32_t k, const BigInt& q);
BigInt galois_number(uint32_t n, const BigInt& q);  // total number of subspaces

inline constexpr uint64_t kDefaultEnumerationBudget = uint64_t(1) << 22;

// All subspaces of F_q^n with dimension in dims (all dimensions when dims is
// empty), in dimension-major order and lexicographic order of the flattened
// canonical basis rows within each dimension.  Throws budget_error when the
// total count exceeds the budget.
std::vector<Subspace> enumerate_subspaces(const GaloisField::Ptr& f, uint32_t n,
                                          const std::vector<uint32_t>& dims = {},
                                          uint64_t budget = kDefaultEnumerationBudget);

// Streaming variant (same order); returns number visited.
uint64_t for_each_subspace(const GaloisField::Ptr& f, uint32_t n,
                           const std::vector<uint32_t>& dims, uint64_t budget,
                           const std::function<void(const Subspace&)>& fn);

Subspace random_subspace(const GaloisField::Ptr& f, uint32_t n, uint32_t dim,
                         std::mt19937_64& rng);

std::vector<uint64_t> standard_basis_vector(uint32_t n, uint32_t i);

} // namespace qrank
