#pragma once

#include "qrank/gf.hpp"

#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

namespace qrank {

// A subfield pair F_q <= F_{q^m} with q = p^u, presented by two explicit
// fields plus an embedding and an F_q-coordinate basis ("pi basis") of the
// top field.
//
// The embedding sends the residue class y of the base modulus to the root of
// that modulus in the top field with minimal integer encoding; a base element
// sum a_t y^t maps to sum a_t r^t.  The default pi basis is (1, x, x^2, ...,
// x^(m-1)) for the top residue class x when those powers are F_q-independent,
// otherwise the lexicographically first independent tuple by ascending
// encodings.  Coordinates of a top element w.r.t. the pi basis are base-field
// encodings.
class FieldTower {
public:
    using Ptr = std::shared_ptr<const FieldTower>;

    static Ptr make(uint64_t p, uint32_t u, uint32_t m);
    static Ptr make(uint64_t p, uint32_t u, uint32_t m,
                    std::optional<std::vector<uint64_t>> base_modulus,
                    std::optional<std::vector<uint64_t>> top_modulus,
                    std::optional<std::vector<uint64_t>> pi_basis);
    // Wrap two already-constructed fields (degrees u and u*m over p).
    static Ptr make(GaloisField::Ptr base, GaloisField::Ptr top,
                    std::optional<std::vector<uint64_t>> pi_basis);

    const GaloisField::Ptr& base() const { return base_; }
    const GaloisField::Ptr& top() const { return top_; }
    uint64_t q() const { return base_->order(); }
    uint64_t Q() const { return top_->order(); }
    uint32_t u() const { return base_->degree(); }
    uint32_t m() const { return m_; }

    uint64_t embed_root() const { return embed_root_; }
    uint64_t embed(uint64_t a) const { return embed_table_[a]; }
    bool in_base_image(uint64_t x) const { return base_image_.count(x) > 0; }
    const std::vector<uint64_t>& pi_basis() const { return pi_basis_; }
    bool pi_is_default_powers() const { return pi_default_powers_; }

    // Top element -> m base-field coordinates w.r.t. the pi basis.
    void decompose(uint64_t x, uint64_t* out) const;
    std::vector<uint64_t> decompose_vec(uint64_t x) const;
    uint64_t compose(const uint64_t* coords) const;
    uint64_t compose(const std::vector<uint64_t>& coords) const;

    bool same_tower(const FieldTower& o) const {
        return base_->same_field(*o.base_) && top_->same_field(*o.top_) &&
               pi_basis_ == o.pi_basis_;
    }

private:
    FieldTower() = default;
    void init_embed();
    void init_pi(std::optional<std::vector<uint64_t>> pi_basis);

    GaloisField::Ptr base_;
    GaloisField::Ptr top_;
    uint32_t m_ = 0;
    uint64_t embed_root_ = 0;
    std::vector<uint64_t> embed_table_;
    std::unordered_set<uint64_t> base_image_;
    std::vector<uint64_t> pi_basis_;
    bool pi_default_powers_ = true;
    // decompose: digit vector (length u*m over F_p) times inverse coordinate
    // matrix, entries row-major over F_p.
    std::vector<uint64_t> minv_;
};

} // namespace qrank
