#pragma once

#include "qrank/bigint.hpp"
#include "qrank/errors.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace qrank {

// Finite field F_{p^e} with explicit polynomial-basis representation.
//
// Elements are encoded as integers in [0, p^e): the element sum a_i x^i
// (a_i in F_p, x the residue class of the modulus variable) is encoded as
// sum a_i p^i.  The modulus is stored constant-first: modulus()[i] is the
// coefficient of x^i, modulus()[e] == 1 (monic).
//
// When no modulus is supplied, the canonical modulus is the monic irreducible
// of degree e whose encoding sum a_i p^i (over the non-leading coefficients)
// is minimal.  Multiplication uses discrete-log tables for orders up to 2^20
// and schoolbook polynomial arithmetic above that.
class GaloisField {
public:
    using Ptr = std::shared_ptr<const GaloisField>;

    static constexpr uint64_t kTableLimit = uint64_t(1) << 20;

    static Ptr make(uint64_t p, uint32_t e);
    static Ptr make(uint64_t p, uint32_t e, const std::vector<uint64_t>& modulus);

    uint64_t p() const { return p_; }
    uint32_t degree() const { return e_; }
    uint64_t order() const { return q_; }
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    uint64_t generator() const { return generator_; }
    bool same_field(const GaloisField& other) const {
        return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
    }

    uint64_t add(uint64_t a, uint64_t b) const {
        if (p_ == 2) return a ^ b;
        if (!add_table_.empty()) return add_table_[a * q_ + b];
        return add_digitwise(a, b);
    }

    uint64_t neg(uint64_t a) const {
        if (p_ == 2) return a;
        if (!neg_table_.empty()) return neg_table_[a];
        return neg_digitwise(a);
    }

    uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

    uint64_t mul(uint64_t a, uint64_t b) const {
        if (a == 0 || b == 0) return 0;
        if (!log_.empty()) return antilog_[size_t(log_[a]) + log_[b]];
        return mul_school(a, b);
    }

    uint64_t inv(uint64_t a) const;
    uint64_t div(uint64_t a, uint64_t b) const { return mul(a, inv(b)); }

    uint64_t pow(uint64_t a, uint64_t exp) const;
    uint64_t pow(uint64_t a, const BigInt& exp) const;

    // a^(p^t); t is reduced modulo e.
    uint64_t frobenius(uint64_t a, uint32_t t = 1) const;

    // Relative norm down to the subfield of order p^d (requires d | e),
    // computed as a^((q-1)/(p^d-1)).
    uint64_t norm_to_subfield(uint64_t a, uint32_t d) const;
    // The same norm as an explicit product of conjugates a^((p^d)^i).
    uint64_t norm_by_conjugates(uint64_t a, uint32_t d) const;
    // Membership in the subfield of order p^d (fixed points of x -> x^(p^d)).
    bool in_subfield(uint64_t a, uint32_t d) const;

    std::vector<uint64_t> digits(uint64_t a) const;
    uint64_t from_digits(const std::vector<uint64_t>& d) const;

    // Irreducibility over F_p of a monic polynomial given constant-first.
    bool is_irreducible(const std::vector<uint64_t>& monic_poly) const;

private:
    GaloisField() = default;
    static Ptr build(uint64_t p, uint32_t e, std::vector<uint64_t> modulus, bool default_modulus);

    uint64_t add_digitwise(uint64_t a, uint64_t b) const;
    uint64_t neg_digitwise(uint64_t a) const;
    uint64_t mul_school(uint64_t a, uint64_t b) const;
    uint64_t pow_school(uint64_t a, uint64_t exp) const;

    uint64_t p_ = 0;
    uint32_t e_ = 0;
    uint64_t q_ = 0;
    std::vector<uint64_t> modulus_;
    uint64_t generator_ = 0;
    std::vector<uint64_t> q1_prime_factors_;

    // Discrete-log tables (orders <= kTableLimit): antilog_[i] = g^i for
    // i in [0, 2(q-1)), log_[g^i] = i.
    std::vector<uint32_t> log_;
    std::vector<uint32_t> antilog_;
    // Dense addition helpers for small odd-characteristic fields.
    std::vector<uint16_t> add_table_;
    std::vector<uint32_t> neg_table_;
};

bool is_prime_u64(uint64_t n);

// Smallest monic irreducible of degree e over F_p under the minimal-encoding
// order (candidates scanned by ascending sum a_i p^i of the low coefficients).
std::vector<uint64_t> minimal_irreducible(uint64_t p, uint32_t e);

} // namespace qrank
