#pragma once

#include "qrank/code.hpp"
#include "qrank/linalg.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qrank {

// ---------------------------------------------------------------------------
// Evaluation codes from linearized polynomials.
//
// Parameters (q0, u, n, k, s, h, eta) with q = q0^u describe the family
//
//   { a_0 x + a_1 x^{q^s} + ... + a_{k-1} x^{q^{s(k-1)}}
//       + eta * a_0^{q0^h} * x^{q^{sk}}  :  a_i in F_{q^n} },
//
// evaluated entrywise on the tower's coordinate basis of F_{q^n}, giving an
// additive code in F_{q^n}^n of size q^{nk}.  q0 may itself be a prime power.
// Constraints: gcd(n, s) = 1 and k < n.  The twist coefficient eta (an
// encoding in F_{q^n}) is admissible iff the relative norm of eta from
// F_{q^{sn}} down to F_{q0^s} differs from (-1)^{nku}; eta = 0 degenerates to
// the untwisted (generalized Gabidulin) member of the family.
// ---------------------------------------------------------------------------

// The tower F_q <= F_{q^n} used for evaluation and coordinates.
FieldTower::Ptr agtg_tower(uint64_t q0, uint32_t u, uint32_t n);

// Relative norm of eta (encoded in F_{q^n}) from F_{q^{sn}} to F_{q0^s},
// returned as an encoding in the norm field.  Computed with the quotient
// exponent; the conjugate-product form is the cross-check route in tests.
uint64_t agtg_norm_value(uint64_t q0, uint32_t u, uint32_t n, uint32_t s, uint64_t eta);

// The forbidden norm value (-1)^{nku} as an encoding in the norm field.
uint64_t agtg_forbidden_norm(uint64_t q0, uint32_t u, uint32_t n, uint32_t k);

bool agtg_eta_valid(uint64_t q0, uint32_t u, uint32_t n, uint32_t k, uint32_t s,
                    uint64_t eta);

// Smallest nonzero admissible eta encoding, scanning 1, 2, ... upward.
std::optional<uint64_t> agtg_first_valid_eta(uint64_t q0, uint32_t u, uint32_t n,
                                             uint32_t k, uint32_t s);
// The first `count` nonzero admissible eta encodings in ascending order.
std::vector<uint64_t> agtg_valid_etas(uint64_t q0, uint32_t u, uint32_t n,
                                      uint32_t k, uint32_t s, size_t count);

RankMetricCode agtg_make(uint64_t q0, uint32_t u, uint32_t n, uint32_t k,
                         uint32_t s, uint32_t h, uint64_t eta);

// Untwisted evaluation code built by an independent code path (no twist term,
// no norm screen); agtg_make(..., eta = 0) must agree with it.
RankMetricCode gabidulin_make(uint64_t q0, uint32_t u, uint32_t n, uint32_t k,
                              uint32_t s);

// ---------------------------------------------------------------------------
// Finite semifields of order q^m (q prime): a possibly non-associative
// division algebra structure on the encodings 0..q^m-1, sharing addition with
// F_{q^m} (digitwise base q) and replacing multiplication by the table below.
// ---------------------------------------------------------------------------

struct SemifieldTable {
    uint64_t q = 0;  // prime
    uint32_t m = 0;
    // Row-major products: prod[x * order() + y] = x o y.
    std::vector<uint64_t> prod;
    uint64_t identity = 0;
    // First triple (x, y, z) with (x o y) o z != x o (y o z), if any.
    std::optional<std::array<uint64_t, 3>> proper_witness;

    uint64_t order() const;
    uint64_t mul(uint64_t x, uint64_t y) const { return prod[x * order() + y]; }
    bool proper() const { return proper_witness.has_value(); }
};

struct SemifieldCertificate {
    bool valid = false;
    std::string failure;  // empty when valid
    uint64_t identity = 0;
    bool proper = false;
    std::optional<std::array<uint64_t, 3>> witness;
};

// Validates a table directly (no spread-set assumptions): shape, digitwise
// additivity of both slots, a two-sided identity matching the declared one,
// absence of zero divisors by row/column permutation scans, and an exhaustive
// associativity scan that records the first non-associative triple.
SemifieldCertificate semifield_validate(const SemifieldTable& t);

// Deterministic backtracking search over additively closed sets of m x m
// matrices over F_q that contain the identity and whose nonzero members are
// all invertible.  Members are labeled by their first column, making the
// encoding 1 a two-sided identity.  Returns the first strictly
// non-associative table in search order, or nullopt when none exists.
std::optional<SemifieldTable> semifield_search(uint64_t q, uint32_t m);

// The multiplication table of the field F_{q^m} itself (canonical modulus),
// encoded as a SemifieldTable; always associative.
SemifieldTable semifield_from_field(uint64_t q, uint32_t m);

// Left-multiplication matrices L_x (column j = vec(x o e_j)) over F_q, one
// per element encoding; the interchange representation used by the JSON form.
std::vector<FqMatrix> semifield_left_mult_matrices(const SemifieldTable& t);
SemifieldTable semifield_from_left_mult(uint64_t q, uint32_t m,
                                        const std::vector<FqMatrix>& left_mult,
                                        uint64_t identity);

// ---------------------------------------------------------------------------
// Codes built from a proper semifield S of order q^m.
//
// Two-slot family: coordinates indexed by {inf} followed by the elements of S
// in encoding order; the word of (x, y) in S^2 is (x, (y - x o a)_a).  The
// code is F_q-linear of size q^{2m} in F_{q^m}^{q^m + 1}.
//
// k-slot family: coordinates are k-1 plain slots followed by one slot per
// scalar lambda in F_q in encoding order; the word of (x_1..x_{k-1}, y) is
// (x_1, ..., x_{k-1}, (y - sum_i x_i o (lambda p_i))_lambda) for a point
// p in S^{k-1} at which o fails to associate through some p_j.
// ---------------------------------------------------------------------------

RankMetricCode semifield_code_2dim(const SemifieldTable& t);

// First point p in S^{k-1} (lexicographic by encodings, first slot most
// significant) with gamma o (x o p_j) != (gamma o x) o p_j for some gamma, x,
// j; nullopt when no point qualifies.
std::optional<std::vector<uint64_t>> find_kdim_witness_point(const SemifieldTable& t,
                                                             uint32_t k);

RankMetricCode semifield_code_kdim(const SemifieldTable& t, uint32_t k,
                                   const std::vector<uint64_t>& point);

// ---------------------------------------------------------------------------
// Bundled worked examples: "example_3_4" (an additive, non-F_16-linear code
// of size 256 in F_16^3) and "example_port_4" (an F_4-linear code of
// dimension 2 in F_4^4).
// ---------------------------------------------------------------------------

RankMetricCode bundled_examples(const std::string& name);

} // namespace qrank
