#pragma once

#include "qrank/subspace.hpp"
#include "qrank/tower.hpp"

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace qrank {

// A codeword: n top-field encodings.
using Word = std::vector<uint64_t>;

// Scope of a verification sweep over subspaces.
struct ScopeSpec {
    enum class Kind { All, MaxDim, Sample };
    Kind kind = Kind::All;
    uint32_t max_dim = 0;        // for MaxDim
    uint64_t sample_count = 0;   // for Sample
    uint64_t budget = kDefaultEnumerationBudget;
    uint64_t seed = 0;

    static ScopeSpec all(uint64_t budget = kDefaultEnumerationBudget) {
        ScopeSpec s;
        s.kind = Kind::All;
        s.budget = budget;
        return s;
    }
    static ScopeSpec up_to_dim(uint32_t d, uint64_t budget = kDefaultEnumerationBudget) {
        ScopeSpec s;
        s.kind = Kind::MaxDim;
        s.max_dim = d;
        s.budget = budget;
        return s;
    }
    static ScopeSpec sample(uint64_t count, uint64_t seed) {
        ScopeSpec s;
        s.kind = Kind::Sample;
        s.sample_count = count;
        s.seed = seed;
        return s;
    }
    std::string describe() const;
};

struct AlmostAffineVerdict {
    bool almost_affine = true;
    bool scope_complete = true;  // false when the budget truncated the sweep
    uint64_t checked = 0;
    std::optional<Subspace> witness;  // first subspace with a non-power image
    BigInt witness_size = 0;
    std::string scope_description;
};

struct LinearityReport {
    bool contains_zero = false;
    bool p_linear = false;   // closed under addition (with zero)
    bool q_linear = false;   // additionally closed under base-field scaling
    bool qm_linear = false;  // additionally closed under top-field scaling
};

// A (possibly nonlinear) block code in F_{q^m}^n carrying the rank metric
// induced by a tower F_q <= F_{q^m}.  Storage is either the explicit word
// list or an additive presentation: prime-field generators plus an offset
// (the code is then offset + F_p-span of the generators).
//
// Canonical forms: explicit words are sorted lexicographically by their
// encoding tuples; additive generators are the reduced echelon basis of the
// generator digit matrix (digits in significance-major order), and the offset
// is reduced to the lexicographically minimal codeword.
class RankMetricCode {
public:
    static RankMetricCode from_words(FieldTower::Ptr t, uint32_t n, std::vector<Word> words);
    static RankMetricCode from_generators(FieldTower::Ptr t, uint32_t n,
                                          std::vector<Word> generators, Word offset);

    const FieldTower::Ptr& tower() const { return tower_; }
    uint32_t n() const { return n_; }
    uint64_t q() const { return tower_->q(); }
    uint32_t m() const { return tower_->m(); }

    bool additive_storage() const { return std::holds_alternative<AdditiveRep>(storage_); }
    BigInt size() const;
    // log_{q^m} |C| when it is a non-negative integer
    std::optional<uint32_t> dim_log() const;
    bool dim_integral() const { return dim_log().has_value(); }

    const std::vector<Word>& words() const;       // explicit storage only
    const std::vector<Word>& generators() const;  // additive storage only
    const Word& offset() const;                   // additive storage only

    // The codeword with minimal integer encoding (default anchor).
    Word min_word() const;
    bool contains_word(const Word& w) const;
    void for_each_word(const std::function<void(const Word&)>& fn) const;

    Word word_add(const Word& a, const Word& b) const;
    Word word_sub(const Word& a, const Word& b) const;

    // n x m matrix of pi-basis coordinates over F_q.
    FqMatrix coordinate_matrix(const Word& w) const;
    Subspace support(const Word& w) const;  // column space, subspace of F_q^n
    uint32_t rank_weight(const Word& w) const;
    Subspace support_rel(const Word& w, const Word& anchor) const;
    uint32_t distance(const Word& a, const Word& b) const;

    // Projected word G_V c for the canonical basis G_V of V (dim V entries).
    Word project_word(const Subspace& V, const Word& w) const;
    // |pi_V(C)| by hashing (explicit) or prime-field kernel rank (additive).
    BigInt projection_image_size(const Subspace& V) const;
    // log_{q^m} |pi_V(C)| when integral.
    std::optional<uint32_t> projection_log(const Subspace& V) const;

    AlmostAffineVerdict is_almost_affine(const ScopeSpec& scope) const;

    RankMetricCode puncture(const Subspace& V) const;
    // C(Z, x) = words agreeing with x on the projection to Z; keeps ambient n.
    RankMetricCode subcode(const Subspace& Z, const Word& x) const;
    // Projection of C(Z, x) onto a complement of Z (default: the greedy
    // standard-basis direct complement).
    RankMetricCode shorten(const Subspace& Z, const Word& x,
                           const std::optional<Subspace>& complement = std::nullopt) const;
    // c -> A c + t for invertible A over F_q and translation t.
    RankMetricCode apply_equivalence(const FqMatrix& A, const Word& t) const;

    LinearityReport classify_linearity() const;
    uint32_t min_distance() const;

    // Orthogonal dual under the standard F_{q^m} bilinear form; requires a
    // top-field-linear code.
    RankMetricCode linear_dual() const;
    // An F_{q^m}-basis of a top-field-linear code, as matrix rows.
    FqMatrix linear_generator_matrix() const;

    bool same_code(const RankMetricCode& other) const;

private:
    struct AdditiveRep {
        std::vector<Word> generators;
        Word offset;
    };

    RankMetricCode() = default;
    const AdditiveRep& arep() const { return std::get<AdditiveRep>(storage_); }

    std::vector<uint64_t> word_digits(const Word& w) const;   // significance-major
    Word word_from_digits(const std::vector<uint64_t>& d) const;

    FieldTower::Ptr tower_;
    uint32_t n_ = 0;
    std::variant<std::vector<Word>, AdditiveRep> storage_;
};

// Three independent characterizations of "v projects to zero on V":
//   (a) G_V v == 0 in the top field,
//   (b) supp(v) <= V^perp,
//   (c) v lies in the top-field span of an embedded basis of V^perp.
// Used as cross-checking routes in the test suite.
bool projects_to_zero_by_matvec(const RankMetricCode& c, const Subspace& V, const Word& v);
bool projects_to_zero_by_support(const RankMetricCode& c, const Subspace& V, const Word& v);
bool projects_to_zero_by_span(const RankMetricCode& c, const Subspace& V, const Word& v);

} // namespace qrank
