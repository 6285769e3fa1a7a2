#pragma once

#include "qrank/code.hpp"
#include "qrank/subspace.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>

namespace qrank {

// Image of a subspace under the linear map v -> A v.
Subspace transform_subspace(const FqMatrix& A, const Subspace& V);

enum class AxiomMode { Global, Local };

struct AxiomReport {
    bool pass = true;
    bool scope_complete = true;
    uint64_t checked = 0;
    std::string failed_axiom;                    // "R1".."R3" or "R1'".."R3'"
    std::optional<Subspace> witness_a, witness_b, witness_c;
    std::string scope_description;
};

// A q-matroid on the subspace lattice of F_q^n, given by a rank function.
// Backed either by a fully materialized rank table or by a lazy oracle with a
// cache.  Instances are cheap to copy (shared state).
class QMatroid {
public:
    using RankFn = std::function<uint32_t(const Subspace&)>;
    using Table = std::unordered_map<Subspace, uint32_t, SubspaceHash>;

    static QMatroid from_table(GaloisField::Ptr f, uint32_t n, Table table, std::string origin);
    static QMatroid from_oracle(GaloisField::Ptr f, uint32_t n, RankFn fn, std::string origin);
    static QMatroid uniform(GaloisField::Ptr f, uint32_t n, uint32_t k);
    // The rank-3 sculpted q-matroid on F_q^8 built from five marked 4-spaces.
    static QMatroid vamos(GaloisField::Ptr f);
    static const std::vector<std::vector<uint32_t>>& vamos_marked_index_sets();

    static QMatroid induced_from_code(const RankMetricCode& c,
                                      uint64_t budget = kDefaultEnumerationBudget);

    const GaloisField::Ptr& field() const;
    uint64_t q() const { return field()->order(); }
    uint32_t n() const;
    const std::string& origin() const;

    uint32_t rank(const Subspace& V) const;
    uint32_t rank_of_ground() const;

    bool has_full_table() const;
    void materialize(uint64_t budget = kDefaultEnumerationBudget) const;
    const Table& table() const;  // requires materialized table

    QMatroid dual() const;
    // Re-indexed minor on ambient F_q^{dim Z} through the canonical basis of Z.
    QMatroid restriction(const Subspace& Z) const;
    // Quotient by Z on ambient F_q^{n - dim Z} through the canonical direct
    // complement of Z: rank'(W) = rank(lift(W) + Z) - rank(Z).
    QMatroid contraction(const Subspace& Z) const;
    // The complement used by contraction (greedy standard-basis complement).
    Subspace contraction_complement(const Subspace& Z) const;

    AxiomReport verify_axioms(AxiomMode mode, const ScopeSpec& scope) const;

    std::vector<Subspace> circuits(std::optional<uint32_t> max_dim = std::nullopt,
                                   uint64_t budget = kDefaultEnumerationBudget) const;
    std::vector<Subspace> loops() const;
    bool is_simple() const;  // rank(V) = dim V for all dim <= 2

    Subspace closure(const Subspace& V) const;
    std::vector<Subspace> flats(uint64_t budget = kDefaultEnumerationBudget) const;

    // Pointwise equality of rank functions; when iso is given, compares
    // rank(V) here against other.rank(iso V).
    bool ranks_equal(const QMatroid& other, const std::optional<FqMatrix>& iso = std::nullopt,
                     uint64_t budget = kDefaultEnumerationBudget,
                     std::optional<Subspace>* first_difference = nullptr) const;

private:
    struct State {
        GaloisField::Ptr f;
        uint32_t n = 0;
        std::string origin;
        RankFn oracle;                     // may be empty when table is complete
        mutable Table table;
        mutable bool complete = false;     // table covers the whole lattice
    };
    std::shared_ptr<State> s_;
};

} // namespace qrank
