#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrank/constructions.hpp"
#include "qrank/errors.hpp"
#include "qrank/invariants.hpp"
#include "qrank/qmatroid.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace qrank;

namespace {

RankMetricCode bench3() {
    std::vector<Word> gens = {
        {1, 0, 6}, {2, 0, 14}, {4, 0, 9}, {8, 0, 11},
        {0, 1, 1}, {0, 2, 2},  {0, 4, 4}, {0, 8, 8},
    };
    return RankMetricCode::from_generators(FieldTower::make(2, 1, 4), 3, gens,
                                           Word{0, 0, 0});
}

RankMetricCode bench4() {
    std::vector<Word> gens = {
        {1, 2, 0, 0}, {2, 3, 0, 0}, {0, 0, 1, 2}, {0, 0, 2, 3},
    };
    return RankMetricCode::from_generators(FieldTower::make(2, 1, 2), 4, gens,
                                           Word{0, 0, 0, 0});
}

// First proper table of order 16 in the deterministic search order, frozen
// after cross-validation by an independent re-search (x-major rows).
const std::vector<std::vector<uint64_t>> kFrozenOrder16 = {
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15},
    {0, 2, 3, 1, 9, 11, 10, 8, 14, 12, 13, 15, 7, 5, 4, 6},
    {0, 3, 1, 2, 13, 14, 12, 15, 6, 5, 7, 4, 11, 8, 10, 9},
    {0, 4, 8, 12, 5, 1, 13, 9, 10, 14, 2, 6, 15, 11, 7, 3},
    {0, 5, 10, 15, 1, 4, 11, 14, 2, 7, 8, 13, 3, 6, 9, 12},
    {0, 6, 11, 13, 12, 10, 7, 1, 4, 2, 15, 9, 8, 14, 3, 5},
    {0, 7, 9, 14, 8, 15, 1, 6, 12, 11, 5, 2, 4, 3, 13, 10},
    {0, 8, 12, 4, 14, 6, 2, 10, 7, 15, 11, 3, 9, 1, 5, 13},
    {0, 9, 14, 7, 10, 3, 4, 13, 15, 6, 1, 8, 5, 12, 11, 2},
    {0, 10, 15, 5, 7, 13, 8, 2, 9, 3, 6, 12, 14, 4, 1, 11},
    {0, 11, 13, 6, 3, 8, 14, 5, 1, 10, 12, 7, 2, 9, 15, 4},
    {0, 12, 4, 8, 11, 7, 15, 3, 13, 1, 9, 5, 6, 10, 2, 14},
    {0, 13, 6, 11, 15, 2, 9, 4, 5, 8, 3, 14, 10, 7, 12, 1},
    {0, 14, 7, 9, 2, 12, 5, 11, 3, 13, 4, 10, 1, 15, 6, 8},
    {0, 15, 5, 10, 6, 9, 3, 12, 11, 4, 14, 1, 13, 2, 8, 7},
};

SemifieldTable order16() {
    auto t = semifield_search(2, 4);
    REQUIRE(t.has_value());
    return *t;
}

} // namespace

TEST_CASE("bundled examples match their frozen definitions") {
    auto e34 = bundled_examples("example_3_4");
    CHECK(e34.same_code(bench3()));
    CHECK(e34.n() == 3);
    CHECK(e34.size() == BigInt(256));
    CHECK(e34.dim_log() == 2);
    auto lin34 = e34.classify_linearity();
    CHECK(lin34.p_linear);
    CHECK_FALSE(lin34.qm_linear);
    CHECK(e34.is_almost_affine(ScopeSpec::all()).almost_affine);

    auto ep4 = bundled_examples("example_port_4");
    CHECK(ep4.same_code(bench4()));
    CHECK(ep4.n() == 4);
    auto lin4 = ep4.classify_linearity();
    CHECK(lin4.qm_linear);
    CHECK(ep4.is_almost_affine(ScopeSpec::all()).almost_affine);

    CHECK_THROWS_AS(bundled_examples("example_9_9"), data_error);
}

TEST_CASE("evaluation family rejects malformed parameters") {
    CHECK_THROWS_AS(agtg_make(6, 1, 4, 2, 1, 0, 0), data_error);   // q0 not a prime power
    CHECK_THROWS_AS(agtg_make(1, 1, 4, 2, 1, 0, 0), data_error);
    CHECK_THROWS_AS(agtg_make(2, 1, 4, 0, 1, 0, 0), data_error);   // k = 0
    CHECK_THROWS_AS(agtg_make(2, 1, 4, 4, 1, 0, 0), data_error);   // k = n
    CHECK_THROWS_AS(agtg_make(2, 1, 4, 2, 2, 0, 0), data_error);   // gcd(n,s) != 1
    CHECK_THROWS_AS(agtg_make(2, 1, 4, 2, 1, 0, 16), data_error);  // eta out of range
    CHECK_THROWS_AS(agtg_make(2, 4, 5, 2, 3, 1, 0), data_error);   // norm field too large
    // the twist coefficient must clear the norm screen
    CHECK_THROWS_AS(agtg_make(2, 2, 5, 2, 2, 1, 1), data_error);
    CHECK_THROWS_AS(agtg_make(2, 2, 5, 2, 2, 1, 6), data_error);
}

TEST_CASE("norm screen: values, forbidden targets and admissible twists") {
    // q0=2, u=2, n=5, s=2: the norm goes from F_{2^20} down to F_4.
    CHECK(agtg_forbidden_norm(2, 2, 5, 2) == 1);  // exponent nku = 20 is even
    CHECK(agtg_valid_etas(2, 2, 5, 2, 2, 8) ==
          std::vector<uint64_t>{2, 3, 4, 5, 7, 9, 10, 11});
    CHECK(agtg_first_valid_eta(2, 2, 5, 2, 2) == 2);
    CHECK(agtg_norm_value(2, 2, 5, 2, 1) == 1);
    CHECK(agtg_norm_value(2, 2, 5, 2, 6) == 1);
    CHECK(agtg_norm_value(2, 2, 5, 2, 8) == 1);
    CHECK(agtg_norm_value(2, 2, 5, 2, 2) == 810475);
    CHECK_FALSE(agtg_eta_valid(2, 2, 5, 2, 2, 1));
    CHECK(agtg_eta_valid(2, 2, 5, 2, 2, 2));

    // Dual route: the quotient-exponent norm agrees with the conjugate
    // product, and every norm value lies in the bottom subfield.
    auto lift = FieldTower::make(2, 10, 2);
    const auto& big = lift->top();
    for (uint64_t eta : {1, 2, 3, 6, 8, 11, 500, 1023}) {
        uint64_t nv = agtg_norm_value(2, 2, 5, 2, eta);
        CHECK(nv == big->norm_by_conjugates(lift->embed(eta), 2));
        CHECK(big->in_subfield(nv, 2));
    }

    // Odd-characteristic target with odd exponent: forbidden value is -1.
    CHECK(agtg_forbidden_norm(3, 1, 3, 1) == 2);
    CHECK(agtg_eta_valid(3, 1, 3, 1, 1, 1));  // N(1) = 1 != -1
    // The norm maps F_27* onto F_3* with fibers of size 13, so exactly 13
    // nonzero etas are forbidden.
    CHECK(agtg_valid_etas(3, 1, 3, 1, 1, 26).size() == 13);

    // eta = 0 always clears the screen (norm 0 is never a sign).
    CHECK(agtg_eta_valid(2, 2, 5, 2, 2, 0));
}

TEST_CASE("untwisted route: ladder evaluation equals degenerate twist") {
    auto g = gabidulin_make(2, 1, 4, 2, 1);
    auto g0 = agtg_make(2, 1, 4, 2, 1, 0, 0);
    CHECK(g.same_code(g0));
    CHECK(g.size() == BigInt(256));
    CHECK(g.tower()->same_tower(*agtg_tower(2, 1, 4)));
    CHECK(g.min_distance() == 3);  // n - k + 1

    std::vector<BigInt> census(5, 0);
    g.for_each_word([&](const Word& w) { census[g.rank_weight(w)] += 1; });
    CHECK(census == std::vector<BigInt>{1, 0, 0, 225, 30});
    CHECK(census == mrd_closed_form_A(4, 2, BigInt(2), 4));

    auto qm = QMatroid::induced_from_code(g);
    CHECK(qm.ranks_equal(QMatroid::uniform(g.tower()->base(), 4, 2)));

    // A stride-2 untwisted instance is still MRD.
    auto g2 = gabidulin_make(2, 1, 5, 3, 2);
    CHECK(g2.same_code(agtg_make(2, 1, 5, 3, 2, 0, 0)));
    CHECK(g2.size() == BigInt(32768));
    CHECK(g2.min_distance() == 3);  // n - k + 1
}

TEST_CASE("twisted instance q0=2 u=2 n=5: honest exhaustive properties") {
    auto c = agtg_make(2, 2, 5, 2, 2, 1, 2);
    CHECK(c.size() == BigInt(1048576));  // q^{nk} = 4^10, no collapse
    CHECK(c.generators().size() == 20);
    CHECK(c.q() == 4);
    CHECK(c.m() == 5);

    auto lin = c.classify_linearity();
    CHECK(lin.p_linear);        // closed under F_2 = F_{q0}
    CHECK_FALSE(lin.q_linear);  // strictly additive: u = 2 does not divide h = 1

    // Exhaustive rank-weight census over all 2^20 words.  The minimum
    // distance is 3, not n - k + 1 = 4: the nominal distance of the family
    // does not hold at these parameters even though the norm screen passes.
    std::vector<BigInt> census(6, 0);
    c.for_each_word([&](const Word& w) { census[c.rank_weight(w)] += 1; });
    CHECK(census == std::vector<BigInt>{1, 0, 0, 5797, 319858, 722920});
    CHECK(c.min_distance() == 3);
    // No words of rank 1 or 2 (the simplicity evidence at codeword level).
    CHECK(census[1] == 0);
    CHECK(census[2] == 0);

    // The code is not almost affine: a plane with image 2^19 (odd power of
    // 2, so not a power of 4^5).  No induced q-matroid exists.
    auto aa = c.is_almost_affine(ScopeSpec::up_to_dim(2));
    CHECK_FALSE(aa.almost_affine);
    REQUIRE(aa.witness.has_value());
    CHECK(aa.witness->dim() == 2);
    CHECK(aa.witness_size == BigInt(524288));
    CHECK_THROWS_AS(QMatroid::induced_from_code(c), verdict_error);
}

TEST_CASE("twisted instance q0=3 u=2 n=3: admissible and fully verified") {
    CHECK(agtg_first_valid_eta(3, 2, 3, 2, 1) == 3);
    auto c = agtg_make(3, 2, 3, 2, 1, 1, 3);
    CHECK(c.size() == BigInt(531441));  // 3^12 = 9^6
    CHECK(c.generators().size() == 12);
    CHECK(c.q() == 9);
    CHECK(c.m() == 3);

    auto lin = c.classify_linearity();
    CHECK(lin.p_linear);
    CHECK_FALSE(lin.q_linear);  // strictly additive over F_9

    auto aa = c.is_almost_affine(ScopeSpec::all());
    CHECK(aa.almost_affine);
    CHECK(aa.scope_complete);
    CHECK(aa.checked == 184);  // all subspaces of F_9^3

    auto qm = QMatroid::induced_from_code(c);
    CHECK(qm.ranks_equal(QMatroid::uniform(c.tower()->base(), 3, 2)));
    CHECK(c.min_distance() == 2);  // n - k + 1: this instance is MRD
}

TEST_CASE("semifield search: deterministic first table of order 16") {
    CHECK_FALSE(semifield_search(2, 1).has_value());
    CHECK_FALSE(semifield_search(2, 2).has_value());
    CHECK_THROWS_AS(semifield_search(4, 2), data_error);     // q must be prime
    CHECK_THROWS_AS(semifield_search(2, 11), budget_error);  // order too large

    auto t = order16();
    CHECK(t.q == 2);
    CHECK(t.m == 4);
    CHECK(t.order() == 16);
    CHECK(t.identity == 1);
    REQUIRE(t.proper_witness.has_value());
    CHECK(*t.proper_witness == std::array<uint64_t, 3>{2, 2, 4});
    for (uint64_t x = 0; x < 16; ++x) {
        for (uint64_t y = 0; y < 16; ++y) {
            CHECK(t.mul(x, y) == kFrozenOrder16[x][y]);
        }
    }
    // identical table on a second run
    auto t2 = semifield_search(2, 4);
    REQUIRE(t2.has_value());
    CHECK(t2->prod == t.prod);
    CHECK(t2->proper_witness == t.proper_witness);
}

TEST_CASE("semifield validator accepts the table and rejects corruption") {
    auto t = order16();
    auto cert = semifield_validate(t);
    CHECK(cert.valid);
    CHECK(cert.proper);
    CHECK(cert.identity == 1);
    REQUIRE(cert.witness.has_value());
    CHECK(*cert.witness == std::array<uint64_t, 3>{2, 2, 4});

    // the field of order 4 is a valid semifield but not proper
    auto f4 = semifield_from_field(2, 2);
    auto cf = semifield_validate(f4);
    CHECK(cf.valid);
    CHECK_FALSE(cf.proper);

    SemifieldTable bad = t;
    bad.prod[3 * 16 + 5] = 16;  // entry out of range
    CHECK_FALSE(semifield_validate(bad).valid);

    bad = t;
    std::swap(bad.prod[2 * 16 + 5], bad.prod[2 * 16 + 6]);  // breaks additivity
    CHECK_FALSE(semifield_validate(bad).valid);

    bad = t;
    for (uint64_t y = 0; y < 16; ++y) bad.prod[5 * 16 + y] = bad.prod[3 * 16 + y];
    CHECK_FALSE(semifield_validate(bad).valid);  // repeated rows: zero divisors

    bad = t;
    bad.identity = 2;
    CHECK_FALSE(semifield_validate(bad).valid);

    bad = semifield_from_field(2, 2);
    bad.proper_witness = std::array<uint64_t, 3>{1, 2, 3};
    CHECK_FALSE(semifield_validate(bad).valid);  // witness that associates
}

TEST_CASE("left-multiplication matrices round-trip the table") {
    auto t = order16();
    auto mats = semifield_left_mult_matrices(t);
    REQUIRE(mats.size() == 16);
    // L_2 columns are 2 o {1,2,4,8} = (2,3,9,14)
    CHECK(mats[2].at(0, 0) == 0);
    CHECK(mats[2].at(1, 0) == 1);
    CHECK(mats[2].at(0, 1) == 1);
    CHECK(mats[2].at(3, 3) == 1);
    for (uint64_t x = 1; x < 16; ++x) CHECK(mats[x].inverse().has_value());
    auto back = semifield_from_left_mult(2, 4, mats, 1);
    CHECK(back.prod == t.prod);
    CHECK(back.proper_witness == t.proper_witness);
    CHECK(semifield_validate(back).valid);
}

TEST_CASE("two-slot semifield code: sizes, strictness and rank-zero lines") {
    auto t = order16();
    auto c = semifield_code_2dim(t);
    CHECK(c.n() == 17);
    CHECK(c.q() == 2);
    CHECK(c.m() == 4);
    CHECK(c.size() == BigInt(256));
    CHECK(c.dim_log() == 2);

    auto lin = c.classify_linearity();
    CHECK(lin.q_linear);        // F_2-linear by construction
    CHECK_FALSE(lin.qm_linear); // strictly: not F_16-linear
    CHECK(c.min_distance() == 1);

    // the (0, y) words are constant off the first coordinate
    Word wy(17, 9);
    wy[0] = 0;
    CHECK(c.contains_word(wy));
    CHECK(c.rank_weight(wy) == 1);

    const auto& f2 = c.tower()->base();
    // Every line projects to an image of size 1 or 16; the 4095 rank-zero
    // lines form the 12-dimensional kernel of v -> (A_v, B_v).
    std::set<BigInt> sizes;
    uint64_t lines = 0, rank0 = 0;
    for_each_subspace(f2, 17, {1}, uint64_t(1) << 22, [&](const Subspace& V) {
        auto sz = c.projection_image_size(V);
        sizes.insert(sz);
        ++lines;
        if (sz == BigInt(1)) ++rank0;
    });
    CHECK(lines == 131071);
    CHECK(rank0 == 4095);
    CHECK(sizes == std::set<BigInt>{BigInt(1), BigInt(16)});

    // explicit rank-zero witness: the indicator of {0, 1, g, 1+g} slots
    std::vector<uint64_t> v(17, 0);
    v[1] = v[2] = v[3] = v[4] = 1;
    CHECK(c.projection_image_size(Subspace::single(f2, v)) == BigInt(1));

    CHECK(c.is_almost_affine(ScopeSpec::up_to_dim(1)).almost_affine);
    auto aas = c.is_almost_affine(ScopeSpec::sample(300, 7));
    CHECK(aas.almost_affine);
    CHECK(aas.scope_complete);  // all requested samples ran (nothing truncated)

    // sampled higher-dimensional projections only realize sizes 1, 16, 256
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        auto V = random_subspace(f2, 17, uint32_t(rng() % 18), rng);
        auto sz = c.projection_image_size(V);
        CHECK((sz == BigInt(1) || sz == BigInt(16) || sz == BigInt(256)));
    }
    CHECK(c.projection_image_size(Subspace::full(f2, 17)) == BigInt(256));

    // hypothesis guards
    CHECK_THROWS_AS(semifield_code_2dim(semifield_from_field(2, 2)), data_error);
}

TEST_CASE("k-slot semifield code: witness points, matroids, simplicity") {
    auto t = order16();
    CHECK(find_kdim_witness_point(t, 2) == std::vector<uint64_t>{4});
    CHECK(find_kdim_witness_point(t, 3) == std::vector<uint64_t>{0, 4});
    CHECK_FALSE(find_kdim_witness_point(semifield_from_field(2, 2), 2).has_value());
    CHECK_THROWS_AS(find_kdim_witness_point(t, 1), data_error);
    CHECK_THROWS_AS(semifield_code_kdim(t, 3, {0, 0}), data_error);  // no defect
    CHECK_THROWS_AS(semifield_code_kdim(t, 3, {4}), data_error);     // wrong arity
    CHECK_THROWS_AS(semifield_code_kdim(t, 3, {0, 16}), data_error); // out of range

    auto c3 = semifield_code_kdim(t, 3, {0, 4});
    CHECK(c3.n() == 4);
    CHECK(c3.size() == BigInt(4096));
    CHECK(c3.dim_log() == 3);
    auto lin = c3.classify_linearity();
    CHECK(lin.q_linear);
    CHECK_FALSE(lin.qm_linear);
    CHECK(c3.min_distance() == 1);

    auto aa = c3.is_almost_affine(ScopeSpec::all());
    CHECK(aa.almost_affine);
    CHECK(aa.checked == 67);  // every subspace of F_2^4

    auto qm = QMatroid::induced_from_code(c3);
    CHECK(qm.rank_of_ground() == 3);
    CHECK(qm.loops().empty());      // loopless ...
    CHECK_FALSE(qm.is_simple());    // ... but not simple
    std::map<std::pair<uint32_t, uint32_t>, int> census;
    for (const auto& V : enumerate_subspaces(c3.tower()->base(), 4)) {
        census[{V.dim(), qm.rank(V)}]++;
    }
    std::map<std::pair<uint32_t, uint32_t>, int> expected = {
        {{0, 0}, 1},  {{1, 1}, 15}, {{2, 1}, 1}, {{2, 2}, 34},
        {{3, 2}, 3},  {{3, 3}, 12}, {{4, 3}, 1},
    };
    CHECK(census == expected);

    // k = 2 member: three coordinates, same strictness and non-simplicity
    auto c2 = semifield_code_kdim(t, 2, {4});
    CHECK(c2.n() == 3);
    CHECK(c2.size() == BigInt(256));
    CHECK(c2.dim_log() == 2);
    CHECK(c2.is_almost_affine(ScopeSpec::all()).almost_affine);
    CHECK_FALSE(c2.classify_linearity().qm_linear);
    CHECK(c2.min_distance() == 1);
    auto qm2 = QMatroid::induced_from_code(c2);
    CHECK(qm2.loops().empty());
    CHECK_FALSE(qm2.is_simple());
}
