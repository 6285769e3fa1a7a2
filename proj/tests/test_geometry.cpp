#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrank/constructions.hpp"
#include "qrank/errors.hpp"
#include "qrank/geometry.hpp"
#include "qrank/qmatroid.hpp"

#include <algorithm>
#include <set>
#include <string>

using namespace qrank;

namespace {

// Full evaluation code over F_2 <= F_16 in four coordinates: 256 words whose
// induced structure is the uniform one, so every verification sweep holds.
RankMetricCode eval_code_16_4() { return gabidulin_make(2, 1, 4, 2, 1); }

// Twisted evaluation code over F_3 <= F_27, strictly almost affine: linear
// over F_3 but not over the top field, 729 words in three coordinates.
RankMetricCode twisted_code_27_3() { return agtg_make(3, 1, 3, 2, 1, 1, 2); }

// Larger odd-characteristic twisted code: 6561 words over F_81 in four
// coordinates.
RankMetricCode twisted_code_81_4() { return agtg_make(3, 1, 4, 2, 1, 1, 3); }

bool witness_mentions(const std::string& witness, const std::string& needle) {
    return witness.find(needle) != std::string::npos;
}

// Hand-built structure on two points of F_4^2 where the axioms hold but no
// coordinatizing code can exist: with two points only two partitions are
// available, so two of the three directions must induce the same one.
Geometry two_point_structure() {
    Geometry g;
    g.tower = FieldTower::make(2, 1, 2);
    g.n = 2;
    g.points = {{0, 0}, {1, 1}};
    g.directions = {{0, 1}, {1, 0}, {1, 1}};
    g.classes = {
        {{0, {0}}, {1, {1}}},
        {{0, {0}}, {1, {1}}},
        {{0, {0, 1}}},
    };
    return g;
}

// Three points chosen so that labels still add and identify points, but the
// line through (1, 0) splits them 1 against 2.
Geometry three_point_structure() {
    Geometry g;
    g.tower = FieldTower::make(2, 1, 2);
    g.n = 2;
    g.points = {{0, 0}, {1, 0}, {1, 1}};
    g.directions = {{0, 1}, {1, 0}, {1, 1}};
    g.classes = {
        {{0, {0, 1}}, {1, {2}}},
        {{0, {0}}, {1, {1, 2}}},
        {{0, {0, 2}}, {1, {1}}},
    };
    return g;
}

RankMetricCode full_space_code_4_2() {
    auto tower = FieldTower::make(2, 1, 2);
    std::vector<Word> words;
    for (uint64_t a = 0; a < 4; ++a)
        for (uint64_t b = 0; b < 4; ++b) words.push_back({a, b});
    return RankMetricCode::from_words(tower, 2, std::move(words));
}

Word min_word(const RankMetricCode& c) {
    Word z;
    c.for_each_word([&](const Word& w) {
        if (z.empty() || w < z) z = w;
    });
    return z;
}

} // namespace

TEST_CASE("direction normalization scales the first nonzero coordinate to one") {
    auto f = GaloisField::make(3, 1);
    auto [rep, lambda] = normalize_direction(f, {0, 2, 1});
    CHECK(rep == std::vector<uint64_t>{0, 1, 2});
    CHECK(lambda == 2);
    auto [rep2, lambda2] = normalize_direction(f, {1, 2, 0});
    CHECK(rep2 == std::vector<uint64_t>{1, 2, 0});
    CHECK(lambda2 == 1);
    CHECK_THROWS_AS(normalize_direction(f, {0, 0, 0}), data_error);
}

TEST_CASE("direction lookup resolves scaled vectors to the stored class") {
    auto g = geometry_from_code(twisted_code_27_3());
    CHECK(g.directions.size() == 13);  // (3^3 - 1) / 2 one-dimensional subspaces
    CHECK(g.direction_index({0, 1, 2}).has_value());
    CHECK_FALSE(g.direction_index({0, 2, 1}).has_value());  // not normalized
    auto ref = g.resolve_direction({0, 2, 1});
    REQUIRE(ref.has_value());
    CHECK(g.directions[ref->index] == std::vector<uint64_t>{0, 1, 2});
    CHECK(ref->lambda == 2);
    CHECK_THROWS_AS(g.resolve_direction({0, 0, 0}), data_error);
}

TEST_CASE("full evaluation code induces a balanced labelled structure") {
    auto c = eval_code_16_4();
    auto g = geometry_from_code(c);
    CHECK(g.points.size() == 256);
    CHECK(std::is_sorted(g.points.begin(), g.points.end()));
    CHECK(g.directions.size() == 15);
    CHECK(std::is_sorted(g.directions.begin(), g.directions.end()));
    CHECK(g.q() == 2);
    CHECK(g.label_count() == 16);
    for (const auto& cls : g.classes) {
        REQUIRE(cls.size() == 16);  // one hyperplane per label
        for (size_t i = 0; i < cls.size(); ++i) {
            CHECK(cls[i].alpha == i);
            CHECK(cls[i].members.size() == 16);  // |points| / label_count
            CHECK(std::is_sorted(cls[i].members.begin(), cls[i].members.end()));
        }
    }

    auto v = verify_geometry_properties(g);
    CHECK(v.all_hold());
    CHECK(v.partition.checked == 15 * 256);
    CHECK(v.parallelism.checked == 15);
    CHECK(v.basis_injectivity.checked == 257);  // standard basis + 256 samples
    CHECK(v.fiber_balance.checked == 66);       // subspaces of F_2^4 of dimension >= 1
    CHECK(v.fiber_balance.scope_complete);
    CHECK(v.additivity.checked > 0);
    CHECK(v.partition.witness.empty());
}

TEST_CASE("label tuples identify points along every ordered basis") {
    auto g = geometry_from_code(eval_code_16_4());
    GeometryVerifyOptions opt;
    opt.all_bases = true;
    auto v = verify_geometry_properties(g, opt);
    CHECK(v.all_hold());
    // standard basis plus all 20160 ordered bases of F_2^4
    CHECK(v.basis_injectivity.checked == 20161);
    CHECK(v.basis_injectivity.scope_complete);
}

TEST_CASE("coordinatization inverts construction exactly for the standard basis") {
    auto c = eval_code_16_4();
    auto g = geometry_from_code(c);
    auto back = code_from_geometry(g, standard_basis_rows(4));
    CHECK(back.same_code(c));

    // the rebuilt structure is bit-for-bit the original
    auto g2 = geometry_from_code(back);
    CHECK(g2.points == g.points);
    CHECK(g2.directions == g.directions);
    CHECK(g2.classes == g.classes);
}

TEST_CASE("coordinatization along another basis applies the matching code equivalence") {
    auto c = eval_code_16_4();
    auto g = geometry_from_code(c);
    std::vector<std::vector<uint64_t>> rows = {
        {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}};
    auto A = FqMatrix::from_rows(c.tower()->base(), rows, 4);
    REQUIRE(A.rank() == 4);
    auto mapped = code_from_geometry(g, rows);
    CHECK(mapped.same_code(c.apply_equivalence(A, Word(4, 0))));

    // odd characteristic: rows with leading coefficient 2 exercise the label
    // transport under scaling
    auto c3 = twisted_code_27_3();
    auto g3 = geometry_from_code(c3);
    std::vector<std::vector<uint64_t>> rows3 = {{2, 0, 1}, {0, 2, 2}, {1, 1, 1}};
    auto A3 = FqMatrix::from_rows(c3.tower()->base(), rows3, 3);
    REQUIRE(A3.rank() == 3);
    auto mapped3 = code_from_geometry(g3, rows3);
    CHECK(mapped3.same_code(c3.apply_equivalence(A3, Word(3, 0))));
}

TEST_CASE("strictly additive twisted code induces a verified structure") {
    auto c = twisted_code_27_3();
    auto lin = c.classify_linearity();
    CHECK(lin.q_linear);         // F_3-linear
    CHECK_FALSE(lin.qm_linear);  // but not linear over F_27

    auto g = geometry_from_code(c);
    CHECK(g.points.size() == 729);
    CHECK(g.directions.size() == 13);
    for (const auto& cls : g.classes) {
        REQUIRE(cls.size() == 27);
        for (const auto& h : cls) CHECK(h.members.size() == 27);
    }
    auto v = verify_geometry_properties(g);
    CHECK(v.all_hold());
    CHECK(v.fiber_balance.checked == 27);  // 13 lines + 13 planes + full space
    auto back = code_from_geometry(g, standard_basis_rows(3));
    CHECK(back.same_code(c));
}

TEST_CASE("larger twisted instance stays balanced under a sampled verification") {
    auto c = twisted_code_81_4();
    auto g = geometry_from_code(c);
    CHECK(g.points.size() == 6561);
    CHECK(g.directions.size() == 40);
    for (const auto& cls : g.classes) {
        REQUIRE(cls.size() == 81);
        for (const auto& h : cls) CHECK(h.members.size() == 81);
    }
    GeometryVerifyOptions opt;
    opt.basis_samples = 16;
    opt.point_samples = 64;
    auto v = verify_geometry_properties(g, opt);
    CHECK(v.all_hold());
    CHECK(v.fiber_balance.checked == 211);  // subspaces of F_3^4 of dimension >= 1
    CHECK(v.fiber_balance.scope_complete);
}

TEST_CASE("codes with deficient low-dimensional projections are rejected") {
    // additive non-linear example: one plane projects onto 16 of 256 values
    try {
        geometry_from_code(bundled_examples("example_3_4"));
        FAIL("structure built from a code with a deficient plane");
    } catch (const verdict_error& e) {
        std::string w = e.what();
        CHECK(witness_mentions(w, "(1,0,0) (0,1,1)"));
        CHECK(witness_mentions(w, "image size 16"));
        CHECK(witness_mentions(w, "expected 256"));
    }

    // binary twisted evaluation code: a plane image of 2^19 instead of 2^20
    try {
        geometry_from_code(agtg_make(2, 2, 5, 2, 2, 1, 2));
        FAIL("structure built from a code with a deficient plane");
    } catch (const verdict_error& e) {
        std::string w = e.what();
        CHECK(witness_mentions(w, "(0,0,0,1,0) (0,0,0,0,1)"));
        CHECK(witness_mentions(w, "image size 524288"));
    }

    // two-slot semifield code: one direction does not separate at all
    auto table = semifield_search(2, 4);
    REQUIRE(table.has_value());
    try {
        geometry_from_code(semifield_code_2dim(*table));
        FAIL("structure built from a code with a constant direction");
    } catch (const verdict_error& e) {
        std::string w = e.what();
        CHECK(witness_mentions(w, "(0,0,0,0,0,0,0,0,0,0,0,0,0,1,1,1,1)"));
        CHECK(witness_mentions(w, "image size 1"));
    }

    // three-slot semifield code: deficient plane
    try {
        geometry_from_code(semifield_code_kdim(*table, 3, {0, 4}));
        FAIL("structure built from a code with a deficient plane");
    } catch (const verdict_error& e) {
        std::string w = e.what();
        CHECK(witness_mentions(w, "(0,1,0,0) (0,0,1,1)"));
        CHECK(witness_mentions(w, "image size 16"));
    }
}

TEST_CASE("two points satisfy the local axioms but fail the parallelism scan") {
    auto g = two_point_structure();
    auto v = verify_geometry_properties(g);
    CHECK(v.partition.holds);
    CHECK(v.basis_injectivity.holds);
    CHECK(v.additivity.holds);
    CHECK(v.fiber_balance.holds);
    CHECK_FALSE(v.parallelism.holds);
    CHECK(witness_mentions(v.parallelism.witness, "induce the same partition"));
    CHECK_FALSE(v.all_hold());

    // coordinatization itself still works (injectivity holds)
    auto code = code_from_geometry(g, standard_basis_rows(2));
    CHECK(code.size() == BigInt(2));
    CHECK(code.contains_word({1, 1}));
}

TEST_CASE("a direction separating no points is flagged") {
    Geometry g;
    g.tower = FieldTower::make(2, 1, 2);
    g.n = 2;
    g.points = {{0, 0}, {1, 0}};
    g.directions = {{0, 1}, {1, 0}, {1, 1}};
    g.classes = {
        {{0, {0, 1}}},           // both second coordinates are 0
        {{0, {0}}, {1, {1}}},
        {{0, {0}}, {1, {1}}},
    };
    auto v = verify_geometry_properties(g);
    CHECK(v.partition.holds);
    CHECK_FALSE(v.parallelism.holds);
    CHECK(witness_mentions(v.parallelism.witness, "(0,1)"));
    CHECK(witness_mentions(v.parallelism.witness, "separates no points"));
}

TEST_CASE("unbalanced fibers are caught in isolation") {
    auto g = three_point_structure();
    auto v = verify_geometry_properties(g);
    CHECK(v.partition.holds);
    CHECK(v.basis_injectivity.holds);
    CHECK(v.additivity.holds);
    CHECK(v.parallelism.holds);
    CHECK_FALSE(v.fiber_balance.holds);
    CHECK(witness_mentions(v.fiber_balance.witness, "fibers of size 1 and 2"));
}

TEST_CASE("a single point passes vacuously and coordinatizes to itself") {
    Geometry g;
    g.tower = FieldTower::make(2, 1, 2);
    g.n = 2;
    g.points = {{2, 3}};
    g.directions = {{0, 1}, {1, 0}, {1, 1}};
    g.classes = {{{3, {0}}}, {{2, {0}}}, {{1, {0}}}};  // labels of the point itself
    auto v = verify_geometry_properties(g);
    CHECK(v.all_hold());
    CHECK(v.parallelism.checked == 3);
    auto code = code_from_geometry(g, standard_basis_rows(2));
    CHECK(code.size() == BigInt(1));
    CHECK(code.contains_word({2, 3}));
}

TEST_CASE("relabelling one class breaks exactly the additivity verdict") {
    auto g = geometry_from_code(full_space_code_4_2());
    REQUIRE(verify_geometry_properties(g).all_hold());
    // swap the members of labels 2 and 3 in the class of direction (1,1);
    // partitions, injectivity and fiber sizes survive a per-class relabelling
    REQUIRE(g.directions[2] == std::vector<uint64_t>{1, 1});
    std::swap(g.classes[2][2].members, g.classes[2][3].members);
    auto v = verify_geometry_properties(g);
    CHECK(v.partition.holds);
    CHECK(v.basis_injectivity.holds);
    CHECK(v.fiber_balance.holds);
    CHECK(v.parallelism.holds);
    CHECK_FALSE(v.additivity.holds);
    CHECK(witness_mentions(v.additivity.witness, "do not add up along (1,1)"));
}

TEST_CASE("membership defects break the partition verdict with point witnesses") {
    auto g = two_point_structure();
    g.classes[2][0].members = {0};  // drop point 1 from the only (1,1)-hyperplane
    auto v = verify_geometry_properties(g);
    CHECK_FALSE(v.partition.holds);
    CHECK(witness_mentions(v.partition.witness, "point 1 lies in no hyperplane"));

    // the standard basis avoids the damaged direction, so coordinatization
    // still succeeds; a basis through it reports the missing label
    CHECK(code_from_geometry(g, standard_basis_rows(2)).size() == BigInt(2));
    CHECK_THROWS_AS(code_from_geometry(g, {{1, 1}, {0, 1}}), verdict_error);

    auto g2 = two_point_structure();
    g2.classes[0][1].members = {0, 1};  // point 0 now appears under two labels
    auto v2 = verify_geometry_properties(g2);
    CHECK_FALSE(v2.partition.holds);
    CHECK(witness_mentions(v2.partition.witness, "point 0 lies in two hyperplanes"));
}

TEST_CASE("points sharing every label are a coordinatization collision") {
    Geometry g;
    g.tower = FieldTower::make(2, 1, 2);
    g.n = 2;
    g.points = {{0, 0}, {1, 1}};
    g.directions = {{0, 1}, {1, 0}, {1, 1}};
    g.classes = {{{0, {0, 1}}}, {{0, {0, 1}}}, {{0, {0, 1}}}};
    auto v = verify_geometry_properties(g);
    CHECK(v.partition.holds);
    CHECK_FALSE(v.basis_injectivity.holds);
    CHECK(witness_mentions(v.basis_injectivity.witness, "points 0 and 1"));
    CHECK_FALSE(v.parallelism.holds);
    CHECK_THROWS_AS(code_from_geometry(g, standard_basis_rows(2)), verdict_error);
}

TEST_CASE("structural defects raise data errors instead of verdicts") {
    {
        auto g = two_point_structure();
        g.directions.pop_back();
        g.classes.pop_back();
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        g.classes.pop_back();  // classes shorter than directions
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        g.classes[2][0].members = {1, 0};  // not ascending
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        std::swap(g.classes[0][0], g.classes[0][1]);  // labels out of order
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        g.points[0] = {4, 0};  // not an F_4 encoding
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        g.directions[2] = {2, 2};  // not an F_2 vector
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    {
        auto g = two_point_structure();
        g.classes[0][0].members = {5};  // point id out of range
        CHECK_THROWS_AS(verify_geometry_properties(g), data_error);
    }
    // coordinatization rejects dependent rows before touching labels
    auto g = two_point_structure();
    CHECK_THROWS_AS(code_from_geometry(g, {{1, 1}, {1, 1}}), data_error);
    CHECK_THROWS_AS(code_from_geometry(g, {{1, 0}}), data_error);  // wrong count
}

TEST_CASE("budgets gate construction and the heavy sweeps") {
    auto c = eval_code_16_4();
    try {
        geometry_from_code(c, 100);
        FAIL("construction ignored its budget");
    } catch (const budget_error& e) {
        CHECK(witness_mentions(e.what(), "3840"));  // 15 directions x 256 points
    }

    auto g = geometry_from_code(c);
    GeometryVerifyOptions opt;
    opt.all_bases = true;
    opt.all_bases_budget = 100;
    CHECK_THROWS_AS(verify_geometry_properties(g, opt), budget_error);

    GeometryVerifyOptions opt2;
    opt2.basis_samples = 1;
    opt2.point_samples = 4;
    opt2.subspace_budget = 10;  // below the 15 lines of the first layer
    auto v = verify_geometry_properties(g, opt2);
    CHECK(v.fiber_balance.holds);  // nothing checked, nothing failed
    CHECK_FALSE(v.fiber_balance.scope_complete);
    CHECK(v.fiber_balance.checked == 0);
}

TEST_CASE("verification is deterministic for a fixed seed") {
    auto g = geometry_from_code(twisted_code_27_3());
    GeometryVerifyOptions opt;
    opt.basis_samples = 32;
    opt.point_samples = 128;
    opt.seed = 7;
    auto a = verify_geometry_properties(g, opt);
    auto b = verify_geometry_properties(g, opt);
    CHECK(a.all_hold());
    CHECK(b.all_hold());
    CHECK(a.additivity.checked == b.additivity.checked);
    CHECK(a.basis_injectivity.checked == b.basis_injectivity.checked);
    opt.seed = 8;
    auto c = verify_geometry_properties(g, opt);
    CHECK(c.all_hold());
}

// ---------------------------------------------------------------------------
// Flats
// ---------------------------------------------------------------------------

TEST_CASE("parallel classes partition the code into equal blocks") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    uint32_t k = *c.dim_log();
    REQUIRE(k == 2);

    uint64_t visited = for_each_subspace(f, 3, {}, 1u << 10, [&](const Subspace& V) {
        auto cls = parallel_class(c, V);
        uint32_t r = *c.projection_log(V);
        CHECK(BigInt(uint64_t(cls.size())) == c.projection_image_size(V));
        std::set<Word> seen;
        std::vector<std::vector<uint64_t>> labels;
        for (const auto& fl : cls) {
            CHECK(fl.V == V);
            CHECK(fl.dim == k - r);
            CHECK(BigInt(uint64_t(fl.members.size())) == big_pow(BigInt(16), k - r));
            CHECK(std::is_sorted(fl.members.begin(), fl.members.end()));
            for (const auto& w : fl.members) {
                CHECK(c.project_word(V, w) == fl.labels);
                seen.insert(w);
            }
            labels.push_back(fl.labels);
        }
        CHECK(seen.size() == 256);  // blocks cover the code without overlap
        CHECK(std::is_sorted(labels.begin(), labels.end()));
    });
    CHECK(visited == 16);  // subspaces of F_2^3, zero space included
}

TEST_CASE("flat through a word carries its projection labels and dimension") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    auto V = Subspace::from_rows(f, 3, {{1, 0, 0}});
    auto fl = flat_of(c, V, z);
    CHECK(fl.dim == 1);
    CHECK(fl.labels == c.project_word(V, z));
    CHECK(fl.members.size() == 16);
    CHECK(std::binary_search(fl.members.begin(), fl.members.end(), z));

    // the deficient plane still yields a flat, one dimension larger than the
    // generic plane flat because the projection is smaller
    auto P = Subspace::from_rows(f, 3, {{1, 0, 0}, {0, 1, 1}});
    auto fp = flat_of(c, P, z);
    CHECK(fp.dim == 1);
    CHECK(fp.members.size() == 16);
    CHECK(parallel_class(c, P).size() == 16);

    CHECK_THROWS_AS(flat_of(c, V, Word{1, 2, 3}), data_error);  // not a codeword
    auto V4 = Subspace::from_rows(f, 4, {{1, 0, 0, 0}});
    CHECK_THROWS_AS(flat_of(c, V4, z), data_error);  // ambient mismatch
}

TEST_CASE("flats require power sizes of the code and its projections") {
    auto tower = FieldTower::make(2, 1, 2);
    auto f = tower->base();
    auto V = Subspace::from_rows(f, 2, {{1, 0}});
    {
        // three words: not a power of 4
        auto c = RankMetricCode::from_words(tower, 2, {{0, 0}, {1, 1}, {2, 2}});
        CHECK_THROWS_AS(flat_of(c, V, Word{0, 0}), verdict_error);
        CHECK_THROWS_AS(parallel_class(c, V), verdict_error);
    }
    {
        // four words, but the first coordinate takes three values
        auto c = RankMetricCode::from_words(tower, 2, {{0, 0}, {0, 1}, {1, 0}, {2, 3}});
        REQUIRE(c.dim_log() == 1);
        CHECK_THROWS_AS(flat_of(c, V, Word{0, 0}), verdict_error);
    }
}

TEST_CASE("the local family of flats mirrors the induced rank structure") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    auto M = QMatroid::induced_from_code(c);
    auto closed = M.flats();
    REQUIRE(closed.size() == 7);

    // each subspace yields the flat of its closure
    std::set<std::vector<Word>> distinct;
    for_each_subspace(f, 3, {}, 1u << 10, [&](const Subspace& V) {
        auto fl = flat_of(c, V, z);
        auto fc = flat_of(c, M.closure(V), z);
        CHECK(fl.same_members(fc));
        distinct.insert(fl.members);
    });
    CHECK(distinct.size() == 7);

    // containment between closed subspaces reverses between the member sets
    for (const auto& U1 : closed) {
        auto f1 = flat_of(c, U1, z);
        for (const auto& U2 : closed) {
            auto f2 = flat_of(c, U2, z);
            bool rev = std::includes(f1.members.begin(), f1.members.end(),
                                     f2.members.begin(), f2.members.end());
            CHECK(U2.contains(U1) == rev);
        }
    }
}

TEST_CASE("hyperplane flats of dependent directions coincide as sets") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    // the three lines of the deficient plane all cut the same flat
    auto a = flat_of(c, Subspace::from_rows(f, 3, {{1, 0, 0}}), z);
    auto b = flat_of(c, Subspace::from_rows(f, 3, {{0, 1, 1}}), z);
    auto d = flat_of(c, Subspace::from_rows(f, 3, {{1, 1, 1}}), z);
    CHECK(a.same_members(b));
    CHECK(a.same_members(d));
    CHECK_FALSE(a.parallel_to(b));  // defining subspaces differ
}

TEST_CASE("intersection agrees with the literal member overlap") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    std::vector<Subspace> lines;
    for_each_subspace(f, 3, {1}, 100, [&](const Subspace& V) { lines.push_back(V); });
    REQUIRE(lines.size() == 7);

    size_t singletons = 0, coincident = 0;
    for (size_t i = 0; i < lines.size(); ++i) {
        for (size_t j = i + 1; j < lines.size(); ++j) {
            auto L1 = flat_of(c, lines[i], z);
            auto L2 = flat_of(c, lines[j], z);
            auto I = flat_intersect(c, L1, L2);
            REQUIRE(I.has_value());  // both pass through z
            CHECK(I->V == lines[i].sum(lines[j]));

            std::vector<Word> overlap;
            std::set_intersection(L1.members.begin(), L1.members.end(), L2.members.begin(),
                                  L2.members.end(), std::back_inserter(overlap));
            CHECK(I->members == overlap);

            if (L1.same_members(L2)) {
                ++coincident;
            } else {
                CHECK(I->dim == 0);
                CHECK(I->members == std::vector<Word>{z});
                ++singletons;
            }
        }
    }
    CHECK(singletons == 18);
    CHECK(coincident == 3);  // the pairs inside the deficient plane

    // self-intersection reproduces the flat; disjoint parallels return nothing
    auto L = flat_of(c, lines[0], z);
    auto self = flat_intersect(c, L, L);
    REQUIRE(self.has_value());
    CHECK(self->same_members(L));
    auto cls = parallel_class(c, lines[0]);
    CHECK_FALSE(flat_intersect(c, cls[0], cls[1]).has_value());
}

TEST_CASE("join is the smallest flat containing both operands") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    auto V = Subspace::from_rows(f, 3, {{1, 0, 0}});
    auto W = Subspace::from_rows(f, 3, {{0, 1, 0}});
    auto L1 = flat_of(c, V, z);
    auto L2 = flat_of(c, W, z);
    auto J = flat_join(c, L1, L2);
    CHECK(J.V == V.intersect(W));
    CHECK(J.dim == 2);
    CHECK(J.members.size() == 256);  // two independent hyperplanes span everything

    // ... and no smaller flat through z contains both
    for_each_subspace(f, 3, {}, 1u << 10, [&](const Subspace& U) {
        auto fl = flat_of(c, U, z);
        bool both = std::includes(fl.members.begin(), fl.members.end(), L1.members.begin(),
                                  L1.members.end()) &&
                    std::includes(fl.members.begin(), fl.members.end(), L2.members.begin(),
                                  L2.members.end());
        if (both) CHECK(fl.members.size() >= J.members.size());
    });

    // modular-style dimension bound
    auto I = flat_intersect(c, L1, L2);
    REQUIRE(I.has_value());
    CHECK(int(I->dim) >= int(L1.dim) + int(L2.dim) - int(J.dim));

    // join of disjoint parallel flats is undefined
    auto cls = parallel_class(c, V);
    CHECK_THROWS_AS(flat_join(c, cls[0], cls[1]), data_error);
}

TEST_CASE("a flat cuts a parallel class into parallel sections") {
    auto c = bundled_examples("example_3_4");
    auto f = c.tower()->base();
    auto z = min_word(c);
    auto V = Subspace::from_rows(f, 3, {{1, 0, 0}});
    auto W = Subspace::from_rows(f, 3, {{0, 1, 0}});
    auto L = flat_of(c, V, z);
    auto cls = parallel_class(c, W);
    std::vector<Flat> sections;
    for (const auto& fl : cls) {
        auto I = flat_intersect(c, L, fl);
        if (I) sections.push_back(*I);
    }
    REQUIRE(sections.size() >= 2);
    for (size_t i = 1; i < sections.size(); ++i) {
        CHECK(sections[0].parallel_to(sections[i]));
        CHECK_FALSE(sections[0].same_members(sections[i]));
    }
}
