#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qrank/errors.hpp"
#include "qrank/json_io.hpp"

#include <cstdio>
#include <string>

using namespace qrank;

TEST_CASE("canonical text is sorted, newline-terminated and parse-stable") {
    Json j;
    j["zeta"] = 1;
    j["alpha"] = Json::array({1, 2});
    j["mid"] = "x";
    auto text = json_canonical(j);
    CHECK(text.back() == '\n');
    CHECK(text.find("alpha") < text.find("mid"));
    CHECK(text.find("mid") < text.find("zeta"));
    CHECK(json_parse(text) == j);
    CHECK(json_canonical(json_parse(text)) == text);

    CHECK_THROWS_AS(json_parse(""), data_error);
    CHECK_THROWS_AS(json_parse("{\"a\":"), data_error);
    CHECK_THROWS_AS(load_json_file("/nonexistent/definitely/missing.json"), data_error);
}

TEST_CASE("file writes round-trip byte-for-byte") {
    Json j;
    j["k"] = Json::array({"10", "20"});
    std::string path = "/tmp/qrank_json_io_test.json";
    write_json_file(path, j);
    auto back = load_json_file(path);
    CHECK(back == j);
    write_json_file(path, back);
    CHECK(load_json_file(path) == j);
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_json_file("/nonexistent/dir/file.json", j), data_error);
}

TEST_CASE("big integers travel as validated decimal strings") {
    BigInt v("123456789012345678901234567890");
    CHECK(bigint_from_string(bigint_to_string(v)) == v);
    CHECK(bigint_to_string(v) == "123456789012345678901234567890");
    CHECK(bigint_from_string("-17") == BigInt(-17));
    CHECK_THROWS_AS(bigint_from_string(""), data_error);
    CHECK_THROWS_AS(bigint_from_string("-"), data_error);
    CHECK_THROWS_AS(bigint_from_string("12x3"), data_error);
    CHECK_THROWS_AS(bigint_from_string("0x10"), data_error);
    CHECK(bigrat_to_string(BigRat(3, 6)) == "1/2");
    CHECK(bigrat_to_string(BigRat(4)) == "4/1");
}

TEST_CASE("field descriptors carry the modulus constant-term first") {
    auto f = GaloisField::make(2, 4);
    auto j = field_to_json(*f);
    CHECK(j["p"] == 2);
    CHECK(j["e"] == 4);
    CHECK(j["modulus"] == Json::array({1, 1, 0, 0, 1}));  // 1 + x + x^4
    auto back = field_from_json(j);
    CHECK(back->same_field(*f));

    auto j9 = field_to_json(*GaloisField::make(3, 2));
    CHECK(field_from_json(j9)->order() == 9);

    auto bad = j;
    bad["modulus"] = Json::array({1, 1, 1, 0, 1});  // reducible over F_2
    CHECK_THROWS_AS(field_from_json(bad), data_error);
    bad = j;
    bad["modulus"] = Json::array({1, 1, 0, 1});  // wrong length
    CHECK_THROWS_AS(field_from_json(bad), data_error);
    bad = j;
    bad.erase("p");
    CHECK_THROWS_AS(field_from_json(bad), data_error);
    bad = j;
    bad["e"] = -1;
    CHECK_THROWS_AS(field_from_json(bad), data_error);
}

TEST_CASE("tower descriptors reject a stale embedding root") {
    for (auto tower : {FieldTower::make(2, 1, 4), FieldTower::make(3, 2, 3),
                       FieldTower::make(2, 2, 5)}) {
        auto j = tower_to_json(*tower);
        auto back = tower_from_json(j);
        CHECK(back->same_tower(*tower));
        CHECK(back->embed_root() == tower->embed_root());
        auto bad = j;
        bad["embed_root"] = tower->embed_root() + 1;
        CHECK_THROWS_AS(tower_from_json(bad), data_error);
    }
}

TEST_CASE("subspace load canonicalizes arbitrary generating rows") {
    auto f = GaloisField::make(2, 1);
    auto S = Subspace::from_rows(f, 3, {{1, 1, 0}, {0, 1, 1}});
    auto j = subspace_to_json(S);
    CHECK(j["q"] == 2);
    CHECK(j["n"] == 3);
    CHECK(subspace_from_json(j) == S);

    // same span, redundant non-canonical rows
    Json alt;
    alt["q"] = 2;
    alt["n"] = 3;
    alt["rows"] = Json::array({Json::array({1, 0, 1}), Json::array({1, 1, 0}),
                               Json::array({0, 1, 1})});
    CHECK(subspace_from_json(alt) == S);

    Json nine;
    nine["q"] = 9;
    nine["n"] = 2;
    nine["rows"] = Json::array({Json::array({2, 7})});
    CHECK(subspace_from_json(nine).field()->order() == 9);

    auto bad = j;
    bad["q"] = 6;  // not a prime power
    CHECK_THROWS_AS(subspace_from_json(bad), data_error);
    bad = j;
    bad["q"] = 1;
    CHECK_THROWS_AS(subspace_from_json(bad), data_error);
    bad = j;
    bad["rows"] = Json::array({Json::array({1, 0, 2})});  // entry outside F_2
    CHECK_THROWS_AS(subspace_from_json(bad), data_error);
}

TEST_CASE("codes round-trip with their storage kind") {
    auto additive = bundled_examples("example_3_4");
    auto ja = code_to_json(additive);
    CHECK(ja["storage"] == "additive");
    CHECK(ja.contains("generators"));
    CHECK(ja.contains("offset"));
    auto back_a = code_from_json(ja);
    CHECK(back_a.same_code(additive));
    CHECK(back_a.additive_storage());
    CHECK(json_canonical(code_to_json(back_a)) == json_canonical(ja));

    std::vector<Word> words;
    additive.for_each_word([&](const Word& w) { words.push_back(w); });
    auto explicit_code = RankMetricCode::from_words(additive.tower(), additive.n(), words);
    auto je = code_to_json(explicit_code);
    CHECK(je["storage"] == "explicit");
    auto back_e = code_from_json(je);
    CHECK_FALSE(back_e.additive_storage());
    CHECK(back_e.same_code(additive));

    auto bad = je;
    bad["storage"] = "sparse";
    CHECK_THROWS_AS(code_from_json(bad), data_error);
    bad = je;
    bad["codewords"][0][0] = 999;  // not an F_16 encoding
    CHECK_THROWS_AS(code_from_json(bad), data_error);
    bad = je;
    bad["codewords"][0] = Json::array({1});  // wrong arity
    CHECK_THROWS_AS(code_from_json(bad), data_error);
    bad = je;
    bad.erase("codewords");
    CHECK_THROWS_AS(code_from_json(bad), data_error);
}

TEST_CASE("rank tables serialize every subspace once in enumeration order") {
    auto c = bundled_examples("example_3_4");
    auto M = QMatroid::induced_from_code(c);
    auto j = qmatroid_to_json(M);
    CHECK(j["q"] == 2);
    CHECK(j["n"] == 3);
    CHECK(j["origin"] == "induced-from-code");
    REQUIRE(j["table"].size() == 16);
    CHECK(j["table"][0]["subspace"] == Json::array());  // zero space first
    CHECK(j["table"][0]["rank"] == 0);
    CHECK(j["table"][15]["rank"] == 2);  // the full space has the code's rank

    auto back = qmatroid_from_json(j);
    CHECK(back.ranks_equal(M));
    CHECK(json_canonical(qmatroid_to_json(back)) == json_canonical(j));

    auto bad = j;
    bad["table"][3]["rank"] = 7;  // above the ambient dimension
    CHECK_THROWS_AS(qmatroid_from_json(bad), data_error);
    bad = j;
    bad["table"].erase(5);  // incomplete cover
    CHECK_THROWS_AS(qmatroid_from_json(bad), data_error);
    bad = j;
    bad["table"][5] = bad["table"][4];  // duplicate subspace
    CHECK_THROWS_AS(qmatroid_from_json(bad), data_error);

    CHECK_THROWS_AS(qmatroid_to_json(M, 4), budget_error);
}

TEST_CASE("distribution reports expose enumerators, censuses and flags") {
    auto f = GaloisField::make(2, 1);
    auto U = QMatroid::uniform(f, 4, 2);

    auto good = distributions_to_json(distributions_report(U, 4), {1, 2});
    CHECK(good["A"] == Json::array({"1", "0", "0", "225", "30"}));
    CHECK(good["nonneg"] == true);
    CHECK(good["integral"] == true);
    CHECK(good["d"] == Json::array({1, 2}));
    REQUIRE(good["R"].size() == 5);
    CHECK(good["R"][0][0] == "1");  // one 0-space of rank 0
    CHECK(good["Rstar"].size() == 5);

    // below the existence bound the formal enumerator goes negative
    auto bad = distributions_to_json(distributions_report(U, 3), {});
    CHECK(bad["nonneg"] == false);
}

TEST_CASE("semifield tables revalidate on load") {
    auto table = semifield_search(2, 4);
    REQUIRE(table.has_value());
    auto j = semifield_to_json(*table);
    CHECK(j["q"] == 2);
    CHECK(j["m"] == 4);
    CHECK(j["identity"] == 1);
    CHECK(j["proper_witness"] == Json::array({2, 2, 4}));
    REQUIRE(j["left_mult"].size() == 16);
    CHECK(j["left_mult"][0] == Json::array({0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));

    auto back = semifield_from_json(j);
    CHECK(back.prod == table->prod);
    CHECK(back.identity == table->identity);
    CHECK(back.proper_witness == table->proper_witness);
    CHECK(json_canonical(semifield_to_json(back)) == json_canonical(j));

    auto bad = j;
    bad["identity"] = 2;
    CHECK_THROWS_AS(semifield_from_json(bad), data_error);
    bad = j;
    bad["proper_witness"] = nullptr;  // table IS proper
    CHECK_THROWS_AS(semifield_from_json(bad), data_error);
    bad = j;
    bad["proper_witness"] = Json::array({1, 1, 1});
    CHECK_THROWS_AS(semifield_from_json(bad), data_error);
    bad = j;
    for (auto& e : bad["left_mult"][3]) e = 0;  // breaks additivity
    CHECK_THROWS_AS(semifield_from_json(bad), data_error);
    bad = j;
    bad["left_mult"][3] = Json::array({1, 0});  // wrong shape
    CHECK_THROWS_AS(semifield_from_json(bad), data_error);

    // an associative table (a field) serializes with a null witness
    auto field_table = semifield_from_field(2, 2);
    auto jf = semifield_to_json(field_table);
    CHECK(jf["proper_witness"].is_null());
    CHECK(semifield_from_json(jf).prod == field_table.prod);
}

TEST_CASE("incidence structures round-trip exactly and reject structural damage") {
    auto c = gabidulin_make(2, 1, 4, 2, 1);
    auto g = geometry_from_code(c);
    auto j = geometry_to_json(g);
    REQUIRE(j["classes"].size() == 15 * 16);
    CHECK(j["points"].size() == 256);

    auto back = geometry_from_json(j);
    CHECK(back.points == g.points);
    CHECK(back.directions == g.directions);
    CHECK(back.classes == g.classes);
    CHECK(json_canonical(geometry_to_json(back)) == json_canonical(j));

    // records in scrambled order regroup to the same structure
    auto shuffled = j;
    std::reverse(shuffled["classes"].begin(), shuffled["classes"].end());
    auto regrouped = geometry_from_json(shuffled);
    CHECK(regrouped.classes == g.classes);

    auto bad = j;
    bad["classes"][0]["alpha"] = bad["classes"][1]["alpha"];  // duplicate label
    CHECK_THROWS_AS(geometry_from_json(bad), data_error);
    bad = j;
    for (int i = 0; i < 16; ++i) bad["classes"].erase(0);  // drop a whole direction
    CHECK_THROWS_AS(geometry_from_json(bad), data_error);
    bad = j;
    bad["classes"][0]["members"][0] = 1000;  // member id out of range
    CHECK_THROWS_AS(geometry_from_json(bad), data_error);

    // a loaded structure still verifies and coordinatizes
    auto v = verify_geometry_properties(back);
    CHECK(v.all_hold());
    CHECK(code_from_geometry(back, standard_basis_rows(4)).same_code(c));
}
