#include <doctest.h>

#include "diffalg/doc.hpp"
#include "diffalg/gallery.hpp"

using namespace diffalg;

namespace {

Json dual_numbers_doc() {
    return Json::parse(R"({
      "field": "Q",
      "kind": "structure_constants",
      "dim": 2,
      "table": [[[1,0],[0,1]],[[0,1],[0,0]]],
      "unit": [1,0],
      "labels": ["1","e"]
    })");
}

Json f2x_doc() {
    return Json::parse(R"({"field":{"Fp":2},"kind":"polynomial","vars":["x"],"truncation":8})");
}

Json boolean_doc() {
    return Json::parse(R"({
      "field": {"Fp": 2},
      "kind": "structure_constants",
      "dim": 2,
      "table": [[[1,0],[0,0]],[[0,0],[0,1]]],
      "unit": [1,1]
    })");
}

}  // namespace

TEST_CASE("document schema validation") {
    SUBCASE("valid documents parse") {
        CHECK_NOTHROW(parse_algebra_doc(dual_numbers_doc()));
        CHECK_NOTHROW(parse_algebra_doc(f2x_doc()));
        CHECK_NOTHROW(parse_algebra_doc(Json::parse(
            R"({"field":"Q","kind":"quotient","vars":["x"],"relations":["x^3"]})")));
    }
    SUBCASE("malformed field spec is rejected with the schema path") {
        Json j = dual_numbers_doc();
        j["field"] = "R";
        CHECK_THROWS_WITH_AS(parse_algebra_doc(j), doctest::Contains("/field"), input_error);
    }
    SUBCASE("unknown keys are rejected") {
        Json j = dual_numbers_doc();
        j["extra"] = 1;
        CHECK_THROWS_WITH_AS(parse_algebra_doc(j), doctest::Contains("extra"), input_error);
    }
    SUBCASE("non-prime modulus is rejected") {
        Json j = f2x_doc();
        j["field"]["Fp"] = 6;
        CHECK_THROWS_AS(parse_algebra_doc(j), input_error);
    }
    SUBCASE("wrong table shape is rejected") {
        Json j = dual_numbers_doc();
        j["table"] = Json::array();
        CHECK_THROWS_AS(parse_algebra_doc(j), input_error);
    }
    SUBCASE("invalid tensor documents are rejected") {
        CHECK_THROWS_AS(parse_tensor_doc(Json::parse(R"({"n":2,"coords":["x"],"tau":[]})")),
                        input_error);
        CHECK_THROWS_AS(
            parse_tensor_doc(Json::parse(
                R"({"n":1,"coords":["x"],"tau":[["y"]]})")),
            input_error);
    }
}

TEST_CASE("subcommand behavior on the worked documents") {
    CliOptions opt;

    SUBCASE("tangent --point 0 on F2[x]: 1-dimensional basis {x -> 1}") {
        opt.point_raw = "0";
        Json rep = run_subcommand("tangent", f2x_doc(), opt);
        CHECK(rep["results"]["dimension"] == 1);
        CHECK(rep["results"]["basis"][0][0] == "1");
    }
    SUBCASE("diff --order 1 on the Boolean document reports flat dims") {
        opt.order = 1;
        Json rep = run_subcommand("diff", boolean_doc(), opt);
        CHECK(rep["results"]["dims"] == Json::array({2, 2}));
        CHECK(rep["results"]["note"] == "boolean-triviality reproduced");
    }
    SUBCASE("spectrum --point validates candidates over Q") {
        opt.point_raw = "1,0";
        Json rep = run_subcommand("spectrum", dual_numbers_doc(), opt);
        CHECK(rep["results"]["is_point"] == true);
        opt.point_raw = "1,1";
        rep = run_subcommand("spectrum", dual_numbers_doc(), opt);
        CHECK(rep["results"]["is_point"] == false);
    }
    SUBCASE("spectrum enumeration over Q is an input error") {
        CHECK_THROWS_AS(run_subcommand("spectrum", dual_numbers_doc(), opt), input_error);
    }
    SUBCASE("unknown subcommand is rejected") {
        CHECK_THROWS_AS(run_subcommand("no-such-op", dual_numbers_doc(), opt), input_error);
    }
    SUBCASE("every report embeds the convention ledger") {
        opt.order = 1;
        Json rep = run_subcommand("jet", dual_numbers_doc(), opt);
        const Json& conv = rep["configuration"]["conventions"];
        CHECK(conv.contains("truncation_degree"));
        CHECK(conv.contains("exterior_power"));
        CHECK(conv.contains("cosmo_normalization"));
        CHECK(conv.contains("operator_lift"));
    }
}

TEST_CASE("reports are byte-identical across runs") {
    CliOptions opt;
    opt.order = 2;
    std::string a = run_subcommand("diff", dual_numbers_doc(), opt).dump(2);
    std::string b = run_subcommand("diff", dual_numbers_doc(), opt).dump(2);
    CHECK(a == b);

    opt.seed = 42;
    std::string c = run_subcommand("thm-ham-check",
                                   Json::parse(R"({"field":"Q","kind":"polynomial","vars":["x"]})"),
                                   opt)
                        .dump(2);
    std::string d = run_subcommand("thm-ham-check",
                                   Json::parse(R"({"field":"Q","kind":"polynomial","vars":["x"]})"),
                                   opt)
                        .dump(2);
    CHECK(c == d);
}

TEST_CASE("gallery --only filter") {
    auto result = run_gallery("08-derham");
    // the filtered run contains the requested scenario plus the determinism
    // placeholder note
    REQUIRE(!result.scenarios.empty());
    CHECK(result.scenarios[0].id == "08-derham");
    CHECK(result.scenarios[0].pass);
    CHECK(result.all_pass);
}

TEST_CASE("text rendering is a view of the JSON") {
    CliOptions opt;
    opt.order = 1;
    Json rep = run_subcommand("jet", dual_numbers_doc(), opt);
    std::string text = render_text(rep);
    CHECK(text.find("jet") != std::string::npos);
    CHECK(text.find("status: ok") != std::string::npos);
}
