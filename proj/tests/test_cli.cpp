#include "nilform/cli.hpp"
#include "nilform/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nilform;
using Json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    REQUIRE(r.code == 0);
    return Json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << text;
    return path.string();
}

const char* h1_document = R"({
  "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}, {"name": "z", "degree": 1}],
  "differential": [{"generator": "z", "value": [{"coeff": "1", "monomial": ["x", "y"]}]}]
})";

}  // namespace

TEST_CASE("cohomology tables") {
    auto j = run_json({"cohomology", "--preset", "heisenberg:2", "--max-degree", "5"});
    CHECK(j["cohomology"]["betti"] == Json::array({1, 4, 5, 5, 4, 1}));
    j = run_json({"cohomology", "--preset", "heisenberg:1"});
    CHECK(j["cohomology"]["betti"] == Json::array({1, 2, 2, 1}));
    CHECK(j["input"]["differential"]["z"] == "x1*y1");
    j = run_json({"cohomology", "--preset", "heisenberg:1", "--representatives"});
    CHECK(j["cohomology"]["representatives"]["3"] == Json::array({"x1*y1*z"}));
    const auto table = run({"cohomology", "--preset", "heisenberg:1"});
    CHECK(table.code == 0);
    CHECK(table.out.find("b_q") != std::string::npos);
}

TEST_CASE("input documents") {
    const auto path = write_temp("nilform_h1.json", h1_document);
    const auto j = run_json({"cohomology", "--input", path});
    CHECK(j["cohomology"]["betti"] == Json::array({1, 2, 2, 1}));

    const auto c = cli::parse_input_document(h1_document);
    CHECK(c.betti(2) == 2);
    CHECK_THROWS_AS(cli::parse_input_document("{"), ParseError);
    CHECK_THROWS_AS(cli::parse_input_document(R"({"generators": [{"name": "x", "degree": 1}],
        "differential": [{"generator": "w", "value": []}]})"),
                    ParseError);

    const auto bad = write_temp("nilform_bad.json", R"({
      "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}, {"name": "z", "degree": 1}],
      "differential": [{"generator": "z", "value": [{"coeff": "1/0", "monomial": ["x", "y"]}]}]})");
    const auto r = run({"cohomology", "--input", bad});
    CHECK(r.code == cli::InvalidInput);
    CHECK(r.err.find("zero denominator") != std::string::npos);

    const auto notd = write_temp("nilform_notd.json", R"({
      "generators": [{"name": "x", "degree": 1}, {"name": "y", "degree": 1}, {"name": "t", "degree": 1},
                     {"name": "z", "degree": 1}, {"name": "w", "degree": 1}],
      "differential": [{"generator": "z", "value": [{"coeff": "1", "monomial": ["x", "y"]}]},
                       {"generator": "w", "value": [{"coeff": "1", "monomial": ["z", "t"]}]}]})");
    CHECK(run({"cohomology", "--input", notd}).code == cli::InvalidInput);
    CHECK(run({"cohomology", "--input", "/nonexistent/file.json"}).code == cli::InvalidInput);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == cli::Usage);
    CHECK(run({"cohomology", "--bogus"}).code == cli::Usage);
    CHECK(run({"cohomology"}).code == cli::Usage);
    CHECK(run({"cohomology", "--preset", "heisenberg:1", "--format", "xml"}).code == cli::Usage);
    CHECK(run({"cohomology", "--preset", "heisenberg:1", "--input", "x.json"}).code == cli::Usage);
    CHECK(run({"cohomology", "--preset", "nope"}).code == cli::InvalidInput);
    CHECK(run({"--help"}).code == cli::Success);
}

TEST_CASE("resonance command") {
    auto j = run_json({"resonance", "--preset", "heisenberg:2", "--q", "2", "--point", "x1"});
    CHECK(j["resonance"]["point"]["member"] == true);
    j = run_json({"resonance", "--preset", "example_initial", "--q", "1", "--decide"});
    CHECK(j["resonance"]["decision"]["verdict"] == "CertifiedTrivial");
    j = run_json({"resonance", "--preset", "heisenberg:1", "--q", "1", "--decide"});
    CHECK(j["resonance"]["decision"]["verdict"] == "Witness");
    CHECK(j["resonance"]["decision"]["witness"] == "x1");
    j = run_json({"resonance", "--preset", "heisenberg:2", "--q", "2", "--decide"});
    CHECK(j["resonance"]["decision"]["notice"].get<std::string>().find("sampling-only") == 0);
    CHECK(run({"resonance", "--preset", "heisenberg:2", "--point", "x1*y1"}).code == cli::InvalidInput);
}

TEST_CASE("formality command") {
    auto j = run_json({"formality", "--preset", "heisenberg:3", "--k-max", "4"});
    const auto& v = j["formality"]["verdicts"];
    CHECK(v[2]["verdict"] == "CertifiedKFormal");
    CHECK(v[3]["verdict"] == "CertifiedNotKFormal");
    j = run_json({"formality", "--preset", "heisenberg_type:2,5", "--k-max", "3"});
    CHECK(j["formality"]["best_formal"] == 1);
    CHECK(j["formality"]["least_not_formal"] == 2);
    j = run_json({"formality", "--preset", "example_contr:p=y1*y2", "--k-max", "1"});
    CHECK(j["formality"]["verdicts"][1]["verdict"] == "CertifiedNotKFormal");
    bool solver = false;
    for (const auto& e : j["formality"]["evidence"])
        if (e["rule"] == "morphism-solver" && e["direction"] == "not formal") solver = true;
    CHECK(solver);
    j = run_json({"formality", "--preset", "example_contr", "--k-max", "1", "--complement", "omega1,omega2,alpha"});
    CHECK(j["formality"]["verdicts"][1]["verdict"] == "CertifiedKFormal");
    CHECK(run({"formality", "--preset", "example_contr", "--complement", "x1"}).code == cli::InvalidInput);
}

TEST_CASE("preset list") {
    const auto r = run({"preset", "list"});
    CHECK(r.code == 0);
    CHECK(r.out.find("heisenberg_type:M,N") != std::string::npos);
    CHECK(run_json({"preset", "list"})["presets"].size() == 5);
}

TEST_CASE("output is deterministic") {
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"cohomology", "--preset", "example_initial", "--representatives", "--format", "json"},
             {"resonance", "--preset", "heisenberg:3", "--q", "3", "--decide", "--seed", "5", "--format", "json"},
             {"formality", "--preset", "example_contr:p=y1*y2", "--k-max", "2", "--format", "json"}}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}
