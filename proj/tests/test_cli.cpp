#include "causa/cli.hpp"

#include "support/fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Scratch {
    fs::path dir;

    Scratch()
    {
        std::random_device rd;
        dir = fs::temp_directory_path() / ("causa_cli_" + std::to_string(rd()));
        fs::create_directories(dir);
    }
    ~Scratch() { fs::remove_all(dir); }

    std::string write(const std::string& name, const std::string& text) const
    {
        const fs::path p = dir / name;
        std::ofstream(p, std::ios::binary) << text;
        return p.string();
    }
};

struct Outcome {
    int status;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int status = causa::cli::run(args, out, err);
    return {status, out.str(), err.str()};
}

constexpr const char* kOverlapJson = R"({
  "variables": [{"name": "x", "owner": "A"}],
  "components": [
    {"name": "A", "inputs": [], "outputs": ["x"],
     "spec": {"states": ["ok"], "initial": "ok", "bad": [],
              "edges": [{"from": "ok", "guard": "true", "to": "ok"}]}},
    {"name": "B", "inputs": [], "outputs": ["x"],
     "spec": {"states": ["ok"], "initial": "ok", "bad": [],
              "edges": [{"from": "ok", "guard": "true", "to": "ok"}]}}
  ],
  "global_spec": {"states": ["ok"], "initial": "ok", "bad": [],
                  "edges": [{"from": "ok", "guard": "true", "to": "ok"}]}
}
)";

} // namespace

TEST_CASE("validate exit codes")
{
    Scratch s;
    const auto good = s.write("ab.json", causa::testing::kFixtureAbJson);
    CHECK(invoke({"validate", good}).status == causa::cli::kOk);

    const auto overlap = invoke({"validate", s.write("overlap.json", kOverlapJson)});
    CHECK(overlap.status == causa::cli::kInvalid);
    CHECK(overlap.err.find("OutputOverlap") != std::string::npos);

    std::string broken = causa::testing::kFixtureAbJson;
    broken.replace(broken.find("\"!y\""), 4, "\"y &\"");
    const auto bad_guard = invoke({"validate", s.write("broken.json", broken)});
    CHECK(bad_guard.status == causa::cli::kUsage);
    CHECK(bad_guard.err.find("ParseError at 12:") != std::string::npos);

    const auto json = invoke({"validate", "--json", s.write("broken2.json", broken)});
    CHECK(json.status == causa::cli::kUsage);
    const auto doc = nlohmann::json::parse(json.out);
    CHECK(doc["valid"] == false);
    CHECK(doc["diagnostics"][0]["rule"] == "ParseError");
    CHECK(doc["diagnostics"][0]["line"] == 12);

    CHECK(invoke({"validate", (s.dir / "missing.json").string()}).status == causa::cli::kUsage);
    CHECK(invoke({"frobnicate"}).status == causa::cli::kUsage);
}

TEST_CASE("analyze exit codes")
{
    Scratch s;
    const auto sys = s.write("ab.json", causa::testing::kFixtureAbJson);
    const auto err_trace = s.write("err.trace", "# observed\nx=1 y=1\n");
    const auto ok_trace = s.write("ok.trace", "x=1 y=0\n");

    const auto found = invoke({"analyze", sys, err_trace});
    CHECK(found.status == causa::cli::kOk);
    CHECK(found.out.find("{B}") != std::string::npos);

    CHECK(invoke({"analyze", sys, ok_trace}).status == causa::cli::kNotAnError);
    const auto not_error = invoke({"analyze", "--json", sys, ok_trace});
    CHECK(not_error.status == causa::cli::kNotAnError);
    CHECK(nlohmann::json::parse(not_error.out)["error"]["kind"] == "NotAnErrorTrace");

    const auto none =
        invoke({"analyze", "--mode", "mitigation", "--cf", "A=observed", "--cf", "B=observed", sys, err_trace});
    CHECK(none.status == causa::cli::kNoCause);

    CHECK(invoke({"analyze", sys, err_trace, "--model", "Z=observed"}).status == causa::cli::kUsage);
    CHECK(invoke({"analyze", sys, err_trace, "--model", "A=bogus"}).status == causa::cli::kUsage);
    CHECK(invoke({"analyze", sys, err_trace, "--horizon", "5"}).status == causa::cli::kUsage);
    CHECK(invoke({"analyze", sys, s.write("undeclared.trace", "x=1 y=1 z=0\n")}).status == causa::cli::kUsage);
}

TEST_CASE("analyze json report")
{
    Scratch s;
    const auto sys = s.write("ab.json", causa::testing::kFixtureAbJson);
    const auto tr = s.write("err.trace", "x=1 y=1\n");
    const auto r = invoke({"analyze", "--json", "--quantifier", "universal", "--model", "A=observed", sys, tr});
    REQUIRE(r.status == causa::cli::kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["violation"]["global_violation_index"] == 0);
    REQUIRE(doc["analyses"].size() == 2);
    for (const auto& a : doc["analyses"]) {
        CHECK(a["minimal"] == nlohmann::json::parse(R"([["B"]])"));
        CHECK(a["assignment"]["A"]["fault"] == "observed");
    }
    CHECK(doc["analyses"][1]["quantifier"] == "universal");

    const auto minimal = invoke({"analyze", "--json", "--minimal-only", "--mode", "mitigation", sys, tr});
    const auto mdoc = nlohmann::json::parse(minimal.out);
    REQUIRE(mdoc["analyses"].size() == 1);
    CHECK(mdoc["analyses"][0]["all_satisfying"].is_null());
}

TEST_CASE("stats reports per-set work")
{
    Scratch s;
    const auto sys = s.write("ab.json", causa::testing::kFixtureAbJson);
    const auto tr = s.write("err.trace", "x=1 y=1\n");
    const auto r = invoke({"stats", "--json", "--mode", "mitigation", sys, tr});
    REQUIRE(r.status == causa::cli::kOk);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["components"] == 2);
    CHECK(doc["horizon"] == 1);
    const auto& a = doc["analyses"][0];
    CHECK(a["candidates"] == 2);
    CHECK(a["evaluated"].get<int>() + a["pruned"].get<int>() == a["subsets_total"].get<int>());
    for (const auto& e : a["evaluations"])
        CHECK(e["states"].get<int>() <= e["state_bound"].get<int>());

    const auto text = invoke({"stats", "--mode", "mitigation", sys, tr});
    CHECK(text.out.find("{A, B}") != std::string::npos);
}

TEST_CASE("repeated runs print identical bytes")
{
    Scratch s;
    const auto sys = s.write("ab.json", causa::testing::kFixtureAbJson);
    const auto tr = s.write("err.trace", "x=1 y=1\nx=0 y=1\n");
    for (bool json : {false, true}) {
        std::vector<std::string> args{"analyze", sys, tr};
        if (json)
            args.push_back("--json");
        const auto a = invoke(args);
        const auto b = invoke(args);
        CHECK(a.status == b.status);
        CHECK(a.out == b.out);
        CHECK(a.err == b.err);
    }
}
