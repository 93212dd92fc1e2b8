#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lo/cli.hpp"
#include "lo/report.hpp"

using namespace lo;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
    Json json() const { return Json::parse(out); }
};

CliRun run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

// envelope required by the shipped report schema
void check_envelope(const Json& j) {
    REQUIRE(j.contains("command"));
    REQUIRE(j.at("command").is_array());
    REQUIRE(j.contains("config"));
    REQUIRE(j.at("config").is_object());
    REQUIRE(j.contains("results"));
    REQUIRE(j.contains("ratio_records"));
    REQUIRE(j.at("ratio_records").is_array());
    REQUIRE(j.contains("summary"));
    REQUIRE(j.at("summary").contains("pass"));
    // exact quantities in the config snapshot are strings, never floats
    CHECK(j.at("config").at("mu").is_string());
    CHECK(j.at("config").at("c0").is_string());
}

} // namespace

TEST_CASE("prob emits the exact value as strings") {
    CliRun r = run({"prob", "--instance", "ap", "--n", "10", "--mu", "1"});
    CHECK(r.code == 0);
    Json j = r.json();
    check_envelope(j);
    const Json& c = j.at("results").at("concentration");
    CHECK(c.at("value").get<std::string>() == "5/128");
    CHECK(c.at("numerator").is_string());
    CHECK(c.at("denominator").is_string());
}

TEST_CASE("usage errors exit 2") {
    CliRun r = run({"prob", "--no-such-flag"});
    CHECK(r.code == 2);
    CliRun r2 = run({"definitely-not-a-command"});
    CHECK(r2.code == 2);
    CliRun r3 = run({"prob", "--instance", "ap", "--n", "5", "--mu", "not-a-rational"});
    CHECK(r3.code == 2);
    CliRun r4 = run({"gap", "metrics", "--gap", "{broken json"});
    CHECK(r4.code == 2);
}

TEST_CASE("resource guards exit 3") {
    CliRun r = run({"dist", "--instance", "ap", "--n", "60", "--mu", "1", "--support-cap",
                    "10"});
    CHECK(r.code == 3);
    CHECK(r.err.find("resource guard") != std::string::npos);
}

TEST_CASE("precondition failures exit 1") {
    CliRun r = run({"inverse", "--instance", "dissociated", "--n", "20", "--mu", "1", "--k",
                    "4", "--c0", "100"});
    CHECK(r.code == 1);
    CHECK(r.err.find("precondition") != std::string::npos);
}

TEST_CASE("gap metrics and embed modes") {
    CliRun m = run({"gap", "metrics", "--gap", R"({"dims": ["2","1"], "steps": ["1","2"]})"});
    CHECK(m.code == 0);
    Json j = m.json();
    CHECK(j.at("results").at("volume").get<std::string>() == "15");
    CHECK(j.at("results").at("cardinality").get<std::size_t>() == 9);
    CHECK_FALSE(j.at("results").at("proper").get<bool>());

    CliRun e = run({"gap", "embed", "--gap", R"({"dims": ["2","1"], "steps": ["1","2"]})"});
    CHECK(e.code == 0);
    Json je = e.json();
    CHECK(je.at("results").at("rank_dropped").get<bool>());
    CHECK(je.at("results").at("gap").at("steps").size() == 1);
}

TEST_CASE("badness check mode") {
    CliRun r = run({"gap", "check", "--gap", R"({"dims": ["5"], "steps": ["5"]})", "--x",
                    "5", "--k", "5", "--K", "2"});
    CHECK(r.code == 0);
    CHECK_FALSE(r.json().at("results").at("bad").get<bool>());
}

TEST_CASE("generate and instance files round-trip") {
    CliRun g = run({"generate", "--instance", "dissociated", "--n", "4", "--mu", "1"});
    CHECK(g.code == 0);
    Json inst = g.json().at("results").at("instance");
    CHECK(inst.at("steps") == Json::array({"1", "2", "4", "8"}));

    const char* path = "/tmp/lo_test_instance.json";
    {
        std::ofstream f(path);
        f << inst.dump();
    }
    CliRun p = run({"prob", "--in", path});
    CHECK(p.code == 0);
    CHECK(p.json().at("results").at("concentration").at("value").get<std::string>() ==
          "1/16");
    std::remove(path);
}

TEST_CASE("instance files preserve arbitrary precision") {
    const char* path = "/tmp/lo_test_bigint.json";
    {
        std::ofstream f(path);
        f << R"({"steps": ["700000000000000000001"], "mu": "1"})";
    }
    CliRun p = run({"prob", "--in", path});
    CHECK(p.code == 0);
    Json j = p.json();
    const Json& c = j.at("results").at("concentration");
    CHECK(c.at("value").get<std::string>() == "1/2");
    CHECK(c.at("witnesses") ==
          Json::array({"-700000000000000000001", "700000000000000000001"}));
    std::remove(path);
}

TEST_CASE("trace files hold one record per step") {
    const char* path = "/tmp/lo_test_trace.jsonl";
    CliRun r = run({"inverse", "--instance", "all_equal", "--n", "100", "--value", "5",
                    "--mu", "1/2", "--k", "5", "--K", "2", "--c0", "1", "--trace", path});
    CHECK(r.code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    std::string line;
    std::size_t lines = 0;
    while (std::getline(f, line)) {
        Json step = Json::parse(line);
        CHECK(step.contains("rank"));
        CHECK(step.at("potential").is_string());
        ++lines;
    }
    CHECK(lines == r.json().at("results").at("inverse").at("trace").size());
    std::remove(path);
}

TEST_CASE("config files provide defaults that flags override") {
    const char* path = "/tmp/lo_test_config.toml";
    {
        std::ofstream f(path);
        f << "[inverse]\nk = 5\nK = 2\nc0 = 1\nmu = \"1/2\"\n";
    }
    CliRun r = run({"--config", path, "inverse", "--instance", "all_equal", "--n", "100",
                    "--value", "5"});
    CHECK(r.code == 0);
    Json j = r.json();
    CHECK(j.at("config").at("k").get<long>() == 5);
    CHECK(j.at("config").at("K").get<std::string>() == "2");

    // a flag beats the file
    CliRun r2 = run({"--config", path, "inverse", "--instance", "all_equal", "--n", "100",
                     "--value", "5", "--k", "6"});
    CHECK(r2.code == 0);
    CHECK(r2.json().at("config").at("k").get<long>() == 6);
    std::remove(path);
}

TEST_CASE("generate writes bare instance files on request") {
    const char* path = "/tmp/lo_test_gen_out.json";
    CliRun g = run({"generate", "--instance", "ap", "--n", "3", "--mu", "1/3",
                    "--instance-out", path});
    CHECK(g.code == 0);
    std::ifstream f(path);
    REQUIRE(f.good());
    Json inst = Json::parse(f);
    CHECK(inst.at("steps") == Json::array({"1", "2", "3"}));
    CHECK(inst.at("mu").get<std::string>() == "1/3");
    std::remove(path);
}

TEST_CASE("environment guard override") {
    setenv("LO_GUARD", "50", 1);
    CliRun r = run({"gap", "metrics", "--gap", R"({"dims": ["100"], "steps": ["1"]})"});
    unsetenv("LO_GUARD");
    CHECK(r.code == 3);  // 201 points against a guard of 50
    // and without the override the same literal is fine
    CliRun ok = run({"gap", "metrics", "--gap", R"({"dims": ["100"], "steps": ["1"]})"});
    CHECK(ok.code == 0);
}

TEST_CASE("verify subcommand reports suite outcomes") {
    CliRun r = run({"verify", "dichotomy"});
    CHECK(r.code == 0);
    Json j = r.json();
    CHECK(j.at("results").at("suite").get<std::string>() == "dichotomy");
    CHECK(j.at("results").at("pass").get<bool>());
    check_envelope(j);
}

namespace {

// minimal structural validation against the shipped schema: required keys at
// the envelope level and the string patterns for exact quantities
void check_against_schema(const Json& report, const Json& schema) {
    for (const auto& key : schema.at("required"))
        REQUIRE(report.contains(key.get<std::string>()));
    for (const auto& key : schema.at("properties").at("summary").at("required"))
        REQUIRE(report.at("summary").contains(key.get<std::string>()));
    auto is_rational = [](const Json& v) {
        if (!v.is_string()) return false;
        const std::string s = v.get<std::string>();
        std::size_t i = (!s.empty() && s[0] == '-') ? 1 : 0;
        bool digits = false, slash_seen = false;
        for (; i < s.size(); ++i) {
            if (s[i] == '/' && digits && !slash_seen) {
                slash_seen = true;
                digits = false;
            } else if (s[i] >= '0' && s[i] <= '9') {
                digits = true;
            } else {
                return false;
            }
        }
        return digits;
    };
    for (const char* key : {"mu", "eps", "K", "c0", "slack"})
        CHECK(is_rational(report.at("config").at(key)));
    for (const auto& rec : report.at("ratio_records")) {
        CHECK(is_rational(rec.at("lhs")));
        CHECK(is_rational(rec.at("rhs")));
        CHECK(is_rational(rec.at("ratio")));
    }
}

} // namespace

TEST_CASE("reports validate against the shipped schema") {
    std::ifstream schema_file(std::string(LO_SOURCE_DIR) + "/schema/report.schema.json");
    REQUIRE(schema_file.good());
    Json schema = Json::parse(schema_file);

    for (auto args : std::vector<std::vector<std::string>>{
             {"prob", "--instance", "ap", "--n", "12", "--mu", "1"},
             {"dist", "--instance", "dissociated", "--n", "5", "--mu", "1/2"},
             {"verify", "comparison"},
             {"verify", "dichotomy"},
             {"sweep", "classical", "--n-from", "10", "--n-to", "14"},
             {"inverse", "--instance", "all_equal", "--n", "100", "--value", "5", "--mu",
              "1/2", "--k", "5", "--K", "2", "--c0", "1"},
             {"strong-inverse", "--instance", "all_equal", "--n", "100", "--value", "5",
              "--mu", "1", "--A", "3/5", "--s-eps", "1/10", "--c0", "1"},
             {"generate", "--instance", "ap", "--n", "6", "--mu", "1"},
             {"gap", "metrics", "--gap", R"({"dims": ["3"], "steps": ["2"]})"}}) {
        CliRun r = run(args);
        REQUIRE(r.code == 0);
        check_against_schema(r.json(), schema);
    }
}

TEST_CASE("sweep emits ratio records") {
    CliRun r = run({"sweep", "comparison", "--n-from", "10", "--n-to", "20"});
    CHECK(r.code == 0);
    Json j = r.json();
    CHECK(j.at("ratio_records").size() == 11);
    for (const auto& rec : j.at("ratio_records")) {
        CHECK(rec.at("lhs").is_string());
        CHECK(rec.at("ratio").is_string());
    }
}
