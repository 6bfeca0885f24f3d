#include <admlab/cli/run.hpp>

#include "scenario_schema.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace admlab::cli;
namespace fs = std::filesystem;

namespace {

const fs::path bin = ADMLAB_BIN;
const fs::path scenarios = ADMLAB_SCENARIOS;

fs::path scratch(const std::string& name) {
    const auto p = fs::temp_directory_path() / ("admlab_cli_test_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct outcome {
    int code = -1;
    std::string err;
};

/// Run the CLI with stdout discarded and stderr captured.
outcome run_cli(const std::string& args, const fs::path& work, const std::string& env = "") {
    const auto err = work / "stderr.txt";
    const std::string cmd = "cd '" + work.string() + "' && " + env + " '" + bin.string() + "' " + args + " >/dev/null 2>'" +
                            err.string() + "'";
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

std::string scenario_arg(const std::string& name) { return "'" + (scenarios / (name + ".json")).string() + "'"; }

std::vector<std::vector<double>> read_csv(const fs::path& p) {
    std::ifstream is(p);
    std::string line;
    std::getline(is, line);
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(row);
    }
    return rows;
}

std::vector<schema_error> validate(const std::string& text) {
    return schema_validator(nlohmann::json::parse(scenario_schema)).validate(nlohmann::json::parse(text));
}

}  // namespace

TEST(Schema, ShippedScenariosAreValid) {
    for (const auto& e : fs::directory_iterator(scenarios)) {
        const auto errors = validate(slurp(e.path()));
        EXPECT_TRUE(errors.empty()) << e.path() << ": " << (errors.empty() ? "" : errors.front().pointer);
    }
}

TEST(Schema, ReportsPointerOfOffendingValue) {
    auto errors = validate(R"({"generator": {"kind": "ray", "count": 0}})");
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(errors[0].pointer, "/generator/count");

    errors = validate(R"({"generator": {"kind": "spiral"}})");
    ASSERT_FALSE(errors.empty());
    EXPECT_EQ(errors[0].pointer, "/generator/kind");

    errors = validate(R"({"generator": {"kind": "explicit", "eigenvalues": [-1, [1, 2, 3]]}})");
    ASSERT_FALSE(errors.empty());
    EXPECT_EQ(errors[0].pointer, "/generator/eigenvalues/1");

    errors = validate(R"({"bogus": 1})");
    ASSERT_FALSE(errors.empty());
    EXPECT_EQ(errors[0].pointer, "/bogus");
}

TEST(Schema, RejectsUnsupportedKeywords) {
    EXPECT_THROW(schema_validator(nlohmann::json::parse(R"({"pattern": "a+"})")), std::invalid_argument);
    EXPECT_THROW(schema_validator(nlohmann::json::parse(R"({"$ref": "#/definitions/none"})")), std::exception);
}

TEST(Schema, RequiredAndBounds) {
    const schema_validator v(nlohmann::json::parse(R"({
        "type": "object", "required": ["x"],
        "properties": {"x": {"type": "number", "minimum": 0, "exclusiveMaximum": 1},
                       "l": {"type": "array", "minItems": 1, "maxItems": 2, "items": {"type": "integer"}}}})"));
    EXPECT_TRUE(v.validate(nlohmann::json::parse(R"({"x": 0})")).empty());
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({})")).size(), 1u);
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({"x": 1})")).front().pointer, "/x");
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({"x": -1e-9})")).front().pointer, "/x");
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({"x": 0.5, "l": []})")).front().pointer, "/l");
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({"x": 0.5, "l": [1, 2.5]})")).front().pointer, "/l/1");
    EXPECT_EQ(v.validate(nlohmann::json::parse(R"({"x": 0.5, "l": [1, 2, 3]})")).front().pointer, "/l");
}

TEST(ParseJson, NamesKeyOfSyntaxError) {
    try {
        parse_json(R"({"generator": {"kind": "explicit", "eigenvalues": [-1, nan]}})");
        FAIL() << "no exception";
    } catch (const json_syntax_error& e) {
        EXPECT_EQ(e.key(), "/generator/eigenvalues/1");
        EXPECT_NE(std::string(e.what()).find("/generator/eigenvalues/1"), std::string::npos);
    }
    try {
        parse_json(R"({"a": 1, "b": {"c": [1, 2], "d": })");
        FAIL() << "no exception";
    } catch (const json_syntax_error& e) {
        EXPECT_EQ(e.key(), "/b/d");
    }
    EXPECT_EQ(parse_json(R"({"a": [1, {"b": 2}]})")["a"][1]["b"], 2);
}

TEST(ScenarioHash, KnownValuesAndKeyOrder) {
    EXPECT_EQ(fnv1a64(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
    const auto a = nlohmann::json::parse(R"({"x": 1, "y": [2, 3]})");
    const auto b = nlohmann::json::parse(R"({"y": [2, 3], "x": 1})");
    const auto c = nlohmann::json::parse(R"({"y": [2, 3], "x": 2})");
    EXPECT_EQ(scenario_hash(a), scenario_hash(b));
    EXPECT_NE(scenario_hash(a), scenario_hash(c));
    EXPECT_EQ(scenario_hash(a).rfind("fnv1a64:", 0), 0u);
    EXPECT_EQ(scenario_hash(a).size(), 8u + 16u);
}

TEST(PlotTable, EmptyTableIsHeaderOnly) {
    const auto dir = scratch("empty");
    report r;
    r.plots.push_back({"empty.csv", {"t [time]", "value [norm]"}, {}});
    emit_plotdata(r, dir);
    EXPECT_EQ(slurp(dir / "empty.csv"), "t [time],value [norm]\n");
}

TEST(PlotTable, RoundTripDigits) {
    plot_table t{"x.csv", {"a", "b"}, {}};
    t.add(0.1, std::size_t{3});
    EXPECT_EQ(t.render(), "a,b\n0.10000000000000001,3\n");
    EXPECT_EQ(std::stod(t.rows[0][0]), 0.1);
}

TEST(Binary, EveryScenarioRuns) {
    const std::vector<std::pair<std::string, std::string>> runs{
        {"orlicz-norm", "orlicz_norm"},   {"simulate", "simulate_random"},
        {"simulate", "simulate_counterexample"}, {"adm", "heat_adm"},
        {"adm", "columns_adm"},           {"adm", "full_diagonal_adm"},
        {"weiss", "weiss_ray"},           {"sqfct", "sqfct_ray"},
        {"counterexample", "counterexample"}, {"iss", "iss_heat"},
        {"iiss", "iiss_heat"},            {"shift-demo", "shift_demo"},
        {"probe-boundedness", "probe_boundedness"}};
    const auto work = scratch("all");
    for (const auto& [cmd, name] : runs) {
        const auto r = run_cli(cmd + " --quiet --scenario " + scenario_arg(name) + " --out " + name, work);
        EXPECT_EQ(r.code, 0) << cmd << " " << name << ": " << r.err;
        const auto doc = nlohmann::json::parse(slurp(work / name / (cmd + ".json")));
        EXPECT_EQ(doc["command"], cmd);
        EXPECT_EQ(doc["exit_code"], 0);
        EXPECT_EQ(doc["scenario_hash"], scenario_hash(nlohmann::json::parse(slurp(scenarios / (name + ".json")))));
    }
}

TEST(Binary, SameSeedIsByteIdentical) {
    const auto work = scratch("seed");
    ASSERT_EQ(run_cli("simulate --quiet --scenario " + scenario_arg("simulate_random") + " --out a", work).code, 0);
    ASSERT_EQ(run_cli("simulate --quiet --scenario " + scenario_arg("simulate_random") + " --out b", work).code, 0);
    ASSERT_EQ(run_cli("simulate --quiet --seed 43 --scenario " + scenario_arg("simulate_random") + " --out c", work).code, 0);
    for (const auto* f : {"simulate.json", "trajectory.csv", "signal.csv"}) {
        EXPECT_EQ(slurp(work / "a" / f), slurp(work / "b" / f)) << f;
    }
    EXPECT_NE(slurp(work / "a" / "signal.csv"), slurp(work / "c" / "signal.csv"));
    EXPECT_EQ(nlohmann::json::parse(slurp(work / "c" / "simulate.json"))["seed"], 43);
}

TEST(Binary, CounterexampleGrowsStrictly) {
    const auto work = scratch("ce");
    ASSERT_EQ(run_cli("counterexample --quiet --scenario " + scenario_arg("counterexample") + " --out o", work).code, 0);
    const auto rows = read_csv(work / "o" / "counterexample.csv");
    ASSERT_EQ(rows.size(), 4u);
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_GT(rows[i][1], rows[i - 1][1]);
    for (const auto& r : rows) {
        EXPECT_NEAR(r[1], r[2], 1e-12 * r[2]);
        EXPECT_EQ(r[3], 1.0);
    }
}

TEST(Binary, ZeroClassMonotoneInTime) {
    const auto work = scratch("zc");
    for (const auto* name : {"heat_adm", "full_diagonal_adm"}) {
        ASSERT_EQ(run_cli("adm --quiet --scenario " + scenario_arg(name) + " --out " + name, work).code, 0) << name;
        const auto rows = read_csv(work / name / "zero_class.csv");
        ASSERT_GE(rows.size(), 2u);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            EXPECT_GT(rows[i][0], rows[i - 1][0]);
            EXPECT_GE(rows[i][1], rows[i - 1][1]) << name << " row " << i;
        }
    }
}

TEST(Binary, MalformedJsonNamesKey) {
    const auto work = scratch("bad");
    std::ofstream(work / "bad.json") << R"({"generator": {"kind": "explicit", "eigenvalues": [-1, nan]}})";
    const auto r = run_cli("weiss --scenario bad.json --out o", work);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("/generator/eigenvalues/1"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(work / "o" / "weiss.json"));
}

TEST(Binary, SchemaViolationNamesPointer) {
    const auto work = scratch("schema");
    std::ofstream(work / "s.json") << R"({"generator": {"kind": "ray", "base": 1, "exponent": 1, "angle": 0, "count": 0}})";
    const auto r = run_cli("weiss --scenario s.json --out o", work);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("/generator/count"), std::string::npos) << r.err;
}

TEST(Binary, MissingSeedIsConfigError) {
    const auto work = scratch("noseed");
    auto doc = nlohmann::json::parse(slurp(scenarios / "simulate_random.json"));
    doc.erase("seed");
    std::ofstream(work / "s.json") << doc.dump();
    auto r = run_cli("simulate --scenario s.json --out o", work);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("/seed"), std::string::npos) << r.err;
    r = run_cli("simulate --quiet --seed 1 --scenario s.json --out o", work);
    EXPECT_EQ(r.code, 0) << r.err;
}

TEST(Binary, UnknownCommandAndMissingFile) {
    const auto work = scratch("unknown");
    EXPECT_EQ(run_cli("frobnicate --scenario " + scenario_arg("heat_adm"), work).code, 1);
    EXPECT_EQ(run_cli("adm --scenario nowhere.json", work).code, 1);
    EXPECT_EQ(run_cli("adm", work).code, 1);
}

TEST(Binary, UndersizedIssBoundWritesViolation) {
    const auto work = scratch("iss");
    const auto r = run_cli("iss --quiet --scenario " + scenario_arg("iss_undersized") + " --out o", work);
    EXPECT_EQ(r.code, 2);
    ASSERT_TRUE(fs::exists(work / "o" / "violation.json"));
    const auto v = nlohmann::json::parse(slurp(work / "o" / "violation.json"));
    EXPECT_GT(v["lhs"].get<double>(), v["rhs"].get<double>());
    EXPECT_TRUE(fs::exists(work / "o" / v["input_csv"].get<std::string>()));
    EXPECT_EQ(nlohmann::json::parse(slurp(work / "o" / "iss.json"))["exit_code"], 2);
}

TEST(Binary, OutputDirectoryPrecedence) {
    const auto work = scratch("outdir");
    const std::string args = "probe-boundedness --quiet --scenario " + scenario_arg("probe_boundedness");
    ASSERT_EQ(run_cli(args, work, "ADMLAB_OUT=env").code, 0);
    EXPECT_TRUE(fs::exists(work / "env" / "probe.csv"));
    ASSERT_EQ(run_cli(args + " --out flag", work, "ADMLAB_OUT=env2").code, 0);
    EXPECT_TRUE(fs::exists(work / "flag" / "probe.csv"));
    EXPECT_FALSE(fs::exists(work / "env2"));
    ASSERT_EQ(run_cli(args, work, "ADMLAB_OUT=").code, 0);
    EXPECT_TRUE(fs::exists(work / "admlab-out" / "probe.csv"));
}

TEST(Binary, ModesOverride) {
    const auto work = scratch("modes");
    ASSERT_EQ(run_cli("adm --quiet --modes 8 --scenario " + scenario_arg("heat_adm") + " --out o", work).code, 0);
    EXPECT_EQ(nlohmann::json::parse(slurp(work / "o" / "adm.json"))["modes_override"], 8);
    EXPECT_EQ(run_cli("adm --quiet --modes 0 --scenario " + scenario_arg("heat_adm") + " --out o", work).code, 1);
}
