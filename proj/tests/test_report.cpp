#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "kglpt/error.hpp"
#include "kglpt/report.hpp"

using namespace kglpt;

namespace {

struct Process
{
    int status = -1;
    std::string out;
};

Process run_cli(const std::string& args)
{
    const std::string cmd = std::string(KGLPT_CLI_PATH) + " " + args + " 2>/dev/null";
    Process p;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) {
        p.out.append(buf, got);
    }
    const int raw = pclose(pipe);
    p.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return p;
}

RunSpec spec_for(Command c)
{
    RunSpec s;
    s.command = c;
    return s;
}

} // namespace

TEST_CASE("command and format names")
{
    for (const auto c : {Command::Corrections, Command::Table1, Command::Table2, Command::Numerov,
                         Command::ExactSwave, Command::CriticalLambda}) {
        CHECK(parse_command(to_string(c)) == c);
    }
    CHECK_THROWS_AS(parse_command("table3"), Error);
    CHECK(parse_format("csv") == OutputFormat::Csv);
    CHECK_THROWS_AS(parse_format("xml"), Error);
}

TEST_CASE("RunSpec validation")
{
    RunSpec s;
    CHECK_NOTHROW(s.validate());
    s.order = 31;
    CHECK_THROWS_AS(s.validate(), Error);
    s.order = -1;
    CHECK_THROWS_AS(s.validate(), Error);
    s = RunSpec{};
    s.lambda = 0;
    CHECK_THROWS_AS(s.validate(), Error);
    s = RunSpec{};
    s.m = -1;
    CHECK_THROWS_AS(s.validate(), Error);
    s = RunSpec{};
    s.grid_steps = 3;
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("fixed formatting")
{
    CHECK(format_fixed(0.8424544828) == "0.8424544828");
    CHECK(format_fixed(-1e-14) == "0.0000000000");
    CHECK(format_fixed(-0.5, 3) == "-0.500");
    CHECK(format_fixed(2.0, 2) == "2.00");
}

TEST_CASE("corrections report")
{
    auto s = spec_for(Command::Corrections);
    s.l = 1;
    s.n = 1;
    s.order = 5;
    s.numerov = false;
    const auto r = run_corrections(s);
    REQUIRE(r.rows.size() == 6);
    CHECK(r.rows[0][1] == "0.8000000000");
    CHECK(r.rows[1][2] == "0.8450000000");
    CHECK(r.json["partial_sums"].size() == 6);
    CHECK(r.json.contains("stabilized"));
    CHECK_FALSE(r.json.contains("reference"));

    s.order = 0;
    const auto r0 = run_corrections(s);
    CHECK(r0.rows.size() == 1);
    CHECK_FALSE(r0.json.contains("stabilized"));
}

TEST_CASE("corrections report with a numerical reference")
{
    auto s = spec_for(Command::Corrections);
    s.l = 1;
    s.n = 1;
    const auto r = run_corrections(s);
    REQUIRE(r.json.contains("reference"));
    CHECK(std::abs(r.json["reference"].get<double>() - 0.8424544828) < 1e-9);
    CHECK(r.json["error_pct"].get<double>() < 1e-6);
}

TEST_CASE("second table reproduces the printed columns")
{
    const auto r = run_table(spec_for(Command::Table2));
    CHECK(r.header.size() == 7);
    CHECK(r.rows.size() == 13);
    CHECK(r.json["columns"].size() == 6);
    CHECK(r.json["max_deviation"].get<double>() < 5e-9);
    for (const auto& col : r.json["columns"]) {
        CHECK(col.contains("label"));
        CHECK(col["partial_sums"].size() == 11);
        CHECK(col["printed"]["partial_sums"].size() == 11);
    }
}

TEST_CASE("first table with and without the numerical column")
{
    auto s = spec_for(Command::Table1);
    const auto full = run_table(s);
    CHECK(full.header.size() == 7);
    CHECK(full.rows.size() == 12);
    CHECK(full.rows.back()[0] == "max_dev");
    CHECK(full.json["rows"].size() == 11);
    for (const auto& [key, value] : full.json["max_deviation"].items()) {
        INFO(key);
        CHECK(value.get<double>() < (key.starts_with("eps_") ? 2e-5 : 5e-9));
    }

    s.numerov = false;
    const auto bare = run_table(s);
    CHECK(bare.header.size() == 4);
    CHECK(bare.json["max_deviation"].size() == 3);
}

TEST_CASE("numerov report")
{
    auto s = spec_for(Command::Numerov);
    s.a = 0;
    s.b = 1;
    s.n = 2;
    s.l = 1;
    const auto r = run_numerov(s);
    CHECK(std::abs(r.json["numerov"]["energy"].get<double>() - 0.9916177295) < 5e-10);
    CHECK(r.json["numerov"]["nodes"] == 2);
}

TEST_CASE("exact s-wave report")
{
    auto s = spec_for(Command::ExactSwave);
    const auto r = run_exact_swave(s);
    CHECK(r.json.contains("exact"));
    CHECK(r.json["critical_lambda"].get<double>() == doctest::Approx(2 / (std::sqrt(2.0) - 1)));
    CHECK(std::abs(r.json["exact"]["energy"].get<double>() - r.json["numerov"]["energy"].get<double>()) < 1e-8);
    s.l = 1;
    CHECK_THROWS_AS(run_exact_swave(s), Error);
}

TEST_CASE("critical screening report")
{
    const auto r = run_critical_lambda(spec_for(Command::CriticalLambda));
    CHECK(r.json["critical_lambda"].get<double>() == doctest::Approx(4.828427124746));
    CHECK(r.json["corrections"].empty());
}

TEST_CASE("rendering")
{
    Report r;
    r.header = {"k", "value"};
    r.rows = {{"0", "1.5"}, {"10", "a,b"}};
    r.notes = {"note: x"};
    r.json = nlohmann::ordered_json{{"k", 1}};
    CHECK(render(r, OutputFormat::Csv) == "k,value\n0,1.5\n10,\"a,b\"\n# note: x\n");
    CHECK(render(r, OutputFormat::Text) == " k  value\n 0    1.5\n10    a,b\n\nnote: x\n");
    CHECK(render(r, OutputFormat::Json) == "{\n  \"k\": 1\n}\n");
}

TEST_CASE("command line exit codes")
{
    CHECK(run_cli("corrections -l 1 -n 1 -K 5 --no-numerov").status == 0);
    CHECK(run_cli("corrections -a 2 -b 0 -l 0").status == 2);
    CHECK(run_cli("corrections -K 31").status == 2);
    CHECK(run_cli("").status == 2);
    CHECK(run_cli("corrections --format yaml").status == 2);
    CHECK(run_cli("numerov -l 0 --lambda 4.5").status == 3);
    CHECK(run_cli("--help").status == 0);
}

TEST_CASE("command line output is reproducible")
{
    const std::string args = "corrections -a 1 -b 1 --lambda 0.05 -n 1 -l 1 -K 10";
    for (const char* format : {"json", "csv", "text"}) {
        const auto first = run_cli(args + " --format " + format);
        const auto second = run_cli(args + " --format " + format);
        CHECK(first.status == 0);
        CHECK(first.out == second.out);
        CHECK_FALSE(first.out.empty());
    }
    const auto csv = run_cli(args + " --format csv");
    CHECK(csv.out.starts_with("k,E_k,S_k\n0,0.8000000000,0.8000000000\n"));
    const auto json = nlohmann::json::parse(run_cli(args + " --format json").out);
    CHECK(json["command"] == "corrections");
    CHECK(json["params"]["K"] == 10);
    CHECK(json["corrections"].size() == 11);
}

TEST_CASE("command line writes to a file")
{
    const auto path = std::filesystem::temp_directory_path() / "kglpt_report_test.json";
    std::filesystem::remove(path);
    const auto p = run_cli("critical-lambda --format json --out " + path.string());
    CHECK(p.status == 0);
    CHECK(p.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(nlohmann::json::parse(buf.str())["critical_lambda"].get<double>() == doctest::Approx(4.828427124746));
    std::filesystem::remove(path);
    CHECK(run_cli("critical-lambda --out /nonexistent-dir/x.json").status == 1);
}
