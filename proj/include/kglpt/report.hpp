#pragma once

// Run descriptions and report assembly behind the command-line tool.

#include <string>
#include <vector>

#include <json.hpp>

namespace kglpt {

enum class Command
{
    Corrections,
    Table1,
    Table2,
    Numerov,
    ExactSwave,
    CriticalLambda,
};

enum class OutputFormat
{
    Text,
    Csv,
    Json,
};

Command parse_command(const std::string& name);
std::string to_string(Command c);
OutputFormat parse_format(const std::string& name);

struct RunSpec
{
    Command command = Command::Corrections;
    double a = 1.0;
    double b = 1.0;
    double lambda = 0.05;
    int n = 0;
    int l = 0;
    double m = 1.0;
    int order = 10;
    int order_cap = 30;
    OutputFormat format = OutputFormat::Text;
    std::string out; // empty writes to stdout
    bool numerov = true;
    int grid_steps = 20000;
    double r_max = 0.0; // 0 lets the solver size the box
    double tol = 1e-13;

    void validate() const;
};

/// A rendered-ready result: a table for text/CSV and a JSON document.
struct Report
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes; // "key: value" lines printed under the text table
    nlohmann::ordered_json json;
};

Report run_corrections(const RunSpec& spec);
Report run_table(const RunSpec& spec);
Report run_numerov(const RunSpec& spec);
Report run_exact_swave(const RunSpec& spec);
Report run_critical_lambda(const RunSpec& spec);
Report run(const RunSpec& spec);

std::string render(const Report& report, OutputFormat format);

/// Fixed 10-decimal rendering, locale independent.
std::string format_fixed(double x, int decimals = 10);

} // namespace kglpt
