#include "kglpt/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <optional>
#include <sstream>

#include "kglpt/closed_forms.hpp"
#include "kglpt/error.hpp"
#include "kglpt/numerov.hpp"
#include "kglpt/perturbation.hpp"
#include "kglpt/potentials.hpp"
#include "kglpt/reference_tables.hpp"
#include "kglpt/summation.hpp"

namespace kglpt {

using ojson = nlohmann::ordered_json;

namespace {

struct CommandName
{
    Command command;
    const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Corrections, "corrections"}, {Command::Table1, "table1"},
    {Command::Table2, "table2"},           {Command::Numerov, "numerov"},
    {Command::ExactSwave, "exact-swave"},  {Command::CriticalLambda, "critical-lambda"},
};

constexpr int kTable1Order = 5;
constexpr int kTable2Order = 10;

void require(bool ok, const std::string& what)
{
    if (!ok) {
        throw Error(ErrorKind::InvalidArgument, what);
    }
}

struct Perturbative
{
    PartialSumSequence seq;
    std::optional<StabilizedEstimate> stabilized;
};

Perturbative perturbative(const HulthenParams& p, const QuantumState& s, int order)
{
    const auto exp = energy_corrections(s, hulthen_series(p, required_series_order(order)), order);
    Perturbative out{partial_sums(exp), std::nullopt};
    if (order >= 2) {
        out.stabilized = stabilized_estimate(out.seq);
    }
    return out;
}

NumerovConfig numerov_config(const RunSpec& spec)
{
    NumerovConfig cfg;
    cfg.steps = spec.grid_steps;
    cfg.r_max = spec.r_max;
    cfg.energy_tol = spec.tol;
    return cfg;
}

EnergyBracket full_window(double m)
{
    return {-m * (1 - 1e-12), m * (1 - 1e-7)};
}

// Positive-energy search from a quarter mass below the estimate up to threshold; the
// node count is not monotone across E = 0 once a scalar coupling is present.
EnergyBracket search_window(double estimate, double m)
{
    const auto w = full_window(m);
    return {std::clamp(estimate - 0.25 * m, w.lower, w.upper), w.upper};
}

EnergyBracket window_around(double e, double m)
{
    const auto w = full_window(m);
    return {std::max(e - 0.02 * m, w.lower), std::min(e + 0.02 * m, w.upper)};
}

ojson params_json(double a, double b, double lambda, int n, int l, double m, int order)
{
    return ojson{{"a", a}, {"b", b}, {"lambda", lambda}, {"n", n}, {"l", l}, {"m", m}, {"K", order}};
}

ojson params_json(const RunSpec& s)
{
    return params_json(s.a, s.b, s.lambda, s.n, s.l, s.m, s.order);
}

ojson run_json(ojson params, const PartialSumSequence& seq, const std::optional<StabilizedEstimate>& st,
               std::optional<double> reference)
{
    ojson j;
    j["params"] = std::move(params);
    j["corrections"] = seq.corrections;
    j["partial_sums"] = seq.sums;
    if (st) {
        j["stabilized"] = ojson{{"value", st->value}, {"index", st->index}};
    }
    if (reference) {
        j["reference"] = *reference;
        j["error_pct"] = percent_error(seq.sums.back(), *reference);
    }
    return j;
}

std::string fx(double x)
{
    return format_fixed(x);
}

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

} // namespace

Command parse_command(const std::string& name)
{
    for (const auto& c : kCommands) {
        if (name == c.name) {
            return c.command;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown command '" + name + "'");
}

std::string to_string(Command c)
{
    for (const auto& k : kCommands) {
        if (k.command == c) {
            return k.name;
        }
    }
    return "unknown";
}

OutputFormat parse_format(const std::string& name)
{
    if (name == "text") {
        return OutputFormat::Text;
    }
    if (name == "csv") {
        return OutputFormat::Csv;
    }
    if (name == "json") {
        return OutputFormat::Json;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown format '" + name + "' (text, csv, json)");
}

void RunSpec::validate() const
{
    require(order_cap >= 0, "order cap must be non-negative");
    require(order >= 0, "order K must be non-negative");
    require(order <= order_cap, "order K = " + std::to_string(order) + " exceeds the cap " +
                                    std::to_string(order_cap));
    require(n >= 0, "n must be non-negative");
    require(l >= 0, "l must be non-negative");
    require(std::isfinite(m) && m > 0, "mass must be positive and finite");
    require(std::isfinite(a) && a >= 0, "a must be finite and >= 0");
    require(std::isfinite(b) && b >= 0, "b must be finite and >= 0");
    require(std::isfinite(lambda) && lambda > 0, "lambda must be positive and finite");
    require(grid_steps >= 1000, "grid steps must be >= 1000");
    require(std::isfinite(r_max) && r_max >= 0, "r_max must be >= 0 (0 = automatic)");
    require(std::isfinite(tol) && tol > 0, "tolerance must be positive");
}

std::string format_fixed(double x, int decimals)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::fixed, decimals);
    std::string s(buf, res.ptr);
    if (s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, s.front() == '-' ? 1 : 0); // no "-0.0000000000"
    }
    return s;
}

Report run_corrections(const RunSpec& spec)
{
    spec.validate();
    const HulthenParams p{spec.a, spec.b, spec.lambda};
    const QuantumState s{spec.n, spec.l, spec.m};
    const auto pt = perturbative(p, s, spec.order);

    std::optional<double> reference;
    RadialSolution sol;
    if (spec.numerov) {
        sol = solve_eigenvalue(hulthen_closed_form(p), s, search_window(pt.seq.sums.back(), spec.m),
                               numerov_config(spec));
        reference = sol.energy;
    }

    Report r;
    r.header = {"k", "E_k", "S_k"};
    for (int k = 0; k <= pt.seq.max_order(); ++k) {
        const auto i = static_cast<std::size_t>(k);
        r.rows.push_back({std::to_string(k), fx(pt.seq.corrections[i]), fx(pt.seq.sums[i])});
    }
    if (pt.stabilized) {
        r.notes.push_back("stabilized: " + fx(pt.stabilized->value) + " (k* = " +
                          std::to_string(pt.stabilized->index) + ")");
    }
    if (reference) {
        r.notes.push_back("numerov: " + fx(*reference) + " (" + std::to_string(sol.nodes) + " nodes)");
        r.notes.push_back("error_pct: " + fx(percent_error(pt.seq.sums.back(), *reference)));
    }

    r.json = ojson{{"command", to_string(spec.command)}};
    r.json.update(run_json(params_json(spec), pt.seq, pt.stabilized, reference));
    return r;
}

namespace {

struct Table2Column
{
    Perturbative pt;
    std::optional<double> e_num;
};

Report table2(const RunSpec& spec)
{
    using reference::kPartialSumColumns;
    const double lambda = reference::kPartialSumLambda;
    const int l = reference::kPartialSumL;

    std::vector<std::future<Table2Column>> jobs;
    for (const auto& c : kPartialSumColumns) {
        jobs.push_back(std::async(std::launch::async, [&spec, &c, lambda, l] {
            const HulthenParams p{c.a, c.b, lambda};
            const QuantumState s{c.n, l, spec.m};
            Table2Column col{perturbative(p, s, kTable2Order), std::nullopt};
            if (spec.numerov) {
                const double centre = col.pt.seq.sums.back();
                col.e_num = solve_eigenvalue(hulthen_closed_form(p), s, window_around(centre, spec.m),
                                             numerov_config(spec))
                                .energy;
            }
            return col;
        }));
    }
    std::vector<Table2Column> cols;
    for (auto& j : jobs) {
        cols.push_back(j.get());
    }

    Report r;
    r.header.push_back("k");
    for (const auto& c : kPartialSumColumns) {
        r.header.push_back(c.label);
    }
    for (int k = 0; k <= kTable2Order; ++k) {
        std::vector<std::string> row{std::to_string(k)};
        for (const auto& col : cols) {
            row.push_back(fx(col.pt.seq.sums[static_cast<std::size_t>(k)]));
        }
        r.rows.push_back(std::move(row));
    }
    if (spec.numerov) {
        std::vector<std::string> row{"E_num"};
        for (const auto& col : cols) {
            row.push_back(fx(*col.e_num));
        }
        r.rows.push_back(std::move(row));
    }

    std::vector<std::string> dev_row{"max_dev"};
    ojson columns = ojson::array();
    double overall = 0;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        const auto& ref = kPartialSumColumns[i];
        const auto& col = cols[i];
        double dev = 0;
        for (std::size_t k = 0; k < ref.sums.size(); ++k) {
            dev = std::max(dev, std::abs(col.pt.seq.sums[k] - ref.sums[k]));
        }
        if (col.e_num) {
            dev = std::max(dev, std::abs(*col.e_num - ref.e_num));
        }
        overall = std::max(overall, dev);
        dev_row.push_back(format_fixed(dev, 12));

        auto j = ojson{{"label", ref.label}};
        j.update(run_json(params_json(ref.a, ref.b, lambda, ref.n, l, spec.m, kTable2Order), col.pt.seq,
                          col.pt.stabilized, col.e_num));
        j["printed"] = ojson{{"partial_sums", ref.sums}, {"e_num", ref.e_num}};
        j["max_deviation"] = dev;
        columns.push_back(std::move(j));
    }
    r.rows.push_back(std::move(dev_row));
    r.notes.push_back("max_deviation: " + format_fixed(overall, 12));

    r.json = ojson{{"command", "table2"},
                   {"params", ojson{{"lambda", lambda}, {"l", l}, {"m", spec.m}, {"K", kTable2Order}}},
                   {"columns", std::move(columns)},
                   {"max_deviation", overall}};
    return r;
}

struct Table1Cell
{
    Perturbative pt;
    std::optional<double> e_num;
};

Report table1(const RunSpec& spec)
{
    using reference::kLambdaSweep;
    constexpr int n = 1;
    constexpr int l = 1;
    struct Coupling
    {
        const char* label;
        double a;
        double b;
    };
    constexpr Coupling couplings[] = {{"V", 1.0, 0.0}, {"W", 0.0, 1.0}, {"V+W", 1.0, 1.0}};

    std::vector<std::future<Table1Cell>> jobs;
    for (const auto& row : kLambdaSweep) {
        for (const auto& c : couplings) {
            jobs.push_back(std::async(std::launch::async, [&spec, &row, &c] {
                const HulthenParams p{c.a, c.b, row.lambda};
                const QuantumState s{n, l, spec.m};
                Table1Cell cell{perturbative(p, s, kTable1Order), std::nullopt};
                if (spec.numerov) {
                    cell.e_num = solve_eigenvalue(hulthen_closed_form(p), s,
                                                  window_around(cell.pt.seq.sums.back(), spec.m),
                                                  numerov_config(spec))
                                     .energy;
                }
                return cell;
            }));
        }
    }
    std::vector<Table1Cell> cells;
    for (auto& j : jobs) {
        cells.push_back(j.get());
    }

    Report r;
    r.header.push_back("lambda");
    for (const auto& c : couplings) {
        r.header.push_back(std::string("S5_") + c.label);
        if (spec.numerov) {
            r.header.push_back(std::string("eps_") + c.label);
        }
    }

    double dev_e[3] = {0, 0, 0};
    double dev_eps[3] = {0, 0, 0};
    ojson rows = ojson::array();
    for (std::size_t i = 0; i < kLambdaSweep.size(); ++i) {
        const auto& ref = kLambdaSweep[i];
        const double printed_e[3] = {ref.e_vector, ref.e_scalar, ref.e_mixed};
        const double printed_eps[3] = {ref.err_vector, ref.err_scalar, ref.err_mixed};
        std::vector<std::string> row{format_fixed(ref.lambda, 2)};
        ojson entries = ojson::array();
        for (std::size_t c = 0; c < 3; ++c) {
            const auto& cell = cells[i * 3 + c];
            const double s5 = cell.pt.seq.sums.back();
            row.push_back(fx(s5));
            dev_e[c] = std::max(dev_e[c], std::abs(s5 - printed_e[c]));
            if (cell.e_num) {
                const double eps = percent_error(s5, *cell.e_num);
                row.push_back(fx(eps));
                dev_eps[c] = std::max(dev_eps[c], std::abs(eps - printed_eps[c]));
            }
            auto j = ojson{{"label", couplings[c].label}};
            j.update(run_json(params_json(couplings[c].a, couplings[c].b, ref.lambda, n, l, spec.m, kTable1Order),
                              cell.pt.seq, cell.pt.stabilized, cell.e_num));
            j["printed"] = ojson{{"energy", printed_e[c]}, {"error_pct", printed_eps[c]}};
            entries.push_back(std::move(j));
        }
        r.rows.push_back(std::move(row));
        rows.push_back(ojson{{"lambda", ref.lambda}, {"entries", std::move(entries)}});
    }

    std::vector<std::string> dev_row{"max_dev"};
    ojson dev_json;
    for (std::size_t c = 0; c < 3; ++c) {
        dev_row.push_back(format_fixed(dev_e[c], 12));
        dev_json[std::string("S5_") + couplings[c].label] = dev_e[c];
        if (spec.numerov) {
            dev_row.push_back(format_fixed(dev_eps[c], 12));
            dev_json[std::string("eps_") + couplings[c].label] = dev_eps[c];
        }
    }
    r.rows.push_back(std::move(dev_row));

    r.json = ojson{{"command", "table1"},
                   {"params", ojson{{"n", n}, {"l", l}, {"m", spec.m}, {"K", kTable1Order}}},
                   {"rows", std::move(rows)},
                   {"max_deviation", std::move(dev_json)}};
    return r;
}

} // namespace

Report run_table(const RunSpec& spec)
{
    spec.validate();
    switch (spec.command) {
    case Command::Table1:
        return table1(spec);
    case Command::Table2:
        return table2(spec);
    default:
        throw Error(ErrorKind::InvalidArgument, "run_table needs the table1 or table2 command");
    }
}

Report run_numerov(const RunSpec& spec)
{
    spec.validate();
    const HulthenParams p{spec.a, spec.b, spec.lambda};
    const QuantumState s{spec.n, spec.l, spec.m};
    const auto pt = perturbative(p, s, spec.order);
    const auto cfg = numerov_config(spec);
    const auto sol = solve_eigenvalue(hulthen_closed_form(p), s, search_window(pt.seq.sums.back(), spec.m), cfg);

    Report r;
    r.header = {"quantity", "value"};
    r.rows = {
        {"energy", fx(sol.energy)},
        {"nodes", std::to_string(sol.nodes)},
        {"mismatch", fx(sol.mismatch)},
        {"match_radius", fx(sol.match_radius)},
        {"r_max", fx(sol.radii.back())},
        {"S_K", fx(pt.seq.sums.back())},
        {"error_pct", fx(percent_error(pt.seq.sums.back(), sol.energy))},
    };

    r.json = ojson{{"command", "numerov"}};
    r.json.update(run_json(params_json(spec), pt.seq, pt.stabilized, sol.energy));
    r.json["numerov"] = ojson{{"energy", sol.energy},
                              {"nodes", sol.nodes},
                              {"mismatch", sol.mismatch},
                              {"match_radius", sol.match_radius},
                              {"r_max", sol.radii.back()},
                              {"steps", cfg.steps}};
    return r;
}

Report run_exact_swave(const RunSpec& spec)
{
    spec.validate();
    require(spec.l == 0, "exact-swave needs l = 0");
    const HulthenParams p{spec.a, spec.b, spec.lambda};
    const auto exact = exact_swave_energy(p, spec.n, spec.m);
    const auto series = exact_swave_expansion(p, spec.n, spec.m);
    const auto seq = partial_sums(std::span<const double>(series));

    Report r;
    r.header = {"quantity", "value"};
    r.rows = {
        {"energy", fx(exact.energy)},
        {"kappa", fx(exact.kappa)},
        {"N~", fx(exact.cap_n_tilde)},
        {"S_5", fx(seq.sums.back())},
    };
    for (std::size_t k = 0; k < series.size(); ++k) {
        r.rows.push_back({"E_" + std::to_string(k), fx(series[k])});
    }

    r.json = ojson{{"command", "exact-swave"}};
    r.json.update(run_json(params_json(spec.a, spec.b, spec.lambda, spec.n, 0, spec.m, 5), seq, std::nullopt,
                           exact.energy));
    r.json["exact"] = ojson{{"energy", exact.energy}, {"kappa", exact.kappa}, {"cap_n_tilde", exact.cap_n_tilde}};
    try {
        r.json["critical_lambda"] = critical_lambda(p, spec.n, spec.m);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoCritical) {
            throw;
        }
        r.json["critical_lambda"] = nullptr;
    }
    if (spec.numerov) {
        const QuantumState s{spec.n, 0, spec.m};
        const auto sol = solve_eigenvalue(hulthen_closed_form(p), s, window_around(exact.energy, spec.m),
                                          numerov_config(spec));
        r.rows.push_back({"numerov", fx(sol.energy)});
        r.rows.push_back({"numerov-exact", format_fixed(sol.energy - exact.energy, 14)});
        r.json["numerov"] = ojson{{"energy", sol.energy}, {"nodes", sol.nodes}};
    }
    return r;
}

Report run_critical_lambda(const RunSpec& spec)
{
    spec.validate();
    const HulthenParams couplings{spec.a, spec.b, spec.lambda};
    const double lc = critical_lambda(couplings, spec.n, spec.m);

    Report r;
    r.header = {"quantity", "value"};
    r.rows = {{"critical_lambda", fx(lc)}};
    r.json = ojson{{"command", "critical-lambda"},
                   {"params", ojson{{"a", spec.a}, {"b", spec.b}, {"n", spec.n}, {"l", 0}, {"m", spec.m}}},
                   {"corrections", ojson::array()},
                   {"partial_sums", ojson::array()},
                   {"critical_lambda", lc}};
    return r;
}

Report run(const RunSpec& spec)
{
    switch (spec.command) {
    case Command::Corrections:
        return run_corrections(spec);
    case Command::Table1:
    case Command::Table2:
        return run_table(spec);
    case Command::Numerov:
        return run_numerov(spec);
    case Command::ExactSwave:
        return run_exact_swave(spec);
    case Command::CriticalLambda:
        return run_critical_lambda(spec);
    }
    throw Error(ErrorKind::InvalidArgument, "unhandled command");
}

std::string render(const Report& report, OutputFormat format)
{
    std::ostringstream os;
    switch (format) {
    case OutputFormat::Json:
        os << report.json.dump(2) << '\n';
        break;
    case OutputFormat::Csv: {
        const auto line = [&os](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                os << (i ? "," : "") << csv_escape(cells[i]);
            }
            os << '\n';
        };
        line(report.header);
        for (const auto& row : report.rows) {
            line(row);
        }
        for (const auto& note : report.notes) {
            os << "# " << note << '\n';
        }
        break;
    }
    case OutputFormat::Text: {
        std::vector<std::size_t> width(report.header.size(), 0);
        const auto measure = [&width](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], cells[i].size());
            }
        };
        measure(report.header);
        for (const auto& row : report.rows) {
            measure(row);
        }
        const auto line = [&os, &width](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                const std::size_t w = i < width.size() ? width[i] : cells[i].size();
                os << (i ? "  " : "") << std::string(w - std::min(w, cells[i].size()), ' ') << cells[i];
            }
            os << '\n';
        };
        line(report.header);
        for (const auto& row : report.rows) {
            line(row);
        }
        if (!report.notes.empty()) {
            os << '\n';
            for (const auto& note : report.notes) {
                os << note << '\n';
            }
        }
        break;
    }
    }
    return os.str();
}

} // namespace kglpt
