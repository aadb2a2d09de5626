// kglpt: perturbative and numerical Klein-Gordon levels for Hulthen couplings.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "kglpt/error.hpp"
#include "kglpt/report.hpp"

namespace {

constexpr int kDomainError = 2;
constexpr int kConvergenceFailure = 3;

} // namespace

int main(int argc, char** argv)
{
    kglpt::RunSpec spec;
    std::string format = "text";

    CLI::App app{"Energy levels of the Klein-Gordon equation with Hulthen vector/scalar couplings"};
    app.fallthrough();
    app.require_subcommand(1);

    app.add_option("-a", spec.a, "vector coupling strength a (V = -a lambda / (e^{lambda r} - 1))");
    app.add_option("-b", spec.b, "scalar coupling strength b (W = -b lambda / (e^{lambda r} - 1))");
    app.add_option("--lambda", spec.lambda, "screening parameter");
    app.add_option("-n", spec.n, "radial quantum number");
    app.add_option("-l", spec.l, "orbital quantum number");
    app.add_option("-K,--order", spec.order, "highest correction order");
    app.add_option("--mass", spec.m, "rest mass");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--out", spec.out, "write the report to this file instead of stdout");
    app.add_flag("!--no-numerov", spec.numerov, "skip the Numerov reference");
    app.add_option("--grid-steps", spec.grid_steps, "Numerov grid intervals");
    app.add_option("--r-max", spec.r_max, "Numerov outer radius (0 = automatic)");
    app.add_option("--tol", spec.tol, "Numerov energy tolerance");

    const auto sub = [&app, &spec](const char* name, kglpt::Command c, const char* help) {
        app.add_subcommand(name, help)->callback([&spec, c] { spec.command = c; });
    };
    sub("corrections", kglpt::Command::Corrections, "energy corrections E_0..E_K and partial sums");
    sub("table1", kglpt::Command::Table1, "S_5 and percentage errors over lambda = 0.05..0.15");
    sub("table2", kglpt::Command::Table2, "partial sums S_0..S_10 for six p-states at lambda = 0.05");
    sub("numerov", kglpt::Command::Numerov, "shooting eigenvalue for one state");
    sub("exact-swave", kglpt::Command::ExactSwave, "closed-form s-wave level and its expansion");
    sub("critical-lambda", kglpt::Command::CriticalLambda, "critical screening for an s-wave level");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kDomainError;
    }

    try {
        spec.format = kglpt::parse_format(format);
        const auto text = kglpt::render(kglpt::run(spec), spec.format);
        if (spec.out.empty()) {
            std::cout << text;
        } else {
            std::ofstream os(spec.out, std::ios::binary);
            os << text;
            if (!os) {
                std::cerr << "error: cannot write " << spec.out << '\n';
                return 1;
            }
        }
    } catch (const kglpt::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kglpt::is_convergence_failure(e.kind()) ? kConvergenceFailure : kDomainError;
    }
    return 0;
}
