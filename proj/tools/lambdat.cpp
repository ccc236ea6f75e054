// lambdat: multi-category PRE association measures for contingency tables.

#include "lambdat/cli/commands.hpp"
#include "lambdat/cli/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

using namespace lambdat;
using namespace lambdat::cli;

void addCommon(CLI::App& cmd, CommonOptions& o, std::string& reportPath, bool withOrder = true) {
    cmd.add_option("--input", o.input, "CSV table (comma-separated grid)")->required();
    cmd.add_flag("--probabilities", o.probabilities, "cells are probabilities rather than counts");
    cmd.add_flag("--header", o.header, "first row holds column labels");
    if (withOrder) {
        auto* t = cmd.add_option("--t", o.t, "order t (1 <= t < number of response categories)");
        auto* all = cmd.add_flag("--all-t", o.allT, "every admissible order");
        t->excludes(all);
        cmd.add_option("--direction", o.direction, "y-given-x (rows explanatory) or x-given-y")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, Direction>{{"y-given-x", Direction::YgivenX},
                                                 {"x-given-y", Direction::XgivenY}},
                CLI::ignore_case));
        cmd.add_option("--family", o.family, "plain, k or both")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, FamilyChoice>{
                    {"plain", FamilyChoice::Plain}, {"k", FamilyChoice::K}, {"both", FamilyChoice::Both}},
                CLI::ignore_case));
        cmd.add_option("--format", o.format, "csv or json")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, OutputFormat>{{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}},
                CLI::ignore_case));
        cmd.add_option("--precision", o.precision, "decimals in the output")->check(CLI::Range(0, 17));
    }
    cmd.add_option("--report", reportPath, "also write the full run report (JSON) to this file");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multi-category proportional-reduction-in-error association measures"};
    app.require_subcommand(1);

    CommonOptions options;
    std::string reportPath;

    auto* measureCmd = app.add_subcommand("measure", "measure values and error probabilities");
    addCommon(*measureCmd, options, reportPath);
    measureCmd->add_flag("--symmetric", options.symmetric, "Goodman-Kruskal symmetric lambda");

    auto* ciCmd = app.add_subcommand("ci", "estimates, delta-method standard errors and confidence intervals");
    addCommon(*ciCmd, options, reportPath);
    ciCmd->add_option("--alpha", options.alpha, "significance level (default 0.05)");

    SweepOptions sweepOptions;
    auto* sweepCmd = app.add_subcommand("sweep", "measures on discretized bivariate normal tables over rho");
    sweepCmd->add_option("--r", sweepOptions.r, "categories per margin")->required()->check(CLI::Range(2, 1000));
    sweepCmd->add_option("--rho-start", sweepOptions.rhoStart, "first correlation (default 0)");
    sweepCmd->add_option("--rho-end", sweepOptions.rhoEnd, "last correlation (default 1)");
    sweepCmd->add_option("--step", sweepOptions.step, "grid step (default 0.01)");
    sweepCmd->add_option("--table-at", sweepOptions.tableAt, "print the table at this correlation instead");

    std::int64_t sampleSize = 0;
    auto* sampleCmd = app.add_subcommand("sample", "draw a multinomial table from the input proportions");
    addCommon(*sampleCmd, options, reportPath, false);
    sampleCmd->add_option("--n", sampleSize, "sample size")->required()->check(CLI::PositiveNumber);
    sampleCmd->add_option("--seed", options.seed, "generator seed");

    auto* verifyCmd = app.add_subcommand("verify", "reproduce the published reference values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        RunReport report;
        bool hasReport = true;
        if (*measureCmd) {
            report = cmdMeasure(options, std::cout);
        } else if (*ciCmd) {
            report = cmdCi(options, std::cout);
        } else if (*sampleCmd) {
            report = cmdSample(options, sampleSize, std::cout);
        } else if (*sweepCmd) {
            cmdSweep(sweepOptions, std::cout);
            hasReport = false;
        } else if (*verifyCmd) {
            const auto checks = publishedChecks();
            return runChecks(checks, std::cout).failed == 0 ? 0 : 1;
        }
        if (hasReport) {
            for (const auto& w : report.warnings) {
                std::cerr << "warning: " << w << '\n';
            }
            if (!reportPath.empty()) {
                writeReportFile(reportPath, report, options.precision);
            }
        }
    } catch (const Error& e) {
        std::cerr << "error: " << toString(e.code()) << ": " << e.what() << '\n';
        return exitStatus(e.code());
    } catch (const UsageError& e) {
        std::cerr << "error: Usage: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
