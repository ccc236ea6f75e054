#include "lambdat/cli/commands.hpp"

#include "lambdat/normal_table.hpp"

#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <vector>

namespace lambdat::cli {

namespace {

struct Loaded {
    LoadedTable table;
    TableFile file;
    InputDigest digest;
};

Loaded load(const CommonOptions& options) {
    if (options.input.empty()) {
        throw UsageError("--input is required");
    }
    Loaded loaded{ContingencyTable<double>(Grid<double>::Ones(2, 2)), {}, {}};
    loaded.file.path = options.input;
    loaded.file.mode = options.probabilities ? TableMode::Probabilities : TableMode::Counts;
    loaded.file.hasHeader = options.header;
    loaded.table = parseTableFile(loaded.file);
    std::visit(
        [&](const auto& t) {
            loaded.digest.rows = static_cast<long>(t.rows());
            loaded.digest.cols = static_cast<long>(t.cols());
            loaded.digest.total = t.total();
        },
        loaded.table);
    loaded.digest.mode = options.probabilities ? "probabilities" : "counts";
    return loaded;
}

std::vector<Family> families(FamilyChoice choice) {
    switch (choice) {
    case FamilyChoice::Plain: return {Family::Plain};
    case FamilyChoice::K: return {Family::K};
    case FamilyChoice::Both: break;
    }
    return {Family::Plain, Family::K};
}

std::string familyName(FamilyChoice choice) {
    switch (choice) {
    case FamilyChoice::Plain: return "plain";
    case FamilyChoice::K: return "k";
    case FamilyChoice::Both: break;
    }
    return "both";
}

bool wanted(FamilyChoice choice, Family family) {
    return choice == FamilyChoice::Both || (choice == FamilyChoice::Plain) == (family == Family::Plain);
}

std::string slot(Family family, int t) {
    return std::string(toString(family)) + " t=" + std::to_string(t);
}

RunParameters parameters(const CommonOptions& options, const std::string& command) {
    RunParameters params;
    params.command = command;
    params.family = familyName(options.family);
    params.direction = std::string(toString(options.symmetric ? Direction::Symmetric : options.direction));
    params.t = options.t;
    params.allT = options.allT;
    return params;
}

void addTieWarnings(RunReport& report) {
    for (const auto& r : report.results) {
        if (r.tieWarning) {
            report.warnings.push_back(slot(r.family, r.t) +
                                      ": tie at a top-t boundary; index sets resolved to the lowest column");
        }
    }
}

void emit(const RunReport& report, const CommonOptions& options, std::ostream& out) {
    if (options.format == OutputFormat::Json) {
        writeResultsJson(out, report.results, options.precision);
    } else {
        writeResultsCsv(out, report.results, options.precision);
    }
}

} // namespace

RunReport cmdMeasure(const CommonOptions& options, std::ostream& out) {
    const auto loaded = load(options);
    const auto p = proportions(loaded.table);

    RunReport report;
    report.input = loaded.digest;
    report.parameters = parameters(options, "measure");

    if (options.symmetric) {
        report.results.push_back(toRecord(symmetricLambda(p)));
    } else if (options.allT) {
        for (const auto& entry : measureProfile(p, options.direction)) {
            if (!wanted(options.family, entry.family)) {
                continue;
            }
            if (entry.error) {
                ResultRecord r;
                r.family = entry.family;
                r.direction = options.direction;
                r.t = entry.t;
                report.results.push_back(r);
                report.warnings.push_back(slot(entry.family, entry.t) + ": " + std::string(toString(*entry.error)));
                continue;
            }
            report.results.push_back(toRecord(*entry.result));
        }
    } else if (options.t) {
        for (Family family : families(options.family)) {
            report.results.push_back(toRecord(measure(p, family, *options.t, options.direction)));
        }
    } else {
        throw UsageError("measure needs --t K, --all-t or --symmetric");
    }

    addTieWarnings(report);
    emit(report, options, out);
    return report;
}

RunReport cmdCi(const CommonOptions& options, std::ostream& out) {
    if (options.probabilities) {
        throw UsageError("ci needs counts input (the sample size comes from the table total)");
    }
    if (options.symmetric) {
        throw UsageError("ci is available for asymmetric directions only");
    }
    if (!(options.alpha > 0.0 && options.alpha < 1.0)) {
        throw Error(ErrorCode::BadAlpha, "alpha must lie in (0, 1), got " + std::to_string(options.alpha));
    }
    if (!options.t && !options.allT) {
        throw UsageError("ci needs --t K or --all-t");
    }
    const auto loaded = load(options);
    const auto& counts = std::get<ContingencyTable<double>>(loaded.table);

    RunReport report;
    report.input = loaded.digest;
    report.parameters = parameters(options, "ci");
    report.parameters.alpha = options.alpha;

    std::vector<int> orders;
    if (options.allT) {
        const Index categories = options.direction == Direction::XgivenY ? counts.rows() : counts.cols();
        for (int t = 1; t < categories; ++t) {
            orders.push_back(t);
        }
    } else {
        orders.push_back(*options.t);
    }

    for (int t : orders) {
        for (Family family : families(options.family)) {
            try {
                const auto inf = confidenceInterval(counts, family, t, options.direction, options.alpha);
                report.results.push_back(toRecord(inf));
                if (inf.degenerate) {
                    report.warnings.push_back(slot(family, t) + ": standard error is zero; interval omitted");
                }
            } catch (const Error& e) {
                if (!options.allT || e.code() != ErrorCode::DegenerateMarginal) {
                    throw;
                }
                report.warnings.push_back(slot(family, t) + ": " + std::string(toString(e.code())));
            }
        }
    }

    addTieWarnings(report);
    emit(report, options, out);
    return report;
}

void writeGridCsv(std::ostream& out, const Grid<double>& grid) {
    const auto flags = out.flags();
    const auto precision = out.precision();
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (Index i = 0; i < grid.rows(); ++i) {
        for (Index j = 0; j < grid.cols(); ++j) {
            out << (j ? "," : "") << grid(i, j);
        }
        out << '\n';
    }
    out.flags(flags);
    out.precision(precision);
}

void cmdSweep(const SweepOptions& options, std::ostream& out) {
    if (options.tableAt) {
        writeGridCsv(out, buildNormalTable(NormalGridSpec::make(options.r, *options.tableAt)).cells());
        return;
    }
    const auto grid = makeRhoGrid(options.rhoStart, options.rhoEnd, options.step);
    writeSweepCsv(out, sweep(options.r, grid));
}

RunReport cmdSample(const CommonOptions& options, std::int64_t n, std::ostream& out) {
    const auto loaded = load(options);
    const auto counts = sampleMultinomial(proportions(loaded.table), n, options.seed);

    RunReport report;
    report.input = loaded.digest;
    report.parameters = parameters(options, "sample");
    report.parameters.seed = options.seed;
    report.parameters.generator = std::string(kGeneratorName);

    out << "# generator=" << kGeneratorName << " seed=" << options.seed << " n=" << n << '\n';
    const bool labelled = !loaded.file.rowLabels.empty();
    if (!loaded.file.colLabels.empty()) {
        if (labelled) {
            out << ',';
        }
        for (std::size_t j = 0; j < loaded.file.colLabels.size(); ++j) {
            out << (j ? "," : "") << loaded.file.colLabels[j];
        }
        out << '\n';
    }
    for (Index i = 0; i < counts.rows(); ++i) {
        if (labelled) {
            out << loaded.file.rowLabels[static_cast<std::size_t>(i)] << ',';
        }
        for (Index j = 0; j < counts.cols(); ++j) {
            out << (j ? "," : "") << static_cast<std::int64_t>(counts(i, j));
        }
        out << '\n';
    }
    return report;
}

void writeReportFile(const std::string& path, const RunReport& report, int precision) {
    std::ofstream file(path);
    if (!file) {
        throw UsageError("cannot write report to '" + path + "'");
    }
    file << toJson(report, precision).dump(2) << '\n';
}

} // namespace lambdat::cli
