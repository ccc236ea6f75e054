#pragma once

#include "lambdat/cli/report.hpp"
#include "lambdat/cli/table_file.hpp"
#include "lambdat/sampling.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

namespace lambdat::cli {

/// Invalid flag combination; the front end exits with status 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class FamilyChoice { Plain, K, Both };
enum class OutputFormat { Csv, Json };

struct CommonOptions {
    std::string input;
    bool probabilities = false;
    bool header = false;
    std::optional<int> t;
    bool allT = false;
    Direction direction = Direction::YgivenX;
    bool symmetric = false;
    FamilyChoice family = FamilyChoice::Both;
    double alpha = 0.05;
    OutputFormat format = OutputFormat::Csv;
    std::uint64_t seed = kDefaultSeed;
    int precision = 6;
};

/// Measure values with both error probabilities.
RunReport cmdMeasure(const CommonOptions& options, std::ostream& out);

/// Estimates, standard errors and intervals; needs counts input.
RunReport cmdCi(const CommonOptions& options, std::ostream& out);

struct SweepOptions {
    int r = 4;
    double rhoStart = 0.0;
    double rhoEnd = 1.0;
    double step = 0.01;
    /// Dump the grid at this correlation instead of sweeping.
    std::optional<double> tableAt;
};

/// Sweep CSV, or the constructed table at full precision with tableAt.
void cmdSweep(const SweepOptions& options, std::ostream& out);

/// One multinomial table of size n drawn from the input proportions.
RunReport cmdSample(const CommonOptions& options, std::int64_t n, std::ostream& out);

/// Rows of a table at round-trip precision, no header.
void writeGridCsv(std::ostream& out, const Grid<double>& grid);

void writeReportFile(const std::string& path, const RunReport& report, int precision);

} // namespace lambdat::cli
