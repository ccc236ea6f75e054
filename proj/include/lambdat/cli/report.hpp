#pragma once

#include "lambdat/inference.hpp"
#include "lambdat/measures.hpp"

#include <json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace lambdat::cli {

/// One output row. Fields that do not apply to a command stay empty and are
/// written as null (JSON) or an empty field (CSV).
struct ResultRecord {
    Family family = Family::Plain;
    Direction direction = Direction::YgivenX;
    int t = 1;
    std::optional<double> value;
    std::optional<double> errorCase1;
    std::optional<double> errorCase2;
    std::optional<double> se;
    std::optional<double> ciLow;
    std::optional<double> ciHigh;
    bool degenerate = false;
    bool tieWarning = false;
};

ResultRecord toRecord(const MeasureResult<double>& m);
ResultRecord toRecord(const InferenceResult<double>& inf);

struct InputDigest {
    long rows = 0;
    long cols = 0;
    std::string mode;
    /// n for counts, the cell sum for probabilities.
    double total = 0.0;
};

struct RunParameters {
    std::string command;
    std::string family;
    std::string direction;
    std::optional<int> t;
    bool allT = false;
    std::optional<double> alpha;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> generator;
};

struct RunReport {
    InputDigest input;
    RunParameters parameters;
    std::vector<ResultRecord> results;
    std::vector<std::string> warnings;
};

/// Keys: family, direction, t, value, error_case1, error_case2, se, ci_low,
/// ci_high, degenerate, tie_warning. Numbers rounded to `precision` decimals.
nlohmann::json toJson(const ResultRecord& record, int precision = 6);
nlohmann::json toJson(const RunReport& report, int precision = 6);

void writeResultsJson(std::ostream& out, const std::vector<ResultRecord>& records, int precision = 6);
void writeResultsCsv(std::ostream& out, const std::vector<ResultRecord>& records, int precision = 6);

} // namespace lambdat::cli
