#include "lambdat/cli/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace lambdat::cli {

namespace {

double roundTo(double v, int precision) {
    const double scale = std::pow(10.0, precision);
    const double r = std::round(v * scale) / scale;
    return r == 0.0 ? 0.0 : r; // no "-0"
}

nlohmann::json number(const std::optional<double>& v, int precision) {
    if (!v) {
        return nullptr;
    }
    return roundTo(*v, precision);
}

std::string csvNumber(const std::optional<double>& v, int precision) {
    if (!v) {
        return {};
    }
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << roundTo(*v, precision);
    return s.str();
}

} // namespace

ResultRecord toRecord(const MeasureResult<double>& m) {
    ResultRecord r;
    r.family = m.family;
    r.direction = m.direction;
    r.t = m.t;
    r.value = m.value;
    r.errorCase1 = m.errorCase1;
    r.errorCase2 = m.errorCase2;
    r.tieWarning = m.tieFlag;
    return r;
}

ResultRecord toRecord(const InferenceResult<double>& inf) {
    ResultRecord r = toRecord(inf.measure);
    r.se = inf.stdError;
    r.ciLow = inf.ciLow;
    r.ciHigh = inf.ciHigh;
    r.degenerate = inf.degenerate;
    r.tieWarning = inf.tieWarning;
    return r;
}

nlohmann::json toJson(const ResultRecord& record, int precision) {
    return {
        {"family", std::string(toString(record.family))},
        {"direction", std::string(toString(record.direction))},
        {"t", record.t},
        {"value", number(record.value, precision)},
        {"error_case1", number(record.errorCase1, precision)},
        {"error_case2", number(record.errorCase2, precision)},
        {"se", number(record.se, precision)},
        {"ci_low", number(record.ciLow, precision)},
        {"ci_high", number(record.ciHigh, precision)},
        {"degenerate", record.degenerate},
        {"tie_warning", record.tieWarning},
    };
}

nlohmann::json toJson(const RunReport& report, int precision) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : report.results) {
        results.push_back(toJson(r, precision));
    }
    nlohmann::json params = {
        {"command", report.parameters.command},
        {"family", report.parameters.family},
        {"direction", report.parameters.direction},
        {"all_t", report.parameters.allT},
    };
    params["t"] = report.parameters.t ? nlohmann::json(*report.parameters.t) : nlohmann::json(nullptr);
    params["alpha"] = report.parameters.alpha ? nlohmann::json(*report.parameters.alpha) : nlohmann::json(nullptr);
    params["seed"] = report.parameters.seed ? nlohmann::json(*report.parameters.seed) : nlohmann::json(nullptr);
    params["generator"] =
        report.parameters.generator ? nlohmann::json(*report.parameters.generator) : nlohmann::json(nullptr);
    return {
        {"input",
         {{"rows", report.input.rows},
          {"cols", report.input.cols},
          {"mode", report.input.mode},
          {"total", report.input.total}}},
        {"parameters", params},
        {"results", results},
        {"warnings", report.warnings},
    };
}

void writeResultsJson(std::ostream& out, const std::vector<ResultRecord>& records, int precision) {
    nlohmann::json array = nlohmann::json::array();
    for (const auto& r : records) {
        array.push_back(toJson(r, precision));
    }
    out << array.dump(2) << '\n';
}

void writeResultsCsv(std::ostream& out, const std::vector<ResultRecord>& records, int precision) {
    out << "family,direction,t,value,error_case1,error_case2,se,ci_low,ci_high,degenerate,tie_warning\n";
    for (const auto& r : records) {
        out << toString(r.family) << ',' << toString(r.direction) << ',' << r.t << ','
            << csvNumber(r.value, precision) << ',' << csvNumber(r.errorCase1, precision) << ','
            << csvNumber(r.errorCase2, precision) << ',' << csvNumber(r.se, precision) << ','
            << csvNumber(r.ciLow, precision) << ',' << csvNumber(r.ciHigh, precision) << ','
            << (r.degenerate ? "true" : "false") << ',' << (r.tieWarning ? "true" : "false") << '\n';
    }
}

} // namespace lambdat::cli
