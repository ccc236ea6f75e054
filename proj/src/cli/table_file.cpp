#include "lambdat/cli/table_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>

namespace lambdat::cli {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

// RFC 4180-style split: double quotes group commas, "" is a literal quote.
std::vector<std::string> splitFields(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
        const char ch = line[k];
        if (quoted) {
            if (ch == '"' && k + 1 < line.size() && line[k + 1] == '"') {
                current += '"';
                ++k;
            } else if (ch == '"') {
                quoted = false;
            } else {
                current += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current += ch;
        }
    }
    fields.push_back(trim(current));
    return fields;
}

std::optional<double> parseNumber(const std::string& field) {
    if (field.empty()) {
        return std::nullopt;
    }
    const char* begin = field.data();
    if (*begin == '+') {
        ++begin;
    }
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        return std::nullopt;
    }
    return value;
}

} // namespace

CsvGrid readCsvGrid(std::istream& in, bool hasHeader) {
    CsvGrid grid;
    std::vector<std::string> header;
    bool headerPending = hasHeader;
    std::optional<bool> labelColumn;
    std::vector<std::vector<double>> rows;
    std::size_t width = 0;

    std::string line;
    std::size_t lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') {
            continue;
        }
        auto fields = splitFields(stripped);
        if (headerPending) {
            header = std::move(fields);
            headerPending = false;
            continue;
        }
        if (!labelColumn) {
            labelColumn = !parseNumber(fields.front()).has_value();
        }
        std::size_t first = 0;
        if (*labelColumn) {
            grid.rowLabels.push_back(fields.front());
            first = 1;
        }
        std::vector<double> values;
        for (std::size_t k = first; k < fields.size(); ++k) {
            const auto v = parseNumber(fields[k]);
            if (!v) {
                throw Error(ErrorCode::ParseError, "line " + std::to_string(lineNo) + ", column " +
                                                       std::to_string(k + 1) + ": '" + fields[k] +
                                                       "' is not a number");
            }
            values.push_back(*v);
        }
        if (rows.empty()) {
            width = values.size();
        } else if (values.size() != width) {
            throw Error(ErrorCode::NotRectangular, "line " + std::to_string(lineNo) + " has " +
                                                       std::to_string(values.size()) + " values, expected " +
                                                       std::to_string(width));
        }
        rows.push_back(std::move(values));
    }
    if (rows.empty() || width == 0) {
        throw Error(ErrorCode::ParseError, "no numeric rows found");
    }

    if (!header.empty()) {
        if (header.size() == width + 1) {
            header.erase(header.begin());
        }
        if (header.size() != width) {
            throw Error(ErrorCode::NotRectangular, "header has " + std::to_string(header.size()) +
                                                       " labels for " + std::to_string(width) + " columns");
        }
        grid.colLabels = std::move(header);
    }

    grid.cells.resize(static_cast<Index>(rows.size()), static_cast<Index>(width));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < width; ++j) {
            grid.cells(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return grid;
}

LoadedTable parseTable(std::istream& in, TableFile& file) {
    auto grid = readCsvGrid(in, file.hasHeader);
    file.rowLabels = std::move(grid.rowLabels);
    file.colLabels = std::move(grid.colLabels);
    if (file.mode == TableMode::Probabilities) {
        return validateProbabilityTable(grid.cells);
    }
    return ContingencyTable<double>(std::move(grid.cells));
}

LoadedTable parseTableFile(TableFile& file) {
    std::ifstream in(file.path);
    if (!in) {
        throw Error(ErrorCode::ParseError, "cannot open '" + file.path.string() + "'");
    }
    return parseTable(in, file);
}

ProbabilityTable<double> proportions(const LoadedTable& table) {
    if (const auto* counts = std::get_if<ContingencyTable<double>>(&table)) {
        return normalize(*counts);
    }
    return std::get<ProbabilityTable<double>>(table);
}

} // namespace lambdat::cli
