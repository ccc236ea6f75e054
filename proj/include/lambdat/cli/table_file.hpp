#pragma once

#include "lambdat/table.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace lambdat::cli {

/// Counts and probabilities are never inferred from the data: a probability
/// grid scaled by 100 looks exactly like counts.
enum class TableMode { Counts, Probabilities };

struct TableFile {
    std::filesystem::path path;
    TableMode mode = TableMode::Counts;
    bool hasHeader = false;
    /// Filled in by parsing when the file carries them.
    std::vector<std::string> rowLabels;
    std::vector<std::string> colLabels;
};

/// A rectangular numeric grid read from CSV, with any labels that were present.
struct CsvGrid {
    Grid<double> cells;
    std::vector<std::string> rowLabels;
    std::vector<std::string> colLabels;
};

/// Comma-separated numeric grid. Blank lines and lines starting with '#' are
/// skipped. With hasHeader the first row holds column labels. A first column
/// whose first data field is not numeric is taken as row labels.
/// Throws ParseError (with line and column) or NotRectangular.
CsvGrid readCsvGrid(std::istream& in, bool hasHeader);

using LoadedTable = std::variant<ContingencyTable<double>, ProbabilityTable<double>>;

/// Reads file.path; labels found in the file are stored back into `file`.
LoadedTable parseTableFile(TableFile& file);

/// Same as parseTableFile with the content taken from `in`.
LoadedTable parseTable(std::istream& in, TableFile& file);

/// Proportions of either kind of table.
ProbabilityTable<double> proportions(const LoadedTable& table);

} // namespace lambdat::cli
