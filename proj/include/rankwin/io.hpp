#pragma once

// Benchmark CSV dialects.
//
// matrix: header `dataset,<name1>,...,<namem>`; each row holds the ranks
//   1..m of every algorithm on one dataset (a permutation, no ties).
// topk:   header `dataset,rank1,...,rankK`; each row names the first K
//   algorithms in order.
//
// Blank lines and lines starting with '#' are ignored. Cells are trimmed and
// may be wrapped in double quotes.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rankwin/ranking.hpp"

namespace rankwin {

enum class CsvFormat { kAuto, kMatrix, kTopK };

const char* to_string(CsvFormat format);
CsvFormat parse_csv_format(const std::string& text);

struct CsvOptions {
  CsvFormat format = CsvFormat::kAuto;
  // topk only. Without a roster the algorithms are the names seen, in order
  // of first appearance. With one, names outside it are errors unless
  // extend_roster is set, in which case they are appended.
  std::optional<std::vector<std::string>> roster;
  bool extend_roster = false;
};

struct ParsedSample {
  BenchmarkSample sample;
  std::vector<std::string> dataset_ids;
  CsvFormat format;  // never kAuto
};

// Throws InputError naming the line and reason for: empty input, bad
// header, ragged rows, non-integer or out-of-range ranks, tied ranks,
// duplicate names in a row, unknown names and missing cells. kAuto picks
// topk when the second header cell is `rank1`.
ParsedSample parse_rankings_csv(std::istream& in, const CsvOptions& options = {},
                                const std::string& source = "<input>");
ParsedSample parse_rankings_csv(const std::filesystem::path& path,
                                const CsvOptions& options = {});

// One name per line (commas also separate); '#' lines are comments.
std::vector<std::string> read_roster(const std::filesystem::path& path);

// Writes `sample` as matrix (requires full rankings) or topk CSV. Dataset ids
// default to d1, d2, ... `comments` are emitted first as '#' lines.
void write_rankings_csv(std::ostream& out, const BenchmarkSample& sample,
                        CsvFormat format,
                        const std::vector<std::string>& dataset_ids = {},
                        const std::vector<std::string>& comments = {});

// printf %.6g.
std::string format_number(double value);

}  // namespace rankwin
