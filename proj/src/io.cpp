#include "rankwin/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>

#include "rankwin/error.hpp"

namespace rankwin {
namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  s = s.substr(b, e - b);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    s = s.substr(1, s.size() - 2);
  }
  return std::string(s);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

bool skippable(const std::string& line) {
  const std::string t = trim(line);
  return t.empty() || t.front() == '#';
}

[[noreturn]] void fail(const std::string& source, std::size_t line,
                       const std::string& reason) {
  throw InputError(source + ":" + std::to_string(line) + ": " + reason);
}

struct Row {
  std::size_t line;
  std::vector<std::string> cells;
};

// Rank cell -> 1-based integer rank, distinguishing ties (fractional ranks)
// from garbage.
std::size_t parse_rank(const std::string& cell, std::size_t m,
                       const std::string& source, std::size_t line,
                       const std::string& algorithm) {
  if (cell.empty()) fail(source, line, "missing rank for " + algorithm);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec == std::errc() && ptr == cell.data() + cell.size()) {
    if (value < 1 || value > m) {
      fail(source, line,
           "rank " + cell + " for " + algorithm + " outside 1.." +
               std::to_string(m));
    }
    return value;
  }
  double real = 0.0;
  auto [rptr, rec] =
      std::from_chars(cell.data(), cell.data() + cell.size(), real);
  if (rec == std::errc() && rptr == cell.data() + cell.size()) {
    if (real == std::floor(real) && real >= 1.0 &&
        real <= static_cast<double>(m)) {
      return static_cast<std::size_t>(real);
    }
    fail(source, line,
         "tie value " + cell + " for " + algorithm +
             " (ranks must be distinct integers)");
  }
  fail(source, line, "rank '" + cell + "' for " + algorithm +
                         " is not an integer");
}

ParsedSample parse_matrix(const std::vector<std::string>& header,
                          const std::vector<Row>& rows,
                          const std::string& source, std::size_t header_line) {
  std::vector<std::string> names(header.begin() + 1, header.end());
  const std::size_t m = names.size();
  if (m < 2) fail(source, header_line, "matrix header needs >= 2 algorithms");
  for (std::size_t a = 0; a < m; ++a) {
    if (names[a].empty()) fail(source, header_line, "empty algorithm name");
    for (std::size_t b = 0; b < a; ++b) {
      if (names[a] == names[b]) {
        fail(source, header_line, "duplicate algorithm '" + names[a] + "'");
      }
    }
  }
  std::vector<RankingObservation> observations;
  std::vector<std::string> ids;
  for (const auto& row : rows) {
    if (row.cells.size() != m + 1) {
      fail(source, row.line,
           "expected " + std::to_string(m + 1) + " cells, found " +
               std::to_string(row.cells.size()));
    }
    std::vector<AlgorithmIndex> order(m, m);
    for (std::size_t a = 0; a < m; ++a) {
      const std::size_t rank =
          parse_rank(row.cells[a + 1], m, source, row.line, names[a]);
      if (order[rank - 1] != m) {
        fail(source, row.line,
             "duplicate rank " + std::to_string(rank) + " (" +
                 names[order[rank - 1]] + " and " + names[a] + ")");
      }
      order[rank - 1] = a;
    }
    observations.emplace_back(std::move(order), m);
    ids.push_back(row.cells[0]);
  }
  return {BenchmarkSample(std::move(names), std::move(observations)),
          std::move(ids), CsvFormat::kMatrix};
}

ParsedSample parse_topk(const std::vector<std::string>& header,
                        const std::vector<Row>& rows, const CsvOptions& options,
                        const std::string& source, std::size_t header_line) {
  const std::size_t K = header.size() - 1;
  if (K < 1) fail(source, header_line, "topk header needs rank columns");
  std::vector<std::string> names;
  std::map<std::string, AlgorithmIndex> index;
  if (options.roster) {
    for (const auto& name : *options.roster) {
      if (!index.emplace(name, names.size()).second) {
        throw InputError("roster lists '" + name + "' twice");
      }
      names.push_back(name);
    }
  }
  std::vector<std::vector<AlgorithmIndex>> orders;
  std::vector<std::string> ids;
  for (const auto& row : rows) {
    if (row.cells.size() != K + 1) {
      fail(source, row.line,
           "expected " + std::to_string(K + 1) + " cells, found " +
               std::to_string(row.cells.size()));
    }
    std::vector<AlgorithmIndex> order;
    for (std::size_t j = 0; j < K; ++j) {
      const std::string& name = row.cells[j + 1];
      if (name.empty()) {
        fail(source, row.line, "missing algorithm at rank " +
                                   std::to_string(j + 1));
      }
      auto it = index.find(name);
      if (it == index.end()) {
        if (options.roster && !options.extend_roster) {
          fail(source, row.line, "unknown algorithm '" + name + "'");
        }
        it = index.emplace(name, names.size()).first;
        names.push_back(name);
      }
      if (std::find(order.begin(), order.end(), it->second) != order.end()) {
        fail(source, row.line, "algorithm '" + name + "' listed twice");
      }
      order.push_back(it->second);
    }
    orders.push_back(std::move(order));
    ids.push_back(row.cells[0]);
  }
  const std::size_t m = names.size();
  if (m < 2) throw InputError(source + ": fewer than 2 algorithms");
  std::vector<RankingObservation> observations;
  for (auto& order : orders) observations.emplace_back(std::move(order), m);
  return {BenchmarkSample(std::move(names), std::move(observations)),
          std::move(ids), CsvFormat::kTopK};
}

}  // namespace

const char* to_string(CsvFormat format) {
  switch (format) {
    case CsvFormat::kAuto:
      return "auto";
    case CsvFormat::kMatrix:
      return "matrix";
    case CsvFormat::kTopK:
      return "topk";
  }
  return "unknown";
}

CsvFormat parse_csv_format(const std::string& text) {
  if (text == "auto") return CsvFormat::kAuto;
  if (text == "matrix") return CsvFormat::kMatrix;
  if (text == "topk") return CsvFormat::kTopK;
  throw InputError("unknown CSV format '" + text + "' (auto, matrix, topk)");
}

ParsedSample parse_rankings_csv(std::istream& in, const CsvOptions& options,
                                const std::string& source) {
  std::string line;
  std::size_t number = 0;
  std::size_t header_line = 0;
  std::vector<std::string> header;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    if (header.empty()) {
      header = split(line);
      header_line = number;
    } else {
      rows.push_back({number, split(line)});
    }
  }
  if (header.empty()) throw InputError(source + ": empty file");
  if (rows.empty()) fail(source, header_line, "no data rows after header");
  if (header.size() < 2) fail(source, header_line, "header has no columns");

  CsvFormat format = options.format;
  if (format == CsvFormat::kAuto) {
    std::string second = header[1];
    std::transform(second.begin(), second.end(), second.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    format = second == "rank1" ? CsvFormat::kTopK : CsvFormat::kMatrix;
  }
  if (format == CsvFormat::kMatrix) {
    if (options.roster) {
      throw InputError("a roster only applies to topk files");
    }
    return parse_matrix(header, rows, source, header_line);
  }
  return parse_topk(header, rows, options, source, header_line);
}

ParsedSample parse_rankings_csv(const std::filesystem::path& path,
                                const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  return parse_rankings_csv(in, options, path.string());
}

std::vector<std::string> read_roster(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open roster " + path.string());
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (skippable(line)) continue;
    for (auto& cell : split(line)) {
      if (!cell.empty()) names.push_back(std::move(cell));
    }
  }
  if (names.empty()) throw InputError("roster " + path.string() + " is empty");
  return names;
}

void write_rankings_csv(std::ostream& out, const BenchmarkSample& sample,
                        CsvFormat format,
                        const std::vector<std::string>& dataset_ids,
                        const std::vector<std::string>& comments) {
  if (!dataset_ids.empty() && dataset_ids.size() != sample.size()) {
    throw InputError("dataset id count does not match the sample");
  }
  auto id = [&](std::size_t i) {
    return dataset_ids.empty() ? "d" + std::to_string(i + 1) : dataset_ids[i];
  };
  for (const auto& c : comments) out << "# " << c << '\n';
  const auto& names = sample.algorithm_names();
  const std::size_t m = sample.num_algorithms();
  if (format == CsvFormat::kMatrix) {
    if (!sample.is_full()) {
      throw InputError("matrix CSV needs full rankings");
    }
    out << "dataset";
    for (const auto& name : names) out << ',' << name;
    out << '\n';
    std::vector<std::size_t> rank(m);
    for (std::size_t i = 0; i < sample.size(); ++i) {
      const auto order = sample.observation(i).order();
      for (std::size_t j = 0; j < m; ++j) rank[order[j]] = j + 1;
      out << id(i);
      for (std::size_t a = 0; a < m; ++a) out << ',' << rank[a];
      out << '\n';
    }
    return;
  }
  const std::size_t K = sample.effective_depth();
  out << "dataset";
  for (std::size_t j = 0; j < K; ++j) out << ",rank" << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < sample.size(); ++i) {
    out << id(i);
    for (std::size_t j = 0; j < K; ++j) {
      out << ',' << names[sample.observation(i).at(j)];
    }
    out << '\n';
  }
}

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

}  // namespace rankwin
