#include "doctest.h"

#include <sstream>

#include "rankwin/error.hpp"
#include "rankwin/io.hpp"
#include "support.hpp"

using namespace rankwin;

namespace {
const std::string kData = RANKWIN_TEST_DATA;

ParsedSample parse(const std::string& text, const CsvOptions& options = {}) {
  std::istringstream in(text);
  return parse_rankings_csv(in, options, "mem");
}

// The message of the InputError thrown by parsing `text`.
std::string error_of(const std::string& text, const CsvOptions& options = {}) {
  try {
    parse(text, options);
  } catch (const InputError& e) {
    return e.what();
  }
  return "<no error>";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}
}  // namespace

TEST_CASE("matrix file") {
  auto p = parse_rankings_csv(kData + "/matrix_m3_n2.csv");
  CHECK(p.format == CsvFormat::kMatrix);
  CHECK(p.sample.algorithm_names() == std::vector<std::string>{"A", "B", "C"});
  CHECK(p.dataset_ids == std::vector<std::string>{"d1", "d2"});
  REQUIRE(p.sample.size() == 2);
  CHECK(p.sample.observation(0) == RankingObservation({0, 1, 2}, 3));
  CHECK(p.sample.observation(1) == RankingObservation({1, 0, 2}, 3));
}

TEST_CASE("matrix file with comments, quotes and blank lines") {
  auto p = parse("# note\n\ndataset, \"X\" ,Y\n\nd1, 2 ,1\n# mid\nd2,1,2\n");
  CHECK(p.sample.algorithm_names() == std::vector<std::string>{"X", "Y"});
  CHECK(p.sample.observation(0) == RankingObservation({1, 0}, 2));
  // Integral decimals are accepted.
  CHECK(parse("dataset,A,B\nd1,1.0,2.0\n").sample.observation(0) ==
        RankingObservation({0, 1}, 2));
}

TEST_CASE("top-k file with roster") {
  CsvOptions options;
  options.roster = read_roster(kData + "/roster_19.txt");
  auto p = parse_rankings_csv(kData + "/top3_19algos_n36.csv", options);
  CHECK(p.format == CsvFormat::kTopK);
  CHECK(p.sample.size() == 36);
  CHECK(p.sample.effective_depth() == 3);
  CHECK(p.sample.num_algorithms() == 19);
  CHECK(p.sample.algorithm_names()[0] == "CatBoost");

  auto bare = parse_rankings_csv(kData + "/top3_19algos_n30.csv");
  CHECK(bare.sample.num_algorithms() == 12);
  CHECK(bare.sample.size() == 30);
}

TEST_CASE("errors name the row and the reason") {
  const std::string head = "dataset,A,B,C\n";
  auto dup = error_of(head + "d1,1,2,3\nd2,2,2,3\n");
  CHECK(contains(dup, "mem:3"));
  CHECK(contains(dup, "duplicate rank 2"));
  auto tie = error_of(head + "d1,1,2.5,2.5\n");
  CHECK(contains(tie, "mem:2"));
  CHECK(contains(tie, "tie value"));
  auto ragged = error_of(head + "d1,1,2\n");
  CHECK(contains(ragged, "mem:2"));
  CHECK(contains(ragged, "expected 4 cells, found 3"));
  auto range = error_of(head + "d1,1,2,4\n");
  CHECK(contains(range, "outside 1..3"));
  auto junk = error_of(head + "d1,1,two,3\n");
  CHECK(contains(junk, "not an integer"));
  auto missing = error_of(head + "d1,1,,3\n");
  CHECK(contains(missing, "missing rank for B"));
  CHECK(contains(error_of(""), "empty file"));
  CHECK(contains(error_of("# only a comment\n"), "empty file"));
  CHECK(contains(error_of(head), "no data rows"));
  CHECK(contains(error_of("dataset,A,A\nd1,1,2\n"), "duplicate algorithm"));

  const std::string topk = "dataset,rank1,rank2\n";
  CsvOptions roster;
  roster.roster = std::vector<std::string>{"A", "B", "C"};
  auto unknown = error_of(topk + "d1,A,B\nd2,A,Z\n", roster);
  CHECK(contains(unknown, "mem:3"));
  CHECK(contains(unknown, "unknown algorithm 'Z'"));
  roster.extend_roster = true;
  auto extended = parse(topk + "d1,A,B\nd2,A,Z\n", roster);
  CHECK(extended.sample.algorithm_names() ==
        std::vector<std::string>{"A", "B", "C", "Z"});
  CHECK(contains(error_of(topk + "d1,A,A\n"), "listed twice"));

  CsvOptions matrix_roster;
  matrix_roster.roster = std::vector<std::string>{"A", "B", "C"};
  CHECK_THROWS_AS(parse(head + "d1,1,2,3\n", matrix_roster), InputError);
  CHECK_THROWS_AS(parse_rankings_csv(kData + "/does_not_exist.csv"), InputError);
  CHECK_THROWS_AS(parse_csv_format("xml"), InputError);
}

TEST_CASE("write then parse round trips") {
  auto s = test::random_sample(5, 40, 5, 2);
  std::ostringstream out;
  write_rankings_csv(out, s, CsvFormat::kMatrix, {}, {"generated", "seed 2"});
  const std::string text = out.str();
  CHECK(text.rfind("# generated\n# seed 2\ndataset,A,B,C,D,E\n", 0) == 0);
  auto back = parse(text);
  CHECK(back.sample == s);
  CHECK(back.dataset_ids.front() == "d1");
  CHECK(compute_rank_counts(back.sample) == compute_rank_counts(s));

  auto shallow = test::random_sample(6, 25, 3, 4);
  std::ostringstream topk;
  write_rankings_csv(topk, shallow, CsvFormat::kTopK);
  CsvOptions options;
  options.roster = shallow.algorithm_names();
  auto back_topk = parse(topk.str(), options);
  CHECK(back_topk.format == CsvFormat::kTopK);
  CHECK(back_topk.sample == shallow);

  std::ostringstream bad;
  CHECK_THROWS_AS(write_rankings_csv(bad, shallow, CsvFormat::kMatrix),
                  InputError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1.0 / 3.0) == "0.333333");
  CHECK(format_number(1e-7) == "1e-07");
}
