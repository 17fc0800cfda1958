#include "rankwin/report.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <sstream>

#include "rankwin/baselines.hpp"
#include "rankwin/error.hpp"
#include "rankwin/io.hpp"
#include "rankwin/minimax.hpp"

namespace rankwin {
namespace {

constexpr std::size_t kTopCount = 3;

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string join_numbers(const std::vector<double>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_number(v[i]);
  }
  return out;
}

// Left-aligned text table with two-space gutters.
class TextTable {
 public:
  explicit TextTable(std::vector<std::string> header) {
    rows_.push_back(std::move(header));
  }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::string str() const {
    std::vector<std::size_t> width;
    for (const auto& row : rows_) {
      if (width.size() < row.size()) width.resize(row.size(), 0);
      for (std::size_t c = 0; c < row.size(); ++c) {
        width[c] = std::max(width[c], row[c].size());
      }
    }
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      std::string line;
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        if (c) line += "  ";
        line += rows_[r][c];
        if (c + 1 < rows_[r].size()) {
          line.append(width[c] - rows_[r][c].size(), ' ');
        }
      }
      out << line << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (std::size_t c = 0; c < width.size(); ++c) {
          total += width[c] + (c ? 2 : 0);
        }
        out << std::string(total, '-') << '\n';
      }
    }
    return out.str();
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string header_comments(const RunConfig& config) {
  std::string out;
  for (const auto& line : provenance_lines(config)) out += "# " + line + "\n";
  return out;
}

Json envelope(const RunConfig& config) {
  Json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = to_json(config);
  return j;
}

std::vector<std::size_t> top_by_probability(const std::vector<double>& p) {
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return p[a] > p[b]; });
  idx.resize(std::min(kTopCount, idx.size()));
  return idx;
}

std::vector<std::size_t> top_by_rank(const std::vector<double>& mean_rank) {
  std::vector<std::size_t> idx(mean_rank.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return mean_rank[a] < mean_rank[b];
  });
  idx.resize(std::min(kTopCount, idx.size()));
  return idx;
}

std::vector<std::string> names_of(const std::vector<std::size_t>& idx,
                                  const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t i : idx) out.push_back(names[i]);
  return out;
}

}  // namespace

const char* to_string(OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      return "json";
    case OutputFormat::kCsv:
      return "csv";
    case OutputFormat::kTable:
      return "table";
  }
  return "unknown";
}

OutputFormat parse_output_format(const std::string& text) {
  if (text == "json") return OutputFormat::kJson;
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "table") return OutputFormat::kTable;
  throw InputError("unknown output format '" + text + "' (json, csv, table)");
}

Json to_json(const RunConfig& config) {
  Json j;
  j["command"] = config.command;
  j["inputs"] = config.inputs;
  j["input_format"] = config.input_format;
  j["methods"] = config.methods;
  j["order"] = config.order;
  j["divergence"] = config.divergence;
  j["folds"] = config.folds;
  j["seed"] = config.seed;
  j["replicas"] = config.replicas;
  j["grid_resolution"] = config.grid_resolution;
  j["output_format"] = config.output_format;
  j["floor"] = config.floor;
  j["monotone"] = config.monotone;
  Json extra = Json::object();
  for (const auto& [key, value] : config.extra) extra[key] = value;
  j["extra"] = extra;
  return j;
}

std::vector<std::string> provenance_lines(const RunConfig& config) {
  return {std::string(kToolName) + " " + kToolVersion,
          "config: " + to_json(config).dump()};
}

std::vector<std::string> default_estimate_methods(
    const BenchmarkSample& sample) {
  std::vector<std::string> methods{"mle",   "loo_kl",       "loo_tv",
                                   "borda", "average_rank", "plackett_luce"};
  if (sample.is_full() && sample.num_algorithms() <= kMaxAlphabetAlgorithms) {
    methods.push_back("good_turing");
  }
  return methods;
}

EstimateReport run_estimate(const BenchmarkSample& sample,
                            const std::vector<std::string>& methods,
                            const MethodSettings& settings) {
  std::vector<WinProbMethod> fitters;
  for (const auto& name : methods) {
    fitters.push_back(name == "average_rank" ? WinProbMethod{}
                                             : make_method(name, settings));
  }
  EstimateReport report{sample.algorithm_names(), sample.size(),
                        sample.effective_depth(), {}};
  for (std::size_t i = 0; i < methods.size(); ++i) {
    EstimateEntry entry;
    entry.method = methods[i];
    try {
      if (!fitters[i]) {
        entry.scores = average_rank(sample);
        entry.top = top_by_rank(entry.scores);
      } else {
        MethodOutput out = fitters[i](sample);
        entry.win_prob.assign(out.win_prob.values().begin(),
                              out.win_prob.values().end());
        entry.weights = std::move(out.weights);
        entry.note = std::move(out.note);
        entry.top = top_by_probability(entry.win_prob);
      }
    } catch (const std::exception& e) {
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

std::string render_estimate(const EstimateReport& report,
                            const RunConfig& config, OutputFormat format) {
  const auto& names = report.algorithms;
  if (format == OutputFormat::kJson) {
    Json j = envelope(config);
    j["sample"] = {{"n", report.n},
                   {"m", names.size()},
                   {"depth", report.depth},
                   {"algorithms", names}};
    Json methods = Json::object();
    for (const auto& e : report.entries) {
      Json m;
      m["ok"] = e.error.empty();
      if (!e.error.empty()) m["error"] = e.error;
      if (!e.win_prob.empty()) m["win_prob"] = e.win_prob;
      if (!e.scores.empty()) m["mean_rank"] = e.scores;
      if (!e.weights.empty()) m["weights"] = e.weights;
      if (!e.top.empty()) m["top3"] = names_of(e.top, names);
      if (!e.note.empty()) m["note"] = e.note;
      methods[e.method] = m;
    }
    j["methods"] = methods;
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::kCsv) {
    std::string out = header_comments(config);
    out += "method,quantity,index,label,value\n";
    for (const auto& e : report.entries) {
      if (!e.error.empty()) {
        out += e.method + ",error,,," + csv_cell(e.error) + "\n";
        continue;
      }
      for (std::size_t a = 0; a < e.win_prob.size(); ++a) {
        out += e.method + ",win_prob," + std::to_string(a) + "," +
               csv_cell(names[a]) + "," + format_number(e.win_prob[a]) + "\n";
      }
      for (std::size_t a = 0; a < e.scores.size(); ++a) {
        out += e.method + ",mean_rank," + std::to_string(a) + "," +
               csv_cell(names[a]) + "," + format_number(e.scores[a]) + "\n";
      }
      for (std::size_t j = 0; j < e.weights.size(); ++j) {
        out += e.method + ",weight," + std::to_string(j) + ",w" +
               std::to_string(j + 1) + "," + format_number(e.weights[j]) +
               "\n";
      }
    }
    return out;
  }

  std::ostringstream out;
  out << "n = " << report.n << " datasets, m = " << names.size()
      << " algorithms, rank depth " << report.depth << "\n\n";
  TextTable top({"scheme", "1st", "2nd", "3rd", "weights", "note"});
  for (const auto& e : report.entries) {
    std::vector<std::string> row{e.method};
    if (!e.error.empty()) {
      row.insert(row.end(), {"FAILED", "", "", "", e.error});
    } else {
      for (std::size_t r = 0; r < kTopCount; ++r) {
        row.push_back(r < e.top.size() ? names[e.top[r]] : "");
      }
      row.push_back(join_numbers(e.weights, ' '));
      row.push_back(e.note);
    }
    top.add(std::move(row));
  }
  out << top.str() << '\n';

  std::vector<std::string> header{"algorithm"};
  for (const auto& e : report.entries) {
    if (e.error.empty()) {
      header.push_back(e.method + (e.scores.empty() ? "" : " (mean rank)"));
    }
  }
  TextTable probs(header);
  for (std::size_t a = 0; a < names.size(); ++a) {
    std::vector<std::string> row{names[a]};
    for (const auto& e : report.entries) {
      if (!e.error.empty()) continue;
      row.push_back(format_number(e.scores.empty() ? e.win_prob[a]
                                                   : e.scores[a]));
    }
    probs.add(std::move(row));
  }
  out << probs.str();
  return out.str();
}

std::vector<BoundRow> bound_curves(std::size_t m,
                                   const std::vector<std::size_t>& n_values,
                                   const std::vector<std::size_t>& orders,
                                   std::size_t grid_resolution) {
  if (m < 2) throw InputError("bounds need m >= 2");
  for (std::size_t K : orders) {
    if (K < 1 || K > m) {
      throw InfeasibleError("model order K=" + std::to_string(K) +
                            " outside [1, m=" + std::to_string(m) + "]");
    }
  }
  TopKSearchOptions options;
  options.grid_resolution = grid_resolution;
  std::vector<BoundRow> rows;
  for (std::size_t n : n_values) {
    if (n < 1) throw InputError("sample sizes must be >= 1");
    rows.push_back({n, "mle", 1, mle_minimax_bound(m, n), {1.0}});
    const double w = two_rank_minimax_weight(n);
    rows.push_back({n, "two_rank", 2, two_rank_bound(m, n, w), {w, 1.0 - w}});
    for (std::size_t K : orders) {
      TopKOptimum opt = top_k_optimal_weights(m, n, K, options);
      rows.push_back({n, "top_k", K, opt.bound,
                      std::vector<double>(opt.weights.values().begin(),
                                          opt.weights.values().end())});
    }
  }
  return rows;
}

std::string render_bounds(std::size_t m, const std::vector<BoundRow>& rows,
                          const RunConfig& config, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    Json j = envelope(config);
    j["m"] = m;
    Json list = Json::array();
    for (const auto& r : rows) {
      list.push_back({{"n", r.n},
                      {"curve", r.curve},
                      {"K", r.order},
                      {"value", r.value},
                      {"weights", r.weights}});
    }
    j["rows"] = list;
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::kCsv) {
    std::string out = header_comments(config);
    out += "m,n,curve,K,value,weights\n";
    for (const auto& r : rows) {
      out += std::to_string(m) + "," + std::to_string(r.n) + "," + r.curve +
             "," + std::to_string(r.order) + "," + format_number(r.value) +
             "," + join_numbers(r.weights, ';') + "\n";
    }
    return out;
  }
  TextTable t({"m", "n", "curve", "K", "value", "weights"});
  for (const auto& r : rows) {
    t.add({std::to_string(m), std::to_string(r.n), r.curve,
           std::to_string(r.order), format_number(r.value),
           join_numbers(r.weights, ' ')});
  }
  return t.str();
}

std::string render_risk(const std::vector<RiskTable>& tables,
                        const RunConfig& config, OutputFormat format) {
  if (format == OutputFormat::kJson) {
    Json j = envelope(config);
    Json list = Json::array();
    for (const auto& table : tables) {
      for (const auto& r : table.rows) {
        Json row{{"family", table.distribution},
                 {"estimator", r.estimator},
                 {"n", r.n},
                 {"kind", to_string(r.kind)},
                 {"mean_risk", r.mean_risk},
                 {"stderr", r.standard_error},
                 {"replicas", r.replicas}};
        if (!r.mean_weights.empty()) row["mean_weights"] = r.mean_weights;
        list.push_back(row);
      }
    }
    j["rows"] = list;
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::kCsv) {
    std::string out = header_comments(config);
    out += "family,estimator,n,kind,mean_risk,stderr,replicas\n";
    for (const auto& table : tables) {
      for (const auto& r : table.rows) {
        out += table.distribution + "," + r.estimator + "," +
               std::to_string(r.n) + "," + to_string(r.kind) + "," +
               format_number(r.mean_risk) + "," +
               format_number(r.standard_error) + "," +
               std::to_string(r.replicas) + "\n";
      }
    }
    return out;
  }
  TextTable t({"family", "estimator", "n", "kind", "mean_risk", "stderr",
               "replicas", "mean weights"});
  for (const auto& table : tables) {
    for (const auto& r : table.rows) {
      t.add({table.distribution, r.estimator, std::to_string(r.n),
             to_string(r.kind), format_number(r.mean_risk),
             format_number(r.standard_error), std::to_string(r.replicas),
             join_numbers(r.mean_weights, ' ')});
    }
  }
  return t.str();
}

std::string render_weight_traces(const std::vector<RiskTable>& tables,
                                 const RunConfig& config) {
  std::size_t K = 0;
  for (const auto& table : tables) {
    for (const auto& r : table.rows) K = std::max(K, r.mean_weights.size());
  }
  std::string out = header_comments(config);
  out += "family,estimator,n";
  for (std::size_t j = 0; j < K; ++j) out += ",w" + std::to_string(j + 1);
  out += "\n";
  // One line per (family, estimator, n); rows repeat per divergence kind.
  std::set<std::tuple<std::string, std::string, std::size_t>> seen;
  for (const auto& table : tables) {
    for (const auto& r : table.rows) {
      if (r.mean_weights.empty()) continue;
      if (!seen.insert({table.distribution, r.estimator, r.n}).second) continue;
      out += table.distribution + "," + r.estimator + "," +
             std::to_string(r.n);
      for (std::size_t j = 0; j < K; ++j) {
        out += "," + (j < r.mean_weights.size()
                          ? format_number(r.mean_weights[j])
                          : std::string("0"));
      }
      out += "\n";
    }
  }
  return out;
}

std::vector<std::string> default_validation_methods() {
  return {"mle", "loo_kl", "borda", "plackett_luce"};
}

ValidationSummary run_validation(const BenchmarkSample& sample, std::size_t k,
                                 const std::vector<std::string>& methods,
                                 std::uint64_t seed,
                                 const MethodSettings& settings,
                                 const CvOptions& options) {
  std::vector<CvMethod> cv_methods;
  for (const auto& name : methods) {
    cv_methods.push_back({name, make_method(name, settings)});
  }
  ValidationSummary summary{kfold_cv(sample, k, cv_methods, seed, options),
                            sample.algorithm_names(),
                            {}};
  for (const auto& method : cv_methods) {
    try {
      const MethodOutput out = method.fit(sample);
      summary.top.push_back(top_by_probability(std::vector<double>(
          out.win_prob.values().begin(), out.win_prob.values().end())));
    } catch (const InfeasibleError& e) {
      throw InfeasibleError(method.name + " failed on the full sample: " +
                            e.what());
    } catch (const std::exception& e) {
      throw InputError(method.name + " failed on the full sample: " +
                       e.what());
    }
  }
  return summary;
}

std::string render_validation(const ValidationSummary& summary,
                              const RunConfig& config, OutputFormat format) {
  const CvReport& cv = summary.cv;
  const std::string p_label = cv.reference.empty()
                                  ? std::string("p_value")
                                  : "p_value_vs_" + cv.reference;
  auto p_text = [](double p) {
    return p < 0.0 ? std::string("-") : format_number(p);
  };
  if (format == OutputFormat::kJson) {
    Json j = envelope(config);
    j["k"] = cv.k;
    j["seed"] = cv.seed;
    j["floor"] = cv.floor;
    j["reference"] = cv.reference;
    j["test"] = to_string(cv.test);
    j["folds"] = cv.folds;
    Json methods = Json::object();
    for (std::size_t i = 0; i < cv.methods.size(); ++i) {
      const auto& r = cv.methods[i];
      Json m{{"top3", names_of(summary.top[i], summary.algorithms)},
             {"fold_losses", r.fold_losses},
             {"mean_loss", r.mean_loss}};
      if (r.p_value_vs_reference >= 0.0) {
        m[p_label] = r.p_value_vs_reference;
      }
      methods[r.name] = m;
    }
    j["methods"] = methods;
    return j.dump(2) + "\n";
  }
  if (format == OutputFormat::kCsv) {
    std::string out = header_comments(config);
    out += "method,top1,top2,top3,mean_loss," + p_label;
    for (std::size_t f = 0; f < cv.k; ++f) {
      out += ",fold" + std::to_string(f + 1);
    }
    out += "\n";
    for (std::size_t i = 0; i < cv.methods.size(); ++i) {
      const auto& r = cv.methods[i];
      const auto top = names_of(summary.top[i], summary.algorithms);
      out += r.name;
      for (std::size_t t = 0; t < kTopCount; ++t) {
        out += "," + (t < top.size() ? csv_cell(top[t]) : std::string());
      }
      out += "," + format_number(r.mean_loss) + "," +
             (r.p_value_vs_reference < 0.0
                  ? std::string()
                  : format_number(r.p_value_vs_reference));
      for (double loss : r.fold_losses) out += "," + format_number(loss);
      out += "\n";
    }
    return out;
  }
  std::ostringstream out;
  out << cv.k << "-fold cross-validation, seed " << cv.seed << ", "
      << to_string(cv.test) << " test\n\n";
  TextTable t({"scheme", "1st", "2nd", "3rd", "avg loss", p_label});
  for (std::size_t i = 0; i < cv.methods.size(); ++i) {
    const auto& r = cv.methods[i];
    const auto top = names_of(summary.top[i], summary.algorithms);
    std::vector<std::string> row{r.name};
    for (std::size_t k = 0; k < kTopCount; ++k) {
      row.push_back(k < top.size() ? top[k] : "");
    }
    row.push_back(format_number(r.mean_loss));
    row.push_back(p_text(r.p_value_vs_reference));
    t.add(std::move(row));
  }
  out << t.str();
  return out.str();
}

}  // namespace rankwin
