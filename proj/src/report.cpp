#include "symtag/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "symtag/csv.hpp"
#include "symtag/error.hpp"

namespace symtag {

namespace {

constexpr std::string_view kMissing = "—";

void check_options(const RenderOptions& opts) {
  if (opts.precision_digits < 1 || opts.precision_digits > 6) {
    throw ArgumentError("precision_digits must be in [1, 6]");
  }
}

// Code points, so multi-byte cells like the em dash pad correctly.
std::size_t display_width(std::string_view s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

std::string pad(const std::string& s, std::size_t width) {
  return s + std::string(width - std::min(width, display_width(s)), ' ');
}

}  // namespace

std::string render_table(const TextTable& table, Format format) {
  if (format == Format::kCsv) {
    std::string out = csv::format_row(table.header);
    for (const auto& row : table.rows) out += csv::format_row(row);
    return out;
  }
  std::vector<std::size_t> widths(table.header.size(), 3);
  auto widen = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size() && i < widths.size(); ++i) {
      widths[i] = std::max(widths[i], display_width(row[i]));
    }
  };
  widen(table.header);
  for (const auto& row : table.rows) widen(row);

  auto line = [&](const std::vector<std::string>& row) {
    std::string out = "|";
    for (std::size_t i = 0; i < widths.size(); ++i) {
      out += ' ';
      out += pad(i < row.size() ? row[i] : std::string(), widths[i]);
      out += " |";
    }
    out += '\n';
    return out;
  };
  std::string out = line(table.header);
  out += '|';
  for (auto w : widths) out += std::string(w + 2, '-') + '|';
  out += '\n';
  for (const auto& row : table.rows) out += line(row);
  return out;
}

std::string format_fixed(double value, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

std::string format_percent(double fraction, int precision_digits) {
  const int decimals = std::max(0, precision_digits - 2);
  return format_fixed(fraction * 100.0, decimals) + "%";
}

std::string render_stats(std::span<const NamedStats> rows, const RenderOptions& opts) {
  check_options(opts);
  if (rows.empty()) throw ArgumentError("render_stats: no rows");
  TextTable t;
  t.header = {"Corpus",
              "# Sentences",
              "# Entities",
              "# Distinct Entities",
              "% Sentences with Entities",
              "Max Entity Length",
              "% One-word Entities"};
  for (const auto& [name, s] : rows) {
    t.rows.push_back({name, std::to_string(s.n_sentences), std::to_string(s.n_entities),
                      std::to_string(s.n_distinct_entities),
                      format_percent(s.pct_sentences_with_entity, opts.precision_digits),
                      std::to_string(s.max_entity_length), format_percent(s.pct_one_word, opts.precision_digits)});
  }
  return render_table(t, opts.format);
}

std::string render_metric_grid(const MetricGrid& grid, const RenderOptions& opts) {
  check_options(opts);
  if (grid.empty()) throw ArgumentError("render_metric_grid: grid is empty");

  const auto models = grid.models();
  const auto trains = grid.train_sets();
  const auto tests = grid.test_sets();
  std::vector<Metric> metrics;
  for (Metric m : kAllMetrics) {
    if (grid.has_metric(m)) metrics.push_back(m);
  }

  TextTable t;
  t.header = {"Test Set", "Training Set"};
  for (const auto& model : models) {
    for (Metric m : metrics) t.header.push_back(model + " " + std::string(metric_name(m)));
  }

  for (const auto& test : tests) {
    // Markers per (model, metric) column within this test block.
    std::map<std::pair<std::string, Metric>, std::pair<std::map<std::string, bool>, double>> marks;
    if (opts.mark_top) {
      for (const auto& model : models) {
        for (Metric m : metrics) {
          try {
            auto flags = top_two_flags(grid, model, test, m);
            double best = 0.0;
            for (const auto& train : trains) {
              if (const GridRow* r = grid.find(model, train, test)) best = std::max(best, *r->get(m));
            }
            marks[{model, m}] = {std::move(flags), best};
          } catch (const DataError&) {
            // Column incomplete for this block; leave it unmarked.
          }
        }
      }
    }
    for (const auto& train : trains) {
      bool any = false;
      std::vector<std::string> row = {test, train};
      for (const auto& model : models) {
        const GridRow* r = grid.find(model, train, test);
        any = any || r != nullptr;
        for (Metric m : metrics) {
          std::string cell;
          if (r && r->get(m)) {
            const double v = *r->get(m);
            cell = format_fixed(v, opts.precision_digits);
            if (auto it = marks.find({model, m}); it != marks.end() && it->second.first.at(train)) {
              cell += v == it->second.second ? "*" : "^";
            }
          }
          row.push_back(std::move(cell));
        }
      }
      if (any) t.rows.push_back(std::move(row));
    }
  }
  return render_table(t, opts.format);
}

std::string format_triple(const ScoreTriple& triple) {
  std::string out = std::to_string(triple.total()) + "(";
  for (std::size_t k = 0; k < 3; ++k) {
    if (k > 0) out += ',';
    out += triple.by_metric[k] ? std::to_string(*triple.by_metric[k]) : "-";
  }
  out += ')';
  return out;
}

std::string render_score_table(const RankTable& table, const RenderOptions& opts) {
  check_options(opts);
  std::vector<std::string> models;
  for (const auto& g : table) {
    for (const auto& r : g.rows) {
      if (std::find(models.begin(), models.end(), r.model) == models.end()) models.push_back(r.model);
    }
  }
  TextTable t;
  t.header = {"Test Group", "Training Set"};
  for (const auto& m : models) {
    t.header.push_back(m + " Score");
    t.header.push_back(m + " pScore");
    t.header.push_back(m + " Tot");
  }
  for (const auto& g : table) {
    std::vector<std::string> trains;
    for (const auto& r : g.rows) {
      if (std::find(trains.begin(), trains.end(), r.train_set) == trains.end()) trains.push_back(r.train_set);
    }
    for (const auto& train : trains) {
      std::vector<std::string> row = {g.name, train};
      for (const auto& m : models) {
        auto it = std::find_if(g.rows.begin(), g.rows.end(),
                               [&](const RankRow& r) { return r.model == m && r.train_set == train; });
        if (it == g.rows.end()) {
          row.insert(row.end(), {std::string(kMissing), std::string(kMissing), std::string(kMissing)});
          continue;
        }
        row.push_back(format_triple(it->score));
        row.push_back(it->pscore ? format_triple(*it->pscore) : std::string(kMissing));
        row.push_back(std::to_string(it->total()));
      }
      t.rows.push_back(std::move(row));
    }
  }
  return render_table(t, opts.format);
}

std::string render_length_table(std::span<const NamedLengthTable> rows, const RenderOptions& opts) {
  check_options(opts);
  TextTable t;
  t.header = {"Run", "TP-1", "TP-2", "TP-3", "TP-4+"};
  for (const auto& [name, table] : rows) {
    std::vector<std::string> row = {name};
    for (const auto& b : table.buckets) {
      row.push_back(b.gold == 0 ? "n/a" : format_percent(b.proportion(), opts.precision_digits));
    }
    t.rows.push_back(std::move(row));
  }
  return render_table(t, opts.format);
}

std::string render_eval(const EvalResult& result, bool exact, bool partial, const RenderOptions& opts) {
  check_options(opts);
  TextTable t;
  t.header = {"mode", "TP", "FP", "FN", "P", "R", "F1"};
  auto add = [&](std::string_view mode, const Counts& c, const Metrics& m) {
    t.rows.push_back({std::string(mode), std::to_string(c.tp), std::to_string(c.fp), std::to_string(c.fn),
                      format_fixed(m.precision, opts.precision_digits), format_fixed(m.recall, opts.precision_digits),
                      format_fixed(m.f1, opts.precision_digits)});
  };
  if (exact) add(mode_name(MatchMode::kExact), result.exact, result.exact_metrics);
  if (partial) add(mode_name(MatchMode::kPartial), result.partial, result.partial_metrics);
  return render_table(t, opts.format);
}

std::string render_terms(const TermCounts& terms) {
  std::vector<std::pair<std::string, std::size_t>> items(terms.begin(), terms.end());
  std::stable_sort(items.begin(), items.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::string out;
  for (const auto& [term, count] : items) out += term + '\t' + std::to_string(count) + '\n';
  return out;
}

}  // namespace symtag
