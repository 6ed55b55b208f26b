#include "symtag/rank.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "symtag/csv.hpp"
#include "symtag/error.hpp"

namespace symtag {

namespace {

std::string grid_key(std::string_view model, std::string_view train, std::string_view test) {
  std::string k(model);
  k += '\x1f';
  k += train;
  k += '\x1f';
  k += test;
  return k;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_value(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return v;
}

std::vector<std::string> ordered_unique(const std::vector<GridRow>& rows, std::string GridRow::*field) {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& r : rows) {
    if (seen.insert(r.*field).second) out.push_back(r.*field);
  }
  return out;
}

std::vector<const GridRow*> slice(const MetricGrid& grid, std::string_view model, std::string_view test) {
  std::vector<const GridRow*> out;
  for (const auto& r : grid.rows()) {
    if (r.model == model && r.test_set == test) out.push_back(&r);
  }
  return out;
}

// Whether every row of the (model, tests) selection carries the metric.
// Mixed presence is an error; complete absence returns false.
bool metric_available(const MetricGrid& grid, std::string_view model, std::span<const std::string> tests,
                      Metric metric) {
  std::size_t present = 0;
  std::size_t total = 0;
  for (const auto& test : tests) {
    for (const GridRow* r : slice(grid, model, test)) {
      ++total;
      if (r->get(metric)) ++present;
    }
  }
  if (present != 0 && present != total) {
    throw CapabilityError("metric " + std::string(metric_name(metric)) + " is missing for some rows of model '" +
                          std::string(model) + "'");
  }
  return present != 0;
}

}  // namespace

std::string_view metric_name(Metric m) {
  switch (m) {
    case Metric::kP:
      return "P";
    case Metric::kR:
      return "R";
    case Metric::kF1:
      return "F1";
    case Metric::kPP:
      return "pP";
    case Metric::kPR:
      return "pR";
    case Metric::kPF1:
      return "pF1";
  }
  return "?";
}

std::optional<Metric> parse_metric(std::string_view name) {
  for (Metric m : kAllMetrics) {
    if (metric_name(m) == name) return m;
  }
  return std::nullopt;
}

void MetricGrid::add(GridRow row) {
  if (row.model.empty() || row.train_set.empty() || row.test_set.empty()) {
    throw ArgumentError("grid row needs model, train_set and test_set");
  }
  for (Metric m : kAllMetrics) {
    if (auto v = row.get(m); v && !(*v >= 0.0 && *v <= 1.0)) {
      throw ArgumentError("value " + std::to_string(*v) + " of " + std::string(metric_name(m)) +
                          " is outside [0, 1]");
    }
  }
  if (std::none_of(row.values.begin(), row.values.end(), [](const auto& v) { return v.has_value(); })) {
    throw ArgumentError("grid row (" + row.model + ", " + row.train_set + ", " + row.test_set + ") has no metric values");
  }
  auto key = grid_key(row.model, row.train_set, row.test_set);
  if (index_.contains(key)) {
    throw ArgumentError("duplicate grid row (" + row.model + ", " + row.train_set + ", " + row.test_set + ")");
  }
  index_.emplace(std::move(key), rows_.size());
  rows_.push_back(std::move(row));
}

const GridRow* MetricGrid::find(std::string_view model, std::string_view train_set, std::string_view test_set) const {
  auto it = index_.find(grid_key(model, train_set, test_set));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

GridRow* MetricGrid::find(std::string_view model, std::string_view train_set, std::string_view test_set) {
  auto it = index_.find(grid_key(model, train_set, test_set));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

std::vector<std::string> MetricGrid::models() const { return ordered_unique(rows_, &GridRow::model); }
std::vector<std::string> MetricGrid::train_sets() const { return ordered_unique(rows_, &GridRow::train_set); }
std::vector<std::string> MetricGrid::test_sets() const { return ordered_unique(rows_, &GridRow::test_set); }

bool MetricGrid::has_metric(Metric m) const {
  return std::any_of(rows_.begin(), rows_.end(), [m](const GridRow& r) { return r.get(m).has_value(); });
}

MetricGrid load_grid(std::string_view csv_text) {
  MetricGrid grid;
  const auto records = csv::parse(csv_text);
  if (records.empty()) return grid;

  const auto& header = records.front();
  int col_model = -1, col_train = -1, col_test = -1;
  std::vector<std::optional<Metric>> metric_cols(header.fields.size());
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const std::string_view name = trim(header.fields[i]);
    if (name == "model") {
      col_model = static_cast<int>(i);
    } else if (name == "train_set") {
      col_train = static_cast<int>(i);
    } else if (name == "test_set") {
      col_test = static_cast<int>(i);
    } else if (auto m = parse_metric(name)) {
      metric_cols[i] = m;
    } else {
      throw ParseError(header.line, "unknown grid column '" + std::string(name) + "'");
    }
  }
  if (col_model < 0 || col_train < 0 || col_test < 0) {
    throw ParseError(header.line, "grid header needs model, train_set and test_set columns");
  }

  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    if (rec.fields.size() != header.fields.size()) {
      throw ParseError(rec.line, "expected " + std::to_string(header.fields.size()) + " fields, got " +
                                     std::to_string(rec.fields.size()));
    }
    GridRow row;
    row.model = std::string(trim(rec.fields[static_cast<std::size_t>(col_model)]));
    row.train_set = std::string(trim(rec.fields[static_cast<std::size_t>(col_train)]));
    row.test_set = std::string(trim(rec.fields[static_cast<std::size_t>(col_test)]));
    for (std::size_t i = 0; i < rec.fields.size(); ++i) {
      if (!metric_cols[i] || trim(rec.fields[i]).empty()) continue;
      auto v = parse_value(rec.fields[i]);
      if (!v) throw ParseError(rec.line, "'" + rec.fields[i] + "' is not a number");
      row.set(*metric_cols[i], *v);
    }
    try {
      grid.add(std::move(row));
    } catch (const ArgumentError& e) {
      throw ParseError(rec.line, e.what());
    }
  }
  return grid;
}

MetricGrid merge_grids(const MetricGrid& a, const MetricGrid& b) {
  std::vector<GridRow> rows = a.rows();
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < rows.size(); ++i) at[grid_key(rows[i].model, rows[i].train_set, rows[i].test_set)] = i;
  for (const auto& row : b.rows()) {
    auto key = grid_key(row.model, row.train_set, row.test_set);
    auto it = at.find(key);
    if (it == at.end()) {
      at.emplace(std::move(key), rows.size());
      rows.push_back(row);
      continue;
    }
    GridRow& target = rows[it->second];
    for (Metric m : kAllMetrics) {
      auto v = row.get(m);
      if (!v) continue;
      if (auto existing = target.get(m); existing && *existing != *v) {
        throw DataError("conflicting " + std::string(metric_name(m)) + " for (" + row.model + ", " +
                        row.train_set + ", " + row.test_set + ")");
      }
      target.set(m, *v);
    }
  }
  MetricGrid out;
  for (auto& r : rows) out.add(std::move(r));
  return out;
}

std::map<std::string, bool> top_two_flags(const MetricGrid& grid, std::string_view model, std::string_view test_set,
                                          Metric metric) {
  const auto rows = slice(grid, model, test_set);
  if (rows.empty()) {
    throw LookupError("no rows for model '" + std::string(model) + "' on test set '" + std::string(test_set) + "'");
  }
  std::vector<double> distinct;
  for (const GridRow* r : rows) {
    auto v = r->get(metric);
    if (!v) {
      throw CapabilityError(std::string(metric_name(metric)) + " missing for (" + r->model + ", " + r->train_set +
                            ", " + r->test_set + ")");
    }
    distinct.push_back(*v);
  }
  std::sort(distinct.begin(), distinct.end(), std::greater<>());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const double cutoff = distinct.size() >= 2 ? distinct[1] : distinct[0];

  std::map<std::string, bool> flags;
  for (const GridRow* r : rows) flags[r->train_set] = *r->get(metric) >= cutoff;
  return flags;
}

std::size_t ScoreTriple::total() const {
  std::size_t t = 0;
  for (const auto& c : by_metric) t += c.value_or(0);
  return t;
}

ScoreTriple make_triple(std::size_t p, std::size_t r, std::size_t f1) {
  ScoreTriple t;
  t.by_metric = {p, r, f1};
  return t;
}

std::map<std::string, ScoreTriple> score(const MetricGrid& grid, std::string_view model,
                                         std::span<const std::string> tests, ScoreKind kind) {
  const auto& metrics = kind == ScoreKind::kExact ? kExactMetrics : kPartialMetrics;
  std::array<bool, 3> available{};
  for (std::size_t k = 0; k < 3; ++k) available[k] = metric_available(grid, model, tests, metrics[k]);

  if (kind == ScoreKind::kExact && !std::all_of(available.begin(), available.end(), [](bool b) { return b; })) {
    throw CapabilityError("exact metrics P, R and F1 are required to score model '" + std::string(model) + "'");
  }
  if (kind == ScoreKind::kPartial && std::none_of(available.begin(), available.end(), [](bool b) { return b; })) {
    throw CapabilityError("no partial metric columns (pP, pR, pF1) for model '" + std::string(model) + "'");
  }

  std::map<std::string, ScoreTriple> out;
  for (const auto& test : tests) {
    for (const GridRow* r : slice(grid, model, test)) {
      auto& triple = out[r->train_set];
      for (std::size_t k = 0; k < 3; ++k) {
        if (available[k] && !triple.by_metric[k]) triple.by_metric[k] = 0;
      }
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (!available[k]) continue;
      for (const auto& [train, flag] : top_two_flags(grid, model, test, metrics[k])) {
        if (flag) ++*out[train].by_metric[k];
      }
    }
  }
  return out;
}

RankTable rank_table(const MetricGrid& grid, std::span<const TestGroup> groups) {
  RankTable table;
  if (grid.empty()) return table;

  const auto known_tests = grid.test_sets();
  for (const auto& group : groups) {
    for (const auto& t : group.tests) {
      if (std::find(known_tests.begin(), known_tests.end(), t) == known_tests.end()) {
        throw ArgumentError("group '" + group.name + "' names unknown test set '" + t + "'");
      }
    }
  }

  const auto models = grid.models();
  const auto train_order = grid.train_sets();
  for (const auto& group : groups) {
    RankGroup rg{group.name, group.tests, {}};
    for (const auto& model : models) {
      const bool covered = std::any_of(group.tests.begin(), group.tests.end(),
                                       [&](const std::string& t) { return !slice(grid, model, t).empty(); });
      if (!covered) continue;
      const auto exact = score(grid, model, group.tests, ScoreKind::kExact);

      bool any_partial = false;
      for (Metric m : kPartialMetrics) any_partial = any_partial || metric_available(grid, model, group.tests, m);
      std::map<std::string, ScoreTriple> partial;
      if (any_partial) partial = score(grid, model, group.tests, ScoreKind::kPartial);

      for (const auto& train : train_order) {
        auto it = exact.find(train);
        if (it == exact.end()) continue;
        RankRow row{model, train, it->second, std::nullopt};
        if (any_partial) row.pscore = partial.at(train);
        rg.rows.push_back(std::move(row));
      }
    }
    table.push_back(std::move(rg));
  }
  return table;
}

TestGroup parse_group(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos || eq == 0 || eq + 1 == spec.size()) {
    throw ArgumentError("group must look like name=test1,test2,... (got '" + std::string(spec) + "')");
  }
  TestGroup g;
  g.name = std::string(spec.substr(0, eq));
  std::string_view rest = spec.substr(eq + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    auto item = trim(rest.substr(0, comma));
    if (item.empty()) throw ArgumentError("empty test name in group '" + g.name + "'");
    g.tests.emplace_back(item);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return g;
}

}  // namespace symtag
