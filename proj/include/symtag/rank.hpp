#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace symtag {

enum class Metric { kP, kR, kF1, kPP, kPR, kPF1 };

inline constexpr std::array<Metric, 6> kAllMetrics = {Metric::kP,  Metric::kR,  Metric::kF1,
                                                      Metric::kPP, Metric::kPR, Metric::kPF1};
inline constexpr std::array<Metric, 3> kExactMetrics = {Metric::kP, Metric::kR, Metric::kF1};
inline constexpr std::array<Metric, 3> kPartialMetrics = {Metric::kPP, Metric::kPR, Metric::kPF1};

std::string_view metric_name(Metric m);
std::optional<Metric> parse_metric(std::string_view name);

struct GridRow {
  std::string model;
  std::string train_set;
  std::string test_set;
  std::array<std::optional<double>, 6> values{};

  std::optional<double> get(Metric m) const { return values[static_cast<std::size_t>(m)]; }
  void set(Metric m, double v) { values[static_cast<std::size_t>(m)] = v; }
};

/// (model x training set x test set) metric table. Keys are unique; rows
/// keep insertion order, which also fixes the order of models and
/// training sets in every derived table.
class MetricGrid {
 public:
  /// Throws ArgumentError on a duplicate key or a value outside [0, 1].
  void add(GridRow row);

  const std::vector<GridRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

  const GridRow* find(std::string_view model, std::string_view train_set, std::string_view test_set) const;
  GridRow* find(std::string_view model, std::string_view train_set, std::string_view test_set);

  std::vector<std::string> models() const;
  std::vector<std::string> train_sets() const;
  std::vector<std::string> test_sets() const;
  bool has_metric(Metric m) const;

 private:
  std::vector<GridRow> rows_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// CSV with header model,train_set,test_set followed by any of the metric
/// columns P,R,F1,pP,pR,pF1. Empty cells are absent values.
MetricGrid load_grid(std::string_view csv_text);

/// Overlays b onto a. A cell set in both must hold the same value.
MetricGrid merge_grids(const MetricGrid& a, const MetricGrid& b);

/// For one (model, test set, metric) column: true for every training set
/// whose value is one of the two highest distinct values in the column.
std::map<std::string, bool> top_two_flags(const MetricGrid& grid, std::string_view model,
                                          std::string_view test_set, Metric metric);

enum class ScoreKind { kExact, kPartial };

/// Top-two counts for P/R/F1 (or pP/pR/pF1). A component is nullopt when
/// the grid has no values for that metric.
struct ScoreTriple {
  std::array<std::optional<std::size_t>, 3> by_metric{};

  std::size_t total() const;
  friend bool operator==(const ScoreTriple&, const ScoreTriple&) = default;
};

ScoreTriple make_triple(std::size_t p, std::size_t r, std::size_t f1);

std::map<std::string, ScoreTriple> score(const MetricGrid& grid, std::string_view model,
                                         std::span<const std::string> tests, ScoreKind kind);

struct TestGroup {
  std::string name;
  std::vector<std::string> tests;
};

struct RankRow {
  std::string model;
  std::string train_set;
  ScoreTriple score;
  std::optional<ScoreTriple> pscore;

  std::size_t total() const { return score.total() + (pscore ? pscore->total() : 0); }
};

struct RankGroup {
  std::string name;
  std::vector<std::string> tests;
  std::vector<RankRow> rows;  // model-major, training sets in grid order
};

using RankTable = std::vector<RankGroup>;

RankTable rank_table(const MetricGrid& grid, std::span<const TestGroup> groups);

/// Parses "name=test1,test2,...".
TestGroup parse_group(std::string_view spec);

}  // namespace symtag
