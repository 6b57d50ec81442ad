#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "newsattn/date.hpp"
#include "newsattn/error.hpp"
#include "newsattn/titles.hpp"

namespace newsattn {

/// (article, day) -> daily page views. Missing keys read as 0.
///
/// On disk the store is a directory holding `series.bin` (one chunk of
/// little-endian int64 counts per title, consecutive days) and `index.tsv`
/// ("title<TAB>first_day<TAB>days<TAB>byte_offset", sorted by title).
class DailySeriesStore {
 public:
  void add(const std::string& title, Day day, std::int64_t views);

  std::int64_t get(const std::string& title, Day day) const;
  bool contains(const std::string& title) const { return series_.count(title) != 0; }

  /// `length` consecutive days starting at `first`.
  std::vector<double> window(const std::string& title, Day first, std::size_t length) const;

  std::vector<std::string> titles() const;
  std::int64_t total(const std::string& title) const;
  std::size_t size() const { return series_.size(); }

  void save(const std::filesystem::path& dir) const;
  static DailySeriesStore load(const std::filesystem::path& dir);

  /// Debug export: "title<TAB>YYYY-MM-DD<TAB>views" for every non-zero day.
  void export_tsv(std::ostream& out) const;

  bool operator==(const DailySeriesStore&) const = default;

 private:
  struct Series {
    Day first{};
    std::vector<std::int64_t> values;
    bool operator==(const Series&) const = default;
  };
  std::map<std::string, Series> series_;
};

/// Default page-view projects: desktop, mobile and Zero English Wikipedia.
inline const std::set<std::string> kDefaultDomainPrefixes = {"en.z", "en.m", "en.zero"};

/// Recognizes "pageviews-YYYYMMDD-HHMMSS" / "pagecounts-YYYYMMDD-HHMMSS"
/// (optionally with an extension) and returns (day, hour).
std::optional<std::pair<Day, int>> parse_hourly_filename(const std::string& filename);

/// Sums hourly "project title count bytes" lines into UTC daily totals per
/// canonical title (aliases merged through the redirect map).
class DailyAggregator {
 public:
  DailyAggregator(const RedirectMap& redirects, std::set<std::string> domain_prefixes = kDefaultDomainPrefixes);

  /// Restricts aggregation to these canonical titles (all when unset).
  void restrict_to(std::set<std::string> titles) { wanted_ = std::move(titles); }

  void add_hourly(Day day, std::istream& lines, Diagnostics& diag);
  void add_line(Day day, std::string_view line, Diagnostics& diag);

  std::size_t lines_parsed() const { return parsed_; }
  std::size_t lines_skipped() const { return skipped_; }

  const DailySeriesStore& store() const { return store_; }
  DailySeriesStore take() { return std::move(store_); }

 private:
  const RedirectMap& redirects_;
  std::set<std::string> prefixes_;
  std::optional<std::set<std::string>> wanted_;
  DailySeriesStore store_;
  std::size_t parsed_ = 0;
  std::size_t skipped_ = 0;
};

/// Convenience wrapper over DailyAggregator for in-memory line lists.
DailySeriesStore aggregate_daily(const std::vector<std::pair<Day, std::string>>& hourly_lines,
                                 const std::set<std::string>& domain_prefixes, const RedirectMap& redirects,
                                 Diagnostics& diag);

}  // namespace newsattn
