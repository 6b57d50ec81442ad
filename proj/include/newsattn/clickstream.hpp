#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "newsattn/date.hpp"
#include "newsattn/error.hpp"
#include "newsattn/titles.hpp"

namespace newsattn {

/// Monthly click count for one (source, target) article pair.
struct ClickRecord {
  std::string source;
  std::string target;
  Month month;
  std::int64_t count = 0;

  bool operator==(const ClickRecord&) const = default;
};

/// Minimum monthly count published in the clickstream dumps is 11.
inline constexpr std::int64_t kClickstreamMinCount = 11;

/// Streams "prev<TAB>curr<TAB>type<TAB>n" rows.
///
/// A row is kept iff type is "link", the referrer is an article (not an
/// "other-*" pseudo title) and not the Main Page, and n > 10. Titles are
/// normalized and passed through `redirects`. Malformed rows are rejected with
/// a diagnostic and parsing continues.
void parse_clickstream(std::istream& in, Month month, const RedirectMap& redirects, Diagnostics& diag,
                       const std::function<void(ClickRecord&&)>& sink);

std::vector<ClickRecord> parse_clickstream(std::istream& in, Month month, const RedirectMap& redirects,
                                           Diagnostics& diag);

/// All months of clicks, indexed for neighbourhood queries.
///
/// Rows that collapse onto the same canonical pair after redirect resolution
/// are summed. Self-loops are kept here and dropped at graph build time.
class ClickstreamStore {
 public:
  void add(const ClickRecord& record);

  /// Click count, 0 when absent.
  std::int64_t count(Month month, const std::string& source, const std::string& target) const;

  /// Out/in neighbours of `title` in `month` as (neighbour, count), sorted by title.
  std::vector<std::pair<std::string, std::int64_t>> out_neighbors(Month month, const std::string& title) const;
  std::vector<std::pair<std::string, std::int64_t>> in_neighbors(Month month, const std::string& title) const;

  std::vector<Month> months() const;
  std::size_t size() const;

  /// Canonical TSV per month: "source<TAB>target<TAB>link<TAB>count", rows sorted.
  void write_month_tsv(Month month, std::ostream& out) const;

 private:
  using Adjacency = std::unordered_map<std::string, std::map<std::string, std::int64_t>>;
  struct MonthData {
    Adjacency out;
    Adjacency in;
  };
  std::map<Month, MonthData> months_;
};

}  // namespace newsattn
