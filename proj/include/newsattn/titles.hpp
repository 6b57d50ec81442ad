#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>

namespace newsattn {

/// Canonical internal form of an article title: underscores become spaces,
/// runs of whitespace collapse, surrounding whitespace is trimmed and an ASCII
/// first character is upper-cased (MediaWiki first-letter convention).
std::string normalize_title(std::string_view raw);

/// True when the (normalized) title sits outside the article namespace,
/// e.g. "Category:Foo" or "Talk:Bar".
bool is_non_article_title(std::string_view title);

/// Title as it appears in dump files (spaces written as underscores).
std::string dump_title(std::string_view title);

/// Many-to-one alias -> canonical title mapping.
///
/// Chains are collapsed on `finalize()` so a single lookup always lands on the
/// terminal title; cycles are rejected. Canonical titles resolve to themselves.
class RedirectMap {
 public:
  void add(std::string_view alias, std::string_view canonical);

  /// Collapses chains. Throws DataError on a cycle.
  void finalize();

  /// Normalizes `title` and follows the redirect, if any.
  std::string resolve(std::string_view title) const;

  std::size_t size() const { return map_.size(); }
  const std::unordered_map<std::string, std::string>& entries() const { return map_; }

  /// Reads "alias<TAB>canonical" rows. Blank lines and '#' comments are ignored.
  static RedirectMap read_tsv(std::istream& in);
  /// Writes rows sorted by alias.
  void write_tsv(std::ostream& out) const;

 private:
  std::unordered_map<std::string, std::string> map_;
  bool finalized_ = true;
};

}  // namespace newsattn
