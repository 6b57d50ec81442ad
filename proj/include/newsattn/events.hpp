#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "newsattn/date.hpp"
#include "newsattn/error.hpp"
#include "newsattn/titles.hpp"

namespace newsattn {

/// The ten Current Events portal categories.
inline constexpr std::array<std::string_view, 10> kEventCategories = {
    "Armed conflicts and attacks", "Arts and culture",         "Business and economy",
    "Disasters and accidents",     "Health and medicine",      "International relations",
    "Law and crime",               "Politics and elections",   "Science and technology",
    "Sports"};

/// Returns the canonical spelling of a category header, if it is one.
std::optional<std::string_view> match_category(std::string_view header);

/// One dated, categorized portal entry with its linked core articles.
struct EventRecord {
  std::string event_id;  // "YYYY-MM-DD_n", n counting items within the day
  Day date{};
  std::string category;
  std::string description;
  std::vector<std::string> core_articles;  // sorted, unique, canonical

  bool operator==(const EventRecord&) const = default;
};

/// Inclusive date range an event must fall into.
struct CorpusPeriod {
  Day first;
  Day last;
  bool contains(Day d) const { return first <= d && d <= last; }
};

/// A wikilink target and its displayed text.
struct WikiLink {
  std::string target;
  std::string display;
};

/// Extracts `[[Target]]` / `[[Target|display]]` links from one line. Section
/// anchors are dropped and links into non-article namespaces are skipped.
/// Throws ParseError on unbalanced brackets.
std::vector<WikiLink> extract_links(std::string_view text);

/// Renders wikitext as plain text: links become their display text,
/// templates, references and bold/italic quotes are removed.
std::string plain_text(std::string_view wikitext);

/// Parses one day of portal wikitext into event records.
///
/// Every bullet item under a category header yields one record. A bullet that
/// has deeper sub-bullets is a story heading; its links are inherited by each
/// child item instead of producing a record of its own. Items that cannot be
/// parsed, sit outside a category, or carry no links are skipped with a
/// diagnostic; the rest of the document is still processed.
std::vector<EventRecord> parse_event_records(std::string_view wikitext, Day date,
                                             const RedirectMap& redirects, Diagnostics& diag,
                                             std::optional<CorpusPeriod> period = std::nullopt);

/// Event records as JSON lines (one record per line) for stage artifacts.
std::string event_to_json(const EventRecord& event);
EventRecord event_from_json(std::string_view line);

}  // namespace newsattn
