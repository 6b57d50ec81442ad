#include "newsattn/events.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <fmt/format.h>
#include <json.hpp>

namespace newsattn {

namespace {

constexpr std::array<std::string_view, 8> kInterwikiPrefixes = {"w", "wikt", "wiktionary", "commons",
                                                                "en", "n", "s", "q"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_skipped_target(std::string_view target) {
  if (target.empty()) return true;
  if (is_non_article_title(target)) return true;
  auto colon = target.find(':');
  if (colon != std::string_view::npos) {
    auto prefix = lower(trim(target.substr(0, colon)));
    if (std::find(kInterwikiPrefixes.begin(), kInterwikiPrefixes.end(), prefix) !=
        kInterwikiPrefixes.end()) {
      return true;
    }
  }
  return false;
}

/// Removes `open ... close` spans, honouring nesting of the same delimiters.
std::string strip_nested(std::string_view text, std::string_view open, std::string_view close) {
  std::string out;
  int depth = 0;
  for (std::size_t i = 0; i < text.size();) {
    if (text.substr(i, open.size()) == open) {
      ++depth;
      i += open.size();
    } else if (depth > 0 && text.substr(i, close.size()) == close) {
      --depth;
      i += close.size();
    } else {
      if (depth == 0) out.push_back(text[i]);
      ++i;
    }
  }
  return out;
}

std::string strip_refs(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    auto open = text.find("<ref", i);
    if (open == std::string_view::npos) {
      out.append(text.substr(i));
      break;
    }
    out.append(text.substr(i, open - i));
    auto tag_end = text.find('>', open);
    if (tag_end == std::string_view::npos) break;
    if (text[tag_end - 1] == '/') {
      i = tag_end + 1;
      continue;
    }
    auto close = text.find("</ref>", tag_end);
    i = close == std::string_view::npos ? text.size() : close + 6;
  }
  return out;
}

struct Bullet {
  std::size_t depth;
  std::string text;
  std::string category;
  std::size_t line_no;
};

std::optional<std::string> header_text(std::string_view line) {
  auto t = trim(line);
  if (t.empty()) return std::nullopt;
  if (t.front() == ';') return std::string(trim(t.substr(1)));
  if (t.size() >= 4 && t.front() == '=' && t.back() == '=') {
    auto inner = t;
    while (!inner.empty() && inner.front() == '=') inner.remove_prefix(1);
    while (!inner.empty() && inner.back() == '=') inner.remove_suffix(1);
    return std::string(trim(inner));
  }
  if (t.size() > 6 && t.substr(0, 3) == "'''" && t.substr(t.size() - 3) == "'''") {
    return std::string(trim(t.substr(3, t.size() - 6)));
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string_view> match_category(std::string_view header) {
  auto wanted = lower(trim(header));
  for (auto category : kEventCategories) {
    if (lower(category) == wanted) return category;
  }
  return std::nullopt;
}

std::vector<WikiLink> extract_links(std::string_view text) {
  std::vector<WikiLink> links;
  std::size_t i = 0;
  while (i < text.size()) {
    auto open = text.find("[[", i);
    auto stray = text.find("]]", i);
    if (stray != std::string_view::npos && (open == std::string_view::npos || stray < open)) {
      throw ParseError("unbalanced ']]'");
    }
    if (open == std::string_view::npos) break;
    // Find the matching close, allowing nested [[...]] (e.g. inside captions).
    int depth = 1;
    std::size_t j = open + 2;
    while (j < text.size() && depth > 0) {
      if (text.substr(j, 2) == "[[") {
        ++depth;
        j += 2;
      } else if (text.substr(j, 2) == "]]") {
        --depth;
        j += 2;
      } else {
        ++j;
      }
    }
    if (depth != 0) throw ParseError("unterminated '[['");
    auto body = text.substr(open + 2, j - open - 4);
    i = j;
    if (body.find("[[") != std::string_view::npos) continue;  // embedded media, not a plain link
    auto pipe = body.find('|');
    auto target = trim(body.substr(0, pipe));
    auto display = pipe == std::string_view::npos ? target : trim(body.substr(pipe + 1));
    if (auto hash = target.find('#'); hash != std::string_view::npos) target = trim(target.substr(0, hash));
    if (!target.empty() && target.front() == ':') target.remove_prefix(1);
    if (is_skipped_target(target)) continue;
    links.push_back({std::string(target), std::string(display)});
  }
  return links;
}

std::string plain_text(std::string_view wikitext) {
  auto text = strip_refs(wikitext);
  text = strip_nested(text, "{{", "}}");
  std::string out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 2, "[[") == 0) {
      auto close = text.find("]]", i + 2);
      if (close == std::string::npos) {
        out.append(text, i, std::string::npos);
        break;
      }
      std::string_view body(text.data() + i + 2, close - i - 2);
      auto pipe = body.find('|');
      out.append(pipe == std::string_view::npos ? body : body.substr(pipe + 1));
      i = close + 2;
    } else if (text[i] == '[' && (text.compare(i + 1, 4, "http") == 0 || text.compare(i + 1, 2, "//") == 0)) {
      auto close = text.find(']', i);
      if (close == std::string::npos) {
        out.append(text, i, std::string::npos);
        break;
      }
      std::string_view body(text.data() + i + 1, close - i - 1);
      auto space = body.find(' ');
      if (space != std::string_view::npos) out.append(body.substr(space + 1));
      i = close + 1;
    } else if (text.compare(i, 2, "''") == 0) {
      while (i < text.size() && text[i] == '\'') ++i;  // italic/bold markup
    } else {
      out.push_back(text[i]);
      ++i;
    }
  }
  std::string collapsed;
  for (char c : out) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!collapsed.empty() && collapsed.back() != ' ') collapsed.push_back(' ');
    } else {
      collapsed.push_back(c);
    }
  }
  return std::string(trim(collapsed));
}

std::vector<EventRecord> parse_event_records(std::string_view wikitext, Day date,
                                             const RedirectMap& redirects, Diagnostics& diag,
                                             std::optional<CorpusPeriod> period) {
  const auto date_text = format_day(date);
  if (period && !period->contains(date)) {
    diag.skip(fmt::format("{}: date outside corpus period, document ignored", date_text));
    return {};
  }

  std::vector<Bullet> bullets;
  std::optional<std::string> category;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= wikitext.size()) {
    auto end = wikitext.find('\n', pos);
    if (end == std::string_view::npos) end = wikitext.size();
    auto line = wikitext.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (!line.empty() && line.front() == '*') {
      std::size_t depth = 0;
      while (depth < line.size() && line[depth] == '*') ++depth;
      if (!category) {
        diag.skip(fmt::format("{}:{}: bullet outside any category", date_text, line_no));
        continue;
      }
      bullets.push_back({depth, std::string(trim(line.substr(depth))), *category, line_no});
      continue;
    }
    if (auto header = header_text(line)) {
      if (auto matched = match_category(*header)) {
        category = std::string(*matched);
      } else {
        category.reset();
      }
    }
  }

  std::vector<EventRecord> records;
  struct Heading {
    std::size_t depth;
    std::vector<std::string> links;
  };
  std::vector<Heading> stack;
  for (std::size_t b = 0; b < bullets.size(); ++b) {
    const auto& bullet = bullets[b];
    while (!stack.empty() && stack.back().depth >= bullet.depth) stack.pop_back();
    // A heading's scope ends at a category change as well.
    if (b > 0 && bullets[b - 1].category != bullet.category) stack.clear();

    bool has_children = b + 1 < bullets.size() && bullets[b + 1].depth > bullet.depth &&
                        bullets[b + 1].category == bullet.category;

    std::vector<std::string> own;
    try {
      for (auto& link : extract_links(bullet.text)) own.push_back(redirects.resolve(link.target));
    } catch (const ParseError& e) {
      diag.skip(fmt::format("{}:{}: malformed wikitext ({}), item skipped", date_text, bullet.line_no,
                            e.what()));
      if (has_children) stack.push_back({bullet.depth, {}});
      continue;
    }

    if (has_children) {
      stack.push_back({bullet.depth, std::move(own)});
      continue;
    }

    std::set<std::string> core;
    for (auto& title : own) {
      if (!title.empty()) core.insert(title);
    }
    for (const auto& heading : stack) core.insert(heading.links.begin(), heading.links.end());
    if (core.empty()) {
      diag.skip(fmt::format("{}:{}: item has no article links, dropped", date_text, bullet.line_no));
      continue;
    }

    EventRecord record;
    record.date = date;
    record.category = bullet.category;
    record.description = plain_text(bullet.text);
    record.core_articles.assign(core.begin(), core.end());
    record.event_id = fmt::format("{}_{}", date_text, records.size() + 1);
    records.push_back(std::move(record));
  }
  return records;
}

std::string event_to_json(const EventRecord& event) {
  nlohmann::json j{{"event_id", event.event_id},
                   {"date", format_day(event.date)},
                   {"category", event.category},
                   {"description", event.description},
                   {"core_articles", event.core_articles}};
  return j.dump();
}

EventRecord event_from_json(std::string_view line) {
  try {
    auto j = nlohmann::json::parse(line);
    EventRecord event;
    event.event_id = j.at("event_id").get<std::string>();
    event.date = parse_day(j.at("date").get<std::string>());
    event.category = j.at("category").get<std::string>();
    event.description = j.at("description").get<std::string>();
    event.core_articles = j.at("core_articles").get<std::vector<std::string>>();
    if (!match_category(event.category)) {
      throw ParseError(fmt::format("unknown event category '{}'", event.category));
    }
    if (event.core_articles.empty()) throw ParseError("event record without core articles");
    return event;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("invalid event record: {}", e.what()));
  }
}

}  // namespace newsattn
