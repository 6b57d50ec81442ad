#include "newsattn/titles.hpp"

#include <algorithm>
#include <array>
#include <unordered_set>
#include <vector>

#include <fmt/format.h>

#include "newsattn/error.hpp"

namespace newsattn {

namespace {

constexpr std::array<std::string_view, 22> kNamespaces = {
    "Talk",      "User",          "User talk",     "Wikipedia", "Wikipedia talk", "File",
    "File talk", "MediaWiki",     "Template",      "Template talk", "Help",       "Help talk",
    "Category",  "Category talk", "Portal",        "Portal talk",   "Draft",      "Special",
    "Media",     "Image",         "Module",        "TimedText"};

bool is_space(char c) { return c == ' ' || c == '_' || c == '\t' || c == '\r' || c == '\n'; }

}  // namespace

std::string normalize_title(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char c : raw) {
    if (is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

bool is_non_article_title(std::string_view title) {
  auto colon = title.find(':');
  if (colon == std::string_view::npos) return false;
  auto prefix = title.substr(0, colon);
  return std::find(kNamespaces.begin(), kNamespaces.end(), prefix) != kNamespaces.end();
}

std::string dump_title(std::string_view title) {
  std::string out(title);
  std::replace(out.begin(), out.end(), ' ', '_');
  return out;
}

void RedirectMap::add(std::string_view alias, std::string_view canonical) {
  auto a = normalize_title(alias);
  auto c = normalize_title(canonical);
  if (a.empty() || c.empty()) throw DataError("redirect with empty title");
  if (a == c) return;
  map_[a] = c;
  finalized_ = false;
}

void RedirectMap::finalize() {
  if (finalized_) return;
  std::unordered_map<std::string, std::string> resolved;
  resolved.reserve(map_.size());
  for (const auto& [alias, target] : map_) {
    std::unordered_set<std::string> seen{alias};
    std::string current = target;
    while (true) {
      auto it = map_.find(current);
      if (it == map_.end()) break;
      if (!seen.insert(current).second) {
        throw DataError(fmt::format("redirect cycle through '{}'", alias));
      }
      current = it->second;
    }
    if (current == alias) throw DataError(fmt::format("redirect cycle through '{}'", alias));
    resolved.emplace(alias, std::move(current));
  }
  map_ = std::move(resolved);
  finalized_ = true;
}

std::string RedirectMap::resolve(std::string_view title) const {
  if (!finalized_) throw DataError("RedirectMap used before finalize()");
  auto normalized = normalize_title(title);
  auto it = map_.find(normalized);
  return it == map_.end() ? normalized : it->second;
}

RedirectMap RedirectMap::read_tsv(std::istream& in) {
  RedirectMap map;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
      throw ParseError(fmt::format("redirect map line {}: expected alias<TAB>canonical", line_no));
    }
    map.add(std::string_view(line).substr(0, tab), std::string_view(line).substr(tab + 1));
  }
  map.finalize();
  return map;
}

void RedirectMap::write_tsv(std::ostream& out) const {
  std::vector<std::pair<std::string, std::string>> rows(map_.begin(), map_.end());
  std::sort(rows.begin(), rows.end());
  for (const auto& [alias, canonical] : rows) out << dump_title(alias) << '\t' << dump_title(canonical) << '\n';
}

}  // namespace newsattn
