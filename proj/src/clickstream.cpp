#include "newsattn/clickstream.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include <fmt/format.h>

namespace newsattn {

namespace {

bool is_pseudo_referrer(std::string_view prev) {
  return prev.rfind("other-", 0) == 0 || prev == "other";
}

}  // namespace

void parse_clickstream(std::istream& in, Month month, const RedirectMap& redirects, Diagnostics& diag,
                       const std::function<void(ClickRecord&&)>& sink) {
  std::string line;
  std::size_t line_no = 0;
  std::array<std::string_view, 4> fields;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::string_view rest(line);
    std::size_t n = 0;
    bool too_many = false;
    while (true) {
      auto tab = rest.find('\t');
      if (n == fields.size()) {
        too_many = true;
        break;
      }
      fields[n++] = rest.substr(0, tab);
      if (tab == std::string_view::npos) break;
      rest.remove_prefix(tab + 1);
    }
    if (too_many || n != 4) {
      diag.skip(fmt::format("clickstream {} line {}: expected 4 columns", format_month(month), line_no));
      continue;
    }
    auto [prev, curr, type, count_text] = fields;

    std::int64_t count = 0;
    auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
    if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
      diag.skip(fmt::format("clickstream {} line {}: non-integer count '{}'", format_month(month), line_no,
                            count_text));
      continue;
    }

    if (type != "link" || is_pseudo_referrer(prev)) continue;
    if (count < kClickstreamMinCount) {
      diag.skip(fmt::format("clickstream {} line {}: count {} below published threshold",
                            format_month(month), line_no, count));
      continue;
    }

    auto source = redirects.resolve(prev);
    auto target = redirects.resolve(curr);
    if (source == "Main Page") continue;
    if (source.empty() || target.empty() || is_non_article_title(source) || is_non_article_title(target)) {
      diag.skip(fmt::format("clickstream {} line {}: non-article title", format_month(month), line_no));
      continue;
    }
    sink(ClickRecord{std::move(source), std::move(target), month, count});
  }
}

std::vector<ClickRecord> parse_clickstream(std::istream& in, Month month, const RedirectMap& redirects,
                                           Diagnostics& diag) {
  std::vector<ClickRecord> out;
  parse_clickstream(in, month, redirects, diag, [&](ClickRecord&& r) { out.push_back(std::move(r)); });
  return out;
}

void ClickstreamStore::add(const ClickRecord& record) {
  if (record.count < 0) throw DataError("negative click count");
  auto& data = months_[record.month];
  data.out[record.source][record.target] += record.count;
  data.in[record.target][record.source] += record.count;
}

std::int64_t ClickstreamStore::count(Month month, const std::string& source, const std::string& target) const {
  auto m = months_.find(month);
  if (m == months_.end()) return 0;
  auto s = m->second.out.find(source);
  if (s == m->second.out.end()) return 0;
  auto t = s->second.find(target);
  return t == s->second.end() ? 0 : t->second;
}

std::vector<std::pair<std::string, std::int64_t>> ClickstreamStore::out_neighbors(Month month,
                                                                                  const std::string& title) const {
  auto m = months_.find(month);
  if (m == months_.end()) return {};
  auto s = m->second.out.find(title);
  if (s == m->second.out.end()) return {};
  return {s->second.begin(), s->second.end()};
}

std::vector<std::pair<std::string, std::int64_t>> ClickstreamStore::in_neighbors(Month month,
                                                                                 const std::string& title) const {
  auto m = months_.find(month);
  if (m == months_.end()) return {};
  auto s = m->second.in.find(title);
  if (s == m->second.in.end()) return {};
  return {s->second.begin(), s->second.end()};
}

std::vector<Month> ClickstreamStore::months() const {
  std::vector<Month> out;
  for (const auto& [month, data] : months_) out.push_back(month);
  return out;
}

std::size_t ClickstreamStore::size() const {
  std::size_t total = 0;
  for (const auto& [month, data] : months_) {
    for (const auto& [source, targets] : data.out) total += targets.size();
  }
  return total;
}

void ClickstreamStore::write_month_tsv(Month month, std::ostream& out) const {
  auto m = months_.find(month);
  if (m == months_.end()) return;
  std::vector<const std::string*> sources;
  for (const auto& [source, targets] : m->second.out) sources.push_back(&source);
  std::sort(sources.begin(), sources.end(), [](auto* a, auto* b) { return *a < *b; });
  for (const auto* source : sources) {
    for (const auto& [target, count] : m->second.out.at(*source)) {
      out << dump_title(*source) << '\t' << dump_title(target) << "\tlink\t" << count << '\n';
    }
  }
}

}  // namespace newsattn
