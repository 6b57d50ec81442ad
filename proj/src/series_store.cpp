#include "newsattn/series_store.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace newsattn {

namespace {

constexpr std::string_view kIndexHeader = "# newsattn daily series store v1";
constexpr std::size_t kMaxStoredWarnings = 100;

void put_le64(std::ostream& out, std::int64_t value) {
  auto u = static_cast<std::uint64_t>(value);
  std::array<char, 8> bytes;
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((u >> (8 * i)) & 0xff);
  out.write(bytes.data(), bytes.size());
}

std::int64_t get_le64(const char* bytes) {
  std::uint64_t u = 0;
  for (int i = 7; i >= 0; --i) u = (u << 8) | static_cast<unsigned char>(bytes[i]);
  return static_cast<std::int64_t>(u);
}

template <typename T>
bool parse_int(std::string_view text, T& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

void DailySeriesStore::add(const std::string& title, Day day, std::int64_t views) {
  if (views < 0) throw DataError(fmt::format("negative page views for '{}'", title));
  auto& s = series_[title];
  if (s.values.empty()) {
    s.first = day;
    s.values.push_back(views);
    return;
  }
  long offset = days_between(s.first, day);
  if (offset < 0) {
    s.values.insert(s.values.begin(), static_cast<std::size_t>(-offset), 0);
    s.first = day;
    offset = 0;
  }
  if (static_cast<std::size_t>(offset) >= s.values.size()) s.values.resize(offset + 1, 0);
  s.values[offset] += views;
}

std::int64_t DailySeriesStore::get(const std::string& title, Day day) const {
  auto it = series_.find(title);
  if (it == series_.end()) return 0;
  long offset = days_between(it->second.first, day);
  if (offset < 0 || static_cast<std::size_t>(offset) >= it->second.values.size()) return 0;
  return it->second.values[offset];
}

std::vector<double> DailySeriesStore::window(const std::string& title, Day first, std::size_t length) const {
  std::vector<double> out(length, 0.0);
  auto it = series_.find(title);
  if (it == series_.end()) return out;
  for (std::size_t i = 0; i < length; ++i) {
    long offset = days_between(it->second.first, add_days(first, static_cast<long>(i)));
    if (offset >= 0 && static_cast<std::size_t>(offset) < it->second.values.size()) {
      out[i] = static_cast<double>(it->second.values[offset]);
    }
  }
  return out;
}

std::vector<std::string> DailySeriesStore::titles() const {
  std::vector<std::string> out;
  out.reserve(series_.size());
  for (const auto& [title, s] : series_) out.push_back(title);
  return out;
}

std::int64_t DailySeriesStore::total(const std::string& title) const {
  auto it = series_.find(title);
  if (it == series_.end()) return 0;
  std::int64_t sum = 0;
  for (auto v : it->second.values) sum += v;
  return sum;
}

void DailySeriesStore::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  std::ofstream bin(dir / "series.bin", std::ios::binary | std::ios::trunc);
  std::ofstream index(dir / "index.tsv", std::ios::trunc);
  if (!bin || !index) throw DataError(fmt::format("cannot write series store at {}", dir.string()));
  index << kIndexHeader << '\n';
  std::uint64_t offset = 0;
  for (const auto& [title, s] : series_) {
    index << dump_title(title) << '\t' << format_day(s.first) << '\t' << s.values.size() << '\t' << offset
          << '\n';
    for (auto v : s.values) put_le64(bin, v);
    offset += 8 * s.values.size();
  }
  if (!bin || !index) throw DataError(fmt::format("failed writing series store at {}", dir.string()));
}

DailySeriesStore DailySeriesStore::load(const std::filesystem::path& dir) {
  std::ifstream index(dir / "index.tsv");
  std::ifstream bin(dir / "series.bin", std::ios::binary);
  if (!index || !bin) throw DataError(fmt::format("no series store at {}", dir.string()));
  std::string blob((std::istreambuf_iterator<char>(bin)), std::istreambuf_iterator<char>());

  DailySeriesStore store;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(index, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    std::array<std::string_view, 4> f;
    std::string_view rest(line);
    for (std::size_t i = 0; i < 4; ++i) {
      auto tab = rest.find('\t');
      if ((i < 3) == (tab == std::string_view::npos)) {
        throw ParseError(fmt::format("series index line {}: expected 4 columns", line_no));
      }
      f[i] = rest.substr(0, tab);
      if (tab != std::string_view::npos) rest.remove_prefix(tab + 1);
    }
    std::size_t days = 0;
    std::uint64_t offset = 0;
    if (!parse_int(f[2], days) || !parse_int(f[3], offset) || offset + 8 * days > blob.size()) {
      throw ParseError(fmt::format("series index line {}: bad extent", line_no));
    }
    Series s;
    s.first = parse_day(f[1]);
    s.values.resize(days);
    for (std::size_t i = 0; i < days; ++i) s.values[i] = get_le64(blob.data() + offset + 8 * i);
    store.series_.emplace(normalize_title(f[0]), std::move(s));
  }
  return store;
}

void DailySeriesStore::export_tsv(std::ostream& out) const {
  for (const auto& [title, s] : series_) {
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (s.values[i] == 0) continue;
      out << dump_title(title) << '\t' << format_day(add_days(s.first, static_cast<long>(i))) << '\t'
          << s.values[i] << '\n';
    }
  }
}

std::optional<std::pair<Day, int>> parse_hourly_filename(const std::string& filename) {
  std::string_view name(filename);
  for (std::string_view prefix : {"pageviews-", "pagecounts-"}) {
    if (name.rfind(prefix, 0) != 0) continue;
    auto rest = name.substr(prefix.size());
    if (rest.size() < 15 || rest[8] != '-') return std::nullopt;
    try {
      auto day = parse_compact_day(rest.substr(0, 8));
      int hour = 0;
      if (!parse_int(rest.substr(9, 2), hour) || hour < 0 || hour > 23) return std::nullopt;
      return std::pair{day, hour};
    } catch (const ParseError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

DailyAggregator::DailyAggregator(const RedirectMap& redirects, std::set<std::string> domain_prefixes)
    : redirects_(redirects), prefixes_(std::move(domain_prefixes)) {}

void DailyAggregator::add_line(Day day, std::string_view line, Diagnostics& diag) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  if (line.empty()) return;
  std::array<std::string_view, 4> f;
  std::size_t n = 0;
  bool extra = false;
  std::string_view rest = line;
  while (true) {
    auto space = rest.find(' ');
    if (n == f.size()) {
      extra = true;
      break;
    }
    f[n++] = rest.substr(0, space);
    if (space == std::string_view::npos) break;
    rest.remove_prefix(space + 1);
  }
  std::int64_t count = 0;
  if (extra || (n != 3 && n != 4) || f[0].empty() || f[1].empty() || !parse_int(f[2], count) || count < 0) {
    ++skipped_;
    ++diag.skipped;
    if (diag.warnings.size() < kMaxStoredWarnings) {
      diag.warnings.push_back(fmt::format("pageviews {}: unparseable line '{}'", format_day(day), line));
    }
    return;
  }
  ++parsed_;
  if (prefixes_.count(std::string(f[0])) == 0) return;
  auto title = redirects_.resolve(f[1]);
  if (wanted_ && wanted_->count(title) == 0) return;
  store_.add(title, day, count);
}

void DailyAggregator::add_hourly(Day day, std::istream& lines, Diagnostics& diag) {
  std::string line;
  while (std::getline(lines, line)) add_line(day, line, diag);
}

DailySeriesStore aggregate_daily(const std::vector<std::pair<Day, std::string>>& hourly_lines,
                                 const std::set<std::string>& domain_prefixes, const RedirectMap& redirects,
                                 Diagnostics& diag) {
  DailyAggregator agg(redirects, domain_prefixes);
  for (const auto& [day, line] : hourly_lines) agg.add_line(day, line, diag);
  return agg.take();
}

}  // namespace newsattn
