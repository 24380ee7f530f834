#include "defprior/ingest_csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>

namespace defprior {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string_view unquote(std::string_view s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

}  // namespace

CsvReadResult read_records_csv(std::istream& in) {
  CsvReadResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    view = trim(view);
    if (view.empty()) continue;

    if (!header_seen) {
      header_seen = true;
      if (view != "study_id,p_value") {
        result.errors.push_back(
            {line_no, "expected header 'study_id,p_value', got '" + std::string(view) + "'"});
        return result;
      }
      continue;
    }

    const auto comma = view.rfind(',');
    if (comma == std::string_view::npos) {
      result.errors.push_back({line_no, "expected two comma-separated fields"});
      continue;
    }
    const std::string_view id = unquote(trim(view.substr(0, comma)));
    const std::string_view p_text = unquote(trim(view.substr(comma + 1)));
    if (id.empty()) {
      result.errors.push_back({line_no, "empty study_id"});
      continue;
    }
    double p = 0.0;
    const char* first = p_text.data();
    const char* last = first + p_text.size();
    const auto [ptr, ec] = std::from_chars(first, last, p);
    if (p_text.empty() || ec != std::errc{} || ptr != last) {
      result.errors.push_back(
          {line_no, "p_value '" + std::string(p_text) + "' is not a decimal number"});
      continue;
    }
    result.records.push_back({std::string(id), p, line_no});
  }
  if (!header_seen) result.errors.push_back({0, "empty input: missing header"});
  return result;
}

void write_records_csv(std::ostream& out, std::span<const RawRecord> records) {
  out << "study_id,p_value\n";
  char buf[32];
  for (const RawRecord& r : records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.p_value);
    out << r.study_id << ',' << buf << '\n';
  }
}

}  // namespace defprior
