#include <map>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "bkev/error.hpp"
#include "bkev/format.hpp"
#include "bkev/io.hpp"

namespace bkev {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

class DuplicateGuard {
 public:
  void check(const SurrogateRecord& r, long line) {
    const auto key = std::make_tuple(r.model, r.benchmark, r.budget);
    const auto [it, inserted] = seen_.emplace(key, line);
    if (!inserted)
      throw ParseError("duplicate record (" + r.model + ", " + r.benchmark + ", " + format_number(r.budget) +
                           ") on lines " + std::to_string(it->second) + " and " + std::to_string(line),
                       line);
  }

 private:
  std::map<std::tuple<std::string, std::string, double>, long> seen_;
};

void validate_at(const SurrogateRecord& r, long line) {
  if (r.model.empty()) throw ParseError("empty model name", line);
  if (r.benchmark.empty()) throw ParseError("empty benchmark id", line);
  try {
    r.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what(), line);
  }
}

}  // namespace

std::vector<SurrogateRecord> parse_records_csv(std::string_view text) {
  std::vector<SurrogateRecord> out;
  DuplicateGuard guard;
  bool header_seen = false;
  long line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kRecordsHeader)
        throw ParseError("expected header '" + std::string(kRecordsHeader) + "'", line_no);
      header_seen = true;
      continue;
    }
    const auto cells = split(line, ',');
    if (cells.size() != 7)
      throw ParseError("expected 7 columns, got " + std::to_string(cells.size()), line_no);
    SurrogateRecord r;
    r.model = std::string(cells[0]);
    r.benchmark = std::string(cells[1]);
    try {
      r.budget = parse_number(cells[2]);
      r.data_fraction = parse_number(cells[3]);
      r.eps_avg = parse_number(cells[4]);
      r.eps_worst = parse_number(cells[5]);
      r.c_inf = parse_number(cells[6]);
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
    validate_at(r, line_no);
    guard.check(r, line_no);
    out.push_back(std::move(r));
  }
  if (!header_seen) throw ParseError("records file is empty");
  return out;
}

std::vector<SurrogateRecord> parse_records_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what());
  }
  const nlohmann::json& arr = j.is_object() ? j.at("records") : j;
  if (!arr.is_array()) throw ParseError("records json: expected an array");
  std::vector<SurrogateRecord> out;
  DuplicateGuard guard;
  long index = 0;
  for (const auto& o : arr) {
    ++index;
    SurrogateRecord r;
    try {
      r.model = o.at("model").get<std::string>();
      r.benchmark = o.at("benchmark").get<std::string>();
      r.budget = o.at("budget_s").get<double>();
      r.data_fraction = o.at("data_frac").get<double>();
      r.eps_avg = o.at("nrmse_avg").get<double>();
      r.eps_worst = o.at("nrmse_worst").get<double>();
      r.c_inf = o.at("c_inf_s").get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("record ") + std::to_string(index) + ": " + e.what());
    }
    validate_at(r, index);
    guard.check(r, index);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SurrogateRecord> load_records(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  try {
    return path.extension() == ".json" ? parse_records_json(text) : parse_records_csv(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string records_to_csv(const std::vector<SurrogateRecord>& records) {
  std::ostringstream out;
  out << kRecordsHeader << "\n";
  for (const auto& r : records)
    out << r.model << ',' << r.benchmark << ',' << format_number(r.budget) << ',' << format_number(r.data_fraction)
        << ',' << format_number(r.eps_avg) << ',' << format_number(r.eps_worst) << ',' << format_number(r.c_inf)
        << "\n";
  return out.str();
}

}  // namespace bkev
