#include "bkev/report.hpp"

#include <cmath>
#include <sstream>

#include "bkev/error.hpp"
#include "bkev/format.hpp"
#include "bkev/io.hpp"

namespace bkev {

namespace {

std::string nstar_cell(const NStar& n) {
  switch (n.status) {
    case NStarStatus::Finite: return format_number(n.value);
    case NStarStatus::Infinite: return "INF";
    case NStarStatus::Unmatched: return "unmatched";
  }
  return "";
}

NStar parse_nstar(std::string_view cell) {
  if (cell == "INF") return {NStarStatus::Infinite, 0.0};
  if (cell == "unmatched") return {NStarStatus::Unmatched, 0.0};
  return {NStarStatus::Finite, parse_number(cell)};
}

NStar rounded(const NStar& n) {
  if (!n.finite()) return n;
  return {NStarStatus::Finite, std::round(n.value)};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

ReportRow report_row(const BreakevenResult& r) {
  ReportRow row;
  row.model = r.model;
  row.benchmark = r.benchmark;
  row.budget = r.budget;
  row.data_pct = std::round(r.data_fraction * 1e4) / 100.0;
  row.eps_avg = r.eps_avg;
  row.eps_worst = r.eps_worst;
  row.n_star_avg = rounded(r.n_star_avg);
  row.n_star_worst = rounded(r.n_star_worst);
  row.robustness_ratio = r.robustness_ratio;
  return row;
}

std::vector<ReportRow> report_rows(const RunManifest& manifest) {
  std::vector<ReportRow> rows;
  for (const auto& r : manifest.results) rows.push_back(report_row(r));
  return rows;
}

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::ostringstream out;
  out << kReportHeader << "\n";
  for (const auto& r : rows)
    out << r.model << ',' << r.benchmark << ',' << format_number(r.budget) << ',' << format_number(r.data_pct) << ','
        << format_number(r.eps_avg) << ',' << format_number(r.eps_worst) << ',' << nstar_cell(r.n_star_avg) << ','
        << nstar_cell(r.n_star_worst) << ',' << (r.robustness_ratio ? format_number(*r.robustness_ratio) : "")
        << "\n";
  return out.str();
}

std::vector<ReportRow> parse_report_csv(std::string_view text) {
  std::vector<ReportRow> rows;
  long line_no = 0;
  bool header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(start, end - start));
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;
    if (!header) {
      if (line != kReportHeader) throw ParseError("expected report header", line_no);
      header = true;
      continue;
    }
    std::vector<std::string_view> cells;
    std::size_t s = 0;
    for (;;) {
      const auto comma = line.find(',', s);
      cells.push_back(trim(line.substr(s, comma == std::string_view::npos ? std::string_view::npos : comma - s)));
      if (comma == std::string_view::npos) break;
      s = comma + 1;
    }
    if (cells.size() != 9) throw ParseError("expected 9 columns, got " + std::to_string(cells.size()), line_no);
    try {
      ReportRow r;
      r.model = std::string(cells[0]);
      r.benchmark = std::string(cells[1]);
      r.budget = parse_number(cells[2]);
      r.data_pct = parse_number(cells[3]);
      r.eps_avg = parse_number(cells[4]);
      r.eps_worst = parse_number(cells[5]);
      r.n_star_avg = parse_nstar(cells[6]);
      r.n_star_worst = parse_nstar(cells[7]);
      if (!cells[8].empty()) r.robustness_ratio = parse_number(cells[8]);
      rows.push_back(std::move(r));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!header) throw ParseError("report is empty");
  return rows;
}

std::string report_markdown(const RunManifest& manifest) {
  std::ostringstream out;
  out << "# Breakeven report: " << manifest.benchmark << "\n\n";
  out << "Costs measured on: " << manifest.machine << " (bkev " << manifest.version << ").\n";
  out << "Absolute N* values depend on this machine and its load; compare them only within one run.\n\n";
  out << "| Model | Budget (s) | Data % | nRMSE avg | nRMSE worst | N* avg | N* worst | Robustness |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : report_rows(manifest))
    out << "| " << r.model << " | " << format_number(r.budget) << " | " << format_number(r.data_pct) << "% | "
        << format_number(r.eps_avg) << " | " << format_number(r.eps_worst) << " | " << nstar_cell(r.n_star_avg)
        << " | " << nstar_cell(r.n_star_worst) << " | "
        << (r.robustness_ratio ? format_number(*r.robustness_ratio) : "") << " |\n";

  out << "\n## Fidelity ladder\n\n";
  out << "| Resolution | dt | Cost (s) | eps avg | eps worst | Status |\n|---|---|---|---|---|---|\n";
  for (const auto& e : manifest.ladder) {
    out << "| " << e.config.resolution << " | " << format_number(e.config.dt) << " | " << format_number(e.cost_seconds)
        << " | " << (e.eps_avg ? format_number(*e.eps_avg) : "") << " | "
        << (e.eps_worst ? format_number(*e.eps_worst) : "") << " | " << (e.feasible ? "ok" : "blow-up") << " |\n";
  }
  return out.str();
}

std::string ladder_plot_csv(const RunManifest& manifest) {
  std::ostringstream out;
  out << "resolution,dt,cost_s,speedup,eps_avg,eps_worst,feasible\n";
  const double ref = manifest.ladder.empty() ? 0.0 : manifest.ladder.front().cost_seconds;
  for (const auto& e : manifest.ladder) {
    out << e.config.resolution << ',' << format_number(e.config.dt) << ',' << format_number(e.cost_seconds) << ','
        << (e.feasible && e.cost_seconds > 0.0 && ref > 0.0 ? format_number(ref / e.cost_seconds) : "") << ','
        << (e.eps_avg ? format_number(*e.eps_avg) : "") << ',' << (e.eps_worst ? format_number(*e.eps_worst) : "")
        << ',' << (e.feasible ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string crossover_plot_csv(const RunManifest& manifest) {
  std::ostringstream out;
  out << "model,benchmark,budget_s,case,n,surrogate_cost,classical_cost\n";
  for (const auto& r : manifest.results) {
    for (int worst = 0; worst < 2; ++worst) {
      const auto idx = worst ? r.matched_worst : r.matched_avg;
      if (!idx || *idx >= manifest.ladder.size()) continue;
      const double c_matched = manifest.ladder[*idx].cost_seconds;
      const NStar& ns = worst ? r.n_star_worst : r.n_star_avg;
      const double scale = ns.finite() ? ns.value : r.budget / c_matched;
      std::vector<double> grid;
      for (int i = 0; i <= 20; ++i) grid.push_back(i == 10 ? scale : scale * i / 10.0);
      for (const auto& p : crossover_costs(r.budget, r.c_inf, c_matched, grid))
        out << r.model << ',' << r.benchmark << ',' << format_number(r.budget) << ',' << (worst ? "worst" : "avg")
            << ',' << format_number(p.n) << ',' << format_number(p.surrogate_cost) << ','
            << format_number(p.classical_cost) << "\n";
    }
  }
  return out.str();
}

std::string budget_nstar_csv(const RunManifest& manifest) {
  std::ostringstream out;
  out << "model,benchmark,budget_s,nstar_avg,nstar_worst\n";
  for (const auto& r : manifest.results)
    out << r.model << ',' << r.benchmark << ',' << format_number(r.budget) << ',' << nstar_cell(r.n_star_avg) << ','
        << nstar_cell(r.n_star_worst) << "\n";
  return out.str();
}

ReportFormat parse_report_format(const std::string& name) {
  if (name == "markdown" || name == "md") return ReportFormat::Markdown;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "plotdata") return ReportFormat::PlotData;
  throw Error("unknown report format '" + name + "' (expected markdown, csv or plotdata)");
}

std::vector<std::filesystem::path> emit_report(const RunManifest& manifest, ReportFormat format,
                                               const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> written;
  auto put = [&](const char* name, const std::string& text) {
    write_text(dir / name, text);
    written.push_back(dir / name);
  };
  switch (format) {
    case ReportFormat::Markdown: put("report.md", report_markdown(manifest)); break;
    case ReportFormat::Csv: put("report.csv", report_csv(report_rows(manifest))); break;
    case ReportFormat::PlotData:
      put("plot_ladder.csv", ladder_plot_csv(manifest));
      put("plot_crossover.csv", crossover_plot_csv(manifest));
      put("plot_budget_nstar.csv", budget_nstar_csv(manifest));
      break;
  }
  return written;
}

}  // namespace bkev
