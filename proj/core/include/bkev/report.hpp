#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bkev/breakeven.hpp"
#include "bkev/manifest.hpp"

namespace bkev {

/// One table row: budget, data %, errors, N* rounded to integers (INF and
/// "unmatched" cells kept symbolic) and the worst/avg robustness ratio.
struct ReportRow {
  std::string model;
  std::string benchmark;
  double budget = 0.0;
  double data_pct = 0.0;
  double eps_avg = 0.0;
  double eps_worst = 0.0;
  NStar n_star_avg;
  NStar n_star_worst;
  std::optional<double> robustness_ratio;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

inline constexpr std::string_view kReportHeader =
    "model,benchmark,budget_s,data_pct,nrmse_avg,nrmse_worst,nstar_avg,nstar_worst,robustness_ratio";

ReportRow report_row(const BreakevenResult& result);
std::vector<ReportRow> report_rows(const RunManifest& manifest);

std::string report_csv(const std::vector<ReportRow>& rows);
/// Inverse of report_csv; report_csv(parse_report_csv(t)) == t for any t it emitted.
std::vector<ReportRow> parse_report_csv(std::string_view text);
std::string report_markdown(const RunManifest& manifest);

/// resolution, dt, cost, speedup over the finest rung, eps_avg, eps_worst.
std::string ladder_plot_csv(const RunManifest& manifest);
/// Surrogate (B + c_inf·n) and classical (c_matched·n) cost per record and case.
std::string crossover_plot_csv(const RunManifest& manifest);
/// Budget against N* (average and worst) per model.
std::string budget_nstar_csv(const RunManifest& manifest);

enum class ReportFormat { Markdown, Csv, PlotData };
ReportFormat parse_report_format(const std::string& name);

/// Writes the report files into `dir` and returns their paths.
std::vector<std::filesystem::path> emit_report(const RunManifest& manifest, ReportFormat format,
                                               const std::filesystem::path& dir);

}  // namespace bkev
