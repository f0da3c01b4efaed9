#pragma once

#include <string>
#include <utility>
#include <vector>

#include "syp/beat_sheet.hpp"

namespace syp {

struct Mismatch {
  int entry_id = 0;
  std::string reason;
};

/// Completeness (mq1 = qtd_ext / qtd_exp) and correctness
/// (mq2 = qtd_corr / qtd_exp) of a candidate sheet against a gold sheet.
struct MetricsReport {
  int qtd_exp = 0;
  int qtd_ext = 0;
  int qtd_corr = 0;
  double mq1 = 0.0;
  double mq2 = 0.0;
  std::vector<Mismatch> mismatches;
};

/// An entry counts as correct when the gold sheet has an entry for the same
/// flow node with the same subject kind, the same complements (compared by
/// origin and normalized text) and the same set of next ids. Only the first
/// candidate entry for a node can be correct.
MetricsReport score_sheet(const BeatSheet& candidate, const BeatSheet& gold);

/// Case-folded, trimmed, quote-free, single-spaced.
std::string normalize_text(std::string_view text);

struct Statistic {
  double mean = 0.0;
  double mode = 0.0;  // over values rounded to 2 decimals, ties to the smallest
  double sd = 0.0;    // sample standard deviation; 0 for a single value
};

struct MetricsSummary {
  std::size_t count = 0;
  Statistic qtd_ext;
  Statistic qtd_corr;
  Statistic mq1;
  Statistic mq2;
};

Statistic describe(const std::vector<double>& values);
MetricsSummary summarize(const std::vector<MetricsReport>& reports);

/// participant,qtd_ext,qtd_corr,qtd_exp,mq1,mq2 with optional Average, Mode
/// and Standard Deviation rows.
std::string metrics_csv(const std::vector<std::pair<std::string, MetricsReport>>& rows,
                        bool with_summary);

}  // namespace syp
