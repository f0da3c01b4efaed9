#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "syp/error.hpp"
#include "syp/metrics.hpp"

namespace syp {

namespace {

using ComplementKey = std::pair<ComplementOrigin, std::string>;

std::vector<ComplementKey> complement_keys(const Sentence& s) {
  std::vector<ComplementKey> keys;
  for (const auto& c : s.complements) keys.emplace_back(c.origin, normalize_text(c.text));
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::set<int> next_ids(const BeatEntry& e) {
  std::set<int> ids;
  for (const auto& n : e.next) ids.insert(n.id);
  return ids;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

}  // namespace

std::string normalize_text(std::string_view text) {
  static constexpr std::string_view kQuotes[] = {"\xE2\x80\x9C", "\xE2\x80\x9D", "\xE2\x80\x98",
                                                 "\xE2\x80\x99"};
  std::string stripped;
  for (std::size_t i = 0; i < text.size();) {
    bool skipped = false;
    for (auto q : kQuotes) {
      if (text.substr(i, q.size()) == q) {
        i += q.size();
        skipped = true;
        break;
      }
    }
    if (skipped) continue;
    char c = text[i++];
    if (c == '"' || c == '\'' || c == '`') continue;
    stripped.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  std::string out;
  bool space = false;
  for (char c : stripped) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

MetricsReport score_sheet(const BeatSheet& candidate, const BeatSheet& gold) {
  if (candidate.process_id != gold.process_id) {
    throw Error(Errc::ModelMismatch, "candidate sheet is for process '" + candidate.process_id +
                                         "', gold is for '" + gold.process_id + "'");
  }
  if (gold.entries.empty()) throw Error(Errc::EmptyInput, "gold sheet has no entries");

  MetricsReport report;
  report.qtd_exp = static_cast<int>(gold.entries.size());
  report.qtd_ext = static_cast<int>(candidate.entries.size());

  std::set<std::string> matched;
  for (const auto& entry : candidate.entries) {
    const auto& node = entry.sentence.source_node;
    const BeatEntry* expected = gold.find_node(node);
    std::vector<std::string> reasons;
    if (!expected) {
      reasons.push_back("flow node '" + node + "' is not in the gold sheet");
    } else if (!matched.insert(node).second) {
      reasons.push_back("second entry for flow node '" + node + "'");
    } else {
      if (entry.sentence.subject_kind != expected->sentence.subject_kind) {
        reasons.push_back("subject kind is " + std::string(to_string(entry.sentence.subject_kind)) +
                          ", expected " + std::string(to_string(expected->sentence.subject_kind)));
      }
      if (complement_keys(entry.sentence) != complement_keys(expected->sentence)) {
        reasons.push_back("complements differ");
      }
      if (next_ids(entry) != next_ids(*expected)) reasons.push_back("next pointers differ");
    }
    if (reasons.empty()) {
      ++report.qtd_corr;
      continue;
    }
    std::string joined;
    for (const auto& r : reasons) joined += (joined.empty() ? "" : "; ") + r;
    report.mismatches.push_back({entry.id, std::move(joined)});
  }
  report.mq1 = static_cast<double>(report.qtd_ext) / report.qtd_exp;
  report.mq2 = static_cast<double>(report.qtd_corr) / report.qtd_exp;
  return report;
}

Statistic describe(const std::vector<double>& values) {
  if (values.empty()) throw Error(Errc::EmptyInput, "no values to summarize");
  Statistic stat;
  double sum = 0.0;
  for (double v : values) sum += v;
  stat.mean = sum / static_cast<double>(values.size());

  std::map<long long, int> counts;
  for (double v : values) ++counts[std::llround(v * 100.0)];
  auto best = counts.begin();
  for (auto it = counts.begin(); it != counts.end(); ++it) {
    if (it->second > best->second) best = it;  // map order keeps the smallest on ties
  }
  stat.mode = static_cast<double>(best->first) / 100.0;

  if (values.size() > 1) {
    double squares = 0.0;
    for (double v : values) squares += (v - stat.mean) * (v - stat.mean);
    stat.sd = std::sqrt(squares / static_cast<double>(values.size() - 1));
  }
  return stat;
}

MetricsSummary summarize(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw Error(Errc::EmptyInput, "no reports to summarize");
  std::vector<double> ext, corr, mq1, mq2;
  for (const auto& r : reports) {
    ext.push_back(r.qtd_ext);
    corr.push_back(r.qtd_corr);
    mq1.push_back(r.mq1);
    mq2.push_back(r.mq2);
  }
  return {reports.size(), describe(ext), describe(corr), describe(mq1), describe(mq2)};
}

std::string metrics_csv(const std::vector<std::pair<std::string, MetricsReport>>& rows,
                        bool with_summary) {
  std::ostringstream out;
  out << "participant,qtd_ext,qtd_corr,qtd_exp,mq1,mq2\n";
  std::vector<MetricsReport> reports;
  for (const auto& [name, r] : rows) {
    out << csv_field(name) << ',' << r.qtd_ext << ',' << r.qtd_corr << ',' << r.qtd_exp << ','
        << fixed(r.mq1, 2) << ',' << fixed(r.mq2, 2) << '\n';
    reports.push_back(r);
  }
  if (with_summary && !reports.empty()) {
    auto s = summarize(reports);
    auto row = [&](const char* label, double ext, double corr, double mq1, double mq2) {
      out << label << ',' << fixed(ext, 2) << ',' << fixed(corr, 2) << ",," << fixed(mq1, 2) << ','
          << fixed(mq2, 2) << '\n';
    };
    row("Average", s.qtd_ext.mean, s.qtd_corr.mean, s.mq1.mean, s.mq2.mean);
    row("Mode", s.qtd_ext.mode, s.qtd_corr.mode, s.mq1.mode, s.mq2.mode);
    row("Standard Deviation", s.qtd_ext.sd, s.qtd_corr.sd, s.mq1.sd, s.mq2.sd);
  }
  return out.str();
}

}  // namespace syp
