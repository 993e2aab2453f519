#include "sentopic/reports.hpp"

#include <cstdio>
#include <fstream>

#include "sentopic/errors.hpp"

namespace sentopic {

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path,
                       std::span<const std::string> header_lines) {
  std::ofstream out(path);
  if (!out) {
    throw DataError("cannot write report file: " + path.string());
  }
  for (const auto& line : header_lines) {
    out << "# " << line << '\n';
  }
  return out;
}

}  // namespace

void write_perplexity_csv(const PerplexityReport& report,
                          std::span<const std::uint32_t> lengths,
                          const std::filesystem::path& path,
                          std::span<const std::string> header_lines) {
  auto out = open_csv(path, header_lines);
  out << "doc_id,length,log_p\n";
  for (std::size_t i = 0; i < report.per_doc_log_p.size(); ++i) {
    out << i << ',' << lengths[i] << ','
        << format_double(report.per_doc_log_p[i]) << '\n';
  }
  out << "# total_words=" << report.total_words
      << " perplexity=" << format_double(report.perplexity) << '\n';
}

void write_pr_curve_csv(const PRCurve& curve,
                        const std::filesystem::path& path,
                        std::span<const std::string> header_lines) {
  auto out = open_csv(path, header_lines);
  out << "k,recall,precision\n";
  for (const auto& point : curve.points) {
    out << point.k << ',' << format_double(point.recall) << ','
        << format_double(point.precision) << '\n';
  }
}

void write_topic_report_csv(const TopicSentimentReport& report,
                            const std::filesystem::path& path,
                            std::span<const std::string> header_lines) {
  auto out = open_csv(path, header_lines);
  out << "topic,positive_mass,negative_mass,tag,agrees\n";
  for (const auto& row : report.per_topic) {
    out << row.topic << ',' << format_double(row.positive_mass) << ','
        << format_double(row.negative_mass) << ',' << row.tag << ','
        << (row.agrees ? 1 : 0) << '\n';
  }
  out << "# tags_per_side=" << report.tags_per_side
      << " precision=" << format_double(report.precision)
      << (report.degenerate ? " degenerate=1" : "") << '\n';
}

void write_classification_csv(std::span<const ClassificationRow> rows,
                              std::size_t num_sentiments,
                              const std::filesystem::path& path,
                              std::span<const std::string> header_lines) {
  auto out = open_csv(path, header_lines);
  const bool has_baseline = !rows.empty() && rows.front().baseline.has_value();
  out << "doc_id,gold,predicted";
  if (num_sentiments == 2) {
    out << ",prob_neg,prob_pos";
  } else {
    for (std::size_t l = 0; l < num_sentiments; ++l) {
      out << ",prob_" << l;
    }
  }
  if (has_baseline) {
    out << ",baseline";
  }
  out << '\n';
  for (const auto& row : rows) {
    out << row.doc_id << ',';
    if (row.gold) {
      out << *row.gold;
    } else {
      out << '-';
    }
    out << ',' << row.predicted;
    for (const double p : row.probs) {
      out << ',' << format_double(p);
    }
    if (has_baseline) {
      out << ',' << *row.baseline;
    }
    out << '\n';
  }
}

}  // namespace sentopic
