#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentopic/eval.hpp"
#include "sentopic/tasks.hpp"

namespace sentopic {

// All experiment artifacts are CSV so downstream plotting stays
// tool-agnostic. Each writer prepends one `# key=value` comment line per
// entry of `header_lines` (the resolved run configuration).

// Columns: doc_id,length,log_p; a trailing comment carries the summary.
void write_perplexity_csv(const PerplexityReport& report,
                          std::span<const std::uint32_t> lengths,
                          const std::filesystem::path& path,
                          std::span<const std::string> header_lines);

// Columns: k,recall,precision.
void write_pr_curve_csv(const PRCurve& curve, const std::filesystem::path& path,
                        std::span<const std::string> header_lines);

// Columns: topic,positive_mass,negative_mass,tag,agrees.
void write_topic_report_csv(const TopicSentimentReport& report,
                            const std::filesystem::path& path,
                            std::span<const std::string> header_lines);

struct ClassificationRow {
  std::size_t doc_id = 0;
  std::optional<std::uint32_t> gold;
  std::size_t predicted = 0;
  std::vector<double> probs;
  std::optional<std::size_t> baseline;
};

// Columns: doc_id,gold,predicted,prob_neg,prob_pos[,baseline] for S = 2,
// generic prob_0..prob_{S-1} otherwise.
void write_classification_csv(std::span<const ClassificationRow> rows,
                              std::size_t num_sentiments,
                              const std::filesystem::path& path,
                              std::span<const std::string> header_lines);

// Shared formatting helper: shortest round-trip double representation.
std::string format_double(double value);

}  // namespace sentopic
