#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sentopic/corpus.hpp"

namespace sentopic::cli {

// Exit codes: 0 success, 1 usage, 2 data error, 3 numeric failure.
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

// Flat key=value configuration file. Option precedence, highest first:
// command line, config file, SENTOPIC_SEED (seed only), built-in default.
std::map<std::string, std::string> load_config_file(
    const std::filesystem::path& path);

template <typename T>
T parse_config_value(const std::string& key, const std::string& text) {
  if constexpr (std::is_same_v<T, std::string>) {
    return text;
  } else if constexpr (std::is_same_v<T, bool>) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw CLI::ValidationError(key, "expected a boolean, got '" + text + "'");
  } else {
    std::istringstream ss(text);
    T value{};
    if (!(ss >> value) || !ss.eof()) {
      throw CLI::ValidationError(key, "cannot parse '" + text + "'");
    }
    return value;
  }
}

// Applies config-file fallbacks to every registered option of a command and
// records the final values for artifact headers.
class ResolvedConfig {
 public:
  explicit ResolvedConfig(CLI::App* cmd) : cmd_(cmd) {}

  void load_file(const std::string& path) {
    if (!path.empty()) {
      file_values_ = load_config_file(path);
    }
  }

  // Key is the long option name without the leading dashes.
  template <typename T>
  void merge(const std::string& key, T& var) {
    const std::string flag = "--" + key;
    if (cmd_->count(flag) == 0) {
      const auto it = file_values_.find(key);
      if (it != file_values_.end()) {
        var = parse_config_value<T>(key, it->second);
      }
    }
    record(key, var);
  }

  // Seed gets the extra environment fallback.
  void merge_seed(const std::string& key, std::uint64_t& var);

  template <typename T>
  void record(const std::string& key, const T& value) {
    std::ostringstream ss;
    if constexpr (std::is_same_v<T, bool>) {
      ss << (value ? "true" : "false");
    } else {
      ss << value;
    }
    values_[key] = ss.str();
  }

  // Sorted `key=value` lines, embedded into every artifact header and
  // printed on stdout.
  std::vector<std::string> lines() const;

 private:
  CLI::App* cmd_;
  std::map<std::string, std::string> file_values_;
  std::map<std::string, std::string> values_;
};

void print_resolved(const ResolvedConfig& config);

// Documents of the requested split ("train", "test" or "all").
std::vector<Document> docs_for_split(const Corpus& corpus,
                                     const std::string& split);

std::vector<std::size_t> parse_k_grid(const std::string& csv);

void register_prepare(CLI::App& app);
void register_train(CLI::App& app);
void register_eval(CLI::App& app);

}  // namespace sentopic::cli
