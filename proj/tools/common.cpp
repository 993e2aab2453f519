#include "common.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "sentopic/errors.hpp"

namespace sentopic::cli {

std::map<std::string, std::string> load_config_file(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open config file: " + path.string());
  }
  std::map<std::string, std::string> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DataError("config " + path.string() + " line " +
                      std::to_string(line_no) + ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string()
                                    : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw DataError("config " + path.string() + " line " +
                      std::to_string(line_no) + ": empty key");
    }
    values[key] = value;
  }
  return values;
}

void ResolvedConfig::merge_seed(const std::string& key, std::uint64_t& var) {
  const std::string flag = "--" + key;
  if (cmd_->count(flag) == 0) {
    const auto it = file_values_.find(key);
    if (it != file_values_.end()) {
      var = parse_config_value<std::uint64_t>(key, it->second);
    } else if (const char* env = std::getenv("SENTOPIC_SEED")) {
      var = parse_config_value<std::uint64_t>("SENTOPIC_SEED", env);
    }
  }
  record(key, var);
}

std::vector<std::string> ResolvedConfig::lines() const {
  std::vector<std::string> out;
  out.reserve(values_.size());
  for (const auto& [key, value] : values_) {
    out.push_back(key + "=" + value);
  }
  return out;
}

void print_resolved(const ResolvedConfig& config) {
  for (const auto& line : config.lines()) {
    std::cout << "config " << line << '\n';
  }
}

std::vector<Document> docs_for_split(const Corpus& corpus,
                                     const std::string& split) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
    const bool take =
        split == "all" ||
        (split == "train" && corpus.split[i] == Split::train) ||
        (split == "test" && corpus.split[i] == Split::test);
    if (take) {
      docs.push_back(corpus.documents[i]);
    }
  }
  if (docs.empty()) {
    throw DataError("no documents in split '" + split + "'");
  }
  return docs;
}

std::vector<std::size_t> parse_k_grid(const std::string& csv) {
  std::vector<std::size_t> grid;
  std::istringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    grid.push_back(parse_config_value<std::size_t>("k-grid", item));
  }
  if (grid.empty()) {
    throw CLI::ValidationError("k-grid", "no retrieval depths given");
  }
  return grid;
}

}  // namespace sentopic::cli
