#ifndef LEX2SENT_CONFIG_HPP_
#define LEX2SENT_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace lex2sent {

// Effective run configuration, assembled from an INI-style file plus dotted
// "section.key=value" overrides. Unknown sections or keys are rejected.
struct AppConfig {
  // [dataset]
  std::string dataset_path;
  std::string dataset_format = "jsonl";
  std::size_t min_chars = 0;

  // [lexicon]
  std::string lexicon_path;
  bool stem_entries = true;

  // [preprocess]
  std::string stopwords = "builtin";  // "builtin" or a word-list file
  std::vector<std::string> negations;
  std::vector<std::string> amplifiers;
  bool stemming = true;

  // [grid]
  std::vector<int> grid_epochs{5, 10, 15};
  std::vector<int> grid_windows{5, 10, 15};
  std::vector<int> grid_dims{50, 100, 150, 200};

  // [train]
  double alpha_start = 0.025;
  double alpha_end = 1e-4;
  int min_count = 0;  // 0 = auto (5, or 1 for corpora under 2000 documents)
  double subsample = 1e-3;

  // [run]
  std::string method = "lex2sent";
  std::string resampling = "bword";
  std::string threshold = "zero";  // zero | proportion
  double proportion_p = 0.0;       // 0 = derive from gold labels
  std::string half_embedding = "pseudo_doc";
  int runs = 1;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = hardware concurrency
  double subsample_fraction = 1.0;

  AppConfig();  // fills the default negation/amplifier lists
};

AppConfig parse_config_file(const std::filesystem::path& path);

// Applies one "section.key=value" override. Throws DataError on unknown keys
// or malformed values.
void apply_override(AppConfig& config, const std::string& dotted_key,
                    const std::string& value);
void apply_override_expr(AppConfig& config, const std::string& key_equals_value);

// Canonical plain-text form of the effective configuration; stable across
// invocations so it can be embedded in reproducibility manifests.
std::string echo_config(const AppConfig& config);

}  // namespace lex2sent

#endif  // LEX2SENT_CONFIG_HPP_
