#include "lex2sent/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "lex2sent/errors.hpp"
#include "lex2sent/preprocess.hpp"

namespace lex2sent {

namespace {

std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trimmed(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw DataError("key '" + key + "' expects a boolean, got '" + value + "'");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T parsed{};
  char trailing = 0;
  if (!(in >> parsed) || in >> trailing) {
    throw DataError("key '" + key + "' has a malformed value '" + value + "'");
  }
  return parsed;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split_list(value)) out.push_back(parse_number<int>(key, item));
  if (out.empty()) throw DataError("key '" + key + "' expects a nonempty list");
  return out;
}

using Setter = std::function<void(AppConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"dataset.path", [](AppConfig& c, const std::string&, const std::string& v) { c.dataset_path = v; }},
      {"dataset.format", [](AppConfig& c, const std::string&, const std::string& v) { c.dataset_format = v; }},
      {"dataset.min_chars",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.min_chars = parse_number<std::size_t>(k, v);
       }},
      {"lexicon.path", [](AppConfig& c, const std::string&, const std::string& v) { c.lexicon_path = v; }},
      {"lexicon.stem_entries",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.stem_entries = parse_bool(k, v); }},
      {"preprocess.stopwords",
       [](AppConfig& c, const std::string&, const std::string& v) { c.stopwords = v; }},
      {"preprocess.negations",
       [](AppConfig& c, const std::string&, const std::string& v) { c.negations = split_list(v); }},
      {"preprocess.amplifiers",
       [](AppConfig& c, const std::string&, const std::string& v) { c.amplifiers = split_list(v); }},
      {"preprocess.stemming",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.stemming = parse_bool(k, v); }},
      {"grid.epochs",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.grid_epochs = parse_int_list(k, v); }},
      {"grid.windows",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.grid_windows = parse_int_list(k, v); }},
      {"grid.dims",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.grid_dims = parse_int_list(k, v); }},
      {"train.alpha_start",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.alpha_start = parse_number<double>(k, v); }},
      {"train.alpha_end",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.alpha_end = parse_number<double>(k, v); }},
      {"train.min_count",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.min_count = parse_number<int>(k, v); }},
      {"train.subsample",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.subsample = parse_number<double>(k, v); }},
      {"run.method", [](AppConfig& c, const std::string&, const std::string& v) { c.method = v; }},
      {"run.resampling",
       [](AppConfig& c, const std::string&, const std::string& v) { c.resampling = v; }},
      {"run.threshold",
       [](AppConfig& c, const std::string&, const std::string& v) { c.threshold = v; }},
      {"run.proportion_p",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.proportion_p = parse_number<double>(k, v); }},
      {"run.half_embedding",
       [](AppConfig& c, const std::string&, const std::string& v) { c.half_embedding = v; }},
      {"run.runs",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.runs = parse_number<int>(k, v); }},
      {"run.seed",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.seed = parse_number<std::uint64_t>(k, v); }},
      {"run.workers",
       [](AppConfig& c, const std::string& k, const std::string& v) { c.workers = parse_number<int>(k, v); }},
      {"run.subsample_fraction",
       [](AppConfig& c, const std::string& k, const std::string& v) {
         c.subsample_fraction = parse_number<double>(k, v);
       }},
  };
  return table;
}

}  // namespace

AppConfig::AppConfig()
    : negations(default_negations()), amplifiers(default_amplifiers()) {}

void apply_override(AppConfig& config, const std::string& dotted_key,
                    const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(dotted_key);
  if (it == table.end()) throw DataError("unknown configuration key: " + dotted_key);
  it->second(config, dotted_key, trimmed(value));
}

void apply_override_expr(AppConfig& config, const std::string& key_equals_value) {
  const auto eq = key_equals_value.find('=');
  if (eq == std::string::npos) {
    throw DataError("override must look like section.key=value: " + key_equals_value);
  }
  apply_override(config, trimmed(key_equals_value.substr(0, eq)),
                 key_equals_value.substr(eq + 1));
}

AppConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path.string());

  AppConfig config;
  std::string line, section;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    line = trimmed(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw DataError(path.string() + ":" + std::to_string(line_number) +
                        ": malformed section header");
      }
      section = trimmed(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw DataError(path.string() + ":" + std::to_string(line_number) +
                      ": expected key = value inside a [section]");
    }
    apply_override(config, section + "." + trimmed(line.substr(0, eq)),
                   line.substr(eq + 1));
  }
  return config;
}

std::string echo_config(const AppConfig& c) {
  std::ostringstream out;
  const auto list = [](const auto& values) {
    std::ostringstream s;
    for (std::size_t i = 0; i < values.size(); ++i) s << (i ? "," : "") << values[i];
    return s.str();
  };
  out << "[dataset]\n";
  out << "path = " << c.dataset_path << '\n';
  out << "format = " << c.dataset_format << '\n';
  out << "min_chars = " << c.min_chars << '\n';
  out << "[lexicon]\n";
  out << "path = " << c.lexicon_path << '\n';
  out << "stem_entries = " << (c.stem_entries ? "true" : "false") << '\n';
  out << "[preprocess]\n";
  out << "stopwords = " << c.stopwords << '\n';
  out << "negations = " << list(c.negations) << '\n';
  out << "amplifiers = " << list(c.amplifiers) << '\n';
  out << "stemming = " << (c.stemming ? "true" : "false") << '\n';
  out << "[grid]\n";
  out << "epochs = " << list(c.grid_epochs) << '\n';
  out << "windows = " << list(c.grid_windows) << '\n';
  out << "dims = " << list(c.grid_dims) << '\n';
  out << "[train]\n";
  out << "alpha_start = " << c.alpha_start << '\n';
  out << "alpha_end = " << c.alpha_end << '\n';
  out << "min_count = " << c.min_count << '\n';
  out << "subsample = " << c.subsample << '\n';
  out << "[run]\n";
  out << "method = " << c.method << '\n';
  out << "resampling = " << c.resampling << '\n';
  out << "threshold = " << c.threshold << '\n';
  out << "proportion_p = " << c.proportion_p << '\n';
  out << "half_embedding = " << c.half_embedding << '\n';
  out << "runs = " << c.runs << '\n';
  out << "seed = " << c.seed << '\n';
  out << "workers = " << c.workers << '\n';
  out << "subsample_fraction = " << c.subsample_fraction << '\n';
  return out.str();
}

}  // namespace lex2sent
