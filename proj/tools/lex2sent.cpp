// Command-line front end: ingest datasets, run the bagged embedding
// classifier or the counting baseline, evaluate over repeated executions,
// export predicted labels, and compare methods.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lex2sent/config.hpp"
#include "lex2sent/dataset.hpp"
#include "lex2sent/doc2vec.hpp"
#include "lex2sent/errors.hpp"
#include "lex2sent/eval.hpp"
#include "lex2sent/lexicon.hpp"
#include "lex2sent/preprocess.hpp"
#include "lex2sent/version.hpp"

namespace {

using namespace lex2sent;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitData = 4;
constexpr int kExitNumeric = 5;

struct CliFlags {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
  std::optional<std::string> threshold;
  std::optional<std::string> resampling;
  std::optional<int> runs;
  std::optional<std::string> method;
  std::string dump_tokens;
  std::string dump_halves;
  std::string dump_diffs;
};

AppConfig effective_config(const CliFlags& flags) {
  AppConfig config;
  if (!flags.config_path.empty()) config = parse_config_file(flags.config_path);
  for (const auto& expr : flags.overrides) apply_override_expr(config, expr);
  // Convenience flags land last so they win over the file and --set.
  if (flags.seed) apply_override(config, "run.seed", std::to_string(*flags.seed));
  if (flags.workers) apply_override(config, "run.workers", std::to_string(*flags.workers));
  if (flags.threshold) apply_override(config, "run.threshold", *flags.threshold);
  if (flags.resampling) apply_override(config, "run.resampling", *flags.resampling);
  if (flags.runs) apply_override(config, "run.runs", std::to_string(*flags.runs));
  if (flags.method) apply_override(config, "run.method", *flags.method);
  return config;
}

std::filesystem::path resolve_out_dir(const CliFlags& flags) {
  if (!flags.out_dir.empty()) return flags.out_dir;
  if (const char* env = std::getenv("LEX2SENT_OUT")) return env;
  return "out";
}

struct Pipeline {
  AppConfig config;
  PreprocessConfig prep;
  SentimentLexicon lexicon;  // stemmed when the corpus is stemmed
  Corpus corpus;
  LoadedDataset stats;
};

PreprocessConfig build_prep(const AppConfig& config) {
  PreprocessConfig prep = PreprocessConfig::defaults();
  if (config.stopwords != "builtin") {
    prep.stopword_list.clear();
    std::ifstream in(config.stopwords);
    if (!in) throw IoError("cannot open stopword file: " + config.stopwords);
    std::string word;
    while (in >> word) prep.stopword_list.insert(word);
  }
  prep.negation_list = config.negations;
  prep.amplifier_list = config.amplifiers;
  prep.protected_words.clear();
  prep.protected_words.insert(prep.negation_list.begin(), prep.negation_list.end());
  prep.protected_words.insert(prep.amplifier_list.begin(), prep.amplifier_list.end());
  prep.stemming_enabled = config.stemming;
  return prep;
}

Pipeline build_pipeline(const AppConfig& config) {
  if (config.dataset_path.empty()) throw DataError("config is missing dataset.path");
  if (config.lexicon_path.empty()) throw DataError("config is missing lexicon.path");

  Pipeline p;
  p.config = config;
  const SentimentLexicon raw_lexicon = load_lexicon(config.lexicon_path);

  p.prep = build_prep(config);
  std::vector<std::string> lexicon_words;
  lexicon_words.reserve(raw_lexicon.size());
  for (const auto& [word, value] : raw_lexicon.entries()) lexicon_words.push_back(word);
  p.prep.protect_lexicon_words(lexicon_words);

  LoadOptions load_options;
  load_options.min_chars = config.min_chars;
  p.stats = load_dataset(config.dataset_path,
                         dataset_format_from_string(config.dataset_format), load_options);
  p.corpus = std::move(p.stats.corpus);
  preprocess_corpus(p.corpus, p.prep);

  p.lexicon = (config.stemming && config.stem_entries) ? stemmed(raw_lexicon) : raw_lexicon;
  return p;
}

RunConfig to_run_config(const Pipeline& p) {
  const AppConfig& c = p.config;
  RunConfig run;
  run.method = method_from_string(c.method);
  run.lex2sent.grid.epochs_set = c.grid_epochs;
  run.lex2sent.grid.windows_set = c.grid_windows;
  run.lex2sent.grid.dims_set = c.grid_dims;
  run.lex2sent.resampling = resampling_from_string(c.resampling);
  run.lex2sent.train_base.alpha_start = c.alpha_start;
  run.lex2sent.train_base.alpha_end = c.alpha_end;
  run.lex2sent.train_base.subsample_threshold = c.subsample;
  if (c.min_count > 0) {
    run.lex2sent.train_base.min_count = c.min_count;
    run.lex2sent.auto_min_count = false;
  }
  if (c.half_embedding == "pseudo_doc") {
    run.lex2sent.half_embedding = HalfEmbedding::pseudo_doc;
  } else if (c.half_embedding == "word_mean") {
    run.lex2sent.half_embedding = HalfEmbedding::word_mean;
  } else {
    throw DataError("unknown half_embedding mode: " + c.half_embedding);
  }
  run.lex2sent.amplifiers = p.prep.amplifier_list;
  run.lex2sent.negations = p.prep.negation_list;

  if (c.threshold == "zero") {
    run.threshold.kind = ThresholdKind::fixed_zero;
  } else if (c.threshold == "proportion") {
    run.threshold.kind = ThresholdKind::proportion;
    if (c.proportion_p > 0.0) run.threshold.p = c.proportion_p;
  } else {
    throw DataError("unknown threshold mode: " + c.threshold);
  }
  run.runs = c.runs;
  run.master_seed = c.seed;
  if (c.subsample_fraction < 1.0) run.subsample_fraction = c.subsample_fraction;
  run.workers = c.workers > 0
                    ? c.workers
                    : std::max(1u, std::thread::hardware_concurrency());
  run.lex2sent.workers = run.workers;
  return run;
}

std::uint64_t first_run_seed(const RunConfig& config) {
  return run_seed(config.master_seed, 0);
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write output file: " + path.string());
  return out;
}

void write_manifest(const std::filesystem::path& dir, const Pipeline& p,
                    const RunConfig& run, const std::vector<CellRecord>& cells) {
  auto out = open_output(dir / "manifest.txt");
  out << "lex2sent " << kVersion << '\n';
  out << "# effective configuration\n" << echo_config(p.config);
  out << "# derived run seeds\n";
  for (int r = 0; r < run.runs; ++r) {
    out << "run " << r << " seed " << run_seed(run.master_seed, r) << '\n';
  }
  if (!cells.empty()) {
    out << "# cells: index epochs window dim seed seconds\n";
    char line[160];
    for (const auto& cell : cells) {
      std::snprintf(line, sizeof(line), "cell %zu %d %d %d %llu %.3f\n", cell.index,
                    cell.epochs, cell.window, cell.dim,
                    static_cast<unsigned long long>(cell.seed), cell.seconds);
      out << line;
    }
  }
}

void write_classifier(const std::filesystem::path& path, const Corpus& corpus,
                      const SingleRun& run) {
  auto out = open_output(path);
  out << "doc_id\tscore\tlabel\n";
  char buffer[32];
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    std::snprintf(buffer, sizeof(buffer), "%.17g", run.scores[i]);
    out << corpus.documents[i].id << '\t' << buffer << '\t' << to_string(run.labels[i])
        << '\n';
  }
}

int cmd_ingest(const CliFlags& flags) {
  const Pipeline p = build_pipeline(effective_config(flags));
  const auto dir = resolve_out_dir(flags);
  std::filesystem::create_directories(dir);

  std::size_t labeled = 0, empty = 0, token_total = 0;
  for (const auto& doc : p.corpus.documents) {
    if (doc.gold_label) ++labeled;
    if (doc.empty_after_preprocess) ++empty;
    token_total += doc.tokens.size();
  }
  auto out = open_output(dir / "ingest_stats.txt");
  const auto emit = [&out](const std::string& line) {
    std::cout << line << '\n';
    out << line << '\n';
  };
  emit("dataset: " + p.corpus.name);
  emit("documents: " + std::to_string(p.corpus.size()));
  emit("labeled: " + std::to_string(labeled));
  emit("positive_fraction: " + std::to_string(p.corpus.positive_fraction));
  emit("empty_after_preprocess: " + std::to_string(empty));
  emit("mean_tokens: " +
       std::to_string(static_cast<double>(token_total) /
                      static_cast<double>(std::max<std::size_t>(1, p.corpus.size()))));
  emit("skipped_malformed: " + std::to_string(p.stats.skipped_malformed));
  emit("dropped_by_filter: " + std::to_string(p.stats.dropped_by_filter));
  emit("lexicon: " + p.lexicon.name() + " (" + std::to_string(p.lexicon.size()) +
       " entries)");

  if (!flags.dump_tokens.empty()) {
    auto dump = open_output(flags.dump_tokens);
    dump << "doc_id\ttokens\n";
    for (const auto& doc : p.corpus.documents) {
      dump << doc.id << '\t';
      for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
        dump << (i ? " " : "") << doc.tokens[i];
      }
      dump << '\n';
    }
  }
  if (!flags.dump_halves.empty()) {
    std::filesystem::create_directories(flags.dump_halves);
    const auto augmented = augment_negations(halves(p.lexicon));
    export_halves(augmented, std::filesystem::path(flags.dump_halves) / "positive.txt",
                  std::filesystem::path(flags.dump_halves) / "negative.txt");
  }
  return kExitOk;
}

int run_single(const CliFlags& flags, Method method) {
  Pipeline p = build_pipeline(effective_config(flags));
  RunConfig run_config = to_run_config(p);
  run_config.method = method;
  if (!flags.dump_diffs.empty()) {
    std::filesystem::create_directories(flags.dump_diffs);
    run_config.lex2sent.diff_dump_dir = flags.dump_diffs;
  }

  const auto dir = resolve_out_dir(flags);
  std::filesystem::create_directories(dir);

  const SingleRun run = execute_run(p.corpus, p.lexicon, run_config,
                                    first_run_seed(run_config));
  write_classifier(dir / "classifier.tsv", p.corpus, run);
  write_manifest(dir, p, run_config, run.cells);
  if (!std::isnan(run.rate)) {
    std::printf("classification rate: %.4f (positives: %ld/%zu)\n", run.rate,
                run.positive_count, p.corpus.size());
  } else {
    std::printf("labeled %ld of %zu documents positive (no gold labels)\n",
                run.positive_count, p.corpus.size());
  }
  std::printf("outputs in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_evaluate(const CliFlags& flags) {
  Pipeline p = build_pipeline(effective_config(flags));
  const RunConfig run_config = to_run_config(p);
  const auto dir = resolve_out_dir(flags);
  std::filesystem::create_directories(dir);

  const EvalReport report = multi_run(p.corpus, p.lexicon, run_config);

  char line[256];
  {
    auto out = open_output(dir / "report.txt");
    out << "lex2sent evaluation (" << report.config_echo << ")\n";
    std::snprintf(line, sizeof(line),
                  "mean %.4f  min %.4f  q1 %.4f  median %.4f  q3 %.4f  max %.4f\n",
                  report.mean_rate, report.min_rate, report.q1, report.median, report.q3,
                  report.max_rate);
    out << line;
    out << "mean positive labels per run: " << report.positive_label_count << '\n';
    out << "per-run rates:";
    for (const double rate : report.per_run_rates) {
      std::snprintf(line, sizeof(line), " %.4f", rate);
      out << line;
    }
    out << '\n';
  }
  {
    auto out = open_output(dir / "report.tsv");
    out << "key\tvalue\n";
    std::snprintf(line, sizeof(line), "mean\t%.10g\n", report.mean_rate);
    out << line;
    std::snprintf(line, sizeof(line), "min\t%.10g\n", report.min_rate);
    out << line;
    std::snprintf(line, sizeof(line), "q1\t%.10g\n", report.q1);
    out << line;
    std::snprintf(line, sizeof(line), "median\t%.10g\n", report.median);
    out << line;
    std::snprintf(line, sizeof(line), "q3\t%.10g\n", report.q3);
    out << line;
    std::snprintf(line, sizeof(line), "max\t%.10g\n", report.max_rate);
    out << line;
    out << "positive_labels\t" << report.positive_label_count << '\n';
  }
  {
    auto out = open_output(dir / "rates.txt");
    for (const double rate : report.per_run_rates) {
      std::snprintf(line, sizeof(line), "%.10g\n", rate);
      out << line;
    }
  }
  write_manifest(dir, p, run_config, {});
  std::printf("mean classification rate over %d runs: %.4f\n", run_config.runs,
              report.mean_rate);
  std::printf("outputs in %s\n", dir.string().c_str());
  return kExitOk;
}

int cmd_export(const CliFlags& flags) {
  Pipeline p = build_pipeline(effective_config(flags));
  const RunConfig run_config = to_run_config(p);
  const auto dir = resolve_out_dir(flags);
  std::filesystem::create_directories(dir);

  const SingleRun run = execute_run(p.corpus, p.lexicon, run_config,
                                    first_run_seed(run_config));
  export_labels(p.corpus, run.labels, dir / "labels.tsv");
  write_manifest(dir, p, run_config, run.cells);
  std::printf("wrote %zu labels to %s\n", p.corpus.size(),
              (dir / "labels.tsv").string().c_str());
  return kExitOk;
}

int cmd_compare(const CliFlags& flags) {
  Pipeline p = build_pipeline(effective_config(flags));
  const RunConfig run_config = to_run_config(p);
  const auto dir = resolve_out_dir(flags);
  std::filesystem::create_directories(dir);

  const MethodComparison comparison = compare_methods(
      p.corpus, p.lexicon, run_config, {Method::lex2sent, Method::counting});
  const std::string table = format_comparison(comparison);
  std::cout << table;
  {
    auto out = open_output(dir / "comparison.txt");
    out << table;
  }
  {
    auto out = open_output(dir / "comparison.tsv");
    out << "method\tmean_fixed\tmedian_fixed\tmean_proportion\tmedian_proportion\n";
    char line[256];
    for (const auto& row : comparison.rows) {
      std::snprintf(line, sizeof(line), "%s\t%.10g\t%.10g\t%.10g\t%.10g\n",
                    to_string(row.method), row.fixed.mean_rate, row.fixed.median,
                    row.proportion.mean_rate, row.proportion.median);
      out << line;
    }
  }
  write_manifest(dir, p, run_config, {});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unsupervised sentiment labeling with bagged lexicon-based text embeddings"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  CliFlags flags;
  std::string command;

  const auto add_common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config_path, "configuration file");
    sub->add_option("--set", flags.overrides, "override: section.key=value")
        ->take_all()
        ->expected(-1);
    sub->add_option("--out", flags.out_dir,
                    "output directory (default: $LEX2SENT_OUT or ./out)");
    sub->add_option("--seed", flags.seed, "master seed");
    sub->add_option("--workers", flags.workers, "worker budget (0 = hardware)");
    sub->add_option("--threshold", flags.threshold, "zero | proportion")
        ->check(CLI::IsMember({"zero", "proportion"}));
    sub->add_option("--resampling", flags.resampling, "none | bword | bwperm | sorted")
        ->check(CLI::IsMember({"none", "bword", "bwperm", "sorted"}));
    sub->add_option("--runs", flags.runs, "number of executions");
  };

  CLI::App* ingest = app.add_subcommand("ingest", "load and preprocess a dataset");
  add_common(ingest);
  ingest->add_option("--dump-tokens", flags.dump_tokens, "write preprocessed tokens (TSV)");
  ingest->add_option("--dump-halves", flags.dump_halves,
                     "write augmented lexicon halves into this directory");

  CLI::App* run = app.add_subcommand("run", "one bagged embedding classification");
  add_common(run);
  run->add_option("--dump-diffs", flags.dump_diffs, "write per-cell diff vectors here");

  CLI::App* baseline = app.add_subcommand("baseline", "one counting-lexicon classification");
  add_common(baseline);

  CLI::App* evaluate = app.add_subcommand("evaluate", "repeated executions with a report");
  add_common(evaluate);
  evaluate->add_option("--method", flags.method, "lex2sent | counting")
      ->check(CLI::IsMember({"lex2sent", "counting"}));

  CLI::App* exp = app.add_subcommand("export", "export predicted labels for self-training");
  add_common(exp);
  exp->add_option("--method", flags.method, "lex2sent | counting")
      ->check(CLI::IsMember({"lex2sent", "counting"}));

  CLI::App* compare = app.add_subcommand("compare", "lex2sent vs counting, both thresholds");
  add_common(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (app.get_subcommands().empty()) {
    std::cout << app.help();
    return kExitOk;
  }

  try {
    if (ingest->parsed()) return cmd_ingest(flags);
    if (run->parsed()) return run_single(flags, Method::lex2sent);
    if (baseline->parsed()) return run_single(flags, Method::counting);
    if (evaluate->parsed()) return cmd_evaluate(flags);
    if (exp->parsed()) return cmd_export(flags);
    if (compare->parsed()) return cmd_compare(flags);
  } catch (const IoError& e) {
    std::fprintf(stderr, "I/O error: %s\n", e.what());
    return kExitIo;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return kExitData;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}
