#include "clustereval/commands.h"

#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "clustereval/agreement.h"
#include "clustereval/analysis.h"
#include "clustereval/channel.h"
#include "clustereval/dataset.h"
#include "clustereval/gp.h"
#include "clustereval/lexicon.h"
#include "clustereval/manifest.h"
#include "clustereval/metrics.h"
#include "clustereval/report.h"

namespace clustereval {

namespace {

using nlohmann::ordered_json;

// Input failures that map to kExitUsage.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::ifstream open_input(const std::string& path, const char* what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(std::string("cannot read ") + what + " " + path);
  return in;
}

template <typename Fn>
auto parse_file(const std::string& path, const char* what, Fn&& parse) {
  auto in = open_input(path, what);
  try {
    return parse(in);
  } catch (const ParseError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << content;
}

void write_json(const std::string& path, const ordered_json& doc) {
  write_file(path, doc.dump(2) + "\n");
}

// Manifest block followed by the command's own fields.
ordered_json with_manifest(const RunManifest& manifest, const ordered_json& body) {
  ordered_json doc;
  doc["manifest"] = manifest.to_json();
  for (const auto& [key, value] : body.items()) doc[key] = value;
  return doc;
}

struct EvaluateArgs {
  std::string dataset;
  std::string predictions;
  std::string similarity = "exact";
  std::string lexicon;
  std::string embeddings;
  bool morphology = false;
  bool no_partitions = false;
  std::vector<int> max_answers{1, 3, 5, 10};
  std::vector<int> max_incorrect{1, 3, 5};
  std::size_t cap = 20;
  unsigned jobs = 1;
  double lengthscale = 0.0;
  double noise = GpOptions{}.noise_variance;
  std::string json;
  std::string table;
  bool no_timestamp = false;
};

ordered_json config_echo(const EvalConfig& config, const EvaluateArgs& args,
                         const Lexicon* lexicon) {
  ordered_json c;
  c["similarity"] = std::string(to_string(config.similarity));
  c["max_answers_k"] = config.max_answers_ks;
  c["max_incorrect_k"] = config.max_incorrect_ks;
  c["answer_list_cap"] = config.answer_list_cap;
  if (lexicon) {
    c["lexicon"] = ordered_json{{"source", args.lexicon},
                                {"format", lexicon->format()},
                                {"version", lexicon->version()},
                                {"morphology", lexicon->morphology()}};
    c["wordnet"] = ordered_json{{"partitions", config.wordnet.partitions},
                                {"partition_cap", config.wordnet.partition_cap},
                                {"rounding_threshold", kRoundingThreshold}};
  }
  if (config.similarity == SimilarityKind::kVector) {
    ordered_json gp;
    gp["kernel"] = "rbf";
    if (config.gp.lengthscale)
      gp["lengthscale"] = *config.gp.lengthscale;
    else
      gp["lengthscale"] = "median_pairwise_distance";
    gp["noise_variance"] = config.gp.noise_variance;
    gp["jitter_ladder"] = {config.gp.min_jitter, config.gp.max_jitter};
    gp["threshold"] = config.gp.threshold;
    c["gp"] = std::move(gp);
  }
  return c;
}

int run_evaluate(const EvaluateArgs& args, std::ostream& out,
                 std::ostream& err) {
  EvalConfig config;
  auto kind = parse_similarity(args.similarity);
  if (!kind) {
    err << "error: unknown --similarity \"" << args.similarity
        << "\" (expected exact, wordnet or vector)\n";
    return kExitUsage;
  }
  config.similarity = *kind;
  config.max_answers_ks = args.max_answers;
  config.max_incorrect_ks = args.max_incorrect;
  config.answer_list_cap = args.cap;
  config.lexicon.morphology = args.morphology;
  config.wordnet.partitions = !args.no_partitions;
  config.gp.noise_variance = args.noise;
  if (args.lengthscale > 0.0) config.gp.lengthscale = args.lengthscale;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  if (args.noise <= 0.0 || args.lengthscale < 0.0) {
    err << "error: GP noise must be positive and lengthscale non-negative\n";
    return kExitUsage;
  }
  if (config.similarity == SimilarityKind::kWordnet && args.lexicon.empty()) {
    err << "error: --similarity wordnet requires --lexicon PATH\n";
    return kExitUsage;
  }
  if (config.similarity == SimilarityKind::kVector && args.embeddings.empty()) {
    err << "error: --similarity vector requires --embeddings PATH\n";
    return kExitUsage;
  }

  RunManifest manifest;
  manifest.command = "evaluate";
  auto dataset = parse_file(args.dataset, "dataset", [](std::istream& in) {
    return parse_dataset(in);
  });
  auto predictions = parse_file(args.predictions, "predictions",
                                [](std::istream& in) {
                                  return parse_predictions(in);
                                });
  manifest.add_input("dataset", args.dataset);
  manifest.add_input("predictions", args.predictions);

  std::optional<Lexicon> lexicon;
  std::optional<EmbeddingStore> store;
  std::unique_ptr<SimilarityChannel> channel;
  switch (config.similarity) {
    case SimilarityKind::kExact:
      channel = make_exact_channel();
      break;
    case SimilarityKind::kWordnet:
      try {
        lexicon = Lexicon::load(args.lexicon, config.lexicon);
      } catch (const std::exception& e) {
        throw InputError(args.lexicon + ": " + e.what());
      }
      manifest.add_input("lexicon", args.lexicon);
      channel = make_wordnet_channel(*lexicon, config.wordnet);
      break;
    case SimilarityKind::kVector:
      store = parse_file(args.embeddings, "embeddings", [](std::istream& in) {
        return EmbeddingStore::parse(in);
      });
      manifest.add_input("embeddings", args.embeddings);
      channel = make_vector_channel(*store, config.gp);
      break;
  }
  manifest.config = config_echo(config, args, lexicon ? &*lexicon : nullptr);
  if (!args.no_timestamp) manifest.timestamp = utc_timestamp();

  const EvalReport report =
      evaluate(dataset, predictions, *channel, config, args.jobs);

  const std::string table = format_table(report);
  out << table;
  if (!args.table.empty()) write_file(args.table, table);
  if (!args.json.empty())
    write_json(args.json, with_manifest(manifest, report_to_json(report)));

  const auto& d = report.diagnostics;
  if (!d.unknown_prediction_ids.empty())
    err << "warning: " << d.unknown_prediction_ids.size()
        << " predicted question id(s) not in the dataset were ignored\n";
  if (d.truncated_lists > 0)
    err << "warning: " << d.truncated_lists << " ranked list(s) truncated to "
        << config.answer_list_cap << " answers\n";
  if (d.missing_embeddings > 0)
    err << "warning: " << d.missing_embeddings
        << " predicted answer(s) had no embedding and were scored as unmatched\n";
  if (report.questions.empty())
    err << "warning: no questions were evaluated\n";
  if (!d.skipped.empty()) {
    err << "warning: " << d.skipped.size() << " question(s) skipped:\n";
    for (const auto& s : d.skipped) err << "  " << s.id << ": " << s.reason << "\n";
    return kExitSkipped;
  }
  return kExitOk;
}

int run_validate(const std::string& path, const std::string& json_path,
                 bool no_timestamp, std::ostream& out, std::ostream& err) {
  auto dataset = parse_file(path, "dataset", [](std::istream& in) {
    return parse_dataset(in);
  });
  RunManifest manifest;
  manifest.command = "validate";
  manifest.config = ordered_json{{"top_clusters", kValidationTopClusters},
                                 {"min_coverage", kValidationMinCoverage},
                                 {"survey_size", kValidationSurveySize}};
  manifest.add_input("dataset", path);
  if (!no_timestamp) manifest.timestamp = utc_timestamp();

  std::size_t failed = 0;
  ordered_json verdicts = ordered_json::array();
  for (const auto& rec : dataset) {
    const auto v = validate_question(rec);
    failed += v.pass ? 0 : 1;
    out << rec.id << "\t" << (v.pass ? "PASS" : "FAIL") << "\ttop8="
        << v.top8_coverage << "/" << v.total_responses;
    for (const auto& r : v.reasons) out << "\t" << r;
    out << "\n";
    verdicts.push_back(ordered_json{{"id", rec.id},
                                    {"pass", v.pass},
                                    {"top8_coverage", v.top8_coverage},
                                    {"total_responses", v.total_responses},
                                    {"reasons", v.reasons}});
  }
  out << (dataset.size() - failed) << " of " << dataset.size()
      << " questions pass\n";
  if (!json_path.empty())
    write_json(json_path,
               with_manifest(manifest, ordered_json{{"questions", verdicts},
                                                    {"failed", failed}}));
  if (failed > 0) {
    err << failed << " question(s) failed validation\n";
    return kExitValidationFailed;
  }
  return kExitOk;
}

int run_blanc(const std::string& gold_path, const std::string& response_path,
              std::ostream& out, std::ostream& err) {
  const auto gold = parse_file(gold_path, "clustering", [](std::istream& in) {
    return parse_clustering(in);
  });
  const auto response =
      parse_file(response_path, "clustering",
                 [](std::istream& in) { return parse_clustering(in); });
  const BlancResult result = blanc(gold, response);
  if (!result.only_in_gold.empty() || !result.only_in_response.empty())
    err << "warning: " << result.only_in_gold.size()
        << " item(s) only in gold and " << result.only_in_response.size()
        << " only in response were excluded\n";
  if (!result.score) {
    err << "error: BLANC is undefined over " << result.common_items
        << " common item(s); at least 2 are needed\n";
    return kExitUsage;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", *result.score * 100.0);
  out << buf << "\n";
  err << "note: extended BLANC (degenerate cases use a single link type), "
      << result.common_items << " common items\n";
  return kExitOk;
}

int run_coverage(const std::string& dataset_path,
                 const std::string& triples_path, const std::string& json_path,
                 bool no_timestamp, std::ostream& out) {
  auto dataset = parse_file(dataset_path, "dataset", [](std::istream& in) {
    return parse_dataset(in);
  });
  auto store = parse_file(triples_path, "triples", [](std::istream& in) {
    return TripleStore::load(in);
  });
  const CoverageReport report = coverage_report(dataset, store);
  ordered_json questions = ordered_json::array();
  for (const auto& q : report.questions) {
    out << q.id << "\t" << q.covered << "/" << q.clusters << "\n";
    questions.push_back(ordered_json{{"id", q.id},
                                     {"clusters", q.clusters},
                                     {"covered", q.covered},
                                     {"covered_clusters", q.covered_cluster_ids},
                                     {"fraction", q.fraction()}});
  }
  out << "overall: " << format_percent(report.overall()) << "% ("
      << report.covered_clusters << "/" << report.total_clusters
      << " clusters)\n";
  if (!json_path.empty()) {
    RunManifest manifest;
    manifest.command = "coverage";
    manifest.add_input("dataset", dataset_path);
    manifest.add_input("triples", triples_path);
    if (!no_timestamp) manifest.timestamp = utc_timestamp();
    write_json(json_path,
               with_manifest(manifest,
                             ordered_json{{"overall", report.overall()},
                                          {"covered_clusters", report.covered_clusters},
                                          {"total_clusters", report.total_clusters},
                                          {"questions", questions}}));
  }
  return kExitOk;
}

int run_transform(const std::string& path, std::ostream& out,
                  std::ostream& err) {
  auto in = open_input(path, "questions");
  std::size_t total = 0;
  std::size_t misses = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto result = transform_question(line);
    ++total;
    if (!result.rule_matched) {
      ++misses;
      err << "no rule: " << line << "\n";
    }
    out << result.prompt << "\n";
  }
  err << misses << " of " << total << " question(s) matched no rule\n";
  return kExitOk;
}

int run_rank(const std::string& path, std::size_t cap, std::ostream& out) {
  auto in = open_input(path, "samples");
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
      const auto id = obj.at("id").get<std::string>();
      const auto samples = obj.at("samples").get<std::vector<std::string>>();
      out << serialize_prediction(id, rank_sampled_answers(samples, cap))
          << "\n";
    } catch (const nlohmann::json::exception& e) {
      throw InputError(path + ": line " + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Scores ranked answer lists against weighted answer clusters.",
               "clustereval"};
  app.set_version_flag("--version", CLUSTEREVAL_VERSION);
  app.require_subcommand(1);

  EvaluateArgs ev;
  auto* evaluate_cmd = app.add_subcommand(
      "evaluate", "Score predictions with Max Answers@k and Max Incorrect@k");
  evaluate_cmd->add_option("dataset", ev.dataset, "Dataset JSONL")->required();
  evaluate_cmd->add_option("predictions", ev.predictions, "Predictions JSONL")
      ->required();
  evaluate_cmd
      ->add_option("--similarity", ev.similarity,
                   "Matching channel: exact, wordnet or vector")
      ->capture_default_str();
  evaluate_cmd->add_option("--lexicon", ev.lexicon,
                           "WordNet dict directory or simplified lexicon file");
  evaluate_cmd->add_flag("--morphology", ev.morphology,
                         "Retry unknown words with suffix detachment");
  evaluate_cmd->add_flag("--no-partitions", ev.no_partitions,
                         "Compare single-token spans only");
  evaluate_cmd->add_option("--embeddings", ev.embeddings, "Embedding file");
  evaluate_cmd->add_option("--max-answers", ev.max_answers, "k values")
      ->delimiter(',')
      ->capture_default_str();
  evaluate_cmd->add_option("--max-incorrect", ev.max_incorrect, "k values")
      ->delimiter(',')
      ->capture_default_str();
  evaluate_cmd->add_option("--cap", ev.cap, "Maximum ranked list length")
      ->capture_default_str();
  evaluate_cmd->add_option("--jobs", ev.jobs, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  evaluate_cmd->add_option("--gp-lengthscale", ev.lengthscale,
                           "RBF lengthscale (0: median pairwise distance)");
  evaluate_cmd->add_option("--gp-noise", ev.noise, "GP noise variance")
      ->capture_default_str();
  evaluate_cmd->add_option("--json", ev.json, "Write the JSON report here");
  evaluate_cmd->add_option("--table", ev.table, "Write the text table here");
  evaluate_cmd->add_flag("--no-timestamp", ev.no_timestamp,
                         "Omit the timestamp from the manifest");

  std::string validate_dataset, validate_json;
  bool validate_no_timestamp = false;
  auto* validate_cmd = app.add_subcommand(
      "validate", "Check crowdsourced questions for top-8 cluster coverage");
  validate_cmd->add_option("dataset", validate_dataset, "Dataset JSONL")
      ->required();
  validate_cmd->add_option("--json", validate_json, "Write verdicts as JSON");
  validate_cmd->add_flag("--no-timestamp", validate_no_timestamp,
                         "Omit the timestamp from the manifest");

  std::string gold_path, response_path;
  auto* blanc_cmd =
      app.add_subcommand("blanc", "BLANC agreement of two clusterings");
  blanc_cmd->add_option("gold", gold_path, "Gold clustering JSON")->required();
  blanc_cmd->add_option("response", response_path, "Response clustering JSON")
      ->required();

  std::string coverage_dataset, triples_path, coverage_json;
  bool coverage_no_timestamp = false;
  auto* coverage_cmd = app.add_subcommand(
      "coverage", "Fraction of answer clusters linked to the question by a "
                  "knowledge-base triple");
  coverage_cmd->add_option("dataset", coverage_dataset, "Dataset JSONL")
      ->required();
  coverage_cmd->add_option("triples", triples_path, "Triples TSV")->required();
  coverage_cmd->add_option("--json", coverage_json, "Write the report as JSON");
  coverage_cmd->add_flag("--no-timestamp", coverage_no_timestamp,
                         "Omit the timestamp from the manifest");

  std::string questions_path;
  auto* transform_cmd = app.add_subcommand(
      "transform", "Rewrite questions as sentence prefixes for completion");
  transform_cmd->add_option("questions", questions_path,
                            "Text file, one question per line")
      ->required();

  std::string samples_path;
  std::size_t rank_cap = 20;
  auto* rank_cmd = app.add_subcommand(
      "rank", "Turn sampled answers into ranked prediction lines");
  rank_cmd->add_option("samples", samples_path,
                       "JSONL with {\"id\", \"samples\": [...]} per line")
      ->required();
  rank_cmd->add_option("--cap", rank_cap, "Answers kept per question")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (evaluate_cmd->parsed()) return run_evaluate(ev, out, err);
    if (validate_cmd->parsed())
      return run_validate(validate_dataset, validate_json,
                          validate_no_timestamp, out, err);
    if (blanc_cmd->parsed()) return run_blanc(gold_path, response_path, out, err);
    if (coverage_cmd->parsed())
      return run_coverage(coverage_dataset, triples_path, coverage_json,
                          coverage_no_timestamp, out);
    if (transform_cmd->parsed()) return run_transform(questions_path, out, err);
    if (rank_cmd->parsed()) return run_rank(samples_path, rank_cap, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace clustereval
