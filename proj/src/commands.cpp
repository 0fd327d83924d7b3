#include "kgqa/commands.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kgqa/calibration.hpp"
#include "kgqa/config.hpp"
#include "kgqa/errors.hpp"
#include "kgqa/graph_json.hpp"
#include "kgqa/json_util.hpp"
#include "kgqa/metrics.hpp"
#include "kgqa/overlap.hpp"
#include "kgqa/pipeline.hpp"
#include "kgqa/scoring.hpp"

namespace kgqa {
namespace {

// Accepts either a JSON object (top-level keys are options, nested objects
// are subcommand sections) or CLI11's TOML/INI format.
class JsonOrTomlConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::string text((std::istreambuf_iterator<char>(input)), std::istreambuf_iterator<char>());
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
      std::istringstream in(text);
      return CLI::ConfigTOML::from_config(in);
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw CLI::ConversionError("config", std::string("invalid JSON config: ") + e.what());
    }
    std::ostringstream toml;
    auto emit = [&](const nlohmann::json& obj) {
      for (const auto& [key, value] : obj.items()) {
        if (!value.is_object()) toml << key << " = " << value.dump() << "\n";
      }
    };
    emit(j);
    for (const auto& [key, value] : j.items()) {
      if (!value.is_object()) continue;
      toml << "[" << key << "]\n";
      emit(value);
    }
    std::istringstream in(toml.str());
    return CLI::ConfigTOML::from_config(in);
  }
};

bool parse_switch(const std::string& name, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  throw ConfigError("--" + name + " expects on or off, got '" + value + "'");
}

std::vector<double> parse_betas(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--beta expects comma-separated numbers, got '" + text + "'");
    }
  }
  if (out.empty()) throw ConfigError("--beta expects at least one value");
  return out;
}

// Raw option values as they arrive from flags or a config file.
struct RawOptions {
  std::string backend;
  std::string task = "socialiqa";
  int levels = 2;
  std::string decode = "greedy";
  int max_length = 16;
  std::uint64_t seed = 0;
  std::optional<double> gamma_g;
  double gamma_ga = 1.0;
  std::string beta = "1";
  std::string aggregator = "ve";
  std::string pmi = "on";
  std::string prune = "on";
  std::string anonymize = "on";
  std::string marginal_context{kDefaultMarginalContext};
  std::string end_token = "<eos>";
  std::string thresholds = "cdf-label";
  unsigned jobs = 1;

  RunConfig resolve() const {
    RunConfig c;
    c.backend = backend;
    auto t = parse_task(task);
    if (!t) throw ConfigError("--task expects socialiqa or storycs, got '" + task + "'");
    c.task = *t;
    c.levels = levels;
    c.decode = decode;
    c.max_length = max_length;
    c.seed = seed;
    c.gamma_g = gamma_g;
    c.gamma_ga = gamma_ga;
    c.betas = parse_betas(beta);
    if (aggregator == "ve") {
      c.aggregator = Aggregator::VariableElimination;
    } else if (aggregator == "max") {
      c.aggregator = Aggregator::Extremum;
    } else {
      throw ConfigError("--aggregator expects ve or max, got '" + aggregator + "'");
    }
    c.pmi = parse_switch("pmi", pmi);
    c.prune = parse_switch("prune", prune);
    c.anonymize = parse_switch("anonymize", anonymize);
    c.marginal_context = marginal_context;
    c.remote_end_token = end_token;
    try {
      c.thresholds = parse_threshold_strategy(thresholds);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    c.jobs = jobs;
    c.validate();
    return c;
  }
};

struct CommandInputs {
  std::string context;
  std::string question;
  std::vector<std::string> answers;
  std::string character;
  std::string data;
  std::string labels;
  std::string blocklist;
  std::string priors;
  std::string kb;
  std::string out;
  std::string report;
  std::string dump_graph;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
  if (!f) throw DataError("failed writing " + path);
}

// Writes to `path`, or to `out` when the path is empty.
void emit(std::ostream& out, const std::string& path, const std::string& text) {
  if (path.empty()) {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::string json_line(const nlohmann::ordered_json& j) { return j.dump() + "\n"; }

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["task"] = std::string(to_string(c.task));
  j["levels"] = c.levels;
  j["decode"] = to_string(c.strategy());
  j["seed"] = c.seed;
  const auto agg = c.aggregation();
  j["gamma_g"] = agg.gamma_g;
  j["gamma_ga"] = agg.gamma_ga;
  j["betas"] = agg.betas_for(c.levels);
  j["aggregator"] = c.aggregator == Aggregator::VariableElimination ? "ve" : "max";
  j["pmi"] = c.pmi;
  j["prune"] = c.prune;
  j["anonymize"] = c.anonymize;
  return j;
}

SpamBlocklist blocklist_for(const CommandInputs& in) {
  return in.blocklist.empty() ? SpamBlocklist{} : load_blocklist(in.blocklist);
}

std::map<std::string, double> load_priors(const std::string& path) {
  auto priors = load_thresholds(path);  // same {label: number} shape
  return priors;
}

// Per-label positive rates of a labelled story set.
std::map<std::string, double> gold_priors(const std::vector<StoryPrediction>& preds) {
  std::map<std::string, double> out;
  for (std::size_t j = 0; j < kEmotionLabels.size(); ++j) {
    std::size_t pos = 0;
    for (const auto& p : preds) pos += p.gold->contains(std::string(kEmotionLabels[j]));
    out[std::string(kEmotionLabels[j])] = static_cast<double>(pos) / static_cast<double>(preds.size());
  }
  return out;
}

std::vector<StoryPrediction> score_stories(const KnowledgeModel& model, const RunConfig& config,
                                           const std::vector<StoryExample>& stories) {
  return parallel_map(stories.size(), config.jobs,
                      [&](std::size_t i) { return score_story(model, config, stories[i]); });
}

void require_story_gold(const std::vector<StoryExample>& stories) {
  if (stories.empty()) throw DataError("dataset is empty");
  for (const auto& s : stories) {
    if (!s.gold_labels) throw DataError("unlabeled input: story " + s.id + " has no gold labels");
  }
}

std::map<std::string, double> story_thresholds(const RunConfig& config,
                                               const std::vector<StoryPrediction>& preds,
                                               const std::string& priors_path) {
  std::map<std::string, std::vector<double>> scores;
  std::map<std::string, std::vector<bool>> gold;
  for (std::size_t j = 0; j < kEmotionLabels.size(); ++j) {
    const std::string label(kEmotionLabels[j]);
    for (const auto& p : preds) {
      scores[label].push_back(p.scores[j]);
      if (p.gold) gold[label].push_back(p.gold->contains(label));
    }
  }
  std::map<std::string, double> priors;
  if (config.thresholds.kind == ThresholdKind::CDFLabel) {
    priors = priors_path.empty() ? gold_priors(preds) : load_priors(priors_path);
  }
  try {
    return calibrate_thresholds(scores, config.thresholds, priors, gold);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("threshold calibration: ") + e.what());
  }
}

std::string format_prf(const std::string& name, const Prf& p) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << std::left << std::setw(14) << name << " P " << p.precision
    << "  R " << p.recall << "  F1 " << p.f1 << "\n";
  return s.str();
}

// answer ------------------------------------------------------------------

int cmd_answer(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  if (in.context.empty()) throw ConfigError("answer: --context is required");
  auto model = make_model(config.backend, config.remote_end_token);
  if (config.task == Task::SocialIQA) {
    if (in.question.empty() || in.answers.size() != 3) {
      throw ConfigError("answer: socialiqa needs --question and exactly three --answer values");
    }
    SocialIQAExample ex{"cli", in.context, in.question, {in.answers[0], in.answers[1], in.answers[2]}, {}};
    auto p = predict_qa(*model, config, ex);
    if (!in.dump_graph.empty()) write_text(in.dump_graph, dump_graph(p.graph));
    emit(out, in.out, json_line(to_json(p)));
    return 0;
  }
  auto p = score_story_text(*model, config, "cli", in.context, in.character);
  std::optional<std::array<bool, 8>> decisions;
  std::map<std::string, double> kappas;
  if (config.thresholds.kind == ThresholdKind::Fixed) {
    kappas = load_thresholds(config.thresholds.fixed_path);
    try {
      decisions = decide_story(p.scores, kappas);
    } catch (const std::invalid_argument& e) {
      throw DataError(config.thresholds.fixed_path.string() + ": " + e.what());
    }
  }
  if (!in.dump_graph.empty()) write_text(in.dump_graph, dump_graph(p.graph));
  emit(out, in.out, json_line(to_json(p, decisions, kappas)));
  return 0;
}

// graph -------------------------------------------------------------------

int cmd_graph(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  if (in.context.empty()) throw ConfigError("graph: --context is required");
  auto model = make_model(config.backend, config.remote_end_token);
  ReasoningGraph graph;
  if (config.task == Task::StoryCommonsense) {
    graph = score_story_text(*model, config, "cli", in.context, in.character).graph;
  } else if (!in.question.empty() && !in.answers.empty()) {
    if (in.answers.size() != 3) throw ConfigError("graph: socialiqa needs exactly three --answer values");
    SocialIQAExample ex{"cli", in.context, in.question, {in.answers[0], in.answers[1], in.answers[2]}, {}};
    graph = predict_qa(*model, config, ex).graph;
  } else {
    const auto context = config.anonymize ? anonymize(in.context) : in.context;
    graph = build_graph(*model, context, graph_options(config));
  }
  emit(out, in.out.empty() ? in.dump_graph : in.out, dump_graph(graph));
  return 0;
}

// eval --------------------------------------------------------------------

int eval_socialiqa(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  auto load = load_socialiqa(in.data, blocklist_for(in));
  if (!in.labels.empty()) attach_socialiqa_labels(load.examples, in.labels);
  if (load.examples.empty()) throw DataError(in.data + ": no examples");
  for (const auto& ex : load.examples) {
    if (!ex.gold_index) throw DataError("unlabeled input: example " + ex.id + " has no label");
  }
  auto model = make_model(config.backend, config.remote_end_token);
  auto preds = parallel_map(load.examples.size(), config.jobs, [&](std::size_t i) {
    return predict_qa(*model, config, load.examples[i]);
  });
  std::vector<int> predicted, gold;
  std::string lines;
  for (const auto& p : preds) {
    predicted.push_back(p.chosen);
    gold.push_back(*p.gold);
    lines += json_line(to_json(p));
  }
  if (!in.out.empty()) write_text(in.out, lines);
  const double acc = accuracy(predicted, gold);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) correct += predicted[i] == gold[i];

  nlohmann::ordered_json report;
  report["task"] = "socialiqa";
  report["config"] = config_json(config);
  report["examples"] = preds.size();
  report["dropped_spam"] = load.dropped_spam;
  report["correct"] = correct;
  report["accuracy"] = acc;
  if (!in.report.empty()) write_text(in.report, report.dump(2) + "\n");

  std::ostringstream s;
  s << "examples      " << preds.size() << " (" << load.dropped_spam << " dropped as spam)\n";
  s << "correct       " << correct << "\n";
  s << "accuracy      " << std::fixed << std::setprecision(4) << acc << "\n";
  out << s.str();
  return 0;
}

int eval_storycs(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  auto stories = load_storycs(in.data);
  require_story_gold(stories);
  auto model = make_model(config.backend, config.remote_end_token);
  auto preds = score_stories(*model, config, stories);
  const auto kappas = story_thresholds(config, preds, in.priors);

  std::vector<std::vector<bool>> predicted, gold;
  std::string lines;
  for (const auto& p : preds) {
    auto d = decide_story(p.scores, kappas);
    predicted.emplace_back(d.begin(), d.end());
    auto g = gold_vector(*p.gold);
    gold.emplace_back(g.begin(), g.end());
    lines += json_line(to_json(p, d, kappas));
  }
  if (!in.out.empty()) write_text(in.out, lines);
  auto metrics = multilabel_metrics(predicted, gold, {kEmotionLabels.begin(), kEmotionLabels.end()});

  nlohmann::ordered_json report;
  report["task"] = "storycs";
  report["config"] = config_json(config);
  report["thresholds"] = to_string(config.thresholds);
  report["examples"] = preds.size();
  auto& k = report["kappas"] = nlohmann::ordered_json::object();
  for (auto label : kEmotionLabels) k[std::string(label)] = encode_real(kappas.at(std::string(label)));
  const auto metrics_json = to_json(metrics);
  for (const auto& [key, value] : metrics_json.items()) report[key] = value;
  if (!in.report.empty()) write_text(in.report, report.dump(2) + "\n");

  out << "examples      " << preds.size() << "\n";
  out << format_prf("micro", metrics.micro);
  out << format_prf("macro", metrics.macro);
  for (std::size_t j = 0; j < metrics.labels.size(); ++j) {
    out << format_prf(metrics.labels[j], metrics.per_label[j]);
  }
  return 0;
}

int cmd_eval(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  if (in.data.empty()) throw ConfigError("eval: --data is required");
  return config.task == Task::SocialIQA ? eval_socialiqa(config, in, out) : eval_storycs(config, in, out);
}

// calibrate ---------------------------------------------------------------

int cmd_calibrate(const RunConfig& config, const CommandInputs& in, std::ostream& out) {
  if (config.task != Task::StoryCommonsense) throw ConfigError("calibrate: thresholds apply to --task storycs");
  if (in.data.empty()) throw ConfigError("calibrate: --data is required");
  if (config.thresholds.kind == ThresholdKind::Fixed) {
    throw ConfigError("calibrate: choose cdf-label, cdf-50 or fewshot:N");
  }
  auto stories = load_storycs(in.data);
  if (stories.empty()) throw DataError(in.data + ": no examples");
  const bool needs_gold = config.thresholds.kind == ThresholdKind::FewShot ||
                          (config.thresholds.kind == ThresholdKind::CDFLabel && in.priors.empty());
  if (needs_gold) require_story_gold(stories);
  auto model = make_model(config.backend, config.remote_end_token);
  auto preds = score_stories(*model, config, stories);
  const auto kappas = story_thresholds(config, preds, in.priors);
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto label : kEmotionLabels) j[std::string(label)] = encode_real(kappas.at(std::string(label)));
  emit(out, in.out, j.dump(2) + "\n");
  return 0;
}

// overlap -----------------------------------------------------------------

int cmd_overlap(const CommandInputs& in, std::ostream& out) {
  if (in.data.empty() || in.kb.empty()) throw ConfigError("overlap: --data and --kb are required");
  auto load = load_socialiqa(in.data, blocklist_for(in));
  auto kb = index_triples(load_knowledge_triples(in.kb));
  std::vector<std::string> contexts;
  std::vector<std::vector<std::string>> answers;
  for (const auto& ex : load.examples) {
    contexts.push_back(ex.context);
    answers.push_back({ex.answers.begin(), ex.answers.end()});
  }
  auto r = detect_overlap(contexts, kb.events, kb.tails, answers);
  nlohmann::ordered_json j;
  j["examples"] = r.examples;
  j["kb_events"] = kb.events.size();
  j["context_matches"] = r.context_matches;
  j["flagged"] = r.flagged;
  j["rate"] = r.rate();
  auto& flagged = j["flagged_examples"] = nlohmann::ordered_json::array();
  for (auto i : r.flagged_indices) {
    flagged.push_back({{"id", load.examples[i].id}, {"events", r.matched_events[i]}});
  }
  emit(out, in.out, j.dump(2) + "\n");
  return 0;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return 1;
    case ErrorKind::Data: return 2;
    case ErrorKind::Backend: return 3;
  }
  return 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-shot commonsense question answering over generated knowledge graphs", "kgqa"};
  app.config_formatter(std::make_shared<JsonOrTomlConfig>());
  app.set_config("--config", "", "TOML or JSON file with option values; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  RawOptions raw;
  CommandInputs in;
  app.add_option("--backend", raw.backend, "table:PATH or remote:URL");
  app.add_option("--task", raw.task, "socialiqa or storycs")->capture_default_str();
  app.add_option("--levels", raw.levels, "Inference levels L")->capture_default_str();
  app.add_option("--decode", raw.decode, "greedy, beam:B or topk:K")->capture_default_str();
  app.add_option("--max-length", raw.max_length, "Maximum generated tokens")->capture_default_str();
  app.add_option("--seed", raw.seed, "Seed for top-k sampling")->capture_default_str();
  app.add_option("--gamma-g", raw.gamma_g, "Path score weight (default 1, 0 for storycs)");
  app.add_option("--gamma-ga", raw.gamma_ga, "Answer factor weight")->capture_default_str();
  app.add_option("--beta", raw.beta, "Level weights F[,F,...]")->capture_default_str();
  app.add_option("--aggregator", raw.aggregator, "ve or max")->capture_default_str();
  app.add_option("--pmi", raw.pmi, "on or off")->capture_default_str();
  app.add_option("--prune", raw.prune, "on or off")->capture_default_str();
  app.add_option("--anonymize", raw.anonymize, "on or off")->capture_default_str();
  app.add_option("--marginal-context", raw.marginal_context, "Context of the answer prior")
      ->capture_default_str();
  app.add_option("--end-token", raw.end_token, "End token of a remote backend")->capture_default_str();
  app.add_option("--thresholds", raw.thresholds, "cdf-label, cdf-50, fewshot:N or fixed:PATH")
      ->capture_default_str();
  app.add_option("--jobs", raw.jobs, "Worker threads")->capture_default_str();

  auto* answer = app.add_subcommand("answer", "Answer one example");
  auto* graph = app.add_subcommand("graph", "Build and print the reasoning graph for a context");
  auto* eval = app.add_subcommand("eval", "Evaluate a labelled dataset");
  auto* calibrate = app.add_subcommand("calibrate", "Compute per-label thresholds");
  auto* overlap = app.add_subcommand("overlap", "Report context overlap with a knowledge base");

  for (auto* sub : {answer, graph}) {
    sub->add_option("--context", in.context, "Context or story text");
    sub->add_option("--question", in.question, "Question (socialiqa)");
    sub->add_option("--answer", in.answers, "Candidate answer; repeat three times (socialiqa)");
    sub->add_option("--character", in.character, "Annotated character (storycs)");
    sub->add_option("--dump-graph", in.dump_graph, "Write the reasoning graph JSON here");
    sub->add_option("--out", in.out, "Write the output here instead of stdout");
  }
  for (auto* sub : {eval, calibrate, overlap}) {
    sub->add_option("--data", in.data, "Dataset file")->check(CLI::ExistingFile);
    sub->add_option("--out", in.out, "Output file");
  }
  for (auto* sub : {eval, overlap}) {
    sub->add_option("--blocklist", in.blocklist, "Spam blocklist (socialiqa)")->check(CLI::ExistingFile);
  }
  eval->add_option("--labels", in.labels, "Separate label file (socialiqa)")->check(CLI::ExistingFile);
  eval->add_option("--report", in.report, "Write the metrics report JSON here");
  for (auto* sub : {eval, calibrate}) {
    sub->add_option("--priors", in.priors, "JSON {label: positive rate} for cdf-label")
        ->check(CLI::ExistingFile);
  }
  overlap->add_option("--kb", in.kb, "Knowledge base TSV: head, relation, tail")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (overlap->parsed()) return cmd_overlap(in, out);
    const auto config = raw.resolve();
    if (answer->parsed()) return cmd_answer(config, in, out);
    if (graph->parsed()) return cmd_graph(config, in, out);
    if (eval->parsed()) return cmd_eval(config, in, out);
    if (calibrate->parsed()) return cmd_calibrate(config, in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace kgqa
