#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "depsent/fallback.hpp"
#include "depsent/harness.hpp"
#include "depsent/ingest.hpp"
#include "depsent/lexicon.hpp"
#include "depsent/rules.hpp"

namespace depsent::cli {

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rule rule_from_key(const std::string& key) {
  const auto r = parse_rule_key(key);
  if (!r) throw UsageError("unknown rule '" + key + "'");
  return *r;
}

struct Globals {
  std::uint64_t seed = 13;
  std::string config;
  std::string lexicon;
  std::string normalization;
  bool quiet = false;
  bool serial = false;
  std::vector<std::string> disable;
  std::string only;
};

struct Inputs {
  std::string trees;
  std::string corpus;
  std::string model;
  std::string embeddings;
  std::string split = "all";
};

class Session {
 public:
  Session(const Globals& g, std::ostream& err) : g_(g), err_(err) {
    if (!g.normalization.empty()) normalizer_ = Normalizer::from_file(g.normalization);
  }

  kernels::Policy policy() const { return g_.serial ? kernels::Policy::Serial : kernels::Policy::Parallel; }

  void note(const std::string& msg) const {
    if (!g_.quiet) err_ << msg << '\n';
  }

  RuleConfig config() const {
    auto cfg = g_.config.empty() ? RuleConfig::defaults() : load_rule_config(std::filesystem::path(g_.config));
    if (!g_.only.empty()) cfg.mask = cfg.mask & RuleMask::only(rule_from_key(g_.only));
    for (const auto& key : g_.disable) cfg.mask = cfg.mask.with(rule_from_key(key), false);
    return cfg;
  }

  Lexicon lexicon() const {
    if (g_.lexicon.empty()) throw UsageError("--lexicon is required for this command");
    auto load = load_lexicon(std::filesystem::path(g_.lexicon));
    if (load.duplicates) note("lexicon: " + std::to_string(load.duplicates) + " duplicate entries, last one kept");
    if (load.scale != 1.0) note("lexicon: strengths rescaled by 1/" + std::to_string(load.scale));
    return std::move(load.lexicon);
  }

  std::vector<DepSentence> trees(const std::string& path) const {
    TreeReaderOptions opt;
    opt.format = detect_tree_format(path);
    opt.normalizer = normalizer_ ? &*normalizer_ : nullptr;
    return parse_conll(std::filesystem::path(path), opt);
  }

  std::vector<LabeledSentence> labeled(const Inputs& in) const {
    if (in.corpus.empty() || in.trees.empty()) throw UsageError("--corpus and --trees are required");
    auto data = pair_corpus(load_corpus(std::filesystem::path(in.corpus)), trees(in.trees));
    if (in.split == "all") return data;
    std::vector<Polarity> labels;
    for (const auto& d : data) labels.push_back(d.label);
    const auto split = split_dataset(labels, g_.seed);
    const auto& idx = in.split == "train" ? split.train : in.split == "validation" ? split.validation : split.test;
    return select<LabeledSentence>(data, idx);
  }

  EmbeddingTable embeddings(const std::string& path) const {
    auto load = load_embeddings(std::filesystem::path(path), normalizer_ ? &*normalizer_ : nullptr);
    for (const auto& w : load.warnings) note("embeddings: " + w);
    return std::move(load.table);
  }

  std::uint64_t seed() const { return g_.seed; }

 private:
  const Globals& g_;
  std::ostream& err_;
  std::optional<Normalizer> normalizer_;
};

struct Fallback {
  std::optional<FallbackModel> model;
  std::optional<EmbeddingTable> table;

  FallbackClassifier classifier() const {
    return model ? FallbackClassifier{&*model, &*table} : FallbackClassifier{};
  }
};

Fallback load_fallback(const Session& s, const Inputs& in, bool required) {
  Fallback f;
  if (in.model.empty() != in.embeddings.empty()) throw UsageError("--model and --embeddings go together");
  if (in.model.empty()) {
    if (required) throw UsageError("--model and --embeddings are required");
    return f;
  }
  f.model = load_model(std::filesystem::path(in.model));
  f.table = s.embeddings(in.embeddings);
  return f;
}

void cmd_classify(const Session& s, const Inputs& in, bool with_trace, std::ostream& out) {
  const auto cfg = s.config();
  const auto lex = s.lexicon();
  const auto fb = load_fallback(s, in, false);
  const auto sentences = s.trees(in.trees);
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const auto r = hybrid_classify(sentences[i], lex, cfg, fb.classifier());
    out << (i + 1) << '\t' << to_string(r.polarity) << '\t' << to_string(r.provenance) << '\n';
    if (with_trace) {
      const auto rendered = render_trace(assign_strengths(sentences[i], lex), r.rules);
      std::size_t start = 0;
      while (start < rendered.size()) {
        auto nl = rendered.find('\n', start);
        if (nl == std::string::npos) nl = rendered.size();
        out << "  " << rendered.substr(start, nl - start) << '\n';
        start = nl + 1;
      }
    }
  }
}

struct TrainFlags {
  std::string history;
  std::size_t epochs = 200;
  std::size_t batch_size = 32;
  double lr = 1e-3;
  std::size_t patience = 10;
  std::size_t max_len = 50;
  std::size_t hidden = 128;
};

Dataset to_dataset(std::span<const LabeledSentence> items, const EmbeddingTable& table, std::size_t n) {
  Dataset d(n * table.dim());
  for (const auto& item : items) d.add(vectorize(item.sentence, table, n), class_index(item.label));
  return d;
}

void cmd_train(const Session& s, Inputs in, const TrainFlags& f, std::ostream& out) {
  if (in.embeddings.empty() || in.model.empty()) throw UsageError("--embeddings and --model are required");
  in.split = "all";
  const auto data = s.labeled(in);
  std::vector<Polarity> labels;
  for (const auto& d : data) labels.push_back(d.label);
  const auto split = split_dataset(labels, s.seed());
  const auto table = s.embeddings(in.embeddings);

  const auto train_set = to_dataset(select<LabeledSentence>(data, split.train), table, f.max_len);
  const auto val_set = to_dataset(select<LabeledSentence>(data, split.validation), table, f.max_len);
  const auto test_set = to_dataset(select<LabeledSentence>(data, split.test), table, f.max_len);

  auto model = FallbackModel::initialize({f.max_len, table.dim(), f.hidden}, s.seed());
  TrainOptions opt;
  opt.epochs = f.epochs;
  opt.batch_size = f.batch_size;
  opt.seed = s.seed();
  opt.adam.lr = f.lr;
  opt.validation = &val_set;
  opt.patience = f.patience;
  opt.policy = s.policy();
  const auto history = train(model, train_set, opt);
  save_model(model, std::filesystem::path(in.model));

  if (!f.history.empty()) {
    std::ofstream csv(f.history);
    if (!csv) throw Error("cannot write " + f.history);
    csv << "epoch,loss,val_loss\n";
    char buf[96];
    for (std::size_t e = 0; e < history.loss.size(); ++e) {
      if (e < history.val_loss.size()) {
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.6f\n", e + 1, history.loss[e], history.val_loss[e]);
      } else {
        std::snprintf(buf, sizeof buf, "%zu,%.6f,\n", e + 1, history.loss[e]);
      }
      csv << buf;
    }
  }

  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    correct += class_index(predict(model, test_set.row(i))) == test_set.labels[i];
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "trained %zu epochs (best %zu%s), test accuracy %.4f on %zu items", history.loss.size(),
                history.best_epoch, history.stopped_early ? ", stopped early" : "",
                test_set.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(test_set.size()),
                test_set.size());
  s.note(buf);
  out << in.model << '\n';
}

void cmd_eval(const Session& s, const Inputs& in, const std::string& mode, bool macro, std::ostream& out) {
  const auto cfg = s.config();
  const auto lex = s.lexicon();
  const auto data = s.labeled(in);
  if (mode == "rules") {
    const auto r = evaluate_rules_only(data, lex, cfg, s.policy());
    out << report_tsv(r, EvalMode::Rules, macro);
    s.note(report_table(r, EvalMode::Rules, macro));
    return;
  }
  const auto fb = load_fallback(s, in, true);
  const auto r = evaluate_hybrid(data, lex, cfg, fb.classifier(), s.policy());
  out << report_tsv(r, EvalMode::Hybrid, macro);
  s.note(report_table(r, EvalMode::Hybrid, macro));
}

void cmd_ablate(const Session& s, const Inputs& in, std::ostream& out) {
  const auto cfg = s.config();
  const auto lex = s.lexicon();
  const auto rows = ablate(s.labeled(in), lex, cfg, s.policy());
  out << ablation_tsv(rows);
  s.note(ablation_table(rows));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dependency-rule sentiment classifier with a neural fallback", "depsent"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Seed for splits, initialisation and shuffling")->capture_default_str();
  app.add_option("--config", g.config, "Rule configuration file")->check(CLI::ExistingFile);
  app.add_option("--lexicon", g.lexicon, "Sentiment lexicon TSV (word, strength)")->check(CLI::ExistingFile);
  app.add_option("--normalization", g.normalization, "Extra normalization mapping TSV")->check(CLI::ExistingFile);
  app.add_flag("--quiet", g.quiet, "Suppress notes and human-readable tables on stderr");
  app.add_flag("--serial", g.serial, "Use the serial reference kernels");
  app.add_option("--disable", g.disable, "Rule keys to disable, e.g. demonstrative")->delimiter(',');
  app.add_option("--only", g.only, "Enable this rule key alone");

  Inputs in;
  auto add_fallback = [&](CLI::App* c) {
    c->add_option("--model", in.model, "Fallback model file");
    c->add_option("--embeddings", in.embeddings, "Embeddings in fastText text format")->check(CLI::ExistingFile);
  };
  auto add_corpus = [&](CLI::App* c) {
    c->add_option("--corpus", in.corpus, "Labeled corpus TSV (pos|neg, text)")->required()->check(CLI::ExistingFile);
    c->add_option("--trees", in.trees, "Dependency trees, one block per corpus record")
        ->required()
        ->check(CLI::ExistingFile);
    c->add_option("--split", in.split, "Evaluate on all items or on one partition of the seeded split")
        ->check(CLI::IsMember({"all", "train", "validation", "test"}))
        ->capture_default_str();
  };

  auto* classify = app.add_subcommand("classify", "Print polarity and provenance per sentence");
  classify->add_option("trees", in.trees, "CoNLL tree file")->required()->check(CLI::ExistingFile);
  add_fallback(classify);

  auto* trace = app.add_subcommand("trace", "Like classify, with the fired rules");
  trace->add_option("trees", in.trees, "CoNLL tree file")->required()->check(CLI::ExistingFile);
  add_fallback(trace);

  TrainFlags tf;
  auto* train_cmd = app.add_subcommand("train-fallback", "Train the fallback network");
  train_cmd->add_option("--corpus", in.corpus, "Labeled corpus TSV")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--trees", in.trees, "Dependency trees")->required()->check(CLI::ExistingFile);
  train_cmd->add_option("--embeddings", in.embeddings, "Embeddings in fastText text format")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--model", in.model, "Output model file")->required();
  train_cmd->add_option("--history", tf.history, "Loss history CSV (epoch,loss,val_loss)");
  train_cmd->add_option("--epochs", tf.epochs)->capture_default_str();
  train_cmd->add_option("--batch-size", tf.batch_size)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", tf.lr)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--patience", tf.patience, "Early-stopping patience in epochs, 0 = off")
      ->capture_default_str();
  train_cmd->add_option("--max-len", tf.max_len)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--hidden", tf.hidden)->capture_default_str()->check(CLI::PositiveNumber);

  std::string mode = "rules";
  bool macro = false;
  auto* eval = app.add_subcommand("eval", "Score the rules or the hybrid pipeline");
  eval->add_option("--mode", mode)->check(CLI::IsMember({"rules", "hybrid"}))->capture_default_str();
  eval->add_flag("--macro", macro, "Add macro-averaged precision, recall and F-measure");
  add_corpus(eval);
  add_fallback(eval);

  auto* ablate_cmd = app.add_subcommand("ablate", "Evaluate each rule in isolation");
  add_corpus(ablate_cmd);

  std::vector<std::string> argv_store{"depsent"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kUsage;
  }

  try {
    Session s(g, err);
    if (classify->parsed()) cmd_classify(s, in, false, out);
    if (trace->parsed()) cmd_classify(s, in, true, out);
    if (train_cmd->parsed()) cmd_train(s, in, tf, out);
    if (eval->parsed()) cmd_eval(s, in, mode, macro, out);
    if (ablate_cmd->parsed()) cmd_ablate(s, in, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return 0;
}

}  // namespace depsent::cli
