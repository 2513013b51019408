#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "hiervec/config.hpp"
#include "hiervec/datasets.hpp"
#include "hiervec/embedding.hpp"
#include "hiervec/error.hpp"
#include "hiervec/evaluation.hpp"
#include "hiervec/hierarchical.hpp"
#include "hiervec/interpret.hpp"
#include "hiervec/lexicon.hpp"
#include "hiervec/linalg.hpp"
#include "hiervec/syntax.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hiervec;

namespace {

// Split fractions matching the fixed benchmark splits.
constexpr double kNewsTrainFrac = 957.0 / 1993.0;
constexpr double kNewsValFrac = 240.0 / 1993.0;
constexpr double kNpTrainFrac = 1602.0 / 2227.0;
constexpr double kNpValFrac = 179.0 / 2227.0;
constexpr double kTrecValFrac = 0.10;

json config_json(const RunConfig& cfg) {
  json j = json::object();
  for (const auto& [k, v] : cfg.values) j[k] = v;
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << "\n";
}

std::string out_path(const RunConfig& cfg, const std::string& name) {
  const std::string dir = cfg.get("out_dir", ".");
  fs::create_directories(dir);
  return dir + "/" + name;
}

EmbeddingMatrix load_embedding(const RunConfig& cfg) {
  validate_config(cfg, {"embedding_format"}, {"embedding_path"});
  const std::string format = cfg.get("embedding_format");
  std::unordered_set<std::string> filter;
  const std::unordered_set<std::string>* filter_ptr = nullptr;
  if (cfg.has("vocab_filter")) {
    filter = load_vocab_filter(cfg.get("vocab_filter"));
    filter_ptr = &filter;
  }
  if (format == "word2vec")
    return load_word2vec_binary(cfg.get("embedding_path"), filter_ptr);
  if (format == "glove")
    return load_glove_text(cfg.get("embedding_path"), filter_ptr);
  throw Error("embedding_format must be word2vec or glove, got '" + format +
              "'");
}

PosLexicon load_lexicon_for(const RunConfig& cfg, const EmbeddingMatrix& m,
                            int list_size) {
  validate_config(cfg, {}, {"lexicon_dir"});
  PosLexicon lex = intersect(load_pos_lexicon(cfg.get("lexicon_dir")), m);
  if (list_size > 0) lex = sized_word_list(lex, list_size);
  return lex;
}

RowScaling row_scaling(const RunConfig& cfg) {
  const std::string s = cfg.get("row_scaling", "mean");
  if (s == "mean") return RowScaling::ClassMean;
  if (s == "vocab") return RowScaling::VocabCount;
  throw Error("row_scaling must be mean or vocab, got '" + s + "'");
}

SyntacticTable build_syntactic_table(const RunConfig& cfg,
                                     const EmbeddingMatrix& m, Variant variant,
                                     int list_size) {
  PosLexicon lex = load_lexicon_for(cfg, m, list_size);
  TransitionMatrix C = build_transition_matrix(m, lex, row_scaling(cfg));
  std::unordered_set<std::string> word_set;
  const std::unordered_set<std::string>* ws = nullptr;
  if (cfg.has("word_set")) {
    word_set = load_vocab_filter(cfg.get("word_set"));
    ws = &word_set;
  }
  return project_all(m, C, variant, ws);
}

// The vector set under evaluation: the base embedding or a hierarchical
// composition per the `vectors`, `kind` and `variant` keys.
VectorTable build_vectors(const RunConfig& cfg, const EmbeddingMatrix& m) {
  const std::string which = cfg.get("vectors", "hierarchical");
  if (which == "base") return to_table(m);
  if (which != "hierarchical")
    throw Error("vectors must be base or hierarchical, got '" + which + "'");
  validate_config(cfg, {"variant", "kind"}, {});
  SyntacticTable reps = build_syntactic_table(
      cfg, m, parse_variant(cfg.get("variant")), cfg.get_int("list_size", 0));
  return compose_all(reps, m, parse_kind(cfg.get("kind")));
}

TrainOptions train_options(const RunConfig& cfg) {
  TrainOptions opts;
  opts.seed = cfg.get_seed();
  opts.epochs = cfg.get_int("epochs", 200);
  return opts;
}

TokenizerOptions tokenizer_options(const RunConfig& cfg) {
  TokenizerOptions t;
  t.lowercase = cfg.get_bool("lowercase", true);
  return t;
}

LabeledTextDataset load_task_dataset(const RunConfig& cfg,
                                     const std::string& task) {
  const uint64_t seed = cfg.get_seed();
  const TokenizerOptions tok = tokenizer_options(cfg);
  if (task == "sports" || task == "religion" || task == "computer") {
    validate_config(cfg, {}, {task + "_a", task + "_b"});
    return load_newsgroups_pair(cfg.get(task + "_a"), cfg.get(task + "_b"),
                                kNewsTrainFrac, kNewsValFrac, seed, tok);
  }
  if (task == "trec") {
    validate_config(cfg, {}, {"trec_train", "trec_test"});
    return load_trec(cfg.get("trec_train"), cfg.get("trec_test"),
                     kTrecValFrac, seed, tok);
  }
  if (task == "sentiment") {
    validate_config(cfg, {}, {"sst_train", "sst_dev", "sst_test"});
    return load_sst(cfg.get("sst_train"), cfg.get("sst_dev"),
                    cfg.get("sst_test"), cfg.get("sst_neutral", "neutral"),
                    tok);
  }
  if (task == "np") {
    validate_config(cfg, {}, {"np_tsv"});
    return load_np_bracketing(cfg.get("np_tsv"), kNpTrainFrac, kNpValFrac,
                              seed, tok);
  }
  throw Error("unknown task '" + task + "'");
}

TaskResult run_task(const RunConfig& cfg, const std::string& task,
                    const VectorTable& vecs) {
  if (task == "discriminative") {
    validate_config(cfg, {}, {"semeval_csv"});
    return run_discriminative(load_semeval_triplets(cfg.get("semeval_csv")),
                              vecs, std::stod(cfg.get("theta", "0")));
  }
  LabeledTextDataset ds = load_task_dataset(cfg, task);
  if (task == "np") return run_np_bracketing(ds, vecs, train_options(cfg));
  return run_classification(task, ds, vecs, train_options(cfg));
}

json task_json(const TaskResult& r) {
  json j;
  j["task"] = r.task;
  j["accuracy"] = r.accuracy;
  j["model"] = r.model;
  j["train_n"] = r.train_n;
  j["val_n"] = r.val_n;
  j["test_n"] = r.test_n;
  j["skipped"] = r.skipped;
  j["zero_features"] = r.zero_features;
  return j;
}

int cmd_build_syntactic(const RunConfig& cfg) {
  validate_config(cfg, {"variant", "out_dir"}, {});
  EmbeddingMatrix m = load_embedding(cfg);
  const Variant variant = parse_variant(cfg.get("variant"));
  SyntacticTable t =
      build_syntactic_table(cfg, m, variant, cfg.get_int("list_size", 0));
  const std::string stem = std::string("syntactic_") + variant_name(variant);
  save_syntactic_text(t, out_path(cfg, stem + ".tsv"));
  save_syntactic_binary(t, out_path(cfg, stem + ".bin"));
  json j;
  j["words"] = t.rows();
  j["variant"] = variant_name(variant);
  j["config"] = config_json(cfg);
  write_json(j, out_path(cfg, stem + ".json"));
  std::cout << "build-syntactic: " << t.rows() << " words, variant "
            << variant_name(variant) << "\n";
  return 0;
}

int cmd_build_hierarchical(const RunConfig& cfg) {
  validate_config(cfg, {"variant", "kind", "out_dir"}, {});
  EmbeddingMatrix m = load_embedding(cfg);
  const Variant variant = parse_variant(cfg.get("variant"));
  const HierKind kind = parse_kind(cfg.get("kind"));
  SyntacticTable reps =
      build_syntactic_table(cfg, m, variant, cfg.get_int("list_size", 0));
  ComposeStats stats;
  VectorTable vt = compose_all(reps, m, kind, &stats);
  const std::string stem = std::string("hier_") + kind_name(kind) + "_" +
                           variant_name(variant);
  save_vector_table(vt, out_path(cfg, stem + ".tsv"));
  json j;
  j["words"] = vt.rows();
  j["dim"] = vt.dim();
  j["kind"] = kind_name(kind);
  j["variant"] = variant_name(variant);
  j["missing"] = stats.missing;
  j["config"] = config_json(cfg);
  write_json(j, out_path(cfg, stem + ".json"));
  std::cout << "build-hierarchical: " << vt.rows() << " words x " << vt.dim()
            << " (" << kind_name(kind) << "/" << variant_name(variant)
            << ")\n";
  return 0;
}

int cmd_eval(const RunConfig& cfg) {
  validate_config(cfg, {"tasks", "out_dir", "seed"}, {});
  EmbeddingMatrix m = load_embedding(cfg);
  VectorTable vecs = build_vectors(cfg, m);
  json report;
  report["vectors"] = cfg.get("vectors", "hierarchical");
  report["tasks"] = json::array();
  std::ofstream csv(out_path(cfg, "eval_report.csv"));
  csv << "task,accuracy,model\n";
  for (const auto& task : cfg.get_list("tasks")) {
    TaskResult r = run_task(cfg, task, vecs);
    report["tasks"].push_back(task_json(r));
    csv << r.task << "," << r.accuracy << "," << r.model << "\n";
    std::cout << "eval " << r.task << ": accuracy " << r.accuracy << " ("
              << r.model << ")\n";
  }
  report["config"] = config_json(cfg);
  write_json(report, out_path(cfg, "eval_report.json"));
  return 0;
}

int cmd_similarity(const RunConfig& cfg) {
  validate_config(cfg, {"out_dir"}, {});
  EmbeddingMatrix m = load_embedding(cfg);
  VectorTable vecs = build_vectors(cfg, m);
  json report;
  report["vectors"] = cfg.get("vectors", "hierarchical");
  report["datasets"] = json::array();
  std::ofstream csv(out_path(cfg, "similarity.csv"));
  csv << "dataset,rho_percent,used_pairs,total_pairs\n";
  bool any = false;
  for (const auto& [key, path] : cfg.values) {
    if (key.rfind("sim_", 0) != 0) continue;
    any = true;
    const std::string name = key.substr(4);
    SimilarityResult r = run_word_similarity(load_similarity(path), vecs);
    json j;
    j["dataset"] = name;
    j["rho_percent"] = r.rho_percent;
    j["used_pairs"] = r.used_pairs;
    j["total_pairs"] = r.total_pairs;
    report["datasets"].push_back(j);
    csv << name << "," << r.rho_percent << "," << r.used_pairs << ","
        << r.total_pairs << "\n";
    std::cout << "similarity " << name << ": rho " << r.rho_percent << " ("
              << r.used_pairs << "/" << r.total_pairs << " pairs)\n";
  }
  if (!any) throw Error("no sim_<name> datasets configured");
  report["config"] = config_json(cfg);
  write_json(report, out_path(cfg, "similarity.json"));
  return 0;
}

int cmd_significance(const RunConfig& cfg) {
  validate_config(cfg, {"task", "out_dir", "seed"}, {});
  const std::string task = cfg.get("task");
  if (task == "discriminative")
    throw Error("significance protocol applies to the classification tasks");
  EmbeddingMatrix m = load_embedding(cfg);
  VectorTable base = to_table(m);
  VectorTable hier = build_vectors(cfg, m);
  LabeledTextDataset ds = load_task_dataset(cfg, task);
  const int k = cfg.get_int("runs", 100);
  SignificanceRow row = significance_protocol(ds, base, hier, k,
                                              cfg.get_seed(),
                                              train_options(cfg));
  json j;
  j["task"] = task;
  j["runs"] = k;
  j["base_mean"] = row.mean_a;
  j["base_sd"] = row.sd_a;
  j["hierarchical_mean"] = row.mean_b;
  j["hierarchical_sd"] = row.sd_b;
  j["t"] = row.t;
  j["p"] = row.p;
  j["base_runs"] = row.runs_a;
  j["hierarchical_runs"] = row.runs_b;
  j["config"] = config_json(cfg);
  write_json(j, out_path(cfg, "significance_" + task + ".json"));
  std::cout << "significance " << task << ": base " << row.mean_a
            << " +- " << row.sd_a << ", hierarchical " << row.mean_b << " +- "
            << row.sd_b << ", t " << row.t << ", p " << row.p << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg) {
  validate_config(cfg, {"task", "sizes", "variant", "kind", "out_dir", "seed"},
                  {});
  const std::string task = cfg.get("task");
  EmbeddingMatrix m = load_embedding(cfg);
  std::vector<int> sizes;
  for (const auto& s : cfg.get_list("sizes")) sizes.push_back(std::stoi(s));
  const Variant variant = parse_variant(cfg.get("variant"));
  const HierKind kind = parse_kind(cfg.get("kind"));
  auto builder = [&](int n) {
    SyntacticTable reps = build_syntactic_table(cfg, m, variant, n);
    return compose_all(reps, m, kind);
  };
  auto runner = [&](const VectorTable& vecs) {
    return run_task(cfg, task, vecs).accuracy;
  };
  auto rows = size_sweep(sizes, builder, runner);
  std::ofstream csv(out_path(cfg, "sweep_" + task + ".csv"));
  csv << "n,accuracy\n";
  for (const auto& [n, acc] : rows) {
    csv << n << "," << acc << "\n";
    std::cout << "sweep " << task << " n=" << n << ": accuracy " << acc
              << "\n";
  }
  return 0;
}

json confusion_json(const ConfusionMatrix& cm) {
  json j;
  j["classes"] = cm.row_names;
  j["accuracy_percent"] = 100.0 * cm.accuracy();
  j["per_class"] = json::array();
  for (size_t c = 0; c < cm.row_names.size(); ++c) {
    json pc;
    pc["class"] = cm.row_names[c];
    pc["precision"] = cm.precision(static_cast<int>(c));
    pc["recall"] = cm.recall(static_cast<int>(c));
    pc["f1"] = cm.f1(static_cast<int>(c));
    j["per_class"].push_back(pc);
  }
  return j;
}

void write_confusion_csv(const ConfusionMatrix& cm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << "gold\\pred";
  for (const auto& n : cm.col_names) out << "," << n;
  out << "\n";
  for (Eigen::Index r = 0; r < cm.counts.rows(); ++r) {
    out << cm.row_names[static_cast<size_t>(r)];
    for (Eigen::Index c = 0; c < cm.counts.cols(); ++c)
      out << "," << cm.counts(r, c);
    out << "\n";
  }
}

int cmd_interpret(const RunConfig& cfg) {
  validate_config(cfg, {"out_dir"}, {"oracle_tsv"});
  EmbeddingMatrix m = load_embedding(cfg);
  const int list_size = cfg.get_int("list_size", 0);
  SyntacticTable interp =
      build_syntactic_table(cfg, m, Variant::Interpretable, list_size);
  SyntacticTable absolute =
      build_syntactic_table(cfg, m, Variant::Absolute, list_size);
  PosOracle oracle = load_oracle_tsv(cfg.get("oracle_tsv"));

  json report;
  ConfusionMatrix partial =
      word_classification(interp, oracle, ClassificationMode::Partial);
  ConfusionMatrix complete =
      word_classification(interp, oracle, ClassificationMode::Complete);
  report["partial"] = confusion_json(partial);
  report["complete"] = confusion_json(complete);
  write_confusion_csv(partial, out_path(cfg, "confusion_partial.csv"));
  write_confusion_csv(complete, out_path(cfg, "confusion_complete.csv"));
  std::cout << "interpret partial: accuracy "
            << 100.0 * partial.accuracy() << "\n";
  std::cout << "interpret complete: accuracy "
            << 100.0 * complete.accuracy() << "\n";

  if (cfg.has("tagged_tsv") && cfg.has("tagmap_tsv")) {
    PosOracle conflated = conflate_tags(load_tagged_tsv(cfg.get("tagged_tsv")),
                                        load_tag_map(cfg.get("tagmap_tsv")));
    ConfusionMatrix eight =
        word_classification(interp, conflated, ClassificationMode::Complete);
    report["eight_class"] = confusion_json(eight);
    json counts = json::object();
    for (int l : conflated.label_universe) {
      int n = 0;
      for (const auto& [word, labels] : conflated.entries)
        if (std::find(labels.begin(), labels.end(), l) != labels.end()) ++n;
      counts[pos_name(l)] = n;
    }
    report["eight_class"]["class_counts"] = counts;
    write_confusion_csv(eight, out_path(cfg, "confusion_eight_class.csv"));
    std::cout << "interpret eight-class: accuracy "
              << 100.0 * eight.accuracy() << "\n";
  }

  const int k = cfg.get_int("top_k", 15);
  auto top = top_k_per_dimension(absolute, k);
  std::ofstream md(out_path(cfg, "top_words.md"));
  md << "| Dimension | Top Ranking Words |\n|---|---|\n";
  for (int d = 0; d < kNumPos; ++d) {
    md << "| " << pos_name(d) << " | ";
    for (size_t i = 0; i < top[d].size(); ++i)
      md << (i ? ", " : "") << top[d][i].first;
    md << " |\n";
  }
  report["config"] = config_json(cfg);
  write_json(report, out_path(cfg, "interpret.json"));
  return 0;
}

int cmd_svd_report(const RunConfig& cfg) {
  validate_config(cfg, {"out_dir"}, {});
  EmbeddingMatrix m = load_embedding(cfg);
  VectorTable vecs = build_vectors(cfg, m);
  // a deterministic row subsample keeps the SVD tractable on big tables
  const int max_rows = cfg.get_int("svd_max_rows", 20000);
  Eigen::MatrixXd M;
  if (vecs.rows() > max_rows) {
    M = Eigen::MatrixXd(max_rows, vecs.dim());
    const double step = static_cast<double>(vecs.rows()) / max_rows;
    for (int i = 0; i < max_rows; ++i)
      M.row(i) = vecs.data.row(static_cast<Eigen::Index>(i * step));
  } else {
    M = vecs.data;
  }
  SvdResult d = svd(M);
  const double tol = cfg.has("svd_tol")
                         ? std::stod(cfg.get("svd_tol"))
                         : std::max(M.rows(), M.cols()) * d.S(0) *
                               std::numeric_limits<double>::epsilon();
  ConditionNumber cond = condition_number(d.S, tol);
  json j;
  j["vectors"] = cfg.get("vectors", "hierarchical");
  j["rows_used"] = static_cast<int>(M.rows());
  j["largest_singular_value"] = d.S(0);
  j["condition_number"] = cond.exceeds_cap ? json(cond.str())
                                           : json(cond.value);
  j["condition_exceeds_cap"] = cond.exceeds_cap;
  j["singular_values_head"] = std::vector<double>(
      d.S.data(), d.S.data() + std::min<Eigen::Index>(d.S.size(), 16));
  j["config"] = config_json(cfg);
  write_json(j, out_path(cfg, "svd_report.json"));
  std::cout << "svd-report: largest " << d.S(0) << ", condition "
            << cond.str() << "\n";
  return 0;
}

int cmd_viz(const RunConfig& cfg) {
  validate_config(cfg, {"out_dir"}, {"oracle_tsv"});
  EmbeddingMatrix m = load_embedding(cfg);
  VectorTable vecs = build_vectors(cfg, m);
  PosOracle oracle = load_oracle_tsv(cfg.get("oracle_tsv"));
  const int sample_n = cfg.get_int("sample_n", 200);
  std::vector<std::pair<std::string, int>> sample;
  for (const auto& word : vecs.words) {
    auto it = oracle.entries.find(word);
    if (it == oracle.entries.end() || it->second.size() != 1) continue;
    sample.emplace_back(word, it->second.front());
    if (static_cast<int>(sample.size()) >= sample_n) break;
  }
  export_space_2d(vecs, sample, out_path(cfg, "space2d.csv"),
                  out_path(cfg, "space2d.svg"));
  std::cout << "viz: " << sample.size() << " points exported\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"syntactic representations and hierarchical word vectors"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&);
  };
  const Sub subs[] = {
      {"build-syntactic", "project embeddings into the 8-dim subspace",
       cmd_build_syntactic},
      {"build-hierarchical", "compose hierarchical vectors",
       cmd_build_hierarchical},
      {"eval", "run benchmark classification tasks", cmd_eval},
      {"similarity", "run word similarity benchmarks", cmd_similarity},
      {"significance", "resampled corrected paired t-test", cmd_significance},
      {"sweep", "word-list-size sweep on a task", cmd_sweep},
      {"interpret", "word classification and top-k reports", cmd_interpret},
      {"svd-report", "singular values and condition number", cmd_svd_report},
      {"viz", "2D projection export", cmd_viz},
  };

  std::map<std::string, int (*)(const RunConfig&)> handlers;
  for (const auto& s : subs) {
    CLI::App* sc = app.add_subcommand(s.name, s.help);
    sc->add_option("--config", config_path, "flat key = value config file")
        ->required();
    sc->add_option("--set,-D", overrides, "key=value override (repeatable)");
    handlers[s.name] = s.fn;
  }

  CLI11_PARSE(app, argc, argv);

  try {
    RunConfig cfg = load_config(config_path);
    apply_overrides(&cfg, overrides);
    return handlers.at(app.get_subcommands().front()->get_name())(cfg);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
