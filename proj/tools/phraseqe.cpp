// Command-line pipeline: build-store -> extract -> train -> predict ->
// evaluate. Exit codes: 0 success, 1 usage, 2 data error, 3 schema mismatch.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "phraseqe/corpus.hpp"
#include "phraseqe/features.hpp"
#include "phraseqe/metrics.hpp"
#include "phraseqe/net.hpp"
#include "phraseqe/phrase_store.hpp"
#include "phraseqe/sentence_score.hpp"
#include "phraseqe/synth.hpp"

using namespace phraseqe;

namespace {

int default_threads() {
  if (const char* env = std::getenv("PHRASEQE_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 0;  // OpenMP default
}

void require_file(const std::string& path, const std::string& what) {
  if (!std::filesystem::exists(path))
    throw DataError(what + " not found: " + path);
}

struct BuildStoreArgs {
  std::vector<std::string> tables;
  std::vector<std::string> inverted_tables;
  std::string out;
};

int cmd_build_store(const BuildStoreArgs& args) {
  if (args.tables.empty() && args.inverted_tables.empty())
    throw UsageError("build-store needs at least one --table or --inverted-table");
  for (const auto& t : args.tables) require_file(t, "phrase table");
  for (const auto& t : args.inverted_tables) require_file(t, "phrase table");

  PhrasePairStore store;
  for (const auto& t : args.tables) ingest_phrase_table(t, false, store);
  for (const auto& t : args.inverted_tables) ingest_phrase_table(t, true, store);
  store.freeze();
  save_store_cache(store, args.out);
  std::cout << "store: " << store.size() << " phrase pairs, max source length "
            << store.max_source_len() << ", max target length "
            << store.max_target_len() << "\n";
  return 0;
}

struct ExtractArgs {
  std::string store;
  std::string src;
  std::string mt;
  std::string baseline;
  std::string baseline_schema;
  std::string fit_vocab_out;
  bool disable_pos = false;
  size_t max_len = 5;
  std::string out;
  std::string tsv_out;
  int threads = default_threads();
};

int cmd_extract(const ExtractArgs& args) {
  require_file(args.store, "store cache");
  require_file(args.src, "source file");
  require_file(args.mt, "MT file");

  PhrasePairStore store = load_store_cache(args.store);
  std::vector<QeSentence> sentences = load_qe_dataset(args.src, args.mt);

  std::optional<BaselineFeatureTable> baseline;
  size_t baseline_width = 0;
  if (!args.baseline.empty()) {
    require_file(args.baseline, "baseline feature file");
    if (args.baseline_schema.empty())
      throw UsageError("--baseline requires --baseline-schema");
    require_file(args.baseline_schema, "baseline schema");
    BaselineSchema schema = load_baseline_schema(args.baseline_schema);
    if (args.disable_pos) schema.use_pos = false;
    if (schema.use_pos && schema.pos_column >= 0 && !schema.has_vocab()) {
      if (args.fit_vocab_out.empty())
        throw SchemaError(
            "baseline schema carries no POS vocabulary; pass "
            "--fit-baseline-vocab OUT.json on the training split first");
      schema.pos_vocab = fit_pos_vocab(args.baseline, schema);
      save_baseline_schema(schema, args.fit_vocab_out);
      std::cout << "fitted POS vocabulary (" << schema.pos_vocab.size()
                << " categories) -> " << args.fit_vocab_out << "\n";
    }
    std::vector<size_t> lengths;
    lengths.reserve(sentences.size());
    for (const auto& s : sentences) lengths.push_back(s.mt_tokens.size());
    baseline = load_baseline_features(args.baseline, schema, lengths);
    baseline_width = static_cast<size_t>(baseline->width);
  }

  FeatureOptions opts;
  opts.max_len = args.max_len;
  std::vector<FeatureContext> ctxs =
      extract_contexts(sentences, store, baseline ? &*baseline : nullptr, opts,
                       args.threads);
  save_feature_file(args.out, ctxs, opts.max_len, baseline_width);
  if (!args.tsv_out.empty()) dump_features_tsv(args.tsv_out, ctxs);

  std::cout << "extracted " << ctxs.size() << " sentences, F="
            << (word_subseg_width(opts.max_len) + baseline_width)
            << " G=" << gap_vector_width(opts.max_len) << " -> " << args.out << "\n";
  return 0;
}

std::vector<QeSentence> gold_from_tags(const std::string& tags_path,
                                       const std::vector<FeatureContext>& ctxs) {
  std::vector<std::string> lines = read_lines(tags_path);
  if (lines.size() != ctxs.size())
    throw DataError(tags_path + ": " + std::to_string(lines.size()) +
                    " tag lines for " + std::to_string(ctxs.size()) + " sentences");
  std::vector<QeSentence> gold(ctxs.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    TagPair tp = parse_tag_line(lines[i]);
    if (tp.word_tags.size() != ctxs[i].n_words)
      throw DataError(tags_path + ":" + std::to_string(i + 1) +
                      ": tag count does not match feature file");
    gold[i].mt_tokens.assign(ctxs[i].n_words, "");
    gold[i].gold_word_tags = std::move(tp.word_tags);
    gold[i].gold_gap_tags = std::move(tp.gap_tags);
  }
  return gold;
}

struct TrainArgs {
  std::string features_train, tags_train;
  std::string features_dev, tags_dev;
  std::string model_out;
  std::string history_out;
  TrainConfig config;
  size_t context = 3;
  std::string dev_metric = "fmulti";
};

int cmd_train(const TrainArgs& args) {
  require_file(args.features_train, "training features");
  require_file(args.features_dev, "dev features");
  require_file(args.tags_train, "training tags");
  require_file(args.tags_dev, "dev tags");

  LoadedFeatures train_feats = load_feature_file(args.features_train);
  LoadedFeatures dev_feats = load_feature_file(args.features_dev);
  if (train_feats.header.word_width != dev_feats.header.word_width ||
      train_feats.header.gap_width != dev_feats.header.gap_width ||
      train_feats.header.max_len != dev_feats.header.max_len ||
      train_feats.header.baseline_width != dev_feats.header.baseline_width)
    throw SchemaError("train and dev feature files have different schemas");

  std::vector<QeSentence> train_gold =
      gold_from_tags(args.tags_train, train_feats.contexts);
  std::vector<QeSentence> dev_gold = gold_from_tags(args.tags_dev, dev_feats.contexts);

  TrainConfig config = args.config;
  if (args.dev_metric == "fmulti")
    config.dev_metric = TrainConfig::DevMetric::FMulti;
  else if (args.dev_metric == "loss")
    config.dev_metric = TrainConfig::DevMetric::Loss;
  else
    throw UsageError("--dev-metric must be fmulti or loss");

  WindowBatch train_windows =
      build_windows(train_feats.contexts, args.context, &train_gold);
  WindowBatch dev_windows = build_windows(dev_feats.contexts, args.context, &dev_gold);

  TrainResult result = train(train_windows, dev_windows, config);

  ModelFile model;
  model.params = result.params;
  model.max_len = train_feats.header.max_len;
  model.baseline_width = train_feats.header.baseline_width;
  save_model(model, args.model_out);

  if (!args.history_out.empty()) {
    std::ofstream hist(args.history_out, std::ios::trunc);
    if (!hist) throw DataError("cannot write history: " + args.history_out);
    hist << "restart\tepoch\ttrain_loss\tdev_metric\n";
    char buf[64];
    for (const EpochRecord& r : result.history.epochs) {
      std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.6f\t%.6f", r.restart, r.epoch,
                    r.train_loss, r.dev_metric);
      hist << buf << "\n";
    }
    for (const std::string& f : result.history.failures) hist << "# " << f << "\n";
    hist << "# chosen restart " << result.history.chosen_restart << ", epoch "
         << result.history.chosen_epoch << ", dev metric "
         << result.history.chosen_dev_metric << "\n";
  }
  for (const std::string& f : result.history.failures)
    std::cerr << "warning: " << f << "\n";

  std::cout << "model -> " << args.model_out << " (restart "
            << result.history.chosen_restart << ", epoch "
            << result.history.chosen_epoch << ", dev metric "
            << result.history.chosen_dev_metric << ", thresholds "
            << result.params.word_threshold << "/" << result.params.gap_threshold
            << ")\n";
  return 0;
}

struct PredictArgs {
  std::string model;
  std::string features;
  std::string out_dir;
  int threads = default_threads();
};

int cmd_predict(const PredictArgs& args) {
  require_file(args.model, "model file");
  require_file(args.features, "feature file");

  ModelFile model = load_model(args.model);
  LoadedFeatures feats = load_feature_file(args.features);
  check_model_features(model, feats.header);

  WindowBatch windows = build_windows(feats.contexts, model.params.dims.context);
  Predictions pred = predict(model.params, windows.windows, args.threads);

  const size_t n = feats.contexts.size();
  std::vector<QeSentence> shaped(n);
  std::vector<std::vector<double>> word_probs(n), gap_probs(n);
  std::vector<std::vector<Tag>> word_labels(n), gap_labels(n);
  std::vector<double> scores(n, 0.0);

  size_t at = 0;
  for (size_t s = 0; s < n; ++s) {
    const size_t m = feats.contexts[s].n_words;
    shaped[s].mt_tokens.assign(m, "");
    for (size_t i = 0; i <= m; ++i, ++at) {
      const Window& w = windows.windows[at];
      if (w.sentence != s || w.position != i)
        throw DataError("window ordering is inconsistent");
      if (i > 0) {
        word_probs[s].push_back(pred.word_probs[at]);
        word_labels[s].push_back(
            apply_threshold(pred.word_probs[at], model.params.word_threshold));
      }
      gap_probs[s].push_back(pred.gap_probs[at]);
      gap_labels[s].push_back(
          apply_threshold(pred.gap_probs[at], model.params.gap_threshold));
    }
    scores[s] = approximate_ter(word_labels[s], gap_labels[s]).score;
  }

  write_predictions(shaped, word_probs, gap_probs, word_labels, gap_labels, scores,
                    rank_by_score(scores), args.out_dir);
  std::cout << "predictions -> " << args.out_dir << "\n";
  return 0;
}

struct EvaluateArgs {
  std::string pred_dir;
  std::string gold_tags;
  std::string gold_hter;
  std::string report_prefix;
};

std::string fmt6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

int cmd_evaluate(const EvaluateArgs& args) {
  PredictionFiles files = prediction_file_names(args.pred_dir);
  require_file(files.tags, "predicted tags");
  require_file(args.gold_tags, "gold tags");

  std::vector<std::string> pred_lines = read_lines(files.tags);
  std::vector<std::string> gold_lines = read_lines(args.gold_tags);
  if (pred_lines.size() != gold_lines.size())
    throw DataError("prediction/gold sentence counts differ");

  std::vector<Tag> pred_words, gold_words, pred_gaps, gold_gaps;
  for (size_t i = 0; i < pred_lines.size(); ++i) {
    TagPair p = parse_tag_line(pred_lines[i]);
    TagPair g = parse_tag_line(gold_lines[i]);
    if (p.word_tags.size() != g.word_tags.size())
      throw DataError("sentence " + std::to_string(i + 1) +
                      ": prediction/gold lengths differ");
    pred_words.insert(pred_words.end(), p.word_tags.begin(), p.word_tags.end());
    gold_words.insert(gold_words.end(), g.word_tags.begin(), g.word_tags.end());
    pred_gaps.insert(pred_gaps.end(), p.gap_tags.begin(), p.gap_tags.end());
    gold_gaps.insert(gold_gaps.end(), g.gap_tags.begin(), g.gap_tags.end());
  }

  F1Scores word_f1 = f1_suite(pred_words, gold_words);
  F1Scores gap_f1 = f1_suite(pred_gaps, gold_gaps);

  nlohmann::json report;
  std::vector<std::pair<std::string, std::string>> lines;
  auto put = [&](const std::string& key, double value) {
    lines.emplace_back(key, fmt6(value));
    report[key] = value;
  };
  put("word_f_bad", word_f1.f_bad);
  put("word_f_ok", word_f1.f_ok);
  put("word_f_multi", word_f1.f_multi);
  put("gap_f_bad", gap_f1.f_bad);
  put("gap_f_ok", gap_f1.f_ok);
  put("gap_f_multi", gap_f1.f_multi);

  if (!args.gold_hter.empty()) {
    require_file(files.sentence_scores, "predicted sentence scores");
    require_file(args.gold_hter, "gold HTER");
    std::vector<std::string> ps = read_lines(files.sentence_scores);
    std::vector<std::string> gs = read_lines(args.gold_hter);
    if (ps.size() != gs.size())
      throw DataError("sentence score/gold HTER counts differ");
    std::vector<double> pv, gv;
    for (size_t i = 0; i < ps.size(); ++i) {
      pv.push_back(parse_real(ps[i], "predicted score"));
      gv.push_back(parse_real(gs[i], "gold HTER"));
    }
    SentenceMetrics sm = sentence_metrics(pv, gv);
    if (sm.pearson_r) {
      put("pearson_r", *sm.pearson_r);
    } else {
      lines.emplace_back("pearson_r", "undefined");
      report["pearson_r"] = nullptr;
    }
    put("mae", sm.mae);
    put("rmse", sm.rmse);
    if (sm.spearman_rho) {
      put("spearman_rho", *sm.spearman_rho);
    } else {
      lines.emplace_back("spearman_rho", "undefined");
      report["spearman_rho"] = nullptr;
    }
  }

  std::string text;
  for (const auto& [k, v] : lines) text += k + "=" + v + "\n";
  std::cout << text;

  const std::string prefix =
      args.report_prefix.empty() ? args.pred_dir + "/report" : args.report_prefix;
  std::ofstream txt(prefix + ".txt", std::ios::trunc);
  if (!txt) throw DataError("cannot write report: " + prefix + ".txt");
  txt << text;
  std::ofstream js(prefix + ".json", std::ios::trunc);
  if (!js) throw DataError("cannot write report: " + prefix + ".json");
  js << report.dump(2) << "\n";
  return 0;
}

struct SynthArgs {
  std::string out_dir;
  SynthConfig config;
};

int cmd_synth(const SynthArgs& args) {
  SynthPaths paths = generate_synthetic_corpus(args.config, args.out_dir);
  std::cout << "synthetic corpus -> " << args.out_dir << " (tables "
            << paths.table_fwd << ", " << paths.table_rev << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phrase-table based word, gap and sentence quality estimation"};
  app.require_subcommand(1);

  BuildStoreArgs bs;
  CLI::App* build = app.add_subcommand(
      "build-store", "Ingest phrase tables into a binary store cache");
  build->add_option("--table", bs.tables, "phrase table, source ||| target order");
  build->add_option("--inverted-table", bs.inverted_tables,
                    "phrase table with the sides swapped");
  build->add_option("--out", bs.out, "store cache path")->required();

  ExtractArgs ex;
  CLI::App* extract =
      app.add_subcommand("extract", "Compute word and gap feature vectors");
  extract->add_option("--store", ex.store, "store cache")->required();
  extract->add_option("--src", ex.src, "source sentences")->required();
  extract->add_option("--mt", ex.mt, "MT sentences")->required();
  extract->add_option("--baseline", ex.baseline, "baseline feature file");
  extract->add_option("--baseline-schema", ex.baseline_schema,
                      "baseline schema JSON");
  extract->add_option("--fit-baseline-vocab", ex.fit_vocab_out,
                      "fit the POS vocabulary on this file and write the "
                      "completed schema here");
  extract->add_flag("--disable-pos", ex.disable_pos, "drop the POS block");
  extract->add_option("--max-len", ex.max_len, "longest sub-segment L")
      ->default_val(size_t{5});
  extract->add_option("--out", ex.out, "feature file")->required();
  extract->add_option("--tsv-out", ex.tsv_out, "optional readable dump");
  extract->add_option("--threads", ex.threads, "worker threads");

  TrainArgs tr;
  CLI::App* train_cmd = app.add_subcommand("train", "Train the QE network");
  train_cmd->add_option("--features-train", tr.features_train)->required();
  train_cmd->add_option("--tags-train", tr.tags_train)->required();
  train_cmd->add_option("--features-dev", tr.features_dev)->required();
  train_cmd->add_option("--tags-dev", tr.tags_dev)->required();
  train_cmd->add_option("--model-out", tr.model_out)->required();
  train_cmd->add_option("--history-out", tr.history_out, "epoch log");
  train_cmd->add_option("--context", tr.context, "context radius C")
      ->default_val(size_t{3});
  train_cmd->add_option("--embed", tr.config.embed,
                        "encoder width E (0 = (F+G)/2 rounded up)");
  train_cmd->add_option("--lr", tr.config.learning_rate)->default_val(1e-3);
  train_cmd->add_option("--dropout", tr.config.dropout)->default_val(0.2);
  train_cmd->add_option("--patience", tr.config.patience)->default_val(size_t{10});
  train_cmd->add_option("--restarts", tr.config.restarts)->default_val(size_t{10});
  train_cmd->add_option("--batch-size", tr.config.batch_size)
      ->default_val(size_t{64});
  train_cmd->add_option("--max-epochs", tr.config.max_epochs)
      ->default_val(size_t{200});
  train_cmd->add_option("--seed", tr.config.seed)->default_val(uint64_t{1});
  train_cmd->add_option("--dev-metric", tr.dev_metric, "fmulti or loss")
      ->default_val(std::string("fmulti"));
  train_cmd->add_option("--threads", tr.config.threads, "parallel restarts");

  PredictArgs pr;
  CLI::App* predict_cmd =
      app.add_subcommand("predict", "Label words and gaps, score sentences");
  predict_cmd->add_option("--model", pr.model)->required();
  predict_cmd->add_option("--features", pr.features)->required();
  predict_cmd->add_option("--out-dir", pr.out_dir)->required();
  predict_cmd->add_option("--threads", pr.threads, "worker threads");

  EvaluateArgs ev;
  CLI::App* eval_cmd =
      app.add_subcommand("evaluate", "Score predictions against gold");
  eval_cmd->add_option("--pred-dir", ev.pred_dir)->required();
  eval_cmd->add_option("--gold-tags", ev.gold_tags)->required();
  eval_cmd->add_option("--gold-hter", ev.gold_hter, "gold sentence scores");
  eval_cmd->add_option("--report-out", ev.report_prefix,
                       "report path prefix (default: <pred-dir>/report)");

  SynthArgs sy;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Generate the bundled synthetic demo corpus");
  synth_cmd->add_option("--out-dir", sy.out_dir)->required();
  synth_cmd->add_option("--seed", sy.config.seed)->default_val(uint64_t{2024});
  synth_cmd->add_option("--train-sentences", sy.config.train_sentences)
      ->default_val(size_t{2000});
  synth_cmd->add_option("--dev-sentences", sy.config.dev_sentences)
      ->default_val(size_t{200});
  synth_cmd->add_option("--test-sentences", sy.config.test_sentences)
      ->default_val(size_t{200});

  try {
    app.parse(argc, argv);
    if (build->parsed()) return cmd_build_store(bs);
    if (extract->parsed()) return cmd_extract(ex);
    if (train_cmd->parsed()) return cmd_train(tr);
    if (predict_cmd->parsed()) return cmd_predict(pr);
    if (eval_cmd->parsed()) return cmd_evaluate(ev);
    if (synth_cmd->parsed()) return cmd_synth(sy);
    throw UsageError("no subcommand");
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const SchemaError& e) {
    std::cerr << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
