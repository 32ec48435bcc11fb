#include "docq/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "docq/error.hpp"
#include "docq/features.hpp"
#include "docq/knowledge_base.hpp"
#include "docq/linear_model.hpp"
#include "docq/parallel.hpp"
#include "docq/quality.hpp"
#include "docq/readability.hpp"
#include "docq/stats.hpp"
#include "docq/tfidf.hpp"
#include "docq/tsv.hpp"

namespace fs = std::filesystem;

namespace docq {

namespace {

struct CommonOpts {
    std::string stopword_path;
    std::string manifest;
    std::string out_path;
    unsigned jobs = 1;
};

Stopwords resolve_stopwords(const std::string& path) {
    if (path.empty()) return default_stopwords();
    return load_stopwords(path);
}

std::optional<fs::path> resolve_manifest(const std::string& manifest) {
    if (manifest.empty()) return std::nullopt;
    return fs::path(manifest);
}

// stdout unless --out was given
class OutputTarget {
  public:
    OutputTarget(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw Error("cannot open " + path + " for writing");
            os_ = &file_;
        }
    }
    std::ostream& stream() { return *os_; }

  private:
    std::ofstream file_;
    std::ostream* os_;
};

void warn_skipped(const std::vector<std::string>& skipped, const char* what, std::ostream& err) {
    for (const auto& s : skipped) err << "warning: skipped " << what << ": " << s << '\n';
}

std::string features_label(const std::vector<std::string>& names) {
    for (const FeaturePreset preset :
         {FeaturePreset::Readability, FeaturePreset::ReadabilityCounts, FeaturePreset::Quality,
          FeaturePreset::All}) {
        const auto expected = preset_feature_names(preset);
        if (std::equal(names.begin(), names.end(), expected.begin(), expected.end()))
            return preset_name(preset);
    }
    return "custom(" + std::to_string(names.size()) + ")";
}

Dataset select_columns(const Dataset& table, const std::vector<std::string>& names) {
    std::vector<std::size_t> cols;
    cols.reserve(names.size());
    for (const auto& name : names) {
        const auto it = std::find(table.feature_names.begin(), table.feature_names.end(), name);
        if (it == table.feature_names.end()) throw Error("feature table lacks column " + name);
        cols.push_back(static_cast<std::size_t>(it - table.feature_names.begin()));
    }
    Dataset out;
    out.feature_names = names;
    out.rows.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        FeatureVector fv{row.doc_id, {}, row.label};
        fv.values.reserve(cols.size());
        for (const std::size_t c : cols) fv.values.push_back(row.values[c]);
        out.rows.push_back(std::move(fv));
    }
    return out;
}

Dataset labeled_rows(const Dataset& table, std::ostream& err) {
    Dataset out;
    out.feature_names = table.feature_names;
    std::size_t dropped = 0;
    for (const auto& row : table.rows) {
        if (row.label)
            out.rows.push_back(row);
        else
            ++dropped;
    }
    if (dropped > 0) err << "warning: ignored " << dropped << " unlabeled rows\n";
    return out;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    return idx;
}

int cmd_build_kb(const std::string& dir, const std::string& out_path, std::uint64_t min_freq,
                 const std::string& name, const CommonOpts& common, std::ostream& err) {
    BuildKbOptions options;
    options.min_freq = min_freq;
    options.corpus_name = name;
    options.manifest = resolve_manifest(common.manifest);
    options.jobs = common.jobs;
    const KnowledgeBase kb = build_kb(dir, resolve_stopwords(common.stopword_path), options);
    if (kb.meta().n_skipped > 0)
        err << "warning: skipped " << kb.meta().n_skipped << " unreadable files\n";
    save_kb(kb, out_path);
    err << "kb: " << kb.size() << " collocations from " << kb.meta().n_documents << " documents ("
        << kb.meta().n_bigram_positions << " bigram positions)\n";
    return 0;
}

int cmd_score(const std::string& dir, const std::string& kb_path, const CommonOpts& common,
              std::ostream& out, std::ostream& err) {
    const KnowledgeBase kb = load_kb(kb_path);
    const Stopwords stopwords = resolve_stopwords(common.stopword_path);
    const Corpus corpus = load_corpus(dir, resolve_manifest(common.manifest));
    warn_skipped(corpus.skipped, "file", err);

    std::vector<QualityScore> scores(corpus.docs.size());
    parallel_for(corpus.docs.size(), common.jobs,
                 [&](std::size_t i) { scores[i] = score_document(corpus.docs[i], kb, stopwords); });

    OutputTarget target(common.out_path, out);
    target.stream() << "doc_id\tads\tadsn\tm\tw\n";
    for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
        const QualityScore& q = scores[i];
        target.stream() << corpus.docs[i].id << '\t' << tsv::format_double(q.ads) << '\t'
                        << tsv::format_double(q.adsn) << '\t' << q.m << '\t' << q.w << '\n';
    }
    return 0;
}

int cmd_readability(const std::string& dir, const CommonOpts& common, std::ostream& out,
                    std::ostream& err) {
    const Corpus corpus = load_corpus(dir, resolve_manifest(common.manifest));
    warn_skipped(corpus.skipped, "file", err);

    const FeatureBuild build =
        compute_features(corpus, FeaturePreset::ReadabilityCounts, nullptr, {}, common.jobs);
    warn_skipped(build.skipped, "degenerate document", err);

    OutputTarget target(common.out_path, out);
    target.stream() << "doc_id";
    for (const auto& name : build.dataset.feature_names) target.stream() << '\t' << name;
    target.stream() << '\n';
    for (const auto& row : build.dataset.rows) {
        target.stream() << row.doc_id;
        for (const double v : row.values) target.stream() << '\t' << tsv::format_double(v);
        target.stream() << '\n';
    }
    return 0;
}

int cmd_collocations(const std::string& dir, const CommonOpts& common, std::ostream& out,
                     std::ostream& err) {
    const Stopwords stopwords = resolve_stopwords(common.stopword_path);
    const Corpus corpus = load_corpus(dir, resolve_manifest(common.manifest));
    warn_skipped(corpus.skipped, "file", err);

    std::vector<DocCollocations> docs(corpus.docs.size());
    parallel_for(corpus.docs.size(), common.jobs,
                 [&](std::size_t i) { docs[i] = doc_collocations(corpus.docs[i], stopwords); });

    OutputTarget target(common.out_path, out);
    target.stream() << "doc_id\tword1\tword2\n";
    for (const auto& d : docs)
        for (const auto& [w1, w2] : d.pairs) target.stream() << d.doc_id << '\t' << w1 << '\t'
                                                             << w2 << '\n';
    return 0;
}

int cmd_features(const std::string& dir, const std::string& preset_str, const std::string& kb_path,
                 const CommonOpts& common, std::ostream& out, std::ostream& err) {
    const auto preset = parse_preset(preset_str);
    if (!preset) {
        err << "error: unknown feature preset: " << preset_str << '\n';
        return 2;
    }
    std::optional<KnowledgeBase> kb;
    const bool wants_quality = *preset == FeaturePreset::Quality || *preset == FeaturePreset::All;
    if (wants_quality) {
        if (kb_path.empty()) {
            err << "error: preset " << preset_str << " requires --kb\n";
            return 2;
        }
        kb = load_kb(kb_path);
    }
    const Corpus corpus = load_corpus(dir, resolve_manifest(common.manifest));
    warn_skipped(corpus.skipped, "file", err);

    const FeatureBuild build = compute_features(
        corpus, *preset, kb ? &*kb : nullptr, resolve_stopwords(common.stopword_path), common.jobs);
    warn_skipped(build.skipped, "degenerate document", err);

    OutputTarget target(common.out_path, out);
    target.stream() << "doc_id";
    for (const auto& name : build.dataset.feature_names) target.stream() << '\t' << name;
    target.stream() << "\tlabel\n";
    for (const auto& row : build.dataset.rows) {
        target.stream() << row.doc_id;
        for (const double v : row.values) target.stream() << '\t' << tsv::format_double(v);
        target.stream() << '\t' << (row.label ? label_name(*row.label) : "") << '\n';
    }
    return 0;
}

struct SvmCorpusData {
    std::vector<TokenStream> streams;
    std::vector<bool> labels;
};

SvmCorpusData load_svm_corpus(const std::string& dir, const CommonOpts& common,
                              std::ostream& err) {
    const Corpus corpus = load_corpus(dir, resolve_manifest(common.manifest));
    warn_skipped(corpus.skipped, "file", err);
    SvmCorpusData data;
    std::size_t unlabeled = 0;
    for (const auto& doc : corpus.docs) {
        if (!doc.label) {
            ++unlabeled;
            continue;
        }
        data.streams.push_back(tokenize(doc.text, doc.id));
        data.labels.push_back(*doc.label == Label::High);
    }
    if (unlabeled > 0) err << "warning: ignored " << unlabeled << " unlabeled documents\n";
    return data;
}

int cmd_train(const std::string& input, const std::string& model_kind,
              const std::string& preset_str, const std::string& model_out,
              const std::string& vocab_out, double test_fraction, std::uint64_t seed,
              const CommonOpts& common, std::ostream& err) {
    if (model_kind == "logistic") {
        Dataset table = labeled_rows(load_feature_table(input), err);
        if (!preset_str.empty()) {
            const auto preset = parse_preset(preset_str);
            if (!preset) {
                err << "error: unknown feature preset: " << preset_str << '\n';
                return 2;
            }
            table = select_features(table, *preset);
        }
        Dataset train = table;
        if (test_fraction > 0.0) train = train_test_split(table, test_fraction, seed).first;
        FitDiagnostics diag;
        LinearModel model = fit_logistic(train, LogisticConfig{}, &diag);
        model.seed = seed;
        for (const auto& name : diag.dropped_features)
            err << "warning: constant feature dropped: " << name << '\n';
        save_model(model, model_out);
        err << "logistic: " << diag.iterations << " iterations, grad "
            << tsv::format_double(diag.final_grad_norm) << ", "
            << (diag.converged ? "converged" : "stopped") << ", " << train.rows.size()
            << " training rows\n";
        return 0;
    }
    if (model_kind == "svm-bow") {
        if (!fs::is_directory(input)) {
            err << "error: corpus directory not found: " << input << '\n';
            return 2;
        }
        const SvmCorpusData data = load_svm_corpus(input, common, err);
        if (data.streams.size() < 2)
            throw TooSmall("svm-bow training needs at least two labeled documents");
        const auto train_idx = test_fraction > 0.0
                                   ? split_indices(data.streams.size(), test_fraction, seed).first
                                   : all_indices(data.streams.size());

        std::vector<TokenStream> train_streams;
        train_streams.reserve(train_idx.size());
        for (const std::size_t i : train_idx) train_streams.push_back(data.streams[i]);
        const TfidfVocab vocab = tfidf_fit(train_streams);

        std::vector<SparseExample> examples;
        examples.reserve(train_idx.size());
        for (const std::size_t i : train_idx)
            examples.push_back({tfidf_transform(vocab, data.streams[i]), data.labels[i]});

        std::vector<std::string> names;
        names.reserve(vocab.terms.size());
        for (const auto& [term, info] : vocab.terms) names.push_back(term);

        SvmConfig config;
        config.seed = seed;
        const LinearModel model = fit_svm_sgd(examples, vocab.terms.size(), config, names);
        save_model(model, model_out);
        save_tfidf_vocab(vocab, vocab_out);
        err << "svm: " << vocab.terms.size() << " terms, " << train_idx.size()
            << " training documents\n";
        return 0;
    }
    err << "error: unknown model kind: " << model_kind << " (use logistic or svm-bow)\n";
    return 2;
}

int cmd_evaluate(const std::string& input, const std::string& model_path,
                 const std::string& vocab_path, double test_fraction, std::uint64_t seed,
                 const std::string& roc_out, const CommonOpts& common, std::ostream& out,
                 std::ostream& err) {
    const LinearModel model = load_model(model_path);

    std::vector<double> scores;
    std::vector<bool> labels;
    if (model.kind == ModelKind::Logistic) {
        const Dataset table = labeled_rows(load_feature_table(input), err);
        const Dataset selected = select_columns(table, model.feature_names);
        const auto eval_idx = test_fraction > 0.0
                                  ? split_indices(selected.rows.size(), test_fraction, seed).second
                                  : all_indices(selected.rows.size());
        for (const std::size_t i : eval_idx) {
            scores.push_back(predict_score(model, selected.rows[i]));
            labels.push_back(*selected.rows[i].label == Label::High);
        }
    } else {
        if (vocab_path.empty()) {
            err << "error: svm model evaluation requires --vocab\n";
            return 2;
        }
        if (!fs::is_directory(input)) {
            err << "error: corpus directory not found: " << input << '\n';
            return 2;
        }
        const TfidfVocab vocab = load_tfidf_vocab(vocab_path);
        const SvmCorpusData data = load_svm_corpus(input, common, err);
        const auto eval_idx = test_fraction > 0.0
                                  ? split_indices(data.streams.size(), test_fraction, seed).second
                                  : all_indices(data.streams.size());
        for (const std::size_t i : eval_idx) {
            scores.push_back(predict_margin(model, tfidf_transform(vocab, data.streams[i])));
            labels.push_back(data.labels[i]);
        }
    }

    const EvalReport report = roc_auc(scores, labels);
    if (!roc_out.empty()) {
        std::ofstream roc(roc_out, std::ios::binary);
        if (!roc) throw Error("cannot open " + roc_out + " for writing");
        roc << "fpr\ttpr\n";
        for (const auto& p : report.roc_points)
            roc << tsv::format_double(p.fpr) << '\t' << tsv::format_double(p.tpr) << '\n';
    }

    OutputTarget target(common.out_path, out);
    target.stream() << "classifier\tfeatures\tn\tauc\n";
    target.stream() << model_kind_name(model.kind) << '\t'
                    << (model.kind == ModelKind::Logistic ? features_label(model.feature_names)
                                                          : "tf-idf bag-of-words")
                    << '\t' << scores.size() << '\t' << tsv::format_double(report.auc) << '\n';
    return 0;
}

std::vector<double> read_score_column(const std::string& path, const std::string& column) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    std::size_t col = 0;
    bool saw_header = false;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            const auto it = std::find(fields.begin(), fields.end(), column);
            if (it == fields.end()) throw FormatError(path, lineno, "no column named " + column);
            col = static_cast<std::size_t>(it - fields.begin());
            saw_header = true;
            continue;
        }
        if (col >= fields.size()) throw FormatError(path, lineno, "row has too few fields");
        try {
            values.push_back(tsv::parse_double(fields[col]));
        } catch (const Error& e) {
            throw FormatError(path, lineno, e.what());
        }
    }
    if (!saw_header) throw FormatError(path, lineno == 0 ? 1 : lineno, "missing header row");
    return values;
}

int cmd_compare(const std::string& path_a, const std::string& path_b, const std::string& column,
                const CommonOpts& common, std::ostream& out) {
    const std::vector<double> a = read_score_column(path_a, column);
    const std::vector<double> b = read_score_column(path_b, column);
    const TTestResult r = welch_t_test(a, b);

    OutputTarget target(common.out_path, out);
    std::ostream& os = target.stream();
    os << "metric\t" << path_a << '\t' << path_b << '\n';
    os << "mean\t" << tsv::format_double(r.a.mean) << '\t' << tsv::format_double(r.b.mean) << '\n';
    os << "variance\t" << tsv::format_double(r.a.variance) << '\t'
       << tsv::format_double(r.b.variance) << '\n';
    os << "observations\t" << r.a.n << '\t' << r.b.n << '\n';
    os << "df\t" << tsv::format_double(r.df) << '\n';
    os << "t_stat\t" << tsv::format_double(r.statistic) << '\n';
    os << "p_one_tail\t" << tsv::format_double(r.p_one_tail) << '\n';
    os << "t_critical_one_tail\t" << tsv::format_double(r.t_critical_one_tail) << '\n';
    os << "p_two_tail\t" << tsv::format_double(r.p_two_tail) << '\n';
    os << "t_critical_two_tail\t" << tsv::format_double(r.t_critical_two_tail) << '\n';
    return 0;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"document quality assessment from collocation knowledge"};
    app.name("docq");
    app.require_subcommand(1);
    app.set_version_flag("--version", "docq 1.0.0");

    CommonOpts common;
    std::string dir, kb_path, kb_out, name, input, model_path, vocab_path, roc_out;
    std::string feat_preset = "all";
    std::string train_preset;
    std::string model_kind = "logistic";
    std::string model_out = "model.tsv";
    std::string vocab_out = "vocab.tsv";
    std::string column = "ads";
    std::string compare_a, compare_b;
    std::uint64_t min_freq = 5, seed = 42;
    double test_fraction = 0.2;

    const auto add_common = [&](CLI::App* sub, bool with_stopwords = true) {
        if (with_stopwords)
            sub->add_option("--stopwords", common.stopword_path, "stopword list file");
        sub->add_option("--manifest", common.manifest, "corpus manifest TSV");
        sub->add_option("-o,--out", common.out_path, "output file (default stdout)");
        sub->add_option("-j,--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);
    };

    CLI::App* sc_build = app.add_subcommand("build-kb", "build a collocation knowledge base");
    sc_build->add_option("dir", dir, "corpus directory")->required();
    sc_build->add_option("--min-freq", min_freq, "minimum bigram frequency");
    sc_build->add_option("--name", name, "corpus name recorded in the file");
    sc_build->add_option("--stopwords", common.stopword_path, "stopword list file");
    sc_build->add_option("--manifest", common.manifest, "corpus manifest TSV");
    sc_build->add_option("-o,--out", kb_out, "knowledge base file")->required();
    sc_build->add_option("-j,--jobs", common.jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* sc_score = app.add_subcommand("score", "quality-score documents against a kb");
    sc_score->add_option("dir", dir, "corpus directory")->required();
    sc_score->add_option("--kb", kb_path, "knowledge base file")->required();
    add_common(sc_score);

    CLI::App* sc_read = app.add_subcommand("readability", "readability metrics per document");
    sc_read->add_option("dir", dir, "corpus directory")->required();
    add_common(sc_read, false);

    CLI::App* sc_coll = app.add_subcommand("collocations", "per-document collocation pairs");
    sc_coll->add_option("dir", dir, "corpus directory")->required();
    add_common(sc_coll);

    CLI::App* sc_feat = app.add_subcommand("features", "feature table for classification");
    sc_feat->add_option("dir", dir, "corpus directory")->required();
    sc_feat->add_option("--preset", feat_preset, "readability|readability+counts|quality|all");
    sc_feat->add_option("--kb", kb_path, "knowledge base (for quality presets)");
    add_common(sc_feat);

    CLI::App* sc_train = app.add_subcommand("train", "fit a classifier");
    sc_train->add_option("input", input, "feature table (logistic) or corpus dir (svm-bow)")
        ->required();
    sc_train->add_option("--model", model_kind, "logistic|svm-bow");
    sc_train->add_option("--features", train_preset, "feature preset to select (logistic)");
    sc_train->add_option("--test-fraction", test_fraction, "held-out fraction (0 trains on all)");
    sc_train->add_option("--seed", seed, "rng seed");
    sc_train->add_option("-o,--out", model_out, "model file");
    sc_train->add_option("--vocab-out", vocab_out, "vocabulary file (svm-bow)");
    sc_train->add_option("--stopwords", common.stopword_path, "stopword list file");
    sc_train->add_option("--manifest", common.manifest, "corpus manifest TSV (svm-bow)");

    CLI::App* sc_eval = app.add_subcommand("evaluate", "AUC of a model on held-out data");
    sc_eval->add_option("input", input, "feature table (logistic) or corpus dir (svm)")
        ->required();
    sc_eval->add_option("--model", model_path, "model file")->required();
    sc_eval->add_option("--vocab", vocab_path, "vocabulary file (svm)");
    sc_eval->add_option("--test-fraction", test_fraction,
                        "evaluate the held-out split (0 evaluates all rows)");
    sc_eval->add_option("--seed", seed, "rng seed used at training time");
    sc_eval->add_option("--roc-out", roc_out, "write ROC points to a file");
    add_common(sc_eval);

    CLI::App* sc_cmp = app.add_subcommand("compare", "Welch t-test between two score files");
    sc_cmp->add_option("a", compare_a, "first score TSV")->required();
    sc_cmp->add_option("b", compare_b, "second score TSV")->required();
    sc_cmp->add_option("--column", column, "column to compare");
    sc_cmp->add_option("-o,--out", common.out_path, "output file (default stdout)");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::CallForVersion&) {
        out << "docq 1.0.0\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        const bool needs_dir = sc_build->parsed() || sc_score->parsed() || sc_read->parsed() ||
                               sc_coll->parsed() || sc_feat->parsed();
        if (needs_dir && !fs::is_directory(dir)) {
            err << "error: corpus directory not found: " << dir << '\n';
            return 2;
        }

        if (sc_build->parsed()) return cmd_build_kb(dir, kb_out, min_freq, name, common, err);
        if (sc_score->parsed()) return cmd_score(dir, kb_path, common, out, err);
        if (sc_read->parsed()) return cmd_readability(dir, common, out, err);
        if (sc_coll->parsed()) return cmd_collocations(dir, common, out, err);
        if (sc_feat->parsed()) return cmd_features(dir, feat_preset, kb_path, common, out, err);
        if (sc_train->parsed())
            return cmd_train(input, model_kind, train_preset, model_out, vocab_out, test_fraction,
                             seed, common, err);
        if (sc_eval->parsed())
            return cmd_evaluate(input, model_path, vocab_path, test_fraction, seed, roc_out,
                                common, out, err);
        if (sc_cmp->parsed()) return cmd_compare(compare_a, compare_b, column, common, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace docq
