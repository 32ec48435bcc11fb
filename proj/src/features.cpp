#include "docq/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "docq/error.hpp"
#include "docq/parallel.hpp"
#include "docq/tsv.hpp"

namespace docq {

const std::array<std::string, 2> kQualityFeatureNames = {"ads", "adsn"};

std::string preset_name(FeaturePreset preset) {
    switch (preset) {
        case FeaturePreset::Readability: return "readability";
        case FeaturePreset::ReadabilityCounts: return "readability+counts";
        case FeaturePreset::Quality: return "quality";
        case FeaturePreset::All: return "all";
    }
    return "?";
}

std::optional<FeaturePreset> parse_preset(const std::string& name) {
    if (name == "readability") return FeaturePreset::Readability;
    if (name == "readability+counts") return FeaturePreset::ReadabilityCounts;
    if (name == "quality") return FeaturePreset::Quality;
    if (name == "all") return FeaturePreset::All;
    return std::nullopt;
}

std::vector<std::string> preset_feature_names(FeaturePreset preset) {
    std::vector<std::string> names;
    if (preset != FeaturePreset::Quality)
        names.assign(kReadabilityFeatureNames.begin(), kReadabilityFeatureNames.end());
    if (preset == FeaturePreset::ReadabilityCounts || preset == FeaturePreset::All)
        names.insert(names.end(), kCountFeatureNames.begin(), kCountFeatureNames.end());
    if (preset == FeaturePreset::Quality || preset == FeaturePreset::All)
        names.insert(names.end(), kQualityFeatureNames.begin(), kQualityFeatureNames.end());
    return names;
}

namespace {

void append_readability(std::vector<double>& values, const ReadabilityReport& r,
                        bool with_counts) {
    values.insert(values.end(),
                  {r.flesch_reading_ease, r.flesch_kincaid_grade, r.gunning_fog, r.smog,
                   r.smog_index, r.ari, r.coleman_liau});
    if (with_counts) {
        const TextStats& s = r.stats;
        values.insert(values.end(),
                      {static_cast<double>(s.characters), static_cast<double>(s.syllables),
                       static_cast<double>(s.words), static_cast<double>(s.complex_words),
                       static_cast<double>(s.sentences), static_cast<double>(s.commas)});
    }
}

}  // namespace

FeatureBuild compute_features(const Corpus& corpus, FeaturePreset preset, const KnowledgeBase* kb,
                              const Stopwords& stopwords, unsigned jobs) {
    const bool wants_quality = preset == FeaturePreset::Quality || preset == FeaturePreset::All;
    const bool wants_readability = preset != FeaturePreset::Quality;
    const bool wants_counts =
        preset == FeaturePreset::ReadabilityCounts || preset == FeaturePreset::All;
    if (wants_quality && kb == nullptr)
        throw Error("feature preset " + preset_name(preset) + " requires a knowledge base");

    FeatureBuild build;
    build.dataset.feature_names = preset_feature_names(preset);

    std::vector<std::optional<FeatureVector>> rows(corpus.docs.size());
    parallel_for(corpus.docs.size(), jobs, [&](std::size_t i) {
        const Document& doc = corpus.docs[i];
        FeatureVector fv;
        fv.doc_id = doc.id;
        fv.label = doc.label;
        if (wants_readability) {
            ReadabilityReport report;
            try {
                report = readability_report(text_stats(doc.text));
            } catch (const DegenerateText&) {
                return;  // row stays empty; recorded as skipped below
            }
            append_readability(fv.values, report, wants_counts);
        }
        if (wants_quality) {
            const QualityScore q = score_document(doc, *kb, stopwords);
            fv.values.push_back(q.ads);
            fv.values.push_back(q.adsn);
        }
        for (const double v : fv.values)
            if (!std::isfinite(v)) throw NonFinite("non-finite feature for doc " + doc.id);
        rows[i] = std::move(fv);
    });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i])
            build.dataset.rows.push_back(std::move(*rows[i]));
        else
            build.skipped.push_back(corpus.docs[i].id);
    }
    return build;
}

Dataset select_features(const Dataset& from, FeaturePreset preset) {
    Dataset out;
    out.feature_names = preset_feature_names(preset);
    std::vector<std::size_t> cols;
    cols.reserve(out.feature_names.size());
    for (const auto& name : out.feature_names) {
        const auto it = std::find(from.feature_names.begin(), from.feature_names.end(), name);
        if (it == from.feature_names.end())
            throw Error("feature table lacks column " + name + " needed by preset " +
                        preset_name(preset));
        cols.push_back(static_cast<std::size_t>(it - from.feature_names.begin()));
    }
    out.rows.reserve(from.rows.size());
    for (const auto& row : from.rows) {
        FeatureVector fv;
        fv.doc_id = row.doc_id;
        fv.label = row.label;
        fv.values.reserve(cols.size());
        for (const std::size_t c : cols) fv.values.push_back(row.values.at(c));
        out.rows.push_back(std::move(fv));
    }
    return out;
}

void save_feature_table(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "doc_id";
    for (const auto& name : dataset.feature_names) out << '\t' << name;
    out << "\tlabel\n";
    for (const auto& row : dataset.rows) {
        if (row.values.size() != dataset.feature_names.size())
            throw DimensionMismatch("feature row " + row.doc_id + " has " +
                                    std::to_string(row.values.size()) + " values, expected " +
                                    std::to_string(dataset.feature_names.size()));
        out << row.doc_id;
        for (const double v : row.values) out << '\t' << tsv::format_double(v);
        out << '\t' << (row.label ? label_name(*row.label) : "") << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

Dataset load_feature_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const std::string file = path.string();

    Dataset dataset;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            if (fields.size() < 3 || fields.front() != "doc_id" || fields.back() != "label")
                throw FormatError(file, lineno, "expected header doc_id\t<features...>\tlabel");
            dataset.feature_names.assign(fields.begin() + 1, fields.end() - 1);
            saw_header = true;
            continue;
        }
        if (fields.size() != dataset.feature_names.size() + 2)
            throw FormatError(file, lineno,
                              "expected " + std::to_string(dataset.feature_names.size() + 2) +
                                  " fields, got " + std::to_string(fields.size()));
        FeatureVector fv;
        fv.doc_id = fields.front();
        for (std::size_t i = 1; i + 1 < fields.size(); ++i) {
            double v = 0;
            try {
                v = tsv::parse_double(fields[i]);
            } catch (const Error& e) {
                throw FormatError(file, lineno, e.what());
            }
            if (!std::isfinite(v)) throw FormatError(file, lineno, "non-finite feature value");
            fv.values.push_back(v);
        }
        if (!fields.back().empty()) {
            const auto label = parse_label(fields.back());
            if (!label) throw FormatError(file, lineno, "bad label: " + fields.back());
            fv.label = *label;
        }
        dataset.rows.push_back(std::move(fv));
    }
    if (!saw_header) throw FormatError(file, lineno == 0 ? 1 : lineno, "missing header row");
    return dataset;
}

}  // namespace docq
