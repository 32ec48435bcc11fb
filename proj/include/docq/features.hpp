#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "docq/corpus.hpp"
#include "docq/knowledge_base.hpp"
#include "docq/quality.hpp"
#include "docq/readability.hpp"

namespace docq {

struct FeatureVector {
    std::string doc_id;
    std::vector<double> values;
    std::optional<Label> label;
};

struct Dataset {
    std::vector<std::string> feature_names;
    std::vector<FeatureVector> rows;
};

enum class FeaturePreset {
    Readability,        // the 7 readability formulas
    ReadabilityCounts,  // + the 6 raw counts
    Quality,            // ads, adsn
    All,                // all 15
};

extern const std::array<std::string, 2> kQualityFeatureNames;

std::string preset_name(FeaturePreset preset);
std::optional<FeaturePreset> parse_preset(const std::string& name);
std::vector<std::string> preset_feature_names(FeaturePreset preset);

struct FeatureBuild {
    Dataset dataset;
    std::vector<std::string> skipped;  // degenerate docs (no words/sentences)
};

/// One row per document, ordered by id. Quality presets need a KB; passing
/// none with such a preset is a caller bug and throws Error.
FeatureBuild compute_features(const Corpus& corpus, FeaturePreset preset, const KnowledgeBase* kb,
                              const Stopwords& stopwords, unsigned jobs = 1);

/// Columns of `from` re-selected to this preset's names (order preserved).
Dataset select_features(const Dataset& from, FeaturePreset preset);

void save_feature_table(const Dataset& dataset, const std::filesystem::path& path);
Dataset load_feature_table(const std::filesystem::path& path);

}  // namespace docq
