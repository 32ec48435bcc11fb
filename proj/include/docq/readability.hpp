#pragma once

#include <array>
#include <string>

#include "docq/text.hpp"

namespace docq {

/// The seven classical readability scores, plus the counts they came from.
/// Raw formula values are reported; nothing is clamped to grade ranges.
struct ReadabilityReport {
    double flesch_reading_ease = 0;
    double flesch_kincaid_grade = 0;
    double gunning_fog = 0;
    double smog = 0;        // 1969 regression formula
    double smog_index = 0;  // simple-count variant
    double ari = 0;
    double coleman_liau = 0;
    TextStats stats;
};

inline constexpr std::array<const char*, 7> kReadabilityFeatureNames = {
    "flesch_reading_ease", "flesch_kincaid_grade", "gunning_fog", "smog",
    "smog_index",          "ari",                  "coleman_liau"};

inline constexpr std::array<const char*, 6> kCountFeatureNames = {
    "characters", "syllables", "words", "complex_words", "sentences", "commas"};

/// Throws DegenerateText when words or sentences is zero.
ReadabilityReport readability_report(const TextStats& stats);

}  // namespace docq
