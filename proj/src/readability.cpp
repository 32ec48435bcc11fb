#include "docq/readability.hpp"

#include <cmath>

#include "docq/error.hpp"

namespace docq {

ReadabilityReport readability_report(const TextStats& stats) {
    if (stats.words == 0 || stats.sentences == 0)
        throw DegenerateText("readability needs at least one word and one sentence");
    const double w = static_cast<double>(stats.words);
    const double s = static_cast<double>(stats.sentences);
    const double y = static_cast<double>(stats.syllables);
    const double c = static_cast<double>(stats.complex_words);
    const double l = static_cast<double>(stats.characters);

    ReadabilityReport r;
    r.stats = stats;
    r.flesch_reading_ease = 206.835 - 1.015 * (w / s) - 84.6 * (y / w);
    r.flesch_kincaid_grade = 0.39 * (w / s) + 11.8 * (y / w) - 15.59;
    r.gunning_fog = 0.4 * (w / s + 100.0 * c / w);
    r.smog = 1.0430 * std::sqrt(30.0 * c / s) + 3.1291;
    r.smog_index = std::sqrt(30.0 * c / s) + 3.0;
    r.ari = 4.71 * (l / w) + 0.5 * (w / s) - 21.43;
    r.coleman_liau = 0.0588 * (100.0 * l / w) - 0.296 * (100.0 * s / w) - 15.8;
    return r;
}

}  // namespace docq
