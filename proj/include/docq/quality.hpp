#pragma once

#include <cstdint>
#include <string>

#include "docq/corpus.hpp"
#include "docq/knowledge_base.hpp"
#include "docq/text.hpp"

namespace docq {

struct QualityScore {
    double ads = 0;          // average score of matched collocation types
    double adsn = 0;         // matched_sum over total word count
    std::uint64_t m = 0;     // distinct collocation types found in the KB
    std::uint64_t w = 0;     // token count before stopword removal
    double matched_sum = 0;  // sum of llr over the m matched types
};

struct AdsResult {
    double ads = 0;
    std::uint64_t m = 0;
    double matched_sum = 0;
};

/// Average score over the document's distinct pairs present in the KB;
/// 0 when nothing matches.
AdsResult ads(const DocCollocations& doc, const KnowledgeBase& kb);

/// Length-normalized variant: matched_sum / w, 0 when w = 0.
double adsn(const DocCollocations& doc, const KnowledgeBase& kb, std::uint64_t w);

/// tokenize → normalize → collocation types → both measures. w counts the
/// raw tokens, before stopword removal.
QualityScore score_document(const Document& doc, const KnowledgeBase& kb,
                            const Stopwords& stopwords);
QualityScore score_text(const std::string& text, const KnowledgeBase& kb,
                        const Stopwords& stopwords);

}  // namespace docq
