#include "docq/quality.hpp"

namespace docq {

AdsResult ads(const DocCollocations& doc, const KnowledgeBase& kb) {
    AdsResult r;
    for (const auto& pair : doc.pairs) {
        if (const auto f = kb.lookup(pair.first, pair.second)) {
            ++r.m;
            r.matched_sum += *f;
        }
    }
    r.ads = r.m > 0 ? r.matched_sum / static_cast<double>(r.m) : 0.0;
    return r;
}

double adsn(const DocCollocations& doc, const KnowledgeBase& kb, std::uint64_t w) {
    if (w == 0) return 0.0;
    return ads(doc, kb).matched_sum / static_cast<double>(w);
}

QualityScore score_document(const Document& doc, const KnowledgeBase& kb,
                            const Stopwords& stopwords) {
    QualityScore score;
    score.w = tokenize(doc.text).tokens.size();
    const DocCollocations cols = doc_collocations(doc, stopwords);
    const AdsResult a = ads(cols, kb);
    score.ads = a.ads;
    score.m = a.m;
    score.matched_sum = a.matched_sum;
    score.adsn = score.w > 0 ? a.matched_sum / static_cast<double>(score.w) : 0.0;
    return score;
}

QualityScore score_text(const std::string& text, const KnowledgeBase& kb,
                        const Stopwords& stopwords) {
    return score_document(Document{"", text, std::nullopt}, kb, stopwords);
}

}  // namespace docq
