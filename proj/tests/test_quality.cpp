#include <doctest.h>

#include <random>

#include "docq/knowledge_base.hpp"
#include "docq/quality.hpp"
#include "support/synthetic.hpp"
#include "support/tmpdir.hpp"

using namespace docq;

namespace {

KnowledgeBase kb_of(std::vector<CollocationRecord> records) {
    return kb_from_records(records, KbMeta{"test", 1, 100, 1, 0, 0});
}

DocCollocations pairs_of(std::initializer_list<Bigram> pairs) {
    DocCollocations d;
    d.doc_id = "doc";
    for (const auto& p : pairs) d.pairs.insert(p);
    return d;
}

}  // namespace

TEST_SUITE("quality") {
    TEST_CASE("a single matched pair scores its kb value") {
        const KnowledgeBase kb = kb_of({{"source", "code", 10, 132755.20}});
        const AdsResult r = ads(pairs_of({{"source", "code"}}), kb);
        CHECK(r.ads == 132755.20);
        CHECK(r.m == 1);
        CHECK(r.matched_sum == 132755.20);
    }

    TEST_CASE("no matches yield zero by convention") {
        const KnowledgeBase kb = kb_of({{"source", "code", 10, 100.0}});
        const AdsResult r = ads(pairs_of({{"other", "pair"}}), kb);
        CHECK(r.ads == 0.0);
        CHECK(r.m == 0);
        CHECK(r.matched_sum == 0.0);
    }

    TEST_CASE("ads averages matched scores") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}, {"c", "d", 5, 20.0}});
        const AdsResult r = ads(pairs_of({{"a", "b"}, {"c", "d"}, {"e", "f"}}), kb);
        CHECK(r.ads == doctest::Approx(15.0).epsilon(1e-12));
        CHECK(r.m == 2);
        CHECK(r.matched_sum == doctest::Approx(30.0).epsilon(1e-12));
    }

    TEST_CASE("adsn divides by the word count") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}, {"c", "d", 5, 20.0}});
        const auto doc = pairs_of({{"a", "b"}, {"c", "d"}});
        CHECK(adsn(doc, kb, 3) == doctest::Approx(10.0).epsilon(1e-12));
        CHECK(adsn(doc, kb, 0) == 0.0);
    }

    TEST_CASE("score_document composes the walkthrough example") {
        const KnowledgeBase kb = kb_of({{"source", "code", 10, 132755.20}});
        const QualityScore q = score_text("source code", kb, {});
        CHECK(q.ads == 132755.20);
        CHECK(q.adsn == doctest::Approx(66377.60).epsilon(1e-12));
        CHECK(q.m == 1);
        CHECK(q.w == 2);
    }

    TEST_CASE("w counts raw tokens before stopword removal") {
        const KnowledgeBase kb = kb_of({{"source", "code", 10, 100.0}});
        const QualityScore q = score_text("the source code", kb, Stopwords{"the"});
        CHECK(q.w == 3);
        CHECK(q.m == 1);
        CHECK(q.adsn == doctest::Approx(100.0 / 3.0).epsilon(1e-12));
    }

    TEST_CASE("empty text scores zero everywhere") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}});
        const QualityScore q = score_text("", kb, {});
        CHECK(q.ads == 0.0);
        CHECK(q.adsn == 0.0);
        CHECK(q.m == 0);
        CHECK(q.w == 0);
        CHECK(q.matched_sum == 0.0);
    }

    TEST_CASE("duplicate pair instances count once") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}});
        const QualityScore once = score_text("a b", kb, {});
        const QualityScore thrice = score_text("a b a b a b", kb, {});
        CHECK(once.matched_sum == thrice.matched_sum);
        CHECK(once.m == thrice.m);
        CHECK(once.ads == thrice.ads);
    }

    TEST_CASE("duplicating text halves adsn exactly when the boundary cannot match") {
        // "seam" never appears in the kb, so text+text introduces no new
        // matched pair at the junction.
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}, {"b", "c", 5, 4.0}});
        const std::string text = "a b c seam";
        const QualityScore single = score_text(text, kb, {});
        const QualityScore doubled = score_text(text + " " + text, kb, {});
        CHECK(doubled.m == single.m);
        CHECK(doubled.matched_sum == single.matched_sum);
        CHECK(doubled.ads == single.ads);
        CHECK(doubled.w == 2 * single.w);
        CHECK(doubled.adsn == doctest::Approx(single.adsn / 2.0).epsilon(1e-12));
    }

    TEST_CASE("kb pairs absent from the document never change the score") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}});
        const KnowledgeBase bigger = kb_of({{"a", "b", 5, 10.0}, {"x", "y", 5, 99.0}});
        const QualityScore q1 = score_text("a b c", kb, {});
        const QualityScore q2 = score_text("a b c", bigger, {});
        CHECK(q1.ads == q2.ads);
        CHECK(q1.adsn == q2.adsn);
        CHECK(q1.m == q2.m);
    }

    TEST_CASE("adding a stronger matched pair raises ads") {
        const KnowledgeBase kb = kb_of({{"a", "b", 5, 10.0}});
        const KnowledgeBase richer = kb_of({{"a", "b", 5, 10.0}, {"b", "c", 5, 50.0}});
        const QualityScore q1 = score_text("a b c", kb, {});
        const QualityScore q2 = score_text("a b c", richer, {});
        CHECK(q2.ads > q1.ads);
    }

    TEST_CASE("algebraic identity adsn*w == ads*m on random documents") {
        std::mt19937_64 rng(61);
        testutil::TempDir tmp("quality");
        const auto kb_docs = synth::make_corpus(5, 15, synth::main_corpus_knobs());
        for (std::size_t i = 0; i < kb_docs.size(); ++i)
            tmp.write("d" + std::to_string(i) + ".txt", kb_docs[i]);
        BuildKbOptions options;
        options.min_freq = 2;
        const Stopwords sw = default_stopwords();
        const KnowledgeBase kb = build_kb(tmp.path(), sw, options);
        REQUIRE(kb.size() > 0);

        for (int round = 0; round < 100; ++round) {
            const std::string text = synth::make_doc(rng, synth::bench_high_knobs());
            const QualityScore q = score_text(text, kb, sw);
            const double lhs = q.adsn * static_cast<double>(q.w);
            const double rhs = q.ads * static_cast<double>(q.m);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
            CHECK(lhs == doctest::Approx(q.matched_sum).epsilon(1e-9));
            CHECK(q.ads >= 0.0);
            CHECK(q.adsn >= 0.0);
        }
    }
}
