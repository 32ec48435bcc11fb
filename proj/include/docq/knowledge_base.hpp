#pragma once

#include <cstdint>
#include <ctime>
#include <filesystem>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "docq/collocation.hpp"
#include "docq/corpus.hpp"
#include "docq/text.hpp"

namespace docq {

struct KbEntry {
    std::uint64_t count = 0;
    double llr = 0;
};

struct KbMeta {
    std::string corpus_name;
    std::uint64_t n_documents = 0;
    std::uint64_t n_bigram_positions = 0;
    std::uint64_t min_freq = 1;
    std::uint64_t n_skipped = 0;  // unreadable files skipped at build
    std::time_t built_at = 0;     // in-memory only, not serialized
};

/// The main-corpus collocation scores. Write-once: built or loaded, then
/// shared read-only across threads.
class KnowledgeBase {
  public:
    using EntryMap = std::unordered_map<Bigram, KbEntry, BigramHash>;

    KnowledgeBase() = default;
    KnowledgeBase(EntryMap entries, KbMeta meta)
        : entries_(std::move(entries)), meta_(std::move(meta)) {}

    const EntryMap& entries() const { return entries_; }
    const KbMeta& meta() const { return meta_; }
    std::size_t size() const { return entries_.size(); }

    /// Exact-match score for a lowercase pair; absent pairs report nothing
    /// (absent is not zero: unmatched pairs are ignored by the measures).
    std::optional<double> lookup(const std::string& word1, const std::string& word2) const {
        const auto it = entries_.find(Bigram{word1, word2});
        if (it == entries_.end()) return std::nullopt;
        return it->second.llr;
    }

  private:
    EntryMap entries_;
    KbMeta meta_;
};

struct BuildKbOptions {
    std::uint64_t min_freq = 5;
    std::string corpus_name;  // defaults to the directory name
    std::optional<std::filesystem::path> manifest;
    unsigned jobs = 1;
};

/// Full knowledge-acquisition pass: tokenize, normalize, count bigrams,
/// score with llr. Throws EmptyCorpus if the directory has no readable
/// text files; unreadable files are skipped and counted in meta.
KnowledgeBase build_kb(const std::filesystem::path& corpus_dir, const Stopwords& stopwords,
                       const BuildKbOptions& options = {});

KnowledgeBase kb_from_records(std::span<const CollocationRecord> records, KbMeta meta);

/// TSV with meta comment lines, a `word1 word2 count llr` header and one
/// row per entry, sorted llr-descending. save(load(f)) is byte-identical;
/// scores survive the decimal round-trip bit-for-bit.
void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path);
KnowledgeBase load_kb(const std::filesystem::path& path);

/// Distinct normalized adjacent pairs of one document (types, not
/// instances). No frequency threshold is applied.
struct DocCollocations {
    std::string doc_id;
    std::set<Bigram> pairs;
};

DocCollocations doc_collocations(const Document& doc, const Stopwords& stopwords);

/// Per-document pair listing (TSV: doc_id, word1, word2), sorted.
void save_doc_collocations(std::span<const DocCollocations> docs,
                           const std::filesystem::path& path);
std::vector<DocCollocations> load_doc_collocations(const std::filesystem::path& path);

}  // namespace docq
