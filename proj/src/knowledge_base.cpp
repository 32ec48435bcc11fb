#include "docq/knowledge_base.hpp"

#include <algorithm>
#include <fstream>

#include "docq/error.hpp"
#include "docq/parallel.hpp"
#include "docq/tsv.hpp"

namespace docq {

namespace {

TokenStream normalized_stream(const Document& doc, const Stopwords& stopwords) {
    return normalize(tokenize(doc.text, doc.id), stopwords);
}

}  // namespace

KnowledgeBase build_kb(const std::filesystem::path& corpus_dir, const Stopwords& stopwords,
                       const BuildKbOptions& options) {
    const Corpus corpus = load_corpus(corpus_dir, options.manifest);

    std::vector<BigramCounts> partial(corpus.docs.size());
    parallel_for(corpus.docs.size(), options.jobs, [&](std::size_t i) {
        partial[i].add_stream(normalized_stream(corpus.docs[i], stopwords));
    });
    BigramCounts counts;
    for (const auto& p : partial) counts.merge(p);

    KbMeta meta;
    meta.corpus_name =
        options.corpus_name.empty() ? corpus_dir.filename().string() : options.corpus_name;
    meta.n_documents = corpus.docs.size();
    meta.n_bigram_positions = counts.total;
    meta.min_freq = options.min_freq;
    meta.n_skipped = corpus.skipped.size();
    meta.built_at = std::time(nullptr);

    return kb_from_records(extract_collocations(counts, options.min_freq), std::move(meta));
}

KnowledgeBase kb_from_records(std::span<const CollocationRecord> records, KbMeta meta) {
    KnowledgeBase::EntryMap entries;
    entries.reserve(records.size());
    for (const auto& r : records)
        entries.emplace(Bigram{r.word1, r.word2}, KbEntry{r.count, r.llr});
    return KnowledgeBase(std::move(entries), std::move(meta));
}

void save_kb(const KnowledgeBase& kb, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");

    const KbMeta& m = kb.meta();
    // built_at stays in memory only: rebuilding from identical inputs must
    // yield a byte-identical file.
    out << "# docq-kb 1\n";
    out << "# corpus_name=" << m.corpus_name << '\n';
    out << "# n_documents=" << m.n_documents << '\n';
    out << "# n_bigram_positions=" << m.n_bigram_positions << '\n';
    out << "# min_freq=" << m.min_freq << '\n';
    out << "# n_skipped=" << m.n_skipped << '\n';
    out << "word1\tword2\tcount\tllr\n";

    std::vector<CollocationRecord> rows;
    rows.reserve(kb.size());
    for (const auto& [pair, entry] : kb.entries())
        rows.push_back({pair.first, pair.second, entry.count, entry.llr});
    std::sort(rows.begin(), rows.end(), [](const CollocationRecord& a, const CollocationRecord& b) {
        if (a.llr != b.llr) return a.llr > b.llr;
        if (a.word1 != b.word1) return a.word1 < b.word1;
        return a.word2 < b.word2;
    });
    for (const auto& r : rows) {
        out << r.word1 << '\t' << r.word2 << '\t' << r.count << '\t' << tsv::format_double(r.llr)
            << '\n';
    }
    if (!out) throw Error("write failed: " + path.string());
}

KnowledgeBase load_kb(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());

    KnowledgeBase::EntryMap entries;
    KbMeta meta;
    meta.min_freq = 0;
    const std::string file = path.string();

    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = line.substr(1);
            const auto eq = body.find('=');
            if (eq == std::string::npos) continue;  // banner / free-form comment
            std::string key = body.substr(0, eq);
            const std::string value = body.substr(eq + 1);
            while (!key.empty() && key.front() == ' ') key.erase(key.begin());
            try {
                if (key == "corpus_name")
                    meta.corpus_name = value;
                else if (key == "n_documents")
                    meta.n_documents = tsv::parse_uint(value);
                else if (key == "n_bigram_positions")
                    meta.n_bigram_positions = tsv::parse_uint(value);
                else if (key == "min_freq")
                    meta.min_freq = tsv::parse_uint(value);
                else if (key == "n_skipped")
                    meta.n_skipped = tsv::parse_uint(value);
            } catch (const Error&) {
                throw FormatError(file, lineno, "bad meta value for " + key + ": " + value);
            }
            continue;
        }
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"word1", "word2", "count", "llr"})
                throw FormatError(file, lineno, "expected header word1\tword2\tcount\tllr");
            saw_header = true;
            continue;
        }
        if (fields.size() != 4)
            throw FormatError(file, lineno,
                              "expected 4 fields, got " + std::to_string(fields.size()));
        if (fields[0].empty() || fields[1].empty())
            throw FormatError(file, lineno, "empty word field");
        KbEntry entry;
        try {
            entry.count = tsv::parse_uint(fields[2]);
            entry.llr = tsv::parse_double(fields[3]);
        } catch (const Error& e) {
            throw FormatError(file, lineno, e.what());
        }
        if (!entries.emplace(Bigram{fields[0], fields[1]}, entry).second)
            throw FormatError(file, lineno, "duplicate pair: " + fields[0] + " " + fields[1]);
    }
    if (!saw_header) throw FormatError(file, lineno == 0 ? 1 : lineno, "missing header row");
    return KnowledgeBase(std::move(entries), std::move(meta));
}

DocCollocations doc_collocations(const Document& doc, const Stopwords& stopwords) {
    DocCollocations out;
    out.doc_id = doc.id;
    const std::vector<std::string> tokens = normalize(tokenize(doc.text), stopwords).tokens;
    for (std::size_t i = 0; i + 1 < tokens.size(); ++i)
        out.pairs.insert(Bigram{tokens[i], tokens[i + 1]});
    return out;
}

void save_doc_collocations(std::span<const DocCollocations> docs,
                           const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "doc_id\tword1\tword2\n";
    std::vector<const DocCollocations*> sorted;
    sorted.reserve(docs.size());
    for (const auto& d : docs) sorted.push_back(&d);
    std::sort(sorted.begin(), sorted.end(),
              [](const DocCollocations* a, const DocCollocations* b) {
                  return a->doc_id < b->doc_id;
              });
    for (const DocCollocations* d : sorted)
        for (const auto& [w1, w2] : d->pairs) out << d->doc_id << '\t' << w1 << '\t' << w2 << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

std::vector<DocCollocations> load_doc_collocations(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const std::string file = path.string();

    std::vector<DocCollocations> out;
    std::unordered_map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"doc_id", "word1", "word2"})
                throw FormatError(file, lineno, "expected header doc_id\tword1\tword2");
            saw_header = true;
            continue;
        }
        if (fields.size() != 3)
            throw FormatError(file, lineno,
                              "expected 3 fields, got " + std::to_string(fields.size()));
        auto [it, fresh] = index.emplace(fields[0], out.size());
        if (fresh) out.push_back(DocCollocations{fields[0], {}});
        out[it->second].pairs.insert(Bigram{fields[1], fields[2]});
    }
    if (!saw_header) throw FormatError(file, lineno == 0 ? 1 : lineno, "missing header row");
    return out;
}

}  // namespace docq
