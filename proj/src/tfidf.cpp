#include "docq/tfidf.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <unordered_map>

#include "docq/error.hpp"
#include "docq/tsv.hpp"

namespace docq {

TfidfVocab tfidf_fit(std::span<const TokenStream> docs) {
    if (docs.empty()) throw EmptyCorpus("tfidf_fit: no documents");
    TfidfVocab vocab;
    vocab.n_docs = docs.size();
    for (const auto& doc : docs) {
        const std::set<std::string> seen(doc.tokens.begin(), doc.tokens.end());
        for (const auto& term : seen) ++vocab.terms[term].df;
    }
    std::uint32_t index = 0;
    for (auto& [term, info] : vocab.terms) info.index = index++;
    return vocab;
}

SparseVector tfidf_transform(const TfidfVocab& vocab, const TokenStream& doc) {
    std::unordered_map<std::string, std::uint64_t> tf;
    for (const auto& token : doc.tokens) ++tf[token];

    SparseVector vec;
    vec.reserve(tf.size());
    double norm2 = 0;
    for (const auto& [term, info] : vocab.terms) {  // map order keeps indices sorted
        const auto it = tf.find(term);
        if (it == tf.end()) continue;
        const double v = static_cast<double>(it->second) * vocab.idf(info);
        vec.emplace_back(info.index, v);
        norm2 += v * v;
    }
    if (norm2 > 0) {
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& [idx, v] : vec) v *= inv;
    }
    return vec;
}

void save_tfidf_vocab(const TfidfVocab& vocab, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    out << "# docq-vocab 1\n";
    out << "# n_docs=" << vocab.n_docs << '\n';
    out << "term\tindex\tdf\n";
    for (const auto& [term, info] : vocab.terms)
        out << term << '\t' << info.index << '\t' << info.df << '\n';
    if (!out) throw Error("write failed: " + path.string());
}

TfidfVocab load_tfidf_vocab(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    const std::string file = path.string();

    TfidfVocab vocab;
    std::string line;
    std::size_t lineno = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto eq = line.find('=');
            if (eq != std::string::npos && line.compare(0, eq, "# n_docs") == 0) {
                try {
                    vocab.n_docs = tsv::parse_uint(line.substr(eq + 1));
                } catch (const Error&) {
                    throw FormatError(file, lineno, "bad n_docs value");
                }
            }
            continue;
        }
        const std::vector<std::string> fields = tsv::split(line);
        if (!saw_header) {
            if (fields != std::vector<std::string>{"term", "index", "df"})
                throw FormatError(file, lineno, "expected header term\tindex\tdf");
            saw_header = true;
            continue;
        }
        if (fields.size() != 3)
            throw FormatError(file, lineno,
                              "expected 3 fields, got " + std::to_string(fields.size()));
        TermInfo info;
        try {
            info.index = static_cast<std::uint32_t>(tsv::parse_uint(fields[1]));
            info.df = tsv::parse_uint(fields[2]);
        } catch (const Error& e) {
            throw FormatError(file, lineno, e.what());
        }
        if (!vocab.terms.emplace(fields[0], info).second)
            throw FormatError(file, lineno, "duplicate term: " + fields[0]);
    }
    if (!saw_header) throw FormatError(file, lineno == 0 ? 1 : lineno, "missing header row");
    return vocab;
}

}  // namespace docq
