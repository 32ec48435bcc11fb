#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "docq/text.hpp"

namespace docq {

struct TermInfo {
    std::uint32_t index = 0;
    std::uint64_t df = 0;
};

struct TfidfVocab {
    std::map<std::string, TermInfo> terms;  // map order == index order
    std::uint64_t n_docs = 0;

    double idf(const TermInfo& t) const {
        return std::log((1.0 + static_cast<double>(n_docs)) / (1.0 + static_cast<double>(t.df))) +
               1.0;
    }
};

/// Sparse L2-normalized tf-idf vector; entries sorted by index.
using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

TfidfVocab tfidf_fit(std::span<const TokenStream> docs);
SparseVector tfidf_transform(const TfidfVocab& vocab, const TokenStream& doc);

void save_tfidf_vocab(const TfidfVocab& vocab, const std::filesystem::path& path);
TfidfVocab load_tfidf_vocab(const std::filesystem::path& path);

}  // namespace docq
