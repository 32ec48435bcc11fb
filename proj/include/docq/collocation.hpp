#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "docq/text.hpp"

namespace docq {

using Bigram = std::pair<std::string, std::string>;

struct BigramHash {
    std::size_t operator()(const Bigram& b) const {
        const std::size_t h1 = std::hash<std::string>{}(b.first);
        const std::size_t h2 = std::hash<std::string>{}(b.second);
        return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
    }
};

/// Adjacent-pair counts over a normalized corpus. total is the number of
/// bigram positions, so sum(joint) == total and every margin dominates the
/// joint counts it covers.
struct BigramCounts {
    std::unordered_map<Bigram, std::uint64_t, BigramHash> joint;
    std::unordered_map<std::string, std::uint64_t> left_margin;
    std::unordered_map<std::string, std::uint64_t> right_margin;
    std::uint64_t total = 0;

    void add_stream(const TokenStream& stream);
    /// Merge is associative and commutative; partial counts from parallel
    /// workers combine into the same result as a sequential pass.
    void merge(const BigramCounts& other);
};

/// Pairs never span stream (document) boundaries.
BigramCounts count_bigrams(const std::vector<TokenStream>& streams);

/// 2x2 table for one pair: (w1,w2), (w1,~w2), (~w1,w2), (~w1,~w2).
struct Contingency {
    std::uint64_t n11 = 0, n12 = 0, n21 = 0, n22 = 0;
};

/// Throws MissingPair when the pair has no joint count.
Contingency contingency(const Bigram& pair, const BigramCounts& counts);

/// Dunning log-likelihood ratio, 2 * sum n_ij * ln(n_ij/e_ij) over the four
/// cells with expectations from the margins. Zero cells contribute zero;
/// the result is floored at 0 to absorb float noise.
double llr(const Contingency& c);

struct CollocationRecord {
    std::string word1, word2;
    std::uint64_t count = 0;
    double llr = 0;
};

/// One record per distinct pair with count >= min_freq, sorted by llr
/// descending, ties by (word1, word2).
std::vector<CollocationRecord> extract_collocations(const BigramCounts& counts,
                                                    std::uint64_t min_freq);
std::vector<CollocationRecord> extract_collocations(const std::vector<TokenStream>& streams,
                                                    std::uint64_t min_freq);

}  // namespace docq
