#include "docq/collocation.hpp"

#include <algorithm>
#include <cmath>

#include "docq/error.hpp"

namespace docq {

void BigramCounts::add_stream(const TokenStream& stream) {
    const auto& toks = stream.tokens;
    for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
        ++joint[{toks[i], toks[i + 1]}];
        ++left_margin[toks[i]];
        ++right_margin[toks[i + 1]];
        ++total;
    }
}

void BigramCounts::merge(const BigramCounts& other) {
    for (const auto& [pair, n] : other.joint) joint[pair] += n;
    for (const auto& [w, n] : other.left_margin) left_margin[w] += n;
    for (const auto& [w, n] : other.right_margin) right_margin[w] += n;
    total += other.total;
}

BigramCounts count_bigrams(const std::vector<TokenStream>& streams) {
    BigramCounts counts;
    for (const TokenStream& stream : streams) counts.add_stream(stream);
    return counts;
}

Contingency contingency(const Bigram& pair, const BigramCounts& counts) {
    const auto it = counts.joint.find(pair);
    if (it == counts.joint.end())
        throw MissingPair("pair not counted: (" + pair.first + ", " + pair.second + ")");
    Contingency c;
    c.n11 = it->second;
    c.n12 = counts.left_margin.at(pair.first) - c.n11;
    c.n21 = counts.right_margin.at(pair.second) - c.n11;
    c.n22 = counts.total - c.n11 - c.n12 - c.n21;
    return c;
}

double llr(const Contingency& c) {
    const double n11 = static_cast<double>(c.n11);
    const double n12 = static_cast<double>(c.n12);
    const double n21 = static_cast<double>(c.n21);
    const double n22 = static_cast<double>(c.n22);
    const double r1 = n11 + n12, r2 = n21 + n22;
    const double c1 = n11 + n21, c2 = n12 + n22;
    const double n = r1 + r2;
    double sum = 0;
    // n/e written as n*N/(row*col) so independent tables hit log(1) exactly
    auto term = [n](double cell, double row, double col) {
        return cell > 0 ? cell * std::log(cell * n / (row * col)) : 0.0;
    };
    sum += term(n11, r1, c1);
    sum += term(n12, r1, c2);
    sum += term(n21, r2, c1);
    sum += term(n22, r2, c2);
    return std::max(2.0 * sum, 0.0);
}

std::vector<CollocationRecord> extract_collocations(const BigramCounts& counts,
                                                    std::uint64_t min_freq) {
    std::vector<CollocationRecord> records;
    for (const auto& [pair, n] : counts.joint) {
        if (n < min_freq) continue;
        CollocationRecord rec;
        rec.word1 = pair.first;
        rec.word2 = pair.second;
        rec.count = n;
        rec.llr = llr(contingency(pair, counts));
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(),
              [](const CollocationRecord& a, const CollocationRecord& b) {
                  if (a.llr != b.llr) return a.llr > b.llr;
                  if (a.word1 != b.word1) return a.word1 < b.word1;
                  return a.word2 < b.word2;
              });
    return records;
}

std::vector<CollocationRecord> extract_collocations(const std::vector<TokenStream>& streams,
                                                    std::uint64_t min_freq) {
    return extract_collocations(count_bigrams(streams), min_freq);
}

}  // namespace docq
