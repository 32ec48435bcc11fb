#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_set>
#include <vector>

namespace docq {

using Stopwords = std::unordered_set<std::string>;

/// Ordered word tokens of one document, lowercased, punctuation stripped.
struct TokenStream {
    std::vector<std::string> tokens;
    std::string source_id;
};

/// Surface counts of one document, taken on the raw (un-normalized) text.
/// A complex word is any token of three or more syllables.
struct TextStats {
    std::uint64_t characters = 0;  // letters and digits only
    std::uint64_t syllables = 0;
    std::uint64_t words = 0;
    std::uint64_t complex_words = 0;
    std::uint64_t sentences = 0;
    std::uint64_t commas = 0;
};

// Code point classification used by the tokenizer. Whitespace covers the
// Unicode space separators; punctuation covers ASCII punctuation plus the
// common typographic marks (curly quotes, dashes, ellipsis). Anything else
// is a word character.
bool is_space_cp(char32_t cp);
bool is_punct_cp(char32_t cp);
bool is_word_cp(char32_t cp);
char32_t lower_cp(char32_t cp);

std::u32string decode_utf8(const std::string& text);
std::string encode_utf8(const std::u32string& cps);

/// Splits on whitespace, strips leading/trailing punctuation from each
/// token, lowercases. Tokens that become empty are dropped; internal
/// punctuation (hyphens, apostrophes) is kept.
TokenStream tokenize(const std::string& text, std::string source_id = "");

/// Splits on '.', '!' or '?' followed by whitespace or end of text. A
/// trailing fragment with no terminator counts as one sentence. The
/// abbreviation handling is deliberately naive: "e.g. x" is two sentences.
std::vector<std::string> split_sentences(const std::string& text);

/// Heuristic count: maximal runs of vowels {a,e,i,o,u,y}, minus one for a
/// terminal 'e' unless that would reach zero, floored at 1.
std::uint64_t count_syllables(const std::string& word);

/// Drops stopword tokens and pure-punctuation tokens; survivors keep their
/// relative order and become adjacent.
std::vector<std::string> normalize(const std::vector<std::string>& tokens,
                                   const Stopwords& stopwords);
TokenStream normalize(const TokenStream& stream, const Stopwords& stopwords);

/// All six counts, computed on the raw token stream (no stopword removal).
TextStats text_stats(const std::string& text);

/// One lowercase word per line; blank lines ignored.
Stopwords load_stopwords(const std::filesystem::path& file);
Stopwords parse_stopwords(const std::string& text);

/// The bundled English stopword list (data/stopwords_en.txt, embedded at
/// build time).
const Stopwords& default_stopwords();

}  // namespace docq
