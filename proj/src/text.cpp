#include "docq/text.hpp"

#include <fstream>
#include <sstream>

#include "docq/error.hpp"

namespace docq {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

}  // namespace

bool is_space_cp(char32_t cp) {
    switch (cp) {
        case U'\t': case U'\n': case U'\v': case U'\f': case U'\r': case U' ':
        case 0x0085: case 0x00A0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

bool is_punct_cp(char32_t cp) {
    if (cp < 0x80) {
        return (cp >= U'!' && cp <= U'/') || (cp >= U':' && cp <= U'@') ||
               (cp >= U'[' && cp <= U'`') || (cp >= U'{' && cp <= U'~');
    }
    switch (cp) {
        case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
        case 0x2018: case 0x2019: case 0x201A: case 0x201C: case 0x201D: case 0x201E:
        case 0x2022: case 0x2026: case 0x2032: case 0x2033:
        case 0x2039: case 0x203A: case 0x2212:
            return true;
        default:
            return cp >= 0x2010 && cp <= 0x2015;  // hyphens and dashes
    }
}

bool is_word_cp(char32_t cp) {
    return !is_space_cp(cp) && !is_punct_cp(cp);
}

char32_t lower_cp(char32_t cp) {
    if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
    // Latin-1 supplement, excluding the multiplication sign.
    if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
    // Latin extended-A: upper/lower pairs alternate.
    if (cp >= 0x0100 && cp <= 0x0177 && (cp % 2) == 0) return cp + 1;
    if ((cp == 0x0179 || cp == 0x017B || cp == 0x017D)) return cp + 1;
    return cp;
}

std::u32string decode_utf8(const std::string& text) {
    std::u32string out;
    out.reserve(text.size());
    std::size_t i = 0;
    const auto n = text.size();
    while (i < n) {
        const unsigned char b0 = static_cast<unsigned char>(text[i]);
        char32_t cp = kReplacement;
        std::size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 >> 5) == 0x6 && i + 1 < n) {
            len = 2;
            cp = (b0 & 0x1F) << 6 | (text[i + 1] & 0x3F);
            if (cp < 0x80) cp = kReplacement;
        } else if ((b0 >> 4) == 0xE && i + 2 < n) {
            len = 3;
            cp = (b0 & 0x0F) << 12 | (text[i + 1] & 0x3F) << 6 | (text[i + 2] & 0x3F);
            if (cp < 0x800) cp = kReplacement;
        } else if ((b0 >> 3) == 0x1E && i + 3 < n) {
            len = 4;
            cp = (b0 & 0x07) << 18 | (text[i + 1] & 0x3F) << 12 |
                 (text[i + 2] & 0x3F) << 6 | (text[i + 3] & 0x3F);
            if (cp < 0x10000 || cp > 0x10FFFF) cp = kReplacement;
        }
        // continuation bytes must look like 10xxxxxx
        for (std::size_t k = 1; k < len; ++k) {
            if ((static_cast<unsigned char>(text[i + k]) >> 6) != 0x2) {
                cp = kReplacement;
                len = 1;
                break;
            }
        }
        out.push_back(cp);
        i += len;
    }
    return out;
}

std::string encode_utf8(const std::u32string& cps) {
    std::string out;
    out.reserve(cps.size());
    for (char32_t cp : cps) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

TokenStream tokenize(const std::string& text, std::string source_id) {
    TokenStream stream;
    stream.source_id = std::move(source_id);
    const std::u32string cps = decode_utf8(text);
    std::size_t i = 0;
    while (i < cps.size()) {
        while (i < cps.size() && is_space_cp(cps[i])) ++i;
        std::size_t begin = i;
        while (i < cps.size() && !is_space_cp(cps[i])) ++i;
        if (begin == i) continue;
        // strip leading/trailing punctuation
        std::size_t lo = begin, hi = i;
        while (lo < hi && is_punct_cp(cps[lo])) ++lo;
        while (hi > lo && is_punct_cp(cps[hi - 1])) --hi;
        if (lo == hi) continue;
        std::u32string tok;
        tok.reserve(hi - lo);
        for (std::size_t k = lo; k < hi; ++k) tok.push_back(lower_cp(cps[k]));
        stream.tokens.push_back(encode_utf8(tok));
    }
    return stream;
}

std::vector<std::string> split_sentences(const std::string& text) {
    const std::u32string cps = decode_utf8(text);
    std::vector<std::string> sentences;
    std::u32string current;
    auto flush = [&]() {
        std::size_t lo = 0, hi = current.size();
        while (lo < hi && is_space_cp(current[lo])) ++lo;
        while (hi > lo && is_space_cp(current[hi - 1])) --hi;
        if (hi > lo) sentences.push_back(encode_utf8(current.substr(lo, hi - lo)));
        current.clear();
    };
    for (std::size_t i = 0; i < cps.size(); ++i) {
        current.push_back(cps[i]);
        const char32_t cp = cps[i];
        if ((cp == U'.' || cp == U'!' || cp == U'?') &&
            (i + 1 == cps.size() || is_space_cp(cps[i + 1]))) {
            flush();
        }
    }
    flush();
    return sentences;
}

std::uint64_t count_syllables(const std::string& word) {
    const std::u32string cps = decode_utf8(word);
    auto is_vowel = [](char32_t c) {
        return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u' || c == U'y';
    };
    std::uint64_t groups = 0;
    bool in_group = false;
    for (char32_t c : cps) {
        const bool v = is_vowel(c);
        if (v && !in_group) ++groups;
        in_group = v;
    }
    if (!cps.empty() && cps.back() == U'e' && groups > 1) --groups;  // terminal silent e
    return groups == 0 ? 1 : groups;
}

std::vector<std::string> normalize(const std::vector<std::string>& tokens,
                                   const Stopwords& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const std::string& tok : tokens) {
        if (stopwords.count(tok)) continue;
        const std::u32string cps = decode_utf8(tok);
        bool all_punct = true;
        for (char32_t c : cps) {
            if (!is_punct_cp(c)) {
                all_punct = false;
                break;
            }
        }
        if (all_punct) continue;
        out.push_back(tok);
    }
    return out;
}

TokenStream normalize(const TokenStream& stream, const Stopwords& stopwords) {
    TokenStream out;
    out.source_id = stream.source_id;
    out.tokens = normalize(stream.tokens, stopwords);
    return out;
}

TextStats text_stats(const std::string& text) {
    TextStats st;
    const std::u32string cps = decode_utf8(text);
    for (char32_t c : cps) {
        const bool ascii_alnum =
            (c >= U'0' && c <= U'9') || (c >= U'A' && c <= U'Z') || (c >= U'a' && c <= U'z');
        if (ascii_alnum || (c >= 0x80 && is_word_cp(c))) ++st.characters;
        if (c == U',') ++st.commas;
    }
    const TokenStream stream = tokenize(text);
    st.words = stream.tokens.size();
    for (const std::string& tok : stream.tokens) {
        const std::uint64_t syl = count_syllables(tok);
        st.syllables += syl;
        if (syl >= 3) ++st.complex_words;
    }
    st.sentences = split_sentences(text).size();
    return st;
}

Stopwords parse_stopwords(const std::string& text) {
    Stopwords words;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.pop_back();
        std::size_t lo = line.find_first_not_of(" \t");
        if (lo == std::string::npos) continue;
        words.insert(line.substr(lo));
    }
    return words;
}

Stopwords load_stopwords(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open stopword file: " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stopwords(buf.str());
}

}  // namespace docq
