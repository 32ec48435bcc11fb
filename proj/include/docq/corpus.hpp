#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace docq {

enum class Label { High, Low };

std::string label_name(Label label);
std::optional<Label> parse_label(const std::string& text);

struct Document {
    std::string id;  // relative path, DOI, or manifest-assigned id
    std::string text;
    std::optional<Label> label;
};

struct Corpus {
    std::vector<Document> docs;         // sorted by id
    std::vector<std::string> skipped;   // unreadable files (skip-and-warn)
};

/// Loads every .txt file under `dir` (recursive); document id is the
/// relative path. When a manifest is given (TSV: path, id, optional label
/// High/Low) it defines the corpus instead, with paths resolved against
/// `dir`. Unreadable files are skipped and reported, not fatal. Throws
/// EmptyCorpus when nothing could be loaded.
Corpus load_corpus(const std::filesystem::path& dir,
                   const std::optional<std::filesystem::path>& manifest = std::nullopt);

}  // namespace docq
