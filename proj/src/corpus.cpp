#include "docq/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "docq/error.hpp"
#include "docq/tsv.hpp"

namespace fs = std::filesystem;

namespace docq {

std::string label_name(Label label) {
    return label == Label::High ? "High" : "Low";
}

std::optional<Label> parse_label(const std::string& text) {
    std::string lower;
    lower.reserve(text.size());
    for (char c : text) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (lower == "high") return Label::High;
    if (lower == "low") return Label::Low;
    return std::nullopt;
}

namespace {

bool read_file(const fs::path& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) return false;
    out = buf.str();
    return true;
}

Corpus load_from_manifest(const fs::path& dir, const fs::path& manifest) {
    std::ifstream in(manifest, std::ios::binary);
    if (!in) throw Error("cannot open manifest: " + manifest.string());
    Corpus corpus;
    std::set<std::string> seen_ids;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = tsv::split(line);
        if (fields.size() < 2 || fields.size() > 3 || fields[0].empty())
            throw FormatError(manifest.string(), line_no, "expected path<TAB>id[<TAB>label]");
        Document doc;
        doc.id = fields[1].empty() ? fields[0] : fields[1];
        if (fields.size() == 3 && !fields[2].empty()) {
            doc.label = parse_label(fields[2]);
            if (!doc.label)
                throw FormatError(manifest.string(), line_no, "label must be High or Low, got '" + fields[2] + "'");
        }
        if (!seen_ids.insert(doc.id).second)
            throw FormatError(manifest.string(), line_no, "duplicate document id '" + doc.id + "'");
        const fs::path path = dir / fields[0];
        if (!read_file(path, doc.text)) {
            corpus.skipped.push_back(path.string());
            continue;
        }
        corpus.docs.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace

Corpus load_corpus(const fs::path& dir, const std::optional<fs::path>& manifest) {
    Corpus corpus;
    if (manifest) {
        corpus = load_from_manifest(dir, *manifest);
    } else {
        std::vector<fs::path> files;
        std::error_code ec;
        for (fs::recursive_directory_iterator it(dir, ec), end; it != end && !ec; it.increment(ec)) {
            if (it->is_regular_file() && it->path().extension() == ".txt")
                files.push_back(it->path());
        }
        if (ec) throw Error("cannot scan corpus directory " + dir.string() + ": " + ec.message());
        for (const fs::path& path : files) {
            Document doc;
            doc.id = fs::relative(path, dir).generic_string();
            if (!read_file(path, doc.text)) {
                corpus.skipped.push_back(path.string());
                continue;
            }
            corpus.docs.push_back(std::move(doc));
        }
    }
    std::sort(corpus.docs.begin(), corpus.docs.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    if (corpus.docs.empty())
        throw EmptyCorpus("no readable documents in " + dir.string());
    return corpus;
}

}  // namespace docq
