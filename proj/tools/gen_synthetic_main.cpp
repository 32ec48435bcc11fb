// Regenerates data/synthetic (the bundled benchmark used by the acceptance
// suite). Deterministic: same seed, same bytes.

#include <filesystem>
#include <iostream>
#include <random>
#include <string>

#include "support/synthetic.hpp"

int main(int argc, char** argv) {
    std::filesystem::path root = "data/synthetic";
    std::uint64_t seed = 20240801;
    if (argc > 1) root = argv[1];
    if (argc > 2) seed = std::stoull(argv[2]);

    std::mt19937_64 rng(seed);

    std::vector<synth::DocSpec> main_docs;
    for (int i = 0; i < 40; ++i) {
        synth::DocSpec doc;
        doc.id = "main_" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        doc.text = synth::make_doc(rng, synth::main_corpus_knobs());
        doc.high = true;
        main_docs.push_back(std::move(doc));
    }
    synth::write_corpus_dir(root / "main", main_docs, false);

    std::vector<synth::DocSpec> bench_docs;
    for (int i = 0; i < 30; ++i) {
        synth::DocSpec doc;
        doc.id = "high_" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        doc.text = synth::make_doc(rng, synth::bench_high_knobs());
        doc.high = true;
        bench_docs.push_back(std::move(doc));
    }
    for (int i = 0; i < 30; ++i) {
        synth::DocSpec doc;
        doc.id = "low_" + std::string(i < 10 ? "0" : "") + std::to_string(i);
        doc.text = synth::make_doc(rng, synth::bench_low_knobs());
        doc.high = false;
        bench_docs.push_back(std::move(doc));
    }
    synth::write_corpus_dir(root / "bench", bench_docs, true);

    std::cout << "wrote " << main_docs.size() << " main and " << bench_docs.size()
              << " bench documents under " << root.string() << "\n";
    return 0;
}
