// Regenerates the bundled synthetic corpora under data/synthetic.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "storyscope/synthetic.hpp"

int main(int argc, char** argv) {
    CLI::App app{"write the planted-signal fixture corpora"};
    std::string out_dir = "data/synthetic";
    std::uint64_t seed = 7;
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--seed", seed, "generator seed");
    CLI11_PARSE(app, argc, argv);

    namespace syn = storyscope::synthetic;
    std::filesystem::create_directories(out_dir);
    const syn::ClassificationSpec spec;
    for (bool genre_a : {true, false}) {
        storyscope::Corpus c(syn::classification_documents(spec, seed, genre_a));
        const auto path = std::filesystem::path(out_dir) / ((genre_a ? spec.genre_a : spec.genre_b) + ".jsonl");
        std::ofstream out(path, std::ios::binary);
        for (const auto& d : c) {
            nlohmann::ordered_json rec;
            rec["id"] = d.id;
            rec["author"] = d.author_id;
            rec["label"] = d.label;
            rec["source"] = d.source;
            rec["text"] = d.raw_text;
            out << rec.dump() << '\n';
        }
        std::cout << path.string() << '\t' << c.size() << " documents\n";
    }
    return 0;
}
