#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skg/config.hpp"
#include "skg/kg.hpp"

namespace skg::testing {

namespace fs = std::filesystem;

inline fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("skg_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

// Small hand-checkable graph: 5 entities, 2 relations, 4 train triples,
// two of which share (r0, e2).
inline fs::path write_toy_dataset(const std::string& name) {
    fs::path dir = fresh_dir(name);
    write_file(dir / "train.txt",
               "e0\tr0\te2\n"
               "e1\tr0\te2\n"
               "e0\tr1\te3\n"
               "e4\tr1\te0\n");
    write_file(dir / "valid.txt", "e1\tr1\te3\n");
    write_file(dir / "test.txt", "e4\tr0\te2\n");
    write_file(dir / "entity2text.txt",
               "e0\tchip, a mark left after a small piece has been chopped or broken off of something\n"
               "e1\tsnick, a small cut\n"
               "e2\tnick, cut a nick into\n"
               "e3\tmark, a visible indication made on a surface\n"
               "e4\tcut, separate with an edged instrument\n");
    write_file(dir / "relation2text.txt",
               "r0\tderivationally related form\n"
               "r1\thypernym\n");
    return dir;
}

// Synthetic clue-rich KG: 200 entities in 40 clusters of 5; cluster pairs
// (head cluster 2i, tail cluster 2i+1) fully connected under two of the 5
// relations. Descriptions carry cluster marker keywords, so the gold entity
// is identifiable from the known side once markers are learned; the filtered
// setting removes the in-cluster competitors.
struct SyntheticKg {
    fs::path dir;
    int n_entities = 200;
    int n_relations = 5;
};

inline SyntheticKg write_synthetic_clue_kg(const std::string& name) {
    SyntheticKg out;
    out.dir = fresh_dir(name);

    const int kClusters = 40;       // 20 head clusters, 20 tail clusters
    const int kClusterSize = 5;
    auto entity_id = [](int e) { return "n" + std::to_string(e); };

    std::ostringstream ent;
    for (int e = 0; e < 200; ++e) {
        int cluster = e / kClusterSize;
        bool is_head = cluster % 2 == 0;
        int pair = cluster / 2;
        ent << entity_id(e) << '\t' << "item" << e
            << ", a member of group g" << cluster
            << (is_head ? " bearing source marker srcmk" : " bearing target marker dstmk")
            << pair << ". it also carries the shared trait word trait" << pair
            << " common to its group.\n";
    }
    write_file(out.dir / "entity2text.txt", ent.str());

    std::ostringstream rel;
    for (int r = 0; r < 5; ++r)
        rel << "r" << r << "\trelated via channel " << r << "\n";
    write_file(out.dir / "relation2text.txt", rel.str());

    std::ostringstream train, valid, test;
    for (int pair = 0; pair < kClusters / 2; ++pair) {
        int head_cluster = 2 * pair, tail_cluster = 2 * pair + 1;
        int rels[2] = {pair % 5, (pair + 2) % 5};
        for (int rr = 0; rr < 2; ++rr) {
            int idx = 0;
            for (int a = 0; a < kClusterSize; ++a)
                for (int b = 0; b < kClusterSize; ++b, ++idx) {
                    int h = head_cluster * kClusterSize + a;
                    int t = tail_cluster * kClusterSize + b;
                    std::ostringstream* dst = &train;
                    if (idx == 7) dst = &valid;
                    else if (idx == 13 || idx == 19) dst = &test;
                    *dst << entity_id(h) << "\tr" << rels[rr] << '\t' << entity_id(t)
                         << '\n';
                }
        }
    }
    write_file(out.dir / "train.txt", train.str());
    write_file(out.dir / "valid.txt", valid.str());
    write_file(out.dir / "test.txt", test.str());
    return out;
}

// Random small graph for property tests.
inline KnowledgeGraph random_graph(std::mt19937& rng, int n_entities, int n_relations,
                                   int n_train) {
    fs::path dir = fresh_dir("random_graph");
    std::ostringstream ent, rel, train;
    for (int e = 0; e < n_entities; ++e)
        ent << "e" << e << "\tentity " << e << ", description of entity " << e << "\n";
    for (int r = 0; r < n_relations; ++r) rel << "r" << r << "\trelation " << r << "\n";
    std::uniform_int_distribution<int> pe(0, n_entities - 1), pr(0, n_relations - 1);
    for (int i = 0; i < n_train; ++i)
        train << "e" << pe(rng) << "\tr" << pr(rng) << "\te" << pe(rng) << "\n";
    write_file(dir / "entity2text.txt", ent.str());
    write_file(dir / "relation2text.txt", rel.str());
    write_file(dir / "train.txt", train.str());
    write_file(dir / "valid.txt", "");
    write_file(dir / "test.txt", "");
    return load_graph_dir(dir.string());
}

inline std::string cli_path() {
    const char* p = std::getenv("SKG_CLI");
    return p ? p : "";
}

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace skg::testing
