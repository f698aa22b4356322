#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

struct Triple {
    int head = -1;
    int relation = -1;
    int tail = -1;

    bool operator==(const Triple& o) const {
        return head == o.head && relation == o.relation && tail == o.tail;
    }
};

struct TripleHash {
    std::size_t operator()(const Triple& t) const {
        std::size_t h = static_cast<std::size_t>(t.head);
        h = h * 1000003u ^ static_cast<std::size_t>(t.relation);
        h = h * 1000003u ^ static_cast<std::size_t>(t.tail);
        return h;
    }
};

struct EntityRecord {
    std::string id;
    std::string name;
    std::string description;  // may be empty
};

using PairKey = std::pair<int, int>;

struct PairKeyHash {
    std::size_t operator()(const PairKey& k) const {
        return static_cast<std::size_t>(k.first) * 1000003u ^
               static_cast<std::size_t>(k.second);
    }
};

// Member lists in the indexes are sorted and duplicate-free.
using PairIndex = std::unordered_map<PairKey, std::vector<int>, PairKeyHash>;

struct KnowledgeGraph {
    std::vector<EntityRecord> entities;
    std::vector<std::pair<std::string, std::string>> relations;  // (id, text)
    std::unordered_map<std::string, int> entity_ids;
    std::unordered_map<std::string, int> relation_ids;

    std::vector<Triple> train;
    std::vector<Triple> valid;
    std::vector<Triple> test;

    PairIndex hr_index;  // (head, relation) -> tails, train split only
    PairIndex rt_index;  // (relation, tail) -> heads, train split only
    std::unordered_set<Triple, TripleHash> known_index;  // train + valid + test

    int missing_text_count = 0;
    int duplicate_triple_count = 0;

    bool is_known(int h, int r, int t) const {
        return known_index.count(Triple{h, r, t}) > 0;
    }

    const EntityRecord& entity(int e) const { return entities.at(static_cast<std::size_t>(e)); }
    const std::string& relation_text(int r) const { return relations.at(static_cast<std::size_t>(r)).second; }

    // "name, description" or just "name" when the description is empty.
    std::string entity_text(int e) const;

    std::size_t n_entities() const { return entities.size(); }
    std::size_t n_relations() const { return relations.size(); }
};

struct GraphStats {
    std::size_t n_entities = 0;
    std::size_t n_relations = 0;
    std::size_t n_train = 0;
    std::size_t n_valid = 0;
    std::size_t n_test = 0;
    double share_hr = 0.0;          // fraction of train triples whose (h,r) key has >= 2 members
    double share_rt = 0.0;          // same for (r,t)
    double avg_heads_per_rt = 0.0;  // mean head-set size over (r,t) keys
    double avg_tails_per_hr = 0.0;  // mean tail-set size over (h,r) keys
};

KnowledgeGraph load_graph(const std::string& train_path,
                          const std::string& valid_path,
                          const std::string& test_path,
                          const std::string& entity_text_path,
                          const std::string& relation_text_path);

GraphStats compute_stats(const KnowledgeGraph& g);

// (r_head, r_tail): per-direction focusing parameters from the fan-in/fan-out
// imbalance of the train split. Clamped to keep the difficulty power tame.
std::pair<double, double> focusing_ratios(const KnowledgeGraph& g,
                                          double clamp_lo = 0.1,
                                          double clamp_hi = 10.0);

// Re-emits the three splits plus text tables under `dir` using the same TSV
// layout load_graph reads (train.txt, valid.txt, test.txt, entity2text.txt,
// relation2text.txt).
void write_graph_tsv(const KnowledgeGraph& g, const std::string& dir);

}  // namespace skg
