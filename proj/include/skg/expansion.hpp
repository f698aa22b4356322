#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "skg/kg.hpp"

namespace skg {

enum class Direction { HeadPrediction, TailPrediction };

inline const char* direction_name(Direction d) {
    return d == Direction::HeadPrediction ? "head-prediction" : "tail-prediction";
}

struct ExpandedExample {
    Direction direction = Direction::TailPrediction;
    std::string known_text;            // input sequence for the main encoder
    int target = -1;                   // entity to rank
    int relation = -1;
    std::vector<int> group_members;    // known-side entities, size >= 1

    bool is_set_example() const { return group_members.size() >= 2; }
};

struct ExpansionConfig {
    std::size_t top_n = 3;           // summary length in sentences
    std::size_t min_group_size = 2;
    std::size_t max_group_size = 10; // largest-degree members kept, ties by id order
    double damping = 0.85;
};

// Renders `name, description` per entity (no dangling comma when the
// description is empty), joins entities with ` [PSEP] `, then appends
// ` [SEP] relation_text` and optionally ` [SEP] other_entity_text`.
std::string build_known_text(
    const std::vector<std::pair<std::string, std::string>>& names_and_descs,
    const std::string& relation_text,
    const std::string* other_entity_text = nullptr);

// Known-side text of an original (single-entity) example, also used verbatim
// for evaluation queries. Head prediction marks the relation as inverted so
// the two directions are distinguishable to the encoder.
std::string original_known_text(const KnowledgeGraph& g, const Triple& t,
                                Direction direction);

// Text fed to the relation classifier: `head text [SEP] tail text`.
std::string relation_input_text(const KnowledgeGraph& g, const Triple& t);

// Originals first (two per train triple, in train order), then one set
// example per shared key, sorted by key.
std::vector<ExpandedExample> expand_dataset(const KnowledgeGraph& g,
                                            const ExpansionConfig& cfg = {});

}  // namespace skg
