#pragma once

#include <cstdint>
#include <string>

#include "skg/kg.hpp"
#include "skg/trainer.hpp"

namespace skg {

// Structured run configuration backing the `train` command. Unknown keys are
// rejected; every run writes the resolved config next to its outputs.
struct RunConfig {
    int version = 1;
    std::string data_dir;
    TrainConfig train;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_json_text(const std::string& text, const std::string& origin);

    // Canonical JSON of the resolved configuration (no output paths).
    std::string resolved_json() const;
    std::uint64_t hash() const;
};

KnowledgeGraph load_graph_dir(const std::string& data_dir);

std::uint64_t fnv1a_hash(const std::string& data);

}  // namespace skg
