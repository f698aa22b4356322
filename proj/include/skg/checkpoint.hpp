#pragma once

#include <string>

#include "skg/balancer.hpp"
#include "skg/model.hpp"

namespace skg {

constexpr int kCheckpointVersion = 1;

struct Checkpoint {
    BiEncoderModel model;
    int epoch = 0;
    TaskWeights weights;
    std::string rng_state;  // serialized mt19937 stream
};

// Layout under `dir`: manifest.json (versioned; lists every tensor with shape
// and byte offset), tensors.bin (raw little-endian float32 blobs), vocab.tsv.
void save_checkpoint(const Checkpoint& c, const std::string& dir);
Checkpoint load_checkpoint(const std::string& dir);

// FNV-1a over the raw tensor blob; identifies the trained weights in reports.
std::uint64_t checkpoint_model_hash(const std::string& dir);

}  // namespace skg
