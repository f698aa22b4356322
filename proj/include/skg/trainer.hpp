#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "skg/balancer.hpp"
#include "skg/checkpoint.hpp"
#include "skg/evaluator.hpp"
#include "skg/kg.hpp"
#include "skg/optimizer.hpp"

namespace skg {

struct TrainConfig {
    int epochs = 50;
    int batch_size = 64;  // >= 2 so contrastive batches have in-batch negatives
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    double gamma = 0.02;
    double tau_init = 0.05;
    std::size_t top_n = 3;
    std::size_t max_tokens = 50;
    bool balancing = true;
    bool expansion = true;
    std::size_t min_group_size = 2;
    int dim = 64;
    std::size_t vocab_size = 4096;
    AdamWConfig optimizer;
};

struct EpochLog {
    int epoch = 0;
    double loss_hp = 0.0;
    double loss_rp = 0.0;
    double loss_tp = 0.0;
    TaskWeights weights;  // weights in effect during this epoch
    double val_mrr_hp = 0.0;
    double val_mrr_tp = 0.0;
    double val_acc_rp = 0.0;
};

struct TrainResult {
    Checkpoint best;         // highest mean validation MRR
    Checkpoint final_state;  // end of the last epoch
    std::vector<EpochLog> log;
    double best_val_mrr = 0.0;
};

TrainResult train(const KnowledgeGraph& g, const TrainConfig& cfg);

}  // namespace skg
