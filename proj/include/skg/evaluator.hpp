#pragma once

#include <cstdint>
#include <vector>

#include "skg/expansion.hpp"
#include "skg/kg.hpp"
#include "skg/model.hpp"

namespace skg {

struct DirectionMetrics {
    double mrr = 0.0;
    double hit1 = 0.0;
    double hit3 = 0.0;
    double hit10 = 0.0;
};

struct RankingReport {
    DirectionMetrics head;      // head prediction (?, r, t)
    DirectionMetrics tail;      // tail prediction (h, r, ?)
    DirectionMetrics averaged;  // arithmetic mean of the two directions
    std::vector<int> ranks_head;
    std::vector<int> ranks_tail;
    std::uint64_t main_invocations = 0;
    std::uint64_t secondary_invocations = 0;
};

// Secondary-encoder embedding of every entity's `name, description` text.
// Exactly |E| secondary-encoder invocations; rows unit-norm.
std::vector<std::vector<double>> precompute_entity_embeddings(
    const BiEncoderModel& model, const KnowledgeGraph& g, int threads = 1);

// Filtered per-query ranks for one direction over a split; one main-encoder
// invocation per query. Ties resolved by deterministic mid-rank:
// rank = 1 + |better| + floor(|equal, excluding gold| / 2).
std::vector<int> rank_queries(const BiEncoderModel& model, const KnowledgeGraph& g,
                              const std::vector<Triple>& split, Direction direction,
                              const std::vector<std::vector<double>>& entity_embeddings);

DirectionMetrics direction_metrics(const std::vector<int>& ranks);

RankingReport aggregate(std::vector<int> ranks_head, std::vector<int> ranks_tail);

// Argmax-of-logits accuracy of the relation classifier over a split.
double relation_accuracy(const BiEncoderModel& model, const KnowledgeGraph& g,
                         const std::vector<Triple>& split);

// Full filtered evaluation of a split in both directions, with invocation
// counters captured from the model.
RankingReport evaluate(const BiEncoderModel& model, const KnowledgeGraph& g,
                       const std::vector<Triple>& split, int threads = 1);

}  // namespace skg
