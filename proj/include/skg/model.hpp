#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "skg/encoder.hpp"
#include "skg/objective.hpp"

namespace skg {

// Bi-encoder model: two independent encoder parameter sets plus the relation
// classifier head and the learnable log-inverse-temperature.
struct BiEncoderModel {
    Vocabulary vocab;
    EncoderParams main_encoder;       // known side (entity set + relation)
    EncoderParams secondary_encoder;  // candidate entities
    std::vector<float> relation_matrix;  // n_relations x dim_out
    int n_relations = 0;
    double log_inv_temperature = 0.0;
    std::size_t max_tokens = 50;

    mutable std::uint64_t main_invocations = 0;
    mutable std::uint64_t secondary_invocations = 0;

    static BiEncoderModel init(Vocabulary vocab, int n_relations, int dim,
                               double tau_init, std::size_t max_tokens,
                               std::mt19937& rng);

    std::vector<double> encode_main(const std::string& text) const;
    std::vector<double> encode_secondary(const std::string& text) const;

    void reset_counters() const {
        main_invocations = 0;
        secondary_invocations = 0;
    }
};

}  // namespace skg
