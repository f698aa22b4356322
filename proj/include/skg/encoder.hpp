#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

struct Vocabulary {
    static constexpr int BOS = 0;
    static constexpr int SEP = 1;
    static constexpr int PSEP = 2;
    static constexpr int UNK = 3;
    static constexpr int PAD = 4;
    static constexpr int kNumSpecials = 5;

    std::vector<std::string> tokens;  // index -> token, specials first
    std::unordered_map<std::string, int> index;

    std::size_t size() const { return tokens.size(); }
    int lookup(const std::string& token) const {
        auto it = index.find(token);
        return it == index.end() ? UNK : it->second;
    }

    std::uint64_t hash() const;
    void save_tsv(const std::string& path) const;
    static Vocabulary load_tsv(const std::string& path);
};

// Most frequent max_size-5 word tokens from the corpus, ordered by frequency
// then lexicographically.
Vocabulary build_vocab(const std::vector<std::string>& corpus, std::size_t max_size);

// BOS + body tokens (UNK for OOV, [SEP]/[PSEP] markers mapped to specials),
// truncated to max_tokens. Never empty; never emits PAD.
std::vector<int> tokenize(const Vocabulary& v, const std::string& text,
                          std::size_t max_tokens);

struct EncoderParams {
    int vocab_size = 0;
    int dim_in = 0;
    int dim_out = 0;
    std::vector<float> token_embeddings;  // vocab_size x dim_in, row-major
    std::vector<float> projection;        // dim_in x dim_out, row-major
    std::vector<float> projection_bias;   // dim_out

    static EncoderParams init(int vocab_size, int dim_in, int dim_out,
                              std::mt19937& rng);
};

// Mean of token embeddings (PAD excluded) -> affine projection -> tanh ->
// L2 normalization. Returns a unit vector.
std::vector<double> encode(const EncoderParams& p, const std::vector<int>& tokens);

struct EncoderGrads {
    std::unordered_map<int, std::vector<double>> token_rows;  // touched rows only
    std::vector<double> projection;
    std::vector<double> projection_bias;
};

// Exact analytic gradients of encode() contracted with `upstream`
// (d loss / d output, length dim_out).
EncoderGrads encode_backward(const EncoderParams& p, const std::vector<int>& tokens,
                             const std::vector<double>& upstream);

}  // namespace skg
