#include "skg/model.hpp"

#include <cmath>

namespace skg {

BiEncoderModel BiEncoderModel::init(Vocabulary vocab, int n_relations, int dim,
                                    double tau_init, std::size_t max_tokens,
                                    std::mt19937& rng) {
    BiEncoderModel m;
    m.vocab = std::move(vocab);
    int vocab_size = static_cast<int>(m.vocab.size());
    // Both encoders start from the same draw but never share parameters.
    {
        std::mt19937 shared(rng());
        std::mt19937 copy = shared;
        m.main_encoder = EncoderParams::init(vocab_size, dim, dim, shared);
        m.secondary_encoder = EncoderParams::init(vocab_size, dim, dim, copy);
    }
    m.n_relations = n_relations;
    m.relation_matrix.assign(static_cast<std::size_t>(n_relations) * dim, 0.0f);
    std::uniform_real_distribution<float> dist(-0.05f, 0.05f);
    for (auto& x : m.relation_matrix) x = dist(rng);
    m.log_inv_temperature = std::log(1.0 / tau_init);
    m.max_tokens = max_tokens;
    return m;
}

std::vector<double> BiEncoderModel::encode_main(const std::string& text) const {
    ++main_invocations;
    return encode(main_encoder, tokenize(vocab, text, max_tokens));
}

std::vector<double> BiEncoderModel::encode_secondary(const std::string& text) const {
    ++secondary_invocations;
    return encode(secondary_encoder, tokenize(vocab, text, max_tokens));
}

}  // namespace skg
