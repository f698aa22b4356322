#include "skg/encoder.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "skg/textrank.hpp"  // word_tokens

namespace skg {

namespace {

const char* kSpecialNames[Vocabulary::kNumSpecials] = {"[BOS]", "[SEP]", "[PSEP]",
                                                       "[UNK]", "[PAD]"};

}  // namespace

std::uint64_t Vocabulary::hash() const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (const std::string& t : tokens) {
        for (char c : t) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

void Vocabulary::save_tsv(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write vocabulary: " + path);
    for (std::size_t i = 0; i < tokens.size(); ++i)
        out << tokens[i] << '\t' << i << '\n';
}

Vocabulary Vocabulary::load_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open vocabulary: " + path);
    Vocabulary v;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw DataError(path + ":" + std::to_string(lineno) + ": expected token\\tindex");
        std::string token = line.substr(0, tab);
        int idx = std::stoi(line.substr(tab + 1));
        if (idx != static_cast<int>(v.tokens.size()))
            throw DataError(path + ":" + std::to_string(lineno) + ": non-dense index");
        v.index.emplace(token, idx);
        v.tokens.push_back(std::move(token));
    }
    for (int s = 0; s < kNumSpecials; ++s)
        if (static_cast<std::size_t>(s) >= v.tokens.size() || v.tokens[static_cast<std::size_t>(s)] != kSpecialNames[s])
            throw DataError(path + ": special tokens missing or misplaced");
    return v;
}

Vocabulary build_vocab(const std::vector<std::string>& corpus, std::size_t max_size) {
    if (corpus.empty()) throw DataError("build_vocab: empty corpus");
    if (max_size <= Vocabulary::kNumSpecials)
        throw DataError("build_vocab: max_size must exceed the special-token count");

    std::map<std::string, std::size_t> freq;  // ordered map gives lexicographic ties
    for (const std::string& text : corpus)
        for (auto& w : word_tokens(text)) ++freq[w];

    std::vector<std::pair<std::string, std::size_t>> items(freq.begin(), freq.end());
    std::stable_sort(items.begin(), items.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });

    Vocabulary v;
    for (int s = 0; s < Vocabulary::kNumSpecials; ++s) {
        v.index.emplace(kSpecialNames[s], s);
        v.tokens.emplace_back(kSpecialNames[s]);
    }
    std::size_t budget = max_size - Vocabulary::kNumSpecials;
    for (std::size_t i = 0; i < items.size() && i < budget; ++i) {
        v.index.emplace(items[i].first, static_cast<int>(v.tokens.size()));
        v.tokens.push_back(items[i].first);
    }
    return v;
}

std::vector<int> tokenize(const Vocabulary& v, const std::string& text,
                          std::size_t max_tokens) {
    std::vector<int> out;
    out.push_back(Vocabulary::BOS);
    std::istringstream in(text);
    std::string chunk;
    while (in >> chunk && out.size() < max_tokens) {
        if (chunk == "[SEP]") {
            out.push_back(Vocabulary::SEP);
            continue;
        }
        if (chunk == "[PSEP]") {
            out.push_back(Vocabulary::PSEP);
            continue;
        }
        for (auto& w : word_tokens(chunk)) {
            if (out.size() >= max_tokens) break;
            out.push_back(v.lookup(w));
        }
    }
    if (out.size() > max_tokens) out.resize(max_tokens);
    return out;
}

EncoderParams EncoderParams::init(int vocab_size, int dim_in, int dim_out,
                                  std::mt19937& rng) {
    EncoderParams p;
    p.vocab_size = vocab_size;
    p.dim_in = dim_in;
    p.dim_out = dim_out;
    std::uniform_real_distribution<float> dist(-0.05f, 0.05f);
    p.token_embeddings.resize(static_cast<std::size_t>(vocab_size) * dim_in);
    p.projection.resize(static_cast<std::size_t>(dim_in) * dim_out);
    p.projection_bias.resize(static_cast<std::size_t>(dim_out));
    for (auto& x : p.token_embeddings) x = dist(rng);
    for (auto& x : p.projection) x = dist(rng);
    for (auto& x : p.projection_bias) x = dist(rng);
    return p;
}

namespace {

struct ForwardCache {
    std::vector<double> mean;  // dim_in
    std::vector<double> u;     // tanh output, dim_out
    double u_norm = 0.0;
    std::vector<double> e;     // normalized output
    std::vector<int> used;     // non-PAD tokens
};

ForwardCache forward(const EncoderParams& p, const std::vector<int>& tokens) {
    ForwardCache c;
    if (tokens.empty()) throw NumericError("encode: empty token sequence");
    for (int t : tokens) {
        if (t == Vocabulary::PAD) continue;
        if (t < 0 || t >= p.vocab_size) throw NumericError("encode: token index out of range");
        c.used.push_back(t);
    }
    if (c.used.empty()) throw NumericError("encode: all-PAD token sequence");

    c.mean.assign(static_cast<std::size_t>(p.dim_in), 0.0);
    for (int t : c.used) {
        const float* row = &p.token_embeddings[static_cast<std::size_t>(t) * p.dim_in];
        for (int i = 0; i < p.dim_in; ++i) c.mean[static_cast<std::size_t>(i)] += row[i];
    }
    double inv_n = 1.0 / static_cast<double>(c.used.size());
    for (auto& x : c.mean) x *= inv_n;

    c.u.assign(static_cast<std::size_t>(p.dim_out), 0.0);
    for (int j = 0; j < p.dim_out; ++j) {
        double z = p.projection_bias[static_cast<std::size_t>(j)];
        for (int i = 0; i < p.dim_in; ++i)
            z += c.mean[static_cast<std::size_t>(i)] *
                 p.projection[static_cast<std::size_t>(i) * p.dim_out + j];
        c.u[static_cast<std::size_t>(j)] = std::tanh(z);
    }

    double sq = 0.0;
    for (double x : c.u) sq += x * x;
    c.u_norm = std::sqrt(sq);
    if (!(c.u_norm > 0.0)) throw NumericError("encode: zero-norm activation");
    c.e.resize(c.u.size());
    for (std::size_t j = 0; j < c.u.size(); ++j) c.e[j] = c.u[j] / c.u_norm;
    return c;
}

}  // namespace

std::vector<double> encode(const EncoderParams& p, const std::vector<int>& tokens) {
    return forward(p, tokens).e;
}

EncoderGrads encode_backward(const EncoderParams& p, const std::vector<int>& tokens,
                             const std::vector<double>& upstream) {
    if (static_cast<int>(upstream.size()) != p.dim_out)
        throw NumericError("encode_backward: upstream gradient shape mismatch");
    ForwardCache c = forward(p, tokens);

    // Through normalization: gu = (g - (g.e) e) / ||u||.
    double ge = 0.0;
    for (int j = 0; j < p.dim_out; ++j) ge += upstream[static_cast<std::size_t>(j)] * c.e[static_cast<std::size_t>(j)];
    std::vector<double> gz(static_cast<std::size_t>(p.dim_out));
    for (int j = 0; j < p.dim_out; ++j) {
        double gu = (upstream[static_cast<std::size_t>(j)] - ge * c.e[static_cast<std::size_t>(j)]) / c.u_norm;
        gz[static_cast<std::size_t>(j)] = gu * (1.0 - c.u[static_cast<std::size_t>(j)] * c.u[static_cast<std::size_t>(j)]);
    }

    EncoderGrads g;
    g.projection.assign(static_cast<std::size_t>(p.dim_in) * p.dim_out, 0.0);
    g.projection_bias = gz;
    std::vector<double> gmean(static_cast<std::size_t>(p.dim_in), 0.0);
    for (int i = 0; i < p.dim_in; ++i) {
        double m = c.mean[static_cast<std::size_t>(i)];
        double acc = 0.0;
        for (int j = 0; j < p.dim_out; ++j) {
            g.projection[static_cast<std::size_t>(i) * p.dim_out + j] = m * gz[static_cast<std::size_t>(j)];
            acc += p.projection[static_cast<std::size_t>(i) * p.dim_out + j] * gz[static_cast<std::size_t>(j)];
        }
        gmean[static_cast<std::size_t>(i)] = acc;
    }

    double inv_n = 1.0 / static_cast<double>(c.used.size());
    for (int t : c.used) {
        auto [it, inserted] = g.token_rows.try_emplace(t, std::vector<double>(static_cast<std::size_t>(p.dim_in), 0.0));
        for (int i = 0; i < p.dim_in; ++i)
            it->second[static_cast<std::size_t>(i)] += gmean[static_cast<std::size_t>(i)] * inv_n;
    }
    return g;
}

}  // namespace skg
