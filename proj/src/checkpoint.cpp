#include "skg/checkpoint.hpp"

#include <filesystem>
#include <fstream>

#include <json.hpp>

namespace skg {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TensorRef {
    std::string name;
    std::vector<std::size_t> shape;
    const std::vector<float>* data;
};

std::vector<TensorRef> tensor_table(const BiEncoderModel& m,
                                    const std::vector<float>& theta) {
    auto vs = static_cast<std::size_t>(m.main_encoder.vocab_size);
    auto di = static_cast<std::size_t>(m.main_encoder.dim_in);
    auto dout = static_cast<std::size_t>(m.main_encoder.dim_out);
    auto nr = static_cast<std::size_t>(m.n_relations);
    return {
        {"main.token_embeddings", {vs, di}, &m.main_encoder.token_embeddings},
        {"main.projection", {di, dout}, &m.main_encoder.projection},
        {"main.projection_bias", {dout}, &m.main_encoder.projection_bias},
        {"secondary.token_embeddings", {vs, di}, &m.secondary_encoder.token_embeddings},
        {"secondary.projection", {di, dout}, &m.secondary_encoder.projection},
        {"secondary.projection_bias", {dout}, &m.secondary_encoder.projection_bias},
        {"relation_matrix", {nr, dout}, &m.relation_matrix},
        {"log_inv_temperature", {1}, &theta},
    };
}

std::uint64_t fnv1a(const char* data, std::size_t n) {
    std::uint64_t h = 1469598103934665603ull;
    for (std::size_t i = 0; i < n; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

void save_checkpoint(const Checkpoint& c, const std::string& dir) {
    fs::create_directories(dir);
    std::vector<float> theta = {static_cast<float>(c.model.log_inv_temperature)};
    auto tensors = tensor_table(c.model, theta);

    json manifest;
    manifest["version"] = kCheckpointVersion;
    manifest["vocab_size"] = c.model.vocab.size();
    manifest["dim_in"] = c.model.main_encoder.dim_in;
    manifest["dim_out"] = c.model.main_encoder.dim_out;
    manifest["n_relations"] = c.model.n_relations;
    manifest["max_tokens"] = c.model.max_tokens;
    manifest["epoch"] = c.epoch;
    manifest["weights"] = {{"w_hp", c.weights.w_hp}, {"w_rp", c.weights.w_rp},
                           {"w_tp", c.weights.w_tp}, {"a_hp", c.weights.a_hp},
                           {"a_rp", c.weights.a_rp}, {"a_tp", c.weights.a_tp}};
    manifest["rng_state"] = c.rng_state;
    manifest["vocab_hash"] = c.model.vocab.hash();

    json tlist = json::array();
    std::size_t offset = 0;
    for (const auto& t : tensors) {
        std::size_t bytes = t.data->size() * sizeof(float);
        tlist.push_back({{"name", t.name},
                         {"shape", t.shape},
                         {"offset", offset},
                         {"bytes", bytes}});
        offset += bytes;
    }
    manifest["tensors"] = tlist;

    {
        std::ofstream out(fs::path(dir) / "tensors.bin", std::ios::binary);
        if (!out) throw DataError("cannot write tensor blob under " + dir);
        for (const auto& t : tensors)
            out.write(reinterpret_cast<const char*>(t.data->data()),
                      static_cast<std::streamsize>(t.data->size() * sizeof(float)));
    }
    {
        std::ofstream out(fs::path(dir) / "manifest.json");
        if (!out) throw DataError("cannot write manifest under " + dir);
        out << manifest.dump(2) << '\n';
    }
    c.model.vocab.save_tsv((fs::path(dir) / "vocab.tsv").string());
}

Checkpoint load_checkpoint(const std::string& dir) {
    std::ifstream min(fs::path(dir) / "manifest.json");
    if (!min) throw DataError("cannot open checkpoint manifest under " + dir);
    json manifest = json::parse(min);

    if (manifest.at("version").get<int>() != kCheckpointVersion)
        throw DataError("checkpoint version mismatch: expected " +
                        std::to_string(kCheckpointVersion) + ", got " +
                        manifest.at("version").dump());

    Checkpoint c;
    c.model.vocab = Vocabulary::load_tsv((fs::path(dir) / "vocab.tsv").string());
    if (c.model.vocab.hash() != manifest.at("vocab_hash").get<std::uint64_t>())
        throw DataError("checkpoint vocabulary hash mismatch (vocab.tsv does not match manifest)");

    int vocab_size = manifest.at("vocab_size").get<int>();
    int dim_in = manifest.at("dim_in").get<int>();
    int dim_out = manifest.at("dim_out").get<int>();
    c.model.n_relations = manifest.at("n_relations").get<int>();
    c.model.max_tokens = manifest.at("max_tokens").get<std::size_t>();
    c.epoch = manifest.at("epoch").get<int>();
    const json& w = manifest.at("weights");
    c.weights.w_hp = w.at("w_hp").get<double>();
    c.weights.w_rp = w.at("w_rp").get<double>();
    c.weights.w_tp = w.at("w_tp").get<double>();
    c.weights.a_hp = w.at("a_hp").get<double>();
    c.weights.a_rp = w.at("a_rp").get<double>();
    c.weights.a_tp = w.at("a_tp").get<double>();
    c.rng_state = manifest.at("rng_state").get<std::string>();

    if (static_cast<int>(c.model.vocab.size()) != vocab_size)
        throw DataError("checkpoint vocab_size does not match vocab.tsv");

    auto init_enc = [&](EncoderParams& p) {
        p.vocab_size = vocab_size;
        p.dim_in = dim_in;
        p.dim_out = dim_out;
    };
    init_enc(c.model.main_encoder);
    init_enc(c.model.secondary_encoder);

    std::ifstream blob(fs::path(dir) / "tensors.bin", std::ios::binary | std::ios::ate);
    if (!blob) throw DataError("cannot open tensor blob under " + dir);
    std::size_t blob_size = static_cast<std::size_t>(blob.tellg());

    std::vector<float> theta(1, 0.0f);
    std::vector<float>* slots[] = {
        &c.model.main_encoder.token_embeddings, &c.model.main_encoder.projection,
        &c.model.main_encoder.projection_bias,
        &c.model.secondary_encoder.token_embeddings, &c.model.secondary_encoder.projection,
        &c.model.secondary_encoder.projection_bias,
        &c.model.relation_matrix, &theta};
    auto expected = tensor_table(c.model, theta);

    const json& tlist = manifest.at("tensors");
    if (tlist.size() != expected.size())
        throw DataError("checkpoint manifest lists an unexpected tensor count");

    for (std::size_t i = 0; i < expected.size(); ++i) {
        const json& entry = tlist.at(i);
        if (entry.at("name").get<std::string>() != expected[i].name)
            throw DataError("checkpoint tensor name mismatch: " + entry.at("name").dump());
        auto shape = entry.at("shape").get<std::vector<std::size_t>>();
        if (shape != expected[i].shape)
            throw DataError("tensor shape mismatch for " + expected[i].name);
        std::size_t offset = entry.at("offset").get<std::size_t>();
        std::size_t bytes = entry.at("bytes").get<std::size_t>();
        std::size_t count = 1;
        for (std::size_t s : shape) count *= s;
        if (bytes != count * sizeof(float))
            throw DataError("tensor shape mismatch for " + expected[i].name);
        if (offset + bytes > blob_size)
            throw DataError("truncated tensor blob: " + expected[i].name);
        slots[i]->resize(count);
        blob.seekg(static_cast<std::streamoff>(offset));
        blob.read(reinterpret_cast<char*>(slots[i]->data()),
                  static_cast<std::streamsize>(bytes));
        if (!blob) throw DataError("truncated tensor blob: " + expected[i].name);
    }
    c.model.log_inv_temperature = static_cast<double>(theta[0]);
    return c;
}

std::uint64_t checkpoint_model_hash(const std::string& dir) {
    std::ifstream blob(fs::path(dir) / "tensors.bin", std::ios::binary);
    if (!blob) throw DataError("cannot open tensor blob under " + dir);
    std::string data((std::istreambuf_iterator<char>(blob)),
                     std::istreambuf_iterator<char>());
    return fnv1a(data.data(), data.size());
}

}  // namespace skg
