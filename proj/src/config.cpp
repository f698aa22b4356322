#include "skg/config.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace skg {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a_hash(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : data) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

RunConfig RunConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return from_json_text(buf.str(), path);
}

RunConfig RunConfig::from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(origin + ": invalid JSON: " + e.what());
    }
    if (!j.is_object()) throw DataError(origin + ": config must be a JSON object");

    static const std::set<std::string> known = {
        "version",    "data_dir",   "epochs",        "batch_size",
        "learning_rate", "seed",    "gamma",         "tau_init",
        "top_n",      "max_tokens", "balancing",     "expansion",
        "min_group_size", "dim",    "vocab_size",    "weight_decay"};
    std::string bad;
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key())) bad += (bad.empty() ? "" : ", ") + it.key();
    if (!bad.empty()) throw DataError(origin + ": unknown config keys: " + bad);

    RunConfig cfg;
    try {
        if (j.contains("version")) cfg.version = j["version"].get<int>();
        if (cfg.version != 1)
            throw DataError(origin + ": unsupported config version " +
                            std::to_string(cfg.version));
        if (j.contains("data_dir")) cfg.data_dir = j["data_dir"].get<std::string>();
        auto& t = cfg.train;
        if (j.contains("epochs")) t.epochs = j["epochs"].get<int>();
        if (j.contains("batch_size")) t.batch_size = j["batch_size"].get<int>();
        if (j.contains("learning_rate")) t.learning_rate = j["learning_rate"].get<double>();
        if (j.contains("seed")) t.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("gamma")) t.gamma = j["gamma"].get<double>();
        if (j.contains("tau_init")) t.tau_init = j["tau_init"].get<double>();
        if (j.contains("top_n")) t.top_n = j["top_n"].get<std::size_t>();
        if (j.contains("max_tokens")) t.max_tokens = j["max_tokens"].get<std::size_t>();
        if (j.contains("balancing")) t.balancing = j["balancing"].get<bool>();
        if (j.contains("expansion")) t.expansion = j["expansion"].get<bool>();
        if (j.contains("min_group_size")) t.min_group_size = j["min_group_size"].get<std::size_t>();
        if (j.contains("dim")) t.dim = j["dim"].get<int>();
        if (j.contains("vocab_size")) t.vocab_size = j["vocab_size"].get<std::size_t>();
        if (j.contains("weight_decay")) t.optimizer.weight_decay = j["weight_decay"].get<double>();
    } catch (const json::exception& e) {
        throw DataError(origin + ": bad config value: " + e.what());
    }
    return cfg;
}

std::string RunConfig::resolved_json() const {
    json j;
    j["version"] = version;
    j["data_dir"] = data_dir;
    j["epochs"] = train.epochs;
    j["batch_size"] = train.batch_size;
    j["learning_rate"] = train.learning_rate;
    j["seed"] = train.seed;
    j["gamma"] = train.gamma;
    j["tau_init"] = train.tau_init;
    j["top_n"] = train.top_n;
    j["max_tokens"] = train.max_tokens;
    j["balancing"] = train.balancing;
    j["expansion"] = train.expansion;
    j["min_group_size"] = train.min_group_size;
    j["dim"] = train.dim;
    j["vocab_size"] = train.vocab_size;
    j["weight_decay"] = train.optimizer.weight_decay;
    return j.dump(2);
}

std::uint64_t RunConfig::hash() const { return fnv1a_hash(resolved_json()); }

KnowledgeGraph load_graph_dir(const std::string& data_dir) {
    fs::path d(data_dir);
    for (const char* name : {"train.txt", "valid.txt", "test.txt", "entity2text.txt",
                             "relation2text.txt"})
        if (!fs::exists(d / name))
            throw DataError("missing dataset file: " + (d / name).string());
    return load_graph((d / "train.txt").string(), (d / "valid.txt").string(),
                      (d / "test.txt").string(), (d / "entity2text.txt").string(),
                      (d / "relation2text.txt").string());
}

}  // namespace skg
