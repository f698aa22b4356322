#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "skg/checkpoint.hpp"
#include "skg/config.hpp"
#include "skg/evaluator.hpp"
#include "skg/expansion.hpp"
#include "skg/kg.hpp"
#include "skg/textrank.hpp"
#include "skg/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json metrics_json(const skg::DirectionMetrics& m) {
    return {{"mrr", m.mrr}, {"hit1", m.hit1}, {"hit3", m.hit3}, {"hit10", m.hit10}};
}

json weights_json(const skg::TaskWeights& w) {
    return {{"w_hp", w.w_hp}, {"w_rp", w.w_rp}, {"w_tp", w.w_tp},
            {"a_hp", w.a_hp}, {"a_rp", w.a_rp}, {"a_tp", w.a_tp}};
}

int cmd_stats(const std::string& data_dir, const std::string& out_path) {
    skg::KnowledgeGraph g = skg::load_graph_dir(data_dir);
    skg::GraphStats s = skg::compute_stats(g);

    std::cout << "entities:   " << s.n_entities << "\n"
              << "relations:  " << s.n_relations << "\n"
              << "train:      " << s.n_train << "\n"
              << "valid:      " << s.n_valid << "\n"
              << "test:       " << s.n_test << "\n"
              << "share (h,r): " << s.share_hr * 100.0 << "%\n"
              << "share (r,t): " << s.share_rt * 100.0 << "%\n"
              << "avg heads per (r,t): " << s.avg_heads_per_rt << "\n"
              << "avg tails per (h,r): " << s.avg_tails_per_hr << "\n";
    if (g.missing_text_count)
        std::cout << "warning: " << g.missing_text_count << " entities lack text\n";
    if (g.duplicate_triple_count)
        std::cout << "warning: " << g.duplicate_triple_count << " duplicate triples dropped\n";

    json j = {{"n_entities", s.n_entities},
              {"n_relations", s.n_relations},
              {"n_train", s.n_train},
              {"n_valid", s.n_valid},
              {"n_test", s.n_test},
              {"share_hr", s.share_hr},
              {"share_rt", s.share_rt},
              {"avg_heads_per_rt", s.avg_heads_per_rt},
              {"avg_tails_per_hr", s.avg_tails_per_hr},
              {"missing_text", g.missing_text_count},
              {"duplicate_triples", g.duplicate_triple_count}};
    if (s.n_train > 0) {
        auto [r_head, r_tail] = skg::focusing_ratios(g);
        std::cout << "focusing r_head: " << r_head << ", r_tail: " << r_tail << "\n";
        j["r_head"] = r_head;
        j["r_tail"] = r_tail;
    }
    j["config_hash"] = skg::fnv1a_hash("stats:" + j.dump());
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw skg::DataError("cannot write " + out_path);
        out << j.dump(2) << '\n';
    } else {
        std::cout << j.dump() << '\n';
    }
    return 0;
}

int cmd_expand(const std::string& data_dir, const std::string& out_path,
               std::size_t top_n, std::size_t min_group_size) {
    skg::KnowledgeGraph g = skg::load_graph_dir(data_dir);
    skg::ExpansionConfig cfg;
    cfg.top_n = top_n;
    cfg.min_group_size = min_group_size;
    auto examples = skg::expand_dataset(g, cfg);

    std::ofstream out(out_path);
    if (!out) throw skg::DataError("cannot write " + out_path);
    for (const auto& ex : examples) {
        json members = json::array();
        for (int m : ex.group_members) members.push_back(g.entity(m).id);
        json line = {{"direction", skg::direction_name(ex.direction)},
                     {"known_text", ex.known_text},
                     {"target", g.entity(ex.target).id},
                     {"relation", g.relations[static_cast<std::size_t>(ex.relation)].first},
                     {"members", members}};
        out << line.dump() << '\n';
    }
    std::cout << "wrote " << examples.size() << " examples to " << out_path << '\n';
    return 0;
}

int cmd_summarize(const std::string& text, const std::string& file,
                  std::size_t top_n) {
    std::string input = text;
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw skg::DataError("cannot open " + file);
        std::stringstream buf;
        buf << in.rdbuf();
        input = buf.str();
    }
    std::cout << skg::summarize(input, top_n) << '\n';
    return 0;
}

int cmd_train(const std::string& config_path, const std::string& data_dir_override,
              const std::string& out_dir, long long seed_override,
              int epochs_override, bool no_balancing) {
    skg::RunConfig cfg = skg::RunConfig::from_file(config_path);
    if (!data_dir_override.empty()) cfg.data_dir = data_dir_override;
    if (cfg.data_dir.empty())
        throw skg::DataError("no data_dir given (config key `data_dir` or --data-dir)");
    if (seed_override >= 0) cfg.train.seed = static_cast<std::uint64_t>(seed_override);
    if (epochs_override > 0) cfg.train.epochs = epochs_override;
    if (no_balancing) cfg.train.balancing = false;

    skg::KnowledgeGraph g = skg::load_graph_dir(cfg.data_dir);
    skg::TrainResult result = skg::train(g, cfg.train);

    fs::create_directories(out_dir);
    {
        std::ofstream out(fs::path(out_dir) / "resolved_config.json");
        json j = json::parse(cfg.resolved_json());
        j["config_hash"] = cfg.hash();
        out << j.dump(2) << '\n';
    }
    skg::save_checkpoint(result.best, (fs::path(out_dir) / "checkpoint").string());
    {
        std::ofstream out(fs::path(out_dir) / "train_log.jsonl");
        for (const auto& e : result.log) {
            json line = {{"epoch", e.epoch},
                         {"task_losses", {{"hp", e.loss_hp}, {"rp", e.loss_rp}, {"tp", e.loss_tp}}},
                         {"weights", weights_json(e.weights)},
                         {"val_mrr_hp", e.val_mrr_hp},
                         {"val_mrr_tp", e.val_mrr_tp},
                         {"val_acc_rp", e.val_acc_rp},
                         {"config_hash", cfg.hash()}};
            out << line.dump() << '\n';
        }
    }
    {
        std::ofstream out(fs::path(out_dir) / "weights.jsonl");
        for (const auto& e : result.log) {
            json line = weights_json(e.weights);
            line["epoch"] = e.epoch;
            out << line.dump() << '\n';
        }
    }
    std::cout << "best mean validation MRR: " << result.best_val_mrr << " (epoch "
              << result.best.epoch << ")\n";
    return 0;
}

int cmd_eval(const std::string& checkpoint_dir, const std::string& data_dir,
             const std::string& split_name, const std::string& out_path,
             int threads) {
    skg::Checkpoint ckpt = skg::load_checkpoint(checkpoint_dir);
    skg::KnowledgeGraph g = skg::load_graph_dir(data_dir);
    if (static_cast<int>(g.n_relations()) != ckpt.model.n_relations)
        throw skg::DataError("relation count mismatch between checkpoint and dataset");

    const std::vector<skg::Triple>* split = nullptr;
    if (split_name == "test") split = &g.test;
    else if (split_name == "valid") split = &g.valid;
    else if (split_name == "train") split = &g.train;
    else throw skg::DataError("unknown split: " + split_name);
    if (split->empty()) throw skg::DataError("split `" + split_name + "` is empty");

    skg::RankingReport report = skg::evaluate(ckpt.model, g, *split, threads);
    double rp_acc = skg::relation_accuracy(ckpt.model, g, *split);
    std::uint64_t model_hash = skg::checkpoint_model_hash(checkpoint_dir);

    json j = {{"split", split_name},
              {"n_queries", split->size()},
              {"head_prediction", metrics_json(report.head)},
              {"tail_prediction", metrics_json(report.tail)},
              {"averaged", metrics_json(report.averaged)},
              {"relation_accuracy", rp_acc},
              {"counters", {{"main_invocations", report.main_invocations},
                            {"secondary_invocations", report.secondary_invocations}}},
              {"model_hash", model_hash}};
    j["config_hash"] = skg::fnv1a_hash("eval:" + split_name + ":" + std::to_string(model_hash));

    std::cout << "averaged MRR " << report.averaged.mrr << ", Hit@1 "
              << report.averaged.hit1 << ", Hit@3 " << report.averaged.hit3
              << ", Hit@10 " << report.averaged.hit10 << '\n';
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw skg::DataError("cannot write " + out_path);
        out << j.dump(2) << '\n';
    } else {
        std::cout << j.dump() << '\n';
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SKG knowledge-graph-completion toolkit"};
    app.require_subcommand(1);

    std::string data_dir, out_path, config_path, checkpoint_dir, split = "test";
    std::string text, file;
    std::size_t top_n = 3, min_group_size = 2;
    long long seed = -1;
    int epochs = 0, threads = 1;
    bool no_balancing = false;

    auto* stats = app.add_subcommand("stats", "Dataset statistics and focusing ratios");
    stats->add_option("--data-dir", data_dir, "dataset directory")->required();
    stats->add_option("--out", out_path, "write JSON stats to this file");

    auto* expand = app.add_subcommand("expand", "Write the expanded training dataset");
    expand->add_option("--data-dir", data_dir)->required();
    expand->add_option("--out", out_path, "output JSON-lines file")->required();
    expand->add_option("--top-n", top_n, "summary sentence count");
    expand->add_option("--min-group-size", min_group_size);

    auto* train = app.add_subcommand("train", "Train a bi-encoder model");
    train->add_option("--config", config_path, "run config JSON")->required();
    train->add_option("--data-dir", data_dir, "override config data_dir");
    train->add_option("--out", out_path, "output directory")->required();
    train->add_option("--seed", seed, "override config seed");
    train->add_option("--epochs", epochs, "override config epochs");
    train->add_flag("--no-balancing", no_balancing);
    train->add_option("--threads", threads);

    auto* eval = app.add_subcommand("eval", "Filtered ranking evaluation");
    eval->add_option("--checkpoint", checkpoint_dir)->required();
    eval->add_option("--data-dir", data_dir)->required();
    eval->add_option("--split", split, "train|valid|test");
    eval->add_option("--out", out_path, "write JSON report to this file");
    eval->add_option("--threads", threads);

    auto* summ = app.add_subcommand("summarize", "TextRank extractive summary");
    summ->add_option("--text", text);
    summ->add_option("--file", file);
    summ->add_option("--top-n", top_n);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (stats->parsed()) return cmd_stats(data_dir, out_path);
        if (expand->parsed()) return cmd_expand(data_dir, out_path, top_n, min_group_size);
        if (train->parsed())
            return cmd_train(config_path, data_dir, out_path, seed, epochs, no_balancing);
        if (eval->parsed()) return cmd_eval(checkpoint_dir, data_dir, split, out_path, threads);
        if (summ->parsed()) return cmd_summarize(text, file, top_n);
    } catch (const skg::DataError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const skg::NumericError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
