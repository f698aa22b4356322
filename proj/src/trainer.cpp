#include "skg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "skg/expansion.hpp"
#include "skg/objective.hpp"
#include "skg/textrank.hpp"

namespace skg {

namespace {

enum Task { kHp = 0, kRp = 1, kTp = 2 };

struct GradBuffers {
    std::vector<double> emb;
    std::vector<double> proj;
    std::vector<double> bias;

    void reset(const EncoderParams& p) {
        emb.assign(p.token_embeddings.size(), 0.0);
        proj.assign(p.projection.size(), 0.0);
        bias.assign(p.projection_bias.size(), 0.0);
    }

    void add(const EncoderParams& p, const EncoderGrads& g, double scale) {
        for (const auto& [row, grad] : g.token_rows) {
            double* dst = &emb[static_cast<std::size_t>(row) * p.dim_in];
            for (int i = 0; i < p.dim_in; ++i) dst[i] += grad[static_cast<std::size_t>(i)] * scale;
        }
        for (std::size_t i = 0; i < proj.size(); ++i) proj[i] += g.projection[i] * scale;
        for (std::size_t i = 0; i < bias.size(); ++i) bias[i] += g.projection_bias[i] * scale;
    }
};

struct EncoderOptState {
    AdamWState emb, proj, bias;
};

void apply(EncoderParams& p, const GradBuffers& g, EncoderOptState& s,
           const AdamWConfig& cfg, double lr) {
    adamw_step(p.token_embeddings, g.emb, s.emb, cfg, lr);
    adamw_step(p.projection, g.proj, s.proj, cfg, lr);
    adamw_step(p.projection_bias, g.bias, s.bias, cfg, lr);
}

std::vector<std::string> vocab_corpus(const KnowledgeGraph& g) {
    std::vector<char> in_train(g.n_entities(), 0);
    std::vector<char> rel_in_train(g.n_relations(), 0);
    for (const Triple& t : g.train) {
        in_train[static_cast<std::size_t>(t.head)] = 1;
        in_train[static_cast<std::size_t>(t.tail)] = 1;
        rel_in_train[static_cast<std::size_t>(t.relation)] = 1;
    }
    std::vector<std::string> corpus;
    for (std::size_t e = 0; e < g.n_entities(); ++e)
        if (in_train[e]) corpus.push_back(g.entity_text(static_cast<int>(e)));
    for (std::size_t r = 0; r < g.n_relations(); ++r)
        if (rel_in_train[r]) corpus.push_back(g.relation_text(static_cast<int>(r)));
    return corpus;
}

std::string rng_state_string(const std::mt19937& rng) {
    std::ostringstream os;
    os << rng;
    return os.str();
}

double f32(double x) { return static_cast<double>(static_cast<float>(x)); }

}  // namespace

TrainResult train(const KnowledgeGraph& g, const TrainConfig& cfg) {
    if (g.train.empty()) throw DataError("train: empty train split");
    if (cfg.batch_size < 2)
        throw DataError("train: batch_size must be >= 2 for in-batch negatives");
    if (cfg.epochs < 1) throw DataError("train: epochs must be >= 1");

    std::mt19937 rng(static_cast<std::uint32_t>(cfg.seed));

    Vocabulary vocab = build_vocab(vocab_corpus(g), cfg.vocab_size);
    BiEncoderModel model = BiEncoderModel::init(
        std::move(vocab), static_cast<int>(g.n_relations()), cfg.dim, cfg.tau_init,
        cfg.max_tokens, rng);
    model.log_inv_temperature = f32(model.log_inv_temperature);

    // Contrastive pools, split by prediction direction.
    std::vector<ExpandedExample> hp_pool, tp_pool;
    {
        ExpansionConfig ecfg;
        ecfg.top_n = cfg.top_n;
        ecfg.min_group_size = cfg.min_group_size;
        std::vector<ExpandedExample> all;
        if (cfg.expansion) {
            all = expand_dataset(g, ecfg);
        } else {
            for (const Triple& t : g.train) {
                ExpandedExample hp{Direction::HeadPrediction,
                                   original_known_text(g, t, Direction::HeadPrediction),
                                   t.head, t.relation, {t.tail}};
                ExpandedExample tp{Direction::TailPrediction,
                                   original_known_text(g, t, Direction::TailPrediction),
                                   t.tail, t.relation, {t.head}};
                all.push_back(std::move(hp));
                all.push_back(std::move(tp));
            }
        }
        for (auto& ex : all) {
            if (ex.direction == Direction::HeadPrediction) hp_pool.push_back(std::move(ex));
            else tp_pool.push_back(std::move(ex));
        }
    }
    std::vector<std::size_t> rp_pool(g.train.size());
    for (std::size_t i = 0; i < rp_pool.size(); ++i) rp_pool[i] = i;

    std::size_t total_examples = hp_pool.size() + tp_pool.size() + rp_pool.size();
    std::int64_t steps_per_epoch = static_cast<std::int64_t>(
        (total_examples + static_cast<std::size_t>(cfg.batch_size) - 1) /
        static_cast<std::size_t>(cfg.batch_size));
    std::int64_t total_steps = steps_per_epoch * cfg.epochs;

    EncoderOptState main_opt, sec_opt;
    AdamWState rel_opt, theta_opt;
    std::vector<float> theta = {static_cast<float>(model.log_inv_temperature)};

    LossConfig loss_cfg;
    loss_cfg.additive_margin = cfg.gamma;

    std::array<double, 3> focusing = {1.0, 1.0, 1.0};
    if (cfg.balancing) {
        auto [r_head, r_tail] = focusing_ratios(g);
        focusing = {r_head, 1.0, r_tail};
    }

    TaskWeights weights = init_weights();
    TrainResult result;
    std::int64_t global_step = 0;

    std::vector<std::size_t> hp_order(hp_pool.size()), tp_order(tp_pool.size());
    GradBuffers main_grads, sec_grads;

    auto contrastive_step = [&](const std::vector<const ExpandedExample*>& batch,
                                Direction direction, double weight,
                                double lr) -> double {
        std::size_t n = batch.size();
        std::vector<std::vector<int>> known_tokens(n), target_tokens(n);
        std::vector<std::vector<double>> known(n), target(n);
        for (std::size_t i = 0; i < n; ++i) {
            known_tokens[i] = tokenize(model.vocab, batch[i]->known_text, cfg.max_tokens);
            target_tokens[i] =
                tokenize(model.vocab, g.entity_text(batch[i]->target), cfg.max_tokens);
            known[i] = encode(model.main_encoder, known_tokens[i]);
            target[i] = encode(model.secondary_encoder, target_tokens[i]);
        }

        // In-batch false negatives: candidates that complete a known-true
        // triple with the anchor's key are excluded from the denominator.
        std::vector<std::vector<char>> mask(n, std::vector<char>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (int m : batch[i]->group_members) {
                    bool known_true =
                        direction == Direction::TailPrediction
                            ? g.is_known(m, batch[i]->relation, batch[j]->target)
                            : g.is_known(batch[j]->target, batch[i]->relation, m);
                    if (known_true) {
                        mask[i][j] = 1;
                        break;
                    }
                }
            }

        loss_cfg.log_inv_temperature = model.log_inv_temperature;
        InfoNceResult r = info_nce_loss(known, target, loss_cfg, &mask);
        if (!std::isfinite(r.loss))
            throw NumericError("training diverged: non-finite contrastive loss");

        main_grads.reset(model.main_encoder);
        sec_grads.reset(model.secondary_encoder);
        for (std::size_t i = 0; i < n; ++i) {
            main_grads.add(model.main_encoder,
                           encode_backward(model.main_encoder, known_tokens[i], r.grad_known[i]),
                           weight);
            sec_grads.add(model.secondary_encoder,
                          encode_backward(model.secondary_encoder, target_tokens[i], r.grad_target[i]),
                          weight);
        }
        apply(model.main_encoder, main_grads, main_opt, cfg.optimizer, lr);
        apply(model.secondary_encoder, sec_grads, sec_opt, cfg.optimizer, lr);

        adamw_step(theta, {r.grad_log_inv_temperature * weight}, theta_opt,
                   cfg.optimizer, lr);
        loss_cfg.log_inv_temperature = static_cast<double>(theta[0]);
        loss_cfg.clamp_temperature();
        model.log_inv_temperature = f32(loss_cfg.log_inv_temperature);
        theta[0] = static_cast<float>(model.log_inv_temperature);
        return r.loss;
    };

    auto relation_step = [&](const std::vector<std::size_t>& batch, double weight,
                             double lr) -> double {
        std::size_t n = batch.size();
        double inv_n = 1.0 / static_cast<double>(n);
        double loss = 0.0;
        main_grads.reset(model.main_encoder);
        std::vector<double> rel_grad(model.relation_matrix.size(), 0.0);
        std::size_t dim = static_cast<std::size_t>(model.main_encoder.dim_out);

        for (std::size_t b : batch) {
            const Triple& t = g.train[b];
            std::vector<int> tokens =
                tokenize(model.vocab, relation_input_text(g, t), cfg.max_tokens);
            std::vector<double> e_ht = encode(model.main_encoder, tokens);
            std::vector<double> logits =
                relation_logits(model.relation_matrix, model.n_relations, e_ht);
            CrossEntropyResult ce = relation_ce_loss(logits, t.relation);
            loss += ce.loss * inv_n;

            std::vector<double> ge(dim, 0.0);
            for (int r = 0; r < model.n_relations; ++r) {
                double gl = ce.grad_logits[static_cast<std::size_t>(r)] * inv_n;
                const float* row = &model.relation_matrix[static_cast<std::size_t>(r) * dim];
                double* gr = &rel_grad[static_cast<std::size_t>(r) * dim];
                for (std::size_t d = 0; d < dim; ++d) {
                    gr[d] += gl * e_ht[d];
                    ge[d] += gl * static_cast<double>(row[d]);
                }
            }
            main_grads.add(model.main_encoder,
                           encode_backward(model.main_encoder, tokens, ge), weight);
        }
        if (!std::isfinite(loss))
            throw NumericError("training diverged: non-finite relation loss");
        for (auto& x : rel_grad) x *= weight;
        apply(model.main_encoder, main_grads, main_opt, cfg.optimizer, lr);
        adamw_step(model.relation_matrix, rel_grad, rel_opt, cfg.optimizer, lr);
        return loss;
    };

    for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
        std::iota(hp_order.begin(), hp_order.end(), 0);
        std::iota(tp_order.begin(), tp_order.end(), 0);
        std::shuffle(hp_order.begin(), hp_order.end(), rng);
        std::shuffle(tp_order.begin(), tp_order.end(), rng);
        std::shuffle(rp_pool.begin(), rp_pool.end(), rng);
        std::size_t hp_cur = 0, tp_cur = 0, rp_cur = 0;

        double loss_sum[3] = {0, 0, 0};
        std::int64_t loss_count[3] = {0, 0, 0};

        for (std::int64_t step = 0; step < steps_per_epoch; ++step) {
            double lr = linear_decay_lr(cfg.learning_rate, global_step, total_steps);
            ++global_step;

            std::uniform_int_distribution<std::size_t> pick(0, total_examples - 1);
            std::size_t u = pick(rng);
            Task task = u < hp_pool.size()            ? kHp
                        : u < hp_pool.size() + rp_pool.size() ? kRp
                                                              : kTp;

            if (task == kRp) {
                std::vector<std::size_t> batch;
                for (int b = 0; b < cfg.batch_size; ++b) {
                    if (rp_cur >= rp_pool.size()) rp_cur = 0;
                    batch.push_back(rp_pool[rp_cur++]);
                }
                loss_sum[kRp] += relation_step(batch, weights.w_rp, lr);
                ++loss_count[kRp];
            } else {
                auto& pool = task == kHp ? hp_pool : tp_pool;
                auto& order = task == kHp ? hp_order : tp_order;
                auto& cur = task == kHp ? hp_cur : tp_cur;
                if (pool.empty()) continue;
                std::vector<const ExpandedExample*> batch;
                for (int b = 0; b < cfg.batch_size; ++b) {
                    if (cur >= order.size()) cur = 0;
                    batch.push_back(&pool[order[cur++]]);
                }
                Direction dir = task == kHp ? Direction::HeadPrediction
                                            : Direction::TailPrediction;
                double w = task == kHp ? weights.w_hp : weights.w_tp;
                loss_sum[task] += contrastive_step(batch, dir, w, lr);
                ++loss_count[task];
            }
        }

        EpochLog log;
        log.epoch = epoch;
        log.weights = weights;
        for (int t : {kHp, kRp, kTp}) {
            double avg = loss_count[t] ? loss_sum[t] / static_cast<double>(loss_count[t]) : 0.0;
            (t == kHp ? log.loss_hp : t == kRp ? log.loss_rp : log.loss_tp) = avg;
        }

        if (!g.valid.empty()) {
            RankingReport report = evaluate(model, g, g.valid);
            log.val_mrr_hp = report.head.mrr;
            log.val_mrr_tp = report.tail.mrr;
            log.val_acc_rp = relation_accuracy(model, g, g.valid);

            double mean_mrr = (log.val_mrr_hp + log.val_mrr_tp) / 2.0;
            if (result.log.empty() || mean_mrr > result.best_val_mrr) {
                result.best_val_mrr = mean_mrr;
                result.best = Checkpoint{model, epoch, weights, rng_state_string(rng)};
            }

            if (cfg.balancing && cfg.epochs >= 2) {
                weights = update_weights({log.val_mrr_hp, log.val_acc_rp, log.val_mrr_tp},
                                         focusing);
            }
        }
        result.log.push_back(log);
    }

    result.final_state = Checkpoint{model, cfg.epochs, weights, rng_state_string(rng)};
    if (g.valid.empty()) result.best = result.final_state;
    return result;
}

}  // namespace skg
