#pragma once

#include <cmath>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

struct LossConfig {
    double additive_margin = 0.02;
    // tau = exp(-log_inv_temperature); learnable, clamped to [tau_min, tau_max].
    double log_inv_temperature = std::log(1.0 / 0.05);
    double tau_min = 0.005;
    double tau_max = 0.5;

    double tau() const { return std::exp(-log_inv_temperature); }
    void clamp_temperature() {
        double lo = std::log(1.0 / tau_max);
        double hi = std::log(1.0 / tau_min);
        if (log_inv_temperature < lo) log_inv_temperature = lo;
        if (log_inv_temperature > hi) log_inv_temperature = hi;
    }
};

double cosine_score(const std::vector<double>& a, const std::vector<double>& b);

struct InfoNceResult {
    double loss = 0.0;
    std::vector<std::vector<double>> grad_known;   // N x dim
    std::vector<std::vector<double>> grad_target;  // N x dim
    double grad_log_inv_temperature = 0.0;
};

// InfoNCE with additive margin over in-batch negatives; positives pair i<->i.
// negative_mask[i][j] true marks s_ij as a false negative excluded from the
// denominator (never the diagonal). Loss is the batch mean.
InfoNceResult info_nce_loss(const std::vector<std::vector<double>>& known,
                            const std::vector<std::vector<double>>& target,
                            const LossConfig& cfg,
                            const std::vector<std::vector<char>>* negative_mask = nullptr);

// logits = e_ht . W^T for an n_relations x dim classifier matrix.
std::vector<double> relation_logits(const std::vector<float>& relation_matrix,
                                    int n_relations,
                                    const std::vector<double>& e_ht);

struct CrossEntropyResult {
    double loss = 0.0;
    std::vector<double> grad_logits;  // softmax - onehot
};

CrossEntropyResult relation_ce_loss(const std::vector<double>& logits, int true_relation);

struct TaskWeights;

double total_loss(double l_hp, double l_rp, double l_tp, const TaskWeights& w);

}  // namespace skg
