#include "skg/objective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "skg/balancer.hpp"

namespace skg {

double cosine_score(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw NumericError("cosine_score: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

InfoNceResult info_nce_loss(const std::vector<std::vector<double>>& known,
                            const std::vector<std::vector<double>>& target,
                            const LossConfig& cfg,
                            const std::vector<std::vector<char>>* negative_mask) {
    std::size_t n = known.size();
    if (n == 0) throw NumericError("info_nce_loss: empty batch");
    if (target.size() != n) throw NumericError("info_nce_loss: batch size mismatch");
    std::size_t dim = known[0].size();

    double inv_tau = std::exp(cfg.log_inv_temperature);
    InfoNceResult r;
    r.grad_known.assign(n, std::vector<double>(dim, 0.0));
    r.grad_target.assign(n, std::vector<double>(dim, 0.0));

    std::vector<double> logits(n);
    std::vector<double> probs(n);
    double inv_n = 1.0 / static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            bool masked = j != i && negative_mask != nullptr && (*negative_mask)[i][j];
            if (masked) {
                logits[j] = -std::numeric_limits<double>::infinity();
                continue;
            }
            double s = cosine_score(known[i], target[j]);
            if (j == i) s -= cfg.additive_margin;
            logits[j] = s * inv_tau;
        }

        double mx = *std::max_element(logits.begin(), logits.end());
        double denom = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            denom += std::isinf(logits[j]) ? 0.0 : std::exp(logits[j] - mx);
        double log_denom = mx + std::log(denom);
        r.loss += (log_denom - logits[i]) * inv_n;

        for (std::size_t j = 0; j < n; ++j) {
            if (std::isinf(logits[j])) {
                probs[j] = 0.0;
                continue;
            }
            probs[j] = std::exp(logits[j] - log_denom);
        }

        for (std::size_t j = 0; j < n; ++j) {
            if (std::isinf(logits[j])) continue;
            double coeff = (probs[j] - (j == i ? 1.0 : 0.0)) * inv_n;
            // d logit / d score = 1/tau; d logit / d theta = logit.
            double gs = coeff * inv_tau;
            for (std::size_t d = 0; d < dim; ++d) {
                r.grad_known[i][d] += gs * target[j][d];
                r.grad_target[j][d] += gs * known[i][d];
            }
            r.grad_log_inv_temperature += coeff * logits[j];
        }
    }
    return r;
}

std::vector<double> relation_logits(const std::vector<float>& relation_matrix,
                                    int n_relations,
                                    const std::vector<double>& e_ht) {
    if (n_relations <= 0 ||
        relation_matrix.size() != static_cast<std::size_t>(n_relations) * e_ht.size())
        throw NumericError("relation_logits: classifier matrix shape mismatch");
    std::size_t dim = e_ht.size();
    std::vector<double> logits(static_cast<std::size_t>(n_relations), 0.0);
    for (int r = 0; r < n_relations; ++r) {
        double z = 0.0;
        const float* row = &relation_matrix[static_cast<std::size_t>(r) * dim];
        for (std::size_t d = 0; d < dim; ++d) z += static_cast<double>(row[d]) * e_ht[d];
        logits[static_cast<std::size_t>(r)] = z;
    }
    return logits;
}

CrossEntropyResult relation_ce_loss(const std::vector<double>& logits, int true_relation) {
    if (true_relation < 0 || static_cast<std::size_t>(true_relation) >= logits.size())
        throw NumericError("relation_ce_loss: relation index out of range");
    double mx = *std::max_element(logits.begin(), logits.end());
    double denom = 0.0;
    for (double z : logits) denom += std::exp(z - mx);
    double log_denom = mx + std::log(denom);

    CrossEntropyResult r;
    r.loss = log_denom - logits[static_cast<std::size_t>(true_relation)];
    r.grad_logits.resize(logits.size());
    for (std::size_t k = 0; k < logits.size(); ++k) {
        double p = std::exp(logits[k] - log_denom);
        r.grad_logits[k] = p - (static_cast<int>(k) == true_relation ? 1.0 : 0.0);
    }
    return r;
}

double total_loss(double l_hp, double l_rp, double l_tp, const TaskWeights& w) {
    return l_hp * w.w_hp + l_rp * w.w_rp + l_tp * w.w_tp;
}

}  // namespace skg
