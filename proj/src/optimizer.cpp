#include "skg/optimizer.hpp"

#include <cmath>

namespace skg {

void adamw_step(std::vector<float>& params, const std::vector<double>& grads,
                AdamWState& state, const AdamWConfig& cfg, double lr) {
    if (params.size() != grads.size())
        throw NumericError("adamw_step: parameter/gradient shape mismatch");
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0f);
        state.v.assign(params.size(), 0.0f);
    }
    if (state.m.size() != params.size())
        throw NumericError("adamw_step: optimizer state shape mismatch");

    for (double g : grads)
        if (!std::isfinite(g)) throw NumericError("adamw_step: non-finite gradient");

    ++state.step;
    double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
    double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));

    for (std::size_t i = 0; i < params.size(); ++i) {
        double g = grads[i];
        double m = cfg.beta1 * static_cast<double>(state.m[i]) + (1.0 - cfg.beta1) * g;
        double v = cfg.beta2 * static_cast<double>(state.v[i]) + (1.0 - cfg.beta2) * g * g;
        state.m[i] = static_cast<float>(m);
        state.v[i] = static_cast<float>(v);
        double m_hat = m / bc1;
        double v_hat = v / bc2;
        double p = static_cast<double>(params[i]);
        p -= lr * (m_hat / (std::sqrt(v_hat) + cfg.eps) + cfg.weight_decay * p);
        params[i] = static_cast<float>(p);
    }
}

void sgd_step(std::vector<float>& params, const std::vector<double>& grads, double lr) {
    if (params.size() != grads.size())
        throw NumericError("sgd_step: parameter/gradient shape mismatch");
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (!std::isfinite(grads[i])) throw NumericError("sgd_step: non-finite gradient");
        params[i] = static_cast<float>(static_cast<double>(params[i]) - lr * grads[i]);
    }
}

double linear_decay_lr(double lr_max, std::int64_t step, std::int64_t total_steps) {
    if (total_steps <= 0) return lr_max;
    double frac = 1.0 - static_cast<double>(step) / static_cast<double>(total_steps);
    if (frac < 0.0) frac = 0.0;
    return lr_max * frac;
}

}  // namespace skg
