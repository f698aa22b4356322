#pragma once

#include <cstdint>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

struct AdamWConfig {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    double weight_decay = 1e-4;
};

struct AdamWState {
    std::vector<float> m;
    std::vector<float> v;
    std::int64_t step = 0;
};

// Decoupled-weight-decay adaptive-moment update. The caller supplies the
// already-decayed learning rate.
void adamw_step(std::vector<float>& params, const std::vector<double>& grads,
                AdamWState& state, const AdamWConfig& cfg, double lr);

// Plain gradient descent, used where exact loss-scaling linearity matters.
void sgd_step(std::vector<float>& params, const std::vector<double>& grads, double lr);

// Linear decay from lr_max to 0 across total planned steps.
double linear_decay_lr(double lr_max, std::int64_t step, std::int64_t total_steps);

}  // namespace skg
