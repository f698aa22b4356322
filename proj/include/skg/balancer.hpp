#pragma once

#include <array>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

// Per-task loss weights for {HP, RP, TP}. Softmax-normalized difficulties
// scaled by the task count, so the weights always sum to K.
struct TaskWeights {
    double w_hp = 1.0;
    double w_rp = 1.0;
    double w_tp = 1.0;
    // Previous-epoch normalized accuracies; negative means not yet observed.
    double a_hp = -1.0;
    double a_rp = -1.0;
    double a_tp = -1.0;
};

constexpr double kAccuracyEps = 1e-6;

double clamp_accuracy(double a);

// d = -(1 - a_prev)^{r_k} * log(a_prev), a_prev clamped into [eps, 1-eps].
double difficulty(double a_prev, double r_k);

// w_k = K * exp(d_k) / sum_i exp(d_i).
std::vector<double> softmax_weights(const std::vector<double>& difficulties, int k_tasks);

TaskWeights init_weights();

// accuracies and focusing ordered {HP, RP, TP}.
TaskWeights update_weights(const std::array<double, 3>& accuracies,
                           const std::array<double, 3>& focusing);

// Mean reciprocal rank, clamped into (0,1) for use as an accuracy signal.
double mrr_signal(const std::vector<int>& ranks);

}  // namespace skg
