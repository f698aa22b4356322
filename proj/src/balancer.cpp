#include "skg/balancer.hpp"

#include <cmath>

namespace skg {

double clamp_accuracy(double a) {
    if (a < kAccuracyEps) return kAccuracyEps;
    if (a > 1.0 - kAccuracyEps) return 1.0 - kAccuracyEps;
    return a;
}

double difficulty(double a_prev, double r_k) {
    double a = clamp_accuracy(a_prev);
    return -std::pow(1.0 - a, r_k) * std::log(a);
}

std::vector<double> softmax_weights(const std::vector<double>& difficulties, int k_tasks) {
    if (difficulties.empty()) throw NumericError("softmax_weights: no tasks");
    double mx = difficulties[0];
    for (double d : difficulties) mx = std::max(mx, d);
    double denom = 0.0;
    for (double d : difficulties) denom += std::exp(d - mx);
    std::vector<double> w(difficulties.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        w[i] = static_cast<double>(k_tasks) * std::exp(difficulties[i] - mx) / denom;
    return w;
}

TaskWeights init_weights() { return TaskWeights{}; }

TaskWeights update_weights(const std::array<double, 3>& accuracies,
                           const std::array<double, 3>& focusing) {
    std::vector<double> d(3);
    for (std::size_t k = 0; k < 3; ++k) d[k] = difficulty(accuracies[k], focusing[k]);
    std::vector<double> w = softmax_weights(d, 3);
    TaskWeights out;
    out.w_hp = w[0];
    out.w_rp = w[1];
    out.w_tp = w[2];
    out.a_hp = clamp_accuracy(accuracies[0]);
    out.a_rp = clamp_accuracy(accuracies[1]);
    out.a_tp = clamp_accuracy(accuracies[2]);
    return out;
}

double mrr_signal(const std::vector<int>& ranks) {
    if (ranks.empty()) throw DataError("mrr_signal: no ranks");
    double s = 0.0;
    for (int r : ranks) s += 1.0 / static_cast<double>(r);
    return clamp_accuracy(s / static_cast<double>(ranks.size()));
}

}  // namespace skg
