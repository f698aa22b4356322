#include "skg/evaluator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "skg/objective.hpp"

namespace skg {

namespace {

constexpr double kFilteredScore = -2.0;  // below any achievable cosine

}  // namespace

std::vector<std::vector<double>> precompute_entity_embeddings(
    const BiEncoderModel& model, const KnowledgeGraph& g, int threads) {
    std::size_t n = g.n_entities();
    std::vector<std::vector<double>> rows(n);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t e = begin; e < end; ++e)
            rows[e] = encode(model.secondary_encoder,
                             tokenize(model.vocab, g.entity_text(static_cast<int>(e)),
                                      model.max_tokens));
    };
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::thread> pool;
        std::size_t chunk = (n + static_cast<std::size_t>(threads) - 1) /
                            static_cast<std::size_t>(threads);
        for (int t = 0; t < threads; ++t) {
            std::size_t begin = static_cast<std::size_t>(t) * chunk;
            if (begin >= n) break;
            pool.emplace_back(work, begin, std::min(n, begin + chunk));
        }
        for (auto& th : pool) th.join();
    }
    model.secondary_invocations += n;
    return rows;
}

std::vector<int> rank_queries(const BiEncoderModel& model, const KnowledgeGraph& g,
                              const std::vector<Triple>& split, Direction direction,
                              const std::vector<std::vector<double>>& entity_embeddings) {
    std::vector<int> ranks;
    ranks.reserve(split.size());
    std::size_t n = g.n_entities();

    for (const Triple& q : split) {
        int gold = direction == Direction::HeadPrediction ? q.head : q.tail;
        if (gold < 0 || static_cast<std::size_t>(gold) >= entity_embeddings.size())
            throw DataError("rank_queries: gold entity missing from the candidate matrix");

        std::vector<double> known =
            model.encode_main(original_known_text(g, q, direction));

        std::vector<double> scores(n);
        for (std::size_t e = 0; e < n; ++e)
            scores[e] = cosine_score(known, entity_embeddings[e]);

        // Filtered setting: other known-true answers leave the competition.
        for (std::size_t e = 0; e < n; ++e) {
            if (static_cast<int>(e) == gold) continue;
            bool known_true =
                direction == Direction::HeadPrediction
                    ? g.is_known(static_cast<int>(e), q.relation, q.tail)
                    : g.is_known(q.head, q.relation, static_cast<int>(e));
            if (known_true) scores[e] = kFilteredScore;
        }

        double gold_score = scores[static_cast<std::size_t>(gold)];
        std::size_t better = 0, equal = 0;
        for (std::size_t e = 0; e < n; ++e) {
            if (static_cast<int>(e) == gold || scores[e] == kFilteredScore) continue;
            if (scores[e] > gold_score) ++better;
            else if (scores[e] == gold_score) ++equal;
        }
        ranks.push_back(static_cast<int>(1 + better + equal / 2));
    }
    return ranks;
}

DirectionMetrics direction_metrics(const std::vector<int>& ranks) {
    if (ranks.empty()) throw DataError("direction_metrics: empty rank list");
    DirectionMetrics m;
    double n = static_cast<double>(ranks.size());
    for (int r : ranks) {
        m.mrr += 1.0 / static_cast<double>(r);
        if (r <= 1) m.hit1 += 1.0;
        if (r <= 3) m.hit3 += 1.0;
        if (r <= 10) m.hit10 += 1.0;
    }
    m.mrr /= n;
    m.hit1 /= n;
    m.hit3 /= n;
    m.hit10 /= n;
    return m;
}

RankingReport aggregate(std::vector<int> ranks_head, std::vector<int> ranks_tail) {
    RankingReport r;
    r.head = direction_metrics(ranks_head);
    r.tail = direction_metrics(ranks_tail);
    r.averaged.mrr = (r.head.mrr + r.tail.mrr) / 2.0;
    r.averaged.hit1 = (r.head.hit1 + r.tail.hit1) / 2.0;
    r.averaged.hit3 = (r.head.hit3 + r.tail.hit3) / 2.0;
    r.averaged.hit10 = (r.head.hit10 + r.tail.hit10) / 2.0;
    r.ranks_head = std::move(ranks_head);
    r.ranks_tail = std::move(ranks_tail);
    return r;
}

double relation_accuracy(const BiEncoderModel& model, const KnowledgeGraph& g,
                         const std::vector<Triple>& split) {
    if (split.empty()) return 0.0;
    std::size_t correct = 0;
    for (const Triple& t : split) {
        std::vector<double> e_ht = model.encode_main(relation_input_text(g, t));
        std::vector<double> logits =
            relation_logits(model.relation_matrix, model.n_relations, e_ht);
        std::size_t arg = 0;
        for (std::size_t k = 1; k < logits.size(); ++k)
            if (logits[k] > logits[arg]) arg = k;  // first index wins ties
        if (static_cast<int>(arg) == t.relation) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(split.size());
}

RankingReport evaluate(const BiEncoderModel& model, const KnowledgeGraph& g,
                       const std::vector<Triple>& split, int threads) {
    model.reset_counters();
    auto entity_embeddings = precompute_entity_embeddings(model, g, threads);
    auto ranks_head =
        rank_queries(model, g, split, Direction::HeadPrediction, entity_embeddings);
    auto ranks_tail =
        rank_queries(model, g, split, Direction::TailPrediction, entity_embeddings);
    RankingReport r = aggregate(std::move(ranks_head), std::move(ranks_tail));
    r.main_invocations = model.main_invocations;
    r.secondary_invocations = model.secondary_invocations;
    return r;
}

}  // namespace skg
