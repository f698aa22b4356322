#include "skg/textrank.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace skg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::vector<std::string> split_sentences(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        bool is_delim = (c == '.' || c == ';' || c == '!' || c == '?');
        bool at_boundary =
            is_delim && (i + 1 == text.size() ||
                         std::isspace(static_cast<unsigned char>(text[i + 1])));
        if (at_boundary) {
            std::string s = trim(cur);
            if (!s.empty()) out.push_back(std::move(s));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    std::string s = trim(cur);
    if (!s.empty()) out.push_back(std::move(s));
    return out;
}

std::vector<std::string> word_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (std::isalnum(static_cast<unsigned char>(c))) {
            cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double sentence_similarity(const std::vector<std::string>& a,
                           const std::vector<std::string>& b) {
    std::unordered_set<std::string> set_a(a.begin(), a.end());
    std::unordered_set<std::string> set_b(b.begin(), b.end());
    std::size_t shared = 0;
    for (const auto& w : set_a)
        if (set_b.count(w)) ++shared;
    if (shared == 0) return 0.0;
    if (a.size() < 2 || b.size() < 2) {
        double denom = std::max(1.0, (static_cast<double>(a.size()) +
                                      static_cast<double>(b.size())) / 2.0);
        return static_cast<double>(shared) / denom;
    }
    return static_cast<double>(shared) /
           (std::log(static_cast<double>(a.size())) +
            std::log(static_cast<double>(b.size())));
}

SentenceGraph build_sentence_graph(const std::vector<std::string>& sentences,
                                   double damping) {
    SentenceGraph g;
    g.damping = damping;
    g.sentences.reserve(sentences.size());
    for (const auto& s : sentences) g.sentences.push_back(word_tokens(s));
    std::size_t m = g.sentences.size();
    g.weights.assign(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double w = sentence_similarity(g.sentences[i], g.sentences[j]);
            g.weights[i][j] = w;
            g.weights[j][i] = w;
        }
    return g;
}

std::vector<double> textrank_scores(const SentenceGraph& g, double tol,
                                    int max_iter) {
    std::size_t m = g.sentences.size();
    if (m == 0) throw DataError("textrank_scores: empty sentence graph");
    double d = g.damping;

    std::vector<double> row_sum(m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
        row_sum[j] = std::accumulate(g.weights[j].begin(), g.weights[j].end(), 0.0);

    std::vector<double> scores(m, 1.0 / static_cast<double>(m));
    std::vector<double> next(m, 0.0);
    for (int iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < m; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                if (j == i || row_sum[j] == 0.0 || g.weights[j][i] == 0.0) continue;
                acc += g.weights[j][i] / row_sum[j] * scores[j];
            }
            next[i] = (1.0 - d) + d * acc;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            delta = std::max(delta, std::abs(next[i] - scores[i]));
        scores.swap(next);
        if (delta < tol) break;
    }
    return scores;
}

std::vector<std::size_t> select_top_sentences(const std::vector<double>& scores,
                                              std::size_t top_n) {
    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];  // stable sort keeps earlier index on ties
    });
    if (order.size() > top_n) order.resize(top_n);
    std::sort(order.begin(), order.end());
    return order;
}

std::string summarize(const std::string& text, std::size_t top_n,
                      double damping, double tol, int max_iter) {
    std::vector<std::string> sentences = split_sentences(text);
    if (sentences.empty()) return "";
    std::vector<std::size_t> keep;
    if (sentences.size() <= top_n) {
        keep.resize(sentences.size());
        std::iota(keep.begin(), keep.end(), 0);
    } else {
        SentenceGraph g = build_sentence_graph(sentences, damping);
        std::vector<double> scores = textrank_scores(g, tol, max_iter);
        keep = select_top_sentences(scores, top_n);
    }
    std::string out;
    for (std::size_t k = 0; k < keep.size(); ++k) {
        if (k > 0) out += ". ";
        out += sentences[keep[k]];
    }
    return out;
}

}  // namespace skg
