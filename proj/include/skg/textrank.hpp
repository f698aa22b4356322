#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skg/errors.hpp"

namespace skg {

// Sentence units split on `.`, `;`, `!`, `?` followed by whitespace or end of
// text. Delimiters are consumed; empty fragments dropped; order preserved.
std::vector<std::string> split_sentences(const std::string& text);

// Lowercased alphanumeric word tokens.
std::vector<std::string> word_tokens(const std::string& text);

// Word-overlap similarity: |shared distinct| / (log|a| + log|b|), with a
// short-sentence fallback of |shared| / max(1, (|a|+|b|)/2) when either
// sentence has fewer than two tokens.
double sentence_similarity(const std::vector<std::string>& a,
                           const std::vector<std::string>& b);

struct SentenceGraph {
    std::vector<std::vector<std::string>> sentences;  // token lists
    std::vector<std::vector<double>> weights;         // symmetric, zero diagonal
    double damping = 0.85;
};

SentenceGraph build_sentence_graph(const std::vector<std::string>& sentences,
                                   double damping = 0.85);

// Synchronous (Jacobi) iteration of the damped centrality update starting
// from 1/m, until max |delta| < tol or max_iter sweeps.
std::vector<double> textrank_scores(const SentenceGraph& g, double tol = 1e-6,
                                    int max_iter = 100);

// Indices of the top_n highest-scoring sentences, ties broken by earlier
// original position; returned sorted in original order.
std::vector<std::size_t> select_top_sentences(const std::vector<double>& scores,
                                              std::size_t top_n);

std::string summarize(const std::string& text, std::size_t top_n,
                      double damping = 0.85, double tol = 1e-6,
                      int max_iter = 100);

}  // namespace skg
