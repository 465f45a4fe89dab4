#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "olens/embedding.hpp"
#include "olens/huffman.hpp"

namespace olens {

struct TrainStats {
    std::uint64_t centers = 0;       // surviving center tokens processed
    std::uint64_t pair_updates = 0;  // (center, context) gradient steps
    double last_lr = 0.0;            // learning rate of the final update
};

// Input vectors i.i.d. uniform on [-0.5/d, +0.5/d] from the seeded RNG,
// inner vectors zero. Same seed, same matrices.
EmbeddingSpace init_embeddings(Vocabulary vocab, const TrainParams& params);

// Continuous skip-gram with hierarchical softmax. Every document is one
// training sequence; OOV tokens are dropped before windowing, subsampling
// removes occurrences before windows are formed, and the window half-width
// is drawn uniformly from [1, window] per center. threads == 1 runs the
// bit-reproducible serial reference path; threads > 1 runs the OpenMP
// hogwild path (unsynchronized shared updates, run-to-run nondeterministic).
EmbeddingSpace train(std::span<const TokenSequence> corpus, Vocabulary vocab,
                     const HuffmanTree& tree, const TrainParams& params,
                     TrainStats* stats = nullptr);

// One gradient-ascent step for a (center, target) pair on the target's
// Huffman path: p = sigmoid(v_center . w_node), g = lr * (1 - bit - p);
// each w_node gains g * v_center and v_center gains the accumulated
// sum of g * w_node afterwards.
void hs_update(EmbeddingSpace& space, const HuffmanTree& tree, std::int32_t center_id,
               std::int32_t target_id, double lr);

// Pair log-likelihood sum_j log sigmoid((1 - 2 bit_j) * v_center . w_j).
// Exposed for the gradient tests.
double hs_log_likelihood(const EmbeddingSpace& space, const HuffmanTree& tree,
                         std::int32_t center_id, std::int32_t target_id);

// Top-k neighbors of a word by input-vector cosine, query excluded, ties
// broken by word id. k is clamped to |V|-1. OOV queries throw OovWordError.
std::vector<std::pair<std::string, double>> nearest_neighbors(const EmbeddingSpace& space,
                                                              std::string_view word,
                                                              std::size_t k);

double cosine(std::span<const double> a, std::span<const double> b);

}  // namespace olens
