#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "olens/embedding.hpp"
#include "olens/similarity_record.hpp"

namespace olens {

struct CommonWord {
    std::string word;
    std::uint64_t freq_src = 0;
    std::uint64_t freq_tgt = 0;
    std::int32_t rank_src = 0;  // frequency rank = word id in that space
    std::int32_t rank_tgt = 0;
};

// Intersection of two vocabularies ordered by combined frequency rank
// (rank_src + rank_tgt, lexicographic tie-break).
struct CommonVocabulary {
    std::vector<CommonWord> words;

    std::size_t size() const { return words.size(); }
};

struct AlignmentMatrix {
    std::size_t dim = 0;
    std::vector<double> w;  // row-major d x d; maps source column vectors
    std::string trained_on;  // "top-3000" or "whole-vocab"
    std::string source;
    std::string target;

    std::span<const double> row(std::size_t i) const { return {w.data() + i * dim, dim}; }
};

// Throws EmptyIntersectionError when the spaces share no words.
CommonVocabulary common_vocab(const EmbeddingSpace& a, const EmbeddingSpace& b);

// Least squares W = argmin sum_i |W x_i - z_i|^2 over the training words,
// solved by ridge-regularized normal equations with lambda scaled to
// 1e-6 * trace(X^T X) / d. Prints a warning to stderr when the system is
// underdetermined (|train_words| < d). Throws OovWordError for a training
// word missing from either space and DegenerateMappingError when the
// normal equations cannot be solved or produce non-finite entries.
AlignmentMatrix learn_mapping(const EmbeddingSpace& src, const EmbeddingSpace& tgt,
                              std::span<const std::string> train_words);

// y = W x
std::vector<double> apply_mapping(const AlignmentMatrix& m, std::span<const double> x);

// Training residual sum |W x_i - z_i|^2; exposed for the optimality tests.
double mapping_residual(const AlignmentMatrix& m, const EmbeddingSpace& src,
                        const EmbeddingSpace& tgt, std::span<const std::string> train_words);

// One record per common word: cosine(W x_w, z_w) plus both frequencies.
// bucket_id / adjusted are left for analysis::bucketize.
std::vector<SimilarityRecord> map_and_score(const EmbeddingSpace& src,
                                            const EmbeddingSpace& tgt,
                                            const AlignmentMatrix& m,
                                            const CommonVocabulary& words);

// Mean-centered projection onto the top principal components, descending
// eigenvalue order, each component's sign fixed so its largest-magnitude
// loading is positive. Throws InsufficientDataError for fewer than 2
// vectors and ZeroVarianceError when the data has no variance.
std::vector<std::vector<double>> pca_project(const std::vector<std::vector<double>>& vectors,
                                             std::size_t out_dim = 2);

}  // namespace olens
