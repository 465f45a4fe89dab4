#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "olens/vocab.hpp"

namespace olens {

// Dense row-major matrix of doubles.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const {
        return {data.data() + i * cols, cols};
    }
};

struct TrainParams {
    int dim = 300;
    int window = 8;
    int epochs = 10;
    std::uint64_t min_count = 25;
    double subsample_t = 1e-5;
    double initial_lr = 0.025;
    double final_lr = 1e-4;
    std::uint64_t seed = 1;
    int threads = 1;  // 1 = deterministic serial reference path
};

struct TrainMeta {
    int window = 0;
    int epochs = 0;
    std::uint64_t seed = 0;
};

// One corpus's trained model: input vectors by word id plus the
// hierarchical-softmax inner-node weights.
struct EmbeddingSpace {
    Vocabulary vocab;
    Matrix input;  // |V| x d
    Matrix inner;  // (|V|-1) x d
    TrainMeta meta;

    std::size_t dim() const { return input.cols; }
};

}  // namespace olens
