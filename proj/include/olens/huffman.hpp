#pragma once

#include <cstdint>
#include <vector>

#include "olens/vocab.hpp"

namespace olens {

// Binary Huffman coding of the vocabulary for hierarchical softmax.
// For each word, code[j] is the branch taken at inner node path[j],
// root first; the two vectors always have equal length.
struct HuffmanTree {
    std::vector<std::vector<std::uint8_t>> codes;
    std::vector<std::vector<std::int32_t>> paths;
    std::int32_t inner_count = 0;  // |V| - 1
};

// Two-queue construction over word counts. Ties between the leaf and the
// inner-node queue go to the lower node id (the leaf), so trees are
// reproducible. Throws InvalidArgumentError for |V| < 2.
HuffmanTree huffman_build(const Vocabulary& vocab);

}  // namespace olens
