#include "olens/huffman.hpp"

#include <algorithm>

#include "olens/errors.hpp"

namespace olens {

HuffmanTree huffman_build(const Vocabulary& vocab) {
    const std::int32_t n = static_cast<std::int32_t>(vocab.size());
    if (n < 2)
        throw InvalidArgumentError("huffman_build needs at least 2 words, got " +
                                   std::to_string(n));

    // Node ids: leaves 0..n-1 (word ids), inner nodes n..2n-2 in creation
    // order. The vocabulary is sorted by descending count, so walking leaf
    // ids downward visits leaves in ascending count order.
    std::vector<std::uint64_t> count(2 * n - 1, 0);
    std::vector<std::int32_t> parent(2 * n - 1, -1);
    std::vector<std::uint8_t> branch(2 * n - 1, 0);
    for (std::int32_t i = 0; i < n; ++i) count[i] = vocab.counts[i];

    std::int32_t leaf = n - 1;       // next unmerged leaf (ascending count)
    std::int32_t inner_head = n;     // next unmerged inner node
    std::int32_t next_node = n;      // next inner id to create

    auto pop_min = [&]() -> std::int32_t {
        const bool have_leaf = leaf >= 0;
        const bool have_inner = inner_head < next_node;
        std::int32_t pick;
        if (have_leaf && have_inner)
            // Equal counts prefer the lower node id; leaf ids are always
            // smaller than inner ids.
            pick = count[leaf] <= count[inner_head] ? leaf : inner_head;
        else
            pick = have_leaf ? leaf : inner_head;
        if (pick == leaf)
            --leaf;
        else
            ++inner_head;
        return pick;
    };

    for (std::int32_t created = 0; created < n - 1; ++created) {
        const std::int32_t a = pop_min();
        const std::int32_t b = pop_min();
        count[next_node] = count[a] + count[b];
        parent[a] = next_node;
        parent[b] = next_node;
        branch[a] = 0;
        branch[b] = 1;
        ++next_node;
    }

    const std::int32_t root = 2 * n - 2;
    HuffmanTree tree;
    tree.inner_count = n - 1;
    tree.codes.resize(n);
    tree.paths.resize(n);
    for (std::int32_t w = 0; w < n; ++w) {
        std::vector<std::uint8_t>& code = tree.codes[w];
        std::vector<std::int32_t>& path = tree.paths[w];
        for (std::int32_t node = w; node != root; node = parent[node]) {
            code.push_back(branch[node]);
            path.push_back(parent[node] - n);
        }
        std::reverse(code.begin(), code.end());
        std::reverse(path.begin(), path.end());
    }
    return tree;
}

}  // namespace olens
