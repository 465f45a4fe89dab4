#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "olens/embedding.hpp"
#include "olens/huffman.hpp"
#include "olens/train.hpp"
#include "olens/vocab.hpp"

namespace testutil {

// Scratch directory removed on scope exit.
struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        path = std::filesystem::temp_directory_path() /
               ("olens-test-" + tag + "-" + std::to_string(counter()++));
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string str() const { return path.string(); }
    std::filesystem::path operator/(const std::string& name) const { return path / name; }

  private:
    static int& counter() {
        static int n = 0;
        return n;
    }
};

inline void write_file(const std::filesystem::path& p, const std::string& body) {
    std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << body;
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// --- independent oracles ------------------------------------------------

// Rank vector with ties averaged, written from scratch (no olens::).
inline std::vector<double> oracle_ranks(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && xs[order[j + 1]] == xs[order[i]]) ++j;
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
        i = j + 1;
    }
    return ranks;
}

inline double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double oracle_spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return oracle_pearson(oracle_ranks(x), oracle_ranks(y));
}

// Optimal weighted path-length via subset DP: every binary code tree over
// set S costs weight(S) plus the best split into two nonempty subtrees.
inline std::uint64_t oracle_optimal_code_cost(const std::vector<std::uint64_t>& counts) {
    const std::size_t n = counts.size();
    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<std::uint64_t> weight(full + 1, 0);
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) weight[mask] += counts[i];
        }
    }
    constexpr auto kInf = std::numeric_limits<std::uint64_t>::max() / 4;
    std::vector<std::uint64_t> opt(full + 1, kInf);
    for (std::size_t i = 0; i < n; ++i) opt[std::size_t{1} << i] = 0;
    for (std::size_t mask = 1; mask <= full; ++mask) {
        if (opt[mask] != kInf) continue;
        for (std::size_t sub = (mask - 1) & mask; sub; sub = (sub - 1) & mask) {
            const std::size_t rest = mask ^ sub;
            if (opt[sub] == kInf || opt[rest] == kInf) continue;
            opt[mask] = std::min(opt[mask], opt[sub] + opt[rest]);
        }
        opt[mask] += weight[mask];
    }
    return opt[full];
}

inline double oracle_cosine(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    if (aa == 0.0 || bb == 0.0) return 0.0;
    return ab / (std::sqrt(aa) * std::sqrt(bb));
}

inline std::vector<double> row_copy(const olens::Matrix& m, std::size_t i) {
    const auto r = m.row(i);
    return {r.begin(), r.end()};
}

// Brute-force nearest neighbours by cosine, ties broken toward lower id.
inline std::vector<std::pair<std::string, double>> oracle_neighbors(
    const olens::EmbeddingSpace& space, const std::string& word, std::size_t k) {
    const auto qid = space.vocab.id_of(word);
    const std::vector<double> q = row_copy(space.input, static_cast<std::size_t>(*qid));
    std::vector<std::pair<std::string, double>> all;
    for (std::size_t i = 0; i < space.vocab.size(); ++i) {
        if (static_cast<std::int32_t>(i) == *qid) continue;
        all.emplace_back(space.vocab.words[i], oracle_cosine(q, row_copy(space.input, i)));
    }
    std::stable_sort(all.begin(), all.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    if (all.size() > k) all.resize(k);
    return all;
}

// Brute-force 3CosAdd over unit vectors; zero rows score 0 (same convention
// as the library so accuracies are comparable bit for bit).
inline std::int32_t oracle_3cosadd(const olens::EmbeddingSpace& space, std::int32_t a,
                                   std::int32_t b, std::int32_t c) {
    const std::size_t d = space.dim();
    auto unit = [&](std::int32_t id) {
        std::vector<double> v = row_copy(space.input, static_cast<std::size_t>(id));
        double norm = 0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm > 0)
            for (double& x : v) x /= norm;
        return v;
    };
    const auto va = unit(a), vb = unit(b), vc = unit(c);
    std::vector<double> query(d);
    for (std::size_t i = 0; i < d; ++i) query[i] = vb[i] - va[i] + vc[i];
    std::int32_t best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < space.vocab.size(); ++i) {
        const auto id = static_cast<std::int32_t>(i);
        if (id == a || id == b || id == c) continue;
        const auto row = row_copy(space.input, i);
        double dot = 0, norm = 0;
        for (std::size_t j = 0; j < d; ++j) {
            dot += query[j] * row[j];
            norm += row[j] * row[j];
        }
        const double score = norm > 0 ? dot / std::sqrt(norm) : 0.0;
        if (score > best_score) {
            best_score = score;
            best = id;
        }
    }
    return best;
}

// Central finite difference of hs_log_likelihood in every coordinate.
inline double fd_gradient_error(olens::EmbeddingSpace space, const olens::HuffmanTree& tree,
                                std::int32_t center, std::int32_t target, double eps = 1e-5) {
    namespace ol = olens;
    // Analytic step with lr = 1 against a fresh copy.
    ol::EmbeddingSpace stepped = space;
    ol::hs_update(stepped, tree, center, target, 1.0);
    std::vector<double> analytic;
    std::vector<double> numeric;
    auto probe = [&](olens::Matrix& m, std::size_t r, std::size_t c, olens::Matrix& same_in_step,
                     const olens::Matrix& base) {
        double* cell = &m.data[r * m.cols + c];
        const double saved = *cell;
        *cell = saved + eps;
        const double up = ol::hs_log_likelihood(space, tree, center, target);
        *cell = saved - eps;
        const double down = ol::hs_log_likelihood(space, tree, center, target);
        *cell = saved;
        numeric.push_back((up - down) / (2 * eps));
        analytic.push_back(same_in_step.data[r * m.cols + c] - base.data[r * m.cols + c]);
    };
    const olens::Matrix base_in = space.input;
    const olens::Matrix base_inner = space.inner;
    const std::size_t d = space.dim();
    for (std::size_t c = 0; c < d; ++c)
        probe(space.input, static_cast<std::size_t>(center), c, stepped.input, base_in);
    for (std::size_t r = 0; r < space.inner.rows; ++r)
        for (std::size_t c = 0; c < d; ++c) probe(space.inner, r, c, stepped.inner, base_inner);
    double num = 0, den = 0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        num += (numeric[i] - analytic[i]) * (numeric[i] - analytic[i]);
        den += analytic[i] * analytic[i];
    }
    return std::sqrt(num) / std::sqrt(den);
}

// Tiny seeded corpus with two word clusters that co-occur only internally.
inline std::vector<olens::TokenSequence> cluster_corpus(int docs, int len, std::uint64_t seed) {
    static const std::vector<std::string> kA = {"ared", "abed", "acod", "adud", "aeel"};
    static const std::vector<std::string> kB = {"bsky", "bsea", "bsun", "bfog", "bice"};
    std::mt19937_64 rng(seed);
    std::vector<olens::TokenSequence> corpus;
    for (int i = 0; i < docs; ++i) {
        const auto& pool = (i % 2 == 0) ? kA : kB;
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        olens::TokenSequence doc;
        for (int t = 0; t < len; ++t) doc.push_back(pool[pick(rng)]);
        corpus.push_back(std::move(doc));
    }
    return corpus;
}

}  // namespace testutil
