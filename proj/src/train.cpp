#include "olens/train.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "olens/errors.hpp"
#include "olens/vocab.hpp"

namespace olens {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Core pair update; grad is caller-provided scratch of length dim so the
// hot loop never allocates.
void hs_pair(EmbeddingSpace& space, const HuffmanTree& tree, std::int32_t center_id,
             std::int32_t target_id, double lr, std::span<double> grad) {
    std::span<double> v = space.input.row(static_cast<std::size_t>(center_id));
    std::fill(grad.begin(), grad.end(), 0.0);
    const auto& code = tree.codes[static_cast<std::size_t>(target_id)];
    const auto& path = tree.paths[static_cast<std::size_t>(target_id)];
    for (std::size_t j = 0; j < code.size(); ++j) {
        std::span<double> w = space.inner.row(static_cast<std::size_t>(path[j]));
        const double p = sigmoid(dot(v, w));
        const double g = lr * (1.0 - static_cast<double>(code[j]) - p);
        axpy(g, w, grad);  // accumulate before w moves
        axpy(g, v, w);
    }
    axpy(1.0, grad, v);
}

struct LrSchedule {
    double initial;
    double final;
    std::uint64_t budget;  // epochs * total in-vocab tokens

    double at(std::uint64_t consumed) const {
        if (budget == 0) return final;
        const double lr = initial - (initial - final) * static_cast<double>(consumed) /
                                        static_cast<double>(budget);
        return std::max(lr, final);
    }
};

struct DocScratch {
    // (word id, in-vocab position before subsampling) for survivors
    std::vector<std::pair<std::int32_t, std::uint32_t>> survivors;
    std::vector<double> grad;
};

// Trains on one document. consumed_base is the number of in-vocab tokens
// processed before this document; returns this document's in-vocab count.
std::uint32_t train_document(EmbeddingSpace& space, const HuffmanTree& tree,
                             const TokenSequence& doc, std::span<const double> keep,
                             int window, const LrSchedule& sched, std::uint64_t consumed_base,
                             std::mt19937_64& rng, DocScratch& scratch, TrainStats& stats) {
    const Vocabulary& vocab = space.vocab;
    auto& survivors = scratch.survivors;
    survivors.clear();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::uint32_t in_vocab = 0;
    for (const std::string& tok : doc) {
        auto it = vocab.index.find(tok);
        if (it == vocab.index.end()) continue;
        const double kp = keep[static_cast<std::size_t>(it->second)];
        if (kp >= 1.0 || unit(rng) < kp) {
            survivors.emplace_back(it->second, in_vocab);
        }
        ++in_vocab;
    }

    std::uniform_int_distribution<int> half_width(1, window);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(survivors.size());
    for (std::ptrdiff_t m = 0; m < n; ++m) {
        const int b = half_width(rng);
        const double lr = sched.at(consumed_base + survivors[static_cast<std::size_t>(m)].second);
        const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, m - b);
        const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, m + b);
        const std::int32_t center = survivors[static_cast<std::size_t>(m)].first;
        for (std::ptrdiff_t c = lo; c <= hi; ++c) {
            if (c == m) continue;
            hs_pair(space, tree, center, survivors[static_cast<std::size_t>(c)].first, lr,
                    scratch.grad);
            ++stats.pair_updates;
            stats.last_lr = lr;
        }
        ++stats.centers;
    }
    return in_vocab;
}

}  // namespace

EmbeddingSpace init_embeddings(Vocabulary vocab, const TrainParams& params) {
    if (params.dim <= 0) throw InvalidArgumentError("embedding dim must be positive");
    EmbeddingSpace space;
    const std::size_t v = vocab.size();
    const std::size_t d = static_cast<std::size_t>(params.dim);
    space.vocab = std::move(vocab);
    space.input = Matrix(v, d);
    space.inner = Matrix(v > 0 ? v - 1 : 0, d);
    space.meta = TrainMeta{params.window, params.epochs, params.seed};

    std::mt19937_64 rng(params.seed);
    const double half = 0.5 / static_cast<double>(params.dim);
    std::uniform_real_distribution<double> init(-half, half);
    for (double& x : space.input.data) x = init(rng);
    return space;
}

void hs_update(EmbeddingSpace& space, const HuffmanTree& tree, std::int32_t center_id,
               std::int32_t target_id, double lr) {
    std::vector<double> grad(space.dim(), 0.0);
    hs_pair(space, tree, center_id, target_id, lr, grad);
}

double hs_log_likelihood(const EmbeddingSpace& space, const HuffmanTree& tree,
                         std::int32_t center_id, std::int32_t target_id) {
    std::span<const double> v = space.input.row(static_cast<std::size_t>(center_id));
    const auto& code = tree.codes[static_cast<std::size_t>(target_id)];
    const auto& path = tree.paths[static_cast<std::size_t>(target_id)];
    double ll = 0.0;
    for (std::size_t j = 0; j < code.size(); ++j) {
        std::span<const double> w = space.inner.row(static_cast<std::size_t>(path[j]));
        const double sign = 1.0 - 2.0 * static_cast<double>(code[j]);
        ll += std::log(sigmoid(sign * dot(v, w)));
    }
    return ll;
}

EmbeddingSpace train(std::span<const TokenSequence> corpus, Vocabulary vocab,
                     const HuffmanTree& tree, const TrainParams& params, TrainStats* stats) {
    if (params.window <= 0) throw InvalidArgumentError("window must be positive");
    if (params.epochs < 0) throw InvalidArgumentError("epochs must be non-negative");
    if (tree.codes.size() != vocab.size()) {
        throw InvalidArgumentError("huffman tree does not match vocabulary");
    }

    EmbeddingSpace space = init_embeddings(std::move(vocab), params);
    TrainStats local{};

    std::vector<double> keep(space.vocab.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        keep[i] = keep_probability(space.vocab.counts[i], space.vocab.total_tokens,
                                   params.subsample_t);
    }

    // Budget counts every in-vocab token (subsampled-away ones included) so
    // the decay endpoint is independent of RNG draws.
    std::uint64_t corpus_tokens = 0;
    for (const TokenSequence& doc : corpus) {
        for (const std::string& tok : doc) {
            if (space.vocab.index.contains(tok)) ++corpus_tokens;
        }
    }
    const LrSchedule sched{params.initial_lr, params.final_lr,
                           static_cast<std::uint64_t>(params.epochs) * corpus_tokens};
    local.last_lr = params.initial_lr;

    const int threads = std::max(1, params.threads);
    if (threads == 1 || corpus.size() < 2) {
        std::mt19937_64 rng(params.seed);
        DocScratch scratch;
        scratch.grad.resize(space.dim());
        std::uint64_t consumed = 0;
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            for (const TokenSequence& doc : corpus) {
                consumed += train_document(space, tree, doc, keep, params.window, sched,
                                           consumed, rng, scratch, local);
            }
        }
    } else {
#ifdef _OPENMP
        std::atomic<std::uint64_t> consumed{0};
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
#pragma omp parallel num_threads(threads)
            {
                const int tid = omp_get_thread_num();
                std::mt19937_64 rng(params.seed + 0x9e3779b97f4a7c15ULL *
                                                      static_cast<std::uint64_t>(
                                                          epoch * threads + tid + 1));
                DocScratch scratch;
                scratch.grad.resize(space.dim());
                TrainStats mine{};
#pragma omp for schedule(dynamic, 4)
                for (std::ptrdiff_t d = 0; d < static_cast<std::ptrdiff_t>(corpus.size()); ++d) {
                    const std::uint64_t base = consumed.load(std::memory_order_relaxed);
                    const std::uint32_t n =
                        train_document(space, tree, corpus[static_cast<std::size_t>(d)], keep,
                                       params.window, sched, base, rng, scratch, mine);
                    consumed.fetch_add(n, std::memory_order_relaxed);
                }
#pragma omp critical(olens_train_stats)
                {
                    local.centers += mine.centers;
                    local.pair_updates += mine.pair_updates;
                    if (mine.pair_updates > 0) local.last_lr = mine.last_lr;
                }
            }
        }
#else
        std::mt19937_64 rng(params.seed);
        DocScratch scratch;
        scratch.grad.resize(space.dim());
        std::uint64_t consumed = 0;
        for (int epoch = 0; epoch < params.epochs; ++epoch) {
            for (const TokenSequence& doc : corpus) {
                consumed += train_document(space, tree, doc, keep, params.window, sched,
                                           consumed, rng, scratch, local);
            }
        }
#endif
    }

    if (stats != nullptr) *stats = local;
    return space;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    const double na = std::sqrt(dot(a, a));
    const double nb = std::sqrt(dot(b, b));
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

std::vector<std::pair<std::string, double>> nearest_neighbors(const EmbeddingSpace& space,
                                                              std::string_view word,
                                                              std::size_t k) {
    auto it = space.vocab.index.find(std::string(word));
    if (it == space.vocab.index.end()) throw OovWordError(std::string(word));
    const std::size_t q = static_cast<std::size_t>(it->second);
    const std::size_t v = space.vocab.size();
    if (v <= 1 || k == 0) return {};
    k = std::min(k, v - 1);

    std::vector<std::pair<double, std::size_t>> scored;
    scored.reserve(v - 1);
    std::span<const double> qv = space.input.row(q);
    for (std::size_t i = 0; i < v; ++i) {
        if (i == q) continue;
        scored.emplace_back(cosine(qv, space.input.row(i)), i);
    }
    auto better = [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    };
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                      scored.end(), better);

    std::vector<std::pair<std::string, double>> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.emplace_back(space.vocab.words[scored[i].second], scored[i].first);
    }
    return out;
}

}  // namespace olens
