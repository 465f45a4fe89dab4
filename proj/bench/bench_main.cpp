// Compares the serial reference trainer against the OpenMP hogwild path
// (and the phrase-counting pass) on a generated corpus.

#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include "olens/document.hpp"
#include "olens/huffman.hpp"
#include "olens/phrases.hpp"
#include "olens/synthetic.hpp"
#include "olens/text.hpp"
#include "olens/train.hpp"
#include "olens/vocab.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

int main() {
    using namespace olens;

    SyntheticParams sp;
    sp.docs_per_outlet = 2000;
    sp.doc_len = 150;
    sp.seed = 7;
    const SyntheticCorpus corpus = generate_synthetic(sp);

    std::vector<TokenSequence> docs;
    docs.reserve(corpus.docs_a.size());
    for (const Document& d : corpus.docs_a) docs.push_back(tokenize(document_text(d)));

    std::uint64_t tokens = 0;
    for (const TokenSequence& d : docs) tokens += d.size();
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    std::printf("corpus: %zu documents, %llu tokens; hardware threads: %d\n", docs.size(),
                static_cast<unsigned long long>(tokens), hw);

    for (const int threads : {1, hw > 1 ? hw : 2}) {
        auto start = std::chrono::steady_clock::now();
        const PhraseTable table = detect_phrases(docs, 90.0, 5, threads);
        const double dt = seconds_since(start);
        std::printf("phrases  threads=%-2d  %7.3fs  %8.0f tokens/s  (%zu collocations)\n", threads,
                    dt, static_cast<double>(tokens) / dt, table.size());
    }

    const Vocabulary vocab = build_vocab(docs, 5);
    const HuffmanTree tree = huffman_build(vocab);
    TrainParams params;
    params.dim = 100;
    params.epochs = 2;
    params.min_count = 5;
    params.seed = 7;

    for (const int threads : {1, hw > 1 ? hw : 2}) {
        params.threads = threads;
        TrainStats stats;
        auto start = std::chrono::steady_clock::now();
        const EmbeddingSpace space = train(docs, vocab, tree, params, &stats);
        const double dt = seconds_since(start);
        std::printf(
            "train    threads=%-2d  %7.3fs  %8.0f pair updates/s  (|V| %zu, %llu updates)\n",
            threads, dt, static_cast<double>(stats.pair_updates) / dt, space.vocab.size(),
            static_cast<unsigned long long>(stats.pair_updates));
    }
    return 0;
}
