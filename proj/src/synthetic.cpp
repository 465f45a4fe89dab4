#include "olens/synthetic.hpp"

#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "olens/errors.hpp"

namespace olens {

namespace {

char letter(int i) { return static_cast<char>('a' + i); }

std::string topic_word(int topic, int i) {
    return std::string("w") + letter(topic) + letter(i / 26) + letter(i % 26);
}

std::string stop_word(int i) {
    return std::string("st") + letter(i / 26) + letter(i % 26);
}

std::string planted_word(int k) { return std::string("plant") + letter(k); }

constexpr const char* kQuadRun[4] = {"quada", "quadb", "quadc", "quadd"};

struct OutletGen {
    const SyntheticParams& p;
    std::mt19937_64 rng;
    // planted_topic[t] = planted word index active in topic t, or -1
    std::vector<int> planted_topic;

    std::string draw_doc(int topic, int len) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        std::uniform_int_distribution<int> stop_pick(0, p.stopwords - 1);
        std::uniform_int_distribution<int> word_pick(0, p.words_per_topic - 1);
        std::string text;
        int emitted = 0;
        // Fixed u brackets so each draw type keeps its rate in every topic;
        // the planted bracket falls through to a topic word in topics that
        // carry no planted word.
        while (emitted < len) {
            const double u = unit(rng);
            if (!text.empty()) text += ' ';
            const int plant = planted_topic[static_cast<std::size_t>(topic)];
            if (u < p.planted_prob && plant >= 0) {
                text += planted_word(plant);
                ++emitted;
            } else if (u >= p.planted_prob && u < p.planted_prob + p.quad_prob) {
                for (int q = 0; q < 4; ++q) {
                    if (q > 0) text += ' ';
                    text += kQuadRun[q];
                }
                emitted += 4;
            } else if (u >= p.planted_prob + p.quad_prob &&
                       u < p.planted_prob + p.quad_prob + p.stop_prob) {
                text += stop_word(stop_pick(rng));
                ++emitted;
            } else {
                text += topic_word(topic, word_pick(rng));
                ++emitted;
            }
        }
        return text;
    }
};

std::vector<Document> make_outlet(const SyntheticParams& p, const std::string& outlet,
                                  std::uint64_t seed, const std::vector<int>& planted_topic) {
    OutletGen gen{p, std::mt19937_64(seed), planted_topic};
    std::uniform_int_distribution<int> topic_pick(0, p.topics - 1);
    std::vector<Document> docs;
    docs.reserve(static_cast<std::size_t>(p.docs_per_outlet));
    for (int i = 0; i < p.docs_per_outlet; ++i) {
        const int topic = topic_pick(gen.rng);
        Document doc;
        doc.outlet = outlet;
        doc.id = outlet + "-" + std::to_string(i);
        doc.title = gen.draw_doc(topic, p.title_len);
        doc.body = gen.draw_doc(topic, p.doc_len);
        docs.push_back(std::move(doc));
    }
    return docs;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticParams& p) {
    if (p.topics < 2 * p.planted) {
        throw InvalidArgumentError("need at least 2x planted topics so contexts stay disjoint");
    }
    if (p.words_per_topic < 1 || p.stopwords < 1 || p.doc_len < 1 || p.docs_per_outlet < 1) {
        throw InvalidArgumentError("synthetic corpus sizes must be positive");
    }

    // alpha: planted word k lives in topic k; beta: in topic k + planted.
    std::vector<int> topics_a(static_cast<std::size_t>(p.topics), -1);
    std::vector<int> topics_b(static_cast<std::size_t>(p.topics), -1);
    for (int k = 0; k < p.planted; ++k) {
        topics_a[static_cast<std::size_t>(k)] = k;
        topics_b[static_cast<std::size_t>(k + p.planted)] = k;
    }

    SyntheticCorpus corpus;
    corpus.docs_a = make_outlet(p, "alpha", p.seed, topics_a);
    corpus.docs_b = make_outlet(p, "beta", p.seed + 1, topics_b);
    for (int k = 0; k < p.planted; ++k) corpus.planted_words.push_back(planted_word(k));
    for (int t = 0; t < p.topics; ++t) {
        for (int i = 0; i < p.words_per_topic; ++i) {
            corpus.control_words.push_back(topic_word(t, i));
        }
    }
    for (int i = 0; i < p.stopwords; ++i) corpus.control_words.push_back(stop_word(i));
    return corpus;
}

void write_synthetic(const SyntheticCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto write_jsonl = [&](const std::vector<Document>& docs, const std::string& name) {
        const std::filesystem::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        for (const Document& doc : docs) {
            nlohmann::json j;
            j["id"] = doc.id;
            j["title"] = doc.title;
            j["body"] = doc.body;
            j["outlet"] = doc.outlet;
            out << j.dump() << '\n';
        }
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
    };
    auto write_list = [&](const std::vector<std::string>& words, const std::string& name) {
        const std::filesystem::path path = dir / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoError("cannot write " + path.string());
        for (const std::string& w : words) out << w << '\n';
        out.flush();
        if (!out) throw IoError("write failed for " + path.string());
    };
    write_jsonl(corpus.docs_a, "alpha.jsonl");
    write_jsonl(corpus.docs_b, "beta.jsonl");
    write_list(corpus.planted_words, "planted_words.txt");
    write_list(corpus.control_words, "control_words.txt");
}

}  // namespace olens
