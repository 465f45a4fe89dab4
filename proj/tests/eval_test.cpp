#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "olens/errors.hpp"
#include "olens/eval.hpp"
#include "olens/stats.hpp"
#include "olens/train.hpp"
#include "olens/vocab.hpp"
#include "helpers.hpp"

using namespace olens;
using testutil::TempDir;
using testutil::write_file;

namespace {

// Vocabulary of the given words with descending counts (ids = listed order).
Vocabulary vocab_of(const std::vector<std::string>& words) {
    TokenSequence doc;
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t k = 0; k < 2 * (words.size() - i) + 1; ++k)
            doc.push_back(words[i]);
    }
    std::vector<TokenSequence> corpus{doc};
    Vocabulary v = build_vocab(corpus, 1);
    return v;
}

EmbeddingSpace space_of(const std::vector<std::string>& words, std::size_t dim,
                        std::uint64_t seed) {
    TrainParams p;
    p.dim = static_cast<int>(dim);
    p.seed = seed;
    EmbeddingSpace space = init_embeddings(vocab_of(words), p);
    std::mt19937_64 rng(seed * 31 + 7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : space.input.data) x = u(rng);
    return space;
}

}  // namespace

TEST_CASE("spearman_eval returns 1 when cosines rank like the scores") {
    // Words on a 2-d arc: cosine to the first word decreases along the list.
    const std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee"};
    EmbeddingSpace space = space_of(words, 2, 1);
    for (std::size_t i = 0; i < words.size(); ++i) {
        const double angle = static_cast<double>(i) * 0.3;
        space.input.row(i)[0] = std::cos(angle);
        space.input.row(i)[1] = std::sin(angle);
    }
    SimilarityDataset ds;
    ds.name = "arc";
    for (std::size_t i = 1; i < words.size(); ++i) {
        ds.pairs.push_back({"aa", words[i], 10.0 - static_cast<double>(i)});
    }
    const SpearmanResult r = spearman_eval(space, ds);
    CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.coverage == doctest::Approx(1.0));
    CHECK(r.retained == 4);
}

TEST_CASE("spearman_eval matches the brute-force definition to 1e-9") {
    const std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee",
                                         "ff", "gg", "hh", "ii", "jj"};
    const EmbeddingSpace space = space_of(words, 6, 5);
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> score(0.0, 10.0);
    SimilarityDataset ds;
    ds.name = "synthetic";
    for (std::size_t i = 0; i < words.size(); ++i) {
        for (std::size_t j = i + 1; j < words.size(); ++j) {
            if ((i + j) % 3 == 0) ds.pairs.push_back({words[i], words[j], score(rng)});
        }
    }
    REQUIRE(ds.pairs.size() >= 10);
    std::vector<double> human, model;
    for (const auto& p : ds.pairs) {
        human.push_back(p.score);
        model.push_back(testutil::oracle_cosine(
            testutil::row_copy(space.input, static_cast<std::size_t>(*space.vocab.id_of(p.a))),
            testutil::row_copy(space.input, static_cast<std::size_t>(*space.vocab.id_of(p.b)))));
    }
    const double want = testutil::oracle_spearman(human, model);
    const SpearmanResult r = spearman_eval(space, ds);
    CHECK(std::abs(r.rho - want) < 1e-9);
}

TEST_CASE("spearman is invariant under monotone transforms of the scores") {
    const std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee", "ff", "gg"};
    const EmbeddingSpace space = space_of(words, 5, 11);
    SimilarityDataset raw;
    raw.name = "raw";
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> score(0.1, 9.9);
    for (std::size_t i = 0; i + 1 < words.size(); ++i)
        raw.pairs.push_back({words[i], words[i + 1], score(rng)});
    SimilarityDataset warped = raw;
    for (auto& p : warped.pairs) p.score = std::exp(p.score / 2.0);  // strictly increasing
    const double a = spearman_eval(space, raw).rho;
    const double b = spearman_eval(space, warped).rho;
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
}

TEST_CASE("spearman_eval skips OOV pairs and reports coverage") {
    const std::vector<std::string> words{"aa", "bb", "cc", "dd"};
    const EmbeddingSpace space = space_of(words, 4, 3);
    SimilarityDataset ds;
    ds.name = "cov";
    ds.pairs.push_back({"aa", "bb", 9.0});
    ds.pairs.push_back({"bb", "cc", 5.0});
    ds.pairs.push_back({"cc", "dd", 4.0});
    ds.pairs.push_back({"aa", "zz", 8.0});
    ds.pairs.push_back({"qq", "rr", 1.0});
    const SpearmanResult r = spearman_eval(space, ds);
    CHECK(r.retained == 3);
    CHECK(r.skipped == 2);
    CHECK(r.coverage == doctest::Approx(0.6));
}

TEST_CASE("spearman_eval needs at least two retained pairs") {
    const std::vector<std::string> words{"aa", "bb", "cc"};
    const EmbeddingSpace space = space_of(words, 3, 9);
    SimilarityDataset ds;
    ds.name = "tiny";
    ds.pairs.push_back({"aa", "bb", 5.0});
    ds.pairs.push_back({"aa", "zz", 5.0});
    CHECK_THROWS_AS(spearman_eval(space, ds), InsufficientDataError);
}

TEST_CASE("analogy_eval counts a planted exact solution correct") {
    // v_d = v_b - v_a + v_c; distractors orthogonal to everything.
    const std::vector<std::string> words{"aa", "bb", "cc", "dd", "xx", "yy"};
    EmbeddingSpace space = space_of(words, 8, 17);
    for (double& x : space.input.data) x = 0.0;
    auto set = [&](const std::string& w, std::initializer_list<double> vals) {
        auto row = space.input.row(static_cast<std::size_t>(*space.vocab.id_of(w)));
        std::size_t i = 0;
        for (double v : vals) row[i++] = v;
    };
    set("aa", {1, 0, 0, 0});
    set("bb", {0, 1, 0, 0});
    set("cc", {1, 0, 1, 0});
    set("dd", {0, 1, 1, 0});  // = bb - aa + cc
    set("xx", {0, 0, 0, 1});
    set("yy", {0, 0, 0, -1});

    AnalogyDataset ds;
    ds.name = "planted";
    ds.sections = {"plant"};
    ds.questions.push_back({"aa", "bb", "cc", "dd", 0});
    const AnalogyResult r = analogy_eval(space, ds);
    CHECK(r.correct == 1);
    CHECK(r.retained == 1);
    CHECK(r.accuracy == doctest::Approx(1.0));
    REQUIRE(r.sections.size() == 1);
    CHECK(r.sections[0].correct == 1);
}

TEST_CASE("analogy_eval matches the brute-force argmax on random spaces") {
    std::vector<std::string> words;
    for (char a = 'a'; a <= 'z'; ++a) words.push_back(std::string("w") + a);
    const EmbeddingSpace space = space_of(words, 7, 23);
    AnalogyDataset ds;
    ds.name = "rand";
    ds.sections = {"s0", "s1"};
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    int made = 0;
    while (made < 60) {
        std::size_t a = pick(rng), b = pick(rng), c = pick(rng), d = pick(rng);
        if (a == b || a == c || a == d || b == c || b == d || c == d) continue;
        ds.questions.push_back({words[a], words[b], words[c], words[d],
                                static_cast<std::size_t>(made % 2)});
        ++made;
    }
    std::size_t want_correct = 0;
    for (const auto& q : ds.questions) {
        const auto ia = *space.vocab.id_of(q.a);
        const auto ib = *space.vocab.id_of(q.b);
        const auto ic = *space.vocab.id_of(q.c);
        const auto id = *space.vocab.id_of(q.expected);
        if (testutil::oracle_3cosadd(space, ia, ib, ic) == id) ++want_correct;
    }
    for (int threads : {1, 4}) {
        const AnalogyResult r = analogy_eval(space, ds, threads);
        CHECK(r.correct == want_correct);
        CHECK(r.retained == 60);
        CHECK(r.accuracy == doctest::Approx(static_cast<double>(want_correct) / 60.0));
    }
}

TEST_CASE("analogy_eval with every question OOV reports zeros") {
    const std::vector<std::string> words{"aa", "bb", "cc", "dd"};
    const EmbeddingSpace space = space_of(words, 4, 31);
    AnalogyDataset ds;
    ds.name = "oov";
    ds.sections = {"all"};
    ds.questions.push_back({"qq", "rr", "ss", "tt", 0});
    ds.questions.push_back({"aa", "bb", "cc", "zz", 0});
    const AnalogyResult r = analogy_eval(space, ds);
    CHECK(r.retained == 0);
    CHECK(r.correct == 0);
    CHECK(r.accuracy == 0.0);
    CHECK(r.coverage == 0.0);
    CHECK(r.total == 2);
}

TEST_CASE("analogy answers are invariant to rescaling any row") {
    const std::vector<std::string> words{"aa", "bb", "cc", "dd", "ee", "ff", "gg", "hh"};
    EmbeddingSpace space = space_of(words, 5, 37);
    AnalogyDataset ds;
    ds.name = "scale";
    ds.sections = {"all"};
    ds.questions.push_back({"aa", "bb", "cc", "dd", 0});
    ds.questions.push_back({"ee", "ff", "gg", "hh", 0});
    const AnalogyResult before = analogy_eval(space, ds);
    // Length normalization makes per-row positive scaling a no-op.
    for (std::size_t i = 0; i < space.input.rows; ++i) {
        const double s = 0.25 + 1.75 * static_cast<double>(i % 4);
        for (double& x : space.input.row(i)) x *= s;
    }
    const AnalogyResult after = analogy_eval(space, ds);
    CHECK(before.correct == after.correct);
}

TEST_CASE("load_similarity_tsv parses and validates") {
    TempDir dir("simtsv");
    write_file(dir / "ok.tsv",
               "# comment\n"
               "Apple\tpear\t7.5\n"
               "\n"
               "cpu\tram\t6\n");
    const SimilarityDataset ds = load_similarity_tsv(dir / "ok.tsv", "ok");
    REQUIRE(ds.pairs.size() == 2);
    CHECK(ds.pairs[0].a == "apple");  // lowercased on load
    CHECK(ds.pairs[0].score == doctest::Approx(7.5));

    write_file(dir / "badscore.tsv", "aa\tbb\tnotanumber\n");
    CHECK_THROWS_AS(load_similarity_tsv(dir / "badscore.tsv", "x"), ParseError);
    write_file(dir / "range.tsv", "aa\tbb\t11.5\n");
    CHECK_THROWS_AS(load_similarity_tsv(dir / "range.tsv", "x"), ParseError);
    write_file(dir / "fields.tsv", "aa\tbb\n");
    CHECK_THROWS_AS(load_similarity_tsv(dir / "fields.tsv", "x"), ParseError);
    write_file(dir / "dup.tsv", "aa\tbb\t5\nbb\taa\t4\n");
    CHECK_THROWS_AS(load_similarity_tsv(dir / "dup.tsv", "x"), ParseError);
    CHECK_THROWS_AS(load_similarity_tsv(dir / "missing.tsv", "x"), IoError);
}

TEST_CASE("load_men reads space-separated pairs on the 0-50 scale") {
    TempDir dir("men");
    write_file(dir / "men.txt", "sun moon 38.0\nsky ground 22\n");
    const SimilarityDataset ds = load_men(dir / "men.txt");
    REQUIRE(ds.pairs.size() == 2);
    CHECK(ds.score_scale.second == doctest::Approx(50.0));
    write_file(dir / "over.txt", "sun moon 51\n");
    CHECK_THROWS_AS(load_men(dir / "over.txt"), ParseError);
}

TEST_CASE("load_google_analogies splits sections and validates rows") {
    TempDir dir("google");
    write_file(dir / "q.txt",
               ": capital-common-countries\n"
               "Athens Greece Baghdad Iraq\n"
               "athens greece berlin germany\n"
               ": gram1-adjective-to-adverb\n"
               "amazing amazingly apparent apparently\n");
    const AnalogyDataset ds = load_google_analogies(dir / "q.txt");
    REQUIRE(ds.sections.size() == 2);
    CHECK(ds.sections[0] == "capital-common-countries");
    REQUIRE(ds.questions.size() == 3);
    CHECK(ds.questions[0].a == "athens");
    CHECK(ds.questions[2].section == 1);

    write_file(dir / "three.txt", "a b c\n");
    CHECK_THROWS_AS(load_google_analogies(dir / "three.txt"), ParseError);
    write_file(dir / "dupword.txt", "alpha alpha beta gamma\n");
    CHECK_THROWS_AS(load_google_analogies(dir / "dupword.txt"), ParseError);
}

TEST_CASE("result tsv formatting") {
    SpearmanResult r;
    r.rho = 0.5;
    r.coverage = 0.75;
    r.retained = 3;
    r.skipped = 1;
    const std::string line = similarity_result_tsv("ws353", r);
    CHECK(line.find("ws353\t") == 0);
    CHECK(line.find("0.5") != std::string::npos);
    CHECK(line.find("0.75") != std::string::npos);
}
