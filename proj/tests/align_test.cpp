#include "doctest.h"

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "olens/align.hpp"
#include "olens/errors.hpp"
#include "olens/train.hpp"
#include "olens/vocab.hpp"
#include "helpers.hpp"

using namespace olens;

namespace {

// Vocabulary in the given word order (descending synthetic counts).
Vocabulary ordered_vocab(const std::vector<std::string>& words) {
    TokenSequence doc;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t k = 0; k < 3 * (words.size() - i); ++k) doc.push_back(words[i]);
    std::vector<TokenSequence> corpus{doc};
    return build_vocab(corpus, 1);
}

EmbeddingSpace random_space(const std::vector<std::string>& words, std::size_t dim,
                            std::uint64_t seed) {
    TrainParams p;
    p.dim = static_cast<int>(dim);
    p.seed = seed;
    EmbeddingSpace space = init_embeddings(ordered_vocab(words), p);
    std::mt19937_64 rng(seed ^ 0xabcdef);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double& x : space.input.data) x = u(rng);
    return space;
}

std::vector<std::string> word_list(std::size_t n) {
    std::vector<std::string> words;
    for (std::size_t i = 0; i < n; ++i) {
        words.push_back(std::string("w") + static_cast<char>('a' + i / 26) +
                        static_cast<char>('a' + i % 26));
    }
    return words;
}

// Random rotation via QR of a Gaussian matrix.
Eigen::MatrixXd random_rotation(std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd m(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j)) = g(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(m);
    Eigen::MatrixXd q = qr.householderQ();
    if (q.determinant() < 0) q.col(0) *= -1.0;
    return q;
}

}  // namespace

TEST_CASE("common_vocab intersects and orders by combined rank") {
    const EmbeddingSpace a = random_space({"aa", "bb", "cc"}, 4, 1);
    const EmbeddingSpace b = random_space({"bb", "cc", "dd"}, 4, 2);
    const CommonVocabulary cv = common_vocab(a, b);
    REQUIRE(cv.size() == 2);
    // bb: ranks 1 + 0; cc: ranks 2 + 1 → bb first.
    CHECK(cv.words[0].word == "bb");
    CHECK(cv.words[1].word == "cc");
    CHECK(cv.words[0].rank_src == 1);
    CHECK(cv.words[0].rank_tgt == 0);
    CHECK(cv.words[0].freq_src == a.vocab.counts[1]);

    const CommonVocabulary full = common_vocab(a, a);
    CHECK(full.size() == 3);

    const EmbeddingSpace c = random_space({"xx", "yy"}, 4, 3);
    CHECK_THROWS_AS(common_vocab(a, c), EmptyIntersectionError);
}

TEST_CASE("identical spaces map onto themselves with cosine >= 0.999") {
    const auto words = word_list(40);
    const EmbeddingSpace src = random_space(words, 8, 11);
    const AlignmentMatrix m = learn_mapping(src, src, words);
    CHECK(m.dim == 8);
    for (const auto& w : words) {
        const auto id = static_cast<std::size_t>(*src.vocab.id_of(w));
        const auto x = src.input.row(id);
        const std::vector<double> y = apply_mapping(m, x);
        CHECK(cosine(y, x) >= 0.999);
    }
}

TEST_CASE("learn_mapping recovers a planted rotation") {
    const std::size_t d = 6;
    const auto words = word_list(60);
    const EmbeddingSpace src = random_space(words, d, 21);
    EmbeddingSpace tgt = src;
    const Eigen::MatrixXd r = random_rotation(d, 99);
    for (std::size_t i = 0; i < tgt.input.rows; ++i) {
        Eigen::VectorXd x(d);
        for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(j)) =
            src.input.row(i)[j];
        const Eigen::VectorXd y = r * x;
        for (std::size_t j = 0; j < d; ++j) tgt.input.row(i)[j] =
            y(static_cast<Eigen::Index>(j));
    }
    const AlignmentMatrix m = learn_mapping(src, tgt, words);
    double max_err = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            max_err = std::max(max_err,
                               std::abs(m.w[i * d + j] -
                                        r(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(j))));
        }
    }
    CHECK(max_err < 1e-4);
}

TEST_CASE("mapping residual never exceeds the zero matrix and resists perturbation") {
    const std::size_t d = 5;
    const auto words = word_list(30);
    const EmbeddingSpace src = random_space(words, d, 31);
    const EmbeddingSpace tgt = random_space(words, d, 32);
    const AlignmentMatrix m = learn_mapping(src, tgt, words);
    const double base = mapping_residual(m, src, tgt, words);

    AlignmentMatrix zero = m;
    std::fill(zero.w.begin(), zero.w.end(), 0.0);
    double zero_resid = 0.0;
    for (const auto& w : words) {
        const auto id = static_cast<std::size_t>(*tgt.vocab.id_of(w));
        for (double x : tgt.input.row(id)) zero_resid += x * x;
    }
    CHECK(base <= zero_resid);
    CHECK(mapping_residual(zero, src, tgt, words) == doctest::Approx(zero_resid));

    // Any small perturbation of W must not lower the training residual.
    std::mt19937_64 rng(77);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        AlignmentMatrix pert = m;
        double norm = 0.0;
        std::vector<double> delta(pert.w.size());
        for (double& x : delta) {
            x = g(rng);
            norm += x * x;
        }
        norm = std::sqrt(norm);
        for (std::size_t i = 0; i < delta.size(); ++i)
            pert.w[i] += 1e-3 * delta[i] / norm;
        CHECK(mapping_residual(pert, src, tgt, words) >= base - 1e-12);
    }
}

TEST_CASE("learn_mapping validates inputs") {
    const auto words = word_list(10);
    const EmbeddingSpace a = random_space(words, 4, 41);
    const EmbeddingSpace b = random_space(words, 6, 42);
    CHECK_THROWS_AS(learn_mapping(a, b, words), InvalidArgumentError);

    const std::vector<std::string> missing{"zz"};
    CHECK_THROWS_AS(learn_mapping(a, a, missing), OovWordError);

    // All-zero source vectors: trace(X^T X) = 0 → degenerate.
    EmbeddingSpace zeroed = a;
    std::fill(zeroed.input.data.begin(), zeroed.input.data.end(), 0.0);
    CHECK_THROWS_AS(learn_mapping(zeroed, a, words), DegenerateMappingError);
}

TEST_CASE("map_and_score fills cosines, frequencies and the antipodal case") {
    const auto words = word_list(12);
    const EmbeddingSpace src = random_space(words, 5, 51);
    EmbeddingSpace tgt = src;
    // Make one word's target vector the exact negation of its source.
    const std::size_t flip = 3;
    for (double& x : tgt.input.row(flip)) x = -x;
    const AlignmentMatrix m = learn_mapping(src, src, words);  // identity-recovering
    const CommonVocabulary cv = common_vocab(src, tgt);
    const auto records = map_and_score(src, tgt, m, cv);
    REQUIRE(records.size() == cv.size());
    for (const auto& rec : records) {
        const auto sid = static_cast<std::size_t>(*src.vocab.id_of(rec.word));
        CHECK(rec.freq_src == src.vocab.counts[sid]);
        CHECK(rec.bucket_id == -1);
        if (sid == flip) {
            CHECK(rec.cosine == doctest::Approx(-1.0).epsilon(1e-6));
        } else {
            CHECK(rec.cosine >= 0.999);
        }
    }
}

TEST_CASE("pca_project preserves a planted plane") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const std::size_t d = 7, n = 25;
    // Two fixed orthogonal axes in d dims.
    std::vector<double> e1(d, 0.0), e2(d, 0.0);
    e1[2] = 1.0;
    e2[5] = 1.0;
    std::vector<std::vector<double>> points;
    std::vector<std::pair<double, double>> coords;
    for (std::size_t i = 0; i < n; ++i) {
        const double s = u(rng), t = u(rng);
        coords.emplace_back(s, t);
        std::vector<double> p(d, 0.0);
        for (std::size_t j = 0; j < d; ++j) p[j] = s * e1[j] + t * e2[j] + 3.0;
        points.push_back(std::move(p));
    }
    const auto proj = pca_project(points, 2);
    REQUIRE(proj.size() == n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double want = std::hypot(coords[i].first - coords[j].first,
                                           coords[i].second - coords[j].second);
            const double got = std::hypot(proj[i][0] - proj[j][0], proj[i][1] - proj[j][1]);
            CHECK(got == doctest::Approx(want).epsilon(1e-9));
        }
    }
}

TEST_CASE("pca_project orders components by variance and matches an SVD oracle") {
    std::mt19937_64 rng(71);
    std::normal_distribution<double> g(0.0, 1.0);
    const std::size_t n = 20, d = 5;
    std::vector<std::vector<double>> points(n, std::vector<double>(d));
    for (auto& p : points)
        for (double& x : p) x = g(rng);
    const auto proj = pca_project(points, 2);

    double var1 = 0, var2 = 0, m1 = 0, m2 = 0;
    for (const auto& p : proj) {
        m1 += p[0];
        m2 += p[1];
    }
    m1 /= static_cast<double>(n);
    m2 /= static_cast<double>(n);
    for (const auto& p : proj) {
        var1 += (p[0] - m1) * (p[0] - m1);
        var2 += (p[1] - m2) * (p[1] - m2);
    }
    CHECK(var1 >= var2);

    // SVD oracle: projected variance of the top-2 PCs equals the sum of the
    // top-2 squared singular values of the centered matrix (over n-1).
    Eigen::MatrixXd x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(j)) = points[i][j];
    x.rowwise() -= x.colwise().mean();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x);
    const auto& sv = svd.singularValues();
    const double want = (sv(0) * sv(0) + sv(1) * sv(1)) / static_cast<double>(n - 1);
    const double got = (var1 + var2) / static_cast<double>(n - 1);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("pca_project error cases") {
    CHECK_THROWS_AS(pca_project({{1.0, 2.0}}, 2), InsufficientDataError);
    const std::vector<std::vector<double>> constant(5, std::vector<double>{1.0, 1.0, 1.0});
    CHECK_THROWS_AS(pca_project(constant, 2), ZeroVarianceError);
    const std::vector<std::vector<double>> ragged{{1.0, 2.0}, {1.0}};
    CHECK_THROWS_AS(pca_project(ragged, 2), InvalidArgumentError);
}
