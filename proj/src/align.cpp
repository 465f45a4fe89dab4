#include "olens/align.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iostream>

#include <Eigen/Dense>

#include "olens/errors.hpp"
#include "olens/train.hpp"

namespace olens {

namespace {

Eigen::MatrixXd gather_rows(const EmbeddingSpace& space, std::span<const std::string> words) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(words.size()),
                      static_cast<Eigen::Index>(space.dim()));
    for (std::size_t i = 0; i < words.size(); ++i) {
        const auto id = space.vocab.id_of(words[i]);
        if (!id) throw OovWordError(words[i]);
        const auto row = space.input.row(static_cast<std::size_t>(*id));
        for (std::size_t j = 0; j < space.dim(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
        }
    }
    return m;
}

}  // namespace

CommonVocabulary common_vocab(const EmbeddingSpace& a, const EmbeddingSpace& b) {
    CommonVocabulary common;
    for (std::size_t i = 0; i < a.vocab.size(); ++i) {
        const std::string& word = a.vocab.words[i];
        const auto j = b.vocab.id_of(word);
        if (!j) continue;
        CommonWord cw;
        cw.word = word;
        cw.freq_src = a.vocab.counts[i];
        cw.freq_tgt = b.vocab.counts[static_cast<std::size_t>(*j)];
        cw.rank_src = static_cast<std::int32_t>(i);
        cw.rank_tgt = *j;
        common.words.push_back(std::move(cw));
    }
    if (common.words.empty()) {
        throw EmptyIntersectionError("the two vocabularies share no words");
    }
    std::sort(common.words.begin(), common.words.end(),
              [](const CommonWord& x, const CommonWord& y) {
                  const std::int64_t rx = static_cast<std::int64_t>(x.rank_src) + x.rank_tgt;
                  const std::int64_t ry = static_cast<std::int64_t>(y.rank_src) + y.rank_tgt;
                  if (rx != ry) return rx < ry;
                  return x.word < y.word;
              });
    return common;
}

AlignmentMatrix learn_mapping(const EmbeddingSpace& src, const EmbeddingSpace& tgt,
                              std::span<const std::string> train_words) {
    if (src.dim() != tgt.dim()) {
        throw InvalidArgumentError("spaces have different dimensions: " +
                                   std::to_string(src.dim()) + " vs " +
                                   std::to_string(tgt.dim()));
    }
    const std::size_t d = src.dim();
    if (train_words.size() < d) {
        std::cerr << "warning: mapping trained on " << train_words.size() << " words, fewer than "
                  << d << " dimensions; the system is underdetermined\n";
    }

    const Eigen::MatrixXd x = gather_rows(src, train_words);
    const Eigen::MatrixXd z = gather_rows(tgt, train_words);
    const Eigen::MatrixXd xtx = x.transpose() * x;

    const double trace = xtx.trace();
    if (!(trace > 0.0) || !std::isfinite(trace)) {
        throw DegenerateMappingError("training vectors carry no energy (trace " +
                                     std::to_string(trace) + ")");
    }
    const double lambda = 1e-6 * trace / static_cast<double>(d);
    Eigen::MatrixXd a = xtx;
    a.diagonal().array() += lambda;

    const Eigen::LDLT<Eigen::MatrixXd> solver(a);
    if (solver.info() != Eigen::Success) {
        throw DegenerateMappingError("normal equations are not solvable");
    }
    const Eigen::MatrixXd wt = solver.solve(x.transpose() * z);  // d x d, W^T

    AlignmentMatrix m;
    m.dim = d;
    m.w.resize(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const double v = wt(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            if (!std::isfinite(v)) {
                throw DegenerateMappingError("mapping solve produced a non-finite entry");
            }
            m.w[i * d + j] = v;
        }
    }
    return m;
}

std::vector<double> apply_mapping(const AlignmentMatrix& m, std::span<const double> x) {
    std::vector<double> y(m.dim, 0.0);
    for (std::size_t i = 0; i < m.dim; ++i) {
        const auto row = m.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < m.dim; ++j) s += row[j] * x[j];
        y[i] = s;
    }
    return y;
}

double mapping_residual(const AlignmentMatrix& m, const EmbeddingSpace& src,
                        const EmbeddingSpace& tgt, std::span<const std::string> train_words) {
    double total = 0.0;
    for (const std::string& word : train_words) {
        const auto is = src.vocab.id_of(word);
        const auto it = tgt.vocab.id_of(word);
        if (!is || !it) throw OovWordError(word);
        const std::vector<double> y = apply_mapping(m, src.input.row(static_cast<std::size_t>(*is)));
        const auto z = tgt.input.row(static_cast<std::size_t>(*it));
        for (std::size_t j = 0; j < m.dim; ++j) {
            const double e = y[j] - z[j];
            total += e * e;
        }
    }
    return total;
}

std::vector<SimilarityRecord> map_and_score(const EmbeddingSpace& src,
                                            const EmbeddingSpace& tgt,
                                            const AlignmentMatrix& m,
                                            const CommonVocabulary& words) {
    std::vector<SimilarityRecord> records(words.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(words.size()); ++i) {
        const CommonWord& cw = words.words[static_cast<std::size_t>(i)];
        const std::vector<double> y =
            apply_mapping(m, src.input.row(static_cast<std::size_t>(cw.rank_src)));
        const auto z = tgt.input.row(static_cast<std::size_t>(cw.rank_tgt));
        SimilarityRecord& rec = records[static_cast<std::size_t>(i)];
        rec.word = cw.word;
        rec.cosine = cosine(y, z);
        rec.freq_src = cw.freq_src;
        rec.freq_tgt = cw.freq_tgt;
    }
    return records;
}

std::vector<std::vector<double>> pca_project(const std::vector<std::vector<double>>& vectors,
                                             std::size_t out_dim) {
    const std::size_t n = vectors.size();
    if (n < 2) throw InsufficientDataError("pca needs at least 2 vectors");
    const std::size_t d = vectors[0].size();
    for (const auto& v : vectors) {
        if (v.size() != d) throw InvalidArgumentError("pca input vectors differ in length");
    }
    if (d == 0) throw InvalidArgumentError("pca input vectors are empty");
    out_dim = std::min(out_dim, d);

    Eigen::MatrixXd y(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            y(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[i][j];
        }
    }
    y.rowwise() -= y.colwise().mean();

    const Eigen::MatrixXd cov = (y.transpose() * y) / static_cast<double>(n - 1);
    if (!(cov.trace() > 0.0)) {
        throw ZeroVarianceError("pca input has zero variance");
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
    if (eig.info() != Eigen::Success) {
        throw ZeroVarianceError("pca eigendecomposition failed");
    }

    // Eigen returns eigenvalues ascending; take the top out_dim, descending.
    Eigen::MatrixXd basis(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(out_dim));
    for (std::size_t k = 0; k < out_dim; ++k) {
        Eigen::VectorXd u = eig.eigenvectors().col(static_cast<Eigen::Index>(d - 1 - k));
        Eigen::Index imax = 0;
        u.cwiseAbs().maxCoeff(&imax);
        if (u(imax) < 0.0) u = -u;
        basis.col(static_cast<Eigen::Index>(k)) = u;
    }

    const Eigen::MatrixXd proj = y * basis;
    std::vector<std::vector<double>> out(n, std::vector<double>(out_dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < out_dim; ++k) {
            out[i][k] = proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        }
    }
    return out;
}

}  // namespace olens
