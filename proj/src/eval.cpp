#include "olens/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "olens/errors.hpp"
#include "olens/format.hpp"
#include "olens/stats.hpp"
#include "olens/train.hpp"

namespace olens {

namespace {

std::string lower_ascii(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::ifstream open_text(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

bool skippable(const std::string& line) {
    return line.empty() || line[0] == '#';
}

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream iss(line);
    std::vector<std::string> fields;
    std::string f;
    while (iss >> f) fields.push_back(f);
    return fields;
}

std::vector<std::string> split_tab(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

SimilarityDataset load_pairs(const std::filesystem::path& path, std::string name,
                             std::pair<double, double> scale, bool tab_separated) {
    SimilarityDataset ds;
    ds.name = std::move(name);
    ds.score_scale = scale;

    std::ifstream in = open_text(path);
    std::set<std::pair<std::string, std::string>> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        const std::vector<std::string> f = tab_separated ? split_tab(line) : split_ws(line);
        if (f.size() < 3) {
            throw ParseError(path.string(), line_no, "expected word, word, score");
        }
        SimilarityPair p;
        p.a = lower_ascii(f[0]);
        p.b = lower_ascii(f[1]);
        if (!parse_double(f[2], p.score)) {
            throw ParseError(path.string(), line_no, "bad score '" + f[2] + "'");
        }
        if (!std::isfinite(p.score)) throw NonFiniteError(path.string(), line_no, f[2]);
        if (p.score < scale.first || p.score > scale.second) {
            throw ParseError(path.string(), line_no,
                             "score " + f[2] + " outside scale [" + format_double(scale.first) +
                                 ", " + format_double(scale.second) + "]");
        }
        auto key = std::minmax(p.a, p.b);
        if (!seen.insert(key).second) {
            throw ParseError(path.string(), line_no, "duplicate pair " + p.a + "/" + p.b);
        }
        ds.pairs.push_back(std::move(p));
    }
    return ds;
}

}  // namespace

SimilarityDataset load_similarity_tsv(const std::filesystem::path& path, std::string name,
                                      std::pair<double, double> score_scale) {
    return load_pairs(path, std::move(name), score_scale, /*tab_separated=*/true);
}

SimilarityDataset load_men(const std::filesystem::path& path) {
    return load_pairs(path, "men", {0.0, 50.0}, /*tab_separated=*/false);
}

AnalogyDataset load_google_analogies(const std::filesystem::path& path, std::string name) {
    AnalogyDataset ds;
    ds.name = std::move(name);

    std::ifstream in = open_text(path);
    std::string line;
    std::size_t line_no = 0;
    bool have_section = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (skippable(line)) continue;
        if (line[0] == ':') {
            std::string section = line.substr(1);
            const std::size_t first = section.find_first_not_of(" \t");
            section = first == std::string::npos ? std::string() : section.substr(first);
            if (section.empty()) {
                throw ParseError(path.string(), line_no, "empty section name");
            }
            ds.sections.push_back(std::move(section));
            have_section = true;
            continue;
        }
        const std::vector<std::string> f = split_ws(line);
        if (f.size() != 4) {
            throw ParseError(path.string(), line_no, "expected 4 words per question");
        }
        if (!have_section) {
            ds.sections.emplace_back("all");
            have_section = true;
        }
        AnalogyQuestion q;
        q.a = lower_ascii(f[0]);
        q.b = lower_ascii(f[1]);
        q.c = lower_ascii(f[2]);
        q.expected = lower_ascii(f[3]);
        q.section = ds.sections.size() - 1;
        const std::set<std::string> distinct{q.a, q.b, q.c, q.expected};
        if (distinct.size() != 4) {
            throw ParseError(path.string(), line_no, "question words must be distinct");
        }
        ds.questions.push_back(std::move(q));
    }
    return ds;
}

SpearmanResult spearman_eval(const EmbeddingSpace& space, const SimilarityDataset& ds) {
    std::vector<double> human;
    std::vector<double> model;
    for (const SimilarityPair& p : ds.pairs) {
        const auto ia = space.vocab.id_of(p.a);
        const auto ib = space.vocab.id_of(p.b);
        if (!ia || !ib) continue;
        human.push_back(p.score);
        model.push_back(cosine(space.input.row(static_cast<std::size_t>(*ia)),
                               space.input.row(static_cast<std::size_t>(*ib))));
    }
    if (human.size() < 2) {
        throw InsufficientDataError("dataset " + ds.name + ": only " +
                                    std::to_string(human.size()) +
                                    " in-vocabulary pairs, need at least 2");
    }
    SpearmanResult r;
    r.retained = human.size();
    r.skipped = ds.pairs.size() - human.size();
    r.coverage = static_cast<double>(r.retained) / static_cast<double>(ds.pairs.size());
    r.rho = spearman(human, model);
    return r;
}

AnalogyResult analogy_eval(const EmbeddingSpace& space, const AnalogyDataset& ds, int threads) {
    const std::size_t v = space.vocab.size();
    std::vector<double> norm(v);
    for (std::size_t i = 0; i < v; ++i) {
        double s = 0.0;
        for (const double x : space.input.row(i)) s += x * x;
        norm[i] = std::sqrt(s);
    }

    const std::size_t d = space.dim();
    const std::size_t n = ds.questions.size();
    // 1 = correct, 0 = wrong, -1 = skipped (OOV)
    std::vector<signed char> verdict(n, -1);

    (void)threads;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(std::max(1, threads)) if (threads > 1)
#endif
    for (std::ptrdiff_t qi = 0; qi < static_cast<std::ptrdiff_t>(n); ++qi) {
        const AnalogyQuestion& q = ds.questions[static_cast<std::size_t>(qi)];
        const auto ia = space.vocab.id_of(q.a);
        const auto ib = space.vocab.id_of(q.b);
        const auto ic = space.vocab.id_of(q.c);
        const auto id = space.vocab.id_of(q.expected);
        if (!ia || !ib || !ic || !id) continue;

        std::vector<double> query(d, 0.0);
        auto add_unit = [&](std::int32_t w, double sign) {
            const std::size_t wi = static_cast<std::size_t>(w);
            if (norm[wi] == 0.0) return;
            const auto row = space.input.row(wi);
            for (std::size_t j = 0; j < d; ++j) query[j] += sign * row[j] / norm[wi];
        };
        add_unit(*ib, 1.0);
        add_unit(*ia, -1.0);
        add_unit(*ic, 1.0);

        double best = 0.0;
        std::size_t best_id = v;
        for (std::size_t w = 0; w < v; ++w) {
            if (w == static_cast<std::size_t>(*ia) || w == static_cast<std::size_t>(*ib) ||
                w == static_cast<std::size_t>(*ic)) {
                continue;
            }
            double score = 0.0;
            if (norm[w] != 0.0) {
                const auto row = space.input.row(w);
                double dp = 0.0;
                for (std::size_t j = 0; j < d; ++j) dp += query[j] * row[j];
                score = dp / norm[w];
            }
            if (best_id == v || score > best) {
                best = score;
                best_id = w;
            }
        }
        verdict[static_cast<std::size_t>(qi)] =
            best_id == static_cast<std::size_t>(*id) ? 1 : 0;
    }

    AnalogyResult r;
    r.total = n;
    r.sections.resize(ds.sections.size());
    for (std::size_t s = 0; s < ds.sections.size(); ++s) r.sections[s].section = ds.sections[s];
    for (std::size_t qi = 0; qi < n; ++qi) {
        SectionResult& sec = r.sections[ds.questions[qi].section];
        ++sec.total;
        if (verdict[qi] < 0) continue;
        ++sec.retained;
        ++r.retained;
        if (verdict[qi] == 1) {
            ++sec.correct;
            ++r.correct;
        }
    }
    for (SectionResult& sec : r.sections) {
        sec.accuracy = sec.retained == 0
                           ? 0.0
                           : static_cast<double>(sec.correct) / static_cast<double>(sec.retained);
    }
    r.accuracy =
        r.retained == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.retained);
    r.coverage = r.total == 0 ? 0.0 : static_cast<double>(r.retained) / static_cast<double>(r.total);
    return r;
}

std::string similarity_result_tsv(const std::string& dataset, const SpearmanResult& r) {
    return dataset + "\tspearman\t" + format_double(r.rho) + "\t" + format_double(r.coverage) +
           "\n";
}

std::string analogy_result_tsv(const std::string& dataset, const AnalogyResult& r) {
    std::string out = dataset + "\taccuracy\t" + format_double(r.accuracy) + "\t" +
                      format_double(r.coverage) + "\n";
    for (const SectionResult& sec : r.sections) {
        const double cov = sec.total == 0 ? 0.0
                                          : static_cast<double>(sec.retained) /
                                                static_cast<double>(sec.total);
        out += dataset + ":" + sec.section + "\taccuracy\t" + format_double(sec.accuracy) + "\t" +
               format_double(cov) + "\n";
    }
    return out;
}

}  // namespace olens
