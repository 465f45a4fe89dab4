#include "olens/store.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "olens/errors.hpp"
#include "olens/format.hpp"

namespace olens {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return in;
}

void finish_out(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw IoError("write failed for " + path.string());
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<std::string> split_on(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_component(const std::string& field, const std::filesystem::path& path,
                       std::size_t line_no) {
    double v = 0.0;
    if (!parse_double(field, v)) {
        throw ParseError(path.string(), line_no, "bad number '" + field + "'");
    }
    if (!std::isfinite(v)) throw NonFiniteError(path.string(), line_no, field);
    return v;
}

std::uint64_t parse_count(const std::string& field, const std::filesystem::path& path,
                          std::size_t line_no) {
    unsigned long long v = 0;
    if (!parse_u64(field, v)) {
        throw ParseError(path.string(), line_no, "bad count '" + field + "'");
    }
    return static_cast<std::uint64_t>(v);
}

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

void save_embeddings(const EmbeddingSpace& space, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << space.vocab.size() << ' ' << space.dim() << '\n';
    std::string line;
    for (std::size_t i = 0; i < space.vocab.size(); ++i) {
        line = space.vocab.words[i];
        for (const double v : space.input.row(i)) {
            line += ' ';
            line += format_double(v);
        }
        line += '\n';
        out << line;
    }
    finish_out(out, path);
}

EmbeddingSpace load_embeddings(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
    strip_cr(line);
    const std::vector<std::string> header = split_on(line, ' ');
    if (header.size() != 2) throw ParseError(path.string(), 1, "expected '<words> <dim>' header");
    const std::uint64_t v = parse_count(header[0], path, 1);
    const std::uint64_t d = parse_count(header[1], path, 1);
    if (d == 0) throw ParseError(path.string(), 1, "dimension must be positive");

    EmbeddingSpace space;
    space.vocab.words.reserve(v);
    space.vocab.counts.assign(v, 0);
    space.input = Matrix(v, d);
    std::unordered_set<std::string> seen;

    std::size_t row = 0;
    std::size_t line_no = 1;
    while (row < v) {
        ++line_no;
        if (!std::getline(in, line)) {
            throw ParseError(path.string(), line_no,
                             "header promises " + std::to_string(v) + " words, file ends after " +
                                 std::to_string(row));
        }
        strip_cr(line);
        const std::vector<std::string> fields = split_on(line, ' ');
        if (fields.size() != d + 1) {
            throw ParseError(path.string(), line_no,
                             "expected word + " + std::to_string(d) + " components, got " +
                                 std::to_string(fields.size() ? fields.size() - 1 : 0));
        }
        if (fields[0].empty()) throw ParseError(path.string(), line_no, "empty word");
        if (!seen.insert(fields[0]).second) {
            throw ParseError(path.string(), line_no, "duplicate word '" + fields[0] + "'");
        }
        auto dst = space.input.row(row);
        for (std::size_t j = 0; j < d; ++j) {
            dst[j] = parse_component(fields[j + 1], path, line_no);
        }
        space.vocab.index.emplace(fields[0], static_cast<std::int32_t>(row));
        space.vocab.words.push_back(fields[0]);
        ++row;
    }
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (!line.empty()) {
            throw ParseError(path.string(), line_no, "more rows than the header promises");
        }
    }
    return space;
}

void attach_counts(EmbeddingSpace& space, const Vocabulary& vocab) {
    if (vocab.size() != space.vocab.size()) {
        throw InvalidArgumentError("vocabulary size " + std::to_string(vocab.size()) +
                                   " does not match embeddings (" +
                                   std::to_string(space.vocab.size()) + " words)");
    }
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        if (vocab.words[i] != space.vocab.words[i]) {
            throw InvalidArgumentError("vocabulary and embeddings disagree at id " +
                                       std::to_string(i) + ": '" + vocab.words[i] + "' vs '" +
                                       space.vocab.words[i] + "'");
        }
    }
    space.vocab.counts = vocab.counts;
    space.vocab.total_tokens = vocab.total_tokens;
}

void save_vocab(const Vocabulary& vocab, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (std::size_t i = 0; i < vocab.size(); ++i) {
        out << vocab.words[i] << '\t' << vocab.counts[i] << '\n';
    }
    finish_out(out, path);
}

Vocabulary load_vocab(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    Vocabulary vocab;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 2) throw ParseError(path.string(), line_no, "expected word<TAB>count");
        if (fields[0].empty()) throw ParseError(path.string(), line_no, "empty word");
        const std::uint64_t count = parse_count(fields[1], path, line_no);
        if (count == 0) throw ParseError(path.string(), line_no, "zero count");
        if (!vocab.words.empty()) {
            const std::uint64_t prev = vocab.counts.back();
            const bool ordered =
                prev > count || (prev == count && vocab.words.back() < fields[0]);
            if (!ordered) {
                throw ParseError(path.string(), line_no,
                                 "rows out of vocabulary order (descending count, "
                                 "lexicographic ties)");
            }
        }
        if (!vocab.index.emplace(fields[0], static_cast<std::int32_t>(vocab.words.size()))
                 .second) {
            throw ParseError(path.string(), line_no, "duplicate word '" + fields[0] + "'");
        }
        vocab.words.push_back(fields[0]);
        vocab.counts.push_back(count);
        vocab.total_tokens += count;
    }
    if (vocab.words.empty()) throw ParseError(path.string(), line_no, "no vocabulary rows");
    return vocab;
}

void save_phrases(const PhraseTable& table, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (const PhraseEntry& e : table.sorted_entries()) {
        out << e.left << '\t' << e.right << '\t' << format_double(e.score) << '\n';
    }
    finish_out(out, path);
}

PhraseTable load_phrases(const std::filesystem::path& path, double threshold,
                         std::uint64_t min_count) {
    std::ifstream in = open_in(path);
    PhraseTable table(threshold, min_count);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_on(line, '\t');
        if (fields.size() != 3) {
            throw ParseError(path.string(), line_no, "expected left<TAB>right<TAB>score");
        }
        table.add(fields[0], fields[1], parse_component(fields[2], path, line_no));
    }
    return table;
}

void save_mapping(const AlignmentMatrix& m, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    out << m.dim << ' ' << m.dim << '\n';
    for (std::size_t i = 0; i < m.dim; ++i) {
        const auto row = m.row(i);
        std::string line;
        for (std::size_t j = 0; j < m.dim; ++j) {
            if (j > 0) line += ' ';
            line += format_double(row[j]);
        }
        line += '\n';
        out << line;
    }
    finish_out(out, path);
}

AlignmentMatrix load_mapping(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string(), 1, "empty file");
    strip_cr(line);
    const std::vector<std::string> header = split_on(line, ' ');
    if (header.size() != 2) throw ParseError(path.string(), 1, "expected 'd d' header");
    const std::uint64_t rows = parse_count(header[0], path, 1);
    const std::uint64_t cols = parse_count(header[1], path, 1);
    if (rows != cols) throw ParseError(path.string(), 1, "mapping must be square");
    if (rows == 0) throw ParseError(path.string(), 1, "mapping dimension must be positive");

    AlignmentMatrix m;
    m.dim = rows;
    m.w.resize(rows * cols);
    std::size_t line_no = 1;
    for (std::size_t i = 0; i < rows; ++i) {
        ++line_no;
        if (!std::getline(in, line)) {
            throw ParseError(path.string(), line_no,
                             "header promises " + std::to_string(rows) + " rows, file ends after " +
                                 std::to_string(i));
        }
        strip_cr(line);
        const std::vector<std::string> fields = split_on(line, ' ');
        if (fields.size() != cols) {
            throw ParseError(path.string(), line_no,
                             "expected " + std::to_string(cols) + " entries, got " +
                                 std::to_string(fields.size()));
        }
        for (std::size_t j = 0; j < cols; ++j) {
            m.w[i * cols + j] = parse_component(fields[j], path, line_no);
        }
    }
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (!line.empty()) {
            throw ParseError(path.string(), line_no, "more rows than the header promises");
        }
    }
    return m;
}

void save_similarity(const std::vector<SimilarityRecord>& records,
                     const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (const SimilarityRecord& r : records) {
        out << r.word << '\t' << format_double(r.cosine) << '\t' << format_double(r.adjusted)
            << '\t' << r.freq_src << '\t' << r.freq_tgt << '\t' << r.bucket_id << '\n';
    }
    finish_out(out, path);
}

std::vector<SimilarityRecord> load_similarity(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<SimilarityRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        const std::vector<std::string> f = split_on(line, '\t');
        if (f.size() != 6) {
            throw ParseError(path.string(), line_no,
                             "expected word, cosine, adjusted, freq_src, freq_tgt, bucket");
        }
        SimilarityRecord r;
        r.word = f[0];
        r.cosine = parse_component(f[1], path, line_no);
        r.adjusted = parse_component(f[2], path, line_no);
        r.freq_src = parse_count(f[3], path, line_no);
        r.freq_tgt = parse_count(f[4], path, line_no);
        long long bucket = 0;
        try {
            bucket = std::stoll(f[5]);
        } catch (const std::exception&) {
            throw ParseError(path.string(), line_no, "bad bucket id '" + f[5] + "'");
        }
        r.bucket_id = static_cast<std::int32_t>(bucket);
        records.push_back(std::move(r));
    }
    return records;
}

void save_corpus(const std::vector<TokenSequence>& docs, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    std::string line;
    for (const TokenSequence& doc : docs) {
        line.clear();
        for (std::size_t i = 0; i < doc.size(); ++i) {
            if (i > 0) line += ' ';
            line += doc[i];
        }
        line += '\n';
        out << line;
    }
    finish_out(out, path);
}

std::vector<TokenSequence> load_corpus(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::vector<TokenSequence> docs;
    std::string line;
    while (std::getline(in, line)) {
        strip_cr(line);
        TokenSequence doc;
        std::size_t start = 0;
        while (start < line.size()) {
            std::size_t pos = line.find(' ', start);
            if (pos == std::string::npos) pos = line.size();
            if (pos > start) doc.push_back(line.substr(start, pos - start));
            start = pos + 1;
        }
        docs.push_back(std::move(doc));
    }
    return docs;
}

std::string fnv1a64(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fnv1a64_file(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    std::uint64_t h = 14695981039346656037ULL;
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        const std::streamsize n = in.gcount();
        for (std::streamsize i = 0; i < n; ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return hex;
}

void save_manifest(Manifest& manifest, const std::filesystem::path& path) {
    if (manifest.created.empty()) manifest.created = now_utc();
    manifest.updated = now_utc();

    nlohmann::json artifacts = nlohmann::json::object();
    for (const auto& [rel, checksum] : manifest.checksums) {
        nlohmann::json entry;
        entry["fnv1a64"] = checksum;
        const auto stage = manifest.stages.find(rel);
        entry["stage"] = stage == manifest.stages.end() ? "" : stage->second;
        artifacts[rel] = std::move(entry);
    }
    nlohmann::json doc;
    doc["created"] = manifest.created;
    doc["updated"] = manifest.updated;
    doc["config"] = manifest.config;
    doc["artifacts"] = std::move(artifacts);

    std::ofstream out = open_out(path);
    out << doc.dump(2) << '\n';
    finish_out(out, path);
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in = open_in(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    Manifest m;
    try {
        m.created = doc.at("created").get<std::string>();
        m.updated = doc.at("updated").get<std::string>();
        m.config = doc.at("config");
        for (const auto& [rel, entry] : doc.at("artifacts").items()) {
            m.checksums[rel] = entry.at("fnv1a64").get<std::string>();
            m.stages[rel] = entry.value("stage", "");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return m;
}

void manifest_record(Manifest& manifest, const std::filesystem::path& run_dir,
                     const std::string& rel_path, const std::string& stage) {
    manifest.checksums[rel_path] = fnv1a64_file(run_dir / rel_path);
    manifest.stages[rel_path] = stage;
}

void manifest_verify(const Manifest& manifest, const std::filesystem::path& run_dir,
                     const std::string& rel_path) {
    const auto it = manifest.checksums.find(rel_path);
    if (it == manifest.checksums.end()) {
        throw MissingArtifactError(rel_path, "not recorded; run the producing stage first");
    }
    const std::filesystem::path full = run_dir / rel_path;
    if (!std::filesystem::exists(full)) {
        const auto stage = manifest.stages.find(rel_path);
        const std::string hint = stage == manifest.stages.end() || stage->second.empty()
                                     ? "file deleted since it was recorded"
                                     : "rerun the '" + stage->second + "' stage";
        throw MissingArtifactError(rel_path, hint);
    }
    if (fnv1a64_file(full) != it->second) {
        throw StaleArtifactError(rel_path);
    }
}

void manifest_verify_all(const Manifest& manifest, const std::filesystem::path& run_dir) {
    for (const auto& [rel, checksum] : manifest.checksums) {
        (void)checksum;
        manifest_verify(manifest, run_dir, rel);
    }
}

}  // namespace olens
