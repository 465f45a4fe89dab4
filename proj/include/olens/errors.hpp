#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace olens {

// Base for every recoverable pipeline error. The CLI maps subclasses to
// exit codes and category prefixes.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Input that cannot be read at all (missing file, unreadable directory).
class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed artifact contents. Carries the 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t line, const std::string& msg)
        : Error(path + ":" + std::to_string(line) + ": " + msg), line_(line) {}
    explicit ParseError(const std::string& msg) : Error(msg), line_(0) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// A numeric field parsed to NaN or infinity.
class NonFiniteError : public ParseError {
public:
    NonFiniteError(const std::string& path, std::size_t line, const std::string& what_value)
        : ParseError(path, line, "non-finite value " + what_value) {}
};

// Vocabulary lookups for words the space does not contain.
class OovWordError : public Error {
public:
    explicit OovWordError(const std::string& word)
        : Error("word not in vocabulary: " + word), word_(word) {}
    const std::string& word() const { return word_; }

private:
    std::string word_;
};

// Nothing trainable / nothing comparable.
class EmptyVocabularyError : public Error {
public:
    explicit EmptyVocabularyError(const std::string& msg) : Error(msg) {}
};

class EmptyIntersectionError : public Error {
public:
    explicit EmptyIntersectionError(const std::string& msg) : Error(msg) {}
};

class EmptyGroupError : public Error {
public:
    explicit EmptyGroupError(const std::string& msg) : Error(msg) {}
};

// Too little usable data for a statistic (e.g. < 2 retained pairs).
class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& msg) : Error(msg) {}
};

// Least-squares system unsolvable even with the ridge term.
class DegenerateMappingError : public Error {
public:
    explicit DegenerateMappingError(const std::string& msg) : Error(msg) {}
};

class ZeroVarianceError : public Error {
public:
    explicit ZeroVarianceError(const std::string& msg) : Error(msg) {}
};

// Manifest bookkeeping: artifact changed on disk since it was recorded.
class StaleArtifactError : public Error {
public:
    explicit StaleArtifactError(const std::string& file)
        : Error("artifact is stale (checksum mismatch): " + file), file_(file) {}
    const std::string& file() const { return file_; }

private:
    std::string file_;
};

// Manifest bookkeeping: a referenced artifact does not exist.
class MissingArtifactError : public Error {
public:
    MissingArtifactError(const std::string& file, const std::string& hint)
        : Error("missing artifact: " + file + (hint.empty() ? "" : " (" + hint + ")")),
          file_(file) {}
    const std::string& file() const { return file_; }

private:
    std::string file_;
};

class InvalidArgumentError : public Error {
public:
    explicit InvalidArgumentError(const std::string& msg) : Error(msg) {}
};

}  // namespace olens
