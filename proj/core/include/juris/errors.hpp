#pragma once

#include <stdexcept>
#include <string>

namespace juris {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MalformedJson : public Error {
public:
    explicit MalformedJson(const std::string& detail) : Error("malformed json: " + detail) {}
};

class MissingField : public Error {
public:
    explicit MissingField(std::string field)
        : Error("missing required field: " + field), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class UnknownSegmentKind : public Error {
public:
    explicit UnknownSegmentKind(std::string kind)
        : Error("unknown segment kind: " + kind), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

class EmptyGraph : public Error {
public:
    EmptyGraph() : Error("graph has no nodes") {}
};

class UnknownCase : public Error {
public:
    explicit UnknownCase(std::string case_key)
        : Error("unknown case: " + case_key), case_(std::move(case_key)) {}
    const std::string& case_key() const { return case_; }

private:
    std::string case_;
};

class EmptyDocument : public Error {
public:
    EmptyDocument() : Error("document has no tokens") {}
};

class EmptyCorpus : public Error {
public:
    EmptyCorpus() : Error("corpus is empty") {}
};

class UnsupportedFormat : public Error {
public:
    explicit UnsupportedFormat(const std::string& name) : Error("unsupported format: " + name) {}
};

class LexiconMissing : public Error {
public:
    explicit LexiconMissing(const std::string& detail) : Error("sentiment lexicon missing: " + detail) {}
};

class NotFitted : public Error {
public:
    NotFitted() : Error("model is not fitted") {}
};

class DegenerateData : public Error {
public:
    explicit DegenerateData(const std::string& detail) : Error("degenerate training data: " + detail) {}
};

class NonFinite : public Error {
public:
    explicit NonFinite(const std::string& detail) : Error("non-finite value during training: " + detail) {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& detail) : Error("shape mismatch: " + detail) {}
};

class LengthMismatch : public Error {
public:
    explicit LengthMismatch(const std::string& detail) : Error("length mismatch: " + detail) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& detail) : Error("config error: " + detail) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& detail) : Error("io error: " + detail) {}
};

}  // namespace juris
