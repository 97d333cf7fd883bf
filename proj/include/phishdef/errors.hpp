#pragma once

#include <stdexcept>
#include <string>

namespace phishdef {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class EmptyUrl : public Error {
public:
    EmptyUrl() : Error("empty URL") {}
};

class MalformedUrl : public Error {
public:
    explicit MalformedUrl(const std::string& what) : Error("malformed URL: " + what) {}
};

class MalformedPort : public Error {
public:
    explicit MalformedPort(const std::string& text) : Error("malformed port: '" + text + "'") {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("I/O error: " + what) {}
};

// Carries the 1-based line number of the offending record.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("parse error at line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class InvalidEta : public Error {
public:
    explicit InvalidEta(double eta)
        : Error("eta must be in (0.5, 1), got " + std::to_string(eta)) {}
};

class InvalidLambda : public Error {
public:
    explicit InvalidLambda(double lambda)
        : Error("lambda must be positive, got " + std::to_string(lambda)) {}
};

class EmptyBatch : public Error {
public:
    EmptyBatch() : Error("empty training batch") {}
};

class InitTooLarge : public Error {
public:
    InitTooLarge() : Error("initialization segment does not leave any items to score") {}
};

class StreamTooShort : public Error {
public:
    StreamTooShort() : Error("stream shorter than the initialization segment") {}
};

class TooFewExamples : public Error {
public:
    TooFewExamples() : Error("fewer examples than cross-validation folds") {}
};

class EmptyInput : public Error {
public:
    EmptyInput() : Error("empty input") {}
};

class ModelFormatError : public Error {
public:
    explicit ModelFormatError(const std::string& what) : Error("model file: " + what) {}
};

} // namespace phishdef
