#pragma once

#include <stdexcept>
#include <string>

namespace snsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid scenario or simulation configuration; message names the field.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Unparseable text: LLM responses, rating files, data files.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Corpus ingest problems; message names the offending file.
class CorpusError : public Error {
public:
    using Error::Error;
};

/// Prompt rendering with an unbound placeholder.
class PromptError : public Error {
public:
    using Error::Error;
};

/// Backend completion failure surfaced after bounded retries.
class BackendError : public Error {
public:
    enum class Kind { transport, malformed, timeout };

    BackendError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace snsim
