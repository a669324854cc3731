#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ontoforge {

// Root of every error the library raises. `kind()` is the stable class name
// printed by the CLI and recorded in per-term failure records.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define ONTOFORGE_DEFINE_ERROR(Name)                                                   \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& message) : Error(#Name, message) {}           \
    }

// core-model
ONTOFORGE_DEFINE_ERROR(InvalidLabel);
ONTOFORGE_DEFINE_ERROR(InvalidCurie);
ONTOFORGE_DEFINE_ERROR(InvalidSymbol);
ONTOFORGE_DEFINE_ERROR(DuplicateCurie);

// vstore
ONTOFORGE_DEFINE_ERROR(DimMismatch);
ONTOFORGE_DEFINE_ERROR(DuplicateKey);
ONTOFORGE_DEFINE_ERROR(IoError);
ONTOFORGE_DEFINE_ERROR(VersionMismatch);

// completion
ONTOFORGE_DEFINE_ERROR(EmptyStore);
ONTOFORGE_DEFINE_ERROR(BudgetImpossible);
ONTOFORGE_DEFINE_ERROR(ProviderError);
ONTOFORGE_DEFINE_ERROR(ScriptMiss);
ONTOFORGE_DEFINE_ERROR(InvalidQuery);

// eval
ONTOFORGE_DEFINE_ERROR(MissingGoldField);
ONTOFORGE_DEFINE_ERROR(MalformedGold);
ONTOFORGE_DEFINE_ERROR(UnknownRowId);
ONTOFORGE_DEFINE_ERROR(ScoreOutOfRange);

// cli / config
ONTOFORGE_DEFINE_ERROR(ConfigError);
ONTOFORGE_DEFINE_ERROR(UsageError);

#undef ONTOFORGE_DEFINE_ERROR

// Errors tied to a line of input.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& message)
        : Error("ParseError", "line " + std::to_string(line) + ": " + message), line_(line) {}
    explicit ParseError(const std::string& message) : Error("ParseError", message) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

class SchemaError : public Error {
public:
    SchemaError(std::size_t line, const std::string& message)
        : Error("SchemaError", "line " + std::to_string(line) + ": " + message), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_ = 0;
};

class FetchError : public Error {
public:
    FetchError(int status, const std::string& message)
        : Error("FetchError", "HTTP " + std::to_string(status) + ": " + message), status_(status) {}

    int status() const noexcept { return status_; }

private:
    int status_ = 0;
};

class EmbedError : public Error {
public:
    EmbedError(std::size_t index, const std::string& message)
        : Error("EmbedError", "item " + std::to_string(index) + ": " + message), index_(index) {}

    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_ = 0;
};

// Raw model output is kept so callers can log what failed to parse.
class NoJsonFound : public Error {
public:
    explicit NoJsonFound(std::string raw)
        : Error("NoJsonFound", "no JSON object in provider response"), raw_(std::move(raw)) {}
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

class MalformedJson : public Error {
public:
    MalformedJson(std::string raw, const std::string& detail)
        : Error("MalformedJson", "malformed JSON in provider response: " + detail), raw_(std::move(raw)) {}
    const std::string& raw() const noexcept { return raw_; }

private:
    std::string raw_;
};

class InsufficientNewTerms : public Error {
public:
    InsufficientNewTerms(std::size_t available, std::size_t requested)
        : Error("InsufficientNewTerms", "only " + std::to_string(available) +
                                            " terms past cutoff, " + std::to_string(requested) +
                                            " requested"),
          available_(available), requested_(requested) {}

    std::size_t available() const noexcept { return available_; }
    std::size_t requested() const noexcept { return requested_; }

private:
    std::size_t available_ = 0;
    std::size_t requested_ = 0;
};

} // namespace ontoforge
