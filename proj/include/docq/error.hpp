#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace docq {

// Base class for all recoverable pipeline errors. The CLI maps these to
// exit code 1; usage problems are handled before the pipeline starts.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateText : Error {
    using Error::Error;
};

struct EmptyCorpus : Error {
    using Error::Error;
};

struct MissingPair : Error {
    using Error::Error;
};

// Malformed input file; carries the 1-based line number of the bad row.
struct FormatError : Error {
    FormatError(const std::string& file, std::size_t line_no, const std::string& what)
        : Error(file + ":" + std::to_string(line_no) + ": " + what), line(line_no) {}
    std::size_t line;
};

struct TooSmall : Error {
    using Error::Error;
};

struct TooFewSamples : Error {
    using Error::Error;
};

struct SingleClass : Error {
    using Error::Error;
};

struct NonFinite : Error {
    using Error::Error;
};

struct DimensionMismatch : Error {
    using Error::Error;
};

}  // namespace docq
