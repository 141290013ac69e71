#pragma once

#include <stdexcept>
#include <string>

namespace driftvec {

// Bad or missing input data (unreadable files, unknown words, mismatched
// word sets, impossible alignments). CLI exit code 3.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// I/O failure; carries the offending path in the message. CLI exit code 3.
class IoError : public DataError {
public:
    using DataError::DataError;
};

// Numeric breakdown (domain violations, non-finite parameters, unstable
// training, undefined statistics). CLI exit code 4.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace driftvec
