#pragma once

#include <stdexcept>
#include <string>

namespace hcseq {

/// Bad invocation: an argument is outside what an operation accepts.
class usage_error : public std::invalid_argument {
public:
    explicit usage_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Bad input data: malformed files, invalid bases, inconsistent records.
class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hcseq
