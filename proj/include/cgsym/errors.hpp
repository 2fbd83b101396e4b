#pragma once

#include <stdexcept>
#include <string>

namespace cgsym {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed graph file; carries the 1-based line number.
class parse_error : public error {
public:
    parse_error(const std::string& message, int line)
        : error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

// Input graph is outside the class an operation is defined on.
class domain_error : public error {
public:
    using error::error;
};

class size_mismatch : public error {
public:
    using error::error;
};

class not_decomposable : public error {
public:
    using error::error;
};

class too_large : public error {
public:
    using error::error;
};

class singular_matrix : public error {
public:
    using error::error;
};

class sample_too_small : public error {
public:
    using error::error;
};

class rank_deficient_data : public error {
public:
    using error::error;
};

}  // namespace cgsym
