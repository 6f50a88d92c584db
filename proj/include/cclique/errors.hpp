#pragma once

#include <stdexcept>
#include <string>

namespace cclique {

// Thrown when an input guard refuses to run (e.g. oracle size cap).
// CLI maps this to exit code 3.
class refusal_error : public std::runtime_error {
public:
    explicit refusal_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
    size_t line() const { return line_; }

private:
    size_t line_;
};

} // namespace cclique
