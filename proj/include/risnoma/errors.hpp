#pragma once

#include <stdexcept>
#include <string>

namespace risnoma {

// Invalid or inconsistent configuration value. `key` names the offending
// entry so the CLI can report it.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

// Malformed config/scenario file.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Instance exceeds a combinatorial guard (exhaustive baseline).
class SizeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace risnoma
