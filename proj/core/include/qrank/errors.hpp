#pragma once

#include <stdexcept>
#include <string>

namespace qrank {

// Error taxonomy mirrored by the CLI exit codes:
//   usage_error -> 2, data_error -> 3, budget_error -> 4, verdict_error -> 5.
// Internal invariant violations use std::logic_error directly.

class usage_error : public std::runtime_error {
public:
    explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

class data_error : public std::runtime_error {
public:
    explicit data_error(const std::string& what) : std::runtime_error(what) {}
};

class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

class verdict_error : public std::runtime_error {
public:
    explicit verdict_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qrank
