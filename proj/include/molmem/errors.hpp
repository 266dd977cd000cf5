#pragma once

#include <stdexcept>
#include <string>

namespace molmem {

// File or wire-format problems (bad magic, truncation, count mismatch).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& msg) : std::runtime_error(msg) {}
};

// Pipeline-state problems (empty pattern after threshold, unfinalized memory).
struct PipelineError : std::runtime_error {
    explicit PipelineError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace molmem
