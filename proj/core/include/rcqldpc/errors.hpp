#pragma once

#include <stdexcept>
#include <string>

namespace rcq {

// Input text (alist / QC / JSON) could not be parsed; message carries the
// offending line or section.
class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantizer was asked for more regions than the source alphabet can supply
// (an interval of width < 2 would have to be split).
class degenerate_alphabet_error : public std::runtime_error {
  public:
    explicit degenerate_alphabet_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Table design could not complete; message names the failing iteration.
class design_failure_error : public std::runtime_error {
  public:
    explicit design_failure_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A quantity the library maintains by construction (e.g. a monotone MI
// trajectory) came out violated; indicates a bug, not bad input.
class internal_consistency_error : public std::runtime_error {
  public:
    explicit internal_consistency_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Decoder/simulation configuration mismatch (wrong table count, wrong mode...).
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace rcq
