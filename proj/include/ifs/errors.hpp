#ifndef IFS_ERRORS_HPP
#define IFS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ifs {

// Bad user input: unknown family, incompatible mode/params, malformed
// config or weight file. CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Valid config that leaves the numerically supported domain: truncation
// tail too heavy, overdamped lossy regime, degenerate Rabi frequency,
// non-finite intermediates. CLI maps this to exit code 3.
class NumericDomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Truncation failure; carries the smallest basis size that would pass.
class TruncationError : public NumericDomainError {
public:
    TruncationError(const std::string& what, int suggested_n_max)
        : NumericDomainError(what), suggested_n_max_(suggested_n_max) {}
    int suggested_n_max() const { return suggested_n_max_; }

private:
    int suggested_n_max_;
};

} // namespace ifs

#endif
