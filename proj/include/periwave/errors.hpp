#pragma once

#include <stdexcept>
#include <string>

namespace periwave {

/// Problem document is malformed. `path` points at the offending JSON node.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& what)
        : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

/// The reflection/dissipation nondegeneracy condition
/// |r0 r1| != exp(int_0^1 Re(a+d)) failed (boundary determinant below floor).
class NondegeneracyViolation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Collocation boundary-matching system is numerically singular.
class OracleSingular : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A condition check was asked for data outside its hypotheses (e.g. r0=0).
class ConditionInapplicable : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace periwave
