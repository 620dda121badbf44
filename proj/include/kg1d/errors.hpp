#ifndef KG1D_ERRORS_HPP
#define KG1D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace kg1d {

enum class Errc {
    invalid_argument,
    domain,
    bracket_failure,
    iteration_limit,
    ambiguous_shot,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

/// Both window endpoints classified to the same side: no eigenvalue with the
/// requested node count inside [lo, hi].
class BracketError : public Error {
public:
    BracketError(const std::string& what, double lo, double hi)
        : Error(Errc::bracket_failure, what), lo_(lo), hi_(hi) {}
    double lo() const { return lo_; }
    double hi() const { return hi_; }

private:
    double lo_, hi_;
};

/// Shot ended with the target node count but neither decayed nor grew:
/// the integration domain is too short to separate the two tail modes.
class AmbiguousShotError : public Error {
public:
    explicit AmbiguousShotError(const std::string& what)
        : Error(Errc::ambiguous_shot, what) {}
};

class IterationLimitError : public Error {
public:
    explicit IterationLimitError(const std::string& what)
        : Error(Errc::iteration_limit, what) {}
};

inline void require(bool cond, Errc code, const std::string& what) {
    if (!cond) throw Error(code, what);
}

} // namespace kg1d

#endif
