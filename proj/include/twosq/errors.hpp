#pragma once

#include <stdexcept>
#include <string>

namespace twosq {

// Exit-code mapping used by the CLI: validation 2, resource guard 3, internal 4.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ResourceGuardError : public std::runtime_error {
public:
    ResourceGuardError(const std::string& what, double estimated_cost)
        : std::runtime_error(what + " (estimated cost " + std::to_string(estimated_cost) + ")"),
          cost_(estimated_cost) {}
    double estimated_cost() const { return cost_; }

private:
    double cost_;
};

class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& msg) {
    if (!ok) throw ValidationError(msg);
}

inline void ensure(bool ok, const std::string& msg) {
    if (!ok) throw InternalError(msg);
}

}  // namespace twosq
