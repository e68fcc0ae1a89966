#pragma once

#include <stdexcept>
#include <string>

namespace tlab {

enum class errc {
    ground_set_too_large,
    trivial_family,
    not_monotone,
    inconclusive,
    lp_numerical_failure,
    not_bipartite,
    p_too_large,
    invalid_p,
    too_large,
    config_invalid,
    replay_mismatch,
    invalid_argument,
};

const char* errc_name(errc c);

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

} // namespace tlab
