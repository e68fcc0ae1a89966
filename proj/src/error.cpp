#include "thresholdlab/error.hpp"

namespace tlab {

const char* errc_name(errc c) {
    switch (c) {
        case errc::ground_set_too_large: return "GroundSetTooLarge";
        case errc::trivial_family: return "TrivialFamily";
        case errc::not_monotone: return "NotMonotone";
        case errc::inconclusive: return "Inconclusive";
        case errc::lp_numerical_failure: return "LPNumericalFailure";
        case errc::not_bipartite: return "NotBipartite";
        case errc::p_too_large: return "PTooLarge";
        case errc::invalid_p: return "InvalidP";
        case errc::too_large: return "TooLarge";
        case errc::config_invalid: return "ConfigInvalid";
        case errc::replay_mismatch: return "ReplayMismatch";
        case errc::invalid_argument: return "InvalidArgument";
    }
    return "Error";
}

} // namespace tlab
