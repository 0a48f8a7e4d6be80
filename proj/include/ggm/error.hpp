#pragma once

#include <stdexcept>
#include <string>

namespace ggm {

enum class Errc {
    invalid_argument,
    parse_error,
    not_positive_definite,
    non_convergence,
    rank_deficient,
    out_of_range,
    invalid_prob,
    invalid_partition,
    singular_precision,
    invalid_gamma,
    degenerate_loading,
    degenerate_jacobian,
    spec_mismatch,
    fold_too_small,
    incompatible_p,
    null_violated,
};

const char* errc_name(Errc code) noexcept;

// True for failures that originate in the numerics rather than in user input.
bool is_numerical(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace ggm
