#pragma once
#include <stdexcept>
#include <string>

namespace kh {

enum class Err {
    parse,
    bad_incidence,
    crossing_matching,
    non_alternating,
    boundary_mismatch,
    dimension_mismatch,
    no_such_loop,
    not_invertible,
    not_a_complex,
    inhomogeneous,
    arity_mismatch,
    orientation_mismatch,
    not_alternating,
    split,
    not_closed,
    not_fully_reduced,
    invalid_pdc,
    internal,
};

struct Error : std::runtime_error {
    Err code;
    Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

[[noreturn]] inline void fail(Err c, const std::string& msg) { throw Error(c, msg); }

inline void require(bool ok, Err c, const std::string& msg) {
    if (!ok) fail(c, msg);
}

}  // namespace kh
