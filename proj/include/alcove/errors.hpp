#pragma once

#include <stdexcept>
#include <string>

namespace alcove {

// Bad arguments from the caller (weight outside the alcove, invalid rank, ...).
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A library invariant failed to hold; indicates a bug or corrupted state.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw input_error(msg);
}

inline void ensure(bool cond, const std::string& msg) {
    if (!cond) throw internal_error(msg);
}

} // namespace alcove
