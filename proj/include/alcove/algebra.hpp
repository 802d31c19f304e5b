#pragma once

#include <cctype>
#include <string>

#include "alcove/errors.hpp"

namespace alcove {

enum class Family : char { A = 'A', B = 'B', C = 'C', D = 'D', E = 'E', F = 'F', G = 'G' };

// Names a simple Lie algebra: family letter plus rank, e.g. B13 or E7.
struct AlgebraId {
    Family family;
    int rank;

    friend bool operator==(const AlgebraId& a, const AlgebraId& b) {
        return a.family == b.family && a.rank == b.rank;
    }
    friend bool operator!=(const AlgebraId& a, const AlgebraId& b) { return !(a == b); }

    std::string str() const { return std::string(1, static_cast<char>(family)) + std::to_string(rank); }
};

inline bool valid_rank(Family f, int rank) {
    switch (f) {
        case Family::A: return rank >= 1;
        case Family::B: return rank >= 2;
        case Family::C: return rank >= 2;
        case Family::D: return rank >= 3;
        case Family::E: return rank == 6 || rank == 7 || rank == 8;
        case Family::F: return rank == 4;
        case Family::G: return rank == 2;
    }
    return false;
}

inline AlgebraId make_algebra(Family f, int rank) {
    AlgebraId id{f, rank};
    require(valid_rank(f, rank), "invalid rank " + std::to_string(rank) + " for family " +
                                     std::string(1, static_cast<char>(f)));
    return id;
}

// Parses strings like "B13", "e7", "A 2" is rejected.
inline AlgebraId parse_algebra(const std::string& s) {
    require(s.size() >= 2, "algebra name too short: '" + s + "'");
    char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
    require(fam >= 'A' && fam <= 'G', "unknown family letter in '" + s + "'");
    int rank = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        require(std::isdigit(static_cast<unsigned char>(s[i])), "bad rank digits in '" + s + "'");
        rank = rank * 10 + (s[i] - '0');
        require(rank <= 1000, "rank out of range in '" + s + "'");
    }
    return make_algebra(static_cast<Family>(fam), rank);
}

} // namespace alcove
