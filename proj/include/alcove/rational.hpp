#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace alcove {

// Exact rational scalar used throughout the library. GMP keeps the
// Freudenthal recursion and the cyclotomic reductions overflow-free.
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// gmpxx has no long long overloads; all our integers fit in a long.
inline Rat rat(long long x) { return Rat(static_cast<long>(x)); }

inline bool rat_is_integer(const Rat& r) { return r.get_den() == 1; }

inline long long rat_to_ll(const Rat& r) {
    if (!rat_is_integer(r)) throw std::runtime_error("rational is not an integer: " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw std::runtime_error("rational out of long range: " + r.get_str());
    return r.get_num().get_si();
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Representative of r modulo m in [0, m).
inline Rat rat_mod(const Rat& r, const Rat& m) {
    mpz_class q;
    Rat ratio = r / m;
    mpz_fdiv_q(q.get_mpz_t(), ratio.get_num().get_mpz_t(), ratio.get_den().get_mpz_t());
    return r - Rat(q) * m;
}

inline long long lcm_ll(long long a, long long b) {
    mpz_class r;
    mpz_class za(static_cast<long>(a)), zb(static_cast<long>(b));
    mpz_lcm(r.get_mpz_t(), za.get_mpz_t(), zb.get_mpz_t());
    return r.get_si();
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

} // namespace alcove
