#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace chom {

// Exact rational scalar.  Every value is kept canonical: lowest terms,
// positive denominator.  All arithmetic in the engine goes through this
// type; there is no floating point anywhere.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "p", "-p" or "p/q".  Throws std::invalid_argument on malformed
// input or a zero denominator; the message repeats the offending text.
inline Rat parse_rat(const std::string& s) {
    mpq_t tmp;
    mpq_init(tmp);
    if (mpq_set_str(tmp, s.c_str(), 10) != 0) {
        mpq_clear(tmp);
        throw std::invalid_argument("malformed rational \"" + s + "\"");
    }
    if (mpz_sgn(mpq_denref(tmp)) == 0) {
        mpq_clear(tmp);
        throw std::invalid_argument("zero denominator in \"" + s + "\"");
    }
    mpq_canonicalize(tmp);
    Rat r(tmp);
    mpq_clear(tmp);
    return r;
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

} // namespace chom
