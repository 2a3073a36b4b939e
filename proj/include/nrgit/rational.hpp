#pragma once

#include <gmpxx.h>
#include <string>

namespace nrgit {

using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational rational_from_string(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

} // namespace nrgit
