#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace seccache {

/// Exact rational; always reduced with a positive denominator.
using Rational = boost::rational<std::int64_t>;

/// "3/2", or "2" when the denominator is 1.
std::string to_string(const Rational& r);
double to_double(const Rational& r);

}  // namespace seccache
