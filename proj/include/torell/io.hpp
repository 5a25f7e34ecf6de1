#pragma once
#include <string>
#include <vector>

#include "torell/cohomology.hpp"
#include "torell/formal_group.hpp"

namespace torell {

// Text formats:
//   rational        "p/q" or "n"
//   curve           "a1,a2,a3,a4,a6"
//   generators      "1/2,0;0,1/2"        (semicolon-separated (Q/Z)^2 pairs)
//   representation  "(a,b):m,(c,d):k"
//   direction       "l,m" or "(l,m)"
//   direction list  "(1,0),(0,1)"
//   divisor         "dir=(l,m) j=k coeff=v; ..."
Q parse_rational(const std::string& s);
Curve parse_curve(const std::string& s);
std::vector<QmodZ2> parse_generators(const std::string& s);
Representation parse_representation(const std::string& s);
Direction parse_direction(const std::string& s);
std::vector<Direction> parse_direction_list(const std::string& s);
SurfaceDivisor parse_divisor(const std::string& s);

// Sparse "coeff*t1^a*t2^b" terms in graded-lexicographic order (total degree
// ascending, then t1-exponent descending).
std::string format_bi(const BiSeries& s);
std::string format_uni(const UniSeries& s, const std::string& var = "t");
std::string format_point(const QmodZ2& p);
std::string format_direction(const Direction& d);

} // namespace torell
