#pragma once
#include <map>

#include "torell/torsion.hpp"

namespace torell {

// Finite-dimensional representation of the torus with no fixed vectors:
// nonzero characters with positive multiplicities. Empty means V = 0.
class Representation {
  public:
    Representation() = default;
    explicit Representation(const std::map<Character, i64>& summands);

    void add(const Character& c, i64 mult);
    const std::map<Character, i64>& summands() const { return terms_; }
    i64 dimension() const;
    std::vector<RepSummand> as_summands() const;

  private:
    std::map<Character, i64> terms_;
};

// The divisor cut out by a representation: each summand z_d^n contributes the
// fibers of order j for every j dividing |n|. Computed by two routes (the
// dimension-function grid and per-summand pushforward) which must agree.
SurfaceDivisor divisor_of_rep(const Representation& V);

// Sheaf cohomology dimensions (h0, h1, h2) of a line bundle on the surface.
struct CohomologyTriple {
    i64 h0 = 0, h1 = 0, h2 = 0;
    bool operator==(const CohomologyTriple&) const = default;
};

// Cohomology of O(sign * D) for an effective combination D of fiber divisors.
// Case analysis: trivial bundle, single-direction (pullback from the curve),
// or >= 2 directions (D^2 > 0, index-theorem vanishing). Throws on negative
// coefficients.
CohomologyTriple cohomology_triple(const SurfaceDivisor& D, int sign);

// Independent oracle for divisors supported on the two coordinate directions:
// exterior products computed through the Kunneth formula. Keys are fiber
// indices j, values coefficients.
CohomologyTriple kunneth_oracle(const std::map<i64, i64>& a, const std::map<i64, i64>& b,
                                int sign);

// 2-periodic value dimensions of the theory on a representation sphere.
struct TheoryValue {
    i64 even = 0, odd = 0;
    bool operator==(const TheoryValue&) const = default;
};

// sign = +1 evaluates on S^V (bundle O(-D_V)), sign = -1 on S^{-V} (bundle
// O(+D_V)); even = h0 + h2, odd = h1.
TheoryValue sphere_value(const Representation& V, int sign);
// The triple backing the value, for reporting.
CohomologyTriple sphere_triple(const Representation& V, int sign);

} // namespace torell
