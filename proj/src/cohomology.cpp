#include "torell/cohomology.hpp"

#include <algorithm>

namespace torell {

Representation::Representation(const std::map<Character, i64>& summands) {
    for (const auto& [c, m] : summands)
        add(c, m);
}

void Representation::add(const Character& c, i64 mult) {
    if (c.is_zero())
        throw DomainError("Representation: fixed-point character (0,0) is not allowed");
    if (mult < 1)
        throw DomainError("Representation: multiplicities must be positive");
    terms_[c] += mult;
}

i64 Representation::dimension() const {
    i64 d = 0;
    for (const auto& [c, m] : terms_)
        d += m;
    return d;
}

std::vector<RepSummand> Representation::as_summands() const {
    std::vector<RepSummand> out;
    out.reserve(terms_.size());
    for (const auto& [c, m] : terms_)
        out.push_back(RepSummand{c, m});
    return out;
}

SurfaceDivisor divisor_of_rep(const Representation& V) {
    // Route 1: per-summand pushforward, z_d^n picks up every fiber of order
    // dividing |n| along d.
    SurfaceDivisor by_summand;
    for (const auto& [c, m] : V.summands()) {
        const auto [dir, n] = decompose_character(c);
        const i64 an = std::abs(n);
        for (i64 j = 1; j <= an; ++j)
            if (an % j == 0)
                by_summand.add(dir, j, m);
    }
    // Route 2: the dimension function v_{d,j} = dim V^{ker z_d^j}, evaluated
    // by direct character-triviality counting on the support grid.
    SurfaceDivisor by_dimension;
    for (const auto& [key, coeff] : by_summand.terms()) {
        const auto& [d, j] = key;
        i64 dim = 0;
        for (const auto& [c, m] : V.summands()) {
            const auto [dir, n] = decompose_character(c);
            if (dir == d && std::abs(n) % j == 0)
                dim += m;
        }
        if (dim != 0)
            by_dimension.add(d, j, dim);
    }
    if (!(by_summand == by_dimension))
        throw DomainError("divisor_of_rep: the two divisor formulas disagree");
    return by_summand;
}

namespace {

// h^*(E, L) for a line bundle of degree k on an elliptic curve.
std::pair<i64, i64> curve_h(i64 k) {
    if (k > 0)
        return {k, 0};
    if (k == 0)
        return {1, 1};
    return {0, -k};
}

} // namespace

CohomologyTriple cohomology_triple(const SurfaceDivisor& D, int sign) {
    if (sign != 1 && sign != -1)
        throw DomainError("cohomology_triple: sign must be +1 or -1");
    for (const auto& [k, v] : D.terms())
        if (v < 0)
            throw DomainError("cohomology_triple: mixed-sign divisors are out of scope");

    if (D.empty())
        return CohomologyTriple{1, 2, 1};

    const std::vector<Direction> dirs = D.support_directions();
    if (dirs.size() == 1) {
        const i64 deg = direction_degree(D, dirs.front());
        if (sign > 0)
            return CohomologyTriple{deg, deg, 0};
        return CohomologyTriple{0, deg, deg};
    }

    const i64 half = self_intersection(D) / 2;
    if (sign > 0)
        return CohomologyTriple{half, 0, 0};
    return CohomologyTriple{0, 0, half};
}

CohomologyTriple kunneth_oracle(const std::map<i64, i64>& a, const std::map<i64, i64>& b,
                                int sign) {
    i64 p = 0, q = 0;
    for (const auto& [j, v] : a)
        p += sign * v * exact_order_count(j);
    for (const auto& [l, v] : b)
        q += sign * v * exact_order_count(l);
    const auto [a0, a1] = curve_h(p);
    const auto [b0, b1] = curve_h(q);
    CohomologyTriple t;
    t.h0 = a0 * b0;
    t.h1 = a0 * b1 + a1 * b0;
    t.h2 = a1 * b1;
    return t;
}

CohomologyTriple sphere_triple(const Representation& V, int sign) {
    if (sign != 1 && sign != -1)
        throw DomainError("sphere_triple: sign must be +1 or -1");
    const SurfaceDivisor D = divisor_of_rep(V);
    // S^V takes the bundle O(-D_V), S^{-V} takes O(+D_V).
    return cohomology_triple(D, sign > 0 ? -1 : +1);
}

TheoryValue sphere_value(const Representation& V, int sign) {
    const CohomologyTriple t = sphere_triple(V, sign);
    return TheoryValue{t.h0 + t.h2, t.h1};
}

} // namespace torell
