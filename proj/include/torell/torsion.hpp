#pragma once
#include <map>
#include <vector>

#include "torell/lattice.hpp"

namespace torell {

// Torsion point of the curve, modeled as an element of (Q/Z)^2.
using TorsionPoint = QmodZ2;

// Torsion point of the product surface (curve x curve).
struct SurfaceTorsionPoint {
    TorsionPoint p, q;
    auto operator<=>(const SurfaceTorsionPoint&) const = default;
};

// Order of a torsion point: lcm of the component orders.
i64 point_order(const TorsionPoint& p);
i64 point_order(const SurfaceTorsionPoint& p);

// Number of points of exact order n in (Q/Z)^2: the Jordan totient
// J(n) = n^2 * prod_{p | n} (1 - p^-2).
i64 exact_order_count(i64 n);

// Projection of a surface point along a direction: lambda*p + mu*q.
TorsionPoint project(const Direction& d, const SurfaceTorsionPoint& pt);

// Membership in the locus of the codimension-1 subgroup H_d^j (the preimage
// of the j-torsion under the direction projection).
bool locus_contains(const CodimOneSubgroup& H, const SurfaceTorsionPoint& pt);
// Membership in the order-j fiber divisor along d (exact order j).
bool fiber_divisor_contains(const Direction& d, i64 j, const SurfaceTorsionPoint& pt);

// The locus of a finite subgroup: surface points annihilated by every
// character that vanishes on F. Has |F|^2 elements. Throws when the order
// exceeds the enumeration budget.
std::vector<SurfaceTorsionPoint> subgroup_locus(const FiniteSubgroup& F, i64 budget = 36);

// Points of the locus of F lying on no proper subgroup's locus; nonempty for
// every finite F.
std::vector<SurfaceTorsionPoint> exact_locus(const FiniteSubgroup& F, i64 budget = 36);

// Checks that for each listed direction the exact locus lies on the order-n_d
// fiber divisor and meets no other order (up to order_bound), and that the
// exact locus equals the intersection of those divisors on torsion points of
// order <= order_bound.
bool check_exact_locus_fibers(const FiniteSubgroup& F, std::span<const Direction> dirs,
                              i64 order_bound);
// Same with an explicit (possibly wrong) index map, for negative controls.
bool check_exact_locus_fibers_with(const FiniteSubgroup& F,
                                   const std::map<Direction, i64>& n_of_dir,
                                   i64 order_bound);

// Divisor on the curve supported on torsion points.
class EllipticDivisor {
  public:
    void add(const TorsionPoint& p, i64 mult);
    i64 mult(const TorsionPoint& p) const;
    const std::map<TorsionPoint, i64>& terms() const { return terms_; }

  private:
    std::map<TorsionPoint, i64> terms_;
};

// Abel's criterion: the divisor is principal iff the multiplicities sum to 0
// and the weighted point sum vanishes in the group.
bool abel_check(const EllipticDivisor& D);

// Formal integer combination of the fiber divisors D_{d,j} on the surface.
class SurfaceDivisor {
  public:
    using Key = std::pair<Direction, i64>; // (direction, j)

    void add(const Direction& d, i64 j, i64 coeff);
    i64 coeff(const Direction& d, i64 j) const;
    const std::map<Key, i64>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::vector<Direction> support_directions() const;
    bool operator==(const SurfaceDivisor&) const = default;

  private:
    std::map<Key, i64> terms_;
};

// Bilinear intersection product: distinct-direction fibers meet in
// J(j) * J(l) * det(d,e)^2 points, parallel fibers in 0.
i64 intersection_number(const SurfaceDivisor& D1, const SurfaceDivisor& D2);
i64 self_intersection(const SurfaceDivisor& D);

// Pushforward degree along a direction: sum_j coeff(d,j) * J(j).
i64 direction_degree(const SurfaceDivisor& D, const Direction& d);

// All surface torsion points of order <= bound.
std::vector<SurfaceTorsionPoint> torsion_points_up_to(i64 bound);

} // namespace torell
