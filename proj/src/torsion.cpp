#include "torell/torsion.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace torell {

i64 point_order(const TorsionPoint& p) { return std::lcm(p.x.order(), p.y.order()); }

i64 point_order(const SurfaceTorsionPoint& p) {
    return std::lcm(point_order(p.p), point_order(p.q));
}

i64 exact_order_count(i64 n) {
    if (n < 1)
        throw DomainError("exact_order_count: n must be positive");
    i64 out = n * n;
    i64 m = n;
    for (i64 p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            out /= p * p;
            out *= p * p - 1;
            while (m % p == 0)
                m /= p;
        }
    if (m > 1) {
        out /= m * m;
        out *= m * m - 1;
    }
    return out;
}

TorsionPoint project(const Direction& d, const SurfaceTorsionPoint& pt) {
    return d.lambda * pt.p + d.mu * pt.q;
}

bool locus_contains(const CodimOneSubgroup& H, const SurfaceTorsionPoint& pt) {
    return (H.components * project(H.dir, pt)).is_zero();
}

bool fiber_divisor_contains(const Direction& d, i64 j, const SurfaceTorsionPoint& pt) {
    return point_order(project(d, pt)) == j;
}

std::vector<SurfaceTorsionPoint> subgroup_locus(const FiniteSubgroup& F, i64 budget) {
    if (F.order() > budget)
        throw DomainError("subgroup_locus: enumeration budget exceeded");
    // The locus is cut out by the annihilator rows (a,b): a*p + b*q = 0. With
    // the HNF rows (h00,h01), (0,h11) solve for q in the h11-torsion, then
    // for p from h00*p = -h01*q.
    const auto h = F.annihilator_hnf();
    const i64 h00 = h[0], h01 = h[1], h11 = h[2];
    std::vector<SurfaceTorsionPoint> out;
    out.reserve(F.order() * F.order());
    for (i64 qx = 0; qx < h11; ++qx)
        for (i64 qy = 0; qy < h11; ++qy) {
            const TorsionPoint q{QmodZ(qx, h11), QmodZ(qy, h11)};
            const TorsionPoint target = -(h01 * q);
            // h00 * p = target: p = target/h00 + (k/h00, l/h00).
            for (i64 k = 0; k < h00; ++k)
                for (i64 l = 0; l < h00; ++l) {
                    const TorsionPoint p{
                        QmodZ(target.x.num() + k * target.x.den(), h00 * target.x.den()),
                        QmodZ(target.y.num() + l * target.y.den(), h00 * target.y.den())};
                    out.push_back(SurfaceTorsionPoint{p, q});
                }
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

bool in_locus_of(const FiniteSubgroup& F, const SurfaceTorsionPoint& pt) {
    const auto h = F.annihilator_hnf();
    return (h[0] * pt.p + h[1] * pt.q).is_zero() && (h[2] * pt.q).is_zero();
}

bool is_prime(i64 n) {
    if (n < 2)
        return false;
    for (i64 p = 2; p * p <= n; ++p)
        if (n % p == 0)
            return false;
    return true;
}

} // namespace

std::vector<SurfaceTorsionPoint> exact_locus(const FiniteSubgroup& F, i64 budget) {
    // A locus point avoids every proper subgroup's locus iff it avoids the
    // maximal ones (those of prime index).
    std::vector<FiniteSubgroup> maximal;
    for (const FiniteSubgroup& s : F.subgroups())
        if (s.order() < F.order() && is_prime(F.order() / s.order()))
            maximal.push_back(s);
    std::vector<SurfaceTorsionPoint> out;
    for (const SurfaceTorsionPoint& pt : subgroup_locus(F, budget)) {
        bool exact = true;
        for (const FiniteSubgroup& s : maximal)
            if (in_locus_of(s, pt)) {
                exact = false;
                break;
            }
        if (exact)
            out.push_back(pt);
    }
    return out;
}

bool check_exact_locus_fibers(const FiniteSubgroup& F, std::span<const Direction> dirs,
                              i64 order_bound) {
    std::map<Direction, i64> n_of_dir;
    for (const Direction& d : dirs)
        n_of_dir[d] = n_index(F, d);
    return check_exact_locus_fibers_with(F, n_of_dir, order_bound);
}

bool check_exact_locus_fibers_with(const FiniteSubgroup& F,
                                   const std::map<Direction, i64>& n_of_dir,
                                   i64 order_bound) {
    const std::vector<SurfaceTorsionPoint> locus = exact_locus(F);
    if (locus.empty())
        return false;
    for (const auto& [d, nd] : n_of_dir)
        for (const SurfaceTorsionPoint& pt : locus) {
            if (!fiber_divisor_contains(d, nd, pt))
                return false;
            for (i64 m = 1; m <= order_bound; ++m)
                if (m != nd && fiber_divisor_contains(d, m, pt))
                    return false;
        }
    // The exact locus must equal the intersection of the selected fiber
    // divisors on torsion of bounded order.
    const std::set<SurfaceTorsionPoint> locus_set(locus.begin(), locus.end());
    for (const SurfaceTorsionPoint& pt : torsion_points_up_to(order_bound)) {
        bool in_all = true;
        for (const auto& [d, nd] : n_of_dir)
            if (!fiber_divisor_contains(d, nd, pt)) {
                in_all = false;
                break;
            }
        if (in_all != (locus_set.count(pt) > 0 && point_order(pt) <= order_bound))
            return false;
    }
    return true;
}

void EllipticDivisor::add(const TorsionPoint& p, i64 mult) {
    terms_[p] += mult;
    if (terms_[p] == 0)
        terms_.erase(p);
}

i64 EllipticDivisor::mult(const TorsionPoint& p) const {
    const auto it = terms_.find(p);
    return it == terms_.end() ? 0 : it->second;
}

bool abel_check(const EllipticDivisor& D) {
    i64 total = 0;
    TorsionPoint sum{};
    for (const auto& [p, m] : D.terms()) {
        total += m;
        sum = sum + m * p;
    }
    return total == 0 && sum.is_zero();
}

void SurfaceDivisor::add(const Direction& d, i64 j, i64 coeff) {
    if (j < 1)
        throw DomainError("SurfaceDivisor: fiber index must be >= 1");
    const Key k{d, j};
    terms_[k] += coeff;
    if (terms_[k] == 0)
        terms_.erase(k);
}

i64 SurfaceDivisor::coeff(const Direction& d, i64 j) const {
    const auto it = terms_.find({d, j});
    return it == terms_.end() ? 0 : it->second;
}

std::vector<Direction> SurfaceDivisor::support_directions() const {
    std::vector<Direction> dirs;
    for (const auto& [k, v] : terms_)
        if (dirs.empty() || !(dirs.back() == k.first))
            dirs.push_back(k.first);
    return dirs;
}

i64 intersection_number(const SurfaceDivisor& D1, const SurfaceDivisor& D2) {
    i64 total = 0;
    for (const auto& [k1, v1] : D1.terms())
        for (const auto& [k2, v2] : D2.terms()) {
            if (k1.first == k2.first)
                continue; // parallel fibers are disjoint
            const i64 det = direction_det(k1.first, k2.first);
            total += v1 * v2 * exact_order_count(k1.second) * exact_order_count(k2.second) *
                     det * det;
        }
    return total;
}

i64 self_intersection(const SurfaceDivisor& D) { return intersection_number(D, D); }

i64 direction_degree(const SurfaceDivisor& D, const Direction& d) {
    i64 deg = 0;
    for (const auto& [k, v] : D.terms())
        if (k.first == d)
            deg += v * exact_order_count(k.second);
    return deg;
}

std::vector<SurfaceTorsionPoint> torsion_points_up_to(i64 bound) {
    std::set<SurfaceTorsionPoint> seen;
    for (i64 n = 1; n <= bound; ++n)
        for (i64 a = 0; a < n; ++a)
            for (i64 b = 0; b < n; ++b)
                for (i64 c = 0; c < n; ++c)
                    for (i64 d = 0; d < n; ++d)
                        seen.insert(SurfaceTorsionPoint{
                            TorsionPoint{QmodZ(a, n), QmodZ(b, n)},
                            TorsionPoint{QmodZ(c, n), QmodZ(d, n)}});
    return std::vector<SurfaceTorsionPoint>(seen.begin(), seen.end());
}

} // namespace torell
