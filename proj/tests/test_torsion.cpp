#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "torell/torsion.hpp"

using namespace torell;

namespace {

TorsionPoint tp(i64 a, i64 b, i64 c, i64 d) { return TorsionPoint{QmodZ(a, b), QmodZ(c, d)}; }

SurfaceTorsionPoint sp(TorsionPoint p, TorsionPoint q) { return SurfaceTorsionPoint{p, q}; }

FiniteSubgroup subgroup(std::vector<QmodZ2> gens) {
    return FiniteSubgroup::from_generators(gens);
}

} // namespace

TEST_CASE("point_order") {
    CHECK(point_order(tp(0, 1, 0, 1)) == 1);
    CHECK(point_order(tp(1, 2, 1, 3)) == 6);
    CHECK(point_order(tp(2, 4, 0, 1)) == 2); // reduced first
}

TEST_CASE("exact_order_count") {
    CHECK(exact_order_count(1) == 1);
    CHECK(exact_order_count(2) == 3);
    CHECK(exact_order_count(6) == 24);
    CHECK_THROWS_AS(exact_order_count(0), DomainError);

    SUBCASE("matches direct enumeration") {
        for (i64 n = 1; n <= 12; ++n) {
            i64 count = 0;
            for (i64 a = 0; a < n; ++a)
                for (i64 b = 0; b < n; ++b)
                    if (point_order(tp(a, n, b, n)) == n)
                        ++count;
            CHECK(count == exact_order_count(n));
        }
    }
    SUBCASE("divisor sums give squares") {
        for (i64 n = 1; n <= 100; ++n) {
            i64 sum = 0;
            for (i64 j = 1; j <= n; ++j)
                if (n % j == 0)
                    sum += exact_order_count(j);
            CHECK(sum == n * n);
        }
    }
}

TEST_CASE("locus membership") {
    const SurfaceTorsionPoint origin = sp(tp(0, 1, 0, 1), tp(0, 1, 0, 1));

    SUBCASE("the origin lies on every subgroup locus") {
        for (const Direction& d : direction_grid(3))
            for (i64 j = 1; j <= 4; ++j)
                CHECK(locus_contains(CodimOneSubgroup{d, j}, origin));
    }
    SUBCASE("projection pairing decides membership") {
        const SurfaceTorsionPoint q = sp(tp(1, 2, 0, 1), tp(0, 1, 0, 1));
        CHECK_FALSE(locus_contains(CodimOneSubgroup{Direction{1, 0}, 1}, q));
        CHECK(locus_contains(CodimOneSubgroup{Direction{1, 0}, 2}, q));
        CHECK(fiber_divisor_contains(Direction{1, 0}, 2, q));
        CHECK_FALSE(fiber_divisor_contains(Direction{1, 0}, 1, q));
    }
    SUBCASE("order-3 image is not 2-torsion") {
        const SurfaceTorsionPoint q = sp(tp(1, 3, 0, 1), tp(0, 1, 0, 1));
        CHECK(point_order(project(Direction{1, 0}, q)) == 3);
        CHECK_FALSE(locus_contains(CodimOneSubgroup{Direction{1, 0}, 2}, q));
    }
}

TEST_CASE("subgroup locus and exact locus") {
    SUBCASE("locus size is the order squared") {
        for (const FiniteSubgroup& F : subgroups_up_to(8))
            CHECK(static_cast<i64>(subgroup_locus(F).size()) == F.order() * F.order());
    }
    SUBCASE("trivial subgroup sees only the origin") {
        const auto pts = exact_locus(subgroup({}));
        REQUIRE(pts.size() == 1);
        CHECK(pts[0] == sp(tp(0, 1, 0, 1), tp(0, 1, 0, 1)));
    }
    SUBCASE("order-2 cyclic subgroup has three exact points") {
        CHECK(exact_locus(subgroup({tp(1, 2, 0, 1)})).size() == 3);
    }
    SUBCASE("two-torsion square has six exact points") {
        CHECK(exact_locus(subgroup({tp(1, 2, 0, 1), tp(0, 1, 1, 2)})).size() == 6);
    }
    SUBCASE("inclusion-exclusion oracle over all proper subgroups") {
        for (const FiniteSubgroup& F : subgroups_up_to(9)) {
            std::set<SurfaceTorsionPoint> expected;
            const auto locus = subgroup_locus(F);
            expected.insert(locus.begin(), locus.end());
            for (const FiniteSubgroup& S : F.subgroups()) {
                if (S.order() == F.order())
                    continue;
                for (const SurfaceTorsionPoint& p : subgroup_locus(S))
                    expected.erase(p);
            }
            const auto got = exact_locus(F);
            CHECK(std::set<SurfaceTorsionPoint>(got.begin(), got.end()) == expected);
        }
    }
    SUBCASE("nonempty up to order 36") {
        for (const FiniteSubgroup& F : subgroups_up_to(36))
            CHECK_FALSE(exact_locus(F).empty());
    }
    SUBCASE("enumeration budget is enforced") {
        const FiniteSubgroup big = FiniteSubgroup::from_annihilator(7, 0, 0, 7);
        CHECK_THROWS_AS(exact_locus(big, 36), DomainError);
        CHECK_FALSE(exact_locus(big, 49).empty());
    }
    SUBCASE("pairwise disjoint up to order 16") {
        const auto subs = subgroups_up_to(16);
        std::vector<std::set<SurfaceTorsionPoint>> loci;
        for (const FiniteSubgroup& F : subs) {
            const auto pts = exact_locus(F);
            loci.emplace_back(pts.begin(), pts.end());
        }
        for (std::size_t i = 0; i < subs.size(); ++i)
            for (std::size_t j = i + 1; j < subs.size(); ++j)
                for (const SurfaceTorsionPoint& p : loci[i])
                    CHECK_FALSE(loci[j].count(p));
    }
}

TEST_CASE("exact locus vs fiber divisors") {
    SUBCASE("trivial subgroup with the three small directions") {
        const std::vector<Direction> dirs = {Direction{1, 0}, Direction{0, 1}, Direction{1, 1}};
        CHECK(check_exact_locus_fibers(subgroup({}), dirs, 6));
    }
    SUBCASE("order-3 diagonal subgroup") {
        const std::vector<Direction> dirs = direction_grid(2);
        CHECK(check_exact_locus_fibers(subgroup({tp(1, 3, 1, 3)}), dirs, 9));
    }
    SUBCASE("an adversarial index map fails") {
        std::map<Direction, i64> wrong;
        wrong[Direction{1, 0}] = 2; // the trivial subgroup needs n = 1
        wrong[Direction{0, 1}] = 1;
        CHECK_FALSE(check_exact_locus_fibers_with(subgroup({}), wrong, 4));
    }
}

TEST_CASE("abel_check") {
    const TorsionPoint e = tp(0, 1, 0, 1);
    const TorsionPoint h1 = tp(1, 2, 0, 1), h2 = tp(0, 1, 1, 2), h3 = tp(1, 2, 1, 2);

    SUBCASE("two-torsion relation is principal") {
        EllipticDivisor D;
        D.add(e, 1);
        D.add(h1, 1);
        D.add(h2, -1);
        D.add(h3, -1);
        CHECK(abel_check(D));
    }
    SUBCASE("a single point difference is not") {
        EllipticDivisor D;
        D.add(h1, 1);
        D.add(e, -1);
        CHECK_FALSE(abel_check(D));
    }
    SUBCASE("halving pattern is principal") {
        const TorsionPoint p = tp(1, 2, 0, 1), half = tp(1, 4, 0, 1);
        EllipticDivisor D;
        D.add(e, 1);
        D.add(p, 1);
        D.add(half, -2);
        CHECK(abel_check(D));
    }
    SUBCASE("degree zero but nonzero sum fails") {
        EllipticDivisor D;
        D.add(tp(1, 3, 0, 1), 1);
        D.add(e, -1);
        CHECK_FALSE(abel_check(D));
    }
}

TEST_CASE("intersection numbers") {
    SurfaceDivisor d1;
    d1.add(Direction{1, 0}, 1, 1);
    SurfaceDivisor d2;
    d2.add(Direction{0, 1}, 1, 1);

    SUBCASE("axis fibers meet once") { CHECK(intersection_number(d1, d2) == 1); }
    SUBCASE("skew diagonals meet four times") {
        SurfaceDivisor a, b;
        a.add(Direction{1, 1}, 1, 1);
        b.add(Direction{-1, 1}, 1, 1);
        CHECK(intersection_number(a, b) == 4);
    }
    SUBCASE("higher fiber order scales by the totient") {
        SurfaceDivisor a;
        a.add(Direction{1, 0}, 2, 1);
        CHECK(intersection_number(a, d2) == 3);
    }
    SUBCASE("symmetry and bilinearity") {
        SurfaceDivisor a, b, extra;
        a.add(Direction{1, 1}, 2, 2);
        a.add(Direction{1, 0}, 1, 1);
        b.add(Direction{-1, 2}, 1, 3);
        b.add(Direction{0, 1}, 3, 1);
        extra.add(Direction{1, 1}, 2, 2);
        CHECK(intersection_number(a, b) == intersection_number(b, a));
        SurfaceDivisor a2 = a;
        a2.add(Direction{1, 1}, 2, 2);
        CHECK(intersection_number(a2, b) ==
              intersection_number(a, b) + intersection_number(extra, b));
    }
}

TEST_CASE("self intersection and direction degree") {
    SurfaceDivisor d12;
    d12.add(Direction{1, 0}, 1, 1);
    d12.add(Direction{0, 1}, 1, 1);
    CHECK(self_intersection(d12) == 2);

    SUBCASE("bilinear in the coefficients") {
        for (i64 a = 0; a <= 3; ++a)
            for (i64 b = 0; b <= 3; ++b) {
                SurfaceDivisor D;
                if (a)
                    D.add(Direction{1, 0}, 1, a);
                if (b)
                    D.add(Direction{0, 1}, 1, b);
                CHECK(self_intersection(D) == 2 * a * b);
            }
    }
    SUBCASE("single-direction divisors square to zero") {
        SurfaceDivisor D;
        D.add(Direction{1, 2}, 1, 3);
        D.add(Direction{1, 2}, 2, 1);
        CHECK(self_intersection(D) == 0);
    }
    SUBCASE("nonnegative, even, zero exactly on single directions") {
        const std::vector<Direction> dirs = direction_grid(2);
        for (const Direction& da : dirs)
            for (const Direction& db : dirs)
                for (i64 ca = 0; ca <= 2; ++ca)
                    for (i64 cb = 0; cb <= 2; ++cb) {
                        SurfaceDivisor D;
                        if (ca)
                            D.add(da, 1, ca);
                        if (cb)
                            D.add(db, 2, cb);
                        const i64 v = self_intersection(D);
                        CHECK(v >= 0);
                        CHECK(v % 2 == 0);
                        CHECK((v == 0) == (D.support_directions().size() <= 1));
                    }
    }
    SUBCASE("direction degree sums fiber totients") {
        SurfaceDivisor D;
        D.add(Direction{1, 0}, 1, 1);
        CHECK(direction_degree(D, Direction{1, 0}) == 1);
        D.add(Direction{1, 0}, 2, 1);
        CHECK(direction_degree(D, Direction{1, 0}) == 4);
        CHECK(direction_degree(d12, Direction{1, 0}) == 1);
    }
}
