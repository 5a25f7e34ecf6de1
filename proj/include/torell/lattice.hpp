#pragma once
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "torell/rational.hpp"

namespace torell {

using i64 = std::int64_t;

// Character of the 2-torus, z1^a * z2^b.
struct Character {
    i64 a = 0, b = 0;
    bool is_zero() const { return a == 0 && b == 0; }
    auto operator<=>(const Character&) const = default;
};

// Primitive direction vector: gcd(|lambda|,|mu|) = 1, mu >= 0, and lambda = 1
// when mu = 0. Indexes the connected codimension-1 subgroups.
struct Direction {
    i64 lambda = 1, mu = 0;
    auto operator<=>(const Direction&) const = default;
};

// Codimension-1 closed subgroup: kernel of z_dir^components.
struct CodimOneSubgroup {
    Direction dir;
    i64 components = 1; // j >= 1
};

Direction normalize_direction(i64 a, i64 b);
// c = n * dir with dir normalized, n nonzero.
std::pair<Direction, i64> decompose_character(const Character& c);
// Value of the direction character on a point of (Q/Z)^2.
QmodZ character_value(const Direction& d, const QmodZ2& p);
QmodZ character_value(const Character& c, const QmodZ2& p);
// det(d, e) = lambda_d * mu_e - mu_d * lambda_e.
i64 direction_det(const Direction& d, const Direction& e);
// All normalized directions with |lambda| + |mu| <= bound, search order:
// increasing |lambda| + |mu|, ties broken lexicographically.
std::vector<Direction> direction_grid(i64 bound);

// Finite subgroup of the 2-torus in canonical form. Internally stored as the
// annihilator lattice { (a,b) : a*g1 + b*g2 = 0 in Q/Z for all g in F },
// kept in row Hermite normal form [[h00, h01], [0, h11]], 0 <= h01 < h00.
class FiniteSubgroup {
  public:
    FiniteSubgroup() : h00_(1), h01_(0), h11_(1) {} // trivial subgroup

    static FiniteSubgroup from_generators(std::span<const QmodZ2> gens);
    static FiniteSubgroup from_generators(const std::vector<QmodZ2>& gens);
    // Subgroup annihilated by the two character rows (must be independent).
    static FiniteSubgroup from_annihilator(i64 a0, i64 b0, i64 a1, i64 b1);

    i64 order() const { return h00_ * h11_; }
    bool is_trivial() const { return order() == 1; }
    bool contains(const QmodZ2& p) const;
    // Canonical generator pair (second may be zero for cyclic subgroups).
    std::vector<QmodZ2> generators() const;
    std::vector<QmodZ2> elements() const;
    // Every subgroup, including trivial and the whole group.
    std::vector<FiniteSubgroup> subgroups() const;
    // Row HNF basis of the annihilator lattice.
    std::array<i64, 3> annihilator_hnf() const { return {h00_, h01_, h11_}; }
    // Exponent: lcm of element orders.
    i64 exponent() const;

    auto operator<=>(const FiniteSubgroup&) const = default;

  private:
    i64 h00_, h01_, h11_;
};

// Enumerate all finite subgroups of order <= max_order.
std::vector<FiniteSubgroup> subgroups_up_to(i64 max_order);

// Least n >= 1 such that z_d^n is trivial on F.
i64 n_index(const FiniteSubgroup& F, const Direction& d);

// F realized as the intersection of two codimension-1 subgroups: the kernels
// of z_A^{nA} and z_B^{nB}.
struct SubgroupProfile {
    FiniteSubgroup subgroup;
    Direction A;
    i64 nA = 1;
    Direction B;
    i64 nB = 1;
    std::map<Direction, i64> n_table; // n_index over the direction grid used
};

// Searches directions in increasing |lambda|+|mu| (lexicographic ties) for a
// pair whose kernels intersect in exactly F; A is the member with the smaller
// index. Throws DomainError when the search budget is exhausted.
SubgroupProfile splitting_pair(const FiniteSubgroup& F, i64 budget = 50);

// Integers (r, s) with n_d * d = r * (nA * A) + s * (nB * B) in the character
// lattice.
std::pair<i64, i64> solve_character_eq(const SubgroupProfile& p, const Direction& d);

// Polynomial in the two Euler generators of the component ring at F.
class EulerPolynomial {
  public:
    EulerPolynomial() = default;
    static EulerPolynomial constant(const Q& c);
    static EulerPolynomial linear(const Q& ca, const Q& cb); // ca*xA + cb*xB

    Q coeff(int i, int j) const; // coefficient of xA^i xB^j
    void set_coeff(int i, int j, const Q& v);
    const std::map<std::pair<int, int>, Q>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const; // total degree, -1 for zero

    EulerPolynomial operator+(const EulerPolynomial& o) const;
    EulerPolynomial operator*(const EulerPolynomial& o) const;
    bool operator==(const EulerPolynomial& o) const;

  private:
    std::map<std::pair<int, int>, Q> terms_;
};

// One summand of a representation: a nonzero character with a multiplicity.
struct RepSummand {
    Character character;
    i64 multiplicity = 1;
};

// Euler class of the representation restricted to the component ring at F:
// trivial-on-F summands z_d^n contribute ((n/n_d) * x_d)^mult, all others 1.
EulerPolynomial euler_class_component(std::span<const RepSummand> V,
                                      const SubgroupProfile& p);

// Polynomial in a single Euler generator c_{d,j}.
using CPolynomial = std::vector<Q>; // index = power of c

// Component of the inflation map at F along direction d: project the family
// onto j = n_d(F) and substitute c_{d,n_d} -> x_d = r*xA + s*xB.
EulerPolynomial inflation_component(const SubgroupProfile& p, const Direction& d,
                                    const std::map<i64, CPolynomial>& element);

} // namespace torell
