#pragma once
#include <mutex>
#include <optional>
#include <string>

#include "torell/formal_group.hpp"
#include "torell/linalg.hpp"

namespace torell {

// ---------------------------------------------------------------------------
// Expansion of a localized function along one window divisor: columns graded
// by the power of the divisor coordinate u, coefficients Laurent in the
// complement coordinate v. Columns outside [col_min, col_bound) are unknown;
// inside, every column is stored with its own v-precision.
class LocalSeries {
  public:
    LocalSeries() : col_min_(0), col_bound_(0) {}
    // u <- first variable, v <- second; columns [0, s.precision()).
    static LocalSeries from_bi(const BiSeries& s);

    int col_min() const { return col_min_; }
    int col_bound() const { return col_bound_; }
    // Lowest column with a nonzero coefficient (col_bound when none).
    int col_order() const;
    const LaurentTail& column(int p) const; // requires col_min <= p < col_bound
    bool has_column(int p) const { return p >= col_min_ && p < col_bound_; }
    Q coeff(int p, int q) const;

    LocalSeries operator+(const LocalSeries& o) const;
    LocalSeries operator*(const LocalSeries& o) const;
    LocalSeries scaled(const Q& c) const;
    LocalSeries shifted(int n) const; // multiply by u^n, any sign
    // Multiplicative inverse; needs a nonzero leading column whose tail has a
    // nonzero leading coefficient.
    LocalSeries inverse() const;
    LocalSeries pow(int e) const; // e >= 0

  private:
    friend LocalSeries make_local(std::vector<LaurentTail> cols, int col_min, int col_bound);
    std::vector<LaurentTail> cols_; // index p - col_min_
    int col_min_, col_bound_;
};

LocalSeries make_local(std::vector<LaurentTail> cols, int col_min, int col_bound);

// ---------------------------------------------------------------------------
// Element of the localized ring: a truncated numerator over a monomial in the
// window coordinates, one pole exponent per window direction.
struct KLocal {
    BiSeries num;
    std::vector<int> poles;
};

// Class in the codimension-1 local cohomology along one window direction:
// principal part sum_p parts[p] * u^{-p} with Laurent coefficients in v.
struct H1Class {
    int dir = -1;
    std::map<int, LaurentTail> parts; // p >= 1
    bool is_zero() const;
};

// Class in the codimension-2 local cohomology in the Koszul monomial basis
// t1^{-a} t2^{-b}, a, b >= 1.
struct H2Class {
    std::map<std::pair<int, int>, Q> coeff;
    Q get(int a, int b) const;
    void add(int a, int b, const Q& v);
    bool is_zero() const;
    H2Class operator+(const H2Class& o) const;
    H2Class operator-(const H2Class& o) const;
    H2Class scaled(const Q& c) const;
    bool operator==(const H2Class& o) const;
};

// ---------------------------------------------------------------------------
// Truncated stalk model at the origin: a fixed set of pairwise non-parallel
// directions, a pole cap, and a working precision. All coordinate series,
// inverse coordinate maps, Jacobians and divisor-coordinate inverses are
// precomputed once (internally at a slightly higher precision so that every
// reported coefficient within the faithful window is exact).
class Window {
  public:
    Window(const Curve& c, std::vector<Direction> directions, int pole_cap, int prec);

    const std::vector<Direction>& directions() const { return dirs_; }
    int direction_count() const { return static_cast<int>(dirs_.size()); }
    int pole_cap() const { return pole_cap_; }
    int precision() const { return prec_; }
    int internal_precision() const { return internal_prec_; }
    const FormalGroup& formal_group() const { return fg_; }
    int index_of(const Direction& d) const; // -1 when absent
    // Complement coordinate direction (integer vector, det(d, c(d)) = +1).
    const Direction& complement(int di) const { return data_[di].comp; }
    const BiSeries& coord_series(int di) const { return data_[di].u; }
    const BiSeries& comp_coord_series(int di) const { return data_[di].v; }
    const BiSeries& psi1(int di) const { return data_[di].psi1; }
    const BiSeries& psi2(int di) const { return data_[di].psi2; }
    const BiSeries& jacobian(int di) const { return data_[di].jac; }
    // 1 / t_s expanded along direction di (s != di).
    const LocalSeries& inverse_coord_local(int di, int s) const;
    // Completed coordinate of (d, j) divided by the plain coordinate: the
    // unit (j*f/t) o u_d, as a numerator series.
    BiSeries hat_unit(int di, i64 j) const;
    // psi1^(a-1) * psi2^(b-1) * jacobian, cached.
    const BiSeries& residue_kernel(int di, int a, int b) const;

  private:
    struct DirData {
        Direction dir;
        Direction comp;
        BiSeries u, v;       // coordinates as series in (t1, t2)
        BiSeries psi1, psi2; // inverse map: t_i as series in (u, v)
        BiSeries jac;        // det d(t1,t2)/d(u,v), series in (u, v)
        std::map<int, LocalSeries> inv_coord; // s -> 1/t_s along this direction
        mutable std::map<std::pair<int, int>, BiSeries> kernel_cache;
    };
    std::vector<Direction> dirs_;
    int pole_cap_, prec_, internal_prec_;
    FormalGroup fg_;
    std::vector<DirData> data_;
    mutable std::mutex cache_mutex_;
};

// -------------------------------------------------------------- constructors

KLocal klocal(const Window& w, BiSeries num, std::vector<int> poles);
KLocal klocal_one(const Window& w);
// t1^e1 * t2^e2 / prod_d u_d^poles[d]
KLocal klocal_monomial(const Window& w, int e1, int e2, std::vector<int> poles);
KLocal klocal_mul(const Window& w, const KLocal& a, const KLocal& b);
// Cross-multiplied comparison at the reduced precision.
bool klocal_equal(const Window& w, const KLocal& a, const KLocal& b);

// ------------------------------------------------------------ the operations

// Exact re-expansion of f in the coordinate pair of direction di.
LocalSeries expand_along(const Window& w, const KLocal& f, int di);

// Strictly negative u-part of the expansion; throws when a pole exceeds the
// cap or a singular coefficient is outside the known precision.
H1Class principal_part(const Window& w, const KLocal& f, int di);

// One principal part per window direction.
std::vector<H1Class> d0(const Window& w, const KLocal& f);

// Koszul-basis class of the doubly singular monomial u^{-p} v^{-q} along di,
// computed by the residue transform against the window's coordinate change.
H2Class h2_reduce(const Window& w, int di, int p, int q, const Q& c);

// Residue class of a single H1 class.
H2Class d1_single(const Window& w, const H1Class& x);
// Sum of the per-direction residue classes. The orientation of every residue
// is fixed by the global coordinate pair through the Jacobian factor, which
// is what makes d1 o d0 vanish identically.
H2Class d1(const Window& w, const std::vector<H1Class>& classes);

// Multiplication by the completed coordinate of (dir(x), j) followed by
// re-extraction of the principal part. Nilpotent: pole orders drop by j >= 1.
H1Class act_c(const Window& w, const H1Class& x, i64 j = 1);
// Same with an explicit multiplier given as a series in (t1, t2).
H1Class act_c_with(const Window& w, const H1Class& x, const BiSeries& multiplier);

// Multiplication of a Koszul class by the completed coordinate of (d, n),
// re-reduced to the doubly-negative part.
H2Class act_x(const Window& w, const H2Class& y, const Direction& d, i64 n);
H2Class act_x_with(const H2Class& y, const BiSeries& multiplier);

// d1(hat t_{d,n_d} . x) = (r hat t_{A,nA} + s hat t_{B,nB}) . d1(x) for
// random principal-part samples x along d.
bool check_equivariance(const Window& w, const SubgroupProfile& p, const Direction& d,
                        int samples, unsigned seed = 12345);
// Same with an explicit (r, s), for negative controls.
bool check_equivariance_with(const Window& w, const SubgroupProfile& p, const Direction& d,
                             i64 r, i64 s, int samples, unsigned seed = 12345);

// Euler-twisted differentials. Component d of the twisted d0 is the class of
// hat t_d^{-exps[d]} * f; the twisted d1 multiplies component d by the capped
// product of hat t_s^{-exps[s]} over s != d before taking residues. With all
// exponents zero they reduce to d0 and d1, and their composite vanishes.
std::vector<H1Class> twisted_d0(const Window& w, const std::vector<int>& exps,
                                const KLocal& f);
H2Class twisted_d1(const Window& w, const std::vector<int>& exps,
                   const std::vector<H1Class>& classes);

// --------------------------------------------------------------- exactness

struct CheckResult {
    std::string name;
    bool pass;
};

struct ExactnessReport {
    std::vector<Direction> dirs;
    int pole_cap = 0;
    int prec = 0;
    std::size_t domain_dim = 0, h1_dim = 0, h2_dim = 0;
    std::size_t rank_d0 = 0, rank_d1 = 0, ker_d1_faithful = 0;
    std::vector<CheckResult> checks;
    bool all_pass() const;
};

// Assembles exact matrices of d0 and d1 on the truncated monomial bases and
// verifies: d1 o d0 = 0, surjectivity of d1 onto the Koszul monomials with
// a, b <= pole_cap - 1, and that every faithful-window kernel vector of d1
// lies in the image of d0 (rank equality over exact rationals).
ExactnessReport exactness_report(const Window& w);

} // namespace torell
