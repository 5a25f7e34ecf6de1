#include "torell/cousin.hpp"

#include <algorithm>
#include <random>

namespace torell {

// ---------------------------------------------------------------- LocalSeries

LocalSeries make_local(std::vector<LaurentTail> cols, int col_min, int col_bound) {
    LocalSeries s;
    s.col_min_ = col_min;
    s.col_bound_ = std::max(col_bound, col_min);
    s.cols_ = std::move(cols);
    s.cols_.resize(s.col_bound_ - s.col_min_, LaurentTail(0));
    return s;
}

LocalSeries LocalSeries::from_bi(const BiSeries& s) {
    const int b = s.precision();
    std::vector<LaurentTail> cols;
    cols.reserve(b);
    for (int p = 0; p < b; ++p)
        cols.emplace_back(b - p);
    for (const auto& [e, v] : s.terms())
        cols[e.first].set_coeff(e.second, v);
    return make_local(std::move(cols), 0, b);
}

int LocalSeries::col_order() const {
    for (int p = col_min_; p < col_bound_; ++p)
        if (!cols_[p - col_min_].is_zero())
            return p;
    return col_bound_;
}

const LaurentTail& LocalSeries::column(int p) const {
    if (!has_column(p))
        throw DomainError("LocalSeries: column out of the known range");
    return cols_[p - col_min_];
}

Q LocalSeries::coeff(int p, int q) const {
    if (!has_column(p))
        return Q(0);
    return cols_[p - col_min_].coeff(q);
}

LocalSeries LocalSeries::operator+(const LocalSeries& o) const {
    const int mn = std::min(col_min_, o.col_min_);
    const int bd = std::min(col_bound_, o.col_bound_);
    std::vector<LaurentTail> cols;
    for (int p = mn; p < bd; ++p) {
        const LaurentTail a =
            has_column(p) ? column(p) : LaurentTail(p < col_min_ ? kExactPrec : -kExactPrec);
        const LaurentTail b =
            o.has_column(p) ? o.column(p) : LaurentTail(p < o.col_min_ ? kExactPrec : -kExactPrec);
        cols.push_back(a + b);
    }
    return make_local(std::move(cols), mn, bd);
}

LocalSeries LocalSeries::operator*(const LocalSeries& o) const {
    const int mn = col_min_ + o.col_min_;
    const long bd_l = std::min<long>(static_cast<long>(col_bound_) + o.col_min_,
                                     static_cast<long>(o.col_bound_) + col_min_);
    const int bd = static_cast<int>(std::max<long>(bd_l, mn));
    std::vector<LaurentTail> cols;
    for (int r = mn; r < bd; ++r) {
        LaurentTail acc(kExactPrec);
        for (int p = std::max(col_min_, r - (o.col_bound_ - 1));
             p <= std::min(col_bound_ - 1, r - o.col_min_); ++p) {
            const LaurentTail& a = cols_[p - col_min_];
            const LaurentTail& b = o.cols_[r - p - o.col_min_];
            acc = acc + a * b;
        }
        cols.push_back(std::move(acc));
    }
    return make_local(std::move(cols), mn, bd);
}

LocalSeries LocalSeries::scaled(const Q& c) const {
    std::vector<LaurentTail> cols;
    for (const LaurentTail& t : cols_)
        cols.push_back(t.scaled(c));
    return make_local(std::move(cols), col_min_, col_bound_);
}

LocalSeries LocalSeries::shifted(int n) const {
    return make_local(cols_, col_min_ + n, col_bound_ + n);
}

LocalSeries LocalSeries::inverse() const {
    const int o = col_order();
    if (o >= col_bound_)
        throw DomainError("LocalSeries: cannot invert zero");
    // X = u^o * Y with invertible leading column; invert Y column by column.
    const int n = col_bound_ - o; // known columns of Y
    std::vector<LaurentTail> y(cols_.begin() + (o - col_min_), cols_.end());
    std::vector<LaurentTail> r(n, LaurentTail(0));
    const LaurentTail c0inv = y[0].inverse();
    r[0] = c0inv;
    for (int p = 1; p < n; ++p) {
        LaurentTail acc(kExactPrec);
        for (int i = 1; i <= p; ++i)
            acc = acc + y[i] * r[p - i];
        r[p] = -(c0inv * acc);
    }
    return make_local(std::move(r), -o, n - o);
}

LocalSeries LocalSeries::pow(int e) const {
    if (e < 1)
        throw DomainError("LocalSeries::pow: exponent must be >= 1");
    LocalSeries acc = *this;
    for (int i = 1; i < e; ++i)
        acc = acc * (*this);
    return acc;
}

// ------------------------------------------------------------------ H2Class

bool H1Class::is_zero() const {
    for (const auto& [p, t] : parts)
        if (!t.is_zero())
            return false;
    return true;
}

Q H2Class::get(int a, int b) const {
    const auto it = coeff.find({a, b});
    return it == coeff.end() ? Q(0) : it->second;
}

void H2Class::add(int a, int b, const Q& v) {
    if (v == 0)
        return;
    auto [it, fresh] = coeff.emplace(std::make_pair(a, b), v);
    if (!fresh) {
        it->second += v;
        if (it->second == 0)
            coeff.erase(it);
    }
}

bool H2Class::is_zero() const { return coeff.empty(); }

H2Class H2Class::operator+(const H2Class& o) const {
    H2Class r = *this;
    for (const auto& [k, v] : o.coeff)
        r.add(k.first, k.second, v);
    return r;
}

H2Class H2Class::operator-(const H2Class& o) const { return *this + o.scaled(Q(-1)); }

H2Class H2Class::scaled(const Q& c) const {
    H2Class r;
    if (c == 0)
        return r;
    for (const auto& [k, v] : coeff)
        r.coeff[k] = c * v;
    return r;
}

bool H2Class::operator==(const H2Class& o) const { return coeff == o.coeff; }

// ------------------------------------------------------------------- Window

namespace {

// Bezout pair: a*lambda + b*mu = 1 for coprime (lambda, mu).
std::pair<i64, i64> bezout(i64 lambda, i64 mu) {
    i64 r0 = lambda, r1 = mu, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const i64 q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
        std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
    }
    if (r0 < 0) {
        r0 = -r0;
        s0 = -s0;
        t0 = -t0;
    }
    if (r0 != 1)
        throw DomainError("bezout: inputs are not coprime");
    return {s0, t0};
}

} // namespace

Window::Window(const Curve& c, std::vector<Direction> directions, int pole_cap, int prec)
    : dirs_(std::move(directions)),
      pole_cap_(pole_cap),
      prec_(prec),
      internal_prec_(prec + 2 * pole_cap + 4),
      fg_(c, prec + 2 * pole_cap + 4) {
    if (dirs_.size() < 2)
        throw DomainError("Window: need at least two directions");
    if (pole_cap_ < 1)
        throw DomainError("Window: pole cap must be >= 1");
    if (prec_ < 2 * pole_cap_ + 2)
        throw DomainError("Window: precision too small for the pole cap");
    for (const Direction& d : dirs_)
        if (!(normalize_direction(d.lambda, d.mu) == d))
            throw DomainError("Window: directions must be normalized");
    for (std::size_t i = 0; i < dirs_.size(); ++i)
        for (std::size_t j = i + 1; j < dirs_.size(); ++j)
            if (dirs_[i] == dirs_[j])
                throw DomainError("Window: parallel directions");

    const int P = internal_prec_;
    const BiSeries uvar = BiSeries::var(0, P);
    const BiSeries vvar = BiSeries::var(1, P);
    data_.resize(dirs_.size());
    for (std::size_t i = 0; i < dirs_.size(); ++i) {
        DirData& d = data_[i];
        d.dir = dirs_[i];
        const auto [a, b] = bezout(d.dir.lambda, d.dir.mu);
        d.comp = Direction{-b, a}; // det(dir, comp) = +1
        d.u = fg_.coord(d.dir, 1);
        d.v = fg_.coord(d.comp, 1);

        // Invert the coordinate map by fixed-point iteration on the linear
        // part; det = +1 keeps everything integral.
        const BiSeries hu = d.u - uvar.scaled(q_of(d.dir.lambda)) - vvar.scaled(q_of(d.dir.mu));
        const BiSeries hv = d.v - uvar.scaled(q_of(d.comp.lambda)) - vvar.scaled(q_of(d.comp.mu));
        // (t1, t2) = M^{-1} ((u,v) - h(t1, t2)), M rows (lambda,mu),(lambda_c,mu_c).
        const i64 m00 = d.comp.mu, m01 = -d.dir.mu;
        const i64 m10 = -d.comp.lambda, m11 = d.dir.lambda;
        BiSeries p1 = uvar.scaled(q_of(m00)) + vvar.scaled(q_of(m01));
        BiSeries p2 = uvar.scaled(q_of(m10)) + vvar.scaled(q_of(m11));
        for (int it = 0; it < P; ++it) {
            const BiSeries eu = uvar - hu.compose(p1, p2);
            const BiSeries ev = vvar - hv.compose(p1, p2);
            BiSeries n1 = eu.scaled(q_of(m00)) + ev.scaled(q_of(m01));
            BiSeries n2 = eu.scaled(q_of(m10)) + ev.scaled(q_of(m11));
            if (n1 == p1 && n2 == p2) {
                p1 = n1;
                p2 = n2;
                break;
            }
            p1 = n1;
            p2 = n2;
        }
        d.psi1 = p1;
        d.psi2 = p2;
        if (!(d.u.compose(p1, p2) == uvar) || !(d.v.compose(p1, p2) == vvar))
            throw DomainError("Window: coordinate inversion failed");
        d.jac = d.psi1.d1() * d.psi2.d2() - d.psi1.d2() * d.psi2.d1();

        for (std::size_t s = 0; s < dirs_.size(); ++s) {
            if (s == i)
                continue;
            const BiSeries ts = fg_.coord(dirs_[s], 1).compose(p1, p2);
            d.inv_coord.emplace(static_cast<int>(s), LocalSeries::from_bi(ts).inverse());
        }
    }
}

int Window::index_of(const Direction& d) const {
    for (std::size_t i = 0; i < dirs_.size(); ++i)
        if (dirs_[i] == d)
            return static_cast<int>(i);
    return -1;
}

const LocalSeries& Window::inverse_coord_local(int di, int s) const {
    const auto it = data_[di].inv_coord.find(s);
    if (it == data_[di].inv_coord.end())
        throw DomainError("Window: no inverse coordinate for this direction pair");
    return it->second;
}

BiSeries Window::hat_unit(int di, i64 j) const {
    // (j * f / t) evaluated at the coordinate of the direction.
    const UniSeries& lg = fg_.log();
    UniSeries g(lg.precision() - 1);
    for (int k = 1; k < lg.precision(); ++k)
        g.set_coeff(k - 1, q_of(j) * lg.coeff(k));
    return compose_uni(g, coord_series(di));
}

const BiSeries& Window::residue_kernel(int di, int a, int b) const {
    const std::lock_guard<std::mutex> lock(cache_mutex_);
    auto& cache = data_[di].kernel_cache;
    const auto key = std::make_pair(a, b);
    const auto it = cache.find(key);
    if (it != cache.end())
        return it->second;
    BiSeries g = data_[di].jac;
    for (int i = 0; i < a - 1; ++i)
        g = g * data_[di].psi1;
    for (int i = 0; i < b - 1; ++i)
        g = g * data_[di].psi2;
    return cache.emplace(key, std::move(g)).first->second;
}

// ------------------------------------------------------------- constructors

KLocal klocal(const Window& w, BiSeries num, std::vector<int> poles) {
    if (poles.size() != static_cast<std::size_t>(w.direction_count()))
        throw DomainError("klocal: one pole exponent per window direction");
    for (int e : poles)
        if (e < 0 || e > w.pole_cap())
            throw DomainError("klocal: pole exponent outside [0, pole cap]");
    return KLocal{std::move(num), std::move(poles)};
}

KLocal klocal_one(const Window& w) {
    return KLocal{BiSeries::constant(Q(1), w.internal_precision()),
                  std::vector<int>(w.direction_count(), 0)};
}

KLocal klocal_monomial(const Window& w, int e1, int e2, std::vector<int> poles) {
    BiSeries num(w.internal_precision());
    num.set_coeff(e1, e2, Q(1));
    return klocal(w, std::move(num), std::move(poles));
}

KLocal klocal_mul(const Window& w, const KLocal& a, const KLocal& b) {
    std::vector<int> poles(a.poles.size());
    for (std::size_t i = 0; i < poles.size(); ++i)
        poles[i] = a.poles[i] + b.poles[i];
    return KLocal{a.num * b.num, std::move(poles)};
}

bool klocal_equal(const Window& w, const KLocal& a, const KLocal& b) {
    BiSeries lhs = a.num, rhs = b.num;
    for (int s = 0; s < w.direction_count(); ++s) {
        const BiSeries& us = w.coord_series(s);
        for (int i = 0; i < b.poles[s]; ++i)
            lhs = lhs * us;
        for (int i = 0; i < a.poles[s]; ++i)
            rhs = rhs * us;
    }
    return lhs == rhs;
}

// ---------------------------------------------------------------- operations

LocalSeries expand_along(const Window& w, const KLocal& f, int di) {
    LocalSeries L = LocalSeries::from_bi(f.num.compose(w.psi1(di), w.psi2(di)));
    for (int s = 0; s < w.direction_count(); ++s) {
        if (s == di)
            continue;
        for (int e = 0; e < f.poles[s]; ++e)
            L = L * w.inverse_coord_local(di, s);
    }
    if (f.poles[di] != 0)
        L = L.shifted(-f.poles[di]);
    return L;
}

namespace {

// Negative-column extraction; cap < 0 disables the pole-order check.
H1Class extract_principal(const LocalSeries& L, int di, int cap) {
    if (L.col_bound() < 0)
        throw DomainError("principal part: precision insufficient for the principal columns");
    H1Class x;
    x.dir = di;
    for (int p = L.col_min(); p < 0; ++p) {
        const LaurentTail& t = L.column(p);
        if (t.precision() < 0)
            throw DomainError("principal part: singular coefficients outside precision");
        if (t.is_zero())
            continue;
        if (cap >= 0 && -p > cap)
            throw DomainError("principal part: pole order exceeds the cap");
        x.parts[-p] = t;
    }
    return x;
}

} // namespace

H1Class principal_part(const Window& w, const KLocal& f, int di) {
    return extract_principal(expand_along(w, f, di), di, w.pole_cap());
}

std::vector<H1Class> d0(const Window& w, const KLocal& f) {
    std::vector<H1Class> out;
    for (int di = 0; di < w.direction_count(); ++di)
        out.push_back(principal_part(w, f, di));
    return out;
}

H2Class h2_reduce(const Window& w, int di, int p, int q, const Q& c) {
    H2Class out;
    if (c == 0 || p < 1 || q < 1)
        return out;
    for (int a = 1; a <= p + q - 1; ++a)
        for (int b = 1; a + b <= p + q; ++b) {
            const BiSeries& g = w.residue_kernel(di, a, b);
            if ((p - 1) + (q - 1) >= g.precision())
                throw DomainError("h2_reduce: precision insufficient for the requested coefficient");
            out.add(a, b, c * g.coeff(p - 1, q - 1));
        }
    return out;
}

H2Class d1_single(const Window& w, const H1Class& x) {
    H2Class out;
    for (const auto& [p, tail] : x.parts) {
        if (tail.precision() < 0)
            throw DomainError("d1: class coefficients outside precision");
        for (const auto& [e, v] : tail.terms())
            if (e < 0)
                out = out + h2_reduce(w, x.dir, p, -e, v);
    }
    return out;
}

H2Class d1(const Window& w, const std::vector<H1Class>& classes) {
    H2Class out;
    for (const H1Class& x : classes)
        if (!x.parts.empty())
            out = out + d1_single(w, x);
    return out;
}

namespace {

// A principal-part class as a local expansion: columns [-cap, 0), everything
// else modded out.
LocalSeries class_as_local(const Window& w, const H1Class& x) {
    const int cap = w.pole_cap();
    int lowest = -cap;
    for (const auto& [p, t] : x.parts)
        lowest = std::min(lowest, -p);
    std::vector<LaurentTail> cols(-lowest, LaurentTail(kExactPrec));
    for (const auto& [p, t] : x.parts)
        cols[-p - lowest] = t;
    return make_local(std::move(cols), lowest, 0);
}

} // namespace

H1Class act_c_with(const Window& w, const H1Class& x, const BiSeries& multiplier) {
    if (x.parts.empty())
        return x;
    const LocalSeries m =
        LocalSeries::from_bi(multiplier.compose(w.psi1(x.dir), w.psi2(x.dir)));
    const LocalSeries prod = m * class_as_local(w, x);
    return extract_principal(prod, x.dir, w.pole_cap());
}

H1Class act_c(const Window& w, const H1Class& x, i64 j) {
    if (x.parts.empty())
        return x;
    return act_c_with(w, x, w.formal_group().log_coord(w.directions()[x.dir], j));
}

H2Class act_x_with(const H2Class& y, const BiSeries& multiplier) {
    H2Class out;
    for (const auto& [key, v] : y.coeff) {
        const auto& [ap, bp] = key;
        if (ap + bp - 2 >= multiplier.precision())
            throw DomainError("act_x: multiplier precision too small");
        for (int a = 1; a <= ap; ++a)
            for (int b = 1; b <= bp; ++b)
                out.add(a, b, v * multiplier.coeff(ap - a, bp - b));
    }
    return out;
}

H2Class act_x(const Window& w, const H2Class& y, const Direction& d, i64 n) {
    return act_x_with(y, w.formal_group().log_coord(d, n));
}

namespace {

H1Class random_h1(const Window& w, int di, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-3, 3);
    std::uniform_int_distribution<int> den(1, 2);
    H1Class x;
    x.dir = di;
    for (int p = 1; p <= w.pole_cap(); ++p) {
        LaurentTail t(kExactPrec);
        for (int e = -w.pole_cap(); e <= 1; ++e)
            t.set_coeff(e, q_of(num(rng), den(rng)));
        if (!t.is_zero())
            x.parts[p] = t;
    }
    return x;
}

} // namespace

bool check_equivariance_with(const Window& w, const SubgroupProfile& p, const Direction& d,
                             i64 r, i64 s, int samples, unsigned seed) {
    const int di = w.index_of(d);
    if (di < 0 || w.index_of(p.A) < 0 || w.index_of(p.B) < 0)
        throw DomainError("check_equivariance: direction not in the window");
    const i64 nd = n_index(p.subgroup, d);
    const FormalGroup& fg = w.formal_group();
    const BiSeries hat_d = fg.log_coord(d, nd);
    const BiSeries hat_a = fg.log_coord(p.A, p.nA);
    const BiSeries hat_b = fg.log_coord(p.B, p.nB);

    std::mt19937 rng(seed);
    for (int k = 0; k < samples; ++k) {
        const H1Class x = random_h1(w, di, rng);
        const H2Class lhs = d1_single(w, act_c_with(w, x, hat_d));
        const H2Class y = d1_single(w, x);
        const H2Class rhs =
            act_x_with(y, hat_a).scaled(q_of(r)) + act_x_with(y, hat_b).scaled(q_of(s));
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

bool check_equivariance(const Window& w, const SubgroupProfile& p, const Direction& d,
                        int samples, unsigned seed) {
    const auto [r, s] = solve_character_eq(p, d);
    return check_equivariance_with(w, p, d, r, s, samples, seed);
}

// ------------------------------------------------------------- twisted maps

namespace {

// hat t_{d,1}^{-e} as a localized element: unit^{-e} over u_d^e.
KLocal inv_hat_klocal(const Window& w, int di, int e) {
    std::vector<int> poles(w.direction_count(), 0);
    poles[di] = e;
    BiSeries num = BiSeries::constant(Q(1), w.internal_precision());
    if (e > 0) {
        const BiSeries unit_inv = w.hat_unit(di, 1).unit_inverse();
        for (int i = 0; i < e; ++i)
            num = num * unit_inv;
    }
    return KLocal{std::move(num), std::move(poles)};
}

} // namespace

namespace {

void validate_exponents(const Window& w, const std::vector<int>& exps, const char* who) {
    if (exps.size() != static_cast<std::size_t>(w.direction_count()))
        throw DomainError(std::string(who) + ": one exponent per window direction");
    for (int e : exps)
        if (e < 0 || e > w.pole_cap())
            throw DomainError(std::string(who) + ": exponent outside [0, pole cap]");
}

} // namespace

std::vector<H1Class> twisted_d0(const Window& w, const std::vector<int>& exps,
                                const KLocal& f) {
    validate_exponents(w, exps, "twisted_d0");
    std::vector<H1Class> out;
    for (int di = 0; di < w.direction_count(); ++di) {
        KLocal g = f;
        if (exps[di] > 0)
            g = klocal_mul(w, f, inv_hat_klocal(w, di, exps[di]));
        out.push_back(principal_part(w, g, di));
    }
    return out;
}

H2Class twisted_d1(const Window& w, const std::vector<int>& exps,
                   const std::vector<H1Class>& classes) {
    validate_exponents(w, exps, "twisted_d1");
    H2Class out;
    for (const H1Class& x : classes) {
        if (x.parts.empty())
            continue;
        KLocal m = klocal_one(w);
        for (int s = 0; s < w.direction_count(); ++s)
            if (s != x.dir && exps[s] > 0)
                m = klocal_mul(w, m, inv_hat_klocal(w, s, exps[s]));
        const LocalSeries prod = expand_along(w, m, x.dir) * class_as_local(w, x);
        const H1Class ext = extract_principal(prod, x.dir, -1);
        out = out + d1_single(w, ext);
    }
    return out;
}

// ---------------------------------------------------------------- exactness

bool ExactnessReport::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass)
            return false;
    return true;
}

ExactnessReport exactness_report(const Window& w) {
    const int k = w.pole_cap();
    const int N = w.precision();
    const int m = w.direction_count();
    const int emax = N - 2 * k;

    ExactnessReport rep;
    rep.dirs = w.directions();
    rep.pole_cap = k;
    rep.prec = N;

    // Coordinate bookkeeping for the H1 window: (direction, pole order p,
    // Laurent exponent e in the complement coordinate).
    struct H1Coord {
        int di, p, e;
    };
    std::vector<H1Coord> h1;
    for (int di = 0; di < m; ++di)
        for (int p = 1; p <= k; ++p)
            for (int e = -k; e <= emax; ++e)
                h1.push_back({di, p, e});
    auto h1_index = [&](int di, int p, int e) -> std::size_t {
        return static_cast<std::size_t>(di) * (k * (emax + k + 1)) +
               static_cast<std::size_t>(p - 1) * (emax + k + 1) +
               static_cast<std::size_t>(e + k);
    };

    std::vector<std::pair<int, int>> h2;
    for (int a = 1; a <= 2 * k; ++a)
        for (int b = 1; a + b <= 2 * k; ++b)
            h2.push_back({a, b});

    std::vector<std::pair<int, int>> monos;
    for (int deg = 0; deg <= N; ++deg)
        for (int e1 = deg; e1 >= 0; --e1)
            monos.push_back({e1, deg - e1});

    // Pole patterns of total weight <= pole cap: exactly the denominators
    // whose principal parts stay inside the faithful window (singular weight
    // p + v-pole never exceeds the total weight).
    std::vector<std::vector<int>> patterns;
    {
        std::vector<int> cur(m, 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == m) {
                patterns.push_back(cur);
                return;
            }
            for (int e = 0; e <= left; ++e) {
                cur[pos] = e;
                self(self, pos + 1, left - e);
            }
            cur[pos] = 0;
        };
        rec(rec, 0, k);
    }

    rep.domain_dim = monos.size() * patterns.size();
    rep.h1_dim = h1.size();
    rep.h2_dim = h2.size();

    bool window_covered = true;

    // d0 matrix: per direction, one expansion base per pole pattern and
    // numerators from cached coordinate powers.
    QMatrix D0(h1.size(), rep.domain_dim);
    for (int di = 0; di < m; ++di) {
        std::vector<BiSeries> pow1 = {BiSeries::constant(Q(1), w.internal_precision())};
        std::vector<BiSeries> pow2 = pow1;
        auto p1 = [&](int e) -> const BiSeries& {
            while (static_cast<int>(pow1.size()) <= e)
                pow1.push_back(pow1.back() * w.psi1(di));
            return pow1[e];
        };
        auto p2 = [&](int e) -> const BiSeries& {
            while (static_cast<int>(pow2.size()) <= e)
                pow2.push_back(pow2.back() * w.psi2(di));
            return pow2[e];
        };

        for (std::size_t pi = 0; pi < patterns.size(); ++pi) {
            const std::vector<int>& pat = patterns[pi];
            LocalSeries base = LocalSeries::from_bi(
                BiSeries::constant(Q(1), w.internal_precision()));
            for (int s = 0; s < m; ++s)
                if (s != di && pat[s] > 0)
                    base = base * w.inverse_coord_local(di, s).pow(pat[s]);
            if (pat[di] > 0)
                base = base.shifted(-pat[di]);

            for (std::size_t mi = 0; mi < monos.size(); ++mi) {
                const std::size_t col = pi * monos.size() + mi;
                const LocalSeries num =
                    LocalSeries::from_bi(p1(monos[mi].first) * p2(monos[mi].second));
                const LocalSeries L = num * base;
                for (int p = 1; p <= k; ++p) {
                    if (-p < L.col_min() || -p >= L.col_bound()) {
                        if (-p >= L.col_bound())
                            window_covered = false;
                        continue;
                    }
                    const LaurentTail& t = L.column(-p);
                    if (t.precision() <= emax)
                        window_covered = false;
                    if (!t.is_zero() && t.order() < -k)
                        window_covered = false;
                    for (int e = -k; e <= emax; ++e)
                        D0.at(h1_index(di, p, e), col) = t.coeff(e);
                }
            }
        }
    }

    // d1 matrix from the residue transform of each window coordinate class.
    QMatrix D1(h2.size(), h1.size());
    for (std::size_t col = 0; col < h1.size(); ++col) {
        const auto [di, p, e] = h1[col];
        if (e >= 0)
            continue;
        const H2Class cls = h2_reduce(w, di, p, -e, Q(1));
        for (std::size_t row = 0; row < h2.size(); ++row)
            D1.at(row, col) = cls.get(h2[row].first, h2[row].second);
    }

    rep.rank_d0 = rank(D0);
    rep.rank_d1 = rank(D1);

    rep.checks.push_back({"d1_after_d0_is_zero", (D1 * D0).is_zero()});

    bool surj = true;
    {
        QMatrix targets(h2.size(), 0);
        std::vector<std::size_t> wanted;
        for (std::size_t row = 0; row < h2.size(); ++row)
            if (h2[row].first <= k - 1 && h2[row].second <= k - 1)
                wanted.push_back(row);
        QMatrix units(h2.size(), wanted.size());
        for (std::size_t i = 0; i < wanted.size(); ++i)
            units.at(wanted[i], i) = Q(1);
        surj = columns_in_span(D1, units);
    }
    rep.checks.push_back({"d1_hits_koszul_window", surj});

    // Faithful subspace: singular weight within the cap, regular coefficients
    // within the truncation-honest degree range.
    std::vector<std::size_t> faithful;
    for (std::size_t i = 0; i < h1.size(); ++i) {
        const auto [di, p, e] = h1[i];
        if (p + std::max(0, -e) <= k)
            faithful.push_back(i);
    }
    QMatrix D1W(h2.size(), faithful.size());
    for (std::size_t j = 0; j < faithful.size(); ++j)
        for (std::size_t row = 0; row < h2.size(); ++row)
            D1W.at(row, j) = D1.at(row, faithful[j]);
    const QMatrix kerW = nullspace(D1W);
    rep.ker_d1_faithful = kerW.cols();
    QMatrix ker_full(h1.size(), kerW.cols());
    for (std::size_t j = 0; j < faithful.size(); ++j)
        for (std::size_t c = 0; c < kerW.cols(); ++c)
            ker_full.at(faithful[j], c) = kerW.at(j, c);
    rep.checks.push_back({"faithful_kernel_inside_image_of_d0", columns_in_span(D0, ker_full)});
    rep.checks.push_back({"faithful_window_covered", window_covered});

    return rep;
}

} // namespace torell
