#include "torell/formal_group.hpp"

namespace torell {

Curve curve_new(const Q& a1, const Q& a2, const Q& a3, const Q& a4, const Q& a6) {
    const Q b2 = a1 * a1 + 4 * a2;
    const Q b4 = 2 * a4 + a1 * a3;
    const Q b6 = a3 * a3 + 4 * a6;
    const Q b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    const Q disc = -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
    if (disc == 0)
        throw DomainError("curve_new: singular curve (discriminant 0)");
    return Curve{a1, a2, a3, a4, a6, disc};
}

namespace {

// w(t) with w = t^3 + a1 t w + a2 t^2 w + a3 w^2 + a4 t w^2 + a6 w^3, the
// local expansion of -1/y in the parameter t = -x/y.
UniSeries w_series(const Curve& c, int prec) {
    const UniSeries t = UniSeries::var(prec);
    const UniSeries t2 = t * t;
    const UniSeries t3 = (t2 * t).truncated(prec);
    UniSeries w = t3;
    for (int it = 0; it < prec; ++it) {
        const UniSeries w2 = (w * w).truncated(prec);
        const UniSeries w3 = (w2 * w).truncated(prec);
        UniSeries next = t3 + (t * w).truncated(prec).scaled(c.a1) +
                         (t2 * w).truncated(prec).scaled(c.a2) + w2.scaled(c.a3) +
                         (t * w2).truncated(prec).scaled(c.a4) + w3.scaled(c.a6);
        next = next.truncated(prec);
        if (next == w) {
            w = next;
            break;
        }
        w = next;
    }
    return w;
}

} // namespace

FormalGroup::FormalGroup(const Curve& c, int prec) : curve_(c), prec_(prec) {
    if (prec < 2)
        throw DomainError("FormalGroup: precision must be at least 2");
    const int wp = prec + 2; // headroom for the divided difference
    const UniSeries w = w_series(c, wp);

    // Slope of the chord through (t1, w(t1)) and (t2, w(t2)):
    // lambda = sum_n w_n * (t1^{n-1} + t1^{n-2} t2 + ... + t2^{n-1}).
    BiSeries lambda(prec);
    for (int n = 0; n < wp; ++n) {
        const Q wn = w.coeff(n);
        if (wn == 0)
            continue;
        for (int i = 0; i + 1 <= n; ++i)
            if (i + (n - 1 - i) < prec)
                lambda.set_coeff(i, n - 1 - i, lambda.coeff(i, n - 1 - i) + wn);
    }
    const BiSeries w1 = compose_uni(w.truncated(prec), BiSeries::var(0, prec));
    const BiSeries t1 = BiSeries::var(0, prec);
    const BiSeries t2 = BiSeries::var(1, prec);
    const BiSeries nu = w1 - (lambda * t1).truncated(prec);

    // Third root of the cubic cut out by the chord w = lambda t + nu.
    const BiSeries lam2 = (lambda * lambda).truncated(prec);
    const BiSeries denom = BiSeries::constant(Q(1), prec) + lambda.scaled(c.a2) +
                           lam2.scaled(c.a4) + (lam2 * lambda).truncated(prec).scaled(c.a6);
    const BiSeries numer = lambda.scaled(c.a1) + (lambda * nu).truncated(prec).scaled(2 * c.a4) +
                           nu.scaled(c.a2) + lam2.scaled(c.a3) +
                           (lam2 * nu).truncated(prec).scaled(3 * c.a6);
    const BiSeries t3 = -t1 - t2 - (numer * denom.unit_inverse()).truncated(prec);

    // Formal inverse: the t-parameter of -(x, y) is -t / (1 - a1 t - a3 w).
    {
        const UniSeries t = UniSeries::var(prec);
        UniSeries den = UniSeries::constant(Q(1), prec) - t.scaled(c.a1) -
                        w.truncated(prec).scaled(c.a3);
        inverse_ = (-t * den.unit_inverse()).truncated(prec);
    }

    law_ = compose_uni(inverse_, t3);
    log_ = fgl_logarithm(law_);
}

UniSeries fgl_logarithm(const BiSeries& law) {
    const int prec = law.precision();
    const UniSeries f2 = law.d2().at_t2_zero().truncated(prec - 1);
    return f2.unit_inverse().integral().truncated(prec);
}

const UniSeries& FormalGroup::n_series(i64 n) const {
    const std::lock_guard<std::mutex> lock(cache_mutex_);
    return n_series_locked(n);
}

const UniSeries& FormalGroup::n_series_locked(i64 n) const {
    const auto it = n_cache_.find(n);
    if (it != n_cache_.end())
        return it->second;
    UniSeries r(prec_);
    if (n == 0) {
        // zero series
    } else if (n == 1) {
        r = UniSeries::var(prec_);
    } else if (n > 1) {
        // The law composed with (prev(t), t), both in the first variable.
        const UniSeries& prev = n_series_locked(n - 1);
        r = law_.compose(BiSeries::from_uni(prev, 0), BiSeries::var(0, prec_)).at_t2_zero();
    } else {
        r = inverse_.compose(n_series_locked(-n));
    }
    return n_cache_.emplace(n, std::move(r)).first->second;
}

BiSeries FormalGroup::coord(const Direction& d, i64 j) const {
    const UniSeries& m1 = n_series(j * d.lambda);
    const UniSeries& m2 = n_series(j * d.mu);
    return law_.compose(BiSeries::from_uni(m1, 0), BiSeries::from_uni(m2, 1));
}

BiSeries FormalGroup::log_coord(const Direction& d, i64 j) const {
    return compose_uni(log_, coord(d, j));
}

bool check_log_coord_relation(const FormalGroup& fg, const SubgroupProfile& p,
                              const Direction& d) {
    return check_log_coord_relation_with_log(fg, fg.log(), p, d);
}

bool check_log_coord_relation_with_log(const FormalGroup& fg, const UniSeries& log,
                                       const SubgroupProfile& p, const Direction& d) {
    const i64 nd = n_index(p.subgroup, d);
    const auto [r, s] = solve_character_eq(p, d);
    const BiSeries lhs = compose_uni(log, fg.coord(d, nd));
    const BiSeries rhs = compose_uni(log, fg.coord(p.A, p.nA)).scaled(q_of(r)) +
                         compose_uni(log, fg.coord(p.B, p.nB)).scaled(q_of(s));
    return lhs == rhs;
}

} // namespace torell
