#include "torell/series.hpp"

#include <algorithm>

namespace torell {

// ---------------------------------------------------------------- UniSeries

UniSeries UniSeries::constant(const Q& c, int prec) {
    UniSeries s(prec);
    s.set_coeff(0, c);
    return s;
}

UniSeries UniSeries::var(int prec) {
    UniSeries s(prec);
    s.set_coeff(1, Q(1));
    return s;
}

Q UniSeries::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size()))
        return Q(0);
    return c_[i];
}

void UniSeries::set_coeff(int i, const Q& v) {
    if (i < 0)
        throw DomainError("UniSeries: negative exponent");
    if (i >= prec_)
        return;
    if (i >= static_cast<int>(c_.size())) {
        if (v == 0)
            return;
        c_.resize(i + 1, Q(0));
    }
    c_[i] = v;
}

int UniSeries::order() const {
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        if (c_[i] != 0)
            return i;
    return prec_;
}

std::size_t UniSeries::term_count() const {
    std::size_t n = 0;
    for (const Q& q : c_)
        if (q != 0)
            ++n;
    return n;
}

UniSeries UniSeries::truncated(int prec) const {
    UniSeries r(std::min(prec, prec_));
    for (int i = 0; i < std::min<int>(c_.size(), r.prec_); ++i)
        r.set_coeff(i, c_[i]);
    return r;
}

UniSeries UniSeries::operator+(const UniSeries& o) const {
    UniSeries r(std::min(prec_, o.prec_));
    for (int i = 0; i < r.prec_; ++i) {
        const Q v = coeff(i) + o.coeff(i);
        if (v != 0)
            r.set_coeff(i, v);
        if (i >= static_cast<int>(c_.size()) && i >= static_cast<int>(o.c_.size()))
            break;
    }
    return r;
}

UniSeries UniSeries::operator-(const UniSeries& o) const { return *this + (-o); }

UniSeries UniSeries::operator-() const {
    UniSeries r(prec_);
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        r.set_coeff(i, -c_[i]);
    return r;
}

UniSeries UniSeries::operator*(const UniSeries& o) const {
    const int prec = clamp_prec(std::min<long>(
        static_cast<long>(prec_) + o.order(), static_cast<long>(o.prec_) + order()));
    UniSeries r(prec);
    std::vector<Q> acc(std::min<int>(prec, c_.size() + o.c_.size()), Q(0));
    for (int i = 0; i < static_cast<int>(c_.size()); ++i) {
        if (c_[i] == 0)
            continue;
        for (int j = 0; j < static_cast<int>(o.c_.size()) && i + j < static_cast<int>(acc.size()); ++j)
            if (o.c_[j] != 0)
                acc[i + j] += c_[i] * o.c_[j];
    }
    for (int n = 0; n < static_cast<int>(acc.size()); ++n)
        r.set_coeff(n, acc[n]);
    return r;
}

UniSeries UniSeries::scaled(const Q& c) const {
    UniSeries r(prec_);
    if (c == 0)
        return r;
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        if (c_[i] != 0)
            r.set_coeff(i, c * c_[i]);
    return r;
}

UniSeries UniSeries::shifted(int n) const {
    if (n < 0)
        throw DomainError("UniSeries: negative shift");
    UniSeries r(clamp_prec(static_cast<long>(prec_) + n));
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        if (c_[i] != 0)
            r.set_coeff(i + n, c_[i]);
    return r;
}

bool UniSeries::operator==(const UniSeries& o) const {
    const int p = std::min(prec_, o.prec_);
    for (int i = 0; i < p; ++i)
        if (coeff(i) != o.coeff(i))
            return false;
    return true;
}

UniSeries UniSeries::compose(const UniSeries& inner) const {
    if (!inner.is_zero() && inner.order() < 1)
        throw DomainError("UniSeries::compose: inner series must vanish at 0");
    const int prec = std::min(prec_, inner.prec_);
    // Horner from the top coefficient down.
    const UniSeries in = inner.truncated(prec);
    UniSeries r(prec);
    for (int i = static_cast<int>(c_.size()) - 1; i >= 0; --i) {
        r = (r * in).truncated(prec);
        const Q a = c_[i];
        if (a != 0)
            r.set_coeff(0, r.coeff(0) + a);
    }
    return r.truncated(prec);
}

UniSeries UniSeries::derivative() const {
    UniSeries r(std::max(0, prec_ == kExactPrec ? kExactPrec : prec_ - 1));
    for (int i = 1; i < static_cast<int>(c_.size()); ++i)
        r.set_coeff(i - 1, Q(i) * c_[i]);
    return r;
}

UniSeries UniSeries::integral() const {
    UniSeries r(clamp_prec(static_cast<long>(prec_) + 1));
    for (int i = 0; i < static_cast<int>(c_.size()); ++i)
        if (c_[i] != 0)
            r.set_coeff(i + 1, c_[i] / Q(i + 1));
    return r;
}

UniSeries UniSeries::unit_inverse() const {
    if (coeff(0) == 0)
        throw DomainError("UniSeries: not a unit");
    if (prec_ > (1 << 16))
        throw DomainError("UniSeries: truncate before inverting an exact series");
    UniSeries r(prec_);
    const Q u = 1 / coeff(0);
    r.set_coeff(0, u);
    for (int n = 1; n < prec_; ++n) {
        Q s(0);
        for (int i = 1; i <= n && i < static_cast<int>(c_.size()); ++i)
            s += c_[i] * r.coeff(n - i);
        if (s != 0)
            r.set_coeff(n, -u * s);
    }
    return r;
}

UniSeries UniSeries::reversion() const {
    if (order() != 1)
        throw DomainError("UniSeries: reversion needs order exactly 1");
    UniSeries g(prec_);
    g.set_coeff(1, 1 / coeff(1));
    for (int n = 2; n < prec_; ++n) {
        // Fix coefficient n so that this(g(t)) = t through degree n.
        const UniSeries comp = compose(g.truncated(n + 1));
        const Q err = comp.coeff(n);
        g.set_coeff(n, -err / coeff(1));
    }
    return g;
}

// --------------------------------------------------------------- LaurentTail

void LaurentTail::drop_zeros_and_tail() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0 || it->first >= prec_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

LaurentTail LaurentTail::from_series(const UniSeries& s) {
    LaurentTail r(s.precision());
    for (int i = 0; i < s.precision(); ++i) {
        const Q v = s.coeff(i);
        if (v != 0)
            r.terms_[i] = v;
    }
    return r;
}

LaurentTail LaurentTail::monomial(int exp, const Q& c, int prec) {
    LaurentTail r(prec);
    if (c != 0 && exp < prec)
        r.terms_[exp] = c;
    return r;
}

Q LaurentTail::coeff(int e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Q(0) : it->second;
}

void LaurentTail::set_coeff(int e, const Q& v) {
    if (e >= prec_)
        return;
    if (v == 0)
        terms_.erase(e);
    else
        terms_[e] = v;
}

int LaurentTail::order() const { return terms_.empty() ? prec_ : terms_.begin()->first; }

std::map<int, Q> LaurentTail::principal_part() const {
    std::map<int, Q> p;
    for (const auto& [e, v] : terms_)
        if (e < 0)
            p.emplace(e, v);
    return p;
}

UniSeries LaurentTail::regular_part() const {
    UniSeries r(std::max(0, prec_));
    for (const auto& [e, v] : terms_)
        if (e >= 0)
            r.set_coeff(e, v);
    return r;
}

LaurentTail LaurentTail::truncated(int prec) const {
    LaurentTail r(std::min(prec, prec_));
    for (const auto& [e, v] : terms_)
        if (e < r.prec_)
            r.terms_[e] = v;
    return r;
}

LaurentTail LaurentTail::operator+(const LaurentTail& o) const {
    LaurentTail r(std::min(prec_, o.prec_));
    for (const auto& [e, v] : terms_)
        r.terms_[e] = v;
    for (const auto& [e, v] : o.terms_) {
        auto [it, fresh] = r.terms_.emplace(e, v);
        if (!fresh)
            it->second += v;
    }
    r.drop_zeros_and_tail();
    return r;
}

LaurentTail LaurentTail::operator-(const LaurentTail& o) const { return *this + (-o); }

LaurentTail LaurentTail::operator-() const {
    LaurentTail r(prec_);
    for (const auto& [e, v] : terms_)
        r.terms_[e] = -v;
    return r;
}

LaurentTail LaurentTail::operator*(const LaurentTail& o) const {
    const int prec = clamp_prec(std::min<long>(
        static_cast<long>(prec_) + o.order(), static_cast<long>(o.prec_) + order()));
    LaurentTail r(prec);
    for (const auto& [e1, v1] : terms_)
        for (const auto& [e2, v2] : o.terms_) {
            if (e1 + e2 >= prec)
                continue;
            auto [it, fresh] = r.terms_.emplace(e1 + e2, v1 * v2);
            if (!fresh)
                it->second += v1 * v2;
        }
    r.drop_zeros_and_tail();
    return r;
}

LaurentTail LaurentTail::scaled(const Q& c) const {
    LaurentTail r(prec_);
    if (c == 0)
        return r;
    for (const auto& [e, v] : terms_)
        r.terms_[e] = c * v;
    return r;
}

LaurentTail LaurentTail::shifted(int n) const {
    LaurentTail r(clamp_prec(static_cast<long>(prec_) + n));
    for (const auto& [e, v] : terms_)
        r.terms_[e + n] = v;
    return r;
}

bool LaurentTail::operator==(const LaurentTail& o) const {
    const int p = std::min(prec_, o.prec_);
    for (const auto& [e, v] : terms_)
        if (e < p && v != o.coeff(e))
            return false;
    for (const auto& [e, v] : o.terms_)
        if (e < p && v != coeff(e))
            return false;
    return true;
}

LaurentTail LaurentTail::inverse() const {
    if (terms_.empty())
        throw DomainError("LaurentTail: cannot invert zero");
    const int o = terms_.begin()->first;
    // Normalize to a unit power series, invert, shift back.
    UniSeries unit(prec_ - o);
    for (const auto& [e, v] : terms_)
        unit.set_coeff(e - o, v);
    const UniSeries inv = unit.unit_inverse();
    LaurentTail r(inv.precision() - o);
    for (int i = 0; i < inv.precision(); ++i) {
        const Q v = inv.coeff(i);
        if (v != 0)
            r.terms_[i - o] = v;
    }
    return r;
}

LaurentTail laurent_inverse(const UniSeries& s) {
    if (s.order() != 1)
        throw DomainError("laurent_inverse: series must vanish to order exactly 1");
    return LaurentTail::from_series(s).inverse();
}

// ----------------------------------------------------------------- BiSeries

BiSeries BiSeries::constant(const Q& c, int prec) {
    BiSeries s(prec);
    s.set_coeff(0, 0, c);
    return s;
}

BiSeries BiSeries::var(int which, int prec) {
    BiSeries s(prec);
    if (which == 0)
        s.set_coeff(1, 0, Q(1));
    else
        s.set_coeff(0, 1, Q(1));
    return s;
}

BiSeries BiSeries::from_uni(const UniSeries& s, int which) {
    BiSeries r(s.precision());
    for (int i = 0; i < s.precision(); ++i) {
        const Q v = s.coeff(i);
        if (v != 0)
            r.set_coeff(which == 0 ? i : 0, which == 0 ? 0 : i, v);
    }
    return r;
}

Q BiSeries::coeff(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? Q(0) : it->second;
}

void BiSeries::set_coeff(int i, int j, const Q& v) {
    if (i < 0 || j < 0)
        throw DomainError("BiSeries: negative exponent");
    if (i + j >= prec_)
        return;
    if (v == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = v;
}

int BiSeries::order() const {
    int o = prec_;
    for (const auto& [e, v] : terms_)
        o = std::min(o, e.first + e.second);
    return o;
}

BiSeries BiSeries::truncated(int prec) const {
    BiSeries r(std::min(prec, prec_));
    for (const auto& [e, v] : terms_)
        if (e.first + e.second < r.prec_)
            r.terms_[e] = v;
    return r;
}

BiSeries BiSeries::operator+(const BiSeries& o) const {
    BiSeries r(std::min(prec_, o.prec_));
    for (const auto& [e, v] : terms_)
        if (e.first + e.second < r.prec_)
            r.terms_[e] = v;
    for (const auto& [e, v] : o.terms_) {
        if (e.first + e.second >= r.prec_)
            continue;
        auto [it, fresh] = r.terms_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0)
                r.terms_.erase(it);
        }
    }
    return r;
}

BiSeries BiSeries::operator-(const BiSeries& o) const { return *this + (-o); }

BiSeries BiSeries::operator-() const {
    BiSeries r(prec_);
    for (const auto& [e, v] : terms_)
        r.terms_[e] = -v;
    return r;
}

BiSeries BiSeries::operator*(const BiSeries& o) const {
    const int prec = clamp_prec(std::min<long>(
        static_cast<long>(prec_) + o.order(), static_cast<long>(o.prec_) + order()));
    BiSeries r(prec);
    for (const auto& [e1, v1] : terms_)
        for (const auto& [e2, v2] : o.terms_) {
            const int i = e1.first + e2.first, j = e1.second + e2.second;
            if (i + j >= prec)
                continue;
            auto [it, fresh] = r.terms_.emplace(std::make_pair(i, j), v1 * v2);
            if (!fresh)
                it->second += v1 * v2;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
    return r;
}

BiSeries BiSeries::scaled(const Q& c) const {
    BiSeries r(prec_);
    if (c == 0)
        return r;
    for (const auto& [e, v] : terms_)
        r.terms_[e] = c * v;
    return r;
}

bool BiSeries::operator==(const BiSeries& o) const {
    const int p = std::min(prec_, o.prec_);
    for (const auto& [e, v] : terms_)
        if (e.first + e.second < p && v != o.coeff(e.first, e.second))
            return false;
    for (const auto& [e, v] : o.terms_)
        if (e.first + e.second < p && v != coeff(e.first, e.second))
            return false;
    return true;
}

BiSeries BiSeries::swap_vars() const {
    BiSeries r(prec_);
    for (const auto& [e, v] : terms_)
        r.terms_[{e.second, e.first}] = v;
    return r;
}

BiSeries BiSeries::d1() const {
    BiSeries r(prec_ == kExactPrec ? kExactPrec : std::max(0, prec_ - 1));
    for (const auto& [e, v] : terms_)
        if (e.first >= 1)
            r.set_coeff(e.first - 1, e.second, Q(e.first) * v);
    return r;
}

BiSeries BiSeries::d2() const { return swap_vars().d1().swap_vars(); }

UniSeries BiSeries::at_t2_zero() const {
    UniSeries r(prec_);
    for (const auto& [e, v] : terms_)
        if (e.second == 0)
            r.set_coeff(e.first, v);
    return r;
}

BiSeries BiSeries::compose(const BiSeries& in1, const BiSeries& in2) const {
    if ((!in1.is_zero() && in1.order() < 1) || (!in2.is_zero() && in2.order() < 1))
        throw DomainError("BiSeries::compose: inner series must vanish at 0");
    const int prec = std::min({prec_, in1.prec_, in2.prec_});
    // Group terms by the t1-exponent: sum_i t1^i * row_i(t2), then Horner in
    // in1 with row polynomials evaluated at in2.
    std::map<int, std::map<int, Q>> rows;
    for (const auto& [e, v] : terms_)
        rows[e.first][e.second] = v;
    const int max_i = rows.empty() ? -1 : rows.rbegin()->first;

    // Precompute powers of in2 lazily.
    std::vector<BiSeries> pow2 = {BiSeries::constant(Q(1), prec)};
    auto in2_pow = [&](int k) -> const BiSeries& {
        while (static_cast<int>(pow2.size()) <= k)
            pow2.push_back((pow2.back() * in2).truncated(prec));
        return pow2[k];
    };

    BiSeries acc(prec);
    for (int i = max_i; i >= 0; --i) {
        acc = (acc * in1).truncated(prec);
        const auto rit = rows.find(i);
        if (rit == rows.end())
            continue;
        for (const auto& [j, v] : rit->second)
            acc = acc + in2_pow(j).scaled(v);
    }
    return acc;
}

BiSeries BiSeries::unit_inverse() const {
    if (coeff(0, 0) == 0)
        throw DomainError("BiSeries: not a unit");
    if (prec_ > (1 << 16))
        throw DomainError("BiSeries: truncate before inverting an exact series");
    const Q u = 1 / coeff(0, 0);
    // 1/s = u * 1/(1 + h), h = u*s - 1 has order >= 1.
    BiSeries h = scaled(u);
    h.set_coeff(0, 0, Q(0));
    BiSeries r = BiSeries::constant(Q(1), prec_);
    BiSeries pw = BiSeries::constant(Q(1), prec_);
    for (int k = 1; k < prec_; ++k) {
        pw = (pw * h).truncated(prec_);
        if (pw.is_zero())
            break;
        r = (k % 2 == 1) ? r - pw : r + pw;
    }
    return r.scaled(u);
}

BiSeries compose_uni(const UniSeries& outer, const BiSeries& inner) {
    if (!inner.is_zero() && inner.order() < 1)
        throw DomainError("compose_uni: inner series must vanish at 0");
    const int prec = std::min(outer.precision(), inner.precision());
    BiSeries acc(prec);
    for (int i = std::min(outer.precision(), prec) - 1; i >= 0; --i) {
        acc = (acc * inner).truncated(prec);
        const Q a = outer.coeff(i);
        if (a != 0)
            acc.set_coeff(0, 0, acc.coeff(0, 0) + a);
    }
    return acc.truncated(prec);
}

// ---------------------------------------------------------------- TriSeries

TriSeries TriSeries::from_bi(const BiSeries& s, int v1, int v2) {
    TriSeries r(s.precision());
    for (const auto& [e, v] : s.terms()) {
        std::array<int, 3> key = {0, 0, 0};
        key[v1] += e.first;
        key[v2] += e.second;
        auto [it, fresh] = r.terms_.emplace(key, v);
        if (!fresh)
            it->second += v;
    }
    return r;
}

TriSeries TriSeries::var(int which, int prec) {
    TriSeries r(prec);
    std::array<int, 3> key = {0, 0, 0};
    key[which] = 1;
    r.terms_[key] = Q(1);
    return r;
}

int TriSeries::order() const {
    int o = prec_;
    for (const auto& [e, v] : terms_)
        o = std::min(o, e[0] + e[1] + e[2]);
    return o;
}

Q TriSeries::coeff(int i, int j, int k) const {
    const auto it = terms_.find({i, j, k});
    return it == terms_.end() ? Q(0) : it->second;
}

TriSeries TriSeries::operator+(const TriSeries& o) const {
    TriSeries r(std::min(prec_, o.prec_));
    for (const auto& [e, v] : terms_)
        if (e[0] + e[1] + e[2] < r.prec_)
            r.terms_[e] = v;
    for (const auto& [e, v] : o.terms_) {
        if (e[0] + e[1] + e[2] >= r.prec_)
            continue;
        auto [it, fresh] = r.terms_.emplace(e, v);
        if (!fresh) {
            it->second += v;
            if (it->second == 0)
                r.terms_.erase(it);
        }
    }
    return r;
}

TriSeries TriSeries::operator-(const TriSeries& o) const {
    TriSeries neg(o.prec_);
    for (const auto& [e, v] : o.terms_)
        neg.terms_[e] = -v;
    return *this + neg;
}

TriSeries TriSeries::operator*(const TriSeries& o) const {
    const int prec = clamp_prec(std::min<long>(
        static_cast<long>(prec_) + o.order(), static_cast<long>(o.prec_) + order()));
    TriSeries r(prec);
    for (const auto& [e1, v1] : terms_)
        for (const auto& [e2, v2] : o.terms_) {
            const std::array<int, 3> e = {e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
            if (e[0] + e[1] + e[2] >= prec)
                continue;
            auto [it, fresh] = r.terms_.emplace(e, v1 * v2);
            if (!fresh)
                it->second += v1 * v2;
        }
    for (auto it = r.terms_.begin(); it != r.terms_.end();)
        it = (it->second == 0) ? r.terms_.erase(it) : std::next(it);
    return r;
}

bool TriSeries::operator==(const TriSeries& o) const {
    const int p = std::min(prec_, o.prec_);
    for (const auto& [e, v] : terms_)
        if (e[0] + e[1] + e[2] < p && v != o.coeff(e[0], e[1], e[2]))
            return false;
    for (const auto& [e, v] : o.terms_)
        if (e[0] + e[1] + e[2] < p && v != coeff(e[0], e[1], e[2]))
            return false;
    return true;
}

TriSeries compose_bi(const BiSeries& outer, const TriSeries& in1, const TriSeries& in2) {
    const int prec = std::min({outer.precision(), in1.precision(), in2.precision()});
    std::map<int, std::map<int, Q>> rows;
    for (const auto& [e, v] : outer.terms())
        rows[e.first][e.second] = v;
    const int max_i = rows.empty() ? -1 : rows.rbegin()->first;

    const TriSeries one = TriSeries::from_bi(BiSeries::constant(Q(1), prec), 0, 1);
    std::vector<TriSeries> pow2 = {one};
    auto in2_pow = [&](int k) -> const TriSeries& {
        while (static_cast<int>(pow2.size()) <= k)
            pow2.push_back(pow2.back() * in2);
        return pow2[k];
    };

    TriSeries acc(prec);
    for (int i = max_i; i >= 0; --i) {
        acc = acc * in1;
        const auto rit = rows.find(i);
        if (rit == rows.end())
            continue;
        for (const auto& [j, v] : rit->second)
            acc = acc + TriSeries::from_bi(BiSeries::constant(v, prec), 0, 1) * in2_pow(j);
    }
    return acc;
}

} // namespace torell
