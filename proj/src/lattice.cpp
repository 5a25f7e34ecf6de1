#include "torell/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace torell {

Direction normalize_direction(i64 a, i64 b) {
    if (a == 0 && b == 0)
        throw DomainError("normalize_direction: zero vector");
    const i64 g = std::gcd(std::abs(a), std::abs(b));
    a /= g;
    b /= g;
    if (b < 0 || (b == 0 && a < 0)) {
        a = -a;
        b = -b;
    }
    return Direction{a, b};
}

std::pair<Direction, i64> decompose_character(const Character& c) {
    if (c.is_zero())
        throw DomainError("decompose_character: zero character");
    const Direction d = normalize_direction(c.a, c.b);
    const i64 n = (d.lambda != 0) ? c.a / d.lambda : c.b / d.mu;
    return {d, n};
}

QmodZ character_value(const Direction& d, const QmodZ2& p) {
    return d.lambda * p.x + d.mu * p.y;
}

QmodZ character_value(const Character& c, const QmodZ2& p) {
    return c.a * p.x + c.b * p.y;
}

i64 direction_det(const Direction& d, const Direction& e) {
    return d.lambda * e.mu - d.mu * e.lambda;
}

std::vector<Direction> direction_grid(i64 bound) {
    std::vector<Direction> dirs;
    for (i64 s = 1; s <= bound; ++s)
        for (i64 lambda = s; lambda >= -s; --lambda) {
            const i64 mu = s - std::abs(lambda);
            if (mu == 0 && lambda != 1)
                continue;
            if (std::gcd(std::abs(lambda), mu) != 1)
                continue;
            dirs.push_back(Direction{lambda, mu});
        }
    return dirs;
}

// ------------------------------------------------------------ FiniteSubgroup

namespace {

// Row HNF [[h00,h01],[0,h11]] of the lattice generated by the given rows,
// which must span a finite-index sublattice of Z^2.
std::array<i64, 3> hnf_rows(std::vector<std::pair<i64, i64>> rows) {
    // Euclid on first coordinates.
    std::pair<i64, i64> r1{0, 0};
    for (auto& v : rows) {
        while (v.first != 0) {
            if (r1.first == 0) {
                std::swap(r1, v);
                continue;
            }
            const i64 q = v.first / r1.first;
            v.first -= q * r1.first;
            v.second -= q * r1.second;
            if (v.first != 0)
                std::swap(r1, v);
        }
    }
    if (r1.first == 0)
        throw DomainError("hnf_rows: lattice is not of finite index");
    if (r1.first < 0) {
        r1.first = -r1.first;
        r1.second = -r1.second;
    }
    i64 h11 = 0;
    for (const auto& v : rows)
        h11 = std::gcd(h11, std::abs(v.second));
    if (h11 == 0)
        throw DomainError("hnf_rows: lattice is not of finite index");
    i64 h01 = ((r1.second % h11) + h11) % h11;
    return {r1.first, h01, h11};
}

} // namespace

FiniteSubgroup FiniteSubgroup::from_generators(std::span<const QmodZ2> gens) {
    i64 m = 1;
    for (const QmodZ2& g : gens) {
        m = std::lcm(m, g.x.den());
        m = std::lcm(m, g.y.den());
        if (m > 1024)
            throw DomainError("FiniteSubgroup: generator denominators exceed the enumeration budget");
    }
    // Annihilator lattice: all (a,b) in [0,m)^2 with a*gx + b*gy integral,
    // plus m*Z^2.
    std::vector<std::pair<i64, i64>> rows = {{m, 0}, {0, m}};
    for (i64 a = 0; a < m; ++a)
        for (i64 b = 0; b < m; ++b) {
            if (a == 0 && b == 0)
                continue;
            bool ok = true;
            for (const QmodZ2& g : gens)
                if (!(a * g.x + b * g.y).is_zero()) {
                    ok = false;
                    break;
                }
            if (ok)
                rows.push_back({a, b});
        }
    const auto h = hnf_rows(std::move(rows));
    FiniteSubgroup F;
    F.h00_ = h[0];
    F.h01_ = h[1];
    F.h11_ = h[2];
    return F;
}

FiniteSubgroup FiniteSubgroup::from_generators(const std::vector<QmodZ2>& gens) {
    return from_generators(std::span<const QmodZ2>(gens.data(), gens.size()));
}

FiniteSubgroup FiniteSubgroup::from_annihilator(i64 a0, i64 b0, i64 a1, i64 b1) {
    if (a0 * b1 - b0 * a1 == 0)
        throw DomainError("FiniteSubgroup: annihilator rows are dependent");
    const auto h = hnf_rows({{a0, b0}, {a1, b1}});
    FiniteSubgroup F;
    F.h00_ = h[0];
    F.h01_ = h[1];
    F.h11_ = h[2];
    return F;
}

bool FiniteSubgroup::contains(const QmodZ2& p) const {
    return (h00_ * p.x + h01_ * p.y).is_zero() && (h11_ * p.y).is_zero();
}

std::vector<QmodZ2> FiniteSubgroup::generators() const {
    std::vector<QmodZ2> gens;
    gens.push_back(QmodZ2{QmodZ(1, h00_), QmodZ()});
    gens.push_back(QmodZ2{QmodZ(-h01_, h00_ * h11_), QmodZ(1, h11_)});
    std::erase_if(gens, [](const QmodZ2& g) { return g.is_zero(); });
    return gens;
}

std::vector<QmodZ2> FiniteSubgroup::elements() const {
    std::vector<QmodZ2> out;
    out.reserve(order());
    for (i64 k = 0; k < h11_; ++k)
        for (i64 m = 0; m < h00_; ++m)
            out.push_back(QmodZ2{QmodZ(m * h11_ - h01_ * k, h00_ * h11_), QmodZ(k, h11_)});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FiniteSubgroup> FiniteSubgroup::subgroups() const {
    std::vector<FiniteSubgroup> out;
    const i64 n = order();
    for (i64 a = 1; a <= n; ++a)
        for (i64 d = 1; d <= n; ++d) {
            if (n % (a * d) != 0)
                continue;
            for (i64 b = 0; b < d; ++b) {
                // Superlattice [[a,b],[0,d]] must contain our annihilator.
                if (h00_ % a != 0)
                    continue;
                const i64 r = h01_ - (h00_ / a) * b;
                if (r % d != 0 || h11_ % d != 0)
                    continue;
                FiniteSubgroup s;
                s.h00_ = a;
                s.h01_ = b;
                s.h11_ = d;
                out.push_back(s);
            }
        }
    std::sort(out.begin(), out.end());
    return out;
}

i64 FiniteSubgroup::exponent() const {
    i64 e = 1;
    for (const QmodZ2& g : generators())
        e = std::lcm(e, std::lcm(g.x.order(), g.y.order()));
    return e;
}

std::vector<FiniteSubgroup> subgroups_up_to(i64 max_order) {
    std::vector<FiniteSubgroup> out;
    for (i64 a = 1; a <= max_order; ++a)
        for (i64 d = 1; a * d <= max_order; ++d)
            for (i64 b = 0; b < d; ++b)
                out.push_back(FiniteSubgroup::from_annihilator(a, b, 0, d));
    return out;
}

i64 n_index(const FiniteSubgroup& F, const Direction& d) {
    i64 n = 1;
    for (const QmodZ2& g : F.generators())
        n = std::lcm(n, character_value(d, g).order());
    return n;
}

SubgroupProfile splitting_pair(const FiniteSubgroup& F, i64 budget) {
    const std::vector<Direction> dirs = direction_grid(budget);
    std::vector<i64> n(dirs.size());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        n[i] = n_index(F, dirs[i]);

    for (std::size_t i = 0; i < dirs.size(); ++i)
        for (std::size_t j = i + 1; j < dirs.size(); ++j) {
            const i64 det = n[i] * n[j] * std::abs(direction_det(dirs[i], dirs[j]));
            if (det != F.order())
                continue;
            // Kernel intersection has the right order; it contains F, so they
            // are equal. The member with the smaller index comes first.
            SubgroupProfile p;
            p.subgroup = F;
            const bool swap = n[j] < n[i];
            p.A = swap ? dirs[j] : dirs[i];
            p.nA = swap ? n[j] : n[i];
            p.B = swap ? dirs[i] : dirs[j];
            p.nB = swap ? n[i] : n[j];
            for (const Direction& d : direction_grid(3))
                p.n_table[d] = n_index(F, d);
            p.n_table[p.A] = p.nA;
            p.n_table[p.B] = p.nB;
            return p;
        }
    throw DomainError("splitting_pair: no valid direction pair within the search budget");
}

std::pair<i64, i64> solve_character_eq(const SubgroupProfile& p, const Direction& d) {
    const i64 nd = n_index(p.subgroup, d);
    // Solve (nA*A, nB*B) * (r,s)^T = nd * d over the integers.
    const i64 c00 = p.nA * p.A.lambda, c10 = p.nA * p.A.mu;
    const i64 c01 = p.nB * p.B.lambda, c11 = p.nB * p.B.mu;
    const i64 det = c00 * c11 - c01 * c10;
    const i64 t0 = nd * d.lambda, t1 = nd * d.mu;
    const i64 rnum = t0 * c11 - t1 * c01;
    const i64 snum = c00 * t1 - c10 * t0;
    if (det == 0 || rnum % det != 0 || snum % det != 0)
        throw DomainError("solve_character_eq: no integral solution (broken profile)");
    return {rnum / det, snum / det};
}

// ----------------------------------------------------------- EulerPolynomial

EulerPolynomial EulerPolynomial::constant(const Q& c) {
    EulerPolynomial p;
    p.set_coeff(0, 0, c);
    return p;
}

EulerPolynomial EulerPolynomial::linear(const Q& ca, const Q& cb) {
    EulerPolynomial p;
    p.set_coeff(1, 0, ca);
    p.set_coeff(0, 1, cb);
    return p;
}

Q EulerPolynomial::coeff(int i, int j) const {
    const auto it = terms_.find({i, j});
    return it == terms_.end() ? Q(0) : it->second;
}

void EulerPolynomial::set_coeff(int i, int j, const Q& v) {
    if (v == 0)
        terms_.erase({i, j});
    else
        terms_[{i, j}] = v;
}

int EulerPolynomial::degree() const {
    int d = -1;
    for (const auto& [e, v] : terms_)
        d = std::max(d, e.first + e.second);
    return d;
}

EulerPolynomial EulerPolynomial::operator+(const EulerPolynomial& o) const {
    EulerPolynomial r = *this;
    for (const auto& [e, v] : o.terms_)
        r.set_coeff(e.first, e.second, r.coeff(e.first, e.second) + v);
    return r;
}

EulerPolynomial EulerPolynomial::operator*(const EulerPolynomial& o) const {
    EulerPolynomial r;
    for (const auto& [e1, v1] : terms_)
        for (const auto& [e2, v2] : o.terms_) {
            const auto key = std::make_pair(e1.first + e2.first, e1.second + e2.second);
            r.set_coeff(key.first, key.second, r.coeff(key.first, key.second) + v1 * v2);
        }
    return r;
}

bool EulerPolynomial::operator==(const EulerPolynomial& o) const {
    return terms_ == o.terms_;
}

EulerPolynomial euler_class_component(std::span<const RepSummand> V,
                                      const SubgroupProfile& p) {
    EulerPolynomial result = EulerPolynomial::constant(Q(1));
    for (const RepSummand& s : V) {
        if (s.character.is_zero())
            throw DomainError("euler_class_component: zero character in representation");
        if (s.multiplicity < 1)
            throw DomainError("euler_class_component: multiplicity must be >= 1");
        const auto [dir, n] = decompose_character(s.character);
        const i64 nd = n_index(p.subgroup, dir);
        if (n % nd != 0)
            continue; // character is nontrivial on F, factor 1
        const auto [r, sc] = solve_character_eq(p, dir);
        const Q scale = q_of(n / nd);
        const EulerPolynomial factor =
            EulerPolynomial::linear(scale * q_of(r), scale * q_of(sc));
        for (i64 k = 0; k < s.multiplicity; ++k)
            result = result * factor;
    }
    return result;
}

EulerPolynomial inflation_component(const SubgroupProfile& p, const Direction& d,
                                    const std::map<i64, CPolynomial>& element) {
    const i64 nd = n_index(p.subgroup, d);
    const auto it = element.find(nd);
    if (it == element.end())
        return EulerPolynomial(); // wrong component dies
    const auto [r, s] = solve_character_eq(p, d);
    const EulerPolynomial xd = EulerPolynomial::linear(q_of(r), q_of(s));
    EulerPolynomial result;
    EulerPolynomial pw = EulerPolynomial::constant(Q(1));
    for (std::size_t k = 0; k < it->second.size(); ++k) {
        if (it->second[k] != 0) {
            EulerPolynomial scaled;
            for (const auto& [e, v] : pw.terms())
                scaled.set_coeff(e.first, e.second, v * it->second[k]);
            result = result + scaled;
        }
        pw = pw * xd;
    }
    return result;
}

} // namespace torell
