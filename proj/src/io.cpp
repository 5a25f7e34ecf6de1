#include "torell/io.hpp"

#include <algorithm>
#include <cctype>

namespace torell {

namespace {

class Cursor {
  public:
    explicit Cursor(const std::string& s) : s_(s), i_(0) {}

    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
            ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    std::size_t pos() const { return i_; }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool try_consume(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!try_consume(c))
            throw ParseError(std::string("expected '") + c + "'", i_);
    }
    void expect_word(const std::string& word) {
        skip_ws();
        if (s_.compare(i_, word.size(), word) != 0)
            throw ParseError("expected '" + word + "'", i_);
        i_ += word.size();
    }
    i64 parse_int() {
        skip_ws();
        const std::size_t start = i_;
        bool neg = false;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
            neg = s_[i_] == '-';
            ++i_;
        }
        if (i_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[i_])))
            throw ParseError("expected an integer", start);
        i64 v = 0;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
            v = v * 10 + (s_[i_] - '0');
            if (v > (i64(1) << 40))
                throw ParseError("integer too large", start);
            ++i_;
        }
        return neg ? -v : v;
    }
    std::pair<i64, i64> parse_fraction() {
        const i64 num = parse_int();
        if (try_consume('/')) {
            const std::size_t at = pos();
            const i64 den = parse_int();
            if (den == 0)
                throw ParseError("zero denominator", at);
            return {num, den};
        }
        return {num, 1};
    }

  private:
    const std::string& s_;
    std::size_t i_;
};

} // namespace

Q parse_rational(const std::string& s) {
    Cursor c(s);
    const auto [num, den] = c.parse_fraction();
    if (!c.done())
        throw ParseError("trailing characters after rational", c.pos());
    return q_of(num, den);
}

Curve parse_curve(const std::string& s) {
    Cursor c(s);
    Q a[5];
    for (int i = 0; i < 5; ++i) {
        if (i > 0)
            c.expect(',');
        const auto [num, den] = c.parse_fraction();
        a[i] = q_of(num, den);
    }
    if (!c.done())
        throw ParseError("trailing characters after curve coefficients", c.pos());
    return curve_new(a[0], a[1], a[2], a[3], a[4]);
}

std::vector<QmodZ2> parse_generators(const std::string& s) {
    std::vector<QmodZ2> gens;
    Cursor c(s);
    if (c.done())
        return gens;
    while (true) {
        const auto [n1, d1] = c.parse_fraction();
        c.expect(',');
        const auto [n2, d2] = c.parse_fraction();
        gens.push_back(QmodZ2{QmodZ(n1, d1), QmodZ(n2, d2)});
        if (!c.try_consume(';'))
            break;
    }
    if (!c.done())
        throw ParseError("trailing characters after generators", c.pos());
    return gens;
}

Representation parse_representation(const std::string& s) {
    Representation rep;
    Cursor c(s);
    if (c.done())
        return rep;
    while (true) {
        c.expect('(');
        const i64 a = c.parse_int();
        c.expect(',');
        const i64 b = c.parse_int();
        c.expect(')');
        c.expect(':');
        const std::size_t at = c.pos();
        const i64 m = c.parse_int();
        if (m < 1)
            throw ParseError("multiplicity must be positive", at);
        rep.add(Character{a, b}, m);
        if (!c.try_consume(','))
            break;
    }
    if (!c.done())
        throw ParseError("trailing characters after representation", c.pos());
    return rep;
}

Direction parse_direction(const std::string& s) {
    Cursor c(s);
    const bool paren = c.try_consume('(');
    const i64 a = c.parse_int();
    c.expect(',');
    const i64 b = c.parse_int();
    if (paren)
        c.expect(')');
    if (!c.done())
        throw ParseError("trailing characters after direction", c.pos());
    return normalize_direction(a, b);
}

std::vector<Direction> parse_direction_list(const std::string& s) {
    std::vector<Direction> dirs;
    Cursor c(s);
    while (true) {
        c.expect('(');
        const i64 a = c.parse_int();
        c.expect(',');
        const i64 b = c.parse_int();
        c.expect(')');
        dirs.push_back(normalize_direction(a, b));
        if (!c.try_consume(','))
            break;
    }
    if (!c.done())
        throw ParseError("trailing characters after direction list", c.pos());
    return dirs;
}

SurfaceDivisor parse_divisor(const std::string& s) {
    SurfaceDivisor D;
    Cursor c(s);
    if (c.done())
        return D;
    while (true) {
        c.expect_word("dir");
        c.expect('=');
        c.expect('(');
        const i64 a = c.parse_int();
        c.expect(',');
        const i64 b = c.parse_int();
        c.expect(')');
        c.expect_word("j");
        c.expect('=');
        const std::size_t at = c.pos();
        const i64 j = c.parse_int();
        if (j < 1)
            throw ParseError("fiber index must be >= 1", at);
        c.expect_word("coeff");
        c.expect('=');
        const i64 v = c.parse_int();
        D.add(normalize_direction(a, b), j, v);
        if (!c.try_consume(';'))
            break;
    }
    if (!c.done())
        throw ParseError("trailing characters after divisor", c.pos());
    return D;
}

namespace {

void append_power(std::string& out, const std::string& var, int e) {
    if (e == 0)
        return;
    out += "*";
    out += var;
    if (e >= 2)
        out += "^" + std::to_string(e);
}

} // namespace

std::string format_bi(const BiSeries& s) {
    // Total degree ascending, t1-exponent descending inside a degree.
    std::vector<std::pair<std::pair<int, int>, Q>> terms(s.terms().begin(), s.terms().end());
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) {
        const int dx = x.first.first + x.first.second;
        const int dy = y.first.first + y.first.second;
        if (dx != dy)
            return dx < dy;
        return x.first.first > y.first.first;
    });
    std::string out;
    for (const auto& [e, v] : terms) {
        if (!out.empty())
            out += " + ";
        out += q_str(v);
        append_power(out, "t1", e.first);
        append_power(out, "t2", e.second);
    }
    return out.empty() ? "0" : out;
}

std::string format_uni(const UniSeries& s, const std::string& var) {
    std::string out;
    for (int i = 0; i < s.precision(); ++i) {
        const Q v = s.coeff(i);
        if (v == 0)
            continue;
        if (!out.empty())
            out += " + ";
        out += q_str(v);
        append_power(out, var, i);
    }
    return out.empty() ? "0" : out;
}

std::string format_point(const QmodZ2& p) {
    return std::to_string(p.x.num()) + "/" + std::to_string(p.x.den()) + "," +
           std::to_string(p.y.num()) + "/" + std::to_string(p.y.den());
}

std::string format_direction(const Direction& d) {
    return "(" + std::to_string(d.lambda) + "," + std::to_string(d.mu) + ")";
}

} // namespace torell
