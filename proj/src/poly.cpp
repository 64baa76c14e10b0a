#include "tetra/poly.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace tetra {

Poly3 Poly3::constant(cplx c) {
    Poly3 p;
    if (c != 0.0) p.terms[{0, 0, 0}] = c;
    return p;
}

Poly3 Poly3::variable(int index) {
    if (index < 1 || index > 3)
        throw Error(ErrorKind::DimensionMismatch, "variable index must be 1, 2 or 3, got " + std::to_string(index));
    Poly3 p;
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(index - 1)] = 1;
    p.terms[e] = 1.0;
    return p;
}

int Poly3::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms)
        if (c != 0.0) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

double Poly3::lipschitz() const {
    double l = 0.0;
    for (const auto& [e, c] : terms) l += std::abs(c) * (e[0] + e[1] + e[2]);
    return l;
}

void Poly3::prune() {
    std::erase_if(terms, [](const auto& kv) { return kv.second == 0.0; });
}

Poly3& Poly3::operator+=(const Poly3& rhs) {
    for (const auto& [e, c] : rhs.terms) terms[e] += c;
    prune();
    return *this;
}

Poly3& Poly3::operator*=(const Poly3& rhs) {
    std::map<Exponent, cplx> out;
    for (const auto& [e1, c1] : terms)
        for (const auto& [e2, c2] : rhs.terms) out[{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}] += c1 * c2;
    terms = std::move(out);
    prune();
    return *this;
}

Poly3 operator*(cplx c, Poly3 p) {
    for (auto& [e, v] : p.terms) v *= c;
    p.prune();
    return p;
}

Poly3 Poly3::pow(unsigned k) const {
    Poly3 result = constant(1.0), base = *this;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view s) : s_(s) {}

    Poly3 parse() {
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        Poly3 p = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return p;
    }

private:
    std::string_view s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        std::string msg = "polynomial parse error at position " + std::to_string(pos_) + ": " + why;
        if (s_.find("conj") != std::string_view::npos || s_.find("bar") != std::string_view::npos ||
            s_.find('~') != std::string_view::npos)
            msg += " (conjugates are not allowed; polynomials are holomorphic)";
        throw Error(ErrorKind::Parse, msg);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Poly3 sum() {
        Poly3 acc;
        bool first = true;
        for (;;) {
            char c = peek();
            double sign = 1.0;
            if (c == '+' || c == '-') {
                sign = c == '-' ? -1.0 : 1.0;
                ++pos_;
            } else if (!first) {
                break;
            }
            acc += cplx(sign) * term();
            first = false;
        }
        return acc;
    }

    static bool starts_factor(char c) {
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 'x' || c == '(';
    }

    Poly3 term() {
        Poly3 p = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                p *= factor();
            } else if (starts_factor(c)) {
                p *= factor();
            } else {
                break;
            }
        }
        return p;
    }

    Poly3 factor() {
        const char c = peek();
        Poly3 base;
        if (c == '(') {
            ++pos_;
            base = sum();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
        } else if (c == 'x') {
            ++pos_;
            if (pos_ >= s_.size() || s_[pos_] < '1' || s_[pos_] > '3') fail("expected x1, x2 or x3");
            base = Poly3::variable(s_[pos_] - '0');
            ++pos_;
        } else if (c == 'i') {
            ++pos_;
            base = Poly3::constant(cplx(0.0, 1.0));
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = 0.0;
            const char* begin = s_.data() + pos_;
            const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), v, std::chars_format::general);
            if (ec != std::errc() || !std::isfinite(v)) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            if (pos_ < s_.size() && s_[pos_] == 'i') {
                ++pos_;
                base = Poly3::constant(cplx(0.0, v));
            } else {
                base = Poly3::constant(v);
            }
            if (v == 0.0) base = Poly3{};
        } else {
            fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
        }
        if (peek() == '^') {
            ++pos_;
            skip();
            unsigned k = 0;
            const char* begin = s_.data() + pos_;
            const auto [end, ec] = std::from_chars(begin, s_.data() + s_.size(), k);
            if (ec != std::errc() || end == begin || k > 64) fail("bad exponent");
            pos_ += static_cast<std::size_t>(end - begin);
            base = base.pow(k);
        }
        return base;
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

Poly3 parse_poly(std::string_view text) {
    return Parser(text).parse();
}

std::string to_string(const Poly3& p) {
    if (p.terms.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : p.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + fmt(c.real()) + (std::signbit(c.imag()) ? "-" : "+") + fmt(std::abs(c.imag())) + "i)";
        for (int v = 0; v < 3; ++v) {
            if (e[v] == 0) continue;
            out += "*x" + std::to_string(v + 1);
            if (e[v] > 1) out += "^" + std::to_string(e[v]);
        }
    }
    return out;
}

Poly3 random_poly(std::mt19937_64& rng, int max_degree) {
    std::uniform_int_distribution<int> pick_degree(0, std::max(max_degree, 0));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int d = pick_degree(rng);
    Poly3 p;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; i + j <= d; ++j) {
            for (int k = 0; i + j + k <= d; ++k) {
                const double r = std::sqrt(unit(rng));
                const double a = 2.0 * std::numbers::pi * unit(rng);
                p.terms[{i, j, k}] = std::polar(r, a);
            }
        }
    }
    p.prune();
    return p;
}

double MatrixPoly3::lipschitz() const {
    double l = 0.0;
    for (const auto& [e, c] : terms) l += operator_norm(c) * (e[0] + e[1] + e[2]);
    return l;
}

int MatrixPoly3::degree() const {
    int d = -1;
    for (const auto& [e, c] : terms) d = std::max(d, e[0] + e[1] + e[2]);
    return d;
}

} // namespace tetra
