#include "germkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>

namespace germkit {

AxisOrder order_along_axis(const Poly2 &p, Axis axis) {
    // restrict to the axis: x-axis means y = 0, y-axis means x = 0
    const std::size_t killed = axis == Axis::X ? 1 : 0;
    const std::size_t kept = 1 - killed;
    int best = -1;
    for (const auto &[e, c] : p.terms()) {
        if (e[killed] != 0) continue;
        if (best < 0 || e[kept] < best) best = e[kept];
    }
    return best < 0 ? AxisOrder::infinity() : AxisOrder::finite(best);
}

MapGerm::MapGerm(std::array<Poly2, 4> components) : components_(std::move(components)) {
    for (std::size_t i = 0; i < 4; ++i)
        if (components_[i].constant_term() != 0)
            throw ShapeError("component " + std::to_string(i + 1) + " does not vanish at the origin");
}

int MapGerm::degree() const {
    int d = -1;
    for (const auto &c : components_) d = std::max(d, c.degree());
    return d;
}

std::array<double, 4> MapGerm::eval(double x, double y) const {
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = components_[i].eval<double>({x, y});
    return out;
}

std::array<double, 8> MapGerm::jacobian(double x, double y) const {
    std::array<double, 8> j{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (const auto &[e, c] : components_[i].terms()) {
            double cd = c.get_d();
            if (e[0] > 0) j[2 * i] += cd * e[0] * std::pow(x, e[0] - 1) * std::pow(y, e[1]);
            if (e[1] > 0) j[2 * i + 1] += cd * e[1] * std::pow(x, e[0]) * std::pow(y, e[1] - 1);
        }
    }
    return j;
}

std::string MapGerm::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i) out += ", ";
        out += components_[i].to_string(kNamesXY);
    }
    return out;
}

Poly2 partial_derivative(const Poly2 &p, Axis axis) { return p.derivative(axis == Axis::X ? 0 : 1); }

namespace {

class Parser {
  public:
    explicit Parser(std::string_view text) : text_(text) {}

    Poly2 expression() {
        Poly2 acc = term();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '+') {
                ++pos_;
                acc += term();
            } else if (c == '-') {
                ++pos_;
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    std::array<Poly2, 4> map() {
        std::array<Poly2, 4> out;
        for (std::size_t i = 0; i < 4; ++i) {
            if (i > 0) expect(',');
            out[i] = expression();
        }
        skip_ws();
        if (pos_ != text_.size()) {
            if (peek() == ',') throw ParseError("expected exactly 4 components", pos_);
            throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
        }
        return out;
    }

    void finish() {
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected character '" + std::string(1, peek()) + "'", pos_);
    }

  private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    void expect(char c) {
        skip_ws();
        if (peek() != c) {
            if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "'", pos_);
        }
        ++pos_;
    }

    Poly2 term() {
        Poly2 acc = unary();
        for (;;) {
            skip_ws();
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc *= unary();
            } else if (c == '/') {
                std::size_t at = ++pos_;
                Poly2 d = unary();
                if (d.degree() > 0) throw ParseError("division by a non-constant", at);
                if (d.is_zero()) throw ParseError("division by zero", at);
                acc *= Rational(1) / d.constant_term();
            } else if (std::isalnum(static_cast<unsigned char>(c)) || c == '(') {
                throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
            } else {
                return acc;
            }
        }
    }

    Poly2 unary() {
        skip_ws();
        char c = peek();
        if (c == '-') {
            ++pos_;
            return -unary();
        }
        if (c == '+') {
            ++pos_;
            return unary();
        }
        return power();
    }

    Poly2 power() {
        Poly2 base = primary();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        std::size_t at = pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError("exponent must be a natural number", at);
        Integer e = integer();
        if (e > 64) throw ParseError("exponent too large", at);
        return base.pow(static_cast<unsigned>(e.get_ui()));
    }

    Integer integer() {
        std::size_t start = pos_;
        while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Poly2 primary() {
        skip_ws();
        char c = peek();
        std::size_t at = pos_;
        if (c == '(') {
            ++pos_;
            Poly2 inner = expression();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Integer v = integer();
            if (std::isalpha(static_cast<unsigned char>(peek())))
                throw ParseError("implicit multiplication is not allowed; use '*'", pos_);
            return Poly2(Rational(v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') ++pos_;
            std::string_view name = text_.substr(at, pos_ - at);
            if (name == "x") return Poly2::variable(0);
            if (name == "y") return Poly2::variable(1);
            if (name.size() > 1 && name.find_first_not_of("xy") == std::string_view::npos)
                throw ParseError("implicit multiplication is not allowed in '" + std::string(name) + "'", at);
            throw ParseError("unknown variable '" + std::string(name) + "' (only x and y are allowed)", at);
        }
        if (c == '\0') throw ParseError("unexpected end of input", at);
        throw ParseError("unexpected character '" + std::string(1, c) + "'", at);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Poly2 parse_poly(std::string_view text) {
    Parser p(text);
    Poly2 out = p.expression();
    p.finish();
    return out;
}

MapGerm parse_map(std::string_view text) {
    Parser p(text);
    auto comps = p.map();
    for (std::size_t i = 0; i < 4; ++i)
        if (comps[i].constant_term() != 0)
            throw ParseError("component " + std::to_string(i + 1) + " has a nonzero constant term (germ not based at 0)", 0);
    return MapGerm(std::move(comps));
}

MapGerm parse_germ_file_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    std::optional<MapGerm> found;
    while (std::getline(in, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        if (line.compare(first, 4, "map:") != 0)
            throw ParseError("expected 'map:' line or '# comment'", line_start + first);
        if (found) throw ParseError("more than one map in file", line_start + first);
        try {
            found = parse_map(std::string_view(line).substr(first + 4));
        } catch (const ParseError &e) {
            throw ParseError(std::string("in map line: ") + e.what(), line_start + first + 4 + e.position());
        }
    }
    if (!found) throw ParseError("no 'map:' line found", offset);
    return *found;
}

MapGerm read_germ_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read germ file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_germ_file_text(buf.str());
}

std::string format_germ_file(const MapGerm &m, std::string_view comment) {
    std::string out;
    if (!comment.empty()) out += "# " + std::string(comment) + "\n";
    out += "map: " + m.to_string() + "\n";
    return out;
}

TruncatedSeries::TruncatedSeries(Poly1 poly, int order, bool may_be_incomplete)
    : poly_(poly.truncated(order)), order_(order), incomplete_(may_be_incomplete) {}

int TruncatedSeries::valuation() const {
    int v = poly_.low_degree();
    if (v < 0) {
        if (incomplete_) throw TruncationError("series vanishes through order " + std::to_string(order_));
        return -1;
    }
    return v;
}

Rational TruncatedSeries::coeff(int k) const {
    if (k > order_ && incomplete_) throw TruncationError("coefficient beyond truncation order requested");
    return poly_.coeff({k});
}

TruncatedSeries compose_truncated(const Poly2 &p, const TruncatedSeries &sx, const TruncatedSeries &sy, int n) {
    if (n < 1) throw PreconditionError("truncation order must be >= 1");
    if (sx.poly().constant_term() != 0 || sy.poly().constant_term() != 0)
        throw PreconditionError("substituted series must vanish at t = 0");
    Poly1 r = p.compose<1>({sx.poly(), sy.poly()}, n);
    // Inputs known to order k give products known to order k (they vanish at 0).
    int known = std::min({n, sx.may_be_incomplete() ? sx.order() : n, sy.may_be_incomplete() ? sy.order() : n});
    bool incomplete = known < n || p.degree() * std::max(sx.poly().degree(), sy.poly().degree()) > n ||
                      sx.may_be_incomplete() || sy.may_be_incomplete();
    return {r, known, incomplete};
}

} // namespace germkit
