#pragma once

#include "germkit/error.hpp"
#include "germkit/rational.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace germkit {

/// Sparse polynomial over Q in `Vars` variables. Zero coefficients are never stored.
template <std::size_t Vars> class Polynomial {
  public:
    using Exponent = std::array<int, Vars>;
    using Terms = std::map<Exponent, Rational>;

    Polynomial() = default;
    explicit Polynomial(const Rational &c) {
        if (c != 0) terms_.emplace(Exponent{}, c);
    }

    static Polynomial monomial(const Exponent &e, const Rational &c = 1) {
        Polynomial p;
        if (c != 0) p.terms_.emplace(e, c);
        return p;
    }
    static Polynomial variable(std::size_t i) {
        Exponent e{};
        e.at(i) = 1;
        return monomial(e);
    }

    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Rational coeff(const Exponent &e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(const Exponent &e, const Rational &c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    static int total(const Exponent &e) { return std::accumulate(e.begin(), e.end(), 0); }

    /// Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto &[e, c] : terms_) d = std::max(d, total(e));
        return d;
    }
    /// Lowest total degree of a nonzero term; -1 for the zero polynomial.
    int low_degree() const {
        int d = -1;
        for (const auto &[e, c] : terms_) {
            int t = total(e);
            if (d < 0 || t < d) d = t;
        }
        return d;
    }
    int degree_in(std::size_t var) const {
        int d = -1;
        for (const auto &[e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }

    Rational constant_term() const { return coeff(Exponent{}); }

    /// Drop every term of total degree > n.
    Polynomial truncated(int n) const {
        Polynomial r;
        for (const auto &[e, c] : terms_)
            if (total(e) <= n) r.terms_.emplace(e, c);
        return r;
    }
    /// Terms of exactly total degree d.
    Polynomial homogeneous_part(int d) const {
        Polynomial r;
        for (const auto &[e, c] : terms_)
            if (total(e) == d) r.terms_.emplace(e, c);
        return r;
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto &[e, c] : r.terms_) c = -c;
        return r;
    }
    Polynomial &operator+=(const Polynomial &o) {
        for (const auto &[e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    Polynomial &operator-=(const Polynomial &o) {
        for (const auto &[e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    Polynomial &operator*=(const Rational &s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto &[e, c] : terms_) c *= s;
        return *this;
    }
    friend Polynomial operator+(Polynomial a, const Polynomial &b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial &b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational &s) { return a *= s; }
    friend Polynomial operator*(const Rational &s, Polynomial a) { return a *= s; }

    /// Product, dropping terms of total degree > `trunc` when trunc >= 0.
    static Polynomial multiply(const Polynomial &a, const Polynomial &b, int trunc = -1) {
        Polynomial r;
        for (const auto &[ea, ca] : a.terms_) {
            for (const auto &[eb, cb] : b.terms_) {
                Exponent e;
                for (std::size_t i = 0; i < Vars; ++i) e[i] = ea[i] + eb[i];
                if (trunc >= 0 && total(e) > trunc) continue;
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }
    friend Polynomial operator*(const Polynomial &a, const Polynomial &b) { return multiply(a, b); }
    Polynomial &operator*=(const Polynomial &o) { return *this = multiply(*this, o); }

    Polynomial pow(unsigned n, int trunc = -1) const {
        Polynomial result(Rational(1));
        Polynomial base = *this;
        while (n > 0) {
            if (n & 1u) result = multiply(result, base, trunc);
            n >>= 1u;
            if (n > 0) base = multiply(base, base, trunc);
        }
        return result;
    }

    Polynomial derivative(std::size_t var) const {
        Polynomial r;
        for (const auto &[e, c] : terms_) {
            if (e[var] == 0) continue;
            Exponent d = e;
            d[var] -= 1;
            r.add_term(d, c * e[var]);
        }
        return r;
    }

    /// Restrict variable `var` to the constant `value` (exactly).
    Polynomial substitute_constant(std::size_t var, const Rational &value) const {
        Polynomial r;
        for (const auto &[e, c] : terms_) {
            Exponent d = e;
            d[var] = 0;
            Rational f = c;
            if (e[var] > 0) {
                Rational pw = 1;
                for (int k = 0; k < e[var]; ++k) pw *= value;
                f *= pw;
            }
            r.add_term(d, f);
        }
        return r;
    }

    /// Evaluate at a point. T may be Rational or a floating type.
    template <typename T> T eval(const std::array<T, Vars> &pt) const {
        T acc = T(0);
        for (const auto &[e, c] : terms_) {
            T m = convert<T>(c);
            for (std::size_t i = 0; i < Vars; ++i)
                for (int k = 0; k < e[i]; ++k) m *= pt[i];
            acc += m;
        }
        return acc;
    }

    /// Substitute polynomials in M variables for each variable, truncating at total degree `trunc`.
    template <std::size_t M>
    Polynomial<M> compose(const std::array<Polynomial<M>, Vars> &subst, int trunc = -1) const {
        Polynomial<M> r;
        // cache powers per variable
        std::array<std::vector<Polynomial<M>>, Vars> powers;
        for (std::size_t i = 0; i < Vars; ++i) {
            int d = degree_in(i);
            powers[i].reserve(static_cast<std::size_t>(std::max(d, 0)) + 1);
            powers[i].push_back(Polynomial<M>(Rational(1)));
            for (int k = 1; k <= d; ++k)
                powers[i].push_back(Polynomial<M>::multiply(powers[i].back(), subst[i], trunc));
        }
        for (const auto &[e, c] : terms_) {
            Polynomial<M> m(c);
            for (std::size_t i = 0; i < Vars; ++i)
                if (e[i] > 0) m = Polynomial<M>::multiply(m, powers[i][static_cast<std::size_t>(e[i])], trunc);
            r += m;
        }
        return r;
    }

    bool operator==(const Polynomial &o) const { return terms_ == o.terms_; }

    /// Canonical text: ascending total degree, then descending in the first variable.
    std::string to_string(std::span<const std::string_view> names) const;

  private:
    template <typename T> static T convert(const Rational &c) {
        if constexpr (std::is_same_v<T, Rational>)
            return c;
        else
            return static_cast<T>(c.get_d());
    }

    Terms terms_;
};

using Poly1 = Polynomial<1>;
using Poly2 = Polynomial<2>;
using Poly3 = Polynomial<3>;

inline constexpr std::array<std::string_view, 1> kNamesT{"t"};
inline constexpr std::array<std::string_view, 2> kNamesXY{"x", "y"};
inline constexpr std::array<std::string_view, 3> kNamesXYU{"x", "y", "u"};

template <std::size_t Vars>
std::string Polynomial<Vars>::to_string(std::span<const std::string_view> names) const {
    if (terms_.empty()) return "0";
    std::vector<std::pair<Exponent, Rational>> order(terms_.begin(), terms_.end());
    std::stable_sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
        int ta = total(a.first), tb = total(b.first);
        if (ta != tb) return ta < tb;
        return a.first > b.first;
    });
    std::string out;
    bool first = true;
    for (const auto &[e, c] : order) {
        Rational mag = abs(c);
        bool neg = c < 0;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        bool constant = total(e) == 0;
        std::string body;
        if (mag != 1 || constant) body = germkit::to_string(mag);
        for (std::size_t i = 0; i < Vars; ++i) {
            if (e[i] == 0) continue;
            if (!body.empty()) body += "*";
            body += std::string(names[i]);
            if (e[i] > 1) body += "^" + std::to_string(e[i]);
        }
        out += body;
    }
    return out;
}

} // namespace germkit
