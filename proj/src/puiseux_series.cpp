#include "germkit/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace germkit {

std::string Coeff::to_string() const {
    if (exact_) return germkit::to_string(*exact_);
    std::ostringstream s;
    s.precision(12);
    s << value_;
    return s.str();
}

Coeff coeff_root(const Coeff &c, unsigned k) {
    if (c.value() < 0) throw PreconditionError("root of a negative coefficient");
    if (c.is_exact())
        if (auto r = exact_root(c.rational(), k)) return *r;
    return Coeff::approx(std::pow(c.value(), 1.0 / k));
}

PuiseuxSeries PuiseuxSeries::monomial(const Coeff &c, const Rational &e) {
    PuiseuxSeries s;
    s.add_term(e, c);
    return s;
}

PuiseuxSeries PuiseuxSeries::from_poly(const Poly1 &p, std::optional<Rational> order) {
    PuiseuxSeries s(order);
    for (const auto &[e, c] : p.terms()) s.add_term(Rational(e[0]), c);
    return s;
}

bool PuiseuxSeries::exact_coefficients() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const PuiseuxTerm &t) { return t.coeff.is_exact(); });
}

void PuiseuxSeries::add_term(const Rational &e, const Coeff &c) {
    if (c.is_zero() || (order_ && e >= *order_)) return;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e, [](const PuiseuxTerm &t, const Rational &x) { return t.exponent < x; });
    if (it != terms_.end() && it->exponent == e) {
        it->coeff += c;
        if (it->coeff.is_zero()) terms_.erase(it);
    } else {
        terms_.insert(it, {e, c});
    }
}

void PuiseuxSeries::set_order(std::optional<Rational> order) {
    order_ = std::move(order);
    if (order_) std::erase_if(terms_, [&](const PuiseuxTerm &t) { return t.exponent >= *order_; });
}

std::optional<Rational> PuiseuxSeries::leading_exponent() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.front().exponent;
}

std::optional<Rational> PuiseuxSeries::valuation_bound() const {
    if (!terms_.empty()) return terms_.front().exponent;
    return order_;
}

Coeff PuiseuxSeries::coeff(const Rational &e) const {
    for (const auto &t : terms_)
        if (t.exponent == e) return t.coeff;
    if (order_ && e >= *order_) throw TruncationError("coefficient of t^" + germkit::to_string(e) + " is beyond the truncation order");
    return Coeff();
}

Integer PuiseuxSeries::ramification() const {
    Integer d = 1;
    for (const auto &t : terms_) d = lcm(d, t.exponent.get_den());
    return d;
}

double PuiseuxSeries::eval(double t) const {
    double acc = 0;
    for (const auto &term : terms_) {
        const Rational &e = term.exponent;
        double pw = e.get_den() == 1 ? std::pow(t, static_cast<int>(e.get_num().get_si())) : std::pow(t, e.get_d());
        acc += term.coeff.value() * pw;
    }
    return acc;
}

PuiseuxSeries PuiseuxSeries::operator-() const {
    PuiseuxSeries r = *this;
    for (auto &t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {

std::optional<Rational> min_order(const std::optional<Rational> &a, const std::optional<Rational> &b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

} // namespace

PuiseuxSeries operator+(const PuiseuxSeries &a, const PuiseuxSeries &b) {
    PuiseuxSeries r(min_order(a.order_, b.order_));
    for (const auto &t : a.terms_) r.add_term(t.exponent, t.coeff);
    for (const auto &t : b.terms_) r.add_term(t.exponent, t.coeff);
    return r;
}

PuiseuxSeries operator*(const PuiseuxSeries &a, const PuiseuxSeries &b) {
    const bool a_zero = a.terms_.empty() && !a.order_, b_zero = b.terms_.empty() && !b.order_;
    if (a_zero || b_zero) return PuiseuxSeries();
    std::optional<Rational> order;
    if (a.order_) order = *a.order_ + *b.valuation_bound();
    if (b.order_) order = min_order(order, *b.order_ + *a.valuation_bound());
    PuiseuxSeries r(order);
    for (const auto &x : a.terms_)
        for (const auto &y : b.terms_) r.add_term(x.exponent + y.exponent, x.coeff * y.coeff);
    return r;
}

PuiseuxSeries operator*(const Coeff &c, const PuiseuxSeries &a) {
    if (c.is_zero()) return PuiseuxSeries();
    PuiseuxSeries r = a;
    for (auto &t : r.terms_) t.coeff *= c;
    return r;
}

PuiseuxSeries PuiseuxSeries::pow(unsigned n) const {
    PuiseuxSeries result = monomial(Coeff(1), 0);
    for (unsigned k = 0; k < n; ++k) result = result * *this;
    return result;
}

PuiseuxSeries PuiseuxSeries::reflected() const {
    PuiseuxSeries r = *this;
    for (auto &t : r.terms_) {
        if (t.exponent.get_den() != 1) throw PreconditionError("reflection needs integer exponents");
        if (mpz_odd_p(t.exponent.get_num_mpz_t())) t.coeff = -t.coeff;
    }
    return r;
}

std::string PuiseuxSeries::to_string(std::string_view var) const {
    std::string out;
    for (const auto &t : terms_) {
        std::string c = t.coeff.to_string();
        bool neg = !c.empty() && c[0] == '-';
        if (neg) c.erase(0, 1);
        out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (t.exponent == 0) {
            out += c;
            continue;
        }
        if (c != "1") out += c + "*";
        out += std::string(var);
        if (t.exponent != 1) {
            std::string e = germkit::to_string(t.exponent);
            out += t.exponent.get_den() == 1 ? "^" + e : "^(" + e + ")";
        }
    }
    if (out.empty()) out = "0";
    if (order_) {
        std::string e = germkit::to_string(*order_);
        out += " + O(" + std::string(var) + "^" + (order_->get_den() == 1 ? e : "(" + e + ")") + ")";
    }
    return out;
}

PuiseuxSeries compose(const Poly2 &p, const PuiseuxSeries &x, const PuiseuxSeries &y) {
    std::vector<PuiseuxSeries> xp{PuiseuxSeries::monomial(Coeff(1), 0)}, yp{PuiseuxSeries::monomial(Coeff(1), 0)};
    for (int k = 1; k <= p.degree_in(0); ++k) xp.push_back(xp.back() * x);
    for (int k = 1; k <= p.degree_in(1); ++k) yp.push_back(yp.back() * y);
    PuiseuxSeries r;
    for (const auto &[e, c] : p.terms())
        r = r + Coeff(c) * (xp[static_cast<std::size_t>(e[0])] * yp[static_cast<std::size_t>(e[1])]);
    return r;
}

std::array<double, 4> ArcGerm::eval(double t) const {
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) out[i] = coords[i].eval(t);
    return out;
}

std::string ArcGerm::to_string() const {
    std::string out = "(";
    for (std::size_t i = 0; i < 4; ++i) out += (i ? ", " : "") + coords[i].to_string();
    return out + ")";
}

namespace {

/// Dense truncated power series in one variable with integer exponents 0..size-1.
using Dense = std::vector<Coeff>;

Dense mul(const Dense &a, const Dense &b, std::size_t size) {
    Dense r(size);
    for (std::size_t i = 0; i < a.size() && i < size; ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size() && i + j < size; ++j)
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
    }
    return r;
}

/// f^alpha for f = 1 + O(u), by the recurrence n g_n = sum ((alpha + 1) k - n) f_k g_{n-k}.
Dense binomial_power(const Dense &f, const Rational &alpha, std::size_t size) {
    Dense g(size);
    g[0] = Coeff(1);
    for (std::size_t n = 1; n < size; ++n) {
        Coeff acc;
        for (std::size_t k = 1; k <= n && k < f.size(); ++k) {
            if (f[k].is_zero() || g[n - k].is_zero()) continue;
            Rational w = (alpha + 1) * static_cast<long>(k) - static_cast<long>(n);
            acc += Coeff(w) * f[k] * g[n - k];
        }
        g[n] = acc / Coeff(Rational(static_cast<long>(n)));
    }
    return g;
}

long ceil_long(const Rational &r) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q.get_si();
}

} // namespace

ArcGerm reparametrize_by_distance(const ArcGerm &a) {
    Integer den = 1;
    for (const auto &c : a.coords) {
        den = lcm(den, c.ramification());
        if (c.order()) den = lcm(den, c.order()->get_den());
    }
    const long d = den.get_si();

    // coordinates as integer-exponent series in u = t^(1/d)
    std::array<std::vector<std::pair<long, Coeff>>, 4> cu;
    std::array<std::optional<long>, 4> known; // exclusive bound in u
    std::optional<long> lead;
    for (std::size_t i = 0; i < 4; ++i) {
        for (const auto &t : a.coords[i].terms()) {
            long e = Rational(t.exponent * d).get_num().get_si();
            cu[i].push_back({e, t.coeff});
            lead = lead ? std::min(*lead, e) : e;
        }
        if (a.coords[i].order()) known[i] = ceil_long(*a.coords[i].order() * d);
    }
    if (!lead) {
        bool all_exact = std::all_of(known.begin(), known.end(), [](const auto &k) { return !k; });
        if (all_exact) throw PreconditionError("cannot reparametrize the constant arc");
        throw TruncationError("arc vanishes through its truncation order");
    }
    const long E = *lead;
    for (std::size_t i = 0; i < 4; ++i)
        if (known[i] && *known[i] <= E) throw TruncationError("leading term of the arc is hidden by truncation");

    // rho^2 = a u^{2E} (1 + w); w known below ow
    std::optional<long> ow;
    for (std::size_t i = 0; i < 4; ++i)
        if (known[i]) ow = ow ? std::min(*ow, *known[i] - E) : *known[i] - E;
    long max_exp = 0;
    for (const auto &c : cu)
        for (const auto &[e, v] : c) max_exp = std::max(max_exp, e);
    const long work = ow ? *ow : 2 * (max_exp - E) + 3 * E + 6;
    const std::size_t size = static_cast<std::size_t>(std::max(work, 1L));

    Dense w(size);
    for (const auto &c : cu)
        for (const auto &[e1, c1] : c)
            for (const auto &[e2, c2] : c) {
                long k = e1 + e2 - 2 * E;
                if (k >= 0 && k < static_cast<long>(size)) w[static_cast<std::size_t>(k)] += c1 * c2;
            }
    const Coeff a0 = w[0];
    for (auto &x : w) x = x / a0;
    const Coeff b = coeff_root(a0, static_cast<unsigned>(2 * E));

    bool trivial = !ow;
    for (std::size_t k = 1; k < size; ++k) trivial = trivial && w[k].is_zero();

    // u(v) with sigma(u) = b u (1 + w)^{1/(2E)} = v
    Dense u(size + 1);
    if (trivial) {
        u[1] = Coeff(1) / b;
    } else {
        Dense g = binomial_power(w, make_rational(1, 2 * E), size); // (1+w)^{1/(2E)}
        for (std::size_t n = 1; n <= size; ++n) {
            // Lagrange inversion: u_n = (1/n) b^{-n} [u^{n-1}] g^{-n}
            Dense gn = binomial_power(g, Rational(-static_cast<long>(n)), n);
            Coeff bn(1);
            for (std::size_t k = 0; k < n; ++k) bn = bn * b;
            u[n] = gn[n - 1] / (bn * Coeff(Rational(static_cast<long>(n))));
        }
    }

    ArcGerm out;
    out.normalized = true;
    const long ubound = trivial ? -1 : static_cast<long>(size) + 1; // u(v) known below v^{ubound}
    for (std::size_t i = 0; i < 4; ++i) {
        std::optional<long> bound = known[i];
        long ci_lead = cu[i].empty() ? (known[i] ? *known[i] : 0) : cu[i].front().first;
        if (ubound > 0 && !(cu[i].empty() && !known[i])) {
            long via_u = ci_lead - 1 + ubound;
            bound = bound ? std::min(*bound, via_u) : via_u;
        }
        std::optional<Rational> order;
        if (bound) order = make_rational(*bound, E);
        PuiseuxSeries s(order);
        if (trivial) {
            for (const auto &[e, c] : cu[i]) {
                Coeff f = c;
                for (long k = 0; k < e; ++k) f = f * u[1];
                s.add_term(make_rational(e, E), f);
            }
        } else {
            const std::size_t vsize = bound ? static_cast<std::size_t>(std::max(*bound, 0L)) : size + 1;
            Dense power{Coeff(1)};
            long done = 0;
            Dense acc(vsize);
            for (const auto &[e, c] : cu[i]) {
                while (done < e) {
                    power = mul(power, u, vsize);
                    ++done;
                }
                for (std::size_t k = 0; k < power.size() && k < vsize; ++k) acc[k] += c * power[k];
            }
            for (std::size_t k = 0; k < vsize; ++k) s.add_term(make_rational(static_cast<long>(k), E), acc[k]);
        }
        out.coords[i] = std::move(s);
    }
    return out;
}

ContactOrder outer_contact_order(const ArcGerm &a, const ArcGerm &b, double zero_tol) {
    if (!a.normalized || !b.normalized) throw PreconditionError("contact order needs distance-parametrized arcs");
    std::optional<Rational> best, known;
    for (std::size_t i = 0; i < 4; ++i) {
        PuiseuxSeries diff = a.coords[i] - b.coords[i];
        known = min_order(known, diff.order());
        for (const auto &t : diff.terms()) {
            if (!t.coeff.is_exact() && std::abs(t.coeff.value()) <= zero_tol) continue;
            if (!best || t.exponent < *best) best = t.exponent;
            break;
        }
    }
    if (best && (!known || *best < *known)) return {*best, false};
    if (!best && !known) return {0, true};
    throw TruncationError("arcs agree through the truncation order " + to_string(*known));
}

} // namespace germkit
