#include "germkit/roots.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cmath>

namespace germkit {

namespace {

using Dense = std::vector<Rational>; // low to high, no trailing zeros

void trim(Dense &a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Dense dense(const Poly1 &p) {
    Dense a(static_cast<std::size_t>(std::max(p.degree(), 0)) + 1, Rational(0));
    for (const auto &[e, c] : p.terms()) a[static_cast<std::size_t>(e[0])] = c;
    trim(a);
    return a;
}

Dense derivative(const Dense &a) {
    Dense d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
    trim(d);
    return d;
}

/// Quotient and remainder of a by b (b nonzero).
std::pair<Dense, Dense> divmod(Dense a, const Dense &b) {
    if (a.size() < b.size()) return {Dense{}, a};
    Dense q(a.size() - b.size() + 1, Rational(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational f = a[k + b.size() - 1] / b.back();
        q[k] = f;
        for (std::size_t i = 0; i < b.size(); ++i) a[k + i] -= f * b[i];
    }
    trim(q);
    trim(a);
    return {q, a};
}

Dense monic(Dense a) {
    Rational lead = a.back();
    for (auto &c : a) c /= lead;
    return a;
}

Dense gcd(Dense a, Dense b) {
    while (!b.empty()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Dense subtract(Dense a, const Dense &b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

Rational eval(const Dense &a, const Rational &x) {
    Rational acc = 0;
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * x + a[k];
    return acc;
}

/// Yun's algorithm: factors[i] is squarefree with roots of multiplicity i + 1.
std::vector<Dense> squarefree(const Dense &f) {
    std::vector<Dense> out;
    Dense fp = derivative(f);
    if (fp.empty()) return out;
    Dense a = gcd(f, fp);
    Dense b = divmod(f, a).first;
    Dense c = divmod(fp, a).first;
    Dense d = subtract(c, derivative(b));
    while (b.size() > 1) {
        Dense g = gcd(b, d);
        out.push_back(g);
        b = divmod(b, g).first;
        c = divmod(d, g).first;
        d = subtract(c, derivative(b));
    }
    return out;
}

} // namespace

std::vector<double> real_roots_numeric(const std::vector<double> &coeffs, double imag_tol) {
    std::vector<double> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    std::vector<double> out;
    if (c.size() <= 1) return out;
    if (c.size() == 2) return {-c[0] / c[1]};
    Eigen::VectorXd v(static_cast<Eigen::Index>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
    solver.compute(v);
    for (const auto &r : solver.roots())
        if (std::abs(r.imag()) <= imag_tol * (1 + std::abs(r))) out.push_back(r.real());
    std::sort(out.begin(), out.end());
    return out;
}

RootCount real_roots(const Poly1 &p) {
    if (p.is_zero()) throw PreconditionError("real_roots of the zero polynomial");
    RootCount out;
    auto factors = squarefree(dense(p));
    for (std::size_t idx = 0; idx < factors.size(); ++idx) {
        const Dense &g = factors[idx];
        const int mult = static_cast<int>(idx) + 1;
        const int deg = static_cast<int>(g.size()) - 1;
        if (deg <= 0) continue;
        std::vector<double> gd;
        double scale = 0;
        for (const auto &c : g) scale = std::max(scale, std::abs(c.get_d()));
        for (const auto &c : g) gd.push_back(c.get_d() / scale);
        // squarefree: real roots are simple, so a loose imaginary tolerance is safe
        std::vector<double> roots = real_roots_numeric(gd, 1e-6);
        int real_count = 0;
        for (double r : roots) {
            RealRoot root;
            root.multiplicity = mult;
            // polish on the squarefree factor
            for (int it = 0; it < 3; ++it) {
                double f = 0, df = 0;
                for (std::size_t k = gd.size(); k-- > 0;) {
                    df = df * r + f;
                    f = f * r + gd[k];
                }
                if (df != 0) r -= f / df;
            }
            root.value = r;
            for (long den : {1000L, 1000000L}) {
                Rational q = rational_approximation(r, den);
                if (eval(g, q) == 0) {
                    root.exact = q;
                    root.value = q.get_d();
                    break;
                }
            }
            out.real.push_back(root);
            ++real_count;
        }
        out.nonreal += (deg - real_count) * mult;
    }
    std::sort(out.real.begin(), out.real.end(), [](const RealRoot &a, const RealRoot &b) { return a.value < b.value; });
    return out;
}

} // namespace germkit
