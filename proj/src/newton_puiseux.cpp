#include "germkit/puiseux.hpp"
#include "germkit/roots.hpp"

#include <cmath>

namespace germkit {

std::string PuiseuxBranch::to_string() const {
    if (!real)
        return "nonreal branch x ~ y^" + germkit::to_string(nonreal_exponent) + " (multiplicity " + std::to_string(multiplicity) + ")";
    std::string s = "x = " + x.to_string() + ", y = " + y.to_string();
    s += " [ramification " + std::to_string(ramification) + ", multiplicity " + std::to_string(multiplicity);
    if (closed) s += ", closed";
    if (precision_loss) s += ", float";
    return s + "]";
}

namespace {

int sign_power(int sign, long e) { return (sign < 0 && (e % 2 != 0)) ? -1 : 1; }

/// x = x_known(t) + lead t^lead_exp X, y = sigma t^K, and g(X, t) = p(x, y) up to a power of t.
struct Node {
    Poly2 g;
    Poly1 x_known;
    Rational lead = 1;
    long lead_exp = 0;
    long K = 1;
    int sigma = 1;
};

struct Edge {
    long il, jl, ir, jr;
};

class Solver {
  public:
    explicit Solver(int order) : order_(order) {}

    void run(Node n) {
        if (n.g.is_zero()) return;
        int a = n.g.degree_in(0);
        for (const auto &[e, c] : n.g.terms()) a = std::min(a, e[0]);
        if (a > 0) {
            emit(n, PuiseuxSeries::from_poly(n.x_known), true, a);
            Poly2 h;
            for (const auto &[e, c] : n.g.terms()) h.add_term({e[0] - a, e[1]}, c);
            n.g = std::move(h);
        }
        for (const Edge &edge : edges(n.g)) handle_edge(n, edge);
    }

    std::vector<PuiseuxBranch> real, nonreal;

  private:
    static std::vector<Edge> edges(const Poly2 &g) {
        std::map<long, long> lowest;
        for (const auto &[e, c] : g.terms()) {
            auto [it, inserted] = lowest.try_emplace(e[0], e[1]);
            if (!inserted) it->second = std::min<long>(it->second, e[1]);
        }
        std::vector<std::pair<long, long>> hull;
        for (const auto &pt : lowest) {
            while (hull.size() >= 2) {
                const auto &o = hull[hull.size() - 2], &m = hull.back();
                long cross = (m.first - o.first) * (pt.second - o.second) - (m.second - o.second) * (pt.first - o.first);
                if (cross > 0) break;
                hull.pop_back();
            }
            hull.push_back(pt);
        }
        std::vector<Edge> out;
        for (std::size_t i = 1; i < hull.size(); ++i) {
            if (hull[i].second >= hull[i - 1].second) break;
            out.push_back({hull[i - 1].first, hull[i - 1].second, hull[i].first, hull[i].second});
        }
        return out;
    }

    PuiseuxBranch base(const Node &n) const {
        PuiseuxBranch b;
        b.y = PuiseuxSeries::monomial(Coeff(n.sigma), Rational(n.K));
        b.ramification = static_cast<int>(n.K);
        b.sigma = n.sigma;
        return b;
    }

    void emit(const Node &n, PuiseuxSeries x, bool closed, int multiplicity, bool precision_loss = false) {
        PuiseuxBranch b = base(n);
        b.x = std::move(x);
        b.closed = closed;
        b.multiplicity = multiplicity;
        b.precision_loss = precision_loss;
        real.push_back(std::move(b));
    }

    void handle_edge(const Node &n, const Edge &edge) {
        const Rational gamma = make_rational(edge.jl - edge.jr, edge.ir - edge.il);
        const long m = gamma.get_num().get_si(), k = gamma.get_den().get_si();
        const long v = m * edge.il + k * edge.jl;
        const bool beyond = Rational(n.lead_exp) + gamma > Rational(order_ * n.K);
        const std::vector<int> signs = k % 2 == 0 ? std::vector<int>{1, -1} : std::vector<int>{1};
        int beyond_real = 0;
        for (int s : signs) {
            Poly1 phi;
            for (const auto &[e, c] : n.g.terms())
                if (m * e[0] + k * e[1] == v) phi.add_term({e[0] - static_cast<int>(edge.il)}, c * sign_power(s, e[1]));
            RootCount roots = real_roots(phi);
            if (roots.nonreal > 0) {
                PuiseuxBranch b;
                b.real = false;
                b.multiplicity = roots.nonreal;
                b.nonreal_exponent = (Rational(n.lead_exp) + gamma) / n.K;
                nonreal.push_back(b);
            }
            for (const RealRoot &r : roots.real) {
                if (k % 2 == 0 && r.value < 0) continue; // t -> -t gives the same branch
                if (beyond) {
                    beyond_real += r.multiplicity;
                    continue;
                }
                if (r.exact)
                    descend(n, m, k, v, s, *r.exact);
                else
                    continue_float(n, m, k, v, s, r.value, r.multiplicity);
            }
        }
        if (beyond && beyond_real > 0) emit(n, PuiseuxSeries::from_poly(n.x_known, Rational(n.lead_exp) + gamma), false, beyond_real);
    }

    Node child(const Node &n, long m, long k, int s, const Coeff &c, Poly1 *lead_term_exact) const {
        Node ch;
        ch.x_known = n.x_known.compose<1>({Poly1::monomial({static_cast<int>(k)}, s)});
        ch.lead = n.lead * sign_power(s, n.lead_exp);
        ch.lead_exp = k * n.lead_exp + m;
        ch.K = k * n.K;
        ch.sigma = n.sigma * sign_power(s, n.K);
        if (lead_term_exact && c.is_exact()) *lead_term_exact = Poly1::monomial({static_cast<int>(ch.lead_exp)}, ch.lead * c.rational());
        return ch;
    }

    void descend(const Node &n, long m, long k, long v, int s, const Rational &c) {
        Poly1 term;
        Node ch = child(n, m, k, s, Coeff(c), &term);
        ch.x_known += term;
        Poly2 sub_x = Poly2::monomial({0, static_cast<int>(m)}, c) + Poly2::monomial({1, static_cast<int>(m)});
        Poly2 sub_t = Poly2::monomial({0, static_cast<int>(k)}, s);
        Poly2 h = n.g.compose<2>({sub_x, sub_t});
        for (const auto &[e, coef] : h.terms()) ch.g.add_term({e[0], e[1] - static_cast<int>(v)}, coef);
        run(std::move(ch));
    }

    /// Irrational root c: the rest of the branch in floats.
    void continue_float(const Node &n, long m, long k, long v, int s, double c, int multiplicity) {
        Node ch = child(n, m, k, s, Coeff::approx(c), nullptr);
        const long emax = order_ * ch.K;
        PuiseuxSeries x = PuiseuxSeries::from_poly(ch.x_known);
        const double lead = ch.lead.get_d();
        if (multiplicity > 1) {
            x = x + PuiseuxSeries::monomial(Coeff::approx(lead * c), Rational(ch.lead_exp));
            x.set_order(Rational(ch.lead_exp) + make_rational(1, multiplicity));
            emit(ch, std::move(x), false, multiplicity, true);
            return;
        }
        // g'(X', tau) = g(tau^m (c + X'), s tau^k) / tau^v, dense in tau up to degree d
        const long d = std::max(0L, emax - ch.lead_exp);
        const int deg = n.g.degree_in(0);
        std::vector<std::vector<double>> gp(static_cast<std::size_t>(deg) + 1, std::vector<double>(static_cast<std::size_t>(d) + 1, 0.0));
        for (const auto &[e, coef] : n.g.terms()) {
            long shift = m * e[0] + k * e[1] - v;
            if (shift > d) continue;
            double base = coef.get_d() * sign_power(s, e[1]);
            double binom = 1;
            for (int l = 0; l <= e[0]; ++l) {
                gp[static_cast<std::size_t>(l)][static_cast<std::size_t>(shift)] += base * binom * std::pow(c, e[0] - l);
                binom = binom * (e[0] - l) / (l + 1);
            }
        }
        const double slope = gp.size() > 1 ? gp[1][0] : 0.0;
        std::vector<double> tail(static_cast<std::size_t>(d) + 1, 0.0);
        if (slope != 0) {
            for (long it = 0; it < d; ++it) {
                // residual g'(tail, tau) mod tau^{d+1}
                std::vector<double> res(tail.size(), 0.0), power(tail.size(), 0.0);
                power[0] = 1;
                for (std::size_t l = 0; l < gp.size(); ++l) {
                    for (std::size_t a = 0; a < power.size(); ++a)
                        for (std::size_t b = 0; a + b < res.size(); ++b) res[a + b] += power[a] * gp[l][b];
                    std::vector<double> next(tail.size(), 0.0);
                    for (std::size_t a = 0; a < power.size(); ++a)
                        for (std::size_t b = 1; a + b < next.size(); ++b) next[a + b] += power[a] * tail[b];
                    power = std::move(next);
                }
                for (std::size_t j = 1; j < tail.size(); ++j) tail[j] -= res[j] / slope;
            }
        }
        x = x + PuiseuxSeries::monomial(Coeff::approx(lead * c), Rational(ch.lead_exp));
        for (std::size_t j = 1; j < tail.size(); ++j) x.add_term(Rational(ch.lead_exp + static_cast<long>(j)), Coeff::approx(lead * tail[j]));
        x.set_order(Rational(emax + 1));
        emit(ch, std::move(x), false, 1, true);
    }

    long order_;
};

Poly2 swapped(const Poly2 &p) {
    Poly2 q;
    for (const auto &[e, c] : p.terms()) q.add_term({e[1], e[0]}, c);
    return q;
}

} // namespace

std::vector<PuiseuxBranch> newton_puiseux(const Poly2 &p_in, int order, Orientation orientation) {
    if (p_in.is_zero()) throw PreconditionError("newton_puiseux of the zero polynomial");
    if (p_in.constant_term() != 0) throw PreconditionError("curve does not pass through the origin");
    if (order < 1) throw PreconditionError("expansion order must be positive");
    Poly2 p = orientation == Orientation::XOfY ? p_in : swapped(p_in);

    Solver solver(order);
    int b = p.degree_in(1);
    for (const auto &[e, c] : p.terms()) b = std::min(b, e[1]);
    std::vector<PuiseuxBranch> axis;
    if (b > 0) {
        // the curve contains y = 0
        PuiseuxBranch br;
        br.orientation = Orientation::YOfX;
        br.x = PuiseuxSeries::monomial(Coeff(1), 1);
        br.y = PuiseuxSeries();
        br.multiplicity = b;
        br.closed = true;
        axis.push_back(br);
        Poly2 q;
        for (const auto &[e, c] : p.terms()) q.add_term({e[0], e[1] - b}, c);
        p = std::move(q);
    }
    Node root;
    root.g = p;
    root.x_known = Poly1();
    solver.run(std::move(root));

    std::vector<PuiseuxBranch> out = std::move(axis);
    for (auto &br : solver.real) out.push_back(std::move(br));
    for (auto &br : solver.nonreal) out.push_back(std::move(br));
    if (orientation == Orientation::YOfX) {
        for (auto &br : out) {
            std::swap(br.x, br.y);
            br.orientation = br.orientation == Orientation::XOfY ? Orientation::YOfX : Orientation::XOfY;
        }
    }
    return out;
}

std::array<std::array<PuiseuxSeries, 2>, 2> half_branches(const PuiseuxBranch &b) {
    if (!b.real) throw PreconditionError("half-branches of a nonreal branch");
    return {{{b.x, b.y}, {b.x.reflected(), b.y.reflected()}}};
}

} // namespace germkit
