#include "tvar/roots.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tvar {

namespace {

/** All integer vectors in [-box, box]^rank, plain lexicographic order. */
std::vector<ZVec> lex_box(int rank, long box) {
    std::vector<ZVec> out;
    ZVec cur(rank, -box);
    while (true) {
        out.push_back(cur);
        int i = rank - 1;
        while (i >= 0 && cur[i] == box) {
            cur[i] = -box;
            --i;
        }
        if (i < 0) break;
        ++cur[i];
    }
    return out;
}

/**
 * Scale a condition so its coefficient vector is primitive-integer (same
 * positive factor on both sides); equalities additionally get a positive
 * leading coefficient so they have one canonical form.
 */
LinCond normalize_cond(LinCond c) {
    int lead = -1;
    for (int i = 0; i < static_cast<int>(c.a.size()); ++i) {
        if (c.a[i] != 0) {
            lead = i;
            break;
        }
    }
    if (lead < 0) throw std::logic_error("normalize_cond: zero coefficient vector");
    ZVec prim = primitive(c.a);
    Rat lambda = Rat(prim[lead]) / c.a[lead];  // positive: primitive keeps direction
    for (auto& x : c.a) x *= lambda;
    c.b *= lambda;
    if (c.rel == LinCond::Rel::Eq && prim[lead] < 0) {
        for (auto& x : c.a) x = -x;
        c.b = -c.b;
    }
    return c;
}

bool same_cond(const LinCond& x, const LinCond& y) {
    return x.rel == y.rel && x.b == y.b && x.a == y.a;
}

/** Does the conjunction of sys force condition c over the rationals? */
bool cond_implied(const std::vector<LinCond>& sys, const LinCond& c, int nvars) {
    QVec neg(c.a.size());
    for (size_t i = 0; i < c.a.size(); ++i) neg[i] = -c.a[i];
    auto impossible = [&](const QVec& a, const Rat& b, LinCond::Rel rel) {
        std::vector<LinCond> s = sys;
        s.push_back(LinCond{a, b, rel});
        return !fm_feasible(s, nvars);
    };
    switch (c.rel) {
        case LinCond::Rel::Ge:
            return impossible(neg, -c.b, LinCond::Rel::Gt);  // a.x < b
        case LinCond::Rel::Gt:
            return impossible(neg, -c.b, LinCond::Rel::Ge);  // a.x <= b
        case LinCond::Rel::Eq:
            return impossible(c.a, c.b, LinCond::Rel::Gt) &&
                   impossible(neg, -c.b, LinCond::Rel::Gt);
    }
    return false;
}

/** One greedy pass dropping every condition implied by the others. */
std::vector<LinCond> irredundant(std::vector<LinCond> conds, int nvars) {
    size_t i = 0;
    while (i < conds.size()) {
        std::vector<LinCond> rest;
        rest.reserve(conds.size() - 1);
        for (size_t j = 0; j < conds.size(); ++j)
            if (j != i) rest.push_back(conds[j]);
        if (cond_implied(rest, conds[i], nvars))
            conds.erase(conds.begin() + static_cast<long>(i));
        else
            ++i;
    }
    return conds;
}

int qvec_cmp(const QVec& x, const QVec& y) {
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (x[i] < y[i]) return -1;
        if (x[i] > y[i]) return 1;
    }
    if (x.size() != y.size()) return x.size() < y.size() ? -1 : 1;
    return 0;
}

/** Equalities first (kept in order), then inequalities by descending coefficients. */
void sort_canonical(std::vector<LinCond>& conds) {
    std::stable_sort(conds.begin(), conds.end(), [](const LinCond& x, const LinCond& y) {
        bool xe = x.rel == LinCond::Rel::Eq;
        bool ye = y.rel == LinCond::Rel::Eq;
        if (xe != ye) return xe;
        if (xe) return false;  // equalities keep construction order
        int c = qvec_cmp(x.a, y.a);
        if (c != 0) return c > 0;
        return x.b > y.b;
    });
}

std::string var_name(int i, int rank) {
    if (i == rank) return "s";
    if (rank == 1) return "e";
    return std::string(1, static_cast<char>('a' + i));
}

std::string render_cond(const LinCond& c, int rank) {
    QVec a = c.a;
    Rat b = c.b;
    std::string op = c.rel == LinCond::Rel::Eq ? "=" : (c.rel == LinCond::Rel::Gt ? ">" : ">=");
    if (c.rel != LinCond::Rel::Eq) {
        int lead = -1;
        for (int i = 0; i < static_cast<int>(a.size()); ++i)
            if (a[i] != 0) {
                lead = i;
                break;
            }
        if (lead >= 0 && a[lead] < 0) {
            for (auto& x : a) x = -x;
            b = -b;
            op = c.rel == LinCond::Rel::Gt ? "<" : "<=";
        }
    }
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        if (a[i] == 0) continue;
        Rat mag = a[i] < 0 ? Rat(-a[i]) : a[i];
        if (first) {
            if (a[i] < 0) os << "-";
            first = false;
        } else {
            os << (a[i] < 0 ? " - " : " + ");
        }
        if (mag != 1) os << rat_str(mag);
        os << var_name(i, rank);
    }
    if (first) os << "0";
    os << " " << op << " " << rat_str(b);
    return os.str();
}

/** Build the admissibility system of a coloring over the variables (e, s). */
std::vector<LinCond> build_system(const ColoredDivisor& cd, const AssociatedCone& ac) {
    const QVec v0 = cd.vertex_at(cd.marked_point);
    std::vector<LinCond> conds;
    auto lifted = [&](const QVec& coeffs) {
        QVec a = coeffs;
        a.push_back(0);
        return a;
    };

    // The exponent s is pinned by the marked vertex: denom*<e, v0> + denom*s = -1.
    {
        LinCond c;
        c.a = qvec_scale(Rat(ac.denom), v0);
        c.a.push_back(ac.denom);
        c.b = -1;
        c.rel = LinCond::Rel::Eq;
        conds.push_back(normalize_cond(std::move(c)));
    }
    // e must pair nonnegatively with every ray of omega.
    for (const ZVec& r : ac.omega.rays()) {
        LinCond c;
        c.a = lifted(to_qvec(r));
        c.b = 0;
        c.rel = LinCond::Rel::Ge;
        conds.push_back(normalize_cond(std::move(c)));
    }
    // At the marked point the chosen vertex wins by 1/denom against the rest.
    const Polyhedron marked_coeff = cd.base.coefficient_at(cd.marked_point);
    for (const QVec& v : marked_coeff.vertices()) {
        if (v == v0) continue;
        LinCond c;
        c.a = lifted(qvec_scale(Rat(ac.denom), qvec_sub(v, v0)));
        c.b = 1;
        c.rel = LinCond::Rel::Ge;
        conds.push_back(normalize_cond(std::move(c)));
    }
    // Elsewhere the chosen vertex wins by 1.
    for (const Rat& z : cd.base.support()) {
        if (z == cd.marked_point) continue;
        const QVec vz = cd.vertex_at(z);
        const Polyhedron coeff = cd.base.coefficient_at(z);
        for (const QVec& v : coeff.vertices()) {
            if (v == vz) continue;
            LinCond c;
            c.a = lifted(qvec_sub(v, vz));
            c.b = 1;
            c.rel = LinCond::Rel::Ge;
            conds.push_back(normalize_cond(std::move(c)));
        }
    }

    std::vector<LinCond> dedup;
    for (const auto& c : conds) {
        bool seen = false;
        for (const auto& k : dedup)
            if (same_cond(c, k)) {
                seen = true;
                break;
            }
        if (!seen) dedup.push_back(c);
    }
    return dedup;
}

}  // namespace

std::optional<ZVec> demazure_ray(const Cone& c, const ZVec& e) {
    if (static_cast<int>(e.size()) != c.rank())
        throw std::invalid_argument("demazure_ray: dimension mismatch");
    std::optional<ZVec> hit;
    for (const ZVec& r : c.rays()) {
        long v = pairing(e, r);
        if (v == -1) {
            if (hit) return std::nullopt;  // a second ray at level -1
            hit = r;
        } else if (v < 0) {
            return std::nullopt;
        }
    }
    return hit;
}

bool is_demazure_root(const Cone& c, const ZVec& e) { return demazure_ray(c, e).has_value(); }

std::vector<DemazureRoot> demazure_roots_in_box(const Cone& c, long box) {
    if (box < 0) throw std::invalid_argument("demazure_roots_in_box: negative box");
    std::vector<DemazureRoot> out;
    for (const ZVec& e : lex_box(c.rank(), box)) {
        if (auto r = demazure_ray(c, e)) out.push_back(DemazureRoot{e, *r});
    }
    return out;
}

AssociatedCone associated_cone(const ColoredDivisor& cd) {
    const int rank = cd.rank();
    const QVec v_deg = cd.degree_vertex();
    const Polyhedron deg = cd.base.degree();
    std::vector<QVec> gens;
    for (const QVec& u : deg.vertices()) gens.push_back(qvec_sub(u, v_deg));
    for (const ZVec& r : cd.base.sigma().rays()) gens.push_back(to_qvec(r));
    Cone omega(rank, gens);

    const QVec v0 = cd.vertex_at(cd.marked_point);
    long d = 1;
    for (const Rat& x : v0) d = std::lcm(d, rat_denominator(x));
    ZVec rho_hat = to_zvec(qvec_scale(Rat(d), v0));
    rho_hat.push_back(d);

    std::vector<QVec> lifted;
    for (const ZVec& r : omega.rays()) {
        QVec g = to_qvec(r);
        g.push_back(0);
        lifted.push_back(g);
    }
    lifted.push_back(to_qvec(rho_hat));
    Cone omega_hat(rank + 1, lifted);
    return AssociatedCone{std::move(omega), std::move(omega_hat), d, std::move(rho_hat)};
}

bool is_coherent_pair(const ColoredDivisor& cd, const ZVec& e, long s,
                      std::vector<std::string>* why) {
    if (static_cast<int>(e.size()) != cd.rank())
        throw std::invalid_argument("is_coherent_pair: weight rank mismatch");
    const AssociatedCone ac = associated_cone(cd);
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        ok = false;
        if (why) why->push_back(msg);
    };

    ZVec pair = e;
    pair.push_back(s);
    auto ray = demazure_ray(ac.omega_hat, pair);
    if (!ray || *ray != ac.rho_hat)
        fail("(e, s) is not a root of the associated cone at the distinguished ray");

    const Rat d(ac.denom);
    const QVec v0 = cd.vertex_at(cd.marked_point);
    const Rat v0e = cd.vertex_value(cd.marked_point, e);
    const Polyhedron marked_coeff = cd.base.coefficient_at(cd.marked_point);
    for (const QVec& v : marked_coeff.vertices()) {
        if (v == v0) continue;
        Rat lhs = pairing(e, v);
        if (d * lhs < 1 + d * v0e) {
            std::ostringstream os;
            os << "marked-point inequality fails at vertex (";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
            os << ")";
            fail(os.str());
        }
    }
    for (const Rat& z : cd.base.support()) {
        if (z == cd.marked_point) continue;
        const Rat vze = cd.vertex_value(z, e);
        const Polyhedron coeff = cd.base.coefficient_at(z);
        for (const QVec& v : coeff.vertices()) {
            if (v == cd.vertex_at(z)) continue;
            Rat lhs = pairing(e, v);
            if (lhs < 1 + vze) {
                std::ostringstream os;
                os << "vertex inequality fails at z = " << rat_str(z) << ", vertex (";
                for (size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
                os << ")";
                fail(os.str());
            }
        }
    }
    return ok;
}

std::vector<HorizontalFamily> enumerate_horizontal(const PolyDivisor& d, long box) {
    if (box < 0) throw std::invalid_argument("enumerate_horizontal: negative box");
    std::vector<HorizontalFamily> out;
    for (const ColoredDivisor& cd : enumerate_colorings(d)) {
        AssociatedCone ac = associated_cone(cd);
        std::vector<LinCond> full = build_system(cd, ac);
        std::vector<LinCond> minimal = irredundant(full, cd.rank() + 1);
        sort_canonical(minimal);
        std::vector<std::string> lines = render_system(minimal, cd.rank());

        std::vector<HorizontalRoot> roots;
        const Rat dd(ac.denom);
        for (const ZVec& e : lex_box(cd.rank(), box)) {
            Rat s_rat = Rat(-1) / dd - cd.vertex_value(cd.marked_point, e);
            if (!rat_is_integer(s_rat)) continue;
            long s = rat_to_long(s_rat);
            if (is_coherent_pair(cd, e, s)) roots.push_back(HorizontalRoot{e, s});
        }
        out.push_back(HorizontalFamily{cd, std::move(ac), std::move(full), std::move(minimal),
                                       std::move(lines), std::move(roots)});
    }
    return out;
}

std::vector<std::string> render_system(const std::vector<LinCond>& conds, int rank) {
    std::vector<std::string> out;
    out.reserve(conds.size());
    for (const auto& c : conds) out.push_back(render_cond(c, rank));
    return out;
}

}  // namespace tvar
