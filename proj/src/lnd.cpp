#include "tvar/lnd.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tvar {

namespace {

bool weight_zero_only(const SymExpr& x) {
    for (const SymTerm& t : x.terms())
        if (!zvec_is_zero(t.weight)) return false;
    return true;
}

/** Union of the divisor support and the points tracked by a weight part. */
std::vector<Rat> relevant_points(const PolyDivisor& d,
                                 const std::map<Rat, long>& exponents) {
    std::vector<Rat> pts = d.support();
    for (const auto& [z, a] : exponents) {
        (void)a;
        if (std::find(pts.begin(), pts.end(), z) == pts.end()) pts.push_back(z);
    }
    return pts;
}

/** Conjugation through a shift record: factors[z] += sign * <m, w_z> per term. */
SymExpr conjugate(const SymExpr& x, const ShiftFamily& shift, long sign) {
    std::vector<SymTerm> out;
    for (SymTerm t : x.terms()) {
        for (const auto& [z, w] : shift.shifts) {
            long delta = sign * pairing(t.weight, w);
            if (delta != 0) t.factors[z] += delta;
        }
        out.push_back(std::move(t));
    }
    return SymExpr(x.rank(), std::move(out));
}

}  // namespace

Derivation make_vertical(const PolyDivisor& d, const ZVec& e, const SymExpr& phi) {
    if (static_cast<int>(e.size()) != d.rank())
        throw std::invalid_argument("make_vertical: weight rank mismatch");
    if (phi.rank() != d.rank())
        throw std::invalid_argument("make_vertical: coefficient rank mismatch");
    auto rho = demazure_ray(d.sigma(), e);
    if (!rho) throw std::invalid_argument("make_vertical: weight is not a root of the tail cone");
    std::string why;
    if (!in_phi(d, e, phi, &why))
        throw std::invalid_argument("make_vertical: inadmissible coefficient: " + why);
    return Derivation{VerticalLND{d, e, *rho, phi}};
}

Derivation make_horizontal(const ColoredDivisor& cd, const ZVec& e, long s) {
    std::vector<std::string> why;
    if (!is_coherent_pair(cd, e, s, &why)) {
        std::ostringstream os;
        os << "make_horizontal: pair (e, s) is not admissible";
        for (const auto& w : why) os << "; " << w;
        throw std::invalid_argument(os.str());
    }
    const AssociatedCone ac = associated_cone(cd);

    std::map<Rat, ZVec> shifts;
    for (const Rat& z : cd.base.support()) {
        if (z == cd.marked_point) continue;
        ZVec w = to_zvec(cd.vertex_at(z));
        if (!zvec_is_zero(w)) shifts[z] = w;
    }
    auto [shifted_base, record] = shift_divisor(cd.base, shifts);

    std::map<Rat, QVec> chosen;
    for (const Rat& z : shifted_base.support())
        chosen[z] = z == cd.marked_point ? cd.vertex_at(cd.marked_point)
                                         : qvec_zero(cd.rank());
    if (!chosen.count(cd.marked_point) &&
        !qvec_is_zero(cd.vertex_at(cd.marked_point)))
        throw std::logic_error("make_horizontal: marked coefficient became trivial");
    ColoredDivisor normalized = make_colored(shifted_base, chosen, cd.marked_point);

    return Derivation{HorizontalLND{cd, e, s, ac.denom, std::move(record), std::move(normalized)}};
}

bool is_vertical(const Derivation& D) {
    return std::holds_alternative<VerticalLND>(D.node);
}

const VerticalLND& as_vertical(const Derivation& D) {
    return std::get<VerticalLND>(D.node);
}

const HorizontalLND& as_horizontal(const Derivation& D) {
    return std::get<HorizontalLND>(D.node);
}

const PolyDivisor& divisor_of(const Derivation& D) {
    if (auto* v = std::get_if<VerticalLND>(&D.node)) return v->base;
    return as_horizontal(D).colored.base;
}

ZVec degree_of(const Derivation& D) {
    if (auto* v = std::get_if<VerticalLND>(&D.node)) return v->e;
    return as_horizontal(D).e;
}

bool in_phi(const PolyDivisor& d, const ZVec& e, const SymExpr& phi, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (phi.is_zero()) return fail("coefficient is zero");
    if (!weight_zero_only(phi)) return fail("coefficient must have weight zero");
    const SymExpr::WeightPart part = phi.weight_part(zvec_zero(d.rank()));
    for (const Rat& z : relevant_points(d, part.exponents)) {
        const Rat h = d.coefficient_at(z).vertex_min(e);
        const long ord = phi.ord_at(zvec_zero(d.rank()), z);
        if (Rat(ord) + h < 0) {
            std::ostringstream os;
            os << "divisor bound violated at z = " << rat_str(z) << " (ord " << ord
               << ", bound " << rat_str(-h) << ")";
            return fail(os.str());
        }
    }
    return true;
}

bool in_algebra(const PolyDivisor& d, const SymExpr& x, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    const Cone dual = d.sigma().dual();
    for (const ZVec& m : x.weights()) {
        if (!dual.contains(to_qvec(m))) {
            std::ostringstream os;
            os << "weight (";
            for (size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m[i];
            os << ") outside the dual of the tail cone";
            return fail(os.str());
        }
        QDivisor h = evaluate(d, m);
        const SymExpr::WeightPart part = x.weight_part(m);
        for (const Rat& z : relevant_points(d, part.exponents)) {
            const Rat hz = h.count(z) ? h.at(z) : Rat(0);
            const long ord = x.ord_at(m, z);
            if (Rat(ord) + hz < 0) {
                std::ostringstream os;
                os << "component at weight (";
                for (size_t i = 0; i < m.size(); ++i) os << (i ? ", " : "") << m[i];
                os << ") violates the bound at z = " << rat_str(z);
                return fail(os.str());
            }
        }
    }
    return true;
}

SymExpr apply_vertical(const VerticalLND& D, const SymExpr& x) {
    std::vector<SymTerm> out;
    for (const SymTerm& t : x.terms()) {
        long c = pairing(t.weight, D.rho);
        if (c == 0) continue;
        out.push_back(SymTerm{t.coeff * c, t.factors, zvec_add(t.weight, D.e)});
    }
    return SymExpr(x.rank(), std::move(out)) * D.phi;
}

SymExpr apply_horizontal(const HorizontalLND& D, const SymExpr& x) {
    const Rat z0 = D.normalized.marked_point;
    std::vector<SymTerm> out;
    for (const SymTerm& t : x.terms()) {
        const ZVec mw = zvec_add(t.weight, D.e);
        const Rat v0m = D.normalized.vertex_value(z0, t.weight);
        std::map<Rat, long> base = t.factors;
        base[z0] += D.s;
        if (v0m != 0) out.push_back(SymTerm{t.coeff * D.denom * v0m, base, mw});
        for (const auto& [z, a] : t.factors) {
            if (a == 0) continue;
            std::map<Rat, long> f = base;
            f[z] -= 1;
            f[z0] += 1;
            out.push_back(SymTerm{t.coeff * D.denom * a, std::move(f), mw});
        }
    }
    return SymExpr(x.rank(), std::move(out));
}

SymExpr apply(const Derivation& D, const SymExpr& x) {
    if (auto* v = std::get_if<VerticalLND>(&D.node)) return apply_vertical(*v, x);
    const HorizontalLND& h = as_horizontal(D);
    if (h.shift.shifts.empty()) return apply_horizontal(h, x);
    return conjugate(apply_horizontal(h, conjugate(x, h.shift, 1)), h.shift, -1);
}

SymExpr alpha(int rank, const std::map<Rat, ZVec>& shifts, const ZVec& m) {
    std::vector<SymTerm> terms;
    for (const auto& [z, w] : shifts) {
        if (z == 0) continue;
        long c = pairing(m, w);
        if (c == 0) continue;
        terms.push_back(SymTerm{Rat(-c), {{Rat(0), 1}, {z, -1}}, zvec_zero(rank)});
    }
    return SymExpr(rank, std::move(terms));
}

SymExpr alpha_prime(int rank, const std::map<Rat, ZVec>& shifts, const ZVec& m) {
    return alpha(rank, shifts, m).derivative_t();
}

long nilpotency_degree(const Derivation& D, const SymExpr& x, long cap) {
    std::string why;
    if (!in_algebra(divisor_of(D), x, &why))
        throw std::invalid_argument("nilpotency_degree: " + why);
    SymExpr y = x;
    long n = 0;
    while (!y.is_zero()) {
        if (n >= cap) throw std::runtime_error("nilpotency cap exceeded");
        y = tvar::apply(D, y);
        ++n;
    }
    return n;
}

SymExpr exponentiate(const Derivation& D, const Rat& lambda, const SymExpr& x, long cap) {
    SymExpr acc = x;
    SymExpr power = x;
    Rat coeff(1);
    for (long k = 1; !power.is_zero(); ++k) {
        if (k > cap) throw std::runtime_error("exponentiation cap exceeded");
        power = tvar::apply(D, power);
        if (power.is_zero()) break;
        coeff *= lambda;
        coeff /= k;
        acc = acc + power.scaled(coeff);
    }
    return acc;
}

bool in_kernel_lattice(const HorizontalLND& D, const ZVec& m) {
    return rat_is_integer(D.colored.vertex_value(D.colored.marked_point, m));
}

bool kernel_membership(const Derivation& D, const SymExpr& x) {
    if (auto* v = std::get_if<VerticalLND>(&D.node)) {
        for (const SymTerm& t : x.terms())
            if (pairing(t.weight, v->rho) != 0) return false;
        return true;
    }
    const HorizontalLND& h = as_horizontal(D);
    const AssociatedCone ac = associated_cone(h.colored);
    const Rat z0 = h.colored.marked_point;
    for (const ZVec& m : x.weights()) {
        if (!in_kernel_lattice(h, m)) return false;
        bool in_dual = true;
        for (const ZVec& r : ac.omega.rays())
            if (pairing(m, r) < 0) in_dual = false;
        if (!in_dual) return false;
        // The component must be a scalar multiple of the canonical monomial
        // q^{-<m,v0>} * prod_{z != z0} (t-z)^{-<m,v_z>} * chi^m.
        std::map<Rat, long> canon;
        const Rat v0m = h.colored.vertex_value(z0, m);
        if (v0m != 0) canon[z0] = -rat_to_long(v0m);
        for (const Rat& z : h.colored.base.support()) {
            if (z == z0) continue;
            const Rat vzm = h.colored.vertex_value(z, m);
            if (vzm != 0) canon[z] -= rat_to_long(vzm);
        }
        const SymExpr::WeightPart part = x.weight_part(m);
        if (polyq::degree(part.numerator) != 0) return false;
        std::map<Rat, long> expo = part.exponents;
        for (auto it = expo.begin(); it != expo.end();)
            it = it->second == 0 ? expo.erase(it) : std::next(it);
        if (expo != canon) return false;
    }
    return true;
}

}  // namespace tvar
