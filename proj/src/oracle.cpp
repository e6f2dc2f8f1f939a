#include "tvar/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "tvar/linalg.hpp"
#include "tvar/roots.hpp"

namespace tvar {

namespace {

std::string zvec_str(const ZVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ")";
    return os.str();
}

std::string qvec_str(const QVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rat_str(v[i]);
    os << ")";
    return os.str();
}

/** All nonzero lattice points with coordinates in [-box, box], (L1, lex) order. */
std::vector<ZVec> box_points(int rank, long box) {
    std::vector<ZVec> out;
    ZVec cur(rank, 0);
    auto rec = [&](auto&& self, int i) -> void {
        if (i == rank) {
            if (!zvec_is_zero(cur)) out.push_back(cur);
            return;
        }
        for (long c = -box; c <= box; ++c) {
            cur[i] = c;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::stable_sort(out.begin(), out.end(), [](const ZVec& a, const ZVec& b) {
        const long la = zvec_l1(a), lb = zvec_l1(b);
        if (la != lb) return la < lb;
        return a < b;
    });
    return out;
}

/** Minimal admissible ray-type coefficient for the root e: poles and zeros
 *  exactly balancing the per-point vertex minima of the divisor. */
SymExpr phi_min(const PolyDivisor& d, const ZVec& e) {
    std::map<Rat, long> fac;
    for (const PolyCoefficient& c : d.coefficients()) {
        const long a = rat_ceil(-c.shape.vertex_min(e));
        if (a != 0) fac[c.point] = a;
    }
    return SymExpr::monomial(d.rank(), Rat(1), fac, zvec_zero(d.rank()));
}

}  // namespace

OracleResult oracle_commutes(const Derivation& a, const Derivation& b,
                             const std::vector<SymExpr>& gens) {
    const PolyDivisor& d = divisor_of(a);
    if (d != divisor_of(b))
        throw std::invalid_argument("oracle_commutes: derivations act on different divisors");
    for (const SymExpr& g : gens) {
        std::string why;
        if (!in_algebra(d, g, &why))
            throw std::invalid_argument("oracle_commutes: test element " + g.str() +
                                        " is not in the graded algebra: " + why);
    }
    for (const SymExpr& g : gens) {
        SymExpr diff = apply(a, apply(b, g)) - apply(b, apply(a, g));
        if (!diff.is_zero()) {
            OracleResult r;
            r.commutes = false;
            r.witness_input = g;
            r.witness_output = std::move(diff);
            return r;
        }
    }
    return {};
}

std::vector<SymExpr> oracle_test_set(const PolyDivisor& d, long box) {
    const int rank = d.rank();
    std::vector<SymExpr> out;
    out.push_back(SymExpr::t_power(rank, Rat(0), 1));
    for (const Generator& g : find_generators(d, box)) out.push_back(generator_element(g));
    const Cone dual = d.sigma().dual();
    SpanBasis span(rank);
    for (const ZVec& m : box_points(rank, box)) {
        if (span.dim() == rank) break;
        if (!dual.contains(m)) continue;
        if (!span.insert(to_qvec(m))) continue;
        out.push_back(minimal_section(d, m) * SymExpr::chi(rank, m));
    }
    // The basis-weight sections frequently coincide with generators; keep one
    // copy of each element.
    std::vector<SymExpr> unique;
    for (SymExpr& g : out)
        if (std::find(unique.begin(), unique.end(), g) == unique.end())
            unique.push_back(std::move(g));
    return unique;
}

std::string derivation_str(const Derivation& D) {
    std::ostringstream os;
    if (is_vertical(D)) {
        const VerticalLND& v = as_vertical(D);
        os << "ray[e=" << zvec_str(v.e) << ", rho=" << zvec_str(v.rho)
           << ", phi=" << v.phi.str() << "]";
    } else {
        const HorizontalLND& h = as_horizontal(D);
        os << "line[e=" << zvec_str(h.e) << ", s=" << h.s
           << ", marked=" << rat_str(h.colored.marked_point) << ", v=";
        bool first = true;
        for (const auto& [z, v] : h.colored.chosen) {
            os << (first ? "" : " ") << rat_str(z) << ":" << qvec_str(v);
            first = false;
        }
        os << "]";
    }
    return os.str();
}

CrossCheckReport cross_check(const PolyDivisor& d, long box) {
    CrossCheckReport rep;
    rep.box = box;

    std::vector<Derivation> all;
    for (const DemazureRoot& r : demazure_roots_in_box(d.sigma(), box)) {
        const SymExpr base = phi_min(d, r.e);
        for (long k = 0; k <= 2; ++k)
            all.push_back(make_vertical(d, r.e, base * SymExpr::t_power(d.rank(), Rat(0), k)));
    }
    rep.verticals = static_cast<long>(all.size());
    for (const HorizontalFamily& fam : enumerate_horizontal(d, box))
        for (const HorizontalRoot& r : fam.roots)
            all.push_back(make_horizontal(fam.colored, r.e, r.s));
    rep.horizontals = static_cast<long>(all.size()) - rep.verticals;

    const std::vector<SymExpr> gens = oracle_test_set(d, box);
    for (size_t i = 0; i < all.size(); ++i) {
        for (size_t j = i; j < all.size(); ++j) {
            const PairVerdict crit = criterion(all[i], all[j]);
            const OracleResult orc = oracle_commutes(all[i], all[j], gens);
            switch (crit.tag) {
                case PairTag::VV:
                    ++rep.vv_pairs;
                    rep.vv_commuting += orc.commutes ? 1 : 0;
                    break;
                case PairTag::VH:
                    ++rep.vh_pairs;
                    rep.vh_commuting += orc.commutes ? 1 : 0;
                    break;
                case PairTag::HH:
                    ++rep.hh_pairs;
                    rep.hh_commuting += orc.commutes ? 1 : 0;
                    break;
            }
            if (crit.commutes != orc.commutes) {
                Disagreement dis;
                dis.pair_class = pair_tag_str(crit.tag);
                dis.first = derivation_str(all[i]);
                dis.second = derivation_str(all[j]);
                dis.criterion = crit.commutes;
                dis.oracle = orc.commutes;
                if (orc.witness_input) dis.witness_input = orc.witness_input->str();
                if (orc.witness_output) dis.witness_output = orc.witness_output->str();
                rep.disagreements.push_back(std::move(dis));
            }
        }
    }
    return rep;
}

bool lemma_ratfun_test(const std::vector<Rat>& points, const std::vector<Rat>& coeffs) {
    if (points.size() != coeffs.size())
        throw std::invalid_argument("lemma_ratfun_test: points/coeffs length mismatch");
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            if (points[i] == points[j])
                throw std::invalid_argument("lemma_ratfun_test: repeated points");

    // Numerator over the common denominator prod_k (t - z_k): the k-th term
    // contributes coeffs[k] * prod_{j != k} (t - z_j).
    SymExpr num = SymExpr::zero(1);
    for (size_t k = 0; k < points.size(); ++k) {
        if (coeffs[k] == Rat(0)) continue;
        std::map<Rat, long> fac;
        for (size_t j = 0; j < points.size(); ++j)
            if (j != k) fac[points[j]] += 1;
        num = num + SymExpr::monomial(1, coeffs[k], fac, zvec_zero(1));
    }
    return num.is_zero();
}

}  // namespace tvar
