#include "tvar/pdivisor.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tvar/linalg.hpp"

namespace tvar {

PolyDivisor::PolyDivisor(Cone sigma, std::vector<PolyCoefficient> coefficients)
    : sigma_(std::move(sigma)), coeffs_(std::move(coefficients)) {
    for (const PolyCoefficient& c : coeffs_)
        if (c.shape.rank() != sigma_.rank())
            throw std::invalid_argument("coefficient rank differs from sigma rank");
    std::sort(coeffs_.begin(), coeffs_.end(),
              [](const PolyCoefficient& a, const PolyCoefficient& b) { return a.point < b.point; });
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i - 1].point == coeffs_[i].point)
            throw std::invalid_argument("duplicate coefficient point " + rat_str(coeffs_[i].point));
    if (sigma_.is_pointed()) {
        Polyhedron trivial = Polyhedron::trivial(sigma_);
        coeffs_.erase(std::remove_if(coeffs_.begin(), coeffs_.end(),
                                     [&](const PolyCoefficient& c) { return c.shape == trivial; }),
                      coeffs_.end());
    }
}

Polyhedron PolyDivisor::coefficient_at(const Rat& z) const {
    for (const PolyCoefficient& c : coeffs_)
        if (c.point == z) return c.shape;
    return Polyhedron::trivial(sigma_);
}

std::vector<Rat> PolyDivisor::support() const {
    std::vector<Rat> out;
    for (const PolyCoefficient& c : coeffs_) out.push_back(c.point);
    return out;
}

Polyhedron PolyDivisor::degree() const {
    Polyhedron acc = Polyhedron::trivial(sigma_);
    for (const PolyCoefficient& c : coeffs_) acc = acc.minkowski_sum(c.shape);
    return acc;
}

bool PolyDivisor::operator==(const PolyDivisor& o) const {
    if (sigma_ != o.sigma_ || coeffs_.size() != o.coeffs_.size()) return false;
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        if (coeffs_[i].point != o.coeffs_[i].point || !(coeffs_[i].shape == o.coeffs_[i].shape))
            return false;
    return true;
}

QDivisor evaluate(const PolyDivisor& d, const ZVec& m) {
    if (!d.sigma().dual().contains(to_qvec(m)))
        throw std::runtime_error("weight outside the dual cone: evaluation unbounded");
    QDivisor out;
    for (const PolyCoefficient& c : d.coefficients()) out[c.point] = c.shape.support_eval(m);
    return out;
}

ValidationReport check_proper(const PolyDivisor& d) {
    ValidationReport r;
    if (!d.sigma().is_pointed()) {
        r.ok = false;
        r.issues.push_back("sigma is not pointed");
    }
    for (const PolyCoefficient& c : d.coefficients())
        if (c.shape.recession() != d.sigma()) {
            r.ok = false;
            r.issues.push_back("coefficient at z=" + rat_str(c.point) +
                               " has tail cone different from sigma");
        }
    return r;
}

std::map<Rat, long> minimal_section_exponents(const PolyDivisor& d, const ZVec& m) {
    QDivisor values = evaluate(d, m);
    std::map<Rat, long> out;
    for (const auto& [z, h] : values) out[z] = rat_ceil(-h);
    return out;
}

SymExpr minimal_section(const PolyDivisor& d, const ZVec& m) {
    std::map<Rat, long> fac;
    for (const auto& [z, a] : minimal_section_exponents(d, m))
        if (a != 0) fac[z] = a;
    return SymExpr::monomial(d.rank(), Rat(1), fac, zvec_zero(d.rank()));
}

std::vector<SymExpr> weight_space_basis(const PolyDivisor& d, const ZVec& m, long deg_bound) {
    SymExpr fmin = minimal_section(d, m);
    std::vector<SymExpr> out;
    for (long k = 0; k <= deg_bound; ++k)
        out.push_back(fmin * SymExpr::t_power(d.rank(), Rat(0), k));
    return out;
}

SymExpr generator_element(const Generator& g) {
    return g.f * SymExpr::chi(static_cast<int>(g.weight.size()), g.weight);
}

namespace {

using FactorMap = std::map<Rat, long>;

long total_degree(const FactorMap& fac) {
    long s = 0;
    for (const auto& [z, a] : fac) s += a;
    return s;
}

FactorMap factor_map_of(const SymExpr& f) {
    if (f.terms().size() != 1)
        throw std::invalid_argument("expected a single-term function part");
    return f.terms().front().factors;
}

void factor_add(FactorMap& fac, const FactorMap& inc, long mult) {
    for (const auto& [z, a] : inc) {
        long& e = fac[z];
        e += a * mult;
        if (e == 0) fac.erase(z);
    }
}

/** Expand prod (t-z)^{a_z}; all exponents must be non-negative. */
polyq::Poly expand_factors(const FactorMap& fac) {
    polyq::Poly p = {Rat(1)};
    for (const auto& [z, a] : fac) {
        if (a < 0) throw std::runtime_error("internal: negative exponent while expanding");
        p = polyq::mul(p, polyq::power_linear(z, a));
    }
    return p;
}

/** fac - base, dropping zero entries. */
FactorMap factor_quotient(const FactorMap& fac, const std::map<Rat, long>& base) {
    FactorMap out = fac;
    for (const auto& [z, a] : base) {
        long& e = out[z];
        e -= a;
        if (e == 0) out.erase(z);
    }
    return out;
}

std::vector<ZVec> dual_axes(int dim) {
    std::vector<ZVec> out;
    for (int i = 0; i < dim; ++i)
        for (int s : {1, -1}) {
            ZVec e = zvec_zero(dim);
            e[i] = s;
            out.push_back(std::move(e));
        }
    std::sort(out.begin(), out.end());
    return out;
}

/**
 * One double-description step: intersect the cone generated by `rays` with the
 * halfspace <g, .> >= 0.  No adjacency filtering; redundant rays are harmless
 * for the membership tests these sets are used for.
 */
std::vector<ZVec> dual_cut(const std::vector<ZVec>& rays, const ZVec& g) {
    std::vector<ZVec> keep, pos, neg;
    for (const ZVec& r : rays) {
        long s = pairing(r, g);
        if (s >= 0) keep.push_back(r);
        if (s > 0) pos.push_back(r);
        if (s < 0) neg.push_back(r);
    }
    for (const ZVec& p : pos)
        for (const ZVec& n : neg) {
            ZVec comb = zvec_sub(zvec_scale(pairing(p, g), n), zvec_scale(pairing(n, g), p));
            if (!zvec_is_zero(comb)) keep.push_back(primitive(comb));
        }
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    return keep;
}

bool dual_admits(const std::vector<ZVec>& dual_rays, const ZVec& v) {
    for (const ZVec& r : dual_rays)
        if (pairing(v, r) < 0) return false;
    return true;
}

/**
 * Enumerates generator-power products of a fixed weight.  Exponent vectors of
 * generators with a nontrivial function part are walked depth-first under a
 * total-degree budget; generators that are plain characters only need an
 * existence check for an integer completion of the residual weight.  Residuals
 * are pruned against precomputed dual rays of the rational relaxation cones.
 */
struct ProductEnum {
    struct FEntry {
        ZVec w;
        FactorMap fac;
        long tdeg = 0;
    };
    int rank = 0;
    std::vector<FEntry> fents;
    std::vector<ZVec> chars;
    long budget = 0;
    long amax = 8;       // exponent cap for factored generators of non-positive degree
    long amax_char = 32; // exponent cap for character completions (near-forced, so generous)
    std::vector<std::vector<ZVec>> sdual;  // completion cones over (weight, degree slack)
    std::vector<std::vector<ZVec>> cdual;  // character-only completion cones
    bool stop = false;
    std::function<void(const FactorMap&)> cb;

    void prepare() {
        const std::size_t nc = chars.size(), nf = fents.size();
        cdual.assign(nc + 1, {});
        cdual[nc] = dual_axes(rank);
        for (std::size_t k = nc; k-- > 0;) cdual[k] = dual_cut(cdual[k + 1], chars[k]);
        auto aug = [&](const ZVec& w, long last) {
            ZVec v = w;
            v.push_back(last);
            return v;
        };
        std::vector<ZVec> base = dual_axes(rank + 1);
        base = dual_cut(base, aug(zvec_zero(rank), 1));
        for (const ZVec& c : chars) base = dual_cut(base, aug(c, 0));
        sdual.assign(nf + 1, {});
        sdual[nf] = std::move(base);
        for (std::size_t i = nf; i-- > 0;)
            sdual[i] = dual_cut(sdual[i + 1], aug(fents[i].w, fents[i].tdeg));
    }

    void run(const ZVec& target) {
        stop = false;
        FactorMap fac;
        dfs(0, target, budget, fac);
    }

  private:
    bool char_completion(std::size_t k, const ZVec& residual) const {
        if (!dual_admits(cdual[k], residual)) return false;
        if (k == chars.size()) return zvec_is_zero(residual);
        ZVec res = residual;
        for (long a = 0; a <= amax_char; ++a) {
            if (char_completion(k + 1, res)) return true;
            res = zvec_sub(res, chars[k]);
        }
        return false;
    }

    void dfs(std::size_t idx, const ZVec& residual, long remaining, FactorMap& fac) {
        if (stop) return;
        ZVec augv = residual;
        augv.push_back(remaining);
        if (!dual_admits(sdual[idx], augv)) return;
        if (idx == fents.size()) {
            if (char_completion(0, residual)) cb(fac);
            return;
        }
        const FEntry& g = fents[idx];
        FactorMap cur = fac;
        ZVec res = residual;
        long rem = remaining, a = 0;
        while (true) {
            dfs(idx + 1, res, rem, cur);
            if (stop) break;
            bool more = (g.tdeg > 0) ? (rem - g.tdeg >= 0) : (a < amax);
            if (!more) break;
            ++a;
            factor_add(cur, g.fac, 1);
            res = zvec_sub(res, g.w);
            rem -= g.tdeg;
        }
    }
};

ProductEnum make_product_enum(const std::vector<Generator>& gens, int rank, long box, long budget,
                              long skip) {
    ProductEnum pe;
    pe.rank = rank;
    pe.budget = budget;
    pe.amax = std::max(8L, 4 * box);
    pe.amax_char = std::max(32L, 16 * box);
    std::vector<ProductEnum::FEntry> pos, rest;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (static_cast<long>(i) == skip) continue;
        FactorMap fac = factor_map_of(gens[i].f);
        if (fac.empty()) {
            pe.chars.push_back(gens[i].weight);
            continue;
        }
        ProductEnum::FEntry e{gens[i].weight, std::move(fac), 0};
        e.tdeg = total_degree(e.fac);
        (e.tdeg > 0 ? pos : rest).push_back(std::move(e));
    }
    pe.fents = std::move(pos);
    for (auto& e : rest) pe.fents.push_back(std::move(e));
    pe.prepare();
    return pe;
}

/**
 * Bounded test for membership of a single factored function of weight m in
 * the span of generator products of that weight.  Products are compared in
 * coordinates relative to the minimal section of the weight space; quotient
 * degrees are capped a little above the target's, so the test can miss very
 * large witnesses (a conservative failure: candidates are then kept).
 */
bool in_subalgebra(const PolyDivisor& d, const std::vector<Generator>& gens, const ZVec& m,
                   const FactorMap& target_fac, long box, long skip = -1) {
    std::map<Rat, long> base = minimal_section_exponents(d, m);
    polyq::Poly target_poly = expand_factors(factor_quotient(target_fac, base));
    long qcap = polyq::degree(target_poly) + 4;
    long base_deg = 0;
    for (const auto& [z, a] : base) base_deg += a;

    ProductEnum pe = make_product_enum(gens, d.rank(), box, base_deg + qcap, skip);
    SpanBasis span(static_cast<int>(qcap) + 1);
    QVec target_vec(qcap + 1, Rat(0));
    for (std::size_t i = 0; i < target_poly.size(); ++i) target_vec[i] = target_poly[i];
    bool found = false;
    pe.cb = [&](const FactorMap& fac) {
        polyq::Poly q = expand_factors(factor_quotient(fac, base));
        if (polyq::degree(q) > qcap) return;
        QVec v(qcap + 1, Rat(0));
        for (std::size_t i = 0; i < q.size(); ++i) v[i] = q[i];
        span.insert(v);
        if (span.contains(target_vec)) {
            found = true;
            pe.stop = true;
        }
    };
    pe.run(m);
    return found;
}

std::vector<ZVec> boxed_weights(int rank, long box) {
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
    std::sort(out.begin(), out.end(), [](const ZVec& a, const ZVec& b) {
        long la = zvec_l1(a), lb = zvec_l1(b);
        if (la != lb) return la < lb;
        return a < b;
    });
    return out;
}

/** Drops generators expressible through the others, until stable. */
void minimize_generators(const PolyDivisor& d, std::vector<Generator>& gens, long box) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (long i = static_cast<long>(gens.size()) - 1; i >= 0; --i) {
            FactorMap fac = factor_map_of(gens[i].f);
            if (in_subalgebra(d, gens, gens[i].weight, fac, box, i)) {
                gens.erase(gens.begin() + i);
                changed = true;
            }
        }
    }
}

}  // namespace

std::vector<Generator> find_generators(const PolyDivisor& d, long box) {
    const int rank = d.rank();
    Cone dual = d.sigma().dual();
    std::vector<Generator> gens;
    gens.push_back({zvec_zero(rank), SymExpr::t_power(rank, Rat(0), 1)});

    // Greedy sweep over weights ordered by L1 norm; after each completed shell
    // the list is re-minimized so later membership tests stay small.
    long shell = 0;
    bool shell_added = false;
    for (const ZVec& m : boxed_weights(rank, box)) {
        if (zvec_is_zero(m) || !dual.contains(to_qvec(m))) continue;
        if (zvec_l1(m) != shell) {
            if (shell_added) minimize_generators(d, gens, box);
            shell = zvec_l1(m);
            shell_added = false;
        }
        std::map<Rat, long> exps = minimal_section_exponents(d, m);
        FactorMap fac;
        for (const auto& [z, a] : exps)
            if (a != 0) fac[z] = a;
        if (!in_subalgebra(d, gens, m, fac, box)) {
            gens.push_back({m, minimal_section(d, m)});
            shell_added = true;
        }
    }
    minimize_generators(d, gens, box);
    return gens;
}

namespace {

/** True when r equals base multiplied by one generator monomial. */
bool relation_is_multiple(const Relation& r, const Relation& base) {
    if (r.monomials.size() != base.monomials.size()) return false;
    std::vector<long> delta;
    for (std::size_t j = 0; j < r.monomials.size(); ++j) {
        if (r.monomials[j].first != base.monomials[j].first) return false;
        const auto& a = base.monomials[j].second;
        const auto& b = r.monomials[j].second;
        std::vector<long> dj(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (b[k] < a[k]) return false;
            dj[k] = b[k] - a[k];
        }
        if (j == 0)
            delta = dj;
        else if (dj != delta)
            return false;
    }
    return true;
}

long relation_exp_sum(const Relation& r) {
    long s = 0;
    for (const auto& [c, mono] : r.monomials)
        for (long e : mono) s += e;
    return s;
}

bool relation_order(const Relation& a, const Relation& b) {
    long la = zvec_l1(a.weight), lb = zvec_l1(b.weight);
    if (la != lb) return la < lb;
    if (a.weight != b.weight) return a.weight < b.weight;
    return a.monomials < b.monomials;
}

}  // namespace

std::vector<Relation> find_relations(const PolyDivisor& d, const std::vector<Generator>& gens,
                                     long total_degree_bound) {
    // Generator monomials of bounded total degree, grouped by weight.
    std::map<ZVec, std::vector<std::vector<long>>> by_weight;
    std::vector<long> exps(gens.size(), 0);
    const int rank = d.rank();
    std::function<void(std::size_t, long)> walk = [&](std::size_t idx, long left) {
        if (idx == gens.size()) {
            ZVec w = zvec_zero(rank);
            bool empty = true;
            for (std::size_t i = 0; i < gens.size(); ++i)
                if (exps[i] != 0) {
                    empty = false;
                    w = zvec_add(w, zvec_scale(exps[i], gens[i].weight));
                }
            if (!empty) by_weight[w].push_back(exps);
            return;
        }
        for (long a = 0; a <= left; ++a) {
            exps[idx] = a;
            walk(idx + 1, left - a);
        }
        exps[idx] = 0;
    };
    walk(0, total_degree_bound);

    std::vector<FactorMap> gen_facs;
    for (const Generator& g : gens) gen_facs.push_back(factor_map_of(g.f));

    std::vector<Relation> cands;
    for (const auto& [w, monos] : by_weight) {
        if (monos.size() < 2) continue;
        std::map<Rat, long> base = minimal_section_exponents(d, w);
        std::vector<polyq::Poly> cols;
        long maxdeg = 0;
        for (const auto& mono : monos) {
            FactorMap fac;
            for (std::size_t j = 0; j < mono.size(); ++j) factor_add(fac, gen_facs[j], mono[j]);
            polyq::Poly q = expand_factors(factor_quotient(fac, base));
            maxdeg = std::max(maxdeg, polyq::degree(q));
            cols.push_back(std::move(q));
        }
        std::vector<QVec> rows(maxdeg + 1, QVec(cols.size(), Rat(0)));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (std::size_t i = 0; i < cols[j].size(); ++i) rows[i][j] = cols[j][i];
        for (const QVec& c : nullspace(rows, static_cast<int>(cols.size()))) {
            Relation r;
            r.weight = w;
            for (std::size_t j = 0; j < c.size(); ++j)
                if (c[j] != 0) r.monomials.push_back({c[j], monos[j]});
            std::sort(r.monomials.begin(), r.monomials.end(),
                      [](const auto& a, const auto& b) { return a.second < b.second; });
            QVec coeffs;
            for (const auto& [cf, mono] : r.monomials) coeffs.push_back(cf);
            ZVec prim = primitive(coeffs);
            if (prim[0] < 0) prim = zvec_neg(prim);
            for (std::size_t j = 0; j < r.monomials.size(); ++j)
                r.monomials[j].first = Rat(prim[j]);
            cands.push_back(std::move(r));
        }
    }

    // Keep only relations that are not monomial multiples of a smaller one.
    std::stable_sort(cands.begin(), cands.end(), [](const Relation& a, const Relation& b) {
        long sa = relation_exp_sum(a), sb = relation_exp_sum(b);
        if (sa != sb) return sa < sb;
        return relation_order(a, b);
    });
    std::vector<Relation> out;
    for (Relation& r : cands) {
        bool redundant = false;
        for (const Relation& prev : out)
            if (relation_is_multiple(r, prev)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(std::move(r));
    }
    std::sort(out.begin(), out.end(), relation_order);
    return out;
}

std::string relation_str(const Relation& r) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, mono] : r.monomials) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed = false;
        if (a != 1) {
            os << rat_str(a);
            printed = true;
        }
        for (std::size_t j = 0; j < mono.size(); ++j) {
            if (mono[j] == 0) continue;
            if (printed) os << "*";
            os << "g" << (j + 1);
            if (mono[j] != 1) os << "^" << mono[j];
            printed = true;
        }
        if (!printed) os << "1";
    }
    os << " = 0";
    return os.str();
}

SymExpr ShiftFamily::phi(const ZVec& m) const {
    std::map<Rat, long> fac;
    for (const auto& [z, w] : shifts) {
        long e = -pairing(m, w);
        if (e != 0) fac[z] = e;
    }
    return SymExpr::monomial(rank, Rat(1), fac, zvec_zero(rank));
}

std::pair<PolyDivisor, ShiftFamily> shift_divisor(const PolyDivisor& d,
                                                  const std::map<Rat, ZVec>& shifts) {
    for (const auto& [z, w] : shifts)
        if (static_cast<int>(w.size()) != d.rank())
            throw std::invalid_argument("shift rank mismatch at z=" + rat_str(z));
    std::set<Rat> points;
    for (const Rat& z : d.support()) points.insert(z);
    for (const auto& [z, w] : shifts)
        if (!zvec_is_zero(w)) points.insert(z);
    std::vector<PolyCoefficient> coeffs;
    for (const Rat& z : points) {
        Polyhedron shape = d.coefficient_at(z);
        auto it = shifts.find(z);
        if (it != shifts.end()) shape = shape.translated(to_qvec(it->second));
        coeffs.push_back({z, std::move(shape)});
    }
    ShiftFamily fam;
    fam.rank = d.rank();
    for (const auto& [z, w] : shifts)
        if (!zvec_is_zero(w)) fam.shifts[z] = w;
    return {PolyDivisor(d.sigma(), std::move(coeffs)), std::move(fam)};
}

QVec ColoredDivisor::vertex_at(const Rat& z) const {
    auto it = chosen.find(z);
    if (it != chosen.end()) return it->second;
    return qvec_zero(base.rank());
}

Rat ColoredDivisor::vertex_value(const Rat& z, const QVec& m) const {
    return pairing(m, vertex_at(z));
}

Rat ColoredDivisor::vertex_value(const Rat& z, const ZVec& m) const {
    return pairing(m, vertex_at(z));
}

QVec ColoredDivisor::degree_vertex() const {
    QVec v = qvec_zero(base.rank());
    for (const auto& [z, vz] : chosen) v = qvec_add(v, vz);
    return v;
}

bool ColoredDivisor::all_lattice() const {
    for (const auto& [z, vz] : chosen)
        if (!is_lattice(vz)) return false;
    return true;
}

bool ColoredDivisor::operator==(const ColoredDivisor& o) const {
    return base == o.base && chosen == o.chosen && marked_point == o.marked_point;
}

std::optional<ColoredDivisor> try_make_colored(const PolyDivisor& d,
                                               const std::map<Rat, QVec>& vertices,
                                               const Rat& marked_point, std::string* reason) {
    auto fail = [&](const std::string& why) -> std::optional<ColoredDivisor> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    std::map<Rat, QVec> chosen;
    for (const auto& [z, v] : vertices) {
        if (static_cast<int>(v.size()) != d.rank()) return fail("vertex rank mismatch");
        Polyhedron shape = d.coefficient_at(z);
        if (!shape.is_vertex(v))
            return fail("chosen point at z=" + rat_str(z) + " is not a vertex of the coefficient");
        bool in_support = false;
        for (const Rat& s : d.support()) in_support = in_support || s == z;
        if (!in_support && !qvec_is_zero(v))
            return fail("nonzero vertex chosen at unlisted point z=" + rat_str(z));
        if (in_support) chosen[z] = v;
    }
    for (const Rat& z : d.support())
        if (!chosen.count(z)) return fail("no vertex chosen at support point z=" + rat_str(z));
    int non_lattice = 0;
    for (const auto& [z, v] : chosen)
        if (!is_lattice(v)) {
            ++non_lattice;
            if (z != marked_point)
                return fail("non-lattice vertex at unmarked point z=" + rat_str(z));
        }
    if (non_lattice > 1) return fail("more than one non-lattice vertex");
    ColoredDivisor cd{d, std::move(chosen), marked_point};
    QVec vdeg = cd.degree_vertex();
    if (!d.degree().is_vertex(vdeg))
        return fail("vertex sum is not a vertex of the degree polyhedron");
    return cd;
}

ColoredDivisor make_colored(const PolyDivisor& d, const std::map<Rat, QVec>& vertices,
                            const Rat& marked_point) {
    std::string reason;
    auto cd = try_make_colored(d, vertices, marked_point, &reason);
    if (!cd) throw std::invalid_argument("invalid coloring: " + reason);
    return *cd;
}

namespace {

bool chosen_less(const std::map<Rat, QVec>& a, const std::map<Rat, QVec>& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    for (; ia != a.end() && ib != b.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.end() && ib != b.end();
}

}  // namespace

std::vector<ColoredDivisor> enumerate_colorings(const PolyDivisor& d) {
    std::vector<Rat> support = d.support();
    std::vector<std::vector<QVec>> options;
    for (const Rat& z : support) options.push_back(d.coefficient_at(z).vertices());

    std::vector<ColoredDivisor> out;
    std::vector<std::size_t> pick(support.size(), 0);
    while (true) {
        std::map<Rat, QVec> vertices;
        int non_lattice = 0;
        Rat marked(0);
        for (std::size_t i = 0; i < support.size(); ++i) {
            vertices[support[i]] = options[i][pick[i]];
            if (!is_lattice(options[i][pick[i]])) {
                ++non_lattice;
                marked = support[i];
            }
        }
        if (non_lattice <= 1)
            if (auto cd = try_make_colored(d, vertices, marked)) out.push_back(std::move(*cd));
        std::size_t i = 0;
        while (i < pick.size() && pick[i] + 1 == options[i].size()) pick[i++] = 0;
        if (i == pick.size()) break;
        ++pick[i];
    }
    std::sort(out.begin(), out.end(), [](const ColoredDivisor& a, const ColoredDivisor& b) {
        if (a.all_lattice() != b.all_lattice()) return a.all_lattice();
        return chosen_less(a.chosen, b.chosen);
    });
    return out;
}

std::vector<Rat> admissible_markings(const PolyDivisor& d, const std::map<Rat, QVec>& vertices) {
    for (const auto& [z, v] : vertices)
        if (!is_lattice(v)) return {z};
    std::set<Rat> points;
    points.insert(Rat(0));
    for (const Rat& z : d.support()) points.insert(z);
    return std::vector<Rat>(points.begin(), points.end());
}

}  // namespace tvar
