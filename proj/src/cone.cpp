#include "tvar/cone.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tvar {

namespace {

/** Is v a nonnegative combination of gens? Exact LP via Fourier-Motzkin. */
bool in_cone_of(const std::vector<ZVec>& gens, const QVec& v, int rank) {
    if (qvec_is_zero(v)) return true;
    if (gens.empty()) return false;
    const int k = static_cast<int>(gens.size());
    std::vector<LinCond> conds;
    conds.reserve(k + rank);
    for (int i = 0; i < k; ++i) {
        LinCond nonneg;
        nonneg.a = qvec_zero(k);
        nonneg.a[i] = 1;
        nonneg.b = 0;
        nonneg.rel = LinCond::Rel::Ge;
        conds.push_back(std::move(nonneg));
    }
    for (int c = 0; c < rank; ++c) {
        LinCond eq;
        eq.a = qvec_zero(k);
        for (int i = 0; i < k; ++i) eq.a[i] = gens[i][c];
        eq.b = v[c];
        eq.rel = LinCond::Rel::Eq;
        conds.push_back(std::move(eq));
    }
    return fm_feasible(conds, k);
}

std::vector<ZVec> prune_generators(int rank, std::vector<ZVec> gens) {
    std::sort(gens.begin(), gens.end());
    gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
    // Repeated single passes until stable: dropping one generator can expose
    // another as redundant only through combinations that remain available,
    // but re-checking is cheap at this scale and keeps the result canonical.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            std::vector<ZVec> others;
            others.reserve(gens.size() - 1);
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (j != i) others.push_back(gens[j]);
            if (in_cone_of(others, to_qvec(gens[i]), rank)) {
                gens.erase(gens.begin() + i);
                changed = true;
                break;
            }
        }
    }
    return gens;
}

}  // namespace

Cone::Cone(int rank, std::vector<QVec> generators) : rank_(rank) {
    std::vector<ZVec> prim;
    prim.reserve(generators.size());
    for (const QVec& g : generators) {
        if (static_cast<int>(g.size()) != rank) throw std::invalid_argument("cone generator rank mismatch");
        if (qvec_is_zero(g)) continue;
        prim.push_back(primitive(g));
    }
    rays_ = prune_generators(rank_, std::move(prim));
}

Cone::Cone(int rank, const std::vector<ZVec>& generators)
    : Cone(rank, [&]() {
          std::vector<QVec> qs;
          qs.reserve(generators.size());
          for (const ZVec& g : generators) qs.push_back(to_qvec(g));
          return qs;
      }()) {}

Cone Cone::zero(int rank) { return Cone(rank, std::vector<QVec>{}); }

bool Cone::contains(const QVec& v) const {
    if (static_cast<int>(v.size()) != rank_) throw std::invalid_argument("cone membership rank mismatch");
    return in_cone_of(rays_, v, rank_);
}

bool Cone::contains(const ZVec& v) const { return contains(to_qvec(v)); }

bool Cone::is_pointed() const {
    for (const ZVec& r : rays_)
        if (contains(to_qvec(zvec_neg(r)))) return false;
    return true;
}

Cone Cone::dual() const {
    // Double description: start from the full space and cut by one halfspace
    // {<x, g> >= 0} per generator g.
    std::vector<QVec> current;
    for (int i = 0; i < rank_; ++i) {
        QVec e = qvec_zero(rank_);
        e[i] = 1;
        current.push_back(e);
        e[i] = -1;
        current.push_back(e);
    }
    for (const ZVec& g : rays_) {
        std::vector<QVec> pos, zero, neg;
        for (const QVec& d : current) {
            Rat v = pairing(d, g);
            if (v > 0)
                pos.push_back(d);
            else if (v == 0)
                zero.push_back(d);
            else
                neg.push_back(d);
        }
        std::vector<QVec> next = pos;
        next.insert(next.end(), zero.begin(), zero.end());
        for (const QVec& p : pos) {
            for (const QVec& n : neg) {
                // <w, g> = 0 with w in cone(p, n):
                QVec w = qvec_add(qvec_scale(pairing(p, g), n), qvec_scale(-pairing(n, g), p));
                if (!qvec_is_zero(w)) next.push_back(std::move(w));
            }
        }
        current = std::move(next);
        if (current.empty()) break;
    }
    return Cone(rank_, std::move(current));
}

bool Cone::operator==(const Cone& other) const {
    if (rank_ != other.rank_) return false;
    for (const ZVec& r : rays_)
        if (!other.contains(r)) return false;
    for (const ZVec& r : other.rays_)
        if (!contains(r)) return false;
    return true;
}

}  // namespace tvar
