#pragma once

#include <vector>

#include "tvar/rational.hpp"

namespace tvar {

/** Vector with rational coordinates (points of M_Q or N_Q). */
using QVec = std::vector<Rat>;
/** Vector with integer coordinates (lattice points of M or N). */
using ZVec = std::vector<long>;

QVec to_qvec(const ZVec& v);
/** Exact conversion; every coordinate must be integral. */
ZVec to_zvec(const QVec& v);
bool is_lattice(const QVec& v);

QVec qvec_zero(int rank);
ZVec zvec_zero(int rank);
bool qvec_is_zero(const QVec& v);
bool zvec_is_zero(const ZVec& v);

QVec qvec_add(const QVec& a, const QVec& b);
QVec qvec_sub(const QVec& a, const QVec& b);
QVec qvec_scale(const Rat& c, const QVec& a);
ZVec zvec_add(const ZVec& a, const ZVec& b);
ZVec zvec_sub(const ZVec& a, const ZVec& b);
ZVec zvec_neg(const ZVec& a);
ZVec zvec_scale(long c, const ZVec& a);
long zvec_l1(const ZVec& a);

/** Bilinear pairing <m, p>; the ranks must agree. */
Rat pairing(const QVec& m, const QVec& p);
Rat pairing(const ZVec& m, const QVec& p);
Rat pairing(const QVec& m, const ZVec& p);
long pairing(const ZVec& m, const ZVec& p);

/**
 * Primitive lattice generator of the ray through v (direction preserved):
 * clear denominators, then divide by the gcd of the coordinates.
 * Throws on the zero vector.
 */
ZVec primitive(const QVec& v);
ZVec primitive(const ZVec& v);

/** One linear condition  a . x  (rel)  b  over the listed variables. */
struct LinCond {
    enum class Rel { Eq, Ge, Gt };
    QVec a;
    Rat b;
    Rel rel = Rel::Ge;
};

/**
 * Exact Fourier-Motzkin feasibility over Q: is there a rational point
 * satisfying every condition? Strict inequalities are tracked exactly.
 * Intended for the small systems of this library (<= ~10 variables).
 */
bool fm_feasible(const std::vector<LinCond>& conds, int nvars);

/**
 * Incrementally maintained row space over Q (reduced echelon rows), used for
 * exact linear span membership and dimension counting.
 */
class SpanBasis {
  public:
    explicit SpanBasis(int ncols) : ncols_(ncols) {}
    int dim() const { return static_cast<int>(rows_.size()); }
    bool contains(const QVec& v) const;
    /** Adds v to the span; returns true if the dimension grew. */
    bool insert(const QVec& v);

  private:
    QVec reduce(QVec v) const;
    int ncols_;
    std::vector<QVec> rows_;      // echelon rows, pivot = 1, pivots strictly increasing
    std::vector<int> pivots_;
};

/** Basis of the right nullspace {x : A x = 0}; rows = equations over ncols unknowns. */
std::vector<QVec> nullspace(const std::vector<QVec>& rows, int ncols);

}  // namespace tvar
