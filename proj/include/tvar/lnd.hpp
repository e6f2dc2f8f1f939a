#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "tvar/pdivisor.hpp"
#include "tvar/roots.hpp"
#include "tvar/symexpr.hpp"

namespace tvar {

/**
 * Ray-type derivation: kills the function field of the base line and shifts
 * characters along a root e of the tail cone, scaled by the pairing with the
 * distinguished ray and by a fixed weight-0 coefficient phi.
 */
struct VerticalLND {
    PolyDivisor base;
    ZVec e;       // root of base.sigma()
    ZVec rho;     // the ray where e pairs to -1
    SymExpr phi;  // nonzero weight-0 coefficient satisfying the divisor bound
};

/**
 * Derivation attached to a colored divisor and an admissible pair (e, s).
 * A normalized model with every unmarked chosen vertex moved to the origin is
 * stored alongside the original data; the shift record converts between the
 * two coordinate systems, and apply_horizontal acts in the normalized one.
 */
struct HorizontalLND {
    ColoredDivisor colored;  // as constructed
    ZVec e;
    long s = 0;
    long denom = 1;             // clears the marked vertex's denominators
    ShiftFamily shift;          // w_z = chosen vertex at z, for z != marked point
    ColoredDivisor normalized;  // shifted coloring with unmarked vertices at 0
};

/** Tagged union over the two derivation types. */
struct Derivation {
    std::variant<VerticalLND, HorizontalLND> node;
};

/** Validates the root/coefficient data; throws std::invalid_argument on failure. */
Derivation make_vertical(const PolyDivisor& d, const ZVec& e, const SymExpr& phi);

/** Validates coherency of (e, s) for the coloring; throws std::invalid_argument. */
Derivation make_horizontal(const ColoredDivisor& cd, const ZVec& e, long s);

bool is_vertical(const Derivation& D);

/** Accessors for the underlying case; throw std::bad_variant_access on mismatch. */
const VerticalLND& as_vertical(const Derivation& D);
const HorizontalLND& as_horizontal(const Derivation& D);

/** The divisor the derivation acts on (original coordinates). */
const PolyDivisor& divisor_of(const Derivation& D);

/** Homogeneity degree: the weight shift e of the derivation. */
ZVec degree_of(const Derivation& D);

/**
 * Admissibility of a vertical coefficient: phi nonzero, of weight zero, with
 * ord_z(phi) + h_z(e) >= 0 at every point, where h_z is the vertex minimum of
 * the coefficient at z (zero off the support), and no poles elsewhere.
 */
bool in_phi(const PolyDivisor& d, const ZVec& e, const SymExpr& phi,
            std::string* why = nullptr);

/**
 * Membership of x in the graded coordinate ring of d: every weight lies in the
 * dual of the tail cone and every component satisfies the divisor bound.
 */
bool in_algebra(const PolyDivisor& d, const SymExpr& x, std::string* why = nullptr);

SymExpr apply_vertical(const VerticalLND& D, const SymExpr& x);

/**
 * Action in the normalized coordinates (unmarked vertices at 0, q = t - z0):
 * the term c * prod (t-z)^{a_z} * chi^m maps to
 * d * q^s * (sum_z a_z q/(t-z) + <m, v0>) * c * prod (t-z)^{a_z} * chi^{m+e}.
 */
SymExpr apply_horizontal(const HorizontalLND& D, const SymExpr& x);

/** Action on elements written in the original coordinates of the divisor. */
SymExpr apply(const Derivation& D, const SymExpr& x);

/**
 * alpha(m) = -sum_{z != 0} <m, w_z> * t/(t-z) over the shift record entries;
 * weight-0, additive in m. alpha_prime is its t-derivative.
 */
SymExpr alpha(int rank, const std::map<Rat, ZVec>& shifts, const ZVec& m);
SymExpr alpha_prime(int rank, const std::map<Rat, ZVec>& shifts, const ZVec& m);

/**
 * Least n with D^n(x) = 0. Validates x against the graded algebra first;
 * throws std::runtime_error("nilpotency cap exceeded") past the cap.
 */
long nilpotency_degree(const Derivation& D, const SymExpr& x, long cap = 64);

/** exp(lambda * D) applied to x: sum_k lambda^k D^k(x) / k!, a finite sum. */
SymExpr exponentiate(const Derivation& D, const Rat& lambda, const SymExpr& x, long cap = 64);

/** The lattice {m : <m, marked vertex> integral} of a horizontal derivation. */
bool in_kernel_lattice(const HorizontalLND& D, const ZVec& m);

/**
 * Combinatorial kernel test: vertical components must pair to zero with the
 * distinguished ray; horizontal components must be scalar multiples of the
 * canonical kernel monomials over weights in the dual of the associated cone
 * with integral marked-vertex value.
 */
bool kernel_membership(const Derivation& D, const SymExpr& x);

}  // namespace tvar
