#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tvar/lnd.hpp"

namespace tvar {

// ---------------------------------------------------------------------------
// Pairs of ray-type derivations
// ---------------------------------------------------------------------------

/**
 * Scalar coefficient of the bracket [Da, Db] on weight m:
 *   <m, rho_b><eb, rho_a> - <m, rho_a><ea, rho_b>.
 * Linear in m; the bracket on f * chi^m is this coefficient times
 * phi_a * phi_b * f * chi^{m+ea+eb}.
 */
long comm_vv_coeff(const VerticalLND& a, const VerticalLND& b, const ZVec& m);

/**
 * Commutator [Da, Db] applied to the minimal weight-m element f_m * chi^m
 * (m must lie in the dual of the tail cone). Both derivations must live on
 * the same divisor.
 */
SymExpr comm_vv(const VerticalLND& a, const VerticalLND& b, const ZVec& m);

/**
 * Exact commutation test for two ray-type derivations: the bracket vanishes on
 * every weight iff the cross pairings <eb, rho_a> and <ea, rho_b> both vanish,
 * or the two distinguished rays coincide.
 */
bool criterion_vv(const VerticalLND& a, const VerticalLND& b);

// ---------------------------------------------------------------------------
// Mixed pairs (ray-type with line-type)
// ---------------------------------------------------------------------------

/**
 * Rewrites a mixed pair in the coordinates where the line-type derivation is
 * normalized: the line is translated so the marked point becomes 0, and the
 * lattice re-coordinatization clearing the unmarked chosen vertices is applied
 * to both derivations. The ray-type coefficient picks up the matching factor
 * prod_z (t - z)^{<e, w_z>}. Both returned derivations live on the shifted
 * divisor; brackets and kernels are preserved by the rewrite.
 */
std::pair<VerticalLND, HorizontalLND> normalize_vh(const VerticalLND& v,
                                                   const HorizontalLND& h);

/**
 * Commutator [Dv, Dh] on the coordinate t. Requires the line-type derivation
 * in normalized position (marked point 0, no shift record); throws
 * std::invalid_argument otherwise. Closed form:
 *   d * <eh, rho> * phi * t^{s+1} * chi^{ev+eh}.
 */
SymExpr comm_vh_t(const VerticalLND& v, const HorizontalLND& h);

/**
 * Commutator [Dv, Dh] on the weight-m character chi^m (same normalization
 * requirement). Closed form:
 *   d * (v0(m) <eh, rho> phi - <m, rho> (phi' t + v0(ev) phi)) * t^s * chi^{m+ev+eh},
 * where v0 is pairing with the marked vertex.
 */
SymExpr comm_vh_chi(const VerticalLND& v, const HorizontalLND& h, const ZVec& m);

/**
 * Exact commutation test for a mixed pair: after normalization, <eh, rho> = 0
 * and the coefficient satisfies phi' t + v0(ev) phi = 0 identically.
 */
bool criterion_vh(const VerticalLND& v, const HorizontalLND& h);

// ---------------------------------------------------------------------------
// Pairs of line-type derivations
// ---------------------------------------------------------------------------

/**
 * A pair of line-type derivations rewritten into the common coordinates used
 * by the closed commutator formulas: the line is translated so the second
 * derivation's marked point becomes 0, then the lattice re-coordinatization
 * clearing the first derivation's unmarked chosen vertices is applied to both.
 * In the result, `first` is normalized (unmarked vertices 0) and the remaining
 * unmarked vertices of `second` are recorded in its shift family.
 */
struct AssociatedSystem {
    HorizontalLND first;
    HorizontalLND second;
    Rat translation;                   // amount subtracted from every point
    std::map<Rat, ZVec> lattice_shift; // w_z applied per point (z after translation)
};

/**
 * Re-marks a line-type derivation at another admissible point, keeping the
 * chosen vertices and the degree. The offset s is recomputed for the new
 * marked vertex; throws std::invalid_argument when no integral offset exists
 * or the marking itself is invalid.
 */
HorizontalLND with_marking(const HorizontalLND& D, const Rat& marked);

/** Builds the common-coordinate system for a pair on the same divisor. */
AssociatedSystem associated_system(const HorizontalLND& a, const HorizontalLND& b);

/**
 * Commutator [first, second] on the coordinate t, in the system's coordinates.
 * Writing q = t - z0 (z0 = first marked point), d~ = second denom, s/s~ the two
 * offsets, the value is
 *   d d~ t^{s~} q^{s} phi~(e~) chi^{e+e~} * B,
 *   B = (s~ + v_{z0}(e~) - v~0(e) - s) t + (v~0(e) - s~ - 1) z0 + (alpha_e + alpha_e~) q,
 * with alpha taken over the second derivation's shift record.
 */
SymExpr comm_hh_t(const AssociatedSystem& sys);

/**
 * Commutator [first, second] on chi^m in the system's coordinates:
 *   d d~ t^{s~-1} q^{s-1} phi~(e~) chi^{m+e+e~} * (C0 + C1 + C2),
 *   C0 = s~ v~0(m) q^2 - s v_{z0}(m) t^2 + (v~0(m) v_{z0}(e~) - v_{z0}(m) v~0(e)) t q,
 *   C1 = v~0(m) alpha_e~ q^2 - s~ alpha_m q^2 - v_{z0}(e~) alpha_m t q + v_{z0}(m) alpha_e t q,
 *   C2 = -t alpha_m' q^2 - alpha_m alpha_e~ q^2.
 */
SymExpr comm_hh_chi(const AssociatedSystem& sys, const ZVec& m);

/**
 * Vertex comparison of the two colorings of an associated system, point by
 * point over the support and both marked points. At each z either the chosen
 * vertices agree, or the pair of unit-step equalities holds:
 *   <e, v~_z> = 1 + <e, v_z>   (scaled by d when z is the first marked point),
 *   <e~, v_z> = 1 + <e~, v~_z> (scaled by d~ when z is the second marked point).
 */
struct CoherencyReport {
    struct PointStatus {
        Rat z;
        bool same_vertex = false;
        bool eq_first = false;   // unit step for the first derivation's root
        bool eq_second = false;  // unit step for the second derivation's root
        bool ok = false;
    };
    std::vector<PointStatus> points;
    bool coherent = false;       // every point ok
    bool simple_first = false;   // first coloring has at most one nonzero vertex
    bool simple_second = false;  // second coloring has at most one nonzero vertex
    bool adjacent = false;       // identical chosen vertices and marked points
};

CoherencyReport coherency_report(const AssociatedSystem& sys);

/**
 * Matches the system against the explicit commuting configurations; returns
 * one of "1a", "1b", "2a", or "" when none applies.
 *   1a: equal marked points (z0 = 0), empty shift record, equal marked
 *       vertices.
 *   1b: equal marked points, empty shift record, and the denominator-scaled
 *       unit steps d <e, v~0> = 1 + d <e, v0> and d~ <e~, v0> = 1 + d~ <e~, v~0>.
 *   2a: equal marked points, equal integral marked vertices, and exactly one
 *       auxiliary shift point z1 with <e, w_1> = 1 and <e~, w_1> = -1.
 * The list is complete: writing out comm_hh_t and comm_hh_chi and collecting
 * coefficients (powers of t, partial fractions at the shift points, linearity
 * in m) shows every identically-vanishing system satisfies one of the three.
 * In particular systems with distinct marked points (z0 != 0) never commute
 * unless they can be re-marked to a common point, so this function returns ""
 * for them; criterion_hh performs that re-marking search.
 */
std::string match_commutation_case(const AssociatedSystem& sys);

/** Outcome of the combinatorial test for a line-type pair. */
struct HHVerdict {
    bool commutes = false;
    std::string matched_case;  // empty when commutes is false
    CoherencyReport report;    // for the matching presentation, else canonical
};

/**
 * Exact commutation test for two line-type derivations on the same divisor.
 * Re-marks both derivations to each marked point admissible for both
 * colorings and matches the resulting associated system; the pair commutes
 * iff some shared-marking presentation matches a configuration.  The verdict
 * is presentation-independent (re-marking does not change the operators);
 * the matched label is reported for the first matching presentation and the
 * coherency report for that presentation (canonical order when none matches).
 * Agrees with comm_hh_t / comm_hh_chi vanishing and with the brute-force
 * commutator on every constructible pair.
 */
HHVerdict criterion_hh(const HorizontalLND& a, const HorizontalLND& b);

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

enum class PairTag { VV, VH, HH };

std::string pair_tag_str(PairTag tag);

struct PairVerdict {
    PairTag tag = PairTag::VV;
    bool commutes = false;
    std::string matched_case;  // configuration label (line-type pairs only)
};

/** Classifies the pair and runs the matching combinatorial test. */
PairVerdict criterion(const Derivation& a, const Derivation& b);

}  // namespace tvar
