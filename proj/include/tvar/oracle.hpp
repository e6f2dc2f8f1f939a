#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvar/commute.hpp"
#include "tvar/lnd.hpp"
#include "tvar/pdivisor.hpp"
#include "tvar/rational.hpp"
#include "tvar/symexpr.hpp"

namespace tvar {

/**
 * Outcome of the brute-force commutation test.  On a negative verdict the
 * witness fields hold the first test element g with a nonzero bracket and the
 * bracket value Da(Db(g)) - Db(Da(g)) itself.
 */
struct OracleResult {
    bool commutes = true;
    std::optional<SymExpr> witness_input;
    std::optional<SymExpr> witness_output;
};

/**
 * Brute-force ground truth.  The commutator of two derivations is again a
 * derivation, so it vanishes identically iff it vanishes on a set generating
 * the coordinate ring; this applies both compositions to every element of
 * gens and compares exactly, with no appeal to the combinatorial criteria.
 * Throws std::invalid_argument when the derivations act on different divisors
 * or when an element of gens fails the graded-algebra membership test.
 */
OracleResult oracle_commutes(const Derivation& a, const Derivation& b,
                             const std::vector<SymExpr>& gens);

/**
 * Canonical test set for a divisor: the base coordinate t, every algebra
 * generator found inside the box, and the minimal section of one weight per
 * independent direction of the weight lattice met by the dual cone in the
 * box.  Every element is a member of the graded algebra, and t covers the
 * weight-zero part (any shifted coordinate t - z follows by linearity, since
 * derivations kill constants).
 */
std::vector<SymExpr> oracle_test_set(const PolyDivisor& d, long box);

/** One criterion/oracle disagreement with its full symbolic trace. */
struct Disagreement {
    std::string pair_class;
    std::string first;
    std::string second;
    bool criterion = false;
    bool oracle = false;
    std::string witness_input;   // empty when the oracle found no witness
    std::string witness_output;
};

/** Summary of an exhaustive criterion-versus-oracle sweep over one divisor. */
struct CrossCheckReport {
    long box = 0;
    long verticals = 0;
    long horizontals = 0;
    long vv_pairs = 0;
    long vh_pairs = 0;
    long hh_pairs = 0;
    long vv_commuting = 0;
    long vh_commuting = 0;
    long hh_commuting = 0;
    std::vector<Disagreement> disagreements;
    bool ok() const { return disagreements.empty(); }
};

/**
 * Enumerates every derivation attached to the divisor within the box and
 * compares the combinatorial criterion against the brute-force oracle on all
 * unordered pairs, self-pairs included.  Ray type: each tail-cone root e with
 * coefficients phi_min(e) * t^k for k = 0, 1, 2, where phi_min is the minimal
 * admissible coefficient.  Line type: every admissible (e, s) of every
 * coloring, as enumerated by the root-family search.  Commuting counts follow
 * the oracle verdict; any disagreement is recorded with witnesses.
 */
CrossCheckReport cross_check(const PolyDivisor& d, long box);

/**
 * Decides symbolically whether sum_k coeffs[k] / (t - points[k]) is a
 * constant function of t.  Over the common denominator the numerator has
 * degree strictly below the denominator, so the sum is constant iff the
 * numerator vanishes identically — equivalently iff every coefficient is
 * zero, the fact the commutation analysis leans on.  Throws
 * std::invalid_argument on repeated points or mismatched lengths.
 */
bool lemma_ratfun_test(const std::vector<Rat>& points, const std::vector<Rat>& coeffs);

/** One-line printable description of a derivation (type, root data, coloring). */
std::string derivation_str(const Derivation& D);

}  // namespace tvar
