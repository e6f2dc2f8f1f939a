#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/linalg.hpp"
#include "tvar/pdivisor.hpp"

namespace tvar {

/**
 * The distinguished ray of a pointed cone for which e is a root: <e, ray> = -1
 * on that ray and <e, .> >= 0 on every other ray.  Empty when e is not a root
 * (in particular the trivial cone has no roots).
 */
std::optional<ZVec> demazure_ray(const Cone& c, const ZVec& e);

bool is_demazure_root(const Cone& c, const ZVec& e);

struct DemazureRoot {
    ZVec e;
    ZVec ray;
};

/** All roots with coordinates in [-box, box], in lexicographic order. */
std::vector<DemazureRoot> demazure_roots_in_box(const Cone& c, long box);

/**
 * Cones attached to a colored divisor: omega is generated by the degree
 * vertices relative to the chosen one together with the tail cone; omega_hat
 * adds one dimension and the distinguished ray rho_hat = (denom * v0, denom),
 * where v0 is the chosen vertex at the marked point and denom clears its
 * denominators.
 */
struct AssociatedCone {
    Cone omega;
    Cone omega_hat;
    long denom = 1;
    ZVec rho_hat;
};

AssociatedCone associated_cone(const ColoredDivisor& cd);

/**
 * Full admissibility test for a weight-and-exponent pair (e, s) against a
 * colored divisor: (e, s) must be a root of omega_hat at rho_hat, and at every
 * point the chosen vertex must beat the other vertices by the margin 1
 * (scaled by denom at the marked point).  Failure reasons are appended to
 * *why when given.
 */
bool is_coherent_pair(const ColoredDivisor& cd, const ZVec& e, long s,
                      std::vector<std::string>* why = nullptr);

struct HorizontalRoot {
    ZVec e;
    long s = 0;
};

/**
 * One family of admissible pairs: a coloring, its cones, the linear system
 * cutting out the admissible (e, s) (full and irredundant forms, the latter
 * also rendered), and the pairs found inside the box.
 */
struct HorizontalFamily {
    ColoredDivisor colored;
    AssociatedCone assoc;
    std::vector<LinCond> full_system;
    std::vector<LinCond> minimal_system;
    std::vector<std::string> system_lines;
    std::vector<HorizontalRoot> roots;
};

/**
 * Families for all valid colorings of d (in enumerate_colorings order), with
 * roots searched over e in [-box, box]^rank.
 */
std::vector<HorizontalFamily> enumerate_horizontal(const PolyDivisor& d, long box);

/**
 * Renders conditions over the variables (e_1..e_rank, s) as strings such as
 * "a + 4b <= -4" (rank >= 2 uses a, b, c, ...; rank 1 uses e).  Coefficients
 * are scaled primitive-integer with a positive leading coefficient, flipping
 * >= to <= as needed.
 */
std::vector<std::string> render_system(const std::vector<LinCond>& conds, int rank);

}  // namespace tvar
