#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tvar/cone.hpp"
#include "tvar/polyhedron.hpp"
#include "tvar/rational.hpp"
#include "tvar/symexpr.hpp"

namespace tvar {

/** One polyhedral coefficient attached to a point of the affine line. */
struct PolyCoefficient {
    Rat point;
    Polyhedron shape;
};

/**
 * Formal sum of polyhedral coefficients over points of the affine line, with a
 * common tail cone sigma. Coefficients equal to the trivial polyhedron (just
 * sigma) are dropped; the remaining points form the support.
 */
class PolyDivisor {
public:
    PolyDivisor(Cone sigma, std::vector<PolyCoefficient> coefficients);

    int rank() const { return sigma_.rank(); }
    const Cone& sigma() const { return sigma_; }
    /** Stored (non-trivial) coefficients, sorted by point. */
    const std::vector<PolyCoefficient>& coefficients() const { return coeffs_; }
    /** Coefficient at z; the trivial polyhedron when z is not stored. */
    Polyhedron coefficient_at(const Rat& z) const;
    std::vector<Rat> support() const;
    /** Sum of all coefficients (Minkowski); the trivial polyhedron when none. */
    Polyhedron degree() const;

    bool operator==(const PolyDivisor& o) const;
    bool operator!=(const PolyDivisor& o) const { return !(*this == o); }

private:
    Cone sigma_;
    std::vector<PolyCoefficient> coeffs_;
};

/** Finite formal rational divisor on the line: point -> coefficient. */
using QDivisor = std::map<Rat, Rat>;

/** Per-point support-function values at m; requires m in the dual of sigma. */
QDivisor evaluate(const PolyDivisor& d, const ZVec& m);

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
};

/** Structural validation: pointed sigma and matching tail cones. */
ValidationReport check_proper(const PolyDivisor& d);

/** Exponent of (t - z) in the minimal section of weight m, for every support point. */
std::map<Rat, long> minimal_section_exponents(const PolyDivisor& d, const ZVec& m);

/** Minimal weight-m section as a weight-0 factored function (poles = negative exponents). */
SymExpr minimal_section(const PolyDivisor& d, const ZVec& m);

/** Basis of the weight-m space up to polynomial degree deg_bound over the minimal section. */
std::vector<SymExpr> weight_space_basis(const PolyDivisor& d, const ZVec& m, long deg_bound);

/** One homogeneous algebra generator: weight and function part. */
struct Generator {
    ZVec weight;
    SymExpr f;
};

/** The full element f * chi^weight. */
SymExpr generator_element(const Generator& g);

/**
 * Greedy homogeneous generator search over weights with coordinates bounded by
 * box, followed by a minimization pass removing elements that factor through
 * the others. Deterministic discovery order: weight 0 first, then ascending
 * (L1 norm, lex).
 */
std::vector<Generator> find_generators(const PolyDivisor& d, long box);

/** A linear relation among monomials in the generators; each monomial is (coeff, exponents). */
struct Relation {
    ZVec weight;
    std::vector<std::pair<Rat, std::vector<long>>> monomials;
};

/** Nullspace search for relations among generator monomials of total degree <= bound. */
std::vector<Relation> find_relations(const PolyDivisor& d, const std::vector<Generator>& gens,
                                     long total_degree_bound);

std::string relation_str(const Relation& r);

/**
 * Multiplicative family realizing a lattice re-coordinatization of the divisor:
 * phi(m) = prod_z (t - z)^{-<m, w_z>}, so phi(m) * phi(m') = phi(m + m').
 * Mapping f * chi^m of the shifted algebra to f * phi(m) * chi^m lands in the
 * original algebra.
 */
struct ShiftFamily {
    int rank = 0;
    std::map<Rat, ZVec> shifts;
    SymExpr phi(const ZVec& m) const;
};

/** New divisor with each coefficient translated by its lattice shift, plus the phi family. */
std::pair<PolyDivisor, ShiftFamily> shift_divisor(const PolyDivisor& d,
                                                  const std::map<Rat, ZVec>& shifts);

/**
 * A divisor with one chosen vertex per coefficient and a marked point; only the
 * marked point may carry a non-lattice vertex, and the vertex sum must be a
 * vertex of the degree polyhedron.
 */
struct ColoredDivisor {
    PolyDivisor base;
    std::map<Rat, QVec> chosen;
    Rat marked_point;

    int rank() const { return base.rank(); }
    /** Chosen vertex at z (zero vector for points outside the support). */
    QVec vertex_at(const Rat& z) const;
    /** <m, v_z> as an exact rational. */
    Rat vertex_value(const Rat& z, const QVec& m) const;
    Rat vertex_value(const Rat& z, const ZVec& m) const;
    /** Sum of all chosen vertices. */
    QVec degree_vertex() const;
    bool all_lattice() const;
    bool operator==(const ColoredDivisor& o) const;
};

/** Validate a coloring; throws std::invalid_argument naming the violated condition. */
ColoredDivisor make_colored(const PolyDivisor& d, const std::map<Rat, QVec>& vertices,
                            const Rat& marked_point);

/** Non-throwing variant; on rejection stores the reason if the pointer is given. */
std::optional<ColoredDivisor> try_make_colored(const PolyDivisor& d,
                                               const std::map<Rat, QVec>& vertices,
                                               const Rat& marked_point,
                                               std::string* reason = nullptr);

/**
 * All valid colorings with a canonical marked point (the unique non-lattice
 * point when present, otherwise 0). Ordered all-lattice first, then by the
 * chosen-vertex map.
 */
std::vector<ColoredDivisor> enumerate_colorings(const PolyDivisor& d);

/**
 * Marked points admissible for a given vertex choice: the forced point when a
 * non-lattice vertex is present, otherwise the support points together with 0.
 */
std::vector<Rat> admissible_markings(const PolyDivisor& d, const std::map<Rat, QVec>& vertices);

}  // namespace tvar
