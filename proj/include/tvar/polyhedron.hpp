#pragma once

#include <vector>

#include "tvar/cone.hpp"

namespace tvar {

/**
 * Rational polyhedron given by its Minkowski decomposition
 * conv(vertices) + recession cone. The recession cone must be pointed (all
 * divisor coefficients in this library have pointed tails), which guarantees
 * the vertex set is nonempty and uniquely determined; construction prunes the
 * supplied points down to the true vertices.
 */
class Polyhedron {
  public:
    Polyhedron(std::vector<QVec> vertices, Cone recession);

    /** The polyhedron {0} + sigma. */
    static Polyhedron trivial(const Cone& sigma);

    int rank() const { return recession_.rank(); }
    const std::vector<QVec>& vertices() const { return vertices_; }
    const Cone& recession() const { return recession_; }

    /**
     * Exact vertex test: v is a vertex iff it is not a convex-plus-recession
     * combination of the remaining vertices. Because construction already
     * prunes, this reduces to membership in the stored list, but arbitrary
     * probe points (midpoints etc.) are handled correctly.
     */
    bool is_vertex(const QVec& v) const;

    bool contains(const QVec& p) const;

    /**
     * Support function h(m) = min <m, .> over the polyhedron.
     * Throws when m lies outside the dual of the recession cone (min = -inf).
     */
    Rat support_eval(const QVec& m) const;
    Rat support_eval(const ZVec& m) const;

    /** min <m, v> over the vertex list only; finite even when support_eval would throw. */
    Rat vertex_min(const QVec& m) const;
    Rat vertex_min(const ZVec& m) const;

    Polyhedron minkowski_sum(const Polyhedron& other) const;
    /** Translate by -w (used by divisor shifts). */
    Polyhedron translated(const QVec& shift) const;

    bool operator==(const Polyhedron& other) const;
    bool operator!=(const Polyhedron& other) const { return !(*this == other); }

  private:
    std::vector<QVec> vertices_;  // sorted lexicographically, irredundant
    Cone recession_;
};

}  // namespace tvar
