#pragma once

#include <vector>

#include "tvar/linalg.hpp"

namespace tvar {

/**
 * Convex rational polyhedral cone, stored by an irredundant primitive
 * generator set. For a pointed cone the stored generators are exactly the
 * primitive extreme rays, which is what Demazure-root checks require; for
 * non-pointed cones (e.g. duals of low-dimensional cones) the set is a
 * minimal generating family but individual members need not be extreme.
 */
class Cone {
  public:
    /** Prunes the generators to an irredundant primitive set (deterministic order). */
    Cone(int rank, std::vector<QVec> generators);
    Cone(int rank, const std::vector<ZVec>& generators);
    static Cone zero(int rank);

    int rank() const { return rank_; }
    const std::vector<ZVec>& rays() const { return rays_; }
    bool is_trivial() const { return rays_.empty(); }

    /** Exact membership test (Fourier-Motzkin feasibility of the multiplier system). */
    bool contains(const QVec& v) const;
    bool contains(const ZVec& v) const;

    /** Pointed iff cone ∩ -cone = {0}. */
    bool is_pointed() const;

    /** Dual cone {m : <m, u> >= 0 for all u in this cone}, via double description. */
    Cone dual() const;

    /** Geometric equality (mutual containment of generators). */
    bool operator==(const Cone& other) const;
    bool operator!=(const Cone& other) const { return !(*this == other); }

  private:
    int rank_;
    std::vector<ZVec> rays_;
};

}  // namespace tvar
