#include "tvar/polyhedron.hpp"

#include <algorithm>
#include <stdexcept>

namespace tvar {

namespace {

/**
 * Is p in conv(points) + cone(rays)? Exact feasibility:
 *   p = sum lambda_i v_i + sum mu_j r_j,  lambda >= 0, sum lambda = 1, mu >= 0.
 */
bool in_hull(const std::vector<QVec>& points, const std::vector<ZVec>& rays, const QVec& p) {
    if (points.empty()) return false;
    const int np = static_cast<int>(points.size());
    const int nr = static_cast<int>(rays.size());
    const int nv = np + nr;
    const int rank = static_cast<int>(p.size());
    std::vector<LinCond> conds;
    for (int i = 0; i < nv; ++i) {
        LinCond nonneg;
        nonneg.a = qvec_zero(nv);
        nonneg.a[i] = 1;
        nonneg.b = 0;
        conds.push_back(std::move(nonneg));
    }
    {
        LinCond sum1;
        sum1.a = qvec_zero(nv);
        for (int i = 0; i < np; ++i) sum1.a[i] = 1;
        sum1.b = 1;
        sum1.rel = LinCond::Rel::Eq;
        conds.push_back(std::move(sum1));
    }
    for (int c = 0; c < rank; ++c) {
        LinCond eq;
        eq.a = qvec_zero(nv);
        for (int i = 0; i < np; ++i) eq.a[i] = points[i][c];
        for (int j = 0; j < nr; ++j) eq.a[np + j] = rays[j][c];
        eq.b = p[c];
        eq.rel = LinCond::Rel::Eq;
        conds.push_back(std::move(eq));
    }
    return fm_feasible(conds, nv);
}

}  // namespace

Polyhedron::Polyhedron(std::vector<QVec> vertices, Cone recession) : recession_(std::move(recession)) {
    if (!recession_.is_pointed())
        throw std::invalid_argument("polyhedron recession cone must be pointed");
    if (vertices.empty()) throw std::invalid_argument("polyhedron needs at least one vertex");
    for (const QVec& v : vertices)
        if (static_cast<int>(v.size()) != recession_.rank())
            throw std::invalid_argument("polyhedron vertex rank mismatch");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    // v is a vertex of conv(V)+C iff v is not in conv(V \ {v}) + C; with a
    // pointed C this single test against all other candidates is exact.
    std::vector<QVec> kept;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        std::vector<QVec> others;
        others.reserve(vertices.size() - 1);
        for (std::size_t j = 0; j < vertices.size(); ++j)
            if (j != i) others.push_back(vertices[j]);
        if (!in_hull(others, recession_.rays(), vertices[i])) kept.push_back(vertices[i]);
    }
    vertices_ = std::move(kept);
}

Polyhedron Polyhedron::trivial(const Cone& sigma) {
    return Polyhedron({qvec_zero(sigma.rank())}, sigma);
}

bool Polyhedron::is_vertex(const QVec& v) const {
    return std::find(vertices_.begin(), vertices_.end(), v) != vertices_.end();
}

bool Polyhedron::contains(const QVec& p) const {
    return in_hull(vertices_, recession_.rays(), p);
}

Rat Polyhedron::support_eval(const QVec& m) const {
    for (const ZVec& r : recession_.rays())
        if (pairing(m, r) < 0)
            throw std::runtime_error("support function unbounded below: functional negative on recession ray");
    return vertex_min(m);
}

Rat Polyhedron::support_eval(const ZVec& m) const { return support_eval(to_qvec(m)); }

Rat Polyhedron::vertex_min(const QVec& m) const {
    Rat best = pairing(m, vertices_.front());
    for (std::size_t i = 1; i < vertices_.size(); ++i) {
        Rat v = pairing(m, vertices_[i]);
        if (v < best) best = v;
    }
    return best;
}

Rat Polyhedron::vertex_min(const ZVec& m) const { return vertex_min(to_qvec(m)); }

Polyhedron Polyhedron::minkowski_sum(const Polyhedron& other) const {
    if (rank() != other.rank()) throw std::invalid_argument("minkowski sum rank mismatch");
    std::vector<QVec> sums;
    sums.reserve(vertices_.size() * other.vertices_.size());
    for (const QVec& a : vertices_)
        for (const QVec& b : other.vertices_) sums.push_back(qvec_add(a, b));
    std::vector<ZVec> rays = recession_.rays();
    const std::vector<ZVec>& rays2 = other.recession_.rays();
    rays.insert(rays.end(), rays2.begin(), rays2.end());
    return Polyhedron(std::move(sums), Cone(rank(), rays));
}

Polyhedron Polyhedron::translated(const QVec& shift) const {
    std::vector<QVec> vs;
    vs.reserve(vertices_.size());
    for (const QVec& v : vertices_) vs.push_back(qvec_sub(v, shift));
    return Polyhedron(std::move(vs), recession_);
}

bool Polyhedron::operator==(const Polyhedron& other) const {
    return vertices_ == other.vertices_ && recession_ == other.recession_;
}

}  // namespace tvar
