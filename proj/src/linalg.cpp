#include "tvar/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tvar {

QVec to_qvec(const ZVec& v) {
    QVec out;
    out.reserve(v.size());
    for (long c : v) out.emplace_back(c);
    return out;
}

ZVec to_zvec(const QVec& v) {
    ZVec out;
    out.reserve(v.size());
    for (const Rat& c : v) out.push_back(rat_to_long(c));
    return out;
}

bool is_lattice(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& c) { return rat_is_integer(c); });
}

QVec qvec_zero(int rank) { return QVec(static_cast<std::size_t>(rank), Rat(0)); }
ZVec zvec_zero(int rank) { return ZVec(static_cast<std::size_t>(rank), 0L); }

bool qvec_is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& c) { return c == 0; });
}

bool zvec_is_zero(const ZVec& v) {
    return std::all_of(v.begin(), v.end(), [](long c) { return c == 0; });
}

static void check_rank(std::size_t a, std::size_t b) {
    if (a != b) throw std::invalid_argument("vector rank mismatch");
}

QVec qvec_add(const QVec& a, const QVec& b) {
    check_rank(a.size(), b.size());
    QVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

QVec qvec_sub(const QVec& a, const QVec& b) {
    check_rank(a.size(), b.size());
    QVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

QVec qvec_scale(const Rat& c, const QVec& a) {
    QVec out(a);
    for (Rat& x : out) x *= c;
    return out;
}

ZVec zvec_add(const ZVec& a, const ZVec& b) {
    check_rank(a.size(), b.size());
    ZVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

ZVec zvec_sub(const ZVec& a, const ZVec& b) {
    check_rank(a.size(), b.size());
    ZVec out(a);
    for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
    return out;
}

ZVec zvec_neg(const ZVec& a) {
    ZVec out(a);
    for (long& x : out) x = -x;
    return out;
}

ZVec zvec_scale(long c, const ZVec& a) {
    ZVec out(a);
    for (long& x : out) x *= c;
    return out;
}

long zvec_l1(const ZVec& a) {
    long s = 0;
    for (long x : a) s += (x < 0 ? -x : x);
    return s;
}

Rat pairing(const QVec& m, const QVec& p) {
    check_rank(m.size(), p.size());
    Rat s(0);
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * p[i];
    return s;
}

Rat pairing(const ZVec& m, const QVec& p) { return pairing(to_qvec(m), p); }
Rat pairing(const QVec& m, const ZVec& p) { return pairing(m, to_qvec(p)); }

long pairing(const ZVec& m, const ZVec& p) {
    check_rank(m.size(), p.size());
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * p[i];
    return s;
}

ZVec primitive(const QVec& v) {
    if (qvec_is_zero(v)) throw std::invalid_argument("primitive of the zero vector");
    mpz_class lcm_den(1);
    for (const Rat& c : v) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> scaled;
    scaled.reserve(v.size());
    mpz_class g(0);
    for (const Rat& c : v) {
        mpz_class num = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        scaled.push_back(num);
    }
    ZVec out;
    out.reserve(v.size());
    for (const mpz_class& z : scaled) {
        mpz_class q = z / g;
        if (!q.fits_slong_p()) throw std::overflow_error("primitive vector out of range");
        out.push_back(q.get_si());
    }
    return out;
}

ZVec primitive(const ZVec& v) { return primitive(to_qvec(v)); }

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility
// ---------------------------------------------------------------------------

namespace {

/** Internal inequality a.x >= b (or > b when strict). */
struct Row {
    QVec a;
    Rat b;
    bool strict;
};

/** Scale to integer coefficients with gcd 1 so duplicates compare equal. */
void normalize_row(Row& r) {
    mpz_class lcm_den(1);
    for (const Rat& c : r.a) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), r.b.get_den_mpz_t());
    mpz_class g(0);
    auto fold = [&](const Rat& c) {
        mpz_class num = c.get_num() * (lcm_den / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    };
    for (const Rat& c : r.a) fold(c);
    fold(r.b);
    if (g == 0) return;
    Rat scale(lcm_den, g);
    scale.canonicalize();
    for (Rat& c : r.a) c *= scale;
    r.b *= scale;
}

bool row_is_const(const Row& r) { return qvec_is_zero(r.a); }

/** For a row with zero coefficients: does 0 (rel) b hold? */
bool const_row_ok(const Row& r) { return r.strict ? (0 > r.b) : (0 >= r.b); }

std::tuple<QVec, Rat, bool> row_key(const Row& r) { return {r.a, r.b, r.strict}; }

}  // namespace

bool fm_feasible(const std::vector<LinCond>& conds, int nvars) {
    std::vector<Row> rows;
    rows.reserve(conds.size() * 2);
    for (const LinCond& c : conds) {
        if (static_cast<int>(c.a.size()) != nvars)
            throw std::invalid_argument("condition arity mismatch");
        switch (c.rel) {
            case LinCond::Rel::Eq:
                rows.push_back({c.a, c.b, false});
                rows.push_back({qvec_scale(Rat(-1), c.a), -c.b, false});
                break;
            case LinCond::Rel::Ge:
                rows.push_back({c.a, c.b, false});
                break;
            case LinCond::Rel::Gt:
                rows.push_back({c.a, c.b, true});
                break;
        }
    }

    for (int var = 0; var < nvars; ++var) {
        std::vector<Row> pos, neg, rest;
        for (const Row& r : rows) {
            const Rat& c = r.a[var];
            if (c > 0)
                pos.push_back(r);
            else if (c < 0)
                neg.push_back(r);
            else
                rest.push_back(r);
        }
        // With bounds on one side only, the variable can absorb those rows entirely.
        if (!pos.empty() && !neg.empty()) {
            for (const Row& p : pos) {
                for (const Row& n : neg) {
                    // p: a_p.x >= b_p with a_p[var] > 0  (lower bound on x_var)
                    // n: a_n.x >= b_n with a_n[var] < 0  (upper bound on x_var)
                    Rat cp = p.a[var];
                    Rat cn = -n.a[var];
                    Row combined;
                    combined.a = qvec_add(qvec_scale(cn, p.a), qvec_scale(cp, n.a));
                    combined.b = cn * p.b + cp * n.b;
                    combined.strict = p.strict || n.strict;
                    combined.a[var] = 0;
                    rest.push_back(std::move(combined));
                }
            }
        }
        std::set<std::tuple<QVec, Rat, bool>> seen;
        rows.clear();
        for (Row& r : rest) {
            normalize_row(r);
            if (row_is_const(r)) {
                if (!const_row_ok(r)) return false;
                continue;
            }
            if (seen.insert(row_key(r)).second) rows.push_back(std::move(r));
        }
    }
    for (const Row& r : rows)
        if (row_is_const(r) && !const_row_ok(r)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Row spaces and nullspaces
// ---------------------------------------------------------------------------

QVec SpanBasis::reduce(QVec v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rat& c = v[pivots_[i]];
        if (c != 0) {
            Rat factor = c;  // pivot entries are 1
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= factor * rows_[i][j];
        }
    }
    return v;
}

bool SpanBasis::contains(const QVec& v) const {
    if (static_cast<int>(v.size()) != ncols_) throw std::invalid_argument("span arity mismatch");
    return qvec_is_zero(reduce(v));
}

bool SpanBasis::insert(const QVec& v) {
    if (static_cast<int>(v.size()) != ncols_) throw std::invalid_argument("span arity mismatch");
    QVec r = reduce(v);
    int pivot = -1;
    for (int j = 0; j < ncols_; ++j)
        if (r[j] != 0) {
            pivot = j;
            break;
        }
    if (pivot < 0) return false;
    Rat inv = 1 / r[pivot];
    for (Rat& c : r) c *= inv;
    // Back-substitute into existing rows to keep reduced echelon form.
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rat c = rows_[i][pivot];
        if (c != 0)
            for (int j = 0; j < ncols_; ++j) rows_[i][j] -= c * r[j];
    }
    std::size_t at = 0;
    while (at < pivots_.size() && pivots_[at] < pivot) ++at;
    rows_.insert(rows_.begin() + at, std::move(r));
    pivots_.insert(pivots_.begin() + at, pivot);
    return true;
}

std::vector<QVec> nullspace(const std::vector<QVec>& rows, int ncols) {
    std::vector<QVec> rref;
    std::vector<int> pivots;
    for (const QVec& row : rows) {
        QVec v = row;
        for (std::size_t i = 0; i < rref.size(); ++i) {
            Rat c = v[pivots[i]];
            if (c != 0)
                for (int j = 0; j < ncols; ++j) v[j] -= c * rref[i][j];
        }
        int p = -1;
        for (int j = 0; j < ncols; ++j)
            if (v[j] != 0) {
                p = j;
                break;
            }
        if (p < 0) continue;
        Rat inv = 1 / v[p];
        for (Rat& c : v) c *= inv;
        for (std::size_t i = 0; i < rref.size(); ++i) {
            Rat c = rref[i][p];
            if (c != 0)
                for (int j = 0; j < ncols; ++j) rref[i][j] -= c * v[j];
        }
        std::size_t at = 0;
        while (at < pivots.size() && pivots[at] < p) ++at;
        rref.insert(rref.begin() + at, std::move(v));
        pivots.insert(pivots.begin() + at, p);
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVec> result;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        QVec v = qvec_zero(ncols);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rref[i][free];
        result.push_back(std::move(v));
    }
    return result;
}

}  // namespace tvar
