#pragma once

#include <map>
#include <string>
#include <vector>

#include "tvar/linalg.hpp"

namespace tvar {

/** Dense univariate polynomial helpers over Q, coefficients by ascending degree. */
namespace polyq {

using Poly = std::vector<Rat>;

Poly trim(Poly p);
bool is_zero(const Poly& p);
long degree(const Poly& p);  // -1 for zero
Poly add(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Rat& c, const Poly& p);
Rat eval(const Poly& p, const Rat& x);
/** The polynomial t - z. */
Poly linear(const Rat& z);
/** (t - z)^k for k >= 0. */
Poly power_linear(const Rat& z, long k);
/** Exact division by (t - z); requires eval(p, z) == 0. */
Poly divide_root(const Poly& p, const Rat& z);
long root_multiplicity(const Poly& p, const Rat& z);

}  // namespace polyq

/**
 * One monomial  coeff * prod_z (t - z)^{factors[z]} * chi^{weight}.
 * The point z = 0 encodes plain powers of t; exponents may be negative
 * (poles). The factor map never stores zero exponents.
 */
struct SymTerm {
    Rat coeff;
    std::map<Rat, long> factors;
    ZVec weight;
};

/**
 * Finite sum of SymTerms, kept in canonical form: terms grouped by weight;
 * within one weight the function part is written as a common factored part
 * prod (t - z)^{L_z} times an expanded numerator polynomial whose roots at
 * tracked points have been folded back into the exponents. The zero
 * expression is the empty term list, so semantic zero-testing is structural.
 *
 * Two canonical forms can still differ textually when they track different
 * point sets for equal functions (e.g. "t - 1" built as a single factor vs.
 * as a difference); equality therefore subtracts and tests zero.
 */
class SymExpr {
  public:
    explicit SymExpr(int rank);
    SymExpr(int rank, std::vector<SymTerm> terms);

    int rank() const { return rank_; }
    const std::vector<SymTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static SymExpr zero(int rank) { return SymExpr(rank); }
    static SymExpr constant(int rank, const Rat& c);
    static SymExpr one(int rank) { return constant(rank, Rat(1)); }
    static SymExpr monomial(int rank, const Rat& coeff, const std::map<Rat, long>& factors,
                            const ZVec& weight);
    static SymExpr chi(int rank, const ZVec& weight);
    /** (t - z)^k as an expression of weight zero. */
    static SymExpr t_power(int rank, const Rat& z, long k);

    SymExpr operator+(const SymExpr& o) const;
    SymExpr operator-(const SymExpr& o) const;
    SymExpr operator*(const SymExpr& o) const;
    SymExpr operator-() const;
    SymExpr scaled(const Rat& c) const;
    /** Integer power; negative exponents require a single-term expression. */
    SymExpr pow(long k) const;
    SymExpr derivative_t() const;

    /** Semantic equality: (a - b) canonicalizes to zero. */
    bool operator==(const SymExpr& o) const;
    bool operator!=(const SymExpr& o) const { return !(*this == o); }

    /** Weights present, sorted lexicographically. */
    std::vector<ZVec> weights() const;
    SymExpr component(const ZVec& weight) const;

    /** Function part of one weight: prod (t-z)^{exponents[z]} * numerator(t). */
    struct WeightPart {
        std::map<Rat, long> exponents;
        polyq::Poly numerator;  // no roots at tracked points
    };
    WeightPart weight_part(const ZVec& weight) const;

    /** Order of vanishing at z of the weight component; throws if that component is zero. */
    long ord_at(const ZVec& weight, const Rat& z) const;

    /** Substitute t -> t + delta (factor points shift to z - delta). */
    SymExpr shifted_t(const Rat& delta) const;

    std::string str() const;
    static SymExpr parse(int rank, const std::string& text);

  private:
    void canonicalize();
    int rank_;
    std::vector<SymTerm> terms_;
};

}  // namespace tvar
