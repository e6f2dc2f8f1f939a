#include "tvar/symexpr.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace tvar {

namespace polyq {

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

bool is_zero(const Poly& p) {
    return std::all_of(p.begin(), p.end(), [](const Rat& c) { return c == 0; });
}

long degree(const Poly& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return trim(std::move(out));
}

Poly mul(const Poly& a, const Poly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    Poly out(a.size() + b.size() - 1, Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return trim(std::move(out));
}

Poly scale(const Rat& c, const Poly& p) {
    if (c == 0) return {};
    Poly out(p);
    for (Rat& x : out) x *= c;
    return out;
}

Rat eval(const Poly& p, const Rat& x) {
    Rat acc(0);
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[i];
    return acc;
}

Poly linear(const Rat& z) { return {-z, Rat(1)}; }

Poly power_linear(const Rat& z, long k) {
    if (k < 0) throw std::invalid_argument("power_linear needs k >= 0");
    Poly out{Rat(1)};
    Poly base = linear(z);
    for (long i = 0; i < k; ++i) out = mul(out, base);
    return out;
}

Poly divide_root(const Poly& p, const Rat& z) {
    // Synthetic division by (t - z); remainder must vanish.
    if (is_zero(p)) return {};
    Poly out(p.size() - 1, Rat(0));
    Rat carry(0);
    for (long i = static_cast<long>(p.size()) - 1; i >= 1; --i) {
        carry = p[i] + carry * z;
        out[i - 1] = carry;
    }
    Rat rem = p[0] + carry * z;
    if (rem != 0) throw std::invalid_argument("divide_root: nonzero remainder");
    return trim(std::move(out));
}

long root_multiplicity(const Poly& p, const Rat& z) {
    if (is_zero(p)) throw std::invalid_argument("root multiplicity of zero polynomial");
    long mult = 0;
    Poly cur = p;
    while (eval(cur, z) == 0) {
        cur = divide_root(cur, z);
        ++mult;
    }
    return mult;
}

}  // namespace polyq

// ---------------------------------------------------------------------------
// Canonicalization
// ---------------------------------------------------------------------------

namespace {

struct Bucket {
    std::map<Rat, long> common;  // L_z per tracked point
    polyq::Poly numerator;       // zero iff the whole component vanishes
};

/** Common-denominator form of one weight's terms, with tracked roots folded into exponents. */
Bucket bucket_of(const std::vector<SymTerm>& group) {
    Bucket b;
    for (const SymTerm& t : group)
        for (const auto& [z, a] : t.factors) {
            auto [it, fresh] = b.common.try_emplace(z, a);
            if (!fresh) it->second = std::min(it->second, a);
        }
    // Points tracked by only some terms contribute exponent 0 from the others.
    for (auto& [z, L] : b.common)
        for (const SymTerm& t : group)
            if (!t.factors.count(z)) {
                L = std::min(L, 0L);
                break;
            }
    polyq::Poly P;
    for (const SymTerm& t : group) {
        polyq::Poly part{t.coeff};
        for (const auto& [z, L] : b.common) {
            long a = 0;
            if (auto it = t.factors.find(z); it != t.factors.end()) a = it->second;
            part = polyq::mul(part, polyq::power_linear(z, a - L));
        }
        P = polyq::add(P, part);
    }
    if (polyq::is_zero(P)) {
        b.numerator.clear();
        return b;
    }
    for (auto& [z, L] : b.common) {
        while (!polyq::is_zero(P) && polyq::eval(P, z) == 0) {
            P = polyq::divide_root(P, z);
            ++L;
        }
    }
    b.numerator = std::move(P);
    return b;
}

}  // namespace

void SymExpr::canonicalize() {
    std::map<ZVec, std::vector<SymTerm>> groups;
    for (SymTerm& t : terms_) {
        if (t.coeff == 0) continue;
        if (static_cast<int>(t.weight.size()) != rank_)
            throw std::invalid_argument("term weight rank mismatch");
        for (auto it = t.factors.begin(); it != t.factors.end();)
            it = (it->second == 0) ? t.factors.erase(it) : std::next(it);
        groups[t.weight].push_back(std::move(t));
    }
    terms_.clear();
    for (auto& [weight, group] : groups) {
        Bucket b = bucket_of(group);
        if (polyq::is_zero(b.numerator)) continue;
        long L0 = 0;
        if (auto it = b.common.find(Rat(0)); it != b.common.end()) {
            L0 = it->second;
            b.common.erase(it);
        }
        for (auto it = b.common.begin(); it != b.common.end();)
            it = (it->second == 0) ? b.common.erase(it) : std::next(it);
        for (std::size_t k = 0; k < b.numerator.size(); ++k) {
            if (b.numerator[k] == 0) continue;
            SymTerm t;
            t.coeff = b.numerator[k];
            t.factors = b.common;
            long exp0 = L0 + static_cast<long>(k);
            if (exp0 != 0) t.factors[Rat(0)] = exp0;
            t.weight = weight;
            terms_.push_back(std::move(t));
        }
    }
}

SymExpr::SymExpr(int rank) : rank_(rank) {}

SymExpr::SymExpr(int rank, std::vector<SymTerm> terms) : rank_(rank), terms_(std::move(terms)) {
    canonicalize();
}

SymExpr SymExpr::constant(int rank, const Rat& c) {
    return monomial(rank, c, {}, zvec_zero(rank));
}

SymExpr SymExpr::monomial(int rank, const Rat& coeff, const std::map<Rat, long>& factors,
                          const ZVec& weight) {
    SymTerm t;
    t.coeff = coeff;
    t.factors = factors;
    t.weight = weight;
    return SymExpr(rank, {std::move(t)});
}

SymExpr SymExpr::chi(int rank, const ZVec& weight) {
    return monomial(rank, Rat(1), {}, weight);
}

SymExpr SymExpr::t_power(int rank, const Rat& z, long k) {
    return monomial(rank, Rat(1), {{z, k}}, zvec_zero(rank));
}

SymExpr SymExpr::operator+(const SymExpr& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch in +");
    std::vector<SymTerm> all = terms_;
    all.insert(all.end(), o.terms_.begin(), o.terms_.end());
    return SymExpr(rank_, std::move(all));
}

SymExpr SymExpr::operator-() const {
    std::vector<SymTerm> all = terms_;
    for (SymTerm& t : all) t.coeff = -t.coeff;
    SymExpr out(rank_);
    out.terms_ = std::move(all);  // negation preserves canonical form
    return out;
}

SymExpr SymExpr::operator-(const SymExpr& o) const { return *this + (-o); }

SymExpr SymExpr::operator*(const SymExpr& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("rank mismatch in *");
    std::vector<SymTerm> prod;
    prod.reserve(terms_.size() * o.terms_.size());
    for (const SymTerm& a : terms_) {
        for (const SymTerm& b : o.terms_) {
            SymTerm t;
            t.coeff = a.coeff * b.coeff;
            t.factors = a.factors;
            for (const auto& [z, k] : b.factors) {
                long& e = t.factors[z];
                e += k;
                if (e == 0) t.factors.erase(z);
            }
            t.weight = zvec_add(a.weight, b.weight);
            prod.push_back(std::move(t));
        }
    }
    return SymExpr(rank_, std::move(prod));
}

SymExpr SymExpr::scaled(const Rat& c) const {
    if (c == 0) return SymExpr(rank_);
    std::vector<SymTerm> all = terms_;
    for (SymTerm& t : all) t.coeff *= c;
    SymExpr out(rank_);
    out.terms_ = std::move(all);
    return out;
}

SymExpr SymExpr::pow(long k) const {
    if (k == 0) return one(rank_);
    if (k < 0) {
        if (terms_.size() != 1)
            throw std::invalid_argument("negative power of a non-monomial expression");
        const SymTerm& t = terms_.front();
        SymTerm inv;
        inv.coeff = 1 / t.coeff;
        for (const auto& [z, a] : t.factors) inv.factors[z] = -a;
        inv.weight = zvec_neg(t.weight);
        SymExpr base(rank_, {inv});
        return base.pow(-k);
    }
    SymExpr acc = one(rank_);
    for (long i = 0; i < k; ++i) acc = acc * (*this);
    return acc;
}

SymExpr SymExpr::derivative_t() const {
    std::vector<SymTerm> out;
    for (const SymTerm& t : terms_) {
        for (const auto& [z, a] : t.factors) {
            SymTerm d = t;
            d.coeff *= a;
            long& e = d.factors[z];
            e -= 1;
            if (e == 0) d.factors.erase(z);
            out.push_back(std::move(d));
        }
    }
    return SymExpr(rank_, std::move(out));
}

bool SymExpr::operator==(const SymExpr& o) const { return (*this - o).is_zero(); }

std::vector<ZVec> SymExpr::weights() const {
    std::vector<ZVec> out;
    for (const SymTerm& t : terms_)
        if (out.empty() || out.back() != t.weight) out.push_back(t.weight);
    return out;  // terms are sorted by weight already
}

SymExpr SymExpr::component(const ZVec& weight) const {
    std::vector<SymTerm> sel;
    for (const SymTerm& t : terms_)
        if (t.weight == weight) sel.push_back(t);
    SymExpr out(rank_);
    out.terms_ = std::move(sel);
    return out;
}

SymExpr::WeightPart SymExpr::weight_part(const ZVec& weight) const {
    std::vector<SymTerm> sel;
    for (const SymTerm& t : terms_)
        if (t.weight == weight) sel.push_back(t);
    Bucket b = bucket_of(sel);
    WeightPart wp;
    if (polyq::is_zero(b.numerator)) return wp;  // empty numerator signals zero component
    for (auto it = b.common.begin(); it != b.common.end();)
        it = (it->second == 0) ? b.common.erase(it) : std::next(it);
    wp.exponents = std::move(b.common);
    wp.numerator = std::move(b.numerator);
    return wp;
}

long SymExpr::ord_at(const ZVec& weight, const Rat& z) const {
    WeightPart wp = weight_part(weight);
    if (polyq::is_zero(wp.numerator))
        throw std::invalid_argument("order of vanishing of the zero component");
    long ord = 0;
    if (auto it = wp.exponents.find(z); it != wp.exponents.end()) ord = it->second;
    return ord + polyq::root_multiplicity(wp.numerator, z);
}

SymExpr SymExpr::shifted_t(const Rat& delta) const {
    std::vector<SymTerm> out;
    out.reserve(terms_.size());
    for (const SymTerm& t : terms_) {
        SymTerm s;
        s.coeff = t.coeff;
        s.weight = t.weight;
        for (const auto& [z, a] : t.factors) s.factors[z - delta] = a;
        out.push_back(std::move(s));
    }
    return SymExpr(rank_, std::move(out));
}

// ---------------------------------------------------------------------------
// Text form
// ---------------------------------------------------------------------------

std::string SymExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const SymTerm& t : terms_) {
        if (!first_term) os << " + ";
        first_term = false;
        os << rat_str(t.coeff);
        for (const auto& [z, a] : t.factors) {
            os << " * ";
            if (z == 0)
                os << "t^" << a;
            else if (z > 0)
                os << "(t-" << rat_str(z) << ")^" << a;
            else
                os << "(t+" << rat_str(-z) << ")^" << a;
        }
        if (!zvec_is_zero(t.weight)) {
            os << " * X^[";
            for (std::size_t i = 0; i < t.weight.size(); ++i) {
                if (i) os << ",";
                os << t.weight[i];
            }
            os << "]";
        }
    }
    return os.str();
}

namespace {

long parse_long(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    std::size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed integer literal: " + s);
    }
    if (pos != s.size()) throw std::invalid_argument("malformed integer literal: " + s);
    return v;
}

std::vector<std::string> split_on(const std::string& text, const std::string& sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t at = text.find(sep, start);
        if (at == std::string::npos) {
            parts.push_back(text.substr(start));
            break;
        }
        parts.push_back(text.substr(start, at - start));
        start = at + sep.size();
    }
    return parts;
}

std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

}  // namespace

SymExpr SymExpr::parse(int rank, const std::string& text) {
    std::string body = trimmed(text);
    if (body.empty()) throw std::invalid_argument("empty expression");
    if (body == "0") return SymExpr(rank);
    std::vector<SymTerm> terms;
    for (const std::string& raw_term : split_on(body, " + ")) {
        std::vector<std::string> tokens = split_on(trimmed(raw_term), " * ");
        if (tokens.empty()) throw std::invalid_argument("empty term in expression");
        SymTerm t;
        t.coeff = rat_parse(trimmed(tokens[0]));
        t.weight = zvec_zero(rank);
        bool saw_weight = false;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            std::string tok = trimmed(tokens[i]);
            if (tok.rfind("t^", 0) == 0) {
                t.factors[Rat(0)] += parse_long(tok.substr(2));
            } else if (tok.rfind("(t-", 0) == 0 || tok.rfind("(t+", 0) == 0) {
                std::size_t close = tok.find(")^");
                if (close == std::string::npos)
                    throw std::invalid_argument("malformed factor: " + tok);
                Rat z = rat_parse(tok.substr(3, close - 3));
                if (tok[2] == '+') z = -z;
                t.factors[z] += parse_long(tok.substr(close + 2));
            } else if (tok.rfind("X^[", 0) == 0) {
                if (saw_weight) throw std::invalid_argument("duplicate weight in term");
                if (tok.back() != ']') throw std::invalid_argument("malformed weight: " + tok);
                std::string inner = tok.substr(3, tok.size() - 4);
                std::vector<std::string> coords = inner.empty() ? std::vector<std::string>{} : split_on(inner, ",");
                if (static_cast<int>(coords.size()) != rank)
                    throw std::invalid_argument("weight rank mismatch: " + tok);
                for (int c = 0; c < rank; ++c) t.weight[c] = parse_long(trimmed(coords[c]));
                saw_weight = true;
            } else {
                throw std::invalid_argument("unrecognized factor: " + tok);
            }
        }
        terms.push_back(std::move(t));
    }
    return SymExpr(rank, std::move(terms));
}

}  // namespace tvar
