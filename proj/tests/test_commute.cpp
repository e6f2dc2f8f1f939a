#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tvar/commute.hpp"

using namespace tvar;

namespace {

QVec qv(std::initializer_list<const char*> coords) {
    QVec v;
    for (const char* c : coords) v.push_back(rat_parse(c));
    return v;
}

ZVec zv(std::initializer_list<long> coords) { return ZVec(coords); }

SymExpr mono(int rank, const Rat& c, std::map<Rat, long> factors, const ZVec& w) {
    return SymExpr::monomial(rank, c, factors, w);
}

PolyDivisor interval_divisor() {
    Cone sigma = Cone::zero(1);
    Polyhedron seg({qv({"0"}), qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(0), seg}});
}

PolyDivisor triangle_divisor() {
    Cone sigma = Cone::zero(2);
    Polyhedron tri({qv({"0", "0"}), qv({"0", "1"}), qv({"-1/4", "-1"})}, sigma);
    Polyhedron seg({qv({"0", "0"}), qv({"0", "1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(0), tri}, {Rat(1), seg}});
}

PolyDivisor orthant_trivial_divisor() {
    Cone sigma(2, std::vector<ZVec>{zv({1, 0}), zv({0, 1})});
    return PolyDivisor(sigma, {});
}

PolyDivisor ray_shift_divisor() {
    Cone sigma(1, std::vector<ZVec>{zv({1})});
    Polyhedron p({qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(0), p}});
}

/** Same shape as ray_shift_divisor but supported at z = 1. */
PolyDivisor ray_shift_at_one_divisor() {
    Cone sigma(1, std::vector<ZVec>{zv({1})});
    Polyhedron p({qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(1), p}});
}

/** {1} + sigma at both z = 0 and z = 1. */
PolyDivisor double_shift_divisor() {
    Cone sigma(1, std::vector<ZVec>{zv({1})});
    Polyhedron p({qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(0), p}, {Rat(1), p}});
}

/** Two unit intervals, at z = 0 and z = 1. */
PolyDivisor two_interval_divisor() {
    Cone sigma = Cone::zero(1);
    Polyhedron seg({qv({"0"}), qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(0), seg}, {Rat(1), seg}});
}

/** One unit interval at z = 1; the origin carries no coefficient. */
PolyDivisor interval_at_one_divisor() {
    Cone sigma = Cone::zero(1);
    Polyhedron seg({qv({"0"}), qv({"1"})}, sigma);
    return PolyDivisor(sigma, {{Rat(1), seg}});
}

SymExpr bracket(const Derivation& A, const Derivation& B, const SymExpr& x) {
    return apply(A, apply(B, x)) - apply(B, apply(A, x));
}

SymExpr hh_bracket(const AssociatedSystem& sys, const SymExpr& x) {
    const Derivation F{sys.first};
    const Derivation S{sys.second};
    return bracket(F, S, x);
}

/** The four line-type derivations on the triangle divisor used throughout. */
struct TriangleLNDs {
    PolyDivisor d;
    HorizontalLND D1, D2, D3, D4;
};

TriangleLNDs triangle_lnds() {
    PolyDivisor d = triangle_divisor();
    const QVec z2 = qv({"0", "0"});
    const QVec u2 = qv({"0", "1"});
    const QVec f2 = qv({"-1/4", "-1"});
    HorizontalLND D1 = as_horizontal(
        make_horizontal(make_colored(d, {{Rat(0), z2}, {Rat(1), z2}}, Rat(0)),
                        zv({-8, 1}), -1));
    HorizontalLND D2 = as_horizontal(
        make_horizontal(make_colored(d, {{Rat(0), u2}, {Rat(1), u2}}, Rat(0)),
                        zv({4, -1}), 0));
    HorizontalLND D3 = as_horizontal(
        make_horizontal(make_colored(d, {{Rat(0), f2}, {Rat(1), z2}}, Rat(0)),
                        zv({-3, 1}), 0));
    HorizontalLND D4 = as_horizontal(
        make_horizontal(make_colored(d, {{Rat(0), f2}, {Rat(1), u2}}, Rat(0)),
                        zv({9, -1}), 1));
    return {std::move(d), std::move(D1), std::move(D2), std::move(D3), std::move(D4)};
}

}  // namespace

TEST_CASE("ray-type brackets match the closed form") {
    PolyDivisor d = orthant_trivial_divisor();
    const SymExpr one = SymExpr::one(2);
    Derivation Da = make_vertical(d, zv({-1, 1}), one);
    Derivation Db = make_vertical(d, zv({1, -1}), one);
    const VerticalLND& a = as_vertical(Da);
    const VerticalLND& b = as_vertical(Db);
    CHECK(a.rho == zv({1, 0}));
    CHECK(b.rho == zv({0, 1}));

    const std::vector<ZVec> samples = {zv({1, 1}), zv({2, 1}), zv({0, 3}), zv({4, 0})};
    for (const ZVec& m : samples) {
        const SymExpr x = minimal_section(d, m) * SymExpr::chi(2, m);
        CHECK(comm_vv(a, b, m) == bracket(Da, Db, x));
        CHECK(comm_vv(a, b, m) == -comm_vv(b, a, m));
    }
    CHECK(comm_vv(a, b, zv({1, 1})).is_zero());
    CHECK(comm_vv(a, b, zv({2, 1})) == mono(2, Rat(-1), {}, zv({2, 1})));

    // The scalar coefficient is linear in the weight.
    CHECK(comm_vv_coeff(a, b, zv({3, 5})) ==
          comm_vv_coeff(a, b, zv({1, 2})) + comm_vv_coeff(a, b, zv({2, 3})));

    CHECK_FALSE(criterion_vv(a, b));

    // Equal distinguished rays commute regardless of the degrees.
    Derivation Dc = make_vertical(d, zv({-1, 0}), one);
    CHECK(criterion_vv(a, as_vertical(Dc)));
    for (const ZVec& m : samples) CHECK(bracket(Da, Dc, SymExpr::chi(2, m)).is_zero());

    // Mutually orthogonal roots and rays commute.
    Derivation Dd = make_vertical(d, zv({0, -1}), one);
    CHECK(criterion_vv(as_vertical(Dc), as_vertical(Dd)));
    for (const ZVec& m : samples) {
        CHECK(bracket(Dc, Dd, SymExpr::chi(2, m)).is_zero());
        CHECK(comm_vv(as_vertical(Dc), as_vertical(Dd), m).is_zero());
    }

    PairVerdict verdict = criterion(Da, Db);
    CHECK(verdict.tag == PairTag::VV);
    CHECK_FALSE(verdict.commutes);
    CHECK(pair_tag_str(verdict.tag) == "vertical-vertical");
    CHECK(criterion(Dc, Dd).commutes);
}

TEST_CASE("ray-type pairs with divisor-constrained coefficients") {
    PolyDivisor d = ray_shift_divisor();
    const SymExpr t = mono(1, 1, {{Rat(0), 1}}, zv({0}));
    Derivation Da = make_vertical(d, zv({-1}), t);
    Derivation Db = make_vertical(d, zv({-1}), t * t);
    CHECK(criterion_vv(as_vertical(Da), as_vertical(Db)));
    const ZVec m = zv({3});
    const SymExpr x = minimal_section(d, m) * SymExpr::chi(1, m);
    CHECK(comm_vv(as_vertical(Da), as_vertical(Db), m).is_zero());
    CHECK(bracket(Da, Db, x).is_zero());
}

TEST_CASE("mixed brackets in normalized position match the closed forms") {
    PolyDivisor d = ray_shift_divisor();
    const SymExpr t = mono(1, 1, {{Rat(0), 1}}, zv({0}));
    ColoredDivisor col = make_colored(d, {{Rat(0), qv({"1"})}}, Rat(0));
    HorizontalLND h0 = as_horizontal(make_horizontal(col, zv({0}), -1));
    HorizontalLND h1 = as_horizontal(make_horizontal(col, zv({1}), -2));
    Derivation Dh0{h0};
    Derivation Dh1{h1};
    Derivation Dv1 = make_vertical(d, zv({-1}), t);
    Derivation Dv2 = make_vertical(d, zv({-1}), t * t);
    const VerticalLND& v1 = as_vertical(Dv1);
    const VerticalLND& v2 = as_vertical(Dv2);

    const SymExpr t_elem = SymExpr::t_power(1, Rat(0), 1);
    for (const HorizontalLND* h : {&h0, &h1}) {
        const Derivation Dh{*h};
        for (const VerticalLND* v : {&v1, &v2}) {
            const Derivation Dv = make_vertical(d, v->e, v->phi);
            CHECK(comm_vh_t(*v, *h) == bracket(Dv, Dh, t_elem));
            for (long k = -1; k <= 3; ++k) {
                const ZVec m = zv({k});
                CHECK(comm_vh_chi(*v, *h, m) == bracket(Dv, Dh, SymExpr::chi(1, m)));
            }
        }
    }

    // Frozen values.
    CHECK(comm_vh_t(v1, h0).is_zero());
    CHECK(comm_vh_t(v1, h1) == SymExpr::one(1));
    CHECK(comm_vh_chi(v2, h0, zv({1})) == mono(1, Rat(-1), {{Rat(0), 1}}, zv({0})));

    CHECK(criterion_vh(v1, h0));
    CHECK_FALSE(criterion_vh(v2, h0));  // coefficient fails the first-order condition
    CHECK_FALSE(criterion_vh(v1, h1));  // root pairs nontrivially with the ray

    // The passing pair really annihilates algebra elements.
    for (long k = 0; k <= 2; ++k) {
        const ZVec m = zv({k});
        const SymExpr x = minimal_section(d, m) * SymExpr::chi(1, m);
        CHECK(bracket(Dv1, Dh0, x).is_zero());
    }
    CHECK_FALSE(bracket(Dv2, Dh0, SymExpr::chi(1, zv({1}))).is_zero());

    PairVerdict verdict = criterion(Dv1, Dh0);
    CHECK(verdict.tag == PairTag::VH);
    CHECK(verdict.commutes);
    CHECK(pair_tag_str(verdict.tag) == "vertical-horizontal");
    // Order of the arguments does not matter for the dispatch.
    CHECK(criterion(Dh0, Dv1).commutes);
    CHECK_FALSE(criterion(Dh1, Dv1).commutes);
}

TEST_CASE("mixed pairs normalize through translation") {
    PolyDivisor d = ray_shift_at_one_divisor();
    const SymExpr tm1 = mono(1, 1, {{Rat(1), 1}}, zv({0}));  // t - 1
    Derivation Dv = make_vertical(d, zv({-1}), tm1);
    Derivation Dv2 = make_vertical(d, zv({-1}), tm1 * tm1);

    ColoredDivisor marked_at_one = make_colored(d, {{Rat(1), qv({"1"})}}, Rat(1));
    HorizontalLND h = as_horizontal(make_horizontal(marked_at_one, zv({0}), -1));
    Derivation Dh{h};

    const auto [nv, nh] = normalize_vh(as_vertical(Dv), h);
    CHECK(nh.colored.marked_point == Rat(0));
    CHECK(nh.shift.shifts.empty());
    CHECK(nh.colored.base.support() == std::vector<Rat>{Rat(0)});
    CHECK(nv.phi == mono(1, 1, {{Rat(0), 1}}, zv({0})));
    CHECK(nv.base == nh.colored.base);

    CHECK(criterion_vh(as_vertical(Dv), h));
    CHECK_FALSE(criterion_vh(as_vertical(Dv2), h));

    const SymExpr t_elem = SymExpr::t_power(1, Rat(0), 1);
    const SymExpr x1 = minimal_section(d, zv({1})) * SymExpr::chi(1, zv({1}));
    CHECK(bracket(Dv, Dh, t_elem).is_zero());
    CHECK(bracket(Dv, Dh, x1).is_zero());
    CHECK_FALSE(bracket(Dv2, Dh, x1).is_zero());

    // The same operator marked at 0 instead normalizes through a lattice shift.
    ColoredDivisor marked_at_zero = make_colored(d, {{Rat(1), qv({"1"})}}, Rat(0));
    HorizontalLND h0 = as_horizontal(make_horizontal(marked_at_zero, zv({0}), -1));
    const auto [nv0, nh0] = normalize_vh(as_vertical(Dv), h0);
    CHECK(nh0.shift.shifts.empty());
    CHECK(nv0.phi == SymExpr::one(1));
    CHECK(criterion_vh(as_vertical(Dv), h0));
    CHECK(bracket(Dv, Derivation{h0}, x1).is_zero());

    // Normalized-position accessors reject unnormalized input.
    CHECK_THROWS_AS(comm_vh_t(as_vertical(Dv), h), std::invalid_argument);
    CHECK_THROWS_AS(comm_vh_chi(as_vertical(Dv), h0, zv({1})), std::invalid_argument);
}

TEST_CASE("mixed pair with translation and shift combined") {
    PolyDivisor d = double_shift_divisor();
    const SymExpr phi = mono(1, 1, {{Rat(0), 1}, {Rat(1), 1}}, zv({0}));  // t(t-1)
    Derivation Dv = make_vertical(d, zv({-1}), phi);
    ColoredDivisor col =
        make_colored(d, {{Rat(0), qv({"1"})}, {Rat(1), qv({"1"})}}, Rat(0));
    HorizontalLND h = as_horizontal(make_horizontal(col, zv({0}), -1));

    const auto [nv, nh] = normalize_vh(as_vertical(Dv), h);
    CHECK(nh.colored.marked_point == Rat(0));
    CHECK(nh.shift.shifts.empty());
    // The coefficient at z = 1 collapses onto the tail cone after the shift.
    CHECK(nh.colored.base.support() == std::vector<Rat>{Rat(0)});
    CHECK(nv.phi == mono(1, 1, {{Rat(0), 1}}, zv({0})));
    CHECK(criterion_vh(as_vertical(Dv), h));

    const Derivation Dh{h};
    const SymExpr x = minimal_section(d, zv({1})) * SymExpr::chi(1, zv({1}));
    CHECK(bracket(Dv, Dh, SymExpr::t_power(1, Rat(0), 1)).is_zero());
    CHECK(bracket(Dv, Dh, x).is_zero());

    // Re-marking at the other support point reaches the same verdict.
    HorizontalLND h1 = with_marking(h, Rat(1));
    CHECK(h1.colored.marked_point == Rat(1));
    CHECK(criterion_vh(as_vertical(Dv), h1));
}

TEST_CASE("line-type brackets match the closed forms") {
    TriangleLNDs tri = triangle_lnds();
    const SymExpr t_elem = SymExpr::t_power(2, Rat(0), 1);

    const std::vector<std::pair<const HorizontalLND*, const HorizontalLND*>> pairs = {
        {&tri.D1, &tri.D3}, {&tri.D1, &tri.D4}, {&tri.D3, &tri.D2},
        {&tri.D2, &tri.D4}, {&tri.D3, &tri.D4}, {&tri.D4, &tri.D3}};
    for (const auto& [a, b] : pairs) {
        const AssociatedSystem sys = associated_system(*a, *b);
        CHECK(comm_hh_t(sys) == hh_bracket(sys, t_elem));
        for (long i = -2; i <= 2; ++i)
            for (long j = -2; j <= 2; ++j) {
                const ZVec m = zv({i, j});
                CHECK(comm_hh_chi(sys, m) == hh_bracket(sys, SymExpr::chi(2, m)));
            }
    }

    // The shift of the first derivation is absorbed into the system.
    const AssociatedSystem s24 = associated_system(tri.D2, tri.D4);
    CHECK(s24.lattice_shift == std::map<Rat, ZVec>{{Rat(1), zv({0, 1})}});
    CHECK(s24.second.shift.shifts.empty());
    // With a trivial first shift the second derivation keeps its extra vertex.
    const AssociatedSystem s14 = associated_system(tri.D1, tri.D4);
    CHECK(s14.lattice_shift.empty());
    CHECK(s14.second.shift.shifts == std::map<Rat, ZVec>{{Rat(1), zv({0, 1})}});

    // Self-brackets vanish identically, including in shifted families.
    for (const HorizontalLND* D : {&tri.D1, &tri.D3, &tri.D4}) {
        const AssociatedSystem sys = associated_system(*D, *D);
        CHECK(comm_hh_t(sys).is_zero());
        for (long i = -2; i <= 2; ++i)
            for (long j = -2; j <= 2; ++j) CHECK(comm_hh_chi(sys, zv({i, j})).is_zero());
    }

    // Antisymmetry of the closed form when both orders share coordinates.
    const AssociatedSystem s13 = associated_system(tri.D1, tri.D3);
    const AssociatedSystem s31 = associated_system(tri.D3, tri.D1);
    CHECK(comm_hh_t(s13) == -comm_hh_t(s31));
    CHECK(comm_hh_chi(s13, zv({1, 1})) == -comm_hh_chi(s31, zv({1, 1})));

    // Split-marked presentation of a non-commuting pair: the closed forms
    // track the bracket with distinct marked points and a shift vertex at
    // the first marked point.
    HorizontalLND D1at1 = with_marking(tri.D1, Rat(1));
    const AssociatedSystem s14s = associated_system(D1at1, tri.D4);
    CHECK(comm_hh_t(s14s) == hh_bracket(s14s, t_elem));
    CHECK_FALSE(comm_hh_t(s14s).is_zero());
    for (long i = -1; i <= 1; ++i)
        for (long j = -1; j <= 1; ++j) {
            const ZVec m = zv({i, j});
            CHECK(comm_hh_chi(s14s, m) == hh_bracket(s14s, SymExpr::chi(2, m)));
        }
}

TEST_CASE("line-type criterion matches the explicit configurations") {
    TriangleLNDs tri = triangle_lnds();

    HHVerdict v13 = criterion_hh(tri.D1, tri.D3);
    CHECK(v13.commutes);
    CHECK(v13.matched_case == "1b");

    HHVerdict v24 = criterion_hh(tri.D2, tri.D4);
    CHECK(v24.commutes);
    CHECK(v24.matched_case == "1b");

    CHECK_FALSE(criterion_hh(tri.D1, tri.D4).commutes);
    CHECK_FALSE(criterion_hh(tri.D2, tri.D3).commutes);

    // Equal colorings commute on the nose.
    HorizontalLND D3b = as_horizontal(make_horizontal(tri.D3.colored, zv({-7, 2}), 0));
    HHVerdict v33 = criterion_hh(tri.D3, D3b);
    CHECK(v33.commutes);
    CHECK(v33.matched_case == "1a");
    CHECK(criterion_hh(tri.D4, tri.D4).matched_case == "1a");

    // The verdict agrees with symbolic vanishing of the closed forms.
    const std::vector<std::pair<const HorizontalLND*, const HorizontalLND*>> pairs = {
        {&tri.D1, &tri.D3}, {&tri.D2, &tri.D4}, {&tri.D1, &tri.D4},
        {&tri.D2, &tri.D3}, {&tri.D3, &D3b}};
    for (const auto& [a, b] : pairs) {
        const AssociatedSystem sys = associated_system(*a, *b);
        bool vanishes = comm_hh_t(sys).is_zero();
        for (long i = -2; i <= 2 && vanishes; ++i)
            for (long j = -2; j <= 2 && vanishes; ++j)
                vanishes = comm_hh_chi(sys, zv({i, j})).is_zero();
        CHECK(vanishes == criterion_hh(*a, *b).commutes);
    }

    // Symmetry in the arguments.
    CHECK(criterion_hh(tri.D3, tri.D1).commutes);
    CHECK(criterion_hh(tri.D4, tri.D2).commutes);
    CHECK_FALSE(criterion_hh(tri.D4, tri.D1).commutes);

    const PairVerdict verdict = criterion(Derivation{tri.D1}, Derivation{tri.D3});
    CHECK(verdict.tag == PairTag::HH);
    CHECK(verdict.commutes);
    CHECK(verdict.matched_case == "1b");
    CHECK(pair_tag_str(verdict.tag) == "horizontal-horizontal");
}

TEST_CASE("interval pairs illustrate the unit-step configuration") {
    PolyDivisor d = interval_divisor();
    ColoredDivisor c0 = make_colored(d, {{Rat(0), qv({"0"})}}, Rat(0));
    ColoredDivisor c1 = make_colored(d, {{Rat(0), qv({"1"})}}, Rat(0));
    HorizontalLND I0 = as_horizontal(make_horizontal(c0, zv({1}), -1));
    HorizontalLND I1 = as_horizontal(make_horizontal(c1, zv({-1}), 0));

    HHVerdict v01 = criterion_hh(I0, I1);
    CHECK(v01.commutes);
    CHECK(v01.matched_case == "1b");
    for (long k = -2; k <= 2; ++k) {
        const ZVec m = zv({k});
        const SymExpr x = minimal_section(d, m) * SymExpr::chi(1, m);
        CHECK(bracket(Derivation{I0}, Derivation{I1}, x).is_zero());
    }

    // Doubling the degrees breaks the unit steps.
    HorizontalLND I2 = as_horizontal(make_horizontal(c0, zv({2}), -1));
    HorizontalLND I3 = as_horizontal(make_horizontal(c1, zv({-2}), 1));
    CHECK_FALSE(criterion_hh(I2, I3).commutes);
    CHECK_FALSE(
        bracket(Derivation{I2}, Derivation{I3}, SymExpr::chi(1, zv({1}))).is_zero());
}

TEST_CASE("doubled interval: cross pairs fail through the auxiliary point") {
    PolyDivisor d = two_interval_divisor();
    ColoredDivisor ca = make_colored(d, {{Rat(0), qv({"0"})}, {Rat(1), qv({"0"})}}, Rat(0));
    ColoredDivisor cb = make_colored(d, {{Rat(0), qv({"1"})}, {Rat(1), qv({"1"})}}, Rat(0));
    HorizontalLND T0 = as_horizontal(make_horizontal(ca, zv({1}), -1));
    HorizontalLND T1 = as_horizontal(make_horizontal(cb, zv({-1}), 0));

    // Canonical presentation: equal marked points, one auxiliary vertex, but
    // unequal marked vertices -- no commuting configuration covers this.
    const AssociatedSystem sysc = associated_system(T0, T1);
    CHECK(sysc.second.shift.shifts == std::map<Rat, ZVec>{{Rat(1), zv({1})}});
    CHECK(match_commutation_case(sysc) == "");

    // Re-marking the first derivation separates the marked points; split
    // presentations never match a configuration.
    HorizontalLND T0at1 = with_marking(T0, Rat(1));
    CHECK(T0at1.colored.marked_point == Rat(1));
    CHECK(T0at1.s == -1);
    const AssociatedSystem sys3 = associated_system(T0at1, T1);
    CHECK(sys3.translation == Rat(0));
    CHECK(sys3.lattice_shift.empty());
    CHECK(sys3.second.shift.shifts == std::map<Rat, ZVec>{{Rat(1), zv({1})}});
    CHECK(match_commutation_case(sys3) == "");

    CHECK_FALSE(criterion_hh(T0, T1).commutes);
    CHECK_FALSE(criterion_hh(T1, T0).commutes);

    // The obstruction is the character component: the t component vanishes,
    // but the commutator sends chi^k to 2k chi^k.
    CHECK(comm_hh_t(sysc).is_zero());
    CHECK(comm_hh_chi(sysc, zv({0})).is_zero());
    for (long k : {-2L, -1L, 1L, 2L}) {
        const SymExpr expect = mono(1, Rat(2 * k), {}, zv({k}));
        CHECK(comm_hh_chi(sysc, zv({k})) == expect);
        CHECK(bracket(Derivation{T0}, Derivation{T1}, SymExpr::chi(1, zv({k}))) ==
              expect);
    }
    CHECK_FALSE(comm_hh_chi(sys3, zv({1})).is_zero());
    for (long k : {-1L, 1L, 2L}) {
        const SymExpr x = SymExpr::chi(1, zv({k}));
        CHECK(comm_hh_chi(sys3, zv({k})) == hh_bracket(sys3, x));
    }

    // A split presentation of a commuting pair also fails the match; the
    // criterion decides through shared markings, where the pattern appears.
    const AssociatedSystem degenerate = associated_system(T0at1, T0);
    CHECK(match_commutation_case(degenerate) == "");
    CHECK(comm_hh_t(degenerate).is_zero());
    for (long k = -2; k <= 2; ++k) CHECK(comm_hh_chi(degenerate, zv({k})).is_zero());
    CHECK(criterion_hh(T0, T0).matched_case == "1a");

    // Re-marking is presentational: the operator itself is unchanged.
    for (long k = -2; k <= 2; ++k) {
        const ZVec m = zv({k});
        const SymExpr x = minimal_section(d, m) * SymExpr::chi(1, m);
        CHECK(apply(Derivation{T0at1}, x) == apply(Derivation{T0}, x));
    }
    HorizontalLND T0back = with_marking(T0at1, Rat(0));
    CHECK(T0back.colored == T0.colored);
    CHECK(T0back.e == T0.e);
    CHECK(T0back.s == T0.s);

    // A marked point outside the support is admissible and harmless.
    HorizontalLND T0far = with_marking(T0, Rat(5));
    CHECK(T0far.colored.marked_point == Rat(5));
    CHECK(apply(Derivation{T0far}, SymExpr::chi(1, zv({1}))) ==
          apply(Derivation{T0}, SymExpr::chi(1, zv({1}))));
}

TEST_CASE("translated interval realizes the auxiliary-vertex configuration") {
    PolyDivisor d = interval_at_one_divisor();
    ColoredDivisor c0 = make_colored(d, {{Rat(1), qv({"0"})}}, Rat(0));
    ColoredDivisor c1 = make_colored(d, {{Rat(1), qv({"1"})}}, Rat(0));
    HorizontalLND P0 = as_horizontal(make_horizontal(c0, zv({1}), -1));
    HorizontalLND P1 = as_horizontal(make_horizontal(c1, zv({-1}), -1));

    // Marked at 0 the colorings agree there and differ at the support point,
    // leaving a single auxiliary shift vertex with unit pairings.
    const AssociatedSystem sys = associated_system(P0, P1);
    CHECK(sys.second.shift.shifts == std::map<Rat, ZVec>{{Rat(1), zv({1})}});
    CHECK(match_commutation_case(sys) == "2a");

    HHVerdict v = criterion_hh(P0, P1);
    CHECK(v.commutes);
    CHECK(v.matched_case == "2a");
    CHECK(criterion_hh(P1, P0).commutes);

    CHECK(comm_hh_t(sys).is_zero());
    for (long k = -2; k <= 2; ++k) CHECK(comm_hh_chi(sys, zv({k})).is_zero());
    for (long k = -2; k <= 2; ++k) {
        const ZVec m = zv({k});
        const SymExpr x = minimal_section(d, m) * SymExpr::chi(1, m);
        CHECK(bracket(Derivation{P0}, Derivation{P1}, x).is_zero());
    }

    // The same pair re-marked at the support point matches as a unit-step
    // configuration instead: labels are presentational, the verdict is not.
    const AssociatedSystem at1 =
        associated_system(with_marking(P0, Rat(1)), with_marking(P1, Rat(1)));
    CHECK(at1.translation == Rat(1));
    CHECK(at1.second.shift.shifts.empty());
    CHECK(match_commutation_case(at1) == "1b");

    // Raising the degree breaks the unit pairing at the auxiliary vertex.
    HorizontalLND Pe2 = as_horizontal(make_horizontal(c0, zv({2}), -1));
    CHECK_FALSE(criterion_hh(Pe2, P1).commutes);
    const AssociatedSystem syse = associated_system(Pe2, P1);
    const SymExpr t_elem = SymExpr::t_power(1, Rat(0), 1);
    CHECK_FALSE(comm_hh_t(syse).is_zero());
    CHECK(comm_hh_t(syse) == hh_bracket(syse, t_elem));

    // Same failing pair, split-marked: pins the constant term of the t form.
    const AssociatedSystem syse1 = associated_system(with_marking(Pe2, Rat(1)), P1);
    CHECK_FALSE(comm_hh_t(syse1).is_zero());
    CHECK(comm_hh_t(syse1) == hh_bracket(syse1, t_elem));

    const PairVerdict pv = criterion(Derivation{P0}, Derivation{P1});
    CHECK(pv.tag == PairTag::HH);
    CHECK(pv.commutes);
    CHECK(pv.matched_case == "2a");
}

TEST_CASE("coherency reports describe the vertex pattern") {
    TriangleLNDs tri = triangle_lnds();

    const CoherencyReport r13 = coherency_report(associated_system(tri.D1, tri.D3));
    REQUIRE(r13.points.size() == 2);
    CHECK(r13.points[0].z == Rat(0));
    CHECK_FALSE(r13.points[0].same_vertex);
    CHECK(r13.points[0].eq_first);
    CHECK(r13.points[0].eq_second);
    CHECK(r13.points[0].ok);
    CHECK(r13.points[1].same_vertex);
    CHECK(r13.coherent);
    CHECK(r13.simple_first);
    CHECK(r13.simple_second);
    CHECK_FALSE(r13.adjacent);

    // Failing pair: the second unit step breaks at the marked point.
    const CoherencyReport r14 = coherency_report(associated_system(tri.D1, tri.D4));
    CHECK_FALSE(r14.coherent);
    CHECK_FALSE(r14.points[0].eq_second);

    // Equal colorings are adjacent and trivially coherent.
    HorizontalLND D3b = as_horizontal(make_horizontal(tri.D3.colored, zv({-7, 2}), 0));
    const CoherencyReport r33 = coherency_report(associated_system(tri.D3, D3b));
    CHECK(r33.adjacent);
    CHECK(r33.coherent);
    CHECK(r33.simple_second);

    // Coherent but not simple: the doubled-interval cross pair satisfies the
    // unit steps at every point, yet the second coloring keeps two nonzero
    // vertices and the pair does not commute.
    PolyDivisor d2 = two_interval_divisor();
    ColoredDivisor ca =
        make_colored(d2, {{Rat(0), qv({"0"})}, {Rat(1), qv({"0"})}}, Rat(0));
    ColoredDivisor cb =
        make_colored(d2, {{Rat(0), qv({"1"})}, {Rat(1), qv({"1"})}}, Rat(0));
    HorizontalLND T0 = as_horizontal(make_horizontal(ca, zv({1}), -1));
    HorizontalLND T1 = as_horizontal(make_horizontal(cb, zv({-1}), 0));
    const CoherencyReport rT = coherency_report(associated_system(T0, T1));
    CHECK(rT.coherent);
    CHECK(rT.simple_first);
    CHECK_FALSE(rT.simple_second);
    CHECK_FALSE(criterion_hh(T0, T1).commutes);

    // Coherent and simple on both sides: the commuting auxiliary-vertex pair.
    PolyDivisor d1 = interval_at_one_divisor();
    HorizontalLND P0 = as_horizontal(
        make_horizontal(make_colored(d1, {{Rat(1), qv({"0"})}}, Rat(0)), zv({1}), -1));
    HorizontalLND P1 = as_horizontal(
        make_horizontal(make_colored(d1, {{Rat(1), qv({"1"})}}, Rat(0)), zv({-1}), -1));
    const CoherencyReport rP = coherency_report(associated_system(P0, P1));
    CHECK(rP.coherent);
    CHECK(rP.simple_first);
    CHECK(rP.simple_second);
    CHECK_FALSE(rP.adjacent);
    CHECK(criterion_hh(P0, P1).commutes);
}

TEST_CASE("lattice shifts of the divisor do not change verdicts") {
    TriangleLNDs tri = triangle_lnds();
    const std::map<Rat, ZVec> w = {{Rat(0), zv({0, 1})}};
    const PolyDivisor shifted = shift_divisor(tri.d, w).first;

    HorizontalLND S1 = as_horizontal(make_horizontal(
        make_colored(shifted, {{Rat(0), qv({"0", "-1"})}, {Rat(1), qv({"0", "0"})}},
                     Rat(0)),
        zv({-8, 1}), 0));
    HorizontalLND S3 = as_horizontal(make_horizontal(
        make_colored(shifted, {{Rat(0), qv({"-1/4", "-2"})}, {Rat(1), qv({"0", "0"})}},
                     Rat(0)),
        zv({-3, 1}), 1));
    HorizontalLND S4 = as_horizontal(make_horizontal(
        make_colored(shifted, {{Rat(0), qv({"-1/4", "-2"})}, {Rat(1), qv({"0", "1"})}},
                     Rat(0)),
        zv({9, -1}), 0));

    HHVerdict v13 = criterion_hh(S1, S3);
    CHECK(v13.commutes);
    CHECK(v13.matched_case == "1b");
    CHECK_FALSE(criterion_hh(S1, S4).commutes);

    // Negative verdicts are also stable under lattice shifts.
    PolyDivisor d2 = two_interval_divisor();
    const std::map<Rat, ZVec> w2 = {{Rat(1), zv({1})}};
    const PolyDivisor shifted2 = shift_divisor(d2, w2).first;
    HorizontalLND U0 = as_horizontal(make_horizontal(
        make_colored(shifted2, {{Rat(0), qv({"0"})}, {Rat(1), qv({"-1"})}}, Rat(0)),
        zv({1}), -1));
    HorizontalLND U1 = as_horizontal(make_horizontal(
        make_colored(shifted2, {{Rat(0), qv({"1"})}, {Rat(1), qv({"0"})}}, Rat(0)),
        zv({-1}), 0));
    CHECK_FALSE(criterion_hh(U0, U1).commutes);

    // The auxiliary-vertex pair keeps its verdict and label under a shift.
    PolyDivisor d1 = interval_at_one_divisor();
    const std::map<Rat, ZVec> w1 = {{Rat(1), zv({1})}};
    const PolyDivisor shifted1 = shift_divisor(d1, w1).first;
    HorizontalLND Q0 = as_horizontal(make_horizontal(
        make_colored(shifted1, {{Rat(1), qv({"-1"})}}, Rat(0)), zv({1}), -1));
    HorizontalLND Q1 = as_horizontal(make_horizontal(
        make_colored(shifted1, {{Rat(1), qv({"0"})}}, Rat(0)), zv({-1}), -1));
    HHVerdict vQ = criterion_hh(Q0, Q1);
    CHECK(vQ.commutes);
    CHECK(vQ.matched_case == "2a");
}

TEST_CASE("input validation") {
    TriangleLNDs tri = triangle_lnds();
    // A non-lattice vertex pins the marked point.
    CHECK_THROWS_AS(with_marking(tri.D4, Rat(1)), std::invalid_argument);

    // Divisors must match.
    PolyDivisor d2 = two_interval_divisor();
    ColoredDivisor ca = make_colored(d2, {{Rat(0), qv({"0"})}, {Rat(1), qv({"0"})}}, Rat(0));
    HorizontalLND T0 = as_horizontal(make_horizontal(ca, zv({1}), -1));
    CHECK_THROWS_AS(associated_system(T0, tri.D1), std::invalid_argument);
    CHECK_THROWS_AS(criterion_hh(T0, tri.D1), std::invalid_argument);

    PolyDivisor orth = orthant_trivial_divisor();
    Derivation Da = make_vertical(orth, zv({-1, 0}), SymExpr::one(2));
    PolyDivisor orth_coeff(
        orth.sigma(), {{Rat(0), Polyhedron({qv({"1", "0"})}, orth.sigma())}});
    Derivation Db = make_vertical(orth_coeff, zv({-1, 0}),
                                  mono(2, 1, {{Rat(0), 1}}, zv({0, 0})));
    CHECK_THROWS_AS(criterion_vv(as_vertical(Da), as_vertical(Db)), std::invalid_argument);
    CHECK_THROWS_AS(comm_vv(as_vertical(Da), as_vertical(Db), zv({1, 1})),
                    std::invalid_argument);

    // Weight rank mismatches are rejected.
    CHECK_THROWS_AS(comm_vv(as_vertical(Da), as_vertical(Da), zv({1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(comm_hh_chi(associated_system(tri.D1, tri.D3), zv({1})),
                    std::invalid_argument);
}
