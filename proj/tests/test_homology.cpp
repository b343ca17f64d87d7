#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qhp/homology.hpp"

using namespace qhp;

namespace {

ExpansionState conic_line() {
    ExpansionState st;
    st.graph.add_vertex("C", 4);
    st.graph.add_vertex("L", 1);
    st.graph.add_edge("C", "L", "n1");
    st.graph.add_edge("C", "L", "n2");
    st.lattice = NSLattice();
    DivisorClass c(1), l(1);
    c.coords[0] = 2;
    l.coords[0] = 1;
    st.classes = {{"C", c}, {"L", l}};
    return st;
}

// conic + two lines, all transverse: corank 2 fixture
ExpansionState conic_two_lines() {
    ExpansionState st;
    st.graph.add_vertex("C", 4);
    st.graph.add_vertex("L1", 1);
    st.graph.add_vertex("L2", 1);
    st.graph.add_edge("C", "L1", "a1");
    st.graph.add_edge("C", "L1", "a2");
    st.graph.add_edge("C", "L2", "b1");
    st.graph.add_edge("C", "L2", "b2");
    st.graph.add_edge("L1", "L2", "p");
    st.lattice = NSLattice();
    DivisorClass c(1), l1(1), l2(1);
    c.coords[0] = 2;
    l1.coords[0] = 1;
    l2.coords[0] = 1;
    st.classes = {{"C", c}, {"L1", l1}, {"L2", l2}};
    return st;
}

ExpansionCenter center(const std::string& u, const std::string& w, long long uu, long long ww,
                       const std::string& node = "") {
    ExpansionCenter c;
    c.u_comp = u;
    c.w_comp = w;
    c.node = node;
    c.u = uu;
    c.w = ww;
    return c;
}

} // namespace

TEST_CASE("restriction matrix basics") {
    DualGraph g;
    g.add_vertex("L", 1);
    NSLattice plane;
    DivisorClass h(1);
    h.coords[0] = 1;
    std::vector<std::string> order;
    IntMatrix r = restriction_matrix(g, plane, {{"L", h}}, order);
    CHECK(r.rows() == 1);
    CHECK(r.cols() == 1);
    CHECK(r.at(0, 0) == 1);

    DualGraph empty;
    IntMatrix re = restriction_matrix(empty, plane, {}, order);
    CHECK(re.cols() == 0);
    CHECK(!cokernel_order(re).has_value());
}

TEST_CASE("one line on the plane is the affine plane") {
    DualGraph g;
    g.add_vertex("L", 1);
    NSLattice plane;
    DivisorClass h(1);
    h.coords[0] = 1;
    auto v = qhp_check_direct(g, plane, {{"L", h}});
    CHECK(v.is_qhp);
    CHECK(v.h1_order == 1);
}

TEST_CASE("direct check failure reasons") {
    // two disjoint lines: not a tree (disconnected), wrong count
    DualGraph g;
    g.add_vertex("L1", 1);
    g.add_vertex("L2", 1);
    NSLattice plane;
    DivisorClass h(1);
    h.coords[0] = 1;
    auto v = qhp_check_direct(g, plane, {{"L1", h}, {"L2", h}});
    CHECK(!v.is_qhp);
    CHECK(!v.reasons.empty());
}

TEST_CASE("expansion criterion on conic-line: h1 = |u - 2w|") {
    for (auto [u, w] : std::vector<std::pair<long long, long long>>{
             {1, 1}, {3, 1}, {5, 2}, {7, 3}, {9, 4}, {2, 1}}) {
        ExpansionState st = conic_line();
        std::vector<ExpansionRecord> recs;
        ExpansionState out = expand_many(st, {center("C", "L", u, w, "n1")}, recs);
        auto v = qhp_check_expansion(st.graph, st.lattice, st.classes, out.graph, recs);
        Int expect = int_abs(Int(u) - 2 * Int(w));
        if (expect == 0) {
            CHECK(!v.is_qhp);
        } else {
            CHECK(v.is_qhp);
            CHECK(v.h1_order == expect);
            CHECK(v.d_of_d == expect * expect); // square identity
        }
    }
}

TEST_CASE("weight-only dependence under reversed orientation") {
    for (auto [u, w] :
         std::vector<std::pair<long long, long long>>{{3, 1}, {5, 3}, {7, 2}}) {
        ExpansionState st = conic_line();
        std::vector<ExpansionRecord> r1, r2;
        ExpansionState a = expand_many(st, {center("C", "L", u, w, "n1")}, r1);
        ExpansionState b = expand_many(st, {center("L", "C", w, u, "n1")}, r2);
        auto va = qhp_check_expansion(st.graph, st.lattice, st.classes, a.graph, r1);
        auto vb = qhp_check_expansion(st.graph, st.lattice, st.classes, b.graph, r2);
        CHECK(va.is_qhp == vb.is_qhp);
        CHECK(va.h1_order == vb.h1_order);
    }
}

TEST_CASE("n = 0 reduces to the direct criterion") {
    DualGraph g;
    g.add_vertex("L", 1);
    NSLattice plane;
    DivisorClass h(1);
    h.coords[0] = 1;
    std::map<std::string, DivisorClass> cls{{"L", h}};
    auto vd = qhp_check_direct(g, plane, cls);
    auto ve = qhp_check_expansion(g, plane, cls, g, {});
    CHECK(vd.is_qhp == ve.is_qhp);
    CHECK(vd.h1_order == ve.h1_order);
}

TEST_CASE("m matrix and the symbolic determinant") {
    ExpansionState st = conic_line();
    std::vector<std::string> order;
    IntMatrix r = restriction_matrix(st.graph, st.lattice, st.classes, order);
    auto kernel = kernel_basis(r);
    REQUIRE(kernel.size() == 1);

    std::vector<ExpansionCenter> centers{center("C", "L", 0, 0)};
    WeightPolynomial p = detm_symbolic(kernel, order, centers);
    // det m = u - 2w up to normalization
    VarPolynomial table = VarPolynomial::parse("v - 2");
    WeightPolynomial cleared = table.clear_denominators({"v"});
    CHECK(p.proportional_to(cleared));

    // bigger picture: corank-2 fixture runs the full 2x2 path
    ExpansionState two = conic_two_lines();
    IntMatrix r2 = restriction_matrix(two.graph, two.lattice, two.classes, order);
    auto k2 = kernel_basis(r2);
    REQUIRE(k2.size() == 2);
    std::vector<ExpansionRecord> recs;
    ExpansionState out = expand_many(
        two, {center("C", "L1", 3, 1, "a1"), center("L1", "L2", 2, 1, "p")}, recs);
    IntMatrix m = m_matrix(k2, order, recs);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    // this synthetic picture has three cycles but only two centers, so the
    // tree condition (2) must fail while the kernel bookkeeping still runs
    auto v = qhp_check_expansion(two.graph, two.lattice, two.classes, out.graph, recs);
    CHECK(!v.is_qhp);
    bool tree_reason = false;
    for (const auto& r3 : v.reasons) tree_reason |= r3.find("tree") != std::string::npos;
    CHECK(tree_reason);
    // symbolic determinant evaluated at the concrete weights agrees with
    // det(m) up to the recorded normalization scalar
    std::vector<ExpansionCenter> cs{center("C", "L1", 0, 0, "a1"),
                                    center("L1", "L2", 0, 0, "p")};
    WeightPolynomial sym = detm_symbolic(k2, order, cs);
    Int at = sym.evaluate({{Int(3), Int(1)}, {Int(2), Int(1)}});
    Int det = m.det();
    CHECK(int_abs(at) * int_abs(det) != 0);
    // proportionality: sym * det(at another point) == det * sym(at same point)
    std::vector<ExpansionRecord> recs2;
    ExpansionState out2 = expand_many(
        two, {center("C", "L1", 5, 2, "a1"), center("L1", "L2", 1, 3, "p")}, recs2);
    IntMatrix m2 = m_matrix(k2, order, recs2);
    Int at2 = sym.evaluate({{Int(5), Int(2)}, {Int(1), Int(3)}});
    CHECK(at * m2.det() == at2 * det);
}

TEST_CASE("kernel-basis independence of h1") {
    ExpansionState two = conic_two_lines();
    std::vector<std::string> order;
    IntMatrix r = restriction_matrix(two.graph, two.lattice, two.classes, order);
    auto kernel = kernel_basis(r);
    REQUIRE(kernel.size() == 2);
    std::vector<ExpansionRecord> recs;
    ExpansionState out = expand_many(
        two, {center("C", "L1", 3, 1, "a1"), center("L1", "L2", 2, 1, "p")}, recs);
    IntMatrix m0 = m_matrix(kernel, order, recs);
    Int h0 = int_abs(m0.det());
    std::mt19937 rng(12);
    std::uniform_int_distribution<long long> d(-3, 3);
    for (int t = 0; t < 50; ++t) {
        long long a = d(rng), b = d(rng);
        std::vector<std::vector<Int>> k2(2, std::vector<Int>(kernel[0].size()));
        for (std::size_t j = 0; j < kernel[0].size(); ++j) {
            k2[0][j] = kernel[0][j] + a * kernel[1][j];
            k2[1][j] = kernel[1][j] + b * (kernel[0][j] + a * kernel[1][j]);
        }
        if (t % 2) std::swap(k2[0], k2[1]);
        IntMatrix m1 = m_matrix(k2, order, recs);
        CHECK(int_abs(m1.det()) == h0);
    }
}

TEST_CASE("square identity fuzz") {
    std::mt19937 rng(21);
    std::uniform_int_distribution<long long> wd(1, 20);
    int done = 0, qhps = 0;
    while (done < 100) {
        long long u = wd(rng), w = wd(rng);
        if (int_gcd(Int(u), Int(w)) != 1) continue;
        ExpansionState st = conic_line();
        std::vector<ExpansionRecord> recs;
        ExpansionState out = expand_many(st, {center("C", "L", u, w, "n1")}, recs);
        // qhp_check_expansion itself throws if |d(D)| != (|det m| coker)^2
        auto v = qhp_check_expansion(st.graph, st.lattice, st.classes, out.graph, recs);
        if (v.is_qhp) {
            CHECK(v.d_of_d == v.h1_order * v.h1_order);
            ++qhps;
        }
        ++done;
    }
    CHECK(qhps > 50);
}

TEST_CASE("zhp weight search for u - 6w") {
    WeightPolynomial form(1);
    form.coeff(1) = 1;  // u
    form.coeff(0) = -6; // w
    auto res = zhp_weights(form, 1, 10);
    REQUIRE(res.found);
    // 6 +- 1/w for w = 1..5
    std::vector<std::pair<Int, Int>> expect{{5, 1},  {7, 1},  {11, 2}, {13, 2}, {17, 3},
                                            {19, 3}, {23, 4}, {25, 4}, {29, 5}, {31, 5}};
    CHECK(res.weights == expect);

    auto res5 = zhp_weights(form, 5, 12);
    REQUIRE(res5.found);
    bool has11 = false;
    for (const auto& p : res5.weights) has11 |= (p.first == 1 && p.second == 1);
    CHECK(has11);
    for (const auto& p : res5.weights)
        CHECK(int_abs(p.first - 6 * p.second) == 5);
}

TEST_CASE("zhp impossible for positive forms") {
    WeightPolynomial form(1);
    form.coeff(1) = 6;
    form.coeff(0) = 10;
    auto res = zhp_weights(form, 1, 5);
    CHECK(!res.found);
    CHECK(res.message.find("impossible") != std::string::npos);
}

TEST_CASE("weight polynomial parsing and clearing") {
    VarPolynomial p = VarPolynomial::parse("v*w + 4*v + 2 - 2*w");
    std::map<std::string, Rat> env{{"v", Rat(1)}, {"w", Rat(7, 2)}};
    CHECK(p.evaluate(env) == Rat(7, 2) + Rat(4) + Rat(2) - Rat(7));
    WeightPolynomial cleared = p.clear_denominators({"v", "w"});
    // u1 u2 + 4 u1 w2 + 2 w1 w2 - 2 w1 u2
    CHECK(cleared.coeff(0b11) == 1);
    CHECK(cleared.coeff(0b01) == 4);
    CHECK(cleared.coeff(0b00) == 2);
    CHECK(cleared.coeff(0b10) == -2);
    CHECK(cleared.evaluate({{Int(1), Int(1)}, {Int(7), Int(2)}}) == Int(5));
}
