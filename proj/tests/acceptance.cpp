// Acceptance suite: one line per criterion, exact tolerances, nonzero exit
// on any failure.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <vector>

#include "qhp/catalog.hpp"

using namespace qhp;

namespace {

int failures = 0;

void criterion(int num, const std::string& name, const std::function<bool(std::string&)>& fn) {
    auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << (ok ? "PASS" : "FAIL") << "  [" << num << "] " << name << " (" << ms << " ms)"
              << (detail.empty() ? "" : "  -- " + detail) << std::endl;
    if (!ok) ++failures;
}

Catalog& cat() {
    static Catalog c;
    return c;
}

struct RowData {
    std::vector<std::string> order;
    std::vector<std::vector<Int>> kernel;
    std::optional<Int> coker;
};

RowData row_data(const BuiltRow& b) {
    RowData d;
    IntMatrix r = restriction_matrix(b.state.graph, b.state.lattice, b.state.classes, d.order);
    d.kernel = kernel_basis(r);
    d.coker = cokernel_order(r);
    return d;
}

QhpVerdict run_combo(const TowerRow& row, const BuiltRow& b,
                     const std::vector<std::string>& combo,
                     const std::vector<std::pair<Int, Int>>& wts, DualGraph* boundary = nullptr) {
    std::vector<ExpansionCenter> cs;
    for (std::size_t i = 0; i < combo.size(); ++i)
        cs.push_back(cat().make_center(row, b, combo[i], wts[i].first, wts[i].second));
    std::vector<ExpansionRecord> recs;
    ExpansionState out = expand_many(b.state, cs, recs);
    if (boundary) *boundary = out.graph;
    return qhp_check_expansion(b.state.graph, b.state.lattice, b.state.classes, out.graph,
                               recs);
}

ExpansionState conic_line_fixture() {
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

} // namespace

int main() {
    criterion(1, "catalog cardinality 39 and degree bound 11", [&](std::string& d) {
        if (cat().rows().size() != 39) {
            d = "rows = " + std::to_string(cat().rows().size());
            return false;
        }
        int maxdeg = 0;
        for (const auto& r : cat().rows()) maxdeg = std::max(maxdeg, cat().total_degree(r));
        d = "39 rows, max degree " + std::to_string(maxdeg);
        return maxdeg == 11;
    });

    criterion(2, "sporadic H1 orders 7,11,11,11,11 on rows 1-5", [&](std::string& d) {
        std::vector<long long> expect{7, 11, 11, 11, 11};
        for (int i = 1; i <= 5; ++i) {
            BuiltRow b = cat().build_row(cat().row(std::to_string(i)));
            auto v = qhp_check_direct(b.state.graph, b.state.lattice, b.state.classes);
            if (!v.is_qhp || v.h1_order != Int(expect[std::size_t(i - 1)])) {
                d = "row " + std::to_string(i) + " gave " + v.h1_order.str();
                return false;
            }
        }
        return true;
    });

    criterion(3, "worked-example row 17 end to end", [&](std::string& d) {
        const TowerRow& r = cat().row("17");
        BuiltRow b = cat().build_row(r);
        RowData rd = row_data(b);
        if (rd.kernel.size() != 1) {
            d = "kernel rank";
            return false;
        }
        std::map<std::string, Int> coef;
        for (std::size_t j = 0; j < rd.order.size(); ++j) coef[rd.order[j]] = rd.kernel[0][j];
        Int c1 = coef.at("C1");
        if (c1 == 0 || coef.at("C2") != -6 * c1 || coef.at("E_q") != -10 * c1) {
            d = "kernel not proportional to (1,-6,-10)";
            return false;
        }
        auto c12 = cat().make_center(r, b, "(C1,C2)", 1, 1);
        WeightPolynomial sym = detm_symbolic(rd.kernel, rd.order, {c12});
        if (!sym.proportional_to(VarPolynomial::parse("v-6").clear_denominators({"v"}))) {
            d = "det m not +-(u-6w)";
            return false;
        }
        auto v1 = run_combo(r, b, {"(C1,C2)"}, {{1, 1}});
        if (!v1.is_qhp || v1.h1_order != 5) {
            d = "weight 1 h1 = " + v1.h1_order.str();
            return false;
        }
        auto ceq = cat().make_center(r, b, "(C2,E_q)", 1, 1);
        WeightPolynomial f2 = detm_symbolic_raw(rd.kernel, rd.order, {ceq});
        WeightPolynomial expect(1);
        expect.coeff(1) = 6;
        expect.coeff(0) = 10;
        if (!f2.proportional_to(expect)) {
            d = "(C2,E_q) form not +-(6u+10w)";
            return false;
        }
        auto zr = zhp_weights(detm_symbolic_raw(rd.kernel, rd.order, {c12}), 1, 10);
        std::vector<std::pair<Int, Int>> want{{5, 1},  {7, 1},  {11, 2}, {13, 2}, {17, 3},
                                              {19, 3}, {23, 4}, {25, 4}, {29, 5}, {31, 5}};
        if (!zr.found || zr.weights != want) {
            d = "zhp weights differ from 6 +- 1/w, w <= 5";
            return false;
        }
        return true;
    });

    criterion(4, "square identity on 100 random admissible instances", [&](std::string& d) {
        std::mt19937 rng(2024);
        int checked = 0, qhps = 0;
        std::vector<const TowerRow*> rows;
        for (const auto& r : cat().rows())
            if (r.n_centers >= 1) rows.push_back(&r);
        std::map<int, BuiltRow> cache;
        while (checked < 100) {
            const TowerRow& r = *rows[rng() % rows.size()];
            if (!cache.count(r.index)) cache.emplace(r.index, cat().build_row(r));
            BuiltRow& b = cache.at(r.index);
            const TowerRule& rule = r.rules[rng() % r.rules.size()];
            std::vector<std::pair<Int, Int>> wts;
            for (std::size_t i = 0; i < rule.combo.size(); ++i) {
                long long h = 2 + static_cast<long long>(rng() % 11);
                long long uu = 1 + static_cast<long long>(rng() % (h - 1));
                long long g = static_cast<long long>(
                    boost::multiprecision::gcd(Int(uu), Int(h - uu)).convert_to<long long>());
                wts.push_back({uu / g, (h - uu) / g});
            }
            if (!cat().admissible(r, rule.combo, wts).ok) continue;
            // qhp_check_expansion throws if the square identity fails
            auto v = run_combo(r, b, rule.combo, wts);
            ++checked;
            if (v.is_qhp) {
                if (v.d_of_d != v.h1_order * v.h1_order) {
                    d = "identity failed on row " + std::to_string(r.index);
                    return false;
                }
                ++qhps;
            }
        }
        d = std::to_string(checked) + " instances, " + std::to_string(qhps) + " QHPs";
        return true;
    });

    criterion(5, "symbolic loci reproduce the catalog constraints", [&](std::string& d) {
        int sampled = 0;
        bool saw_row17 = false, saw_row28 = false;
        for (const auto& r : cat().rows()) {
            if (r.n_centers == 0) continue;
            BuiltRow b = cat().build_row(r);
            RowData rd = row_data(b);
            for (const auto& rule : r.rules) {
                if (!rule.detm) continue;
                std::vector<ExpansionCenter> cs;
                for (const auto& key : rule.combo)
                    cs.push_back(cat().make_center(r, b, key, 1, 1));
                WeightPolynomial sym = detm_symbolic(rd.kernel, rd.order, cs);
                std::vector<std::string> vars(r.slot_vars.begin(),
                                              r.slot_vars.begin() + cs.size());
                WeightPolynomial cleared =
                    VarPolynomial::parse(*rule.detm).clear_denominators(vars);
                bool ok = sym.proportional_to(cleared);
                if (!ok) {
                    // loci must still coincide over positive weights
                    ok = true;
                    std::vector<std::pair<Int, Int>> wts(cs.size());
                    std::function<void(std::size_t)> rec = [&](std::size_t i) {
                        if (!ok) return;
                        if (i == wts.size()) {
                            if ((sym.evaluate(wts) == 0) != (cleared.evaluate(wts) == 0))
                                ok = false;
                            return;
                        }
                        for (long long uu = 1; uu <= 9 && ok; ++uu)
                            for (long long ww = 1; ww <= 9 && ok; ++ww) {
                                if (boost::multiprecision::gcd(Int(uu), Int(ww)) != 1) continue;
                                wts[i] = {uu, ww};
                                rec(i + 1);
                            }
                    };
                    rec(0);
                }
                if (!ok) {
                    d = "row " + std::to_string(r.index) + " combo " + rule.combo[0];
                    return false;
                }
                ++sampled;
                if (r.index == 17 && *rule.detm == "v-6") saw_row17 = true;
                if (r.index == 28 && rule.combo.back() == "(C1,E_p1)") saw_row28 = true;
            }
        }
        d = std::to_string(sampled) + " constraint cells verified";
        return sampled >= 10 && saw_row17 && saw_row28;
    });

    criterion(6, "expansion algebra exhaustive over coprime u,w <= 50", [&](std::string& d) {
        for (long long u = 1; u <= 50; ++u)
            for (long long w = 1; w <= 50; ++w) {
                if (boost::multiprecision::gcd(Int(u), Int(w)) != 1) continue;
                ExpansionState st = conic_line_fixture();
                ExpansionRecord rec;
                ExpansionCenter c{"C", "L", "n1", Int(u), Int(w)};
                ExpansionState out = expand(st, c, rec);
                auto pos = std::find(rec.inserted_chain.begin(), rec.inserted_chain.end(),
                                     rec.bubble);
                std::set<std::string> uside(rec.inserted_chain.begin(), pos);
                std::set<std::string> wside(pos + 1, rec.inserted_chain.end());
                if (discriminant(out.graph, wside) != Int(u) ||
                    discriminant(out.graph, uside) != Int(w)) {
                    d = "side discriminants at " + std::to_string(u) + "/" + std::to_string(w);
                    return false;
                }
                if (w == 1 && u >= 2) {
                    // integer weight: [1,(2)_{u-1}] with the (-1) toward U
                    if (rec.inserted_chain.front() != rec.bubble ||
                        wside.size() != std::size_t(u - 1)) {
                        d = "integer-weight chain shape at " + std::to_string(u);
                        return false;
                    }
                    for (const auto& vid : wside)
                        if (out.graph.vertex(vid).w != -2) {
                            d = "non-(-2) in integer chain";
                            return false;
                        }
                }
                if (u * w <= 150) { // isomorphism sweep kept to modest chain lengths
                    ExpansionRecord rec2;
                    ExpansionCenter c2{"L", "C", "n1", Int(w), Int(u)};
                    ExpansionState out2 = expand(st, c2, rec2);
                    if (!graphs_isomorphic(out.graph, out2.graph)) {
                        d = "orientation swap not isomorphic at " + std::to_string(u) + "/" +
                            std::to_string(w);
                        return false;
                    }
                }
            }
        // composites satisfy the definition
        for (auto [u, w] : std::vector<std::pair<long long, long long>>{{2, 1}, {5, 3}, {7, 4}}) {
            ExpansionState st = conic_line_fixture();
            std::vector<ExpansionRecord> recs;
            std::vector<ExpansionCenter> cs{{"C", "L", "n1", Int(u), Int(w)},
                                            {"C", "L", "n2", Int(w), Int(u)}};
            ExpansionState out = expand_many(st, cs, recs);
            if (!is_expansion(st, out, recs)) {
                d = "composite failed the definition";
                return false;
            }
        }
        return true;
    });

    criterion(7, "resolution delta accounting and lattice consistency", [&](std::string& d) {
        // two-branch contact-c points need exactly c blowups, c <= 5;
        // realized on conic pairs (c <= 4) and a conic-line tower for 5 via
        // two conics plus transversals is impossible, so c = 5 is exercised
        // through the composite contact of two conics with a line pencil:
        // contact 5 needs degree >= 3; the formula is instead confirmed on
        // every two-branch point of all 39 catalog arrangements (contacts up
        // to 4) plus synthetic conic pairs.
        for (int c = 2; c <= 4; ++c) {
            Arrangement a;
            a.components = {{"C1", 2}, {"C2", 2}};
            a.points.push_back({"p", {"C1", "C2"}, {{contact_key("C1", "C2"), c}}});
            for (int i = 0; i < 4 - c; ++i)
                a.points.push_back({"q" + std::to_string(i), {"C1", "C2"}, {}});
            auto res = minimal_log_resolution(a);
            if (res.blowup_count("p") != std::size_t(c)) {
                d = "contact " + std::to_string(c);
                return false;
            }
        }
        int checked = 0;
        for (const auto& r : cat().rows()) {
            BuiltRow b = cat().build_row(r);
            b.resolution.check_consistency(); // pairings + adjunction, throws on failure
            for (const auto& p : b.arrangement.points) {
                if (p.branches.size() != 2) continue;
                int c = p.contact_of(p.branches[0], p.branches[1]);
                std::size_t expect = c == 1 ? 0 : std::size_t(c);
                if (b.resolution.blowup_count(p.id) != expect) {
                    d = "row " + std::to_string(r.index) + " point " + p.id;
                    return false;
                }
                ++checked;
            }
        }
        d = std::to_string(checked) + " two-branch points across 39 resolutions";
        return true;
    });

    criterion(8, "finiteness bounds sweep at height <= 6", [&](std::string& d) {
        // Known divergence, kept faithful: the boundaries of row 25 with
        // center (C1,E_q1) and both side-chains nonempty (weights 2/3, 3/2 at
        // this height) have Eisenbud-Neumann diagrams with 17 vertices: both
        // attachment points of the inserted chains are already branching, so
        // the diagram grows by two beyond its 15-vertex base. Twig, core and
        // branching bounds hold everywhere. See the decisions record.
        long long members = 0, violations = 0;
        std::string witness;
        for (const auto& r : cat().rows()) {
            if (r.n_centers == 0) {
                BuiltRow b = cat().build_row(r);
                if (!bounds_report(b.state.graph).all_ok()) ++violations;
                ++members;
                continue;
            }
            Catalog::EnumerationFilters f;
            cat().enumerate(r, 6, f, [&](const Catalog::EnumerationItem& it) {
                if (it.verdict.is_qhp) {
                    ++members;
                    auto rep = bounds_report(it.boundary);
                    if (!rep.all_ok()) {
                        ++violations;
                        if (witness.empty()) {
                            witness = "row " + std::to_string(r.index) + " " + it.combo[0] +
                                      " weight " + it.weights[0].first.str() + "/" +
                                      it.weights[0].second.str() + ": twigs " +
                                      std::to_string(rep.twig_count) + ", core " +
                                      std::to_string(rep.core_size) + ", branching " +
                                      std::to_string(rep.max_branching) + ", EN " +
                                      std::to_string(rep.en_vertices);
                        }
                    }
                }
                return true;
            });
        }
        d = std::to_string(members) + " QHP boundaries, " + std::to_string(violations) +
            " violations" + (witness.empty() ? "" : " (first: " + witness + ")");
        return violations == 0 && members > 1000;
    });

    criterion(9, "graph automorphism oracle on row 17", [&](std::string& d) {
        const TowerRow& r = cat().row("17");
        BuiltRow b = cat().build_row(r);
        DualGraph g;
        run_combo(r, b, {"(C1,C2)"}, {{1, 1}}, &g);
        if (graph_automorphisms(g).order != 6) {
            d = "(C1,C2;1) order != 6";
            return false;
        }
        // weights chosen so no inserted chain tip duplicates an existing
        // (-2)-twig shape (such coincidences add genuine extra involutions)
        std::vector<std::pair<std::string, std::pair<long long, long long>>> others{
            {"(C1,C2)", {3, 1}},  {"(C1,C2)", {5, 3}}, {"(C1,E_q)", {1, 1}},
            {"(C1,E_q)", {7, 2}}, {"(C2,E_q)", {1, 1}}, {"(C2,E_q)", {4, 3}}};
        for (const auto& [key, wt] : others) {
            if (!cat().admissible(r, {key}, {{Int(wt.first), Int(wt.second)}}).ok) continue;
            DualGraph h;
            run_combo(r, b, {key}, {{Int(wt.first), Int(wt.second)}}, &h);
            auto a = graph_automorphisms(h);
            if (a.order != 2) {
                d = key + " order " + std::to_string(a.order);
                return false;
            }
        }
        return true;
    });

    criterion(10, "Z-column spot checks", [&](std::string& d) {
        // five single-center cells marked with a checkmark must reach h1 = 1
        // within height 1000
        std::vector<std::pair<std::string, std::string>> marked{
            {"17", "(C1,C2)"}, {"17", "(C1,E_q)"}, {"7", "(C1,E_r)"},
            {"21", "(C1,C2)"}, {"25", "(C1,E_q1)"}};
        for (const auto& [rowid, key] : marked) {
            const TowerRow& r = cat().row(rowid);
            BuiltRow b = cat().build_row(r);
            RowData rd = row_data(b);
            auto c = cat().make_center(r, b, key, 1, 1);
            WeightPolynomial raw = detm_symbolic_raw(rd.kernel, rd.order, {c});
            auto zr = zhp_weights(raw, 1, 1, 1000);
            bool got = false;
            if (zr.found)
                for (const auto& wt : zr.weights) {
                    if (!cat().admissible(r, {key}, {wt}).ok) continue;
                    auto v = run_combo(r, b, {key}, {wt});
                    if (v.is_qhp && v.h1_order == 1) got = true;
                }
            if (!got) {
                d = "no ZHP for row " + rowid + " " + key;
                return false;
            }
        }
        // impossibility certificate for row 17 (C2,E_q): 6u + 10w >= 16
        {
            const TowerRow& r = cat().row("17");
            BuiltRow b = cat().build_row(r);
            RowData rd = row_data(b);
            auto c = cat().make_center(r, b, "(C2,E_q)", 1, 1);
            WeightPolynomial raw = detm_symbolic_raw(rd.kernel, rd.order, {c});
            Int a0 = int_abs(raw.coeff(0)), a1 = int_abs(raw.coeff(1));
            bool one_sign = (raw.coeff(0) > 0) == (raw.coeff(1) > 0);
            if (!one_sign || a0 + a1 < 16 || std::min(a0, a1) + std::max(a0, a1) != 16) {
                d = "certificate bound mismatch";
                return false;
            }
            auto zr = zhp_weights(raw, 1, 1);
            if (zr.found || zr.message.find("impossible") == std::string::npos) {
                d = "impossibility not certified";
                return false;
            }
        }
        return true;
    });

    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << std::endl;
    return failures == 0 ? 0 : 1;
}
