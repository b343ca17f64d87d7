// Command-line front end for the Q-homology plane toolkit: build catalog
// rows, resolve arrangements, run expansions, decide the QHP criterion and
// enumerate towers. All arithmetic is exact; runs are deterministic.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qhp/catalog.hpp"

using namespace qhp;
using nlohmann::json;

namespace {

struct PipelineState {
    ExpansionState st;

    json to_json(const NSLattice& lat) const {
        json j;
        j["graph"] = json::parse(st.graph.to_json());
        j["basis"] = lat.basis_labels();
        json cls;
        for (const auto& [id, c] : st.classes) {
            std::vector<std::string> coords;
            for (const auto& v : c.coords) coords.push_back(v.str());
            cls[id] = coords;
        }
        j["classes"] = cls;
        return j;
    }

    static PipelineState from_json(const json& j) {
        PipelineState p;
        p.st.graph = DualGraph::from_json(j.at("graph").dump());
        std::size_t rank = j.at("basis").size();
        NSLattice lat;
        for (std::size_t i = 1; i < rank; ++i)
            lat = lat.blowup_extend(j["basis"][i].get<std::string>());
        p.st.lattice = lat;
        for (auto it = j.at("classes").begin(); it != j.at("classes").end(); ++it) {
            DivisorClass c(rank);
            for (std::size_t i = 0; i < rank; ++i)
                c.coords[i] = Int(it.value()[i].get<std::string>());
            p.st.classes[it.key()] = c;
        }
        return p;
    }
};

json record_to_json(const ExpansionRecord& r) {
    json j;
    j["center"] = {{"u_comp", r.center.u_comp}, {"w_comp", r.center.w_comp},
                   {"node", r.center.node},     {"u", r.center.u.str()},
                   {"w", r.center.w.str()}};
    j["chain"] = r.inserted_chain;
    j["bubble"] = r.bubble;
    json mult;
    for (const auto& [id, m] : r.multiplicity) mult[id] = {m.first.str(), m.second.str()};
    j["multiplicity"] = mult;
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"created", s.created}, {"left", s.left}, {"right", s.right},
                         {"node", s.node}});
    j["steps"] = steps;
    return j;
}

ExpansionRecord record_from_json(const json& j) {
    ExpansionRecord r;
    r.center.u_comp = j.at("center").at("u_comp").get<std::string>();
    r.center.w_comp = j.at("center").at("w_comp").get<std::string>();
    r.center.node = j.at("center").at("node").get<std::string>();
    r.center.u = Int(j.at("center").at("u").get<std::string>());
    r.center.w = Int(j.at("center").at("w").get<std::string>());
    for (const auto& v : j.at("chain")) r.inserted_chain.push_back(v.get<std::string>());
    r.bubble = j.at("bubble").get<std::string>();
    for (auto it = j.at("multiplicity").begin(); it != j.at("multiplicity").end(); ++it)
        r.multiplicity[it.key()] = {Int(it.value()[0].get<std::string>()),
                                    Int(it.value()[1].get<std::string>())};
    for (const auto& s : j.at("steps"))
        r.steps.push_back({s.at("created").get<std::string>(), s.at("left").get<std::string>(),
                           s.at("right").get<std::string>(), s.at("node").get<std::string>()});
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write file: " + path);
    f << text;
}

// "U,W" or "U,W,node" -> center spec pieces
void parse_center_arg(const std::string& arg, std::string& u, std::string& w,
                      std::string& node) {
    auto c1 = arg.find(',');
    if (c1 == std::string::npos) throw std::runtime_error("malformed center: " + arg);
    auto c2 = arg.find(',', c1 + 1);
    u = arg.substr(0, c1);
    if (c2 == std::string::npos) {
        w = arg.substr(c1 + 1);
        node = "";
    } else {
        w = arg.substr(c1 + 1, c2 - c1 - 1);
        node = arg.substr(c2 + 1);
    }
}

// match a CLI center argument against the row's center keys
std::string find_center_key(const TowerRow& row, const std::string& arg) {
    std::string key = "(" + arg + ")";
    for (const auto& c : row.centers)
        if (c.key == arg || c.key == key) return c.key;
    // also accept "U,W" matching a unique key by components
    std::string u, w, node;
    parse_center_arg(arg, u, w, node);
    std::vector<std::string> hits;
    for (const auto& c : row.centers)
        if (c.u == u && c.w == w && (node.empty() || c.node == node)) hits.push_back(c.key);
    if (hits.size() == 1) return hits[0];
    throw std::runtime_error("unknown or ambiguous center for this row: " + arg);
}

struct RowContext {
    const TowerRow* row;
    BuiltRow built;
    std::vector<std::string> order;
    std::vector<std::vector<Int>> kernel;
};

RowContext load_row(Catalog& cat, const std::string& id, std::size_t xi) {
    RowContext ctx;
    ctx.row = &cat.row(id);
    ctx.built = cat.build_row(*ctx.row, xi);
    IntMatrix r = restriction_matrix(ctx.built.state.graph, ctx.built.state.lattice,
                                     ctx.built.state.classes, ctx.order);
    ctx.kernel = kernel_basis(r);
    return ctx;
}

std::vector<ExpansionCenter> centers_from_args(Catalog& cat, const RowContext& ctx,
                                               const std::vector<std::string>& center_args,
                                               const std::vector<std::string>& weight_args,
                                               std::size_t xi) {
    if (center_args.size() != weight_args.size())
        throw std::runtime_error("need one --weights entry per --centers entry");
    std::vector<ExpansionCenter> out;
    for (std::size_t i = 0; i < center_args.size(); ++i) {
        std::string key = find_center_key(*ctx.row, center_args[i]);
        auto [u, w] = parse_weight(weight_args[i]);
        out.push_back(cat.make_center(*ctx.row, ctx.built, key, u, w, xi));
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"qhp: exact toolkit for Q-homology planes from line/conic arrangements"};
    app.require_subcommand(1);
    bool json_mode = false;
    app.add_flag("--json", json_mode, "machine-readable output");

    Catalog* catp = nullptr;
    auto cat = [&]() -> Catalog& {
        static Catalog c;
        catp = &c;
        return c;
    };

    // ---- catalog ----
    auto* sc_catalog = app.add_subcommand("catalog", "list or show catalog rows");
    auto* sc_list = sc_catalog->add_subcommand("list", "list all rows");
    auto* sc_show = sc_catalog->add_subcommand("show", "show one row");
    std::string show_id;
    sc_show->add_option("row", show_id, "row label or index")->required();

    // ---- resolve ----
    auto* sc_resolve = app.add_subcommand("resolve", "minimal log resolution of an arrangement");
    std::string resolve_arr, resolve_dot, resolve_out;
    sc_resolve->add_option("--arrangement", resolve_arr, "arrangement JSON file")->required();
    sc_resolve->add_option("--dot", resolve_dot, "write DOT file");
    sc_resolve->add_option("--out", resolve_out, "write state JSON file");

    // ---- build ----
    auto* sc_build = app.add_subcommand("build", "build a catalog row's D'");
    std::string build_row, build_out, build_dot;
    std::size_t build_xi = 0;
    sc_build->add_option("--row", build_row)->required();
    sc_build->add_option("--xi", build_xi, "node-assignment choice");
    sc_build->add_option("--out", build_out, "write state JSON file");
    sc_build->add_option("--dot", build_dot, "write DOT file");

    // ---- expand ----
    auto* sc_expand = app.add_subcommand("expand", "expand a state at a center");
    std::string ex_state, ex_center, ex_weight, ex_out, ex_records;
    sc_expand->add_option("--state", ex_state, "state JSON from build/resolve")->required();
    sc_expand->add_option("--center", ex_center, "U,W[,node]")->required();
    sc_expand->add_option("--weight", ex_weight, "u/w or integer")->required();
    sc_expand->add_option("--out", ex_out, "write new state JSON");
    sc_expand->add_option("--records", ex_records, "write expansion records JSON");

    // ---- check ----
    auto* sc_check = app.add_subcommand("check", "Q-homology-plane criterion");
    std::string ck_state, ck_base, ck_records;
    sc_check->add_option("--state", ck_state, "state JSON of the boundary")->required();
    sc_check->add_option("--base", ck_base, "pre-expansion state (with --records)");
    sc_check->add_option("--records", ck_records, "expansion records JSON");

    // ---- h1 ----
    auto* sc_h1 = app.add_subcommand("h1", "H1 order for a row, centers, weights");
    std::string h1_row;
    std::vector<std::string> h1_centers, h1_weights;
    std::size_t h1_xi = 0;
    sc_h1->add_option("--row", h1_row)->required();
    sc_h1->add_option("--centers", h1_centers, "center per slot; omit for rows without centers");
    sc_h1->add_option("--weights", h1_weights);
    sc_h1->add_option("--xi", h1_xi);

    // ---- detm ----
    auto* sc_detm = app.add_subcommand("detm", "det m for a row and centers");
    std::string dm_row;
    std::vector<std::string> dm_centers, dm_weights;
    bool dm_symbolic = false;
    sc_detm->add_option("--row", dm_row)->required();
    sc_detm->add_option("--centers", dm_centers)->required();
    sc_detm->add_option("--weights", dm_weights);
    sc_detm->add_flag("--symbolic", dm_symbolic, "print the normalized polynomial");

    // ---- enumerate ----
    auto* sc_enum = app.add_subcommand("enumerate", "stream a tower's members");
    std::string en_row;
    unsigned en_max = 6;
    std::string en_h1;
    bool en_zhp = false, en_bounds = false;
    sc_enum->add_option("--row", en_row)->required();
    sc_enum->add_option("--max-height", en_max);
    sc_enum->add_option("--h1", en_h1, "filter by H1 order");
    sc_enum->add_flag("--zhp", en_zhp, "only Z-homology planes");
    sc_enum->add_flag("--bounds", en_bounds, "only boundaries passing the finiteness bounds");

    // ---- zhp ----
    auto* sc_zhp = app.add_subcommand("zhp", "weights hitting a target H1 on one center");
    std::string zhp_row, zhp_center, zhp_h1 = "1";
    std::size_t zhp_count = 5;
    std::string zhp_bound = "1000";
    sc_zhp->add_option("--row", zhp_row)->required();
    sc_zhp->add_option("--center", zhp_center)->required();
    sc_zhp->add_option("--h1", zhp_h1);
    sc_zhp->add_option("--count", zhp_count);
    sc_zhp->add_option("--bound", zhp_bound, "search bound for the base pair");

    // ---- diagram ----
    auto* sc_diag = app.add_subcommand("diagram", "EN diagram / DOT export of a graph");
    std::string dg_graph;
    bool dg_en = false;
    sc_diag->add_option("--graph", dg_graph, "graph or state JSON")->required();
    sc_diag->add_flag("--en", dg_en, "print the Eisenbud-Neumann diagram");

    // ---- bounds ----
    auto* sc_bounds = app.add_subcommand("bounds", "finiteness bounds report");
    std::string bd_graph, bd_row;
    std::vector<std::string> bd_centers, bd_weights;
    sc_bounds->add_option("--graph", bd_graph, "graph or state JSON");
    sc_bounds->add_option("--row", bd_row, "or: row with centers/weights");
    sc_bounds->add_option("--centers", bd_centers);
    sc_bounds->add_option("--weights", bd_weights);

    // ---- aut ----
    auto* sc_aut = app.add_subcommand("aut", "weighted-graph automorphism group");
    std::string au_graph, au_row;
    std::vector<std::string> au_centers, au_weights;
    std::size_t au_xi = 0;
    sc_aut->add_option("--graph", au_graph, "graph or state JSON");
    sc_aut->add_option("--row", au_row, "or: row with centers/weights");
    sc_aut->add_option("--centers", au_centers);
    sc_aut->add_option("--weights", au_weights);
    sc_aut->add_option("--xi", au_xi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto load_graph_arg = [&](const std::string& path) {
        json j = json::parse(slurp(path));
        if (j.contains("graph")) return DualGraph::from_json(j["graph"].dump());
        return DualGraph::from_json(j.dump());
    };

    auto boundary_for = [&](const std::string& rowid, const std::vector<std::string>& cargs,
                            const std::vector<std::string>& wargs, std::size_t xi) {
        RowContext ctx = load_row(cat(), rowid, xi);
        auto cs = centers_from_args(cat(), ctx, cargs, wargs, xi);
        std::vector<ExpansionRecord> recs;
        ExpansionState out = expand_many(ctx.built.state, cs, recs);
        return out.graph;
    };

    try {
        if (*sc_list) {
            json rows = json::array();
            for (const auto& r : cat().rows()) {
                if (json_mode) {
                    rows.push_back({{"index", r.index},
                                    {"label", r.label},
                                    {"degree", cat().total_degree(r)},
                                    {"n_centers", r.n_centers},
                                    {"cstst", r.cstst}});
                } else {
                    std::cout << r.index << "\t" << r.label << "\tdeg=" << cat().total_degree(r)
                              << "\tn=" << r.n_centers << (r.cstst ? "\tC**" : "") << "\n";
                }
            }
            if (json_mode) std::cout << rows.dump(1) << "\n";
        } else if (*sc_show) {
            const TowerRow& r = cat().row(show_id);
            json j;
            j["index"] = r.index;
            j["label"] = r.label;
            j["arrangement"] = r.arrangement_path;
            j["deleted"] = r.deleted;
            j["n_centers"] = r.n_centers;
            j["n_count"] = r.n_count;
            j["cstst"] = r.cstst;
            if (r.h1_fixed) j["h1"] = r.h1_fixed->str();
            json cs = json::array();
            for (const auto& c : r.centers)
                cs.push_back({{"key", c.key}, {"u", c.u}, {"w", c.w}, {"node", c.node}});
            j["centers"] = cs;
            json rules = json::array();
            for (const auto& rule : r.rules) {
                json jr;
                jr["combo"] = rule.combo;
                if (rule.detm) jr["detm"] = *rule.detm;
                jr["z"] = rule.z;
                rules.push_back(jr);
            }
            j["rules"] = rules;
            std::cout << j.dump(1) << "\n";
        } else if (*sc_resolve) {
            Arrangement arr = Arrangement::from_json(slurp(resolve_arr));
            auto rep = validate(arr);
            if (!rep.ok()) {
                std::cerr << "error: invalid arrangement: "
                          << rep.issues[0].kind << " " << rep.issues[0].detail << "\n";
                return 1;
            }
            auto res = minimal_log_resolution(arr);
            PipelineState ps{ExpansionState{res.graph, res.lattice, res.classes}};
            json out = ps.to_json(res.lattice);
            json eo;
            for (const auto& [pt, order] : res.exceptional_order) eo[pt] = order;
            out["exceptional_order"] = eo;
            if (!resolve_dot.empty()) spit(resolve_dot, res.graph.to_dot());
            if (!resolve_out.empty())
                spit(resolve_out, out.dump(1));
            else
                std::cout << out.dump(1) << "\n";
        } else if (*sc_build) {
            RowContext ctx = load_row(cat(), build_row, build_xi);
            PipelineState ps{ctx.built.state};
            json out = ps.to_json(ctx.built.state.lattice);
            if (!build_dot.empty()) spit(build_dot, ctx.built.state.graph.to_dot());
            if (!build_out.empty())
                spit(build_out, out.dump(1));
            else
                std::cout << out.dump(1) << "\n";
        } else if (*sc_expand) {
            PipelineState ps = PipelineState::from_json(json::parse(slurp(ex_state)));
            std::string u, w, node;
            parse_center_arg(ex_center, u, w, node);
            auto [wu, ww] = parse_weight(ex_weight);
            ExpansionCenter c{u, w, node, wu, ww};
            ExpansionRecord rec;
            ExpansionState out = expand(ps.st, c, rec);
            PipelineState po{out};
            json jo = po.to_json(out.lattice);
            if (!ex_records.empty()) {
                json jr = json::array();
                jr.push_back(record_to_json(rec));
                spit(ex_records, jr.dump(1));
            }
            if (!ex_out.empty())
                spit(ex_out, jo.dump(1));
            else
                std::cout << jo.dump(1) << "\n";
        } else if (*sc_check) {
            PipelineState ps = PipelineState::from_json(json::parse(slurp(ck_state)));
            QhpVerdict v;
            if (!ck_records.empty()) {
                if (ck_base.empty()) {
                    std::cerr << "error: --records requires --base\n";
                    return 1;
                }
                PipelineState base = PipelineState::from_json(json::parse(slurp(ck_base)));
                std::vector<ExpansionRecord> recs;
                for (const auto& jr : json::parse(slurp(ck_records)))
                    recs.push_back(record_from_json(jr));
                v = qhp_check_expansion(base.st.graph, base.st.lattice, base.st.classes,
                                        ps.st.graph, recs);
            } else {
                v = qhp_check_direct(ps.st.graph, ps.st.lattice, ps.st.classes);
            }
            std::cout << v.to_json() << "\n";
        } else if (*sc_h1) {
            RowContext ctx = load_row(cat(), h1_row, h1_xi);
            auto cs = centers_from_args(cat(), ctx, h1_centers, h1_weights, h1_xi);
            QhpVerdict v;
            if (cs.empty()) {
                v = qhp_check_direct(ctx.built.state.graph, ctx.built.state.lattice,
                                     ctx.built.state.classes);
            } else {
                std::vector<ExpansionRecord> recs;
                ExpansionState out = expand_many(ctx.built.state, cs, recs);
                v = qhp_check_expansion(ctx.built.state.graph, ctx.built.state.lattice,
                                        ctx.built.state.classes, out.graph, recs);
            }
            if (json_mode)
                std::cout << v.to_json() << "\n";
            else if (v.is_qhp)
                std::cout << "h1=" << v.h1_order << "\n";
            else {
                std::cout << "not a Q-homology plane";
                for (const auto& rws : v.reasons) std::cout << "; " << rws;
                std::cout << "\n";
            }
        } else if (*sc_detm) {
            RowContext ctx = load_row(cat(), dm_row, 0);
            std::vector<ExpansionCenter> cs;
            for (const auto& a : dm_centers) {
                std::string key = find_center_key(*ctx.row, a);
                cs.push_back(cat().make_center(*ctx.row, ctx.built, key, 1, 1, 0));
            }
            if (dm_symbolic) {
                WeightPolynomial p = detm_symbolic(ctx.kernel, ctx.order, cs);
                std::vector<std::string> names;
                for (std::size_t i = 0; i < cs.size(); ++i)
                    names.push_back(std::to_string(i + 1));
                std::cout << p.str(names) << "\n";
            } else {
                if (dm_weights.size() != cs.size()) {
                    std::cerr << "error: need --weights per center (or --symbolic)\n";
                    return 1;
                }
                for (std::size_t i = 0; i < cs.size(); ++i) {
                    auto [u, w] = parse_weight(dm_weights[i]);
                    cs[i].u = u;
                    cs[i].w = w;
                }
                std::vector<ExpansionRecord> fake;
                for (const auto& c : cs) {
                    ExpansionRecord r;
                    r.center = c;
                    fake.push_back(r);
                }
                IntMatrix m = m_matrix(ctx.kernel, ctx.order, fake);
                std::cout << "detm=" << m.det() << "\n";
            }
        } else if (*sc_enum) {
            const TowerRow& r = cat().row(en_row);
            Catalog::EnumerationFilters f;
            if (!en_h1.empty()) f.h1 = Int(en_h1);
            f.zhp_only = en_zhp;
            f.bounds = en_bounds;
            cat().enumerate(r, en_max, f, [&](const Catalog::EnumerationItem& it) {
                if (json_mode) {
                    json j;
                    j["combo"] = it.combo;
                    json ws = json::array();
                    for (const auto& [u, w] : it.weights) ws.push_back(u.str() + "/" + w.str());
                    j["weights"] = ws;
                    j["is_qhp"] = it.verdict.is_qhp;
                    j["h1"] = it.verdict.h1_order.str();
                    std::cout << j.dump() << "\n";
                } else {
                    for (std::size_t i = 0; i < it.combo.size(); ++i)
                        std::cout << it.combo[i] << "@" << it.weights[i].first << "/"
                                  << it.weights[i].second << (i + 1 < it.combo.size() ? " " : "");
                    if (it.verdict.is_qhp)
                        std::cout << "  h1=" << it.verdict.h1_order << "\n";
                    else
                        std::cout << "  (not QHP)\n";
                }
                return true;
            });
        } else if (*sc_zhp) {
            RowContext ctx = load_row(cat(), zhp_row, 0);
            std::string key = find_center_key(*ctx.row, zhp_center);
            std::vector<ExpansionCenter> cs{cat().make_center(*ctx.row, ctx.built, key, 1, 1, 0)};
            WeightPolynomial raw = detm_symbolic_raw(ctx.kernel, ctx.order, cs);
            auto res = zhp_weights(raw, Int(zhp_h1), zhp_count, Int(zhp_bound));
            if (!res.found) {
                std::cout << (res.message.empty() ? "none found" : res.message) << "\n";
            } else {
                for (const auto& [u, w] : res.weights)
                    std::cout << u << "/" << w << "\n";
            }
        } else if (*sc_diag) {
            DualGraph g = load_graph_arg(dg_graph);
            if (dg_en) {
                ENDiagram d = en_diagram(g);
                if (json_mode) {
                    json j;
                    j["vertices"] = d.vertices;
                    json es = json::array();
                    for (const auto& [a, b] : d.edges) es.push_back({a, b});
                    j["edges"] = es;
                    std::cout << j.dump(1) << "\n";
                } else {
                    std::cout << d.vertices.size() << " vertices, " << d.edges.size()
                              << " edges\n";
                    for (const auto& [a, b] : d.edges)
                        std::cout << "  " << a << " -- " << b << "\n";
                }
            } else {
                std::cout << g.to_dot();
            }
        } else if (*sc_bounds) {
            DualGraph g = bd_graph.empty()
                              ? boundary_for(bd_row, bd_centers, bd_weights, 0)
                              : load_graph_arg(bd_graph);
            BoundsReport rep = bounds_report(g);
            json j;
            j["twigs"] = {{"count", rep.twig_count}, {"ok", rep.twigs_ok}};
            j["core"] = {{"size", rep.core_size}, {"ok", rep.core_ok}};
            j["branching"] = {{"max", rep.max_branching},
                              {"witness", rep.branching_witness},
                              {"ok", rep.branching_ok}};
            j["en_vertices"] = {{"count", rep.en_vertices}, {"ok", rep.en_ok}};
            j["all_ok"] = rep.all_ok();
            std::cout << j.dump(1) << "\n";
        } else if (*sc_aut) {
            DualGraph g = au_graph.empty()
                              ? boundary_for(au_row, au_centers, au_weights, au_xi)
                              : load_graph_arg(au_graph);
            AutomorphismGroup a = graph_automorphisms(g);
            if (json_mode) {
                json j;
                j["order"] = a.order;
                json gens = json::array();
                for (const auto& gmap : a.generators) {
                    json jg;
                    for (const auto& [k, v] : gmap)
                        if (k != v) jg[k] = v;
                    gens.push_back(jg);
                }
                j["generators"] = gens;
                std::cout << j.dump(1) << "\n";
            } else {
                std::cout << "order " << a.order << "\n";
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) { return run(argc, argv); }
