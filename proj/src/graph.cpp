#include "qhp/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qhp/matrix.hpp"

namespace qhp {

using nlohmann::json;

bool DualGraph::has_vertex(const std::string& id) const { return index_.count(id) != 0; }

const GraphVertex& DualGraph::vertex(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex: " + id);
    return vertices_[it->second];
}

GraphVertex& DualGraph::vertex(const std::string& id) {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown vertex: " + id);
    return vertices_[it->second];
}

void DualGraph::add_vertex(const std::string& id, long long w, std::set<std::string> tags) {
    if (index_.count(id)) throw std::invalid_argument("duplicate vertex: " + id);
    index_[id] = vertices_.size();
    vertices_.push_back({id, w, std::move(tags)});
}

void DualGraph::add_edge(const std::string& a, const std::string& b, const std::string& node) {
    if (!has_vertex(a) || !has_vertex(b))
        throw std::invalid_argument("edge endpoint missing: " + a + "," + b);
    if (a == b) throw std::invalid_argument("self-loop not allowed: " + a);
    edges_.push_back({a, b, node});
}

void DualGraph::remove_vertex(const std::string& id) {
    if (!has_vertex(id)) throw std::invalid_argument("unknown vertex: " + id);
    std::size_t pos = index_[id];
    vertices_.erase(vertices_.begin() + static_cast<long>(pos));
    index_.clear();
    for (std::size_t i = 0; i < vertices_.size(); ++i) index_[vertices_[i].id] = i;
    edges_.erase(std::remove_if(edges_.begin(), edges_.end(),
                                [&](const GraphEdge& e) { return e.a == id || e.b == id; }),
                 edges_.end());
}

void DualGraph::remove_edge_at(const std::string& a, const std::string& b,
                               const std::string& node) {
    for (auto it = edges_.begin(); it != edges_.end(); ++it) {
        bool match = ((it->a == a && it->b == b) || (it->a == b && it->b == a)) &&
                     (node.empty() || it->node == node);
        if (match) {
            edges_.erase(it);
            return;
        }
    }
    throw std::invalid_argument("no such edge: " + a + "," + b + (node.empty() ? "" : "," + node));
}

std::vector<std::string> DualGraph::neighbors(const std::string& id) const {
    std::vector<std::string> r;
    for (const auto& e : edges_) {
        if (e.a == id) r.push_back(e.b);
        if (e.b == id) r.push_back(e.a);
    }
    std::sort(r.begin(), r.end());
    return r;
}

std::size_t DualGraph::degree(const std::string& id) const { return neighbors(id).size(); }

std::size_t DualGraph::edge_count(const std::string& a, const std::string& b) const {
    std::size_t n = 0;
    for (const auto& e : edges_)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) ++n;
    return n;
}

std::vector<GraphEdge> DualGraph::edges_between(const std::string& a,
                                                const std::string& b) const {
    std::vector<GraphEdge> r;
    for (const auto& e : edges_)
        if ((e.a == a && e.b == b) || (e.a == b && e.b == a)) r.push_back(e);
    return r;
}

bool DualGraph::connected() const {
    if (vertices_.empty()) return true;
    std::set<std::string> seen;
    std::queue<std::string> q;
    q.push(vertices_[0].id);
    seen.insert(vertices_[0].id);
    while (!q.empty()) {
        std::string v = q.front();
        q.pop();
        for (const auto& n : neighbors(v))
            if (seen.insert(n).second) q.push(n);
    }
    return seen.size() == vertices_.size();
}

bool DualGraph::is_rational_tree() const {
    return connected() && edges_.size() + 1 == vertices_.size();
}

std::string DualGraph::to_json() const {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : vertices_) {
        json jv;
        jv["id"] = v.id;
        jv["w"] = v.w;
        jv["tags"] = std::vector<std::string>(v.tags.begin(), v.tags.end());
        j["vertices"].push_back(jv);
    }
    j["edges"] = json::array();
    for (const auto& e : edges_) {
        json je;
        je["a"] = e.a;
        je["b"] = e.b;
        if (!e.node.empty()) je["node"] = e.node;
        j["edges"].push_back(je);
    }
    return j.dump(2);
}

DualGraph DualGraph::from_json(const std::string& text) {
    json j = json::parse(text);
    DualGraph g;
    for (const auto& jv : j.at("vertices")) {
        std::set<std::string> tags;
        if (jv.contains("tags"))
            for (const auto& t : jv["tags"]) tags.insert(t.get<std::string>());
        g.add_vertex(jv.at("id").get<std::string>(), jv.at("w").get<long long>(), tags);
    }
    for (const auto& je : j.at("edges"))
        g.add_edge(je.at("a").get<std::string>(), je.at("b").get<std::string>(),
                   je.contains("node") ? je["node"].get<std::string>() : "");
    return g;
}

std::string DualGraph::to_dot() const {
    std::vector<GraphVertex> vs = vertices_;
    std::sort(vs.begin(), vs.end(),
              [](const GraphVertex& a, const GraphVertex& b) { return a.id < b.id; });
    std::vector<GraphEdge> es = edges_;
    for (auto& e : es)
        if (e.b < e.a) std::swap(e.a, e.b);
    std::sort(es.begin(), es.end(), [](const GraphEdge& x, const GraphEdge& y) {
        return std::tie(x.a, x.b, x.node) < std::tie(y.a, y.b, y.node);
    });
    std::ostringstream os;
    os << "graph D {\n";
    for (const auto& v : vs)
        os << "  \"" << v.id << "\" [label=\"" << v.id << " (" << v.w << ")\"];\n";
    for (const auto& e : es) {
        os << "  \"" << e.a << "\" -- \"" << e.b << "\"";
        if (!e.node.empty()) os << " [label=\"" << e.node << "\"]";
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

std::size_t branching_number(const DualGraph& g, const std::set<std::string>& s) {
    if (s.empty()) throw std::invalid_argument("branching_number: empty subset");
    for (const auto& v : s)
        if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex: " + v);
    std::size_t n = 0;
    for (const auto& e : g.edges()) {
        bool ina = s.count(e.a), inb = s.count(e.b);
        if (ina != inb) ++n;
    }
    return n;
}

namespace {

std::size_t beta1(const DualGraph& g, const std::string& v) {
    return branching_number(g, {v});
}

Twig make_twig(const DualGraph& g, std::vector<std::string> chain) {
    Twig t;
    t.vertices = std::move(chain);
    t.admissible = true;
    t.minus_two = true;
    for (const auto& v : t.vertices) {
        long long w = g.vertex(v).w;
        if (w > -2) t.admissible = false;
        if (w != -2) t.minus_two = false;
    }
    return t;
}

} // namespace

std::vector<Twig> maximal_twigs(const DualGraph& g) {
    if (!g.connected()) throw std::invalid_argument("maximal_twigs: graph not connected");
    std::vector<Twig> out;
    if (g.vertices().empty()) return out;

    bool has_branch = false;
    for (const auto& v : g.vertices())
        if (beta1(g, v.id) >= 3) has_branch = true;

    if (!has_branch) {
        // Pure chain (or single vertex, or circular). A circular graph has no
        // tips and hence no twigs; a chain is one twig from its least tip.
        std::vector<std::string> tips;
        for (const auto& v : g.vertices())
            if (beta1(g, v.id) <= 1) tips.push_back(v.id);
        if (tips.empty()) return out;
        std::sort(tips.begin(), tips.end());
        std::vector<std::string> chain;
        std::set<std::string> seen;
        std::string cur = tips[0];
        chain.push_back(cur);
        seen.insert(cur);
        while (true) {
            std::string next;
            for (const auto& n : g.neighbors(cur))
                if (!seen.count(n)) {
                    next = n;
                    break;
                }
            if (next.empty()) break;
            chain.push_back(next);
            seen.insert(next);
            cur = next;
        }
        out.push_back(make_twig(g, chain));
        return out;
    }

    // Grow a chain from each tip until a branching vertex (or a vertex with a
    // multi-edge) stops it.
    std::vector<std::string> tips;
    for (const auto& v : g.vertices())
        if (beta1(g, v.id) == 1) tips.push_back(v.id);
    std::sort(tips.begin(), tips.end());
    for (const auto& tip : tips) {
        std::vector<std::string> chain;
        std::set<std::string> seen;
        std::string cur = tip;
        while (beta1(g, cur) <= 2) {
            chain.push_back(cur);
            seen.insert(cur);
            std::string next;
            for (const auto& n : g.neighbors(cur))
                if (!seen.count(n)) {
                    next = n;
                    break;
                }
            if (next.empty()) break;
            cur = next;
        }
        out.push_back(make_twig(g, chain));
    }
    return out;
}

std::set<std::string> core(const DualGraph& g) {
    std::set<std::string> in_twig;
    for (const auto& t : maximal_twigs(g))
        for (const auto& v : t.vertices) in_twig.insert(v);
    std::set<std::string> c;
    for (const auto& v : g.vertices())
        if (!in_twig.count(v.id)) c.insert(v.id);
    return c;
}

ENDiagram en_diagram(const DualGraph& g) {
    if (!g.connected()) throw std::invalid_argument("en_diagram: graph not connected");
    ENDiagram d;
    std::set<std::string> branching;
    for (const auto& v : g.vertices())
        if (beta1(g, v.id) >= 3) branching.insert(v.id);

    // Connected components of D - B.
    std::map<std::string, int> comp;
    int ncomp = 0;
    for (const auto& v : g.vertices()) {
        if (branching.count(v.id) || comp.count(v.id)) continue;
        std::queue<std::string> q;
        q.push(v.id);
        comp[v.id] = ncomp;
        while (!q.empty()) {
            std::string x = q.front();
            q.pop();
            for (const auto& n : g.neighbors(x)) {
                if (branching.count(n) || comp.count(n)) continue;
                comp[n] = ncomp;
                q.push(n);
            }
        }
        ++ncomp;
    }
    for (const auto& b : branching) d.vertices.push_back("B:" + b);
    for (int i = 0; i < ncomp; ++i) d.vertices.push_back("T:" + std::to_string(i));
    std::set<std::pair<std::string, std::string>> es;
    for (const auto& e : g.edges()) {
        bool ba = branching.count(e.a), bb = branching.count(e.b);
        if (ba && bb)
            es.insert({"B:" + std::min(e.a, e.b), "B:" + std::max(e.a, e.b)});
        else if (ba && !bb)
            es.insert({"B:" + e.a, "T:" + std::to_string(comp[e.b])});
        else if (!ba && bb)
            es.insert({"B:" + e.b, "T:" + std::to_string(comp[e.a])});
    }
    d.edges.assign(es.begin(), es.end());
    return d;
}

Int discriminant(const DualGraph& g, const std::set<std::string>& s) {
    std::vector<std::string> vs(s.begin(), s.end());
    for (const auto& v : vs)
        if (!g.has_vertex(v)) throw std::invalid_argument("unknown vertex: " + v);
    IntMatrix m(vs.size(), vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        m.at(i, i) = -Int(g.vertex(vs[i]).w);
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
            Int c = -Int(g.edge_count(vs[i], vs[j]));
            m.at(i, j) = c;
            m.at(j, i) = c;
        }
    }
    return m.det();
}

Int discriminant(const DualGraph& g) {
    std::set<std::string> all;
    for (const auto& v : g.vertices()) all.insert(v.id);
    return discriminant(g, all);
}

std::vector<Rat> bark(const DualGraph& g, const Twig& t) {
    // Solve M x = rhs where M is the twig's intersection matrix and
    // rhs_i = 2 - beta_D(T_i). Admissible twigs are negative definite, so the
    // system is uniquely solvable.
    std::size_t n = t.vertices.size();
    if (n == 0) return {};
    if (!t.admissible) throw std::invalid_argument("bark: twig not admissible");
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        m[i][i] = Rat(g.vertex(t.vertices[i]).w);
        for (std::size_t j = i + 1; j < n; ++j) {
            Rat c(static_cast<long long>(g.edge_count(t.vertices[i], t.vertices[j])));
            m[i][j] = c;
            m[j][i] = c;
        }
        // rhs = beta - 2 = T'.(K+D); this is the orientation that makes the
        // bark effective, cf. the (r-i+1)/(r+1) coefficients of a (-2)-twig
        m[i][n] = Rat(static_cast<long long>(beta1(g, t.vertices[i]))) - Rat(2);
    }
    // Gaussian elimination, exact.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c] == 0) ++p;
        if (p == n) throw std::runtime_error("bark: singular twig matrix");
        std::swap(m[c], m[p]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[c][c];
            for (std::size_t j = c; j <= n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    std::vector<Rat> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
}

std::vector<std::string> superfluous_curves(const DualGraph& g) {
    std::vector<std::string> out;
    for (const auto& v : g.vertices()) {
        if (v.w != -1) continue;
        std::size_t beta = beta1(g, v.id);
        if (beta == 1) {
            out.push_back(v.id);
        } else if (beta == 2) {
            auto ns = g.neighbors(v.id);
            if (ns.size() == 2 && ns[0] != ns[1]) out.push_back(v.id);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

DualGraph snc_minimalize(const DualGraph& g) {
    DualGraph cur = g;
    while (true) {
        auto sup = superfluous_curves(cur);
        if (sup.empty()) return cur;
        const std::string v = sup.front(); // lowest id first
        auto ns = cur.neighbors(v);
        for (const auto& n : ns) cur.vertex(n).w += 1;
        if (ns.size() == 2) cur.add_edge(ns[0], ns[1]);
        cur.remove_vertex(v);
    }
}

namespace {

// Backtracking automorphism/isomorphism search with color refinement.
struct GraphView {
    std::vector<std::string> ids;
    std::vector<long long> w;
    std::vector<std::vector<int>> adj; // multiplicity matrix

    explicit GraphView(const DualGraph& g) {
        for (const auto& v : g.vertices()) ids.push_back(v.id);
        std::sort(ids.begin(), ids.end());
        std::map<std::string, int> idx;
        for (std::size_t i = 0; i < ids.size(); ++i) idx[ids[i]] = static_cast<int>(i);
        w.resize(ids.size());
        for (const auto& v : g.vertices()) w[idx[v.id]] = v.w;
        adj.assign(ids.size(), std::vector<int>(ids.size(), 0));
        for (const auto& e : g.edges()) {
            int a = idx[e.a], b = idx[e.b];
            adj[a][b]++;
            adj[b][a]++;
        }
    }

    std::vector<int> refine_colors() const {
        std::size_t n = ids.size();
        std::vector<long long> color(n);
        {
            std::map<std::pair<long long, int>, int> cmap;
            for (std::size_t i = 0; i < n; ++i) {
                int deg = 0;
                for (std::size_t j = 0; j < n; ++j) deg += adj[i][j];
                auto key = std::make_pair(w[i], deg);
                auto it = cmap.find(key);
                if (it == cmap.end()) it = cmap.emplace(key, (int)cmap.size()).first;
                color[i] = it->second;
            }
        }
        while (true) {
            std::map<std::pair<long long, std::vector<int>>, int> cmap;
            std::vector<long long> nc(n);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<int> sig;
                for (std::size_t j = 0; j < n; ++j)
                    for (int k = 0; k < adj[i][j]; ++k) sig.push_back((int)color[j]);
                std::sort(sig.begin(), sig.end());
                auto key = std::make_pair(color[i], sig);
                auto it = cmap.find(key);
                if (it == cmap.end()) it = cmap.emplace(key, (int)cmap.size()).first;
                nc[i] = it->second;
            }
            if (nc == color) break;
            color = nc;
        }
        return std::vector<int>(color.begin(), color.end());
    }
};

// Returns false when the callback asked to stop the whole search.
bool search_maps(const GraphView& a, const GraphView& b, const std::vector<int>& ca,
                 const std::vector<int>& cb, std::vector<int>& map, std::size_t pos,
                 const std::function<bool(const std::vector<int>&)>& on_found) {
    std::size_t n = a.ids.size();
    if (pos == n) return on_found(map);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < pos; ++i) used[map[i]] = true;
    for (std::size_t cand = 0; cand < n; ++cand) {
        if (used[cand] || ca[pos] != cb[cand]) continue;
        bool ok = true;
        for (std::size_t i = 0; i < pos && ok; ++i)
            if (a.adj[pos][i] != b.adj[cand][map[i]]) ok = false;
        if (!ok) continue;
        map[pos] = static_cast<int>(cand);
        if (!search_maps(a, b, ca, cb, map, pos + 1, on_found)) return false;
    }
    return true;
}

} // namespace

AutomorphismGroup graph_automorphisms(const DualGraph& g) {
    GraphView view(g);
    auto colors = view.refine_colors();
    AutomorphismGroup res;
    res.order = 0;
    std::vector<int> map(view.ids.size());
    std::vector<std::vector<int>> found;
    search_maps(view, view, colors, colors, map, 0, [&](const std::vector<int>& m) {
        found.push_back(m);
        return true;
    });
    res.order = found.size();
    // Greedy generating set: add permutations not generated by those so far.
    std::set<std::vector<int>> closure;
    std::size_t n = view.ids.size();
    std::vector<int> idp(n);
    for (std::size_t i = 0; i < n; ++i) idp[i] = (int)i;
    closure.insert(idp);
    auto close = [&]() {
        bool grown = true;
        while (grown) {
            grown = false;
            std::vector<std::vector<int>> cur(closure.begin(), closure.end());
            for (const auto& x : cur)
                for (const auto& y : cur) {
                    std::vector<int> z(n);
                    for (std::size_t i = 0; i < n; ++i) z[i] = x[y[i]];
                    if (closure.insert(z).second) grown = true;
                }
        }
    };
    for (const auto& m : found) {
        if (closure.count(m)) continue;
        std::map<std::string, std::string> perm;
        for (std::size_t i = 0; i < n; ++i) perm[view.ids[i]] = view.ids[m[i]];
        res.generators.push_back(perm);
        closure.insert(m);
        close();
        if (closure.size() == found.size()) break;
    }
    return res;
}

bool graphs_isomorphic(const DualGraph& a, const DualGraph& b) {
    if (a.vertices().size() != b.vertices().size() || a.edges().size() != b.edges().size())
        return false;
    GraphView va(a), vb(b);
    auto ca = va.refine_colors();
    auto cb = vb.refine_colors();
    {
        // Color ids are assigned in encounter order, which may differ between
        // the two graphs; compare only the partition sizes.
        std::map<int, int> na, nb;
        for (int c : ca) na[c]++;
        for (int c : cb) nb[c]++;
        std::vector<int> pa, pb;
        for (auto& [c, k] : na) pa.push_back(k);
        for (auto& [c, k] : nb) pb.push_back(k);
        std::sort(pa.begin(), pa.end());
        std::sort(pb.begin(), pb.end());
        if (pa != pb) return false;
    }
    // Colors must be matched via a canonical relabeling: recolor both by
    // (w, degree)-sorted signature classes computed jointly.
    std::size_t n = va.ids.size();
    std::vector<int> map(n);
    bool ok = false;
    // Joint refinement: recompute colors on the disjoint union so ids agree.
    {
        // Build union view.
        GraphView u = va;
        u.ids.insert(u.ids.end(), vb.ids.begin(), vb.ids.end());
        u.w.insert(u.w.end(), vb.w.begin(), vb.w.end());
        std::size_t m2 = 2 * n;
        std::vector<std::vector<int>> adj(m2, std::vector<int>(m2, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                adj[i][j] = va.adj[i][j];
                adj[n + i][n + j] = vb.adj[i][j];
            }
        u.adj = adj;
        auto uc = u.refine_colors();
        std::vector<int> uca(uc.begin(), uc.begin() + n), ucb(uc.begin() + n, uc.end());
        search_maps(va, vb, uca, ucb, map, 0, [&](const std::vector<int>&) {
            ok = true;
            return false; // stop at first
        });
    }
    return ok;
}

BoundsReport bounds_report(const DualGraph& g) {
    BoundsReport r;
    auto twigs = maximal_twigs(g);
    r.twig_count = twigs.size();
    r.twigs_ok = r.twig_count <= 10;
    r.core_size = core(g).size();
    r.core_ok = r.core_size <= 7;
    r.max_branching = 0;
    for (const auto& v : g.vertices()) {
        std::size_t b = branching_number(g, {v.id});
        if (b > r.max_branching) {
            r.max_branching = b;
            r.branching_witness = v.id;
        }
    }
    r.branching_ok = r.max_branching <= 5;
    r.en_vertices = en_diagram(g).vertices.size();
    r.en_ok = r.en_vertices <= 16;
    return r;
}

} // namespace qhp
