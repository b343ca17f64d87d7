#include "qhp/expansion.hpp"

#include <algorithm>
#include <stdexcept>

namespace qhp {

std::pair<Int, Int> parse_weight(const std::string& text) {
    auto slash = text.find('/');
    Int u, w = 1;
    try {
        if (slash == std::string::npos) {
            u = Int(text);
        } else {
            u = Int(text.substr(0, slash));
            w = Int(text.substr(slash + 1));
        }
    } catch (...) {
        throw std::invalid_argument("malformed weight: " + text);
    }
    if (u <= 0 || w <= 0) throw std::invalid_argument("weight must be positive: " + text);
    Int g = int_gcd(u, w);
    return {u / g, w / g};
}

ExpansionState expand(const ExpansionState& st, const ExpansionCenter& center,
                      ExpansionRecord& record_out) {
    if (center.u <= 0 || center.w <= 0)
        throw std::invalid_argument("expansion weight must be positive");
    if (int_gcd(center.u, center.w) != 1)
        throw std::invalid_argument("expansion weight not in lowest terms");
    if (center.u_comp == center.w_comp)
        throw std::invalid_argument("expansion center requires two distinct components");
    auto edges = st.graph.edges_between(center.u_comp, center.w_comp);
    if (edges.empty())
        throw std::invalid_argument("components do not meet: " + center.u_comp + "," +
                                    center.w_comp);
    std::string node = center.node;
    if (node.empty()) {
        if (edges.size() > 1)
            throw std::invalid_argument("components meet at several nodes; name one: " +
                                        center.u_comp + "," + center.w_comp);
        node = edges[0].node;
    } else {
        bool found = false;
        for (const auto& e : edges)
            if (e.node == node) found = true;
        if (!found)
            throw std::invalid_argument("no node '" + node + "' between " + center.u_comp +
                                        " and " + center.w_comp);
    }

    ExpansionState out = st;
    ExpansionRecord rec;
    rec.center = center;
    rec.center.node = node;

    int k = 0;
    // One blowup at the node between x and y (consuming the edge `consume`),
    // producing a curve of multiplicities (mu, mw) in (phi*U, phi*W).
    auto blow_between = [&](const std::string& x, const std::string& y,
                            const std::string& consume, const Int& mu,
                            const Int& mw) -> std::string {
        ++k;
        std::string id = "A" + std::to_string(k) + "@" + node;
        out.graph.vertex(x).w -= 1;
        out.graph.vertex(y).w -= 1;
        out.graph.remove_edge_at(x, y, consume);
        out.graph.add_vertex(id, -1, {"exceptional"});
        out.graph.add_edge(x, id, id + ".u");
        out.graph.add_edge(id, y, id + ".w");
        out.lattice = out.lattice.blowup_extend();
        std::size_t last = out.lattice.rank() - 1;
        for (auto& [vid, c] : out.classes) c = out.lattice.embed(c);
        out.classes[x].coords[last] -= 1;
        out.classes[y].coords[last] -= 1;
        DivisorClass ce(out.lattice.rank());
        ce.coords[last] = 1;
        out.classes[id] = ce;
        rec.steps.push_back({id, x, y, consume});
        rec.multiplicity[id] = {mu, mw};
        return id;
    };

    std::string left = center.u_comp;  // U-side neighbor of the current (-1)
    std::string right = center.w_comp; // W-side neighbor
    Int lu = 1, lw = 0;                // multiplicities of (left, right) in (phi*U, phi*W)
    Int ru = 0, rw = 1;
    std::string cur = blow_between(left, right, node, lu + ru, lw + rw);
    Int cu = 1, cw = 1;
    while (cu != center.u || cw != center.w) {
        if (center.u * cw > center.w * cu) {
            // target ratio larger: walk toward U
            std::string nv = blow_between(left, cur, cur + ".u", lu + cu, lw + cw);
            ru = cu;
            rw = cw;
            right = cur;
            cur = nv;
        } else {
            std::string nv = blow_between(cur, right, cur + ".w", cu + ru, cw + rw);
            lu = cu;
            lw = cw;
            left = cur;
            cur = nv;
        }
        cu = rec.multiplicity[cur].first;
        cw = rec.multiplicity[cur].second;
    }

    rec.bubble = cur;
    // chain ordered from the U side to the W side
    {
        std::vector<std::string> ordered;
        auto inserted = [&](const std::string& v) { return rec.multiplicity.count(v) > 0; };
        std::string prev = center.u_comp;
        std::string at;
        for (const auto& n : out.graph.neighbors(center.u_comp))
            if (inserted(n) && out.graph.edge_count(center.u_comp, n) > 0) {
                // the U-side tip is the unique inserted neighbor of U created
                // by this walk
                at = n;
                break;
            }
        while (!at.empty()) {
            ordered.push_back(at);
            std::string next;
            for (const auto& n : out.graph.neighbors(at))
                if (inserted(n) && n != prev) next = n;
            prev = at;
            at = next;
        }
        if (ordered.size() != rec.multiplicity.size())
            throw std::logic_error("expansion chain walk failed");
        rec.inserted_chain = ordered;
    }

    // boundary = reduced total transform minus the bubble; the bubble's class
    // stays available in `classes` for diagnostics
    out.graph.remove_vertex(rec.bubble);
    record_out = rec;
    return out;
}

ExpansionState expand_many(const ExpansionState& st, const std::vector<ExpansionCenter>& centers,
                           std::vector<ExpansionRecord>& records_out) {
    if (!st.graph.connected())
        throw std::invalid_argument("expand_many: graph not connected");
    {
        std::set<std::string> nodes;
        for (const auto& c : centers) {
            auto edges = st.graph.edges_between(c.u_comp, c.w_comp);
            if (edges.empty())
                throw std::invalid_argument("center names a consumed or missing node: " +
                                            c.u_comp + "," + c.w_comp);
            std::string node = c.node;
            if (node.empty()) {
                if (edges.size() > 1)
                    throw std::invalid_argument("ambiguous center node: " + c.u_comp + "," +
                                                c.w_comp);
                node = edges[0].node;
            }
            std::string key = node.empty() ? c.u_comp + "|" + c.w_comp : node;
            if (!nodes.insert(key).second)
                throw std::invalid_argument("two centers on one node: " + key);
        }
    }
    ExpansionState cur = st;
    records_out.clear();
    for (const auto& c : centers) {
        ExpansionRecord r;
        cur = expand(cur, c, r);
        records_out.push_back(std::move(r));
    }
    return cur;
}

bool is_expansion(const ExpansionState& before, const ExpansionState& after,
                  const std::vector<ExpansionRecord>& records) {
    // boundary equals the reduced total transform minus the bubbles
    for (const auto& v : before.graph.vertices())
        if (!after.graph.has_vertex(v.id)) return false;
    for (const auto& r : records) {
        if (after.graph.has_vertex(r.bubble)) return false;
        for (const auto& v : r.inserted_chain)
            if (v != r.bubble && !after.graph.has_vertex(v)) return false;
    }

    // each exceptional piece is a chain with a unique (-1)-curve (the bubble)
    for (const auto& r : records) {
        if (int_gcd(r.center.u, r.center.w) != 1 || r.center.u <= 0 || r.center.w <= 0)
            return false;
        int minus_ones = 0;
        for (const auto& v : r.inserted_chain) {
            long long w = v == r.bubble ? -1 : after.graph.vertex(v).w;
            if (w == -1) ++minus_ones;
            if (v != r.bubble && after.graph.degree(v) > 2) return false;
        }
        if (minus_ones != 1) return false;
        auto pos = std::find(r.inserted_chain.begin(), r.inserted_chain.end(), r.bubble);
        if (pos == r.inserted_chain.end()) return false;
        // consecutive non-bubble chain vertices are adjacent in the boundary
        for (std::size_t i = 0; i + 1 < r.inserted_chain.size(); ++i) {
            const std::string& a = r.inserted_chain[i];
            const std::string& b = r.inserted_chain[i + 1];
            if (a == r.bubble || b == r.bubble) continue;
            if (after.graph.edge_count(a, b) != 1) return false;
        }
    }

    // Def 3.1(3) from the lattice: for every boundary component C of the
    // original pair, pullback(C) = strict(C) + sum over inserted curves of
    // (multiplicity of the curve in phi*C) * (its class). The multiplicity is
    // nonzero only for chains whose center pair contains C.
    for (const auto& r : records) {
        for (int side = 0; side < 2; ++side) {
            const std::string& comp = side == 0 ? r.center.u_comp : r.center.w_comp;
            auto itb = before.classes.find(comp);
            if (itb == before.classes.end()) return false;
            DivisorClass expect = after.lattice.embed(itb->second);
            DivisorClass acc = after.classes.at(comp);
            for (const auto& r2 : records) {
                int uside = r2.center.u_comp == comp ? 1 : 0;
                int wside = r2.center.w_comp == comp ? 1 : 0;
                if (!uside && !wside) continue;
                for (const auto& v : r2.inserted_chain) {
                    const auto& m = r2.multiplicity.at(v);
                    Int mult = uside ? m.first : m.second;
                    const DivisorClass& cv = after.classes.at(v);
                    for (std::size_t i = 0; i < acc.coords.size(); ++i)
                        acc.coords[i] += mult * cv.coords[i];
                }
            }
            if (!(acc == expect)) return false;
        }
        // and the bubble's multiplicities are the recorded coprime pair
        auto itm = r.multiplicity.find(r.bubble);
        if (itm == r.multiplicity.end()) return false;
        if (itm->second.first != r.center.u || itm->second.second != r.center.w) return false;
    }
    return true;
}

ExpansionState contract_expansion(const ExpansionState& st, const ExpansionRecord& record) {
    ExpansionState out = st;
    {
        std::vector<std::string> c = record.inserted_chain;
        auto pos = std::find(c.begin(), c.end(), record.bubble);
        if (pos == c.end()) throw std::invalid_argument("record bubble missing from chain");
        std::string ln = pos == c.begin() ? record.center.u_comp : *(pos - 1);
        std::string rn = (pos + 1) == c.end() ? record.center.w_comp : *(pos + 1);
        out.graph.add_vertex(record.bubble, -1, {"exceptional"});
        out.graph.add_edge(ln, record.bubble, record.bubble + ".u");
        out.graph.add_edge(record.bubble, rn, record.bubble + ".w");
    }
    for (auto it = record.steps.rbegin(); it != record.steps.rend(); ++it) {
        if (!out.graph.has_vertex(it->created))
            throw std::invalid_argument("record does not match graph: " + it->created);
        if (out.graph.vertex(it->created).w != -1)
            throw std::invalid_argument("cannot contract non-(-1) vertex: " + it->created);
        out.graph.vertex(it->left).w += 1;
        out.graph.vertex(it->right).w += 1;
        out.graph.remove_vertex(it->created);
        out.graph.add_edge(it->left, it->right, it->node);
        out.classes.erase(it->created);
    }
    // The record's blowups occupy the trailing basis vectors; dropping those
    // coordinates undoes exactly the expansion's class changes.
    std::size_t shrink = record.steps.size();
    NSLattice lat;
    for (std::size_t i = 1; i + shrink < st.lattice.rank(); ++i)
        lat = lat.blowup_extend(st.lattice.basis_labels()[i]);
    std::map<std::string, DivisorClass> classes;
    for (const auto& [id, c] : out.classes) {
        DivisorClass nc(lat.rank());
        for (std::size_t i = 0; i < lat.rank(); ++i) nc.coords[i] = c.coords[i];
        classes[id] = nc;
    }
    out.lattice = lat;
    out.classes = std::move(classes);
    // cross-check: the contracted pair must again satisfy the class/graph
    // consistency the expansion started from
    for (const auto& v : out.graph.vertices()) {
        auto it = out.classes.find(v.id);
        if (it == out.classes.end()) continue;
        if (out.lattice.pair(it->second, it->second) != Int(v.w))
            throw std::invalid_argument("record does not match graph lineage at " + v.id);
    }
    return out;
}

std::vector<std::string> find_bubbles(const DualGraph& g, const std::set<std::string>& tracked,
                                      const std::set<std::string>& boundary) {
    std::vector<std::string> out;
    for (const auto& t : tracked) {
        if (!g.has_vertex(t) || g.vertex(t).w != -1) continue;
        std::vector<std::string> hits;
        for (const auto& e : g.edges()) {
            if (e.a == t && boundary.count(e.b)) hits.push_back(e.b);
            if (e.b == t && boundary.count(e.a)) hits.push_back(e.a);
        }
        if (hits.size() == 2 && hits[0] != hits[1]) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace qhp
