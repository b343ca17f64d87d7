#include "qhp/resolution.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace qhp {

namespace {

// A not-yet-snc point of the partially resolved surface: smooth branches
// with pairwise contact orders (ultrametric).
struct ActivePoint {
    std::string id;
    std::string origin; // original singular point it lies over
    std::vector<std::string> branches;
    std::map<std::string, int> contact; // key "min|max", default 1

    int contact_of(const std::string& a, const std::string& b) const {
        auto it = contact.find(contact_key(a, b));
        return it == contact.end() ? 1 : it->second;
    }
};

bool is_snc(const ActivePoint& p) {
    return p.branches.size() == 2 && p.contact_of(p.branches[0], p.branches[1]) == 1;
}

// Tangent-direction groups: equivalence classes of contact >= 2.
std::vector<std::vector<std::string>> tangent_groups(const ActivePoint& p) {
    std::vector<std::vector<std::string>> groups;
    std::vector<std::string> order = p.branches;
    std::sort(order.begin(), order.end());
    std::set<std::string> done;
    for (const auto& b : order) {
        if (done.count(b)) continue;
        std::vector<std::string> g{b};
        done.insert(b);
        // contact >= 2 is transitive here by the ultrametric inequality
        for (const auto& c : order) {
            if (done.count(c)) continue;
            if (p.contact_of(b, c) >= 2) {
                g.push_back(c);
                done.insert(c);
            }
        }
        groups.push_back(std::move(g));
    }
    return groups;
}

} // namespace

std::size_t ResolutionResult::blowup_count(const std::string& point_id) const {
    auto it = exceptional_order.find(point_id);
    if (it == exceptional_order.end())
        throw std::invalid_argument("unknown point: " + point_id);
    return it->second.size();
}

void ResolutionResult::check_consistency() const {
    for (const auto& v : graph.vertices()) {
        const DivisorClass& cv = classes.at(v.id);
        if (lattice.pair(cv, cv) != Int(v.w))
            throw std::logic_error("self-pairing mismatch at " + v.id);
        for (const auto& u : graph.vertices()) {
            if (u.id >= v.id) continue;
            Int expect(static_cast<long long>(graph.edge_count(u.id, v.id)));
            if (lattice.pair(classes.at(u.id), cv) != expect)
                throw std::logic_error("pairing/adjacency mismatch: " + u.id + "," + v.id);
        }
        // adjunction for rational components: K.C = -2 - C^2
        Int kc = lattice.pair(lattice.canonical_class(), cv);
        if (kc != Int(-2 - v.w)) throw std::logic_error("adjunction fails at " + v.id);
    }
}

ResolutionResult minimal_log_resolution(const Arrangement& arr) {
    ValidationReport rep = validate(arr);
    if (!rep.ok())
        throw std::invalid_argument("invalid arrangement:\n" + rep.str());

    ResolutionResult res;
    // proper transforms of the arrangement components
    for (const auto& c : arr.components)
        res.graph.add_vertex(c.id, c.degree * c.degree, {"boundary"});

    // class bookkeeping: degree in H plus the list of centers each component
    // passes through (smooth branches always have multiplicity one there)
    std::map<std::string, int> hdeg;
    std::map<std::string, std::vector<std::size_t>> centers_of; // component -> blowup indices
    for (const auto& c : arr.components) hdeg[c.id] = c.degree;

    // Deterministic worklist: original points in lexicographic id order; the
    // infinitely-near points over each are processed depth-first in creation
    // order.
    std::vector<SingularPoint> pts = arr.points;
    std::sort(pts.begin(), pts.end(),
              [](const SingularPoint& a, const SingularPoint& b) { return a.id < b.id; });

    std::size_t blowups = 0;
    for (const auto& p0 : pts) res.exceptional_order[p0.id] = {};

    for (const auto& p0 : pts) {
        std::deque<ActivePoint> work;
        ActivePoint start;
        start.id = p0.id;
        start.origin = p0.id;
        start.branches = p0.branches;
        start.contact = p0.contact;
        work.push_back(start);
        int derived = 0;

        while (!work.empty()) {
            ActivePoint p = work.front();
            work.pop_front();
            if (is_snc(p)) {
                res.graph.add_edge(p.branches[0], p.branches[1], p.id);
                continue;
            }
            // blow up at p
            ++blowups;
            std::string eid; // named once all blowups over p0 are known
            eid = "@" + p0.id + "#" + std::to_string(res.exceptional_order[p0.id].size());
            res.exceptional_order[p0.id].push_back(eid);
            res.graph.add_vertex(eid, -1, {"exceptional", "boundary"});
            hdeg[eid] = 0;
            for (const auto& b : p.branches) {
                res.graph.vertex(b).w -= 1;
                centers_of[b].push_back(blowups);
            }
            centers_of[eid] = {}; // its own basis vector handled separately
            // record which basis index this exceptional curve owns
            // (E_k for the k-th blowup overall)
            // store in a side map keyed by eid via centers_of convention below
            res.classes[eid] = DivisorClass(); // placeholder, filled later
            // group branches by tangent direction
            for (const auto& grp : tangent_groups(p)) {
                ActivePoint np;
                np.id = p.id + "." + std::to_string(derived++);
                np.origin = p0.id;
                np.branches = grp;
                np.branches.push_back(eid);
                for (std::size_t i = 0; i < grp.size(); ++i)
                    for (std::size_t j = i + 1; j < grp.size(); ++j) {
                        int c = p.contact_of(grp[i], grp[j]) - 1;
                        if (c > 1) np.contact[contact_key(grp[i], grp[j])] = c;
                    }
                if (np.branches.size() == 2 && grp.size() == 1) {
                    // single transverse branch meets the exceptional curve in
                    // an snc node right away
                    res.graph.add_edge(grp[0], eid, np.id);
                } else {
                    work.push_front(np); // depth-first keeps E-numbering local
                }
            }
        }
    }

    // Name exceptional vertices per Notation: over a point x blown up k
    // times, the curves are U_x, U_x', ..., and the last one is E_x.
    std::map<std::string, std::string> rename;
    for (auto& [pt, order] : res.exceptional_order) {
        std::size_t k = order.size();
        for (std::size_t i = 0; i < k; ++i) {
            std::string name;
            if (i + 1 == k)
                name = "E_" + pt;
            else {
                name = "U" + std::to_string(i + 1) + "_" + pt;
            }
            rename[order[i]] = name;
        }
    }
    // rebuild graph with final names
    DualGraph named;
    for (const auto& v : res.graph.vertices()) {
        auto it = rename.find(v.id);
        named.add_vertex(it == rename.end() ? v.id : it->second, v.w, v.tags);
    }
    for (const auto& e : res.graph.edges()) {
        auto ra = rename.find(e.a);
        auto rb = rename.find(e.b);
        named.add_edge(ra == rename.end() ? e.a : ra->second,
                       rb == rename.end() ? e.b : rb->second, e.node);
    }
    res.graph = named;
    for (auto& [pt, order] : res.exceptional_order)
        for (auto& id : order) id = rename.at(id);

    // lattice and classes
    NSLattice lat;
    // basis labels follow blowup order; recover that order from centers_of
    // bookkeeping: blowup index k created the exceptional with basis vector k
    std::vector<std::string> by_index(blowups + 1);
    {
        // reconstruct: exceptional_order lists blowups grouped per point in
        // processing order; blowup indices were assigned globally in that
        // same order
        std::size_t k = 1;
        for (const auto& p0 : pts)
            for (const auto& e : res.exceptional_order[p0.id]) by_index[k++] = e;
    }
    for (std::size_t k = 1; k <= blowups; ++k) lat = lat.blowup_extend("E" + std::to_string(k));
    res.lattice = lat;

    std::map<std::string, std::size_t> basis_of; // exceptional vertex -> basis index
    for (std::size_t k = 1; k <= blowups; ++k) basis_of[by_index[k]] = k;

    res.classes.clear();
    for (const auto& v : res.graph.vertices()) {
        DivisorClass c(lat.rank());
        auto bit = basis_of.find(v.id);
        std::string key = v.id;
        if (bit != basis_of.end()) c.coords[bit->second] = 1;
        else c.coords[0] = hdeg.at(v.id);
        // subtract one E per center the component passes through
        auto cit = centers_of.find(v.id);
        if (cit == centers_of.end()) {
            // renamed: centers_of is keyed by provisional ids for exceptionals
            // and final ids for components; translate
            for (const auto& [prov, fin] : rename)
                if (fin == v.id) {
                    cit = centers_of.find(prov);
                    break;
                }
        }
        if (cit != centers_of.end())
            for (std::size_t k : cit->second) c.coords[k] -= 1;
        res.classes[v.id] = c;
    }

    res.check_consistency();
    return res;
}

} // namespace qhp
