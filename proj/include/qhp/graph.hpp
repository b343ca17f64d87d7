#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qhp/numbers.hpp"

namespace qhp {

struct GraphVertex {
    std::string id;
    long long w = 0; // self-intersection
    std::set<std::string> tags;
};

struct GraphEdge {
    std::string a, b;
    std::string node; // intersection point id; may be empty
};

// Weighted dual graph of a reduced SNC divisor. Multi-edges allowed,
// no self-loops.
class DualGraph {
public:
    const std::vector<GraphVertex>& vertices() const { return vertices_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }

    bool has_vertex(const std::string& id) const;
    const GraphVertex& vertex(const std::string& id) const;
    GraphVertex& vertex(const std::string& id);

    void add_vertex(const std::string& id, long long w,
                    std::set<std::string> tags = {});
    void add_edge(const std::string& a, const std::string& b,
                  const std::string& node = "");
    void remove_vertex(const std::string& id); // drops incident edges
    void remove_edge_at(const std::string& a, const std::string& b,
                        const std::string& node);

    std::vector<std::string> neighbors(const std::string& id) const; // with multiplicity
    std::size_t degree(const std::string& id) const;
    std::size_t edge_count(const std::string& a, const std::string& b) const;
    // All edges between a and b.
    std::vector<GraphEdge> edges_between(const std::string& a, const std::string& b) const;

    bool connected() const;
    bool is_rational_tree() const; // connected and #edges == #vertices - 1

    std::string to_json() const;
    static DualGraph from_json(const std::string& text);
    std::string to_dot() const;

private:
    std::vector<GraphVertex> vertices_;
    std::vector<GraphEdge> edges_;
    std::map<std::string, std::size_t> index_;
};

// beta_D(S) = number of edges with exactly one endpoint in S.
std::size_t branching_number(const DualGraph& g, const std::set<std::string>& s);

struct Twig {
    std::vector<std::string> vertices; // first entry is a tip of D
    bool admissible = false;           // all self-intersections <= -2
    bool minus_two = false;            // all equal to -2
};

// Maximal twigs, each ordered tip-first. In a branch-free connected graph
// (a pure chain) the whole chain is one twig anchored at the
// lexicographically-least tip.
std::vector<Twig> maximal_twigs(const DualGraph& g);

// Vertices in no maximal twig.
std::set<std::string> core(const DualGraph& g);

struct ENDiagram {
    std::vector<std::string> vertices; // branching components & complement pieces
    std::vector<std::pair<std::string, std::string>> edges;
};

ENDiagram en_diagram(const DualGraph& g);

// d(S) = det of the negated intersection matrix of S; d(empty) = 1.
Int discriminant(const DualGraph& g, const std::set<std::string>& s);
Int discriminant(const DualGraph& g); // of the whole graph

// Bark of an admissible twig: exact rational coefficients, per twig vertex,
// solving T' . Bk = 2 - beta_D(T').
std::vector<Rat> bark(const DualGraph& g, const Twig& t);

// Superfluous (-1)-curves: beta = 1, or beta = 2 meeting two distinct
// components.
std::vector<std::string> superfluous_curves(const DualGraph& g);

// Contract superfluous (-1)-vertices (lowest id first) until none remain.
DualGraph snc_minimalize(const DualGraph& g);

struct AutomorphismGroup {
    std::vector<std::map<std::string, std::string>> generators;
    unsigned long long order = 1;
};

// Automorphisms of the weighted graph (preserving self-intersections and
// edge multiplicities).
AutomorphismGroup graph_automorphisms(const DualGraph& g);

bool graphs_isomorphic(const DualGraph& a, const DualGraph& b);

struct BoundsReport {
    bool twigs_ok = true, core_ok = true, branching_ok = true, en_ok = true;
    std::size_t twig_count = 0, core_size = 0, en_vertices = 0;
    std::size_t max_branching = 0;
    std::string branching_witness;
    bool all_ok() const { return twigs_ok && core_ok && branching_ok && en_ok; }
};

// Evaluates: #twigs <= 10, #core <= 7, per-component C.(D-C) <= 5,
// EN diagram <= 16 vertices.
BoundsReport bounds_report(const DualGraph& g);

} // namespace qhp
