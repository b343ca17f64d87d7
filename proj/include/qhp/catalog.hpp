#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qhp/arrangement.hpp"
#include "qhp/expansion.hpp"
#include "qhp/graph.hpp"
#include "qhp/homology.hpp"
#include "qhp/resolution.hpp"
#include "qhp/weightpoly.hpp"

namespace qhp {

struct CenterSpec {
    std::string key;  // as printed, e.g. "(C1,C2)"
    std::string u, w; // component ids in D'
    std::string node; // empty when the pair meets at a unique node
};

// One admissibility constraint from the catalog tables.
struct Constraint {
    std::string kind; // "ne", "ge", "gt", "tuple_ne", "value_notin", "not_both"
    std::string lhs, rhs;              // for ne/ge/gt (polynomial expressions)
    std::vector<std::string> vars;     // for tuple_ne / value_notin / not_both
    std::vector<std::string> values;   // companions to vars

    bool eval(const std::map<std::string, Rat>& env) const;
};

struct TowerRule {
    std::vector<std::string> combo;   // one center key per slot
    std::optional<std::string> detm;  // printed det-m locus, nonvanishing required
    std::vector<Constraint> extra;
    bool z = false; // checkmark in the Z column
};

struct TowerRow {
    int index = 0;
    std::string label;
    std::string arrangement_path;
    std::vector<std::string> deleted; // point ids whose last exceptional curve goes
    int n_centers = 0;
    int n_count = 0;             // the paper's uniqueness count
    bool cstst = false;          // C**-fibration tag
    std::optional<Int> h1_fixed; // for rows without centers
    std::vector<std::string> slot_vars;
    std::vector<CenterSpec> centers;
    std::vector<TowerRule> rules;
    // alternative node assignments (center key -> node); entry 0 is the
    // default stored in `centers`
    std::vector<std::map<std::string, std::string>> xi_choices;

    const CenterSpec& center(const std::string& key) const;
    const TowerRule* rule_for(const std::vector<std::string>& combo) const;
};

struct BuiltRow {
    ExpansionState state; // D' with lattice and classes
    ResolutionResult resolution;
    Arrangement arrangement;
};

class Catalog {
public:
    // dir defaults to $QHP_CATALOG_DIR, falling back to the compiled-in path.
    explicit Catalog(std::string dir = "");

    const std::vector<TowerRow>& rows() const { return rows_; }
    const TowerRow& row(const std::string& label_or_index) const;

    // Resolve the arrangement, delete E'' over the listed points, and hand
    // back D' with its lattice. xi selects a node assignment.
    BuiltRow build_row(const TowerRow& row, std::size_t xi = 0) const;

    // Expansion center for a rule slot, with the node resolved.
    ExpansionCenter make_center(const TowerRow& row, const BuiltRow& built,
                                const std::string& key, const Int& u, const Int& w,
                                std::size_t xi = 0) const;

    int total_degree(const TowerRow& row) const;

    struct AdmissibleResult {
        bool ok = false;
        std::vector<std::string> reasons;
    };
    AdmissibleResult admissible(const TowerRow& row, const std::vector<std::string>& combo,
                                const std::vector<std::pair<Int, Int>>& weights) const;

    struct EnumerationItem {
        std::vector<std::string> combo;
        std::vector<std::pair<Int, Int>> weights;
        QhpVerdict verdict;
        DualGraph boundary;
    };
    struct EnumerationFilters {
        std::optional<Int> h1;
        bool zhp_only = false;
        bool bounds = false; // keep only boundaries passing the Cor-1.5 bounds
    };
    // Deterministic stream: combos in rule order, weight tuples by increasing
    // total height then lexicographic numerators. Callback returns false to
    // stop early.
    void enumerate(const TowerRow& row, unsigned max_height, const EnumerationFilters& filters,
                   const std::function<bool(const EnumerationItem&)>& cb) const;

    const std::string& dir() const { return dir_; }

private:
    std::string dir_;
    std::vector<TowerRow> rows_;
    mutable std::map<std::string, Arrangement> arr_cache_;
};

} // namespace qhp
