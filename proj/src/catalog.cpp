#include "qhp/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qhp {

using nlohmann::json;

bool Constraint::eval(const std::map<std::string, Rat>& env) const {
    auto val = [&](const std::string& e) { return VarPolynomial::parse(e).evaluate(env); };
    if (kind == "ne") return val(lhs) != val(rhs);
    if (kind == "ge") return val(lhs) >= val(rhs);
    if (kind == "gt") return val(lhs) > val(rhs);
    if (kind == "tuple_ne") {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (env.at(vars[i]) != val(values[i])) return true;
        return false;
    }
    if (kind == "value_notin") {
        // values[0] must not occur among the listed variables
        Rat v = val(values[0]);
        for (const auto& var : vars)
            if (env.at(var) == v) return false;
        return true;
    }
    if (kind == "not_both") {
        // the two listed values must not both occur among the variables
        Rat v0 = val(values[0]), v1 = val(values[1]);
        bool h0 = false, h1 = false;
        for (const auto& var : vars) {
            if (env.at(var) == v0) h0 = true;
            if (env.at(var) == v1) h1 = true;
        }
        return !(h0 && h1);
    }
    throw std::invalid_argument("unknown constraint kind: " + kind);
}

const CenterSpec& TowerRow::center(const std::string& key) const {
    for (const auto& c : centers)
        if (c.key == key) return c;
    throw std::invalid_argument("row " + label + ": unknown center " + key);
}

const TowerRule* TowerRow::rule_for(const std::vector<std::string>& combo) const {
    for (const auto& r : rules)
        if (r.combo == combo) return &r;
    return nullptr;
}

namespace {

Constraint parse_constraint(const json& j) {
    Constraint c;
    c.kind = j.at("kind").get<std::string>();
    if (j.contains("lhs")) c.lhs = j["lhs"].get<std::string>();
    if (j.contains("rhs")) c.rhs = j["rhs"].get<std::string>();
    if (j.contains("vars"))
        for (const auto& v : j["vars"]) c.vars.push_back(v.get<std::string>());
    if (j.contains("values"))
        for (const auto& v : j["values"]) c.values.push_back(v.get<std::string>());
    return c;
}

} // namespace

Catalog::Catalog(std::string dir) : dir_(std::move(dir)) {
    if (dir_.empty()) {
        const char* env = std::getenv("QHP_CATALOG_DIR");
        dir_ = env && *env ? env : QHP_DEFAULT_CATALOG_DIR;
    }
    std::ifstream f(dir_ + "/rows.json");
    if (!f) throw std::runtime_error("cannot open catalog manifest: " + dir_ + "/rows.json");
    std::stringstream ss;
    ss << f.rdbuf();
    json j = json::parse(ss.str());
    for (const auto& jr : j.at("rows")) {
        TowerRow r;
        r.index = jr.at("index").get<int>();
        r.label = jr.at("label").get<std::string>();
        r.arrangement_path = jr.at("arrangement").get<std::string>();
        for (const auto& d : jr.at("deleted")) r.deleted.push_back(d.get<std::string>());
        r.n_centers = jr.at("n_centers").get<int>();
        r.n_count = jr.value("n_count", 0);
        r.cstst = jr.value("cstst", false);
        if (jr.contains("h1") && !jr["h1"].is_null()) r.h1_fixed = Int(jr["h1"].get<long long>());
        if (jr.contains("slot_vars"))
            for (const auto& v : jr["slot_vars"]) r.slot_vars.push_back(v.get<std::string>());
        if (jr.contains("centers"))
            for (const auto& jc : jr["centers"]) {
                CenterSpec c;
                c.key = jc.at("key").get<std::string>();
                c.u = jc.at("u").get<std::string>();
                c.w = jc.at("w").get<std::string>();
                c.node = jc.value("node", "");
                r.centers.push_back(c);
            }
        if (jr.contains("rules"))
            for (const auto& jrule : jr["rules"]) {
                TowerRule rule;
                for (const auto& c : jrule.at("combo")) rule.combo.push_back(c.get<std::string>());
                if (jrule.contains("detm") && !jrule["detm"].is_null())
                    rule.detm = jrule["detm"].get<std::string>();
                if (jrule.contains("extra"))
                    for (const auto& je : jrule["extra"]) rule.extra.push_back(parse_constraint(je));
                rule.z = jrule.value("z", false);
                r.rules.push_back(rule);
            }
        r.xi_choices.push_back({});
        if (jr.contains("xi_choices"))
            for (const auto& jx : jr["xi_choices"]) {
                std::map<std::string, std::string> m;
                for (auto it = jx.begin(); it != jx.end(); ++it)
                    m[it.key()] = it.value().get<std::string>();
                r.xi_choices.push_back(std::move(m));
            }
        rows_.push_back(std::move(r));
    }
    std::sort(rows_.begin(), rows_.end(),
              [](const TowerRow& a, const TowerRow& b) { return a.index < b.index; });
}

const TowerRow& Catalog::row(const std::string& label_or_index) const {
    for (const auto& r : rows_)
        if (r.label == label_or_index) return r;
    try {
        int idx = std::stoi(label_or_index);
        for (const auto& r : rows_)
            if (r.index == idx) return r;
    } catch (...) {
    }
    throw std::invalid_argument("unknown row: " + label_or_index);
}

BuiltRow Catalog::build_row(const TowerRow& row, std::size_t xi) const {
    if (xi >= row.xi_choices.size())
        throw std::invalid_argument("row " + row.label + ": invalid xi choice " +
                                    std::to_string(xi));
    auto it = arr_cache_.find(row.arrangement_path);
    if (it == arr_cache_.end()) {
        Arrangement a = Arrangement::load(dir_ + "/" + row.arrangement_path);
        it = arr_cache_.emplace(row.arrangement_path, std::move(a)).first;
    }
    BuiltRow b;
    b.arrangement = it->second;
    b.resolution = minimal_log_resolution(b.arrangement);
    b.state.graph = b.resolution.graph;
    b.state.lattice = b.resolution.lattice;
    b.state.classes = b.resolution.classes;
    for (const auto& pt : row.deleted) {
        std::string eid = "E_" + pt;
        if (!b.state.graph.has_vertex(eid))
            throw std::runtime_error("row " + row.label + ": no exceptional curve over " + pt);
        b.state.graph.remove_vertex(eid);
    }
    if (!b.state.graph.connected())
        throw std::runtime_error("row " + row.label + ": D' disconnected after deletion");
    return b;
}

ExpansionCenter Catalog::make_center(const TowerRow& row, const BuiltRow& built,
                                     const std::string& key, const Int& u, const Int& w,
                                     std::size_t xi) const {
    const CenterSpec& spec = row.center(key);
    ExpansionCenter c;
    c.u_comp = spec.u;
    c.w_comp = spec.w;
    c.node = spec.node;
    if (xi < row.xi_choices.size()) {
        auto it = row.xi_choices[xi].find(key);
        if (it != row.xi_choices[xi].end()) c.node = it->second;
    }
    if (c.node.empty()) {
        auto edges = built.state.graph.edges_between(c.u_comp, c.w_comp);
        if (edges.size() != 1)
            throw std::runtime_error("row " + row.label + ": center " + key +
                                     " does not name a unique node");
        c.node = edges[0].node;
    }
    c.u = u;
    c.w = w;
    return c;
}

int Catalog::total_degree(const TowerRow& row) const {
    Arrangement a = Arrangement::load(dir_ + "/" + row.arrangement_path);
    int d = 0;
    for (const auto& c : a.components) d += c.degree;
    return d;
}

Catalog::AdmissibleResult Catalog::admissible(const TowerRow& row,
                                              const std::vector<std::string>& combo,
                                              const std::vector<std::pair<Int, Int>>& weights) const {
    AdmissibleResult res;
    const TowerRule* rule = row.rule_for(combo);
    if (!rule) {
        res.reasons.push_back("center combination not permitted");
        return res;
    }
    if (weights.size() != combo.size()) {
        res.reasons.push_back("weight count mismatch");
        return res;
    }
    std::map<std::string, Rat> env;
    for (std::size_t i = 0; i < combo.size(); ++i) {
        if (weights[i].first <= 0 || weights[i].second <= 0) {
            res.reasons.push_back("weights must be positive");
            return res;
        }
        env[row.slot_vars[i]] = Rat(weights[i].first, weights[i].second);
    }
    res.ok = true;
    if (rule->detm) {
        Rat v = VarPolynomial::parse(*rule->detm).evaluate(env);
        if (v == 0) {
            res.ok = false;
            res.reasons.push_back("excluded: " + *rule->detm + " = 0");
        }
    }
    for (const auto& c : rule->extra)
        if (!c.eval(env)) {
            res.ok = false;
            std::string msg = "constraint failed: " + c.kind;
            if (!c.lhs.empty()) msg += " " + c.lhs + (c.kind == "ne" ? " != " : " vs ") + c.rhs;
            res.reasons.push_back(msg);
        }
    return res;
}

namespace {

// Coprime pairs (u, w) with u + w == h, ordered by numerator.
std::vector<std::pair<Int, Int>> coprime_pairs_of_height(unsigned h) {
    std::vector<std::pair<Int, Int>> out;
    for (unsigned u = 1; u < h; ++u) {
        unsigned w = h - u;
        if (int_gcd(Int(u), Int(w)) == 1) out.push_back({Int(u), Int(w)});
    }
    return out;
}

} // namespace

void Catalog::enumerate(const TowerRow& row, unsigned max_height,
                        const EnumerationFilters& filters,
                        const std::function<bool(const EnumerationItem&)>& cb) const {
    BuiltRow built = build_row(row);
    // weight tuples by total height then numerators, shared across combos;
    // the height cap applies per weight: u + w <= max_height
    std::vector<std::vector<std::pair<Int, Int>>> tuples;
    std::size_t n = static_cast<std::size_t>(row.n_centers);
    std::vector<std::pair<Int, Int>> all;
    for (unsigned h = 2; h <= max_height; ++h) {
        auto ph = coprime_pairs_of_height(h);
        all.insert(all.end(), ph.begin(), ph.end());
    }
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        Int ha = a.first + a.second, hb = b.first + b.second;
        if (ha != hb) return ha < hb;
        return a.first < b.first;
    });

    std::function<bool(std::size_t, std::vector<std::pair<Int, Int>>&)> rec =
        [&](std::size_t slot, std::vector<std::pair<Int, Int>>& acc) -> bool {
        if (slot == n) {
            tuples.push_back(acc);
            return true;
        }
        for (const auto& wt : all) {
            acc.push_back(wt);
            bool go = rec(slot + 1, acc);
            acc.pop_back();
            if (!go) return false;
        }
        return true;
    };
    {
        std::vector<std::pair<Int, Int>> acc;
        rec(0, acc);
    }
    // order tuples by total height, then lexicographic numerators
    std::stable_sort(tuples.begin(), tuples.end(), [](const auto& a, const auto& b) {
        Int ha = 0, hb = 0;
        for (const auto& p : a) ha += p.first + p.second;
        for (const auto& p : b) hb += p.first + p.second;
        if (ha != hb) return ha < hb;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].first != b[i].first) return a[i].first < b[i].first;
            if (a[i].second != b[i].second) return a[i].second < b[i].second;
        }
        return false;
    });

    // the restriction kernel and cokernel depend only on D'; hoist them out
    // of the weight loop
    std::vector<std::string> order;
    IntMatrix rmat = restriction_matrix(built.state.graph, built.state.lattice,
                                        built.state.classes, order);
    std::size_t rrank = rmat.rank();
    auto kernel = kernel_basis(rmat);
    auto coker = cokernel_order(rmat);

    for (const auto& rule : row.rules) {
        for (const auto& wt : tuples) {
            auto adm = admissible(row, rule.combo, wt);
            if (!adm.ok) continue;
            std::vector<ExpansionCenter> centers;
            for (std::size_t i = 0; i < rule.combo.size(); ++i)
                centers.push_back(
                    make_center(row, built, rule.combo[i], wt[i].first, wt[i].second));
            std::vector<ExpansionRecord> records;
            ExpansionState after = expand_many(built.state, centers, records);
            QhpVerdict v;
            v.d_of_d = int_abs(discriminant(after.graph));
            if (rrank != built.state.lattice.rank())
                v.reasons.push_back("components of D' do not generate NS_Q(X')");
            if (!after.graph.is_rational_tree()) v.reasons.push_back("D is not a rational tree");
            if (kernel.size() != records.size())
                v.reasons.push_back("n != #D' - rho(X')");
            if (v.reasons.empty()) {
                IntMatrix m = m_matrix(kernel, order, records);
                v.detm = m.det();
                v.coker = coker;
                if (v.detm == 0) {
                    v.reasons.push_back("det m = 0");
                } else if (!v.coker) {
                    v.reasons.push_back("coker r_D' infinite");
                } else {
                    v.is_qhp = true;
                    v.h1_order = int_abs(v.detm) * *v.coker;
                    if (v.d_of_d != v.h1_order * v.h1_order)
                        throw std::logic_error("square identity violated in enumerate");
                }
            }
            if (filters.h1 && (!v.is_qhp || v.h1_order != *filters.h1)) continue;
            if (filters.zhp_only && (!v.is_qhp || v.h1_order != 1)) continue;
            if (filters.bounds && v.is_qhp && !bounds_report(after.graph).all_ok()) continue;
            EnumerationItem item{rule.combo, wt, v, after.graph};
            if (!cb(item)) return;
        }
    }
}

} // namespace qhp
