#pragma once

#include <map>
#include <string>
#include <vector>

namespace qhp {

struct Component {
    std::string id;
    int degree = 1; // 1 = line, 2 = conic
};

struct SingularPoint {
    std::string id;
    std::vector<std::string> branches; // component ids, one smooth branch each
    // contact orders per unordered branch pair, keyed "min|max"; missing key
    // defaults to 1 (transverse)
    std::map<std::string, int> contact;

    int contact_of(const std::string& a, const std::string& b) const;
};

// Abstract configuration of lines and smooth conics in the plane.
struct Arrangement {
    std::vector<Component> components;
    std::vector<SingularPoint> points;

    const Component& component(const std::string& id) const;
    bool has_component(const std::string& id) const;

    static Arrangement from_json(const std::string& text);
    static Arrangement load(const std::string& path);
    std::string to_json() const;
};

struct ValidationIssue {
    std::string kind; // "bezout", "ultrametric", "contact-bound", "unknown-component", ...
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

// Checks Bezout exactness per component pair, the ultrametric property at
// every point, contact bounds (line-conic <= 2, conic-conic <= 4), and id
// hygiene.
ValidationReport validate(const Arrangement& arr);

// Sum of pairwise contact orders at the point; equals the classical
// delta-invariant for a multiplicity-2 point (contact c, two branches).
long long delta_invariant(const SingularPoint& p);

// For a degree-d rational curve presented branch-by-branch (all points of
// multiplicity 2): sum of deltas == (d-1)(d-2)/2. Throws when some point has
// more than two branches.
bool delta_check_rational_curve(const Arrangement& arr, int degree);

std::string contact_key(const std::string& a, const std::string& b);

} // namespace qhp
