#include "qhp/arrangement.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qhp {

using nlohmann::json;

std::string contact_key(const std::string& a, const std::string& b) {
    return a < b ? a + "|" + b : b + "|" + a;
}

int SingularPoint::contact_of(const std::string& a, const std::string& b) const {
    auto it = contact.find(contact_key(a, b));
    return it == contact.end() ? 1 : it->second;
}

const Component& Arrangement::component(const std::string& id) const {
    for (const auto& c : components)
        if (c.id == id) return c;
    throw std::invalid_argument("unknown component: " + id);
}

bool Arrangement::has_component(const std::string& id) const {
    for (const auto& c : components)
        if (c.id == id) return true;
    return false;
}

Arrangement Arrangement::from_json(const std::string& text) {
    json j = json::parse(text);
    Arrangement a;
    for (const auto& jc : j.at("components"))
        a.components.push_back({jc.at("id").get<std::string>(), jc.at("degree").get<int>()});
    for (const auto& jp : j.at("points")) {
        SingularPoint p;
        p.id = jp.at("id").get<std::string>();
        for (const auto& b : jp.at("branches")) p.branches.push_back(b.get<std::string>());
        if (jp.contains("contact"))
            for (auto it = jp["contact"].begin(); it != jp["contact"].end(); ++it)
                p.contact[it.key()] = it.value().get<int>();
        a.points.push_back(std::move(p));
    }
    return a;
}

Arrangement Arrangement::load(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open arrangement file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return from_json(ss.str());
}

std::string Arrangement::to_json() const {
    json j;
    j["components"] = json::array();
    for (const auto& c : components) j["components"].push_back({{"id", c.id}, {"degree", c.degree}});
    j["points"] = json::array();
    for (const auto& p : points) {
        json jp;
        jp["id"] = p.id;
        jp["branches"] = p.branches;
        if (!p.contact.empty()) jp["contact"] = p.contact;
        j["points"].push_back(jp);
    }
    return j.dump(2);
}

std::string ValidationReport::str() const {
    std::ostringstream os;
    for (const auto& i : issues) os << i.kind << ": " << i.detail << "\n";
    return os.str();
}

ValidationReport validate(const Arrangement& arr) {
    ValidationReport rep;
    auto add = [&](const std::string& kind, const std::string& detail) {
        rep.issues.push_back({kind, detail});
    };

    for (const auto& c : arr.components)
        if (c.degree != 1 && c.degree != 2)
            add("degree", c.id + " has degree " + std::to_string(c.degree));

    for (const auto& p : arr.points) {
        if (p.branches.size() < 2)
            add("point", p.id + " has fewer than 2 branches");
        for (const auto& b : p.branches)
            if (!arr.has_component(b)) add("unknown-component", p.id + " references " + b);
        std::set<std::string> uniq(p.branches.begin(), p.branches.end());
        if (uniq.size() != p.branches.size())
            add("point", p.id + " lists a component twice");
        // ultrametric: contact(a,c) >= min(contact(a,b), contact(b,c))
        for (const auto& a : p.branches)
            for (const auto& b : p.branches)
                for (const auto& c : p.branches) {
                    if (a == b || b == c || a == c) continue;
                    int ab = p.contact_of(a, b), bc = p.contact_of(b, c), ac = p.contact_of(a, c);
                    if (ac < std::min(ab, bc))
                        add("ultrametric", p.id + ": contact(" + a + "," + c + ")=" +
                                               std::to_string(ac) + " < min(" + std::to_string(ab) +
                                               "," + std::to_string(bc) + ")");
                }
    }

    // Bezout exactness and contact bounds per pair.
    for (std::size_t i = 0; i < arr.components.size(); ++i)
        for (std::size_t j = i + 1; j < arr.components.size(); ++j) {
            const auto& a = arr.components[i];
            const auto& b = arr.components[j];
            long long need = static_cast<long long>(a.degree) * b.degree;
            long long got = 0;
            for (const auto& p : arr.points) {
                bool ha = std::count(p.branches.begin(), p.branches.end(), a.id);
                bool hb = std::count(p.branches.begin(), p.branches.end(), b.id);
                if (!ha || !hb) continue;
                int c = p.contact_of(a.id, b.id);
                if (c < 1) add("contact-bound", p.id + ": nonpositive contact");
                int bound = a.degree * b.degree;
                if (a.degree == 1 && b.degree == 1) bound = 1;
                if (c > bound)
                    add("contact-bound", p.id + ": contact(" + a.id + "," + b.id + ")=" +
                                             std::to_string(c) + " exceeds " +
                                             std::to_string(bound));
                got += c;
            }
            if (got != need)
                add("bezout", a.id + "." + b.id + " = " + std::to_string(got) + ", expected " +
                                  std::to_string(need));
        }
    return rep;
}

long long delta_invariant(const SingularPoint& p) {
    long long s = 0;
    for (std::size_t i = 0; i < p.branches.size(); ++i)
        for (std::size_t j = i + 1; j < p.branches.size(); ++j)
            s += p.contact_of(p.branches[i], p.branches[j]);
    return s;
}

bool delta_check_rational_curve(const Arrangement& arr, int degree) {
    long long sum = 0;
    for (const auto& p : arr.points) {
        if (p.branches.size() > 2)
            throw std::invalid_argument("delta_check_rational_curve: point " + p.id +
                                        " has multiplicity > 2");
        sum += delta_invariant(p);
    }
    long long d = degree;
    return 2 * sum == (d - 1) * (d - 2);
}

} // namespace qhp
