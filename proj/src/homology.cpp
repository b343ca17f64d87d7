#include "qhp/homology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace qhp {

using nlohmann::json;

std::string QhpVerdict::to_json() const {
    json j;
    j["is_qhp"] = is_qhp;
    j["reasons"] = reasons;
    j["detm"] = detm.str();
    j["coker"] = coker ? coker->str() : "INFINITE";
    j["h1"] = h1_order.str();
    j["d_of_D"] = d_of_d.str();
    return j.dump(2);
}

IntMatrix restriction_matrix(const DualGraph& g, const NSLattice& lat,
                             const std::map<std::string, DivisorClass>& classes,
                             std::vector<std::string>& order_out) {
    order_out.clear();
    for (const auto& v : g.vertices()) order_out.push_back(v.id);
    std::sort(order_out.begin(), order_out.end());
    IntMatrix m(lat.rank(), order_out.size());
    for (std::size_t j = 0; j < order_out.size(); ++j) {
        auto it = classes.find(order_out[j]);
        if (it == classes.end())
            throw std::invalid_argument("missing class for component: " + order_out[j]);
        for (std::size_t i = 0; i < lat.rank(); ++i) m.at(i, j) = it->second.coords[i];
    }
    return m;
}

namespace {

// |d| must be a perfect square by Lemma-type arguments; take the exact root.
std::optional<Int> exact_sqrt(const Int& v) {
    if (v < 0) return std::nullopt;
    Int r = boost::multiprecision::sqrt(v);
    if (r * r == v) return r;
    return std::nullopt;
}

} // namespace

QhpVerdict qhp_check_direct(const DualGraph& g, const NSLattice& lat,
                            const std::map<std::string, DivisorClass>& classes) {
    QhpVerdict v;
    v.d_of_d = int_abs(discriminant(g));
    if (!g.is_rational_tree()) v.reasons.push_back("D is not a rational tree");
    if (g.vertices().size() != lat.rank())
        v.reasons.push_back("#D != rho(X): " + std::to_string(g.vertices().size()) + " vs " +
                            std::to_string(lat.rank()));
    std::vector<std::string> order;
    IntMatrix r = restriction_matrix(g, lat, classes, order);
    if (r.rank() != lat.rank()) v.reasons.push_back("r_D is not surjective over Q");
    v.coker = cokernel_order(r);
    v.detm = 1; // no centers: empty determinant
    if (!v.reasons.empty()) return v;
    v.is_qhp = true;
    auto root = exact_sqrt(v.d_of_d);
    if (!root) throw std::logic_error("|d(D)| not a perfect square on a QHP");
    v.h1_order = *root;
    return v;
}

IntMatrix m_matrix(const std::vector<std::vector<Int>>& kernel,
                   const std::vector<std::string>& comp_order,
                   const std::vector<ExpansionRecord>& records) {
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < comp_order.size(); ++i) idx[comp_order[i]] = i;
    IntMatrix m(records.size(), kernel.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& rec = records[i];
        auto iu = idx.find(rec.center.u_comp);
        auto iw = idx.find(rec.center.w_comp);
        if (iu == idx.end() || iw == idx.end())
            throw std::invalid_argument("m_matrix: center component not in D'");
        for (std::size_t j = 0; j < kernel.size(); ++j)
            m.at(i, j) = rec.center.u * kernel[j][iu->second] +
                         rec.center.w * kernel[j][iw->second];
    }
    return m;
}

QhpVerdict qhp_check_expansion(const DualGraph& d_prime, const NSLattice& lat,
                               const std::map<std::string, DivisorClass>& classes,
                               const DualGraph& d_final,
                               const std::vector<ExpansionRecord>& records) {
    QhpVerdict v;
    v.d_of_d = int_abs(discriminant(d_final));

    std::vector<std::string> order;
    IntMatrix r = restriction_matrix(d_prime, lat, classes, order);
    std::size_t rk = r.rank();
    if (rk != lat.rank()) v.reasons.push_back("components of D' do not generate NS_Q(X')");
    if (!d_final.is_rational_tree()) v.reasons.push_back("D is not a rational tree");
    auto kernel = kernel_basis(r);
    if (kernel.size() != records.size())
        v.reasons.push_back("n != #D' - rho(X'): kernel rank " +
                            std::to_string(kernel.size()) + ", centers " +
                            std::to_string(records.size()));
    if (!v.reasons.empty()) return v;

    IntMatrix m = m_matrix(kernel, order, records);
    v.detm = m.det();
    v.coker = cokernel_order(r);
    if (v.detm == 0) {
        v.reasons.push_back("det m = 0");
        return v;
    }
    if (!v.coker) {
        v.reasons.push_back("coker r_D' infinite");
        return v;
    }
    v.is_qhp = true;
    v.h1_order = int_abs(v.detm) * *v.coker;
    // eq. (5.2): |d(D)| = (|det m| * #coker)^2, asserted on every run
    if (v.d_of_d != v.h1_order * v.h1_order)
        throw std::logic_error("square identity violated: |d(D)| != (|det m| * #coker)^2");
    return v;
}

WeightPolynomial detm_symbolic(const std::vector<std::vector<Int>>& kernel,
                               const std::vector<std::string>& comp_order,
                               const std::vector<ExpansionCenter>& centers) {
    return detm_symbolic_raw(kernel, comp_order, centers).normalized();
}

WeightPolynomial detm_symbolic_raw(const std::vector<std::vector<Int>>& kernel,
                                   const std::vector<std::string>& comp_order,
                                   const std::vector<ExpansionCenter>& centers) {
    std::size_t n = centers.size();
    if (kernel.size() != n)
        throw std::invalid_argument("detm_symbolic: kernel size " +
                                    std::to_string(kernel.size()) + " != centers " +
                                    std::to_string(n));
    std::map<std::string, std::size_t> idx;
    for (std::size_t i = 0; i < comp_order.size(); ++i) idx[comp_order[i]] = i;
    // row i of m is u_i * a_i + w_i * b_i with a_i, b_i integer row vectors;
    // expand the determinant over the 2^n choices of u- or w-part per row
    WeightPolynomial out(n);
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask) {
        IntMatrix mm(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            const std::string& comp = (mask & (std::size_t(1) << i)) ? centers[i].u_comp
                                                                     : centers[i].w_comp;
            auto it = idx.find(comp);
            if (it == idx.end())
                throw std::invalid_argument("detm_symbolic: unknown component " + comp);
            for (std::size_t j = 0; j < n; ++j) mm.at(i, j) = kernel[j][it->second];
        }
        out.coeff(mask) = mm.det();
    }
    return out;
}

ZhpSearchResult zhp_weights(const WeightPolynomial& form, const Int& k, std::size_t count,
                            const Int& search_bound) {
    ZhpSearchResult res;
    if (form.centers() != 1)
        throw std::invalid_argument("zhp_weights expects a single-center form");
    Int a = form.coeff(1); // u coefficient
    Int b = form.coeff(0); // w coefficient
    if (k <= 0) throw std::invalid_argument("zhp_weights: k must be positive");

    // A form with coefficients of one sign is bounded below by |a| + |b| on
    // positive weights; below that bound no solution exists at all.
    if ((a > 0 && b > 0) || (a < 0 && b < 0)) {
        Int low = int_abs(a) + int_abs(b);
        if (k < low) {
            res.message = "impossible: |" + form.str() + "| >= " + low.str() +
                          " on positive weights";
            return res;
        }
    }

    // Base points with value +1 and -1 head the two families a u + b w = +-k.
    // Each family is swept by u = k u0 - l (s b), w = k w0 + l (s a) with l
    // coprime to k (the quoted parametrization, applied per sign).
    std::set<std::pair<Int, Int>> seen;
    std::vector<std::pair<Int, Int>> found;
    bool any_base = false;
    for (int s : {1, -1}) {
        Int u0 = 0, w0 = 0;
        bool have = false;
        for (Int h = 2; !have && h <= search_bound; ++h) {
            for (Int u = 1; u < h; ++u) {
                Int w = h - u;
                if (int_gcd(u, w) != 1) continue;
                if (a * u + b * w == s) {
                    u0 = u;
                    w0 = w;
                    have = true;
                    break;
                }
            }
        }
        if (!have) continue;
        any_base = true;
        std::size_t family_found = 0;
        for (Int absl = 0; absl <= 100000; ++absl) {
            if (family_found >= 2 * count + 8) break;
            for (int lsign = 0; lsign < (absl == 0 ? 1 : 2); ++lsign) {
                Int l = lsign == 0 ? absl : -absl;
                if (l == 0 ? k != 1 : int_gcd(int_abs(l), k) != 1) continue;
                Int u = k * u0 - l * s * b;
                Int w = k * w0 + l * s * a;
                if (u <= 0 || w <= 0) continue;
                if (int_gcd(u, w) != 1) continue;
                if (seen.insert({u, w}).second) {
                    found.push_back({u, w});
                    ++family_found;
                }
            }
        }
    }
    if (!any_base) {
        res.message = "no ZHP found <= bound " + search_bound.str();
        return res;
    }
    std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) {
        Int hx = x.first + x.second, hy = y.first + y.second;
        if (hx != hy) return hx < hy;
        return x.first < y.first;
    });
    if (found.size() > count) found.resize(count);
    res.found = !found.empty();
    res.weights = std::move(found);
    return res;
}

} // namespace qhp
