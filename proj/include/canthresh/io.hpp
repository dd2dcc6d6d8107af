#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "certify.hpp"
#include "pair.hpp"
#include "windows.hpp"

namespace canthresh {

using json = nlohmann::ordered_json;

// malformed documents: wrong shape, missing or unknown keys
struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace io {

inline void require_keys(const json& j, std::initializer_list<const char*> required,
                         std::initializer_list<const char*> optional, const std::string& where) {
    if (!j.is_object()) throw parse_error(where + ": expected an object");
    std::set<std::string> known;
    for (auto k : required) {
        known.insert(k);
        if (!j.contains(k)) throw parse_error(where + ": missing key \"" + k + "\"");
    }
    for (auto k : optional) known.insert(k);
    for (auto& [k, v] : j.items())
        if (!known.count(k)) throw parse_error(where + ": unknown key \"" + k + "\"");
}

inline std::int64_t get_int(const json& j, const char* key, const std::string& where) {
    auto& v = j.at(key);
    if (!v.is_number_integer()) throw parse_error(where + ": \"" + key + "\" must be an integer");
    return v.get<std::int64_t>();
}

inline bool get_bool(const json& j, const char* key, const std::string& where) {
    auto& v = j.at(key);
    if (!v.is_boolean()) throw parse_error(where + ": \"" + key + "\" must be true or false");
    return v.get<bool>();
}

// ------------------------------------------------------------------ numerics

inline json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const json& j, const std::string& where) {
    try {
        if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
        if (j.is_string()) return Rational::parse(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw parse_error(where + ": " + e.what());
    }
    throw parse_error(where + ": expected a rational \"num/den\"");
}

inline json to_json(const Monomial& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) a.push_back(m[i]);
    return a;
}

inline json to_json(const SeriesSupport& s) {
    json terms = json::array();
    for (auto& t : s.terms()) terms.push_back(to_json(t));
    json j;
    j["dim"] = s.dim();
    j["terms"] = terms;
    j["complete_up_to"] = s.is_polynomial() ? json(nullptr) : json(s.complete_up_to());
    return j;
}

// A series: {"terms": [[...],...], "complete_up_to": int|null, "dim"?: int}.
// null stands for an absent tail.
inline SeriesSupport series_from_json(const json& j, std::size_t dim, const std::string& where) {
    if (j.is_null()) return SeriesSupport();
    require_keys(j, {"terms"}, {"complete_up_to", "dim"}, where);
    if (j.contains("dim") && get_int(j, "dim", where) != static_cast<std::int64_t>(dim))
        throw parse_error(where + ": expected dimension " + std::to_string(dim));
    if (!j["terms"].is_array()) throw parse_error(where + ": \"terms\" must be an array");
    std::vector<Monomial> terms;
    for (auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != dim)
            throw parse_error(where + ": every exponent vector must have " + std::to_string(dim) + " entries");
        std::vector<int> e;
        for (auto& x : t) {
            if (!x.is_number_integer() || x.get<std::int64_t>() < 0 || x.get<std::int64_t>() > 1'000'000)
                throw parse_error(where + ": exponents must be non-negative integers");
            e.push_back(x.get<int>());
        }
        terms.emplace_back(std::move(e));
    }
    std::int64_t complete = kPolynomial;
    if (j.contains("complete_up_to") && !j["complete_up_to"].is_null()) complete = get_int(j, "complete_up_to", where);
    try {
        return SeriesSupport(dim, std::move(terms), complete);
    } catch (const structural_error& e) {
        throw parse_error(where + ": " + e.what());
    }
}

inline json tail_json(const SeriesSupport& s) { return s.dim() == 0 ? json(nullptr) : to_json(s); }

inline json to_json(const WeightVector& w) {
    json j;
    j["numerators"] = w.numerators();
    j["denominator"] = w.denominator();
    j["text"] = w.str();
    return j;
}

inline WeightVector weight_from_json(const json& j, const std::string& where) {
    require_keys(j, {"numerators", "denominator"}, {"text"}, where);
    if (!j["numerators"].is_array()) throw parse_error(where + ": \"numerators\" must be an array");
    std::vector<std::int64_t> nums;
    for (auto& x : j["numerators"]) {
        if (!x.is_number_integer()) throw parse_error(where + ": numerators must be integers");
        nums.push_back(x.get<std::int64_t>());
    }
    try {
        return WeightVector(std::move(nums), get_int(j, "denominator", where));
    } catch (const structural_error& e) {
        throw parse_error(where + ": " + e.what());
    }
}

// -------------------------------------------------------------- presentation

inline json to_json(const Presentation& p) {
    json j;
    j["family"] = std::string(family_tag(p.family()));
    std::visit(
        [&](auto& c) {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, Smooth>) {
                j["alpha"] = c.alpha, j["beta"] = c.beta;
            } else if constexpr (std::is_same_v<T, Quotient>) {
                j["n"] = c.n, j["b"] = c.b;
            } else if constexpr (std::is_same_v<T, CA>) {
                j["r1"] = c.r1, j["r2"] = c.r2, j["a"] = c.a, j["d"] = c.d, j["g"] = tail_json(c.g);
            } else if constexpr (std::is_same_v<T, CAn>) {
                j["n"] = c.n, j["b"] = c.b, j["r1"] = c.r1, j["r2"] = c.r2, j["a"] = c.a, j["d"] = c.d;
                j["g"] = tail_json(c.g);
            } else if constexpr (std::is_same_v<T, CD1>) {
                j["r"] = c.r, j["a"] = c.a, j["d"] = c.d, j["q"] = tail_json(c.q), j["p"] = tail_json(c.p);
                j["lambda"] = c.lambda, j["mu"] = c.mu, j["eta"] = c.eta;
            } else if constexpr (std::is_same_v<T, CD2>) {
                j["r"] = c.r, j["a"] = c.a, j["d"] = c.d, j["p"] = tail_json(c.p), j["q"] = tail_json(c.q);
            } else if constexpr (std::is_same_v<T, CDh1>) {
                j["r"] = c.r, j["a"] = c.a, j["d"] = c.d, j["alpha"] = c.alpha, j["q"] = tail_json(c.q);
                j["p"] = tail_json(c.p), j["lambda"] = c.lambda;
            } else {
                j["r"] = c.r, j["a"] = c.a, j["d"] = c.d, j["p"] = tail_json(c.p), j["q"] = tail_json(c.q);
            }
        },
        p.variant());
    return j;
}

inline Presentation presentation_from_json(const json& j, const std::string& where = "presentation") {
    if (!j.is_object() || !j.contains("family") || !j["family"].is_string())
        throw parse_error(where + ": missing string key \"family\"");
    auto fam = parse_family(j["family"].get<std::string>());
    if (!fam) throw parse_error(where + ": unknown family \"" + j["family"].get<std::string>() + "\"");
    auto I = [&](const char* k) { return get_int(j, k, where); };
    auto Bo = [&](const char* k) { return get_bool(j, k, where); };
    auto T = [&](const char* k, std::size_t d) { return series_from_json(j.at(k), d, where + "." + k); };
    switch (*fam) {
        case Family::smooth:
            require_keys(j, {"family", "alpha", "beta"}, {}, where);
            return Smooth{I("alpha"), I("beta")};
        case Family::quotient:
            require_keys(j, {"family", "n", "b"}, {}, where);
            return Quotient{I("n"), I("b")};
        case Family::cA:
            require_keys(j, {"family", "r1", "r2", "a", "d", "g"}, {}, where);
            return CA{I("r1"), I("r2"), I("a"), I("d"), T("g", 2)};
        case Family::cAn:
            require_keys(j, {"family", "n", "b", "r1", "r2", "a", "d", "g"}, {}, where);
            return CAn{I("n"), I("b"), I("r1"), I("r2"), I("a"), I("d"), T("g", 2)};
        case Family::cD1:
            require_keys(j, {"family", "r", "a", "d", "q", "p", "lambda", "mu", "eta"}, {}, where);
            return CD1{I("r"), I("a"), I("d"), T("q", 2), T("p", 3), Bo("lambda"), Bo("mu"), Bo("eta")};
        case Family::cD2:
            require_keys(j, {"family", "r", "a", "d", "p", "q"}, {}, where);
            return CD2{I("r"), I("a"), I("d"), T("p", 3), T("q", 2)};
        case Family::cDh1:
            require_keys(j, {"family", "r", "a", "d", "alpha", "q", "p", "lambda"}, {}, where);
            return CDh1{I("r"), I("a"), I("d"), I("alpha"), T("q", 2), T("p", 2), Bo("lambda")};
        case Family::cDh2:
            require_keys(j, {"family", "r", "a", "d", "p", "q"}, {}, where);
            return CDh2{I("r"), I("a"), I("d"), T("p", 2), T("q", 2)};
    }
    throw parse_error(where + ": unhandled family");
}

// ------------------------------------------------------------------ results

inline json to_json(const ThresholdResult& r) {
    json j;
    j["value"] = to_json(r.value);
    j["weight"] = to_json(r.weight);
    j["witness"] = r.witness.str();
    j["certified"] = r.certified;
    j["cap"] = r.cap;
    j["closure"] = r.closure;
    return j;
}

inline json to_json(const WindowOutcome& o) {
    json j;
    j["status"] = std::string(status_name(o.status));
    j["reason"] = o.reason;
    if (o.result) {
        auto r = to_json(*o.result);
        for (auto& [k, v] : r.items()) j[k] = v;
    }
    json bounds = json::array();
    for (auto& b : o.certificate.bounds_used) bounds.push_back({{"anchor", b.anchor}, {"instantiated", b.instantiated}});
    j["certificate"] = {{"k", o.certificate.k},
                        {"bounds_used", bounds},
                        {"induced_cap", o.certificate.induced_cap},
                        {"notes", o.certificate.notes}};
    return j;
}

inline json to_json(const ParamList& p) {
    json j = json::object();
    for (auto& [k, v] : p) j[k] = v;
    return j;
}

inline json to_json(const CandidateRecord& c) {
    json j;
    j["family"] = std::string(family_tag(c.family));
    j["params"] = to_json(c.params);
    j["value"] = to_json(c.value);
    j["qp"] = c.qp ? json{{"q", c.qp->first}, {"p", c.qp->second}} : json(nullptr);
    j["realized"] = std::string(realization_name(c.status));
    if (c.realized) {
        j["witness"] = {{"presentation", to_json(c.realized->presentation)},
                        {"f", to_json(c.realized->f)},
                        {"weight", to_json(c.realized->weight)},
                        {"closure", c.realized->closure}};
    }
    if (c.remark_inequality) j["remark_inequality"] = *c.remark_inequality;
    j["alternatives"] = c.alternatives.size();
    return j;
}

inline json to_json(const LadderPoint& pt) {
    json j;
    j["a"] = pt.a;
    j["params"] = to_json(pt.params);
    j["l"] = pt.l;
    j["value"] = to_json(pt.value);
    j["lower"] = to_json(pt.lower);
    j["upper_quoted"] = to_json(pt.upper_quoted);
    j["upper_exact"] = to_json(pt.upper_exact);
    j["within_quoted"] = pt.within_quoted;
    j["within_exact"] = pt.within_exact;
    j["certified"] = pt.certified ? json(*pt.certified) : json(nullptr);
    j["remark_inequality"] = pt.remark_inequality ? json(*pt.remark_inequality) : json(nullptr);
    return j;
}

inline json to_json(const AccumulationReport& r) {
    json j;
    j["family"] = std::string(family_tag(r.family));
    j["k"] = r.k;
    j["limit"] = to_json(r.limit);
    json counts = json::array();
    for (std::size_t i = 0; i < r.epsilons.size(); ++i)
        counts.push_back({{"epsilon", to_json(r.epsilons[i])}, {"count", r.counts[i]}});
    j["counts"] = counts;
    j["gap"] = to_json(r.gap);
    j["gap_from"] = r.gap_from;
    json tail = json::array();
    for (auto& pt : r.tail) tail.push_back(to_json(pt));
    j["tail"] = tail;
    return j;
}

// --------------------------------------------------------------------- pair

inline json to_json(const DccSet& s) {
    json e = json::array();
    for (auto& x : s.elements) e.push_back(to_json(x));
    return {{"elements", e}, {"floor", to_json(s.floor)}};
}

inline DccSet dcc_from_json(const json& j, bool unit_interval, const std::string& where) {
    require_keys(j, {"elements", "floor"}, {}, where);
    if (!j["elements"].is_array()) throw parse_error(where + ": \"elements\" must be an array");
    DccSet s;
    for (auto& x : j["elements"]) s.elements.push_back(rational_from_json(x, where));
    s.floor = rational_from_json(j["floor"], where + ".floor");
    auto v = dcc_violations(s, unit_interval);
    if (!v.empty()) throw std::invalid_argument(where + ": " + v.front());
    return s;
}

inline json to_json(const PairInput& in) {
    auto comps = [](const std::vector<Component>& cs) {
        json a = json::array();
        for (auto& c : cs) a.push_back({{"coefficient", to_json(c.coefficient)}, {"support", to_json(c.support)}});
        return a;
    };
    return {{"presentation", to_json(in.presentation)}, {"B", comps(in.B)}, {"S", comps(in.S)}, {"q", in.q}};
}

inline PairInput pair_input_from_json(const json& j, const std::string& where = "pair") {
    require_keys(j, {"presentation", "B", "S", "q"}, {}, where);
    PairInput in;
    in.presentation = presentation_from_json(j["presentation"], where + ".presentation");
    auto dim = ambient_dim(in.presentation);
    auto comps = [&](const char* key) {
        std::vector<Component> out;
        if (!j[key].is_array()) throw parse_error(where + ": \"" + key + "\" must be an array");
        std::size_t i = 0;
        for (auto& c : j[key]) {
            std::string w = where + "." + key + "[" + std::to_string(i++) + "]";
            require_keys(c, {"coefficient", "support"}, {}, w);
            out.push_back({rational_from_json(c["coefficient"], w), series_from_json(c["support"], dim, w + ".support")});
            if (out.back().support.dim() == 0) throw parse_error(w + ": support must not be null");
        }
        return out;
    };
    in.B = comps("B");
    in.S = comps("S");
    in.q = get_int(j, "q", where);
    return in;
}

inline json to_json(const PairResult& r) {
    json j;
    j["value"] = to_json(r.value);
    j["weight"] = to_json(r.weight);
    j["certified"] = r.certified;
    j["cap"] = r.cap;
    j["closure"] = r.closure;
    j["warning"] = r.warning ? json(*r.warning) : json(nullptr);
    return j;
}

inline json to_json(const DichotomyOutcome& o) {
    json j;
    if (auto* b = std::get_if<BoundedIndex>(&o)) {
        j["kind"] = "bounded_index";
        j["n"] = b->n;
        j["bound"] = to_json(b->bound);
    } else if (auto* r = std::get_if<Representation>(&o)) {
        j["kind"] = "representation";
        j["t"] = r->t;
        j["l"] = r->l;
        j["w3"] = to_json(r->w3);
        j["sandwich"] = to_json(r->sandwich);
        j["pair_threshold"] = to_json(r->pair_threshold);
    } else {
        j["kind"] = "inconclusive";
        j["reason"] = std::get<DichotomyInconclusive>(o).reason;
    }
    return j;
}

inline json to_json(const ChainVerdict& v) {
    json links = json::array();
    for (auto& l : v.links)
        links.push_back({{"name", l.name}, {"lhs", to_json(l.lhs)}, {"rhs", to_json(l.rhs)}, {"holds", l.holds}});
    return {{"hypotheses", v.hypotheses},
            {"holds", v.holds},
            {"first_failure", v.first_failure ? json(*v.first_failure) : json(nullptr)},
            {"ct_i", to_json(v.ct_i)},
            {"ct_j", to_json(v.ct_j)},
            {"links", links}};
}

}  // namespace io

}  // namespace canthresh
