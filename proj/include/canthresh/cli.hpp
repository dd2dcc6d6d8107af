#pragma once

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "io.hpp"

namespace canthresh {

enum class ExitStatus : int { ok = 0, internal = 1, parse = 2, validation = 3, inconclusive = 4 };

struct RunConfig {
    std::string command;  // compute | oracle | window | report | pair
    std::string input;    // path to the input document (compute, oracle, pair)
    std::optional<std::int64_t> k;
    std::optional<Family> family;  // window filter, report family
    Caps caps;
    std::int64_t ladder_max = 10000;  // report: ladder a = 5..ladder_max
    std::string format = "table";     // table | machine
    std::string out;                  // empty: the given stream
    std::uint64_t seed = 0;
};

// "a_max=200,cap=15": named resource caps, all positive
inline Caps parse_caps(std::string_view text, Caps caps = {}) {
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto comma = text.find(',', pos);
        auto item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        pos = comma == std::string_view::npos ? text.size() : comma + 1;
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw parse_error("caps entry \"" + std::string(item) + "\" is not name=value");
        auto name = item.substr(0, eq);
        std::int64_t v = 0;
        try {
            std::size_t used = 0;
            std::string num(item.substr(eq + 1));
            v = std::stoll(num, &used);
            if (used != num.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw parse_error("caps entry \"" + std::string(item) + "\" has a non-integer value");
        }
        if (v < 1) throw parse_error("caps entry \"" + std::string(item) + "\" must be positive");
        if (name == "a_max") caps.a_max = v;
        else if (name == "degree_max") caps.degree_max = v;
        else if (name == "cap") caps.cap = v;
        else if (name == "budget") caps.budget = v;
        else if (name == "depth") caps.depth = v;
        else throw parse_error("unknown cap \"" + std::string(name) + "\"");
    }
    return caps;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw parse_error("cannot read input file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_document(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

inline std::string canonical_config(const RunConfig& c) {
    std::ostringstream s;
    s << "command=" << c.command << ";k=" << (c.k ? std::to_string(*c.k) : "-")
      << ";family=" << (c.family ? std::string(family_tag(*c.family)) : "-") << ";a_max=" << c.caps.a_max
      << ";degree_max=" << c.caps.degree_max << ";cap=" << c.caps.cap << ";budget=" << c.caps.budget
      << ";depth=" << c.caps.depth << ";ladder_max=" << c.ladder_max << ";seed=" << c.seed;
    return s.str();
}

inline std::int64_t need_k(const RunConfig& c) {
    if (!c.k) throw parse_error(c.command + " needs --k");
    if (*c.k < 2) throw std::invalid_argument("--k must be at least 2");
    return *c.k;
}

// fixed-width text table
class Table {
public:
    explicit Table(std::vector<std::string> head) { rows_.push_back(std::move(head)); }
    void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
    void print(std::ostream& os) const {
        std::vector<std::size_t> w(rows_.front().size(), 0);
        for (auto& r : rows_)
            for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
        for (auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                os << r[i];
                if (i + 1 < r.size()) os << std::string(w[i] - r[i].size() + 2, ' ');
            }
            os << '\n';
        }
    }

private:
    std::vector<std::vector<std::string>> rows_;
};

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

struct Emitted {
    json results = json::array();
    json summary;  // null unless the command has one
    std::ostringstream table;
    ExitStatus status = ExitStatus::ok;
};

inline void cmd_oracle(const RunConfig& c, const json& doc, Emitted& e) {
    io::require_keys(doc, {"presentation", "f"}, {}, c.input);
    auto p = io::presentation_from_json(doc["presentation"]);
    auto f = io::series_from_json(doc["f"], ambient_dim(p), "f");
    if (f.dim() == 0) throw parse_error("f must not be null");
    auto r = brute_force_ct(p, f, c.caps.cap);
    e.results.push_back(io::to_json(r));
    Table t({"value", "weight", "witness", "certified", "cap", "closure"});
    t.add({r.value.str(), r.weight.str(), r.witness.str(), yes_no(r.certified), std::to_string(r.cap), r.closure});
    t.print(e.table);
}

inline void cmd_compute(const RunConfig& c, const json& doc, Emitted& e) {
    io::require_keys(doc, {"presentation", "f"}, {}, c.input);
    auto k = need_k(c);
    auto p = io::presentation_from_json(doc["presentation"]);
    auto f = io::series_from_json(doc["f"], ambient_dim(p), "f");
    if (f.dim() == 0) throw parse_error("f must not be null");
    auto o = certified_ct_in_window(p, f, k);
    e.results.push_back(io::to_json(o));
    Table t({"status", "value", "weight", "certified", "cap", "reason"});
    t.add({std::string(status_name(o.status)), o.result ? o.result->value.str() : "-",
           o.result ? o.result->weight.str() : "-", o.result ? yes_no(o.result->certified) : "-",
           std::to_string(o.certificate.induced_cap), o.reason});
    t.print(e.table);
    for (auto& b : o.certificate.bounds_used) e.table << "bound  " << b.anchor << "  " << b.instantiated << '\n';
    if (o.status == WindowStatus::inconclusive) e.status = ExitStatus::inconclusive;
}

inline void window_table(const std::vector<CandidateRecord>& recs, std::ostream& os) {
    Table t({"family", "parameters", "value", "q/p", "realized"});
    for (auto& r : recs)
        t.add({std::string(family_tag(r.family)), params_str(r.params), r.value.str(),
               r.qp ? std::to_string(r.qp->first) + "/" + std::to_string(r.qp->second) : "-",
               std::string(realization_name(r.status))});
    t.print(os);
}

inline void cmd_window(const RunConfig& c, Emitted& e) {
    auto k = need_k(c);
    std::vector<CandidateRecord> recs;
    std::vector<Rational> realized;
    json summary;
    if (k == 2 && !c.family) {
        auto rep = window_half_one(c.caps);
        recs = rep.records;
        realized = rep.realized_values;
        json alarms = json::array(), escapes = json::array();
        for (auto& a : rep.alarms) alarms.push_back(io::to_json(a));
        for (auto& [f, v] : rep.escapes) escapes.push_back({{"family", std::string(family_tag(f))}, {"value", io::to_json(v)}});
        summary["alarms"] = alarms;
        summary["escapes"] = escapes;
        summary["max_smooth"] = rep.max_smooth ? io::to_json(*rep.max_smooth) : json(nullptr);
        summary["max_singular"] = rep.max_singular ? io::to_json(*rep.max_singular) : json(nullptr);
    } else {
        std::vector<Catalog> catalogs;
        for (auto f : kAllFamilies) {
            if (c.family && f != *c.family) continue;
            auto part = enumerate_window(f, k, c.caps);
            recs.insert(recs.end(), part.begin(), part.end());
            if (is_singular_family(f)) catalogs.push_back(build_catalog(f, k));
        }
        realize_all(recs, c.caps, &catalogs);
        std::stable_sort(recs.begin(), recs.end(), record_order);
        for (auto& r : recs)
            if (r.status == Realization::realized) realized.push_back(r.value);
        std::sort(realized.begin(), realized.end(), [](auto& x, auto& y) { return y < x; });
        realized.erase(std::unique(realized.begin(), realized.end()), realized.end());
    }
    json rv = json::array();
    for (auto& v : realized) rv.push_back(io::to_json(v));
    summary["k"] = k;
    summary["candidates"] = recs.size();
    summary["realized_values"] = rv;
    e.summary = summary;
    for (auto& r : recs) e.results.push_back(io::to_json(r));
    window_table(recs, e.table);
    e.table << "realized:";
    for (auto& v : realized) e.table << ' ' << v.str();
    e.table << '\n';
    if (summary.contains("alarms"))
        e.table << "alarms: " << summary["alarms"].size() << "  escapes: " << summary["escapes"].size() << '\n';
}

inline void cmd_report(const RunConfig& c, Emitted& e) {
    auto k = need_k(c);
    if (!c.family) throw parse_error("report needs --family (cA/n, cD/2-1 or quotient)");
    auto rep = accumulation_report(*c.family, k, default_ladder(c.ladder_max));
    e.results.push_back(io::to_json(rep));
    e.table << "family " << family_tag(rep.family) << "  k " << rep.k << "  limit " << rep.limit.str() << "  gap "
            << rep.gap.str() << " (a >= " << rep.gap_from << ")\n";
    Table t({"epsilon", "count"});
    for (std::size_t i = 0; i < rep.epsilons.size(); ++i) t.add({rep.epsilons[i].str(), std::to_string(rep.counts[i])});
    t.print(e.table);
    Table p({"a", "parameters", "value", "lower", "upper_quoted", "upper_exact", "quoted", "exact", "certified"});
    auto opt = [](const std::optional<bool>& b) { return b ? yes_no(*b) : std::string("-"); };
    for (auto& pt : rep.tail)
        p.add({std::to_string(pt.a), params_str(pt.params), pt.value.str(), pt.lower.str(), pt.upper_quoted.str(),
               pt.upper_exact.str(), yes_no(pt.within_quoted), yes_no(pt.within_exact), opt(pt.certified)});
    p.print(e.table);
}

inline void cmd_pair(const RunConfig& c, const json& doc, Emitted& e) {
    io::require_keys(doc, {"pair"}, {"I", "J", "compare", "values"}, c.input);
    auto in = io::pair_input_from_json(doc["pair"]);
    require_pair_input(in);
    auto cap = std::max(c.caps.cap, classified_weight(in.presentation).max_numerator());
    Table t({"operation", "result", "detail"});

    auto pt = pair_oracle(in, cap);
    e.results.push_back({{"operation", "pair_threshold"}, {"result", io::to_json(pt)}});
    t.add({"pair_threshold", pt.value.str(), pt.weight.str() + (pt.certified ? " certified" : " uncertified") +
                                                  (pt.warning ? "; " + *pt.warning : "")});

    if (doc.contains("I") || doc.contains("J")) {
        if (!doc.contains("I") || !doc.contains("J")) throw parse_error("component bounds need both I and J");
        auto I = io::dcc_from_json(doc["I"], true, "I");
        auto J = io::dcc_from_json(doc["J"], false, "J");
        for (auto& cpt : in.B)
            if (!std::binary_search(I.elements.begin(), I.elements.end(), cpt.coefficient))
                throw std::invalid_argument("B coefficient " + cpt.coefficient.str() + " is not in I");
        for (auto& cpt : in.S)
            if (!std::binary_search(J.elements.begin(), J.elements.end(), cpt.coefficient))
                throw std::invalid_argument("S coefficient " + cpt.coefficient.str() + " is not in J");
        auto [nb, ns] = component_bounds(I.floor, J.floor, in.q);
        bool ok = Rational(static_cast<std::int64_t>(in.B.size())) <= nb &&
                  Rational(static_cast<std::int64_t>(in.S.size())) <= ns;
        e.results.push_back({{"operation", "component_bounds"},
                             {"result", {{"N_B_max", io::to_json(nb)}, {"N_S_max", io::to_json(ns)},
                                         {"N_B", in.B.size()}, {"N_S", in.S.size()}, {"within", ok}}}});
        t.add({"component_bounds", nb.str() + ", " + ns.str(),
               "N(B)=" + std::to_string(in.B.size()) + " N(S)=" + std::to_string(in.S.size()) +
                   (ok ? " within" : " exceeds")});
    }

    if (in.presentation.family() == Family::cAn) {
        auto o = index_dichotomy(in, cap);
        e.results.push_back({{"operation", "index_dichotomy"}, {"result", io::to_json(o)}});
        auto j = io::to_json(o);
        std::string detail = j["kind"] == "representation"  ? "sandwich " + j["sandwich"].get<std::string>()
                             : j["kind"] == "bounded_index" ? "bound " + j["bound"].get<std::string>()
                                                            : j["reason"].get<std::string>();
        t.add({"index_dichotomy", j["kind"].get<std::string>(), detail});
        if (std::holds_alternative<DichotomyInconclusive>(o)) e.status = ExitStatus::inconclusive;
    }

    if (doc.contains("compare")) {
        auto& cmp = doc["compare"];
        io::require_keys(cmp, {"weight_i", "record_j", "weight_j"}, {"irreducible_i", "irreducible_j"}, "compare");
        PairRecord ri{in, io::weight_from_json(cmp["weight_i"], "compare.weight_i"), true};
        PairRecord rj{io::pair_input_from_json(cmp["record_j"], "compare.record_j"), WeightVector({1}), true};
        if (cmp.contains("irreducible_i")) ri.exceptional_irreducible = io::get_bool(cmp, "irreducible_i", "compare");
        if (cmp.contains("irreducible_j")) rj.exceptional_irreducible = io::get_bool(cmp, "irreducible_j", "compare");
        auto w_ij = io::weight_from_json(cmp["weight_j"], "compare.weight_j");
        auto v = monotone_weight_compare(ri, rj, w_ij, cap);
        e.results.push_back({{"operation", "monotone_weight_compare"}, {"result", io::to_json(v)}});
        t.add({"monotone_weight_compare", v.holds ? "holds" : (v.hypotheses ? "fails" : "hypotheses fail"),
               v.first_failure.value_or("ct_i " + v.ct_i.str() + " >= ct_j " + v.ct_j.str())});
    }

    if (doc.contains("values")) {
        if (!doc["values"].is_array()) throw parse_error("\"values\" must be an array");
        std::vector<Rational> vals;
        for (auto& x : doc["values"]) vals.push_back(io::rational_from_json(x, "values"));
        auto r = detect_increasing_chain(vals);
        e.results.push_back({{"operation", "detect_increasing_chain"},
                             {"result", r ? json{r->first, r->second} : json(nullptr)}});
        t.add({"detect_increasing_chain", r ? "(" + std::to_string(r->first) + "," + std::to_string(r->second) + ")" : "absent",
               std::to_string(vals.size()) + " values"});
    }
    t.print(e.table);
}

}  // namespace detail

// Runs one command; the report goes to `out` (or config.out), diagnostics to `err`.
inline int run(const RunConfig& c, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    detail::Emitted e;
    std::string input_text;
    try {
        if (c.format != "table" && c.format != "machine") throw parse_error("--format must be table or machine");
        json doc;
        bool needs_input = c.command == "compute" || c.command == "oracle" || c.command == "pair";
        if (needs_input) {
            if (c.input.empty()) throw parse_error(c.command + " needs an input document");
            input_text = detail::read_file(c.input);
            doc = detail::parse_document(input_text, c.input);
        }
        if (c.command == "oracle")
            detail::cmd_oracle(c, doc, e);
        else if (c.command == "compute")
            detail::cmd_compute(c, doc, e);
        else if (c.command == "window")
            detail::cmd_window(c, e);
        else if (c.command == "report")
            detail::cmd_report(c, e);
        else if (c.command == "pair")
            detail::cmd_pair(c, doc, e);
        else
            throw parse_error("unknown command \"" + c.command + "\"");
    } catch (const invalid_presentation& ex) {
        err << "validation failed:\n";
        for (auto& v : ex.violations) err << "  " << v.anchor << ": " << v.detail << '\n';
        return static_cast<int>(ExitStatus::validation);
    } catch (const parse_error& ex) {
        err << "parse error: " << ex.what() << '\n';
        return static_cast<int>(ExitStatus::parse);
    } catch (const structural_error& ex) {
        err << "parse error: " << ex.what() << '\n';
        return static_cast<int>(ExitStatus::parse);
    } catch (const json::exception& ex) {
        err << "parse error: " << ex.what() << '\n';
        return static_cast<int>(ExitStatus::parse);
    } catch (const std::invalid_argument& ex) {
        err << "validation failed: " << ex.what() << '\n';
        return static_cast<int>(ExitStatus::validation);
    } catch (const std::exception& ex) {
        err << "internal error: " << ex.what() << '\n';
        return static_cast<int>(ExitStatus::internal);
    }

    std::string body;
    if (c.format == "machine") {
        json top;
        top["command"] = c.command;
        std::ostringstream hex;
        hex << std::hex << std::setw(16) << std::setfill('0') << fnv1a(input_text, fnv1a(detail::canonical_config(c)));
        top["inputs_digest"] = hex.str();
        top["results"] = e.results;
        if (!e.summary.is_null()) top["summary"] = e.summary;
        body = top.dump(2) + "\n";
    } else {
        body = e.table.str();
    }
    if (!c.out.empty()) {
        std::ofstream f(c.out, std::ios::binary);
        if (!f) {
            err << "internal error: cannot write " << c.out << '\n';
            return static_cast<int>(ExitStatus::internal);
        }
        f << body;
    } else {
        out << body;
    }
    return static_cast<int>(e.status);
}

}  // namespace canthresh
