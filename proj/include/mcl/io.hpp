#pragma once

#include <json.hpp>

#include <string>

#include "mcl/laurent.hpp"
#include "mcl/mat2.hpp"
#include "mcl/poset.hpp"

namespace mcl {

using nlohmann::json;

// {"terms":[{"c":"num/den","x":[e1,e2,e3],"y":["a/2","b/2","c/2"]}]}
// Terms are emitted in the canonical order, so serialization is bit-exact.
inline json poly_to_json(const Poly& p) {
    json terms = json::array();
    for (const auto& t : p.terms()) {
        json jt;
        jt["c"] = rational_to_string(t.c);
        jt["x"] = {t.e.x[0], t.e.x[1], t.e.x[2]};
        jt["y"] = {std::to_string(t.e.y2[0]) + "/2", std::to_string(t.e.y2[1]) + "/2",
                   std::to_string(t.e.y2[2]) + "/2"};
        terms.push_back(std::move(jt));
    }
    return json{{"terms", std::move(terms)}};
}

inline Poly poly_from_json(const json& j) {
    std::vector<Term> ts;
    for (const auto& jt : j.at("terms")) {
        Term t;
        t.c = parse_rational(jt.at("c").get<std::string>());
        for (int i = 0; i < 3; ++i) t.e.x[i] = jt.at("x").at(i).get<int16_t>();
        for (int i = 0; i < 3; ++i) {
            const std::string s = jt.at("y").at(i).get<std::string>();
            const auto slash = s.find('/');
            if (slash == std::string::npos || s.substr(slash + 1) != "2")
                throw Error("y exponents must be given in half-units");
            t.e.y2[i] = static_cast<int16_t>(std::stoi(s.substr(0, slash)));
        }
        ts.push_back(std::move(t));
    }
    return Poly::from_terms(std::move(ts));
}

// {"elements":[{"label":1,"weight":<poly>}...],"dirs":["U","D",...],"circular":false}
inline json poset_to_json(const FencePoset& p) {
    json elems = json::array();
    for (const auto& e : p.elems)
        elems.push_back(json{{"label", e.label}, {"weight", poly_to_json(e.weight)}});
    json dirs = json::array();
    for (Dir d : p.dirs) dirs.push_back(d == Dir::Up ? "U" : "D");
    return json{{"elements", std::move(elems)}, {"dirs", std::move(dirs)},
                {"circular", p.circular}};
}

inline FencePoset poset_from_json(const json& j) {
    FencePoset p;
    for (const auto& je : j.at("elements"))
        p.elems.push_back({je.at("label").get<int>(), poly_from_json(je.at("weight"))});
    for (const auto& jd : j.at("dirs")) {
        const std::string s = jd.get<std::string>();
        if (s != "U" && s != "D") throw Error("dirs entries must be \"U\" or \"D\"");
        p.dirs.push_back(s == "U" ? Dir::Up : Dir::Down);
    }
    p.circular = j.value("circular", false);
    // Accept the n-dirs circular form (the closing dir must be the implied
    // R < L, i.e. "U") as well as the n-1 form with just the flag.
    if (p.circular && !p.elems.empty() && p.dirs.size() == p.elems.size()) {
        if (p.dirs.back() != Dir::Up) throw Error("circular closing relation must be L > R");
        p.dirs.pop_back();
    }
    if (!(p.elems.empty() && p.dirs.empty()) && p.dirs.size() + 1 != p.elems.size())
        throw Error("dirs length does not match element count");
    return p;
}

inline json mat2_to_json(const Mat2& m) {
    return json{{"m11", poly_to_json(m.a)},
                {"m12", poly_to_json(m.b)},
                {"m21", poly_to_json(m.c)},
                {"m22", poly_to_json(m.d)}};
}

inline Mat2 mat2_from_json(const json& j) {
    return {poly_from_json(j.at("m11")), poly_from_json(j.at("m12")),
            poly_from_json(j.at("m21")), poly_from_json(j.at("m22"))};
}

// Hasse diagram drawn left to right; weights annotate the nodes and edges
// point from the smaller to the greater element.
inline std::string poset_to_dot(const FencePoset& p, const std::string& name = "poset") {
    std::string out = "digraph " + name + " {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < p.size(); ++i) {
        out += "  n" + std::to_string(i) + " [label=\"x" + std::to_string(p.elems[i].label) +
               "  " + to_string(p.elems[i].weight) + "\"];\n";
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        if (p.dirs[i] == Dir::Up)
            out += "  n" + std::to_string(i) + " -> n" + std::to_string(i + 1) + ";\n";
        else
            out += "  n" + std::to_string(i + 1) + " -> n" + std::to_string(i) + ";\n";
    }
    if (p.circular && p.size() > 1)
        out += "  n" + std::to_string(p.size() - 1) + " -> n0 [style=dashed];\n";
    out += "}\n";
    return out;
}

} // namespace mcl
