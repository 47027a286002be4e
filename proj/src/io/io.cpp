#include "ncsym/io.hpp"

#include <fstream>
#include <iostream>
#include <stdexcept>

namespace ncsym {

Json to_json(const VectorField& X) {
    Json comps = Json::array();
    for (int a = 0; a <= X.dim(); ++a) comps.push_back(X[a].str());
    return comps;
}

Json to_json(const AlgebraBasis& b) {
    Json j;
    j["family"] = family_name(b.family);
    j["d"] = b.d;
    j["z"] = b.z ? Json(b.z->str()) : Json(nullptr);
    j["deg_t"] = b.deg_t;
    j["dim"] = b.dim();
    j["generators"] = Json::array();
    for (const auto& X : b.generators) j["generators"].push_back(to_json(X));
    j["factors"] = Json::array();
    for (const auto& [f, g] : b.factors) j["factors"].push_back({{"f", f.str()}, {"g", g.str()}});
    return j;
}

Json to_json(const StructureConstants& sc) {
    Json entries = Json::array();
    for (int i = 0; i < sc.n; ++i)
        for (int j = i + 1; j < sc.n; ++j)
            for (int k = 0; k < sc.n; ++k)
                if (!sc.at(k, i, j).is_zero()) entries.push_back({{"i", i}, {"j", j}, {"k", k}, {"c", sc.at(k, i, j).str()}});
    return {{"n", sc.n}, {"nonzero", entries}, {"antisymmetric", sc.antisymmetric()}, {"jacobi", sc.jacobi()}};
}

Json to_json(const RepReport& r) {
    Json mism = Json::array();
    for (auto [i, j] : r.mismatches) mism.push_back({i, j});
    return {{"rep", r.rep},         {"sign", r.sign},         {"faithful", r.faithful},
            {"consistent", r.consistent}, {"mismatches", mism}, {"pairs_checked", r.pairs_checked}};
}

Json to_json(const AlgebraInvariants& inv) {
    return {{"dim", inv.dim},
            {"center_dim", inv.center_dim},
            {"derived_dim", inv.derived_dim},
            {"killing", {inv.killing_pos, inv.killing_neg, inv.killing_zero}}};
}

Json to_json(const LeviReport& r) {
    return {{"status", levi_status_name(r.status)},
            {"ideal", r.ideal},
            {"abelian", r.abelian},
            {"quotient_match", r.quotient_match},
            {"witness", {r.i, r.j}},
            {"quotient", to_json(r.quotient)},
            {"reference", to_json(r.reference)}};
}

void write_json(const std::string& path, const Json& j) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << j.dump(2) << '\n';
}

}  // namespace ncsym
