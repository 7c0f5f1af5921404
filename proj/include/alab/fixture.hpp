// fixture.hpp
// JSON fixture files: ring declaration, algebroid presentation, Nambu data,
// orientation, optional twist polynomial and bounds.  All expressions are
// strings in the engine's input grammar, so fixtures stay exact.
//
// Layout (nambu kind):
//   {
//     "name": "r3_standard", "kind": "nambu",
//     "ring": { "coordinates": ["x1","x2","x3"],
//               "exp_generators": [ {"name":"u","exponent":"x1"} ] },
//     "algebroid": { "rank": 3,
//                    "anchor": [["1","0","0"],["0","1","0"],["0","0","1"]],
//                    "structure": [ {"i":1,"j":2,"bracket":["0","0","1"]} ],
//                    "weights": { "coordinates":[1,1,1], "sections":[-1,-1,-1] } },
//     "nambu": { "order": 3, "pi": [ {"indices":[1,2,3],"coeff":"1"} ] },
//     "orientation": { "coeff": "1" },
//     "twist": "x1",
//     "bounds": { "degree_bound": 2, "max_stratum": 4 }
//   }
// The dorfman kind carries only "ring" (all structure is implied by the
// chart) and is used by the Leibniz-axiom checks.
#pragma once

#include "alab/modular.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <string>

namespace alab {

using json = nlohmann::ordered_json;

struct Fixture {
    std::string name;
    std::string kind; // "nambu" or "dorfman"
    RingPtr ctx;
    std::optional<LieAlgebroid> algebroid;
    std::optional<NambuStructure> nambu;
    std::optional<OrientationForm> orientation;
    std::optional<Poly> twist;
    int degree_bound = 2;
    long max_stratum = 4;
};

namespace detail {

inline const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) throw ValidationError(where + ": missing \"" + key + "\"");
    return *it;
}

inline Poly parse_poly(const std::string& src, const RingPtr& ctx, const std::string& where) {
    ScalarExpr e = normalize(src, ctx);
    if (!e.is_polynomial())
        throw ValidationError(where + ": expected a polynomial, got " + src);
    return e.as_polynomial();
}

} // namespace detail

inline Fixture load_fixture(const json& j) {
    using detail::need;
    Fixture fx;
    fx.name = j.value("name", "unnamed");
    fx.kind = j.value("kind", "nambu");
    if (fx.kind != "nambu" && fx.kind != "dorfman")
        throw ValidationError("unknown fixture kind: " + fx.kind);

    const json& ring = need(j, "ring", fx.name);
    std::vector<std::string> coords;
    for (auto& c : need(ring, "coordinates", "ring")) coords.push_back(c.get<std::string>());
    std::vector<std::pair<std::string, Poly>> gens;
    if (ring.contains("exp_generators")) {
        // two-phase: exponents may only mention coordinates
        RingPtr bare = RingContext::make(coords);
        for (auto& g : ring["exp_generators"]) {
            std::string gname = need(g, "name", "exp_generators").get<std::string>();
            Poly expo = detail::parse_poly(need(g, "exponent", "exp_generators").get<std::string>(),
                                           bare, "exp_generators");
            gens.emplace_back(gname, expo);
        }
    }
    fx.ctx = RingContext::make(coords, gens);

    if (fx.kind == "dorfman") return fx;

    const json& alg = need(j, "algebroid", fx.name);
    int rank = need(alg, "rank", "algebroid").get<int>();
    const json& anchor_json = need(alg, "anchor", "algebroid");
    if (int(anchor_json.size()) != rank)
        throw ValidationError("anchor must have `rank` rows");
    std::vector<std::vector<ScalarExpr>> anchor;
    for (auto& row : anchor_json) {
        std::vector<ScalarExpr> r;
        for (auto& entry : row) r.push_back(normalize(entry.get<std::string>(), fx.ctx));
        if (int(r.size()) != fx.ctx->ncoords())
            throw ValidationError("anchor row needs one entry per coordinate");
        anchor.push_back(std::move(r));
    }
    std::optional<AlgebroidWeights> weights;
    if (alg.contains("weights")) {
        AlgebroidWeights w;
        for (auto& x : need(alg["weights"], "coordinates", "weights")) w.coord.push_back(x.get<int>());
        for (auto& x : need(alg["weights"], "sections", "weights")) w.section.push_back(x.get<int>());
        weights = w;
    }
    LieAlgebroid A(fx.ctx, rank, std::move(anchor), weights);
    if (alg.contains("structure")) {
        std::map<std::pair<int, int>, std::vector<ScalarExpr>> entries;
        for (auto& entry : alg["structure"]) {
            int i = need(entry, "i", "structure").get<int>();
            int jj = need(entry, "j", "structure").get<int>();
            if (i < 1 || i > rank || jj < 1 || jj > rank)
                throw ValidationError("structure indices out of range");
            if (i == jj) throw ValidationError("structure entry with i == j");
            const json& br = need(entry, "bracket", "structure");
            if (int(br.size()) != rank)
                throw ValidationError("structure bracket needs `rank` components");
            std::vector<ScalarExpr> cs;
            for (int k = 0; k < rank; ++k)
                cs.push_back(normalize(br[size_t(k)].get<std::string>(), fx.ctx));
            if (entries.count({i, jj}))
                throw ValidationError("duplicate structure entry (" + std::to_string(i) + "," +
                                      std::to_string(jj) + ")");
            entries[{i, jj}] = std::move(cs);
        }
        // explicit (i,j) and (j,i) pairs must satisfy c[i][j][k] = -c[j][i][k]
        for (auto& [key, cs] : entries) {
            auto mirror = entries.find({key.second, key.first});
            if (mirror != entries.end() && key.first < key.second)
                for (int k = 0; k < rank; ++k)
                    if (!(cs[size_t(k)] + mirror->second[size_t(k)]).is_zero())
                        throw ValidationError(
                            "structure table violates antisymmetry at (" +
                            std::to_string(key.first) + "," + std::to_string(key.second) + ")");
            if (key.first < key.second)
                for (int k = 0; k < rank; ++k)
                    A.set_structure(key.first - 1, key.second - 1, k, cs[size_t(k)]);
            else if (mirror == entries.end())
                for (int k = 0; k < rank; ++k)
                    A.set_structure(key.first - 1, key.second - 1, k, cs[size_t(k)]);
        }
    }
    A.validate_weights();
    fx.algebroid = A;

    if (j.contains("nambu")) {
        const json& nb = j["nambu"];
        int order = need(nb, "order", "nambu").get<int>();
        MultiVector pi(fx.ctx, rank, order);
        for (auto& comp : need(nb, "pi", "nambu")) {
            std::vector<int> idx;
            for (auto& v : need(comp, "indices", "nambu.pi")) idx.push_back(v.get<int>());
            for (int v : idx)
                if (v < 1 || v > rank)
                    throw ValidationError("pi component index out of range (rank " +
                                          std::to_string(rank) + ")");
            if (int(idx.size()) != order)
                throw ValidationError("pi component has wrong number of indices");
            pi.add(mask_of(idx), normalize(need(comp, "coeff", "nambu.pi").get<std::string>(), fx.ctx));
        }
        fx.nambu = NambuStructure(*fx.algebroid, order, pi);
    }

    if (j.contains("orientation")) {
        ScalarExpr coeff =
            normalize(need(j["orientation"], "coeff", "orientation").get<std::string>(), fx.ctx);
        fx.orientation = OrientationForm(fx.ctx, rank, coeff);
    }
    if (j.contains("twist"))
        fx.twist = detail::parse_poly(j["twist"].get<std::string>(), fx.ctx, "twist");
    if (j.contains("bounds")) {
        fx.degree_bound = j["bounds"].value("degree_bound", 2);
        fx.max_stratum = j["bounds"].value("max_stratum", 4L);
    }
    return fx;
}

inline Fixture parse_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open fixture file: " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("fixture JSON: ") + e.what());
    }
    return load_fixture(j);
}

} // namespace alab
