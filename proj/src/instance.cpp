#include "nrgit/instance.hpp"

#include <cstdio>
#include <fstream>

using nlohmann::json;

namespace nrgit {

namespace {

const json& require(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw InstanceError(std::string("missing field: ") + key);
    return *it;
}

} // namespace

Instance load_instance(const json& j) {
    std::string name = require(j, "name").get<std::string>();

    const json& jring = require(j, "ring");
    std::vector<std::string> names;
    std::vector<int> weights;
    for (const json& v : require(jring, "vars")) {
        names.push_back(require(v, "name").get<std::string>());
        weights.push_back(require(v, "weight").get<int>());
    }
    if (names.empty()) throw InstanceError("ring needs at least one variable");
    RingPtr R = make_ring(names);

    std::vector<Polynomial> rels;
    if (jring.contains("relations"))
        for (const json& s : jring["relations"])
            rels.push_back(Polynomial::parse(R, s.get<std::string>()));

    std::string mode_str = require(j, "mode").get<std::string>();
    Mode mode;
    if (mode_str == "affine")
        mode = Mode::Affine;
    else if (mode_str == "projective")
        mode = Mode::ProjectiveCone;
    else
        throw InstanceError("mode must be \"affine\" or \"projective\"");

    GradedAlgebra algebra(R, weights, mode, Ideal(R, std::move(rels)));

    const json& jact = require(j, "action");
    int w = require(jact, "w").get<int>();
    std::vector<std::vector<Polynomial>> images;
    for (const json& row : require(jact, "images")) {
        if (row.size() != R->size())
            throw InstanceError("derivation image row length must match variable count");
        std::vector<Polynomial> prow;
        for (const json& s : row) prow.push_back(Polynomial::parse(R, s.get<std::string>()));
        images.push_back(std::move(prow));
    }
    DerivationSet action(algebra, w, std::move(images));

    std::optional<Ideal> k_stable;
    if (j.contains("k_stable_ideal")) {
        std::vector<Polynomial> gens;
        for (const json& s : j["k_stable_ideal"])
            gens.push_back(Polynomial::parse(R, s.get<std::string>()));
        k_stable = Ideal(R, std::move(gens));
    }

    Limits limits;
    if (j.contains("limits")) {
        const json& jl = j["limits"];
        if (jl.contains("step_budget")) limits.step_budget = jl["step_budget"].get<long>();
        if (jl.contains("pool_degree")) limits.pool_degree = jl["pool_degree"].get<int>();
        if (jl.contains("m")) limits.m = jl["m"].get<int>();
        if (jl.contains("seed")) limits.seed = jl["seed"].get<unsigned>();
    }

    return Instance{std::move(name), std::move(algebra), std::move(action),
                    std::move(k_stable), limits};
}

Instance load_instance_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InstanceError("cannot open instance file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InstanceError("invalid JSON in " + path + ": " + e.what());
    }
    return load_instance(j);
}

json serialize_instance(const Instance& inst) {
    json j;
    j["name"] = inst.name;
    j["mode"] = inst.algebra.mode() == Mode::Affine ? "affine" : "projective";
    json vars = json::array();
    const RingPtr& R = inst.algebra.ring();
    for (std::size_t i = 0; i < R->size(); ++i)
        vars.push_back({{"name", R->names[i]}, {"weight", inst.algebra.weights()[i]}});
    json rels = json::array();
    for (const Polynomial& g : inst.algebra.relations().gens())
        if (!g.is_zero()) rels.push_back(g.str());
    j["ring"] = {{"vars", vars}, {"relations", rels}};
    json rows = json::array();
    for (std::size_t i = 0; i < inst.action.r(); ++i) {
        json row = json::array();
        for (std::size_t v = 0; v < R->size(); ++v)
            row.push_back(inst.action.image(i, v).str());
        rows.push_back(row);
    }
    j["action"] = {{"w", inst.action.w()}, {"images", rows}};
    if (inst.k_stable) {
        json gens = json::array();
        for (const Polynomial& g : inst.k_stable->gens()) gens.push_back(g.str());
        j["k_stable_ideal"] = gens;
    }
    j["limits"] = {{"step_budget", inst.limits.step_budget},
                   {"pool_degree", inst.limits.pool_degree},
                   {"m", inst.limits.m},
                   {"seed", inst.limits.seed}};
    return j;
}

bool is_hntype_json(const json& j) { return j.contains("homdim"); }

HNType load_hntype(const json& j) {
    const json& h = require(j, "homdim");
    HNType t;
    for (const json& v : require(h, "a")) t.a.push_back(v.get<int>());
    for (const json& v : require(h, "b")) t.b.push_back(v.get<int>());
    return t;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string instance_hash(const json& j) {
    std::string s = canonical_dump(j);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json report_header(const Instance& inst) {
    json j;
    j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
    j["instance"] = inst.name;
    j["instance_hash"] = instance_hash(serialize_instance(inst));
    return j;
}

} // namespace nrgit
