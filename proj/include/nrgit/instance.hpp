#pragma once

#include "nrgit/derivation.hpp"
#include "nrgit/homdim.hpp"

#include <json.hpp>

namespace nrgit {

inline constexpr const char* kToolName = "nrgit";
inline constexpr const char* kToolVersion = "0.1.0";

struct Limits {
    long step_budget = 0; // 0 = library default
    int pool_degree = 2;
    int m = 1;
    unsigned seed = 0;
};

/// A fully validated problem instance: loading re-checks every module-level
/// invariant (weight homogeneity, commutation, nilpotence, ...).
struct Instance {
    std::string name;
    GradedAlgebra algebra;
    DerivationSet action;
    std::optional<Ideal> k_stable; // optional K-stable-locus ideal to intersect
    Limits limits;
};

struct InstanceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Instance load_instance(const nlohmann::json& j);
Instance load_instance_file(const std::string& path);
nlohmann::json serialize_instance(const Instance& inst);

HNType load_hntype(const nlohmann::json& j);
bool is_hntype_json(const nlohmann::json& j);

/// Canonical text form: sorted keys, two-space indent, canonical polynomial
/// strings. Reports and instances are compared on this form.
std::string canonical_dump(const nlohmann::json& j);

/// FNV-1a 64-bit hash of the canonical form, as fixed-width hex.
std::string instance_hash(const nlohmann::json& j);

/// Common report preamble: tool name/version, instance name, instance hash.
nlohmann::json report_header(const Instance& inst);

} // namespace nrgit
