#pragma once

#include "qcb/bases.hpp"

#include <json.hpp>

namespace qcb {

/// One run of the command-line check drivers.
struct RunConfig {
    QuiverSpec spec;
    WeightVector weight;                 // lambda, fundamental coordinates
    std::optional<WeightVector> weight2;  // lambda2 for tensor suites
    int height = 4;
    unsigned long seed = 1;
    std::string out_dir;
    std::vector<std::string> suites;  // empty: all
};

/// Convention block carried by every report: all downstream numbers are
/// relative to these choices.
nlohmann::json conventions_header(const RunConfig& cfg);

nlohmann::json suite_relations(const RunConfig& cfg);
nlohmann::json suite_twisted(const RunConfig& cfg);
nlohmann::json suite_signs(const RunConfig& cfg);
nlohmann::json suite_mutation(const RunConfig& cfg);
nlohmann::json suite_crystal(const RunConfig& cfg);
nlohmann::json suite_bases(const RunConfig& cfg);

/// All suite names in execution order.
const std::vector<std::string>& all_suite_names();
/// Dispatch by name; throws std::invalid_argument on unknown names.
nlohmann::json run_suite_by_name(const std::string& name, const RunConfig& cfg);

/// DOT text of the crystal graph up to the height bound: nodes ordered by
/// weight then string order, edges labeled by vertex.
std::string export_crystal_dot(const RunConfig& cfg);

/// Weight-dimension table rows (nu, dim, node count, both counts equal).
std::string export_dimension_csv(const RunConfig& cfg);
/// CSV of the canonical-vs-monomial transition matrix at one weight.
std::string export_transition_csv(const Module& m, const Crystal& c, const WeightVector& nu);

}  // namespace qcb
