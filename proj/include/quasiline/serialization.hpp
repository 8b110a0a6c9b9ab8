/**
 * @file serialization.hpp
 * @brief Structure-constant file formats (JSON, schema-versioned). All
 *        scalars are exact rational strings; no floats anywhere.
 *
 * Structure file ("quasiline/structure-v1"):
 *   { schema, conductor, dim, basis_labels,
 *     delta: [[i,j,k,cyc]...], counit: [cyc...],
 *     mul: [[i,j,k,cyc]...], unit: [cyc...],
 *     functionals: { name: {arity, entries: [[i..,cyc]...]} } }
 * A CycNum is {"conductor": N, "coeffs": ["p/q", ...]}.
 *
 * Datum file ("quasiline/datum-v1"): H by file reference (or inline),
 * grouplike index g, chi value table.
 *
 * Quantum-line file ("quasiline/qline-v1"): the datum embedded plus the
 * structure tables of R.
 */
#pragma once

#include <json.hpp>  // vendored nlohmann single header

#include "quasiline/quantum_line.hpp"

namespace quasiline {

nlohmann::json cyc_to_json(const CycNum& x);
CycNum cyc_from_json(const nlohmann::json& j);

nlohmann::json functional_to_json(const Functional& f);
Functional functional_from_json(const nlohmann::json& j, unsigned dim);

/// Coalgebra plus named functionals ("omega", "omega_inv", ...).
nlohmann::json structure_to_json(const StructuredCoalgebra& H,
                                 const std::map<std::string, const Functional*>& functionals);
StructuredCoalgebra structure_from_json(const nlohmann::json& j,
                                        std::map<std::string, Functional>* functionals);

nlohmann::json dqb_to_json(const DualQuasiBialgebra& A);
/// verify controls the constructor check on load.
DqbPtr dqb_from_json(const nlohmann::json& j, bool verify = true, unsigned jobs = 0);

/// Datum with the structure file referenced by path (relative to the
/// datum file) or embedded inline under "H".
nlohmann::json datum_to_json(const QuasiYDDatum& D, const std::string& h_file_ref = "");
QuasiYDDatum datum_from_json(const nlohmann::json& j, const std::string& base_dir,
                             bool verify = true);

nlohmann::json qline_to_json(const QuantumLine& R);
QuantumLine qline_from_json(const nlohmann::json& j, const std::string& base_dir,
                            bool verify = true);

void save_json(const nlohmann::json& j, const std::string& path);
nlohmann::json load_json(const std::string& path);

}  // namespace quasiline
