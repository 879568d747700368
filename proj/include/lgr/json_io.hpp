#pragma once
// JSON exchange formats: graphs, group specs, generating sets, cocycles,
// covering maps, glued graphs, Laurent matrices, presentations. Parsers
// validate shape and reject malformed data with std::invalid_argument;
// printers emit exactly what the parsers accept (parse of print = identity).

#include <string>

#include "json.hpp"
#include "lgr/extensions.hpp"
#include "lgr/fox.hpp"
#include "lgr/gluing.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"
#include "lgr/rigidity.hpp"

namespace lgr {

// Inline literal (starts with '{' or '[') or a file path; "-" reads stdin.
nlohmann::json read_json(const std::string& path_or_literal);

// {"vertices": n, "edges": [[u,v],...]} with u < v, plus optional
// "edge_labels" and "vertex_labels"; duplicate and loop edges are rejected.
nlohmann::json graph_to_json(const SimpleGraph& g);
SimpleGraph graph_from_json(const nlohmann::json& j);

// {"kind": "cyclic"|"zd"|"lattice_quotient"|"perm"|"free"|"product"|
//  "central_ext", ...}; semidirect oracles have no JSON spec.
nlohmann::json group_to_json(const GroupOracle& g);
GroupOracle group_from_json(const nlohmann::json& j);

nlohmann::json elem_to_json(const Elem& e);
Elem elem_from_json(const nlohmann::json& j);
nlohmann::json genset_to_json(const GenSet& s);
GenSet genset_from_json(const GroupOracle& g, const nlohmann::json& j);

// {"group": <spec>, "entries": [[g1, g2, bit], ...]} with omitted entries 0;
// accepts "table" (dense rows) instead of "entries", and an optional
// "domain" list for truncated carriers.
nlohmann::json cocycle_to_json(const Cocycle2& phi);
Cocycle2 cocycle_from_json(const nlohmann::json& j);

// {"source": graph, "target": graph, "vertex_map": [...], "fiber_size": k}
nlohmann::json covering_to_json(const CoveringMap& c);
CoveringMap covering_from_json(const nlohmann::json& j);

// carrier graph JSON + {"edge_kinds": [...], "projection": [...],
// "fibers": [[...],...]}; the base graph is rebuilt from the projection.
nlohmann::json glued_to_json(const GluedGraph& g);
GluedGraph glued_from_json(const nlohmann::json& j);

// {"rows": r, "cols": c, "entries": [[[exponents...],...],...]}; each entry
// lists the exponents of its support.
nlohmann::json laurent_to_json(const LaurentGF2& l);
LaurentGF2 laurent_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const LaurentMatrixGF2& m);
LaurentMatrixGF2 matrix_from_json(const nlohmann::json& j);

// {"generators": [...], "relators": ["ACac" or [1,-3,...],...],
//  "u": {"a": 1, ...}, "r3": 0, "d3": optional matrix}
nlohmann::json presentation_to_json(const PresentationData& p);
PresentationData presentation_from_json(const nlohmann::json& j);

}  // namespace lgr
