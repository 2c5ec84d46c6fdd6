#pragma once

#include <string>

#include "genus/gluing.hpp"

namespace genus {

/// Undirected DOT graph of a pairing gluing: one node per face (f1, f2, ...)
/// and per vertex (v1, v2, ...), one edge per identified pair of face edges
/// carrying twist=true|false. Vertex labels are the spectator traces when a
/// GluingSpec is given, the vertex cycles otherwise. Throws ContractError if
/// π is not a pairing.
std::string gluing_to_dot(const FaceData& faces, const Premap& pi, const GluingSpec* spec = nullptr);

}  // namespace genus
