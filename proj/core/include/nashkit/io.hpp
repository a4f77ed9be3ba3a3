#pragma once

#include <filesystem>
#include <string>

#include "nashkit/equilibria.hpp"
#include "nashkit/gadgets.hpp"
#include "nashkit/pseudo.hpp"
#include "nashkit/sat.hpp"

namespace nashkit {

// Rationals serialize as canonical "p/q" strings; bare integers parse too.
// All strategy/support indices in JSON are 0-based; graph edge lists are
// 1-indexed text per the input format.

std::string game_to_json(const BimatrixGame& game);
BimatrixGame game_from_json(const std::string& text);

std::string profile_to_json(const StrategyProfile& profile);
StrategyProfile profile_from_json(const std::string& text);

std::string measure_to_json(const FinitelySupportedMeasure& mu);
FinitelySupportedMeasure measure_from_json(const std::string& text);

std::string certificate_to_json_line(const NeCertificate& cert);

/// Moment table as an association list [[exponent...], "p/q"].
std::string moments_to_json(const PseudoExpectation& pe);

std::string formula_to_dimacs(const CnfFormula& formula);
CnfFormula formula_from_dimacs(const std::string& text);

/// "n m" header then m lines "u v", 1-indexed.
std::string graph_to_edge_list(const Graph& graph);
Graph graph_from_edge_list(const std::string& text);

std::string free_game_manifest_json(const FreeGame& fg);

/// Writes game_000.json ... plus family.json (index sets, params, witness,
/// canonical equilibria, member file names).
void write_family(const GameFamily& family, const std::filesystem::path& dir);

/// Reads a directory produced by write_family.
GameFamily read_family(const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nashkit
