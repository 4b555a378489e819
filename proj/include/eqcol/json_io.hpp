#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "eqcol/colouring.hpp"
#include "eqcol/graph.hpp"
#include "eqcol/oracle.hpp"
#include "eqcol/solver.hpp"

namespace eqcol {

// All documents use nlohmann's default object ordering (keys sorted), so a
// fixed input and seed produce byte-identical output.

nlohmann::json colouring_json(const Graph& g, const Colouring& c, int d);
nlohmann::json diagnostics_json(const DiagnosticsReport& report);
nlohmann::json trace_json(const std::vector<TraceEntry>& trace);
nlohmann::json solve_json(const Graph& g, const SolveConfig& config, const SolveOutcome& out);
nlohmann::json verify_json(const Graph& g, const Colouring& c, int d);
nlohmann::json oracle_json(const Graph& g, int d, int k, const OracleVerdict& verdict);
nlohmann::json scan_json(const ScanReport& report);

// Reads back any document that embeds "d", "k" and "assignment" at the top
// level (solve output, colouring_json output). Throws InputError on
// malformed documents.
struct ColouringDocument {
    int d = 0;
    int k = 0;
    Colouring colouring;
};
ColouringDocument parse_colouring_json(std::istream& in);

// dump with two-space indentation and a trailing newline
std::string dump_json(const nlohmann::json& doc);

} // namespace eqcol
