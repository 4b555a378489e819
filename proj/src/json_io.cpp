#include "eqcol/json_io.hpp"

#include <istream>

#include "eqcol/errors.hpp"

namespace eqcol {

using nlohmann::json;

namespace {

json measure_json(const std::array<long long, 3>& m) {
    return json::array({m[0], m[1], m[2]});
}

const char* status_name(SolveStatus status) {
    switch (status) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::InfeasibleProven: return "infeasible";
        case SolveStatus::GaveUp: return "gave_up";
        case SolveStatus::TheoryViolation: return "theory_violation";
    }
    return "unknown";
}

} // namespace

json colouring_json(const Graph& g, const Colouring& c, int d) {
    ValidityReport validity = verify_colouring(g, c, d);
    json doc;
    doc["assignment"] = c.assignment();
    doc["class_sizes"] = c.sizes();
    doc["d"] = d;
    doc["k"] = c.k();
    doc["n"] = c.n();
    doc["equitable"] = classify(c) == SizeProfile::Equitable;
    doc["valid"] = validity.valid;
    return doc;
}

json diagnostics_json(const DiagnosticsReport& report) {
    json items = json::array();
    for (const auto& item : report.items) {
        json entry;
        entry["name"] = item.name;
        entry["hard"] = item.hard;
        entry["checked"] = item.checked;
        entry["violated"] = item.violated;
        entry["detail"] = item.detail;
        items.push_back(std::move(entry));
    }
    json doc;
    doc["items"] = std::move(items);
    doc["any_hard_violation"] = report.any_hard_violation();
    return doc;
}

json trace_json(const std::vector<TraceEntry>& trace) {
    json entries = json::array();
    for (const auto& entry : trace) {
        json e;
        e["kind"] = entry.kind;
        if (!entry.variant.empty()) e["variant"] = entry.variant;
        if (entry.edge_u >= 0) e["edge"] = json::array({entry.edge_u, entry.edge_v});
        json steps = json::array();
        for (const auto& step : entry.steps) {
            json s;
            s["vertex"] = step.vertex;
            s["from"] = step.from;
            s["to"] = step.to;
            steps.push_back(std::move(s));
        }
        e["steps"] = std::move(steps);
        if (entry.kind != "insert_recolour" && entry.kind != "restart" &&
            entry.kind != "oracle_fallback") {
            e["measure_before"] = measure_json(entry.measure_before);
            e["measure_after"] = measure_json(entry.measure_after);
        }
        entries.push_back(std::move(e));
    }
    return entries;
}

json solve_json(const Graph& g, const SolveConfig& config, const SolveOutcome& out) {
    json doc;
    doc["status"] = status_name(out.status);
    doc["d"] = config.d;
    doc["k"] = config.k;
    doc["n"] = g.vertex_count();
    doc["seed"] = config.rng_seed;
    if (out.colouring) {
        doc["assignment"] = out.colouring->assignment();
        doc["class_sizes"] = out.colouring->sizes();
        doc["equitable"] = classify(*out.colouring) == SizeProfile::Equitable;
        doc["valid"] = verify_colouring(g, *out.colouring, config.d).valid;
    } else {
        doc["assignment"] = nullptr;
        doc["class_sizes"] = nullptr;
        doc["equitable"] = false;
        doc["valid"] = false;
    }
    doc["restarts_used"] = out.restarts_used;
    doc["repair_rounds"] = out.repair_rounds;
    doc["edges_completed"] = out.edges_completed;
    doc["oracle_used"] = out.oracle_used;
    doc["oracle_nodes"] = out.oracle_nodes;
    json moves;
    moves["paths"] = out.paths;
    moves["trims"] = out.trims;
    moves["rotations"] = out.rotations;
    moves["exchanges"] = out.exchanges;
    moves["tree_swaps"] = out.tree_swaps;
    doc["move_counts"] = std::move(moves);
    if (out.status == SolveStatus::TheoryViolation) {
        doc["violation"] = out.violation;
        doc["violation_report"] = diagnostics_json(out.violation_report);
    }
    if (config.diagnostics) {
        doc["trace"] = trace_json(out.trace);
        json reports = json::array();
        for (const auto& rep : out.stuck_reports) reports.push_back(diagnostics_json(rep));
        doc["stuck_reports"] = std::move(reports);
    }
    return doc;
}

json verify_json(const Graph& g, const Colouring& c, int d) {
    ValidityReport validity = verify_colouring(g, c, d);
    json doc;
    doc["d"] = d;
    doc["k"] = c.k();
    doc["n"] = c.n();
    doc["valid"] = validity.valid;
    doc["failing_classes"] = validity.failing_classes;
    doc["equitable"] = classify(c) == SizeProfile::Equitable;
    doc["class_sizes"] = c.sizes();
    return doc;
}

json oracle_json(const Graph& g, int d, int k, const OracleVerdict& verdict) {
    json doc;
    doc["d"] = d;
    doc["k"] = k;
    doc["n"] = g.vertex_count();
    doc["feasible"] = verdict.feasible;
    doc["nodes_explored"] = verdict.nodes_explored;
    doc["witness"] = verdict.witness ? colouring_json(g, *verdict.witness, d) : json(nullptr);
    return doc;
}

json scan_json(const ScanReport& report) {
    json doc;
    doc["conjecture"] = report.conjecture == Conjecture::EVAC ? "evac" : "edc";
    doc["n_max"] = report.n_max;
    doc["d"] = report.d;
    doc["mode"] = report.exhaustive ? "exhaustive" : "sample";
    doc["graphs_checked"] = report.graphs_checked;
    doc["instances_checked"] = report.instances_checked;
    json counterexamples = json::array();
    for (const auto& ce : report.counterexamples) {
        json entry;
        entry["d"] = ce.d;
        entry["k"] = ce.k;
        entry["dimacs"] = serialize_dimacs(ce.graph);
        counterexamples.push_back(std::move(entry));
    }
    doc["counterexamples"] = std::move(counterexamples);
    return doc;
}

ColouringDocument parse_colouring_json(std::istream& in) {
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("colouring document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("k") || !doc.contains("d") ||
        !doc.contains("assignment") || !doc["assignment"].is_array()) {
        throw InputError("colouring document: need top-level d, k and assignment array");
    }
    ColouringDocument result;
    try {
        result.d = doc["d"].get<int>();
        result.k = doc["k"].get<int>();
        std::vector<int> assignment = doc["assignment"].get<std::vector<int>>();
        result.colouring = Colouring::from_assignment(result.k, assignment);
    } catch (const json::exception& e) {
        throw InputError(std::string("colouring document: ") + e.what());
    }
    if (result.d < 0) throw InputError("colouring document: d must be nonnegative");
    return result;
}

std::string dump_json(const nlohmann::json& doc) {
    return doc.dump(2) + "\n";
}

} // namespace eqcol
