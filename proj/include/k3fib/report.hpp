#pragma once

#include "k3fib/complement_table.hpp"
#include "k3fib/arith.hpp"
#include "k3fib/classifier.hpp"
#include "k3fib/function_field.hpp"
#include "k3fib/lattice.hpp"
#include "k3fib/niemeier.hpp"
#include "k3fib/nishiyama.hpp"
#include "k3fib/x3.hpp"

#include <json.hpp>
#include <string>
#include <vector>

namespace k3fib {

using Json = nlohmann::json;  // object keys are kept sorted

// integers as numbers within 64 bits, as decimal strings beyond
Json json_int(const Int& z);
// rationals as "p/q", integral values as "p"
Json json_rat(const Rat& r);
Json json_mat(const IMat& m);

enum class Status { Ok, Error, Finding };
std::string status_str(Status s);

struct Report {
    std::string command;
    Status status = Status::Ok;
    Json payload = Json::object();
    std::vector<std::string> diagnostics;
    // promotes Ok to Finding
    void note(const std::string& finding);
    Json to_json() const;
};

// two-space indent, sorted keys, trailing newline
std::string canonical_dump(const Json& j);

// {"sum":[{"sym":"A","n":2,"scale":-1,"rep":1}, ...]} -> "A2(-1)+..."
std::string lattice_spec_from_json(const Json& j);

// payloads
Json disc_payload(const IntLattice& l);
Json lattice_payload(const IntLattice& l);  // rank, det, gram, roottype when negative definite
Json niemeier_payload(const NiemeierLattice& n, const NiemeierReport& r);
Json component_embedding_payload(const SummandCounts& source, const AdeComponent& target, bool show_complement);
Json niemeier_embedding_payload(const SummandCounts& source, const NiemeierLattice& n, bool show_complement);
Json complement_audit_payload(const ComplementAudit& a);
Json fibration_row(const FibrationClass& f);
Json classification_payload(const Classification& c);
Json model_payload(const ModelAnalysis& m, char var);
Json curve_config_payload(const CurveConfig& cfg);

// published-table comparison for one block; findings go to the report
Report kns_report(int k);
std::string kns_markdown(const Report& r);
Report complement_table_report();
Report x3_report();

// Compare canonical JSON documents. Arrays whose elements all carry a row_id are
// matched by row id; every difference names its row or its JSON path.
std::vector<std::string> golden_diff(const Json& expected, const Json& actual);
// throws "missing golden file" when the file cannot be read
Json read_json_file(const std::string& path);

}  // namespace k3fib
