// Copyright 2026 The ftcc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "ftcc/concat.hpp"
#include "ftcc/effective.hpp"
#include "ftcc/ftverify.hpp"
#include "ftcc/gadgets.hpp"
#include "ftcc/statevector.hpp"
#include "ftcc/version.hpp"
#include "json.hpp"

namespace {

using namespace ftcc;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitClaim = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Options {
    std::string check;
    std::string code;
    std::string spec;
    std::string json_path;
    std::string gate;
    std::string control = "steane";
    std::string target = "rm15";
    std::string mode;
    std::string out;
    std::string scheme;
    std::string c1;
    int case_tag = 0;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t samples = 1'000'000;
    std::size_t wmax = 3;
    std::size_t pieces = 0;
    std::size_t t = 0;
    int claimed = 0;
    double theta = 0.0;
    bool timing = false;
    bool sv = false;
    bool no_ec = false;
};

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Report header shared by every JSON artifact.
ordered_json envelope(const std::string& command, const ordered_json& config, std::uint64_t seed) {
    return {{"tool", "ftcc"},
            {"version", std::string(kVersion)},
            {"command", command},
            {"config", config},
            {"config_hash", hex64(fnv1a(command + config.dump()))},
            {"seed", seed}};
}

/// Writes to --out through a temporary file, or to stdout.
void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text << "\n";
        return;
    }
    const std::filesystem::path path(out);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw UsageError("cannot write " + out);
        f << text << "\n";
    }
    std::filesystem::rename(tmp, path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot read " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

GateKind parse_gate(const std::string& name) {
    auto g = kind_from_name(name);
    if (!g) throw UsageError("unknown gate " + name);
    return *g;
}

ConcatSpec resolve_spec(const Options& o) {
    if (!o.json_path.empty()) return spec_from_json(read_file(o.json_path));
    if (!o.spec.empty()) return named_spec(o.spec);
    if (!o.scheme.empty() || !o.c1.empty()) {
        if (o.scheme.empty() || o.c1.empty() || o.case_tag == 0) throw UsageError("--scheme, --c1 and --case go together");
        const Scheme s = o.scheme == "HCC" ? Scheme::HCC : o.scheme == "ENUCC" ? Scheme::ENUCC
                                                                               : throw UsageError("unknown scheme");
        return make_spec(s, o.c1, o.case_tag);
    }
    throw UsageError("a concatenated code needs --spec, --json or --scheme/--c1/--case");
}

/// Rotation angle when `g` is a (multi-)controlled phase.
std::optional<double> phase_angle(GateKind g, double theta) {
    using enum GateKind;
    switch (g) {
        case T: return std::numbers::pi / 4;
        case TDG: return -std::numbers::pi / 4;
        case S: return std::numbers::pi / 2;
        case SDG: return -std::numbers::pi / 2;
        case Z:
        case CZ:
        case CCZ: return std::numbers::pi;
        case ZTHETA: return theta;
        default: return std::nullopt;
    }
}

std::size_t arity(GateKind g) {
    if (g == GateKind::CNOT || g == GateKind::CZ) return 2;
    if (g == GateKind::CCZ) return 3;
    return 1;
}

StabilizerCode copies_of(const CodePtr& code, std::size_t k) {
    if (k == 1) return *code;
    return tensor_product(std::vector<StabilizerCode>(k, *code), code->name + "^" + std::to_string(k));
}

struct BaseGadget {
    Circuit circuit;
    StabilizerCode code;
    std::string construction;
};

/// Physical circuit for a logical gate on copies of a base code: a
/// transversal realization when one exists, the five-qubit relabeling for
/// H, and the fold-rotate-unfold gadget for the remaining phase gates.
std::optional<BaseGadget> base_gadget(const CodePtr& code, GateKind gate, double theta) {
    const std::size_t k = arity(gate);
    BaseGadget out{Circuit{}, copies_of(code, k), ""};
    Gate probe = make_gate(gate, k == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{0, 1, 2}, theta);
    if (k == 2) probe.qubits = {0, 1};
    if (probe.kind != GateKind::ZTHETA && probe.is_clifford()) {
        if (k == 1) {
            if (auto c = find_transversal_clifford(*code, logical_gate_action(gate))) {
                out.circuit = *c;
                out.construction = "transversal";
                return out;
            }
            if (gate == GateKind::H && code->name == "five_qubit") {
                out.circuit = build_permutation_h_5q();
                out.construction = "relabeling";
                return out;
            }
        } else if (k == 2) {
            if (auto c = find_transversal_two_block(gate, *code, *code)) {
                out.circuit = *c;
                out.construction = "transversal";
                return out;
            }
        }
    }
    if (auto angle = phase_angle(gate, theta)) {
        out.circuit = build_ckz_gadget(code, k - 1, *angle, {}, false).full;
        out.construction = "fold-rotate-unfold";
        return out;
    }
    return std::nullopt;
}

Eigen::MatrixXcd target_unitary(GateKind gate, double theta) {
    const std::size_t k = arity(gate);
    Circuit l;
    l.n = k;
    std::vector<std::size_t> qs;
    for (std::size_t i = 0; i < k; ++i) qs.push_back(i);
    l.add(make_gate(gate, qs, theta));
    return logical_unitary(l);
}

// ---- commands -------------------------------------------------------------

int cmd_catalog(const Options& o) {
    std::ostringstream text;
    ordered_json codes = ordered_json::array();
    for (const auto& name : base_code_names()) {
        const auto c = base_code(name);
        text << name << " [[" << c->n << "," << c->k << "," << c->claimed_distance.value_or(0) << "]]\n";
        codes.push_back({{"name", name}, {"n", c->n}, {"k", c->k}, {"d", c->claimed_distance.value_or(0)}});
    }
    ordered_json concat = ordered_json::array();
    for (const auto& spec : named_specs()) {
        const auto cc = build_concat(spec);
        text << scheme_name(spec.scheme) << " " << spec.c1->name << " case" << spec.case_tag << " = " << cc.physical_n
             << "\n";
        concat.push_back({{"id", spec.id},
                          {"scheme", std::string(scheme_name(spec.scheme))},
                          {"c1", spec.c1->name},
                          {"case", spec.case_tag},
                          {"qubits", cc.physical_n}});
    }
    if (o.out.empty()) {
        std::cout << text.str();
    } else {
        ordered_json j = envelope("catalog", ordered_json::object(), o.seed);
        j["base_codes"] = codes;
        j["concatenated"] = concat;
        emit(j.dump(2), o.out);
    }
    return kExitPass;
}

int cmd_build_code(const Options& o) {
    if (!o.code.empty()) {
        emit(code_to_json(load_base_code(o.code)), o.out);
    } else if (!o.json_path.empty() && o.spec.empty()) {
        emit(code_to_json(code_from_json(read_file(o.json_path))), o.out);
    } else {
        emit(concat_to_json(build_concat(resolve_spec(o))), o.out);
    }
    return kExitPass;
}

int cmd_concat(const Options& o) {
    emit(concat_to_json(build_concat(resolve_spec(o))), o.out);
    return kExitPass;
}

int cmd_gadget(const Options& o) {
    if (o.gate.empty()) throw UsageError("gadget needs --gate");
    const GateKind gate = parse_gate(o.gate);
    if (!o.code.empty()) {
        auto g = base_gadget(base_code(o.code), gate, o.theta);
        if (!g) {
            std::cerr << "no realization of " << o.gate << " on " << o.code << "\n";
            return kExitClaim;
        }
        emit(format_circuit(g->circuit), o.out);
        return kExitPass;
    }
    const auto cc = build_concat(resolve_spec(o));
    std::string reason;
    auto lg = lifted_gadget(cc, gate, &reason);
    if (!lg) {
        std::cerr << "inapplicable: " << reason << "\n";
        return kExitClaim;
    }
    emit(format_circuit(lg->circuit), o.out);
    return kExitPass;
}

ordered_json verify_config(const Options& o) {
    ordered_json c = {{"check", o.check}};
    if (!o.code.empty()) c["code"] = o.code;
    if (!o.spec.empty()) c["spec"] = o.spec;
    if (!o.gate.empty()) c["gate"] = o.gate;
    return c;
}

int check_distance(const Options& o, ordered_json& rep) {
    rep["config"]["wmax"] = o.wmax;
    if (!o.code.empty()) {
        const auto code = load_base_code(o.code);
        const int claimed = o.claimed ? o.claimed : code.claimed_distance.value_or(0);
        const auto r = min_logical_weight(code, o.wmax);
        ordered_json res = {{"code", code.name}, {"n", code.n}, {"wmax", o.wmax}};
        res["d"] = r ? ordered_json(r->weight) : ordered_json(nullptr);
        if (r) res["witness"] = format_pauli(r->witness);
        res["claimed"] = claimed;
        const bool pass = r ? (claimed == 0 || static_cast<int>(r->weight) == claimed)
                            : (claimed == 0 || claimed > static_cast<int>(o.wmax));
        res["verdict"] = pass ? "PASS" : "FAIL";
        rep["result"] = res;
        std::cerr << code.name << ": d = " << (r ? std::to_string(r->weight) : "> " + std::to_string(o.wmax)) << "\n";
        return pass ? kExitPass : kExitClaim;
    }
    const auto cc = build_concat(resolve_spec(o));
    const auto r = overall_distance_check(cc, o.wmax);
    const int claimed = o.claimed ? o.claimed : cc.code.claimed_distance.value_or(0);
    ordered_json res = {{"code", cc.spec.id}, {"n", cc.physical_n}, {"wmax", o.wmax}};
    res["low_weight_logical"] = r.low_weight_logical ? ordered_json(format_pauli(*r.low_weight_logical)) : nullptr;
    res["witness"] = format_pauli(r.witness);
    res["witness_weight"] = r.witness_weight;
    res["witness_valid"] = r.witness_valid;
    res["partial"] = r.partial;
    res["claimed"] = claimed;
    bool pass = !r.low_weight_logical && r.witness_valid;
    if (claimed) pass = pass && static_cast<int>(r.witness_weight) == claimed;
    res["verdict"] = pass ? (r.partial ? "PARTIAL-PASS" : "PASS") : "FAIL";
    rep["result"] = res;
    std::cerr << cc.spec.id << ": no logical of weight <= " << o.wmax << (r.low_weight_logical ? " FALSE" : "")
              << "; witness weight " << r.witness_weight << (r.partial ? " (partial)" : "") << "\n";
    return pass ? kExitPass : kExitClaim;
}

int check_gadget_equiv(const Options& o, ordered_json& rep) {
    if (o.code.empty() || o.gate.empty()) throw UsageError("gadget-equiv needs --code and --gate");
    const GateKind gate = parse_gate(o.gate);
    auto g = base_gadget(base_code(o.code), gate, o.theta);
    ordered_json res = {{"code", o.code}, {"gate", o.gate}};
    if (!g) {
        res["verdict"] = "FAIL";
        res["reason"] = "no realization";
        rep["result"] = res;
        return kExitClaim;
    }
    const auto r = logical_equiv(g->circuit, g->code, target_unitary(gate, o.theta));
    res["construction"] = g->construction;
    res["qubits"] = g->circuit.n;
    res["cnots"] = g->circuit.count(GateKind::CNOT);
    res["equivalent"] = r.equivalent;
    res["min_fidelity"] = r.min_fidelity;
    res["inputs_checked"] = r.inputs_checked;
    if (!r.violation.empty()) res["violation"] = r.violation;
    res["verdict"] = r.equivalent ? "PASS" : "FAIL";
    rep["result"] = res;
    std::cerr << o.gate << " on " << o.code << ": fidelity " << r.min_fidelity << "\n";
    return r.equivalent ? kExitPass : kExitClaim;
}

int check_effective(const Options& o, ordered_json& rep) {
    if (o.gate.empty()) throw UsageError("effective-distance needs --gate");
    const GateKind gate = parse_gate(o.gate);
    const auto cc = build_concat(resolve_spec(o));
    int claimed = o.claimed;
    if (!claimed) {
        const auto c = table_claim(cc.spec.id, gate);
        claimed = c.value_or(3);
    }
    EffectiveOptions eo;
    eo.samples = o.samples;
    eo.seed = o.seed;
    eo.timing = o.timing;
    if (o.mode == "exhaustive") eo.mode = SearchMode::Exhaustive;
    if (o.mode == "sampled") eo.mode = SearchMode::Sampled;
    rep["config"]["claimed"] = claimed;
    rep["config"]["samples"] = o.samples;
    if (!o.mode.empty()) rep["config"]["mode"] = o.mode;
    const auto r = effective_distance(cc, gate, claimed, eo);
    rep["result"] = ordered_json::parse(effective_to_json(r));
    std::cerr << cc.spec.id << " " << o.gate << " claimed " << claimed << ": " << r.verdict << "\n";
    return r.pass ? kExitPass : kExitClaim;
}

int check_cross_code(const Options& o, ordered_json& rep) {
    const auto control = base_code(o.control), target = base_code(o.target);
    const CrossCodeCnotPlan plan = o.pieces ? build_cross_code_cnot(control, target, o.pieces)
                                            : fault_tolerant_cross_code_cnot(control, target);
    const auto joint = tensor_product(std::vector<StabilizerCode>{*control, *target}, "joint");
    const Circuit bare = cross_code_circuit(plan, false);
    const auto action = induced_logical_action(bare, joint);
    const bool tableau = action.action && *action.action == logical_gate_action(GateKind::CNOT, 2);
    const FaultEngine engine(cross_code_circuit(plan, !o.no_ec), joint);
    CorrectabilityOptions co;
    co.t = o.t ? o.t : 1;
    co.seed = o.seed;
    co.timing = o.timing;
    const auto fr = correctable(engine, co);
    ordered_json res = {{"control", o.control},
                        {"target", o.target},
                        {"cnots", plan.cnots.size()},
                        {"piece_sizes", plan.piece_sizes},
                        {"intermediate_ec", !o.no_ec},
                        {"tableau_cnot", tableau}};
    bool pass = tableau && fr.correctable;
    if (o.sv) {
        const auto sv = logical_equiv(bare, joint, target_unitary(GateKind::CNOT, 0.0));
        res["sv_min_fidelity"] = sv.min_fidelity;
        res["sv_equivalent"] = sv.equivalent;
        pass = pass && sv.equivalent;
    }
    res["correctability"] = ordered_json::parse(report_to_json(fr));
    res["verdict"] = pass ? "PASS" : "FAIL";
    rep["config"]["control"] = o.control;
    rep["config"]["target"] = o.target;
    rep["config"]["pieces"] = o.pieces;
    rep["config"]["no_ec"] = o.no_ec;
    rep["result"] = res;
    std::cerr << o.control << " -> " << o.target << ": " << plan.cnots.size() << " CNOTs in " << plan.num_pieces()
              << " pieces, " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kExitPass : kExitClaim;
}

int cmd_verify(const Options& o) {
    ordered_json rep = envelope("verify", verify_config(o), o.seed);
    int rc = kExitUsage;
    try {
        if (o.check == "distance") rc = check_distance(o, rep);
        else if (o.check == "gadget-equiv") rc = check_gadget_equiv(o, rep);
        else if (o.check == "effective-distance") rc = check_effective(o, rep);
        else if (o.check == "cross-code-cnot") rc = check_cross_code(o, rep);
        else throw UsageError("unknown check " + o.check);
    } catch (const BudgetExceeded& e) {
        rep["result"] = {{"verdict", "BUDGET"}, {"error", e.what()}};
        rep["config_hash"] = hex64(fnv1a("verify" + rep["config"].dump()));
        emit(rep.dump(2), o.out);
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    }
    rep["config_hash"] = hex64(fnv1a("verify" + rep["config"].dump()));
    emit(rep.dump(2), o.out);
    return rc;
}

int cmd_table1(const Options& o) {
    const ordered_json config = {{"samples", o.samples}, {"exhaustive_max", 2}};
    ordered_json rep = envelope("table1", config, o.seed);
    EffectiveOptions eo;
    eo.samples = o.samples;
    eo.seed = o.seed;
    eo.timing = o.timing;
    const auto r = reproduce_table1(eo, [](const Table1Cell& c) {
        std::cerr << c.code_id << " " << kind_name(c.gate) << ": " << c.verdict << "\n";
    });
    for (auto& [k, v] : ordered_json::parse(r.json).items()) rep[k] = v;
    std::cout << r.text;
    if (!o.out.empty()) emit(rep.dump(2), o.out);
    return r.pass ? kExitPass : kExitClaim;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ftcc: concatenated-code construction and fault-tolerance verification"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_option("--out", o.out, "Write the report to this file");
        c->add_option("--seed", o.seed, "Sampling seed");
    };
    auto add_spec = [&](CLI::App* c) {
        c->add_option("--spec", o.spec, "Named concatenated code, e.g. hcc-steane-1");
        c->add_option("--json", o.json_path, "Spec or code JSON file");
        c->add_option("--scheme", o.scheme, "HCC or ENUCC")->check(CLI::IsMember({"HCC", "ENUCC"}));
        c->add_option("--c1", o.c1, "Outer code name");
        c->add_option("--case", o.case_tag, "Case tag 1, 2 or 3")->check(CLI::Range(1, 3));
    };

    auto* catalog = app.add_subcommand("catalog", "List base codes and the named concatenated codes");
    add_common(catalog);

    auto* build = app.add_subcommand("build-code", "Emit a code as JSON");
    add_common(build);
    add_spec(build);
    build->add_option("--code", o.code, "Base code name");

    auto* concat = app.add_subcommand("concat", "Emit a flattened concatenated code as JSON");
    add_common(concat);
    add_spec(concat);

    auto* gadget = app.add_subcommand("gadget", "Emit a gadget circuit");
    add_common(gadget);
    add_spec(gadget);
    gadget->add_option("--code", o.code, "Base code name");
    gadget->add_option("--gate", o.gate, "Logical gate")->required();
    gadget->add_option("--theta", o.theta, "ZTHETA angle");

    auto* verify = app.add_subcommand("verify", "Run one check; exit 0 iff it passes");
    add_common(verify);
    add_spec(verify);
    verify->add_option("--check", o.check, "distance | gadget-equiv | effective-distance | cross-code-cnot")
        ->required()
        ->check(CLI::IsMember({"distance", "gadget-equiv", "effective-distance", "cross-code-cnot"}));
    verify->add_option("--code", o.code, "Base code name");
    verify->add_option("--gate", o.gate, "Logical gate");
    verify->add_option("--theta", o.theta, "ZTHETA angle");
    verify->add_option("--wmax", o.wmax, "Largest weight swept by the distance check");
    verify->add_option("--claimed", o.claimed, "Claimed distance (default: stored or tabulated value)");
    verify->add_option("--samples", o.samples, "Sampled patterns for t above the exhaustive limit");
    verify->add_option("--mode", o.mode, "exhaustive | sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    verify->add_option("--control", o.control, "Cross-code CNOT control code");
    verify->add_option("--target", o.target, "Cross-code CNOT target code");
    verify->add_option("--pieces", o.pieces, "Cross-code CNOT piece count (default: fewest fault-tolerant)");
    verify->add_option("--t", o.t, "Fault budget for the cross-code CNOT check");
    verify->add_flag("--no-ec", o.no_ec, "Drop the EC markers between pieces");
    verify->add_flag("--sv", o.sv, "Also run the dense state-vector comparison");
    verify->add_flag("--timing", o.timing, "Record wall-clock runtimes in the report");

    auto* table1 = app.add_subcommand("table1", "Reproduce the effective-distance table");
    add_common(table1);
    table1->add_option("--samples", o.samples, "Sampled patterns per t >= 3 cell");
    table1->add_flag("--timing", o.timing, "Record wall-clock runtimes in the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (catalog->parsed()) return cmd_catalog(o);
        if (build->parsed()) return cmd_build_code(o);
        if (concat->parsed()) return cmd_concat(o);
        if (gadget->parsed()) return cmd_gadget(o);
        if (verify->parsed()) return cmd_verify(o);
        if (table1->parsed()) return cmd_table1(o);
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
