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

#include "ftcc/concat.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ftcc/ftverify.hpp"
#include "json.hpp"

namespace ftcc {

std::string_view scheme_name(Scheme s) { return s == Scheme::HCC ? "HCC" : "ENUCC"; }

ConcatSpec make_spec(Scheme scheme, const std::string& c1_name, int case_tag) {
    if (case_tag < 1 || case_tag > 3) throw std::invalid_argument("case must be 1, 2 or 3");
    ConcatSpec spec;
    spec.scheme = scheme;
    spec.c1 = base_code(c1_name);
    if (c1_name == "steane" && case_tag == 2) case_tag = 3;
    spec.case_tag = case_tag;
    const ActiveSet active = default_active_set(*spec.c1);
    const auto steane = base_code("steane");
    spec.assignment.assign(spec.c1->n, nullptr);
    for (std::size_t q = 0; q < spec.c1->n; ++q) {
        const bool is_active = std::binary_search(active.qubits.begin(), active.qubits.end(), q);
        if (is_active) {
            spec.assignment[q] = scheme == Scheme::ENUCC && q == active.target ? base_code("rm15") : steane;
        } else if (case_tag == 2) {
            spec.assignment[q] = spec.c1;
        } else if (case_tag == 3) {
            spec.assignment[q] = steane;
        }
    }
    std::string c1_short = c1_name == "five_qubit" ? "five" : c1_name;
    spec.id = std::string(scheme == Scheme::HCC ? "hcc-" : "enucc-") + c1_short + "-" + std::to_string(case_tag);
    return spec;
}

const std::vector<ConcatSpec>& named_specs() {
    static const std::vector<ConcatSpec> specs = [] {
        std::vector<ConcatSpec> out;
        for (auto scheme : {Scheme::HCC, Scheme::ENUCC}) {
            out.push_back(make_spec(scheme, "steane", 1));
            out.push_back(make_spec(scheme, "steane", 3));
            for (int c = 1; c <= 3; ++c) out.push_back(make_spec(scheme, "five_qubit", c));
        }
        return out;
    }();
    return specs;
}

ConcatSpec named_spec(const std::string& id) {
    std::string key = id;
    if (key == "hcc-steane-2") key = "hcc-steane-3";
    if (key == "enucc-steane-2") key = "enucc-steane-3";
    for (const auto& s : named_specs())
        if (s.id == key) return s;
    throw std::invalid_argument("unknown concatenated code '" + id + "'");
}

ConcatSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("spec JSON: ") + e.what());
    }
    try {
        const std::string scheme = j.at("scheme").get<std::string>();
        Scheme s;
        if (scheme == "HCC" || scheme == "hcc") {
            s = Scheme::HCC;
        } else if (scheme == "ENUCC" || scheme == "enucc") {
            s = Scheme::ENUCC;
        } else {
            throw std::invalid_argument("unknown scheme '" + scheme + "'");
        }
        ConcatSpec spec = make_spec(s, j.at("c1").get<std::string>(), j.at("case").get<int>());
        if (j.contains("assignment")) {
            for (const auto& [k, v] : j.at("assignment").items()) {
                const std::size_t q = std::stoul(k);
                if (q >= spec.assignment.size()) throw std::invalid_argument("assignment qubit " + k + " out of range");
                const std::string name = v.get<std::string>();
                spec.assignment[q] = name == "unencoded" ? nullptr : base_code(name);
            }
            spec.id += "-custom";
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("spec JSON: ") + e.what());
    }
}

namespace {

PauliOperator inner_rep(const CodePtr& code, char letter) {
    if (letter == 'X') return code->logical_x[0];
    if (letter == 'Z') return code->logical_z[0];
    PauliOperator y = code->logical_x[0] * code->logical_z[0];
    y.set_phase(y.phase() + 1);
    return y;
}

}  // namespace

ConcatCode build_concat(const ConcatSpec& spec) {
    if (!spec.c1 || spec.c1->k != 1 || spec.assignment.size() != spec.c1->n)
        throw std::invalid_argument("spec needs a k = 1 C1 and one assignment per C1 qubit");
    ConcatCode cc;
    cc.spec = spec;
    for (std::size_t i = 0; i < spec.c1->n; ++i) {
        const auto& code = spec.assignment[i];
        const std::size_t w = code ? code->n : 1;
        Block b{"q" + std::to_string(i + 1), code, {}};
        for (std::size_t j = 0; j < w; ++j) b.qubits.push_back(cc.physical_n + j);
        cc.qubit_map.push_back(b.qubits);
        cc.blocks.push_back(std::move(b));
        cc.physical_n += w;
    }
    StabilizerCode& c = cc.code;
    c.name = spec.id;
    c.n = cc.physical_n;
    c.k = 1;
    for (const auto& b : cc.blocks)
        if (b.code)
            for (const auto& g : b.code->generators) c.generators.push_back(g.embed(c.n, b.qubits));
    for (const auto& g : spec.c1->generators) c.generators.push_back(lift_operator(cc, g));
    c.logical_x = {lift_operator(cc, spec.c1->logical_x[0])};
    c.logical_z = {lift_operator(cc, spec.c1->logical_z[0])};
    c.claimed_distance = spec.case_tag == 1 ? 5 : 9;
    require_valid(c);
    return cc;
}

PauliOperator lift_operator(const ConcatCode& cc, const PauliOperator& p) {
    if (p.num_qubits() != cc.blocks.size()) throw std::invalid_argument("lift_operator: width is not C1.n");
    PauliOperator out(cc.physical_n);
    out.set_phase(p.phase());
    for (std::size_t i = 0; i < cc.blocks.size(); ++i) {
        const char l = p.letter(i);
        if (l == 'I') continue;
        const auto& b = cc.blocks[i];
        if (!b.code) {
            out.set_letter(b.qubits[0], l);
            continue;
        }
        out *= inner_rep(b.code, l).embed(cc.physical_n, b.qubits);
    }
    return out;
}

StabilizerCode copies_code(const ConcatCode& cc, std::size_t copies) {
    if (copies == 1) return cc.code;
    std::vector<StabilizerCode> parts(copies, cc.code);
    return tensor_product(parts, cc.code.name + "^" + std::to_string(copies));
}

namespace {

/// Builds the physical circuit step by step; one instance per lift.
class Lifter {
   public:
    Lifter(const ConcatCode& cc, const GadgetPlan& plan) : cc_(cc), plan_(plan) {
        const std::size_t N = cc.physical_n;
        out_.n = plan.copies * N;
        for (std::size_t b = 0; b < plan.copies; ++b) {
            for (const auto& blk : cc.blocks) {
                Block nb = blk;
                nb.name = (plan.copies > 1 ? "c" + std::to_string(b) + "." : "") + blk.name;
                for (auto& q : nb.qubits) q += b * N;
                out_.blocks.push_back(std::move(nb));
            }
        }
        data_blocks_ = out_.blocks.size();
    }

    Circuit run() {
        for (const auto& [begin, end] : plan_.steps) {
            std::vector<Lowered> parts;
            for (std::size_t i = begin; i < end; ++i) parts.push_back(lower(i));
            std::size_t depth = 0;
            for (const auto& p : parts) depth = std::max(depth, p.pieces.size());
            for (std::size_t j = 0; j < depth; ++j) {
                if (j > 0) {
                    out_.add(make_piece());
                    for (const auto& p : parts)
                        if (j < p.pieces.size()) out_.add(p.between[j - 1]);
                }
                for (const auto& p : parts)
                    if (j < p.pieces.size())
                        for (const auto& g : p.pieces[j]) out_.add(g);
            }
            for (const auto& p : parts)
                for (const auto& g : p.after) out_.add(g);
        }
        out_.check();
        return std::move(out_);
    }

   private:
    struct Lowered {
        std::vector<std::vector<Gate>> pieces;
        std::vector<Gate> between;  // EC before pieces[j + 1]
        std::vector<Gate> after;    // closes the step
    };

    std::size_t block_of(std::size_t level1_qubit) const { return level1_qubit; }

    const Circuit& transversal_1q(const CodePtr& code, GateKind kind) {
        auto key = std::make_pair(code.get(), kind);
        auto it = cache_1q_.find(key);
        if (it == cache_1q_.end()) {
            auto c = find_transversal_clifford(*code, logical_gate_action(kind));
            if (!c) throw std::logic_error("lost transversal " + std::string(kind_name(kind)) + " on " + code->name);
            it = cache_1q_.emplace(key, std::move(*c)).first;
        }
        return it->second;
    }

    static void remap_into(std::vector<Gate>& dst, const Circuit& c, const std::vector<std::size_t>& qubits) {
        for (Gate g : c.gates) {
            for (auto& q : g.qubits) q = qubits[q];
            dst.push_back(std::move(g));
        }
    }

    Lowered lower(std::size_t index) {
        const Gate& g = plan_.level1.gates[index];
        const Lowering how = plan_.lowering[index];
        Lowered out;
        out.pieces.emplace_back();
        auto& piece = out.pieces.back();
        std::vector<std::size_t> bl;
        for (auto q : g.qubits) bl.push_back(block_of(q));
        switch (how) {
            case Lowering::Physical: {
                Gate p = g;
                for (std::size_t j = 0; j < p.qubits.size(); ++j) p.qubits[j] = out_.blocks[bl[j]].qubits[0];
                piece.push_back(std::move(p));
                return out;
            }
            case Lowering::Transversal: {
                if (g.kind == GateKind::PERMUTE) {
                    Gate p;
                    p.kind = GateKind::PERMUTE;
                    std::vector<std::size_t> offset;
                    for (std::size_t j = 0; j < bl.size(); ++j) {
                        offset.push_back(p.qubits.size());
                        const auto& from = out_.blocks[bl[j]].qubits;
                        p.qubits.insert(p.qubits.end(), from.begin(), from.end());
                    }
                    // Local qubit m of block j moves to local qubit m of block perm[j].
                    for (std::size_t j = 0; j < bl.size(); ++j) {
                        const std::size_t width = out_.blocks[bl[j]].qubits.size();
                        if (out_.blocks[bl[g.perm[j]]].qubits.size() != width)
                            throw std::logic_error("relabeling moves a block onto one of another width");
                        for (std::size_t m = 0; m < width; ++m) p.perm.push_back(offset[g.perm[j]] + m);
                    }
                    piece.push_back(std::move(p));
                    return out;
                }
                const CodePtr& code = out_.blocks[bl[0]].code;
                using enum GateKind;
                const GateKind k = g.kind;
                if (k == H || k == S || k == SDG || k == K || k == KDG || k == X || k == Y || k == Z) {
                    remap_into(piece, transversal_1q(code, g.kind), out_.blocks[bl[0]].qubits);
                    return out;
                }
                if (k == CNOT || k == CZ) {
                    if (auto c = find_transversal_two_block(g.kind, *code, *out_.blocks[bl[1]].code)) {
                        std::vector<std::size_t> qs = out_.blocks[bl[0]].qubits;
                        const auto& second = out_.blocks[bl[1]].qubits;
                        qs.insert(qs.end(), second.begin(), second.end());
                        remap_into(piece, *c, qs);
                        return out;
                    }
                    if (k == CNOT) throw std::logic_error("lost transversal CNOT");
                }
                emit_rotation(piece, g, bl);
                return out;
            }
            case Lowering::CrossCodeCnot: {
                const CodePtr& cc = out_.blocks[bl[0]].code;
                const CodePtr& tc = out_.blocks[bl[1]].code;
                const auto& plan = cross_plan(cc, tc);
                const auto& cq = out_.blocks[bl[0]].qubits;
                const auto& tq = out_.blocks[bl[1]].qubits;
                std::size_t at = 0;
                for (std::size_t p = 0; p < plan.piece_sizes.size(); ++p) {
                    if (p > 0) {
                        out.pieces.emplace_back();
                        out.between.push_back(make_ec({bl[0], bl[1]}, plan.intermediate[p - 1]));
                    }
                    for (std::size_t j = 0; j < plan.piece_sizes[p]; ++j, ++at)
                        out.pieces.back().push_back(
                            make_gate(GateKind::CNOT, {cq[plan.cnots[at].first], tq[plan.cnots[at].second]}));
                }
                out.after.push_back(make_ec({bl[0], bl[1]}));
                return out;
            }
            case Lowering::OpaqueBlockGate: {
                const auto& blk = out_.blocks[bl[0]];
                piece.push_back(make_opaque(std::string(kind_name(g.kind)), bl[0], bl[0], OpaqueMode::Arbitrary,
                                            blk.qubits));
                return out;
            }
            case Lowering::OpaqueConverter: {
                const auto rm = base_code("rm15");
                std::vector<std::size_t> rm_blocks;
                for (auto b : bl) {
                    const auto& src = out_.blocks[b];
                    if (src.code->n > rm->n) throw std::logic_error("converter source larger than rm15");
                    Block target{src.name + ".rm", rm, src.qubits};
                    for (std::size_t j = src.qubits.size(); j < rm->n; ++j) target.qubits.push_back(out_.n++);
                    rm_blocks.push_back(out_.blocks.size());
                    out_.blocks.push_back(target);
                    piece.push_back(make_opaque("CC", b, rm_blocks.back(), OpaqueMode::Converter, target.qubits));
                }
                std::vector<std::size_t> tmp = rm_blocks;
                emit_rotation(piece, g, tmp);
                for (std::size_t j = 0; j < bl.size(); ++j)
                    piece.push_back(make_opaque("CC'", rm_blocks[j], bl[j], OpaqueMode::Converter,
                                                out_.blocks[rm_blocks[j]].qubits));
                return out;
            }
        }
        throw std::logic_error("unhandled lowering");
    }

    void emit_rotation(std::vector<Gate>& piece, const Gate& g, const std::vector<std::size_t>& blocks) {
        const CodePtr& code = out_.blocks[blocks[0]].code;
        const std::size_t k = g.qubits.size() - 1;
        const double theta = rotation_angle(g);
        const auto real = find_transversal_diagonal(*code, k, theta);
        if (!real) throw std::logic_error("no transversal rotation on " + code->name);
        for (std::size_t m = 0; m < code->n; ++m) {
            std::vector<std::size_t> qs;
            for (auto b : blocks) qs.push_back(out_.blocks[b].qubits[m]);
            piece.push_back(controlled_phase_gate(k, real->physical_theta, std::move(qs)));
        }
    }

    const CrossCodeCnotPlan& cross_plan(const CodePtr& c, const CodePtr& t) {
        auto key = std::make_pair(c.get(), t.get());
        auto it = cross_.find(key);
        if (it == cross_.end()) it = cross_.emplace(key, fault_tolerant_cross_code_cnot(c, t)).first;
        return it->second;
    }

    const ConcatCode& cc_;
    const GadgetPlan& plan_;
    Circuit out_;
    std::size_t data_blocks_ = 0;
    std::map<std::pair<const StabilizerCode*, GateKind>, Circuit> cache_1q_;
    std::map<std::pair<const StabilizerCode*, const StabilizerCode*>, CrossCodeCnotPlan> cross_;
};

}  // namespace

Circuit lift_gadget(const ConcatCode& cc, const GadgetPlan& plan) {
    if (plan.c1 != cc.spec.c1 || plan.assignment.size() != cc.blocks.size())
        throw std::invalid_argument("plan was built for a different C1");
    for (std::size_t i = 0; i < cc.blocks.size(); ++i)
        if (plan.assignment[i] != cc.blocks[i].code) throw std::invalid_argument("plan assignment differs from spec");
    if (!plan.applicable) throw std::invalid_argument("inapplicable: " + plan.reason);
    return Lifter(cc, plan).run();
}

OverallDistanceReport overall_distance_check(const ConcatCode& cc, std::size_t w_exhaustive, std::uint64_t budget) {
    OverallDistanceReport rep;
    rep.w_exhaustive = w_exhaustive;
    if (auto r = min_logical_weight(cc.code, w_exhaustive, TypeFilter::Any, budget)) rep.low_weight_logical = r->witness;

    // Cheapest lifted C1 logical: each letter on a block costs that block's
    // lightest representative of the letter.
    const auto& c1 = *cc.spec.c1;
    std::map<std::pair<std::size_t, char>, PauliOperator> reps;
    for (std::size_t i = 0; i < cc.blocks.size(); ++i) {
        const auto& b = cc.blocks[i];
        for (char l : {'X', 'Y', 'Z'}) {
            PauliOperator r = PauliOperator::single(1, 0, l);
            if (b.code) r = *min_weight_coset_rep(*b.code, inner_rep(b.code, l));
            reps.emplace(std::make_pair(i, l), r.embed(cc.physical_n, b.qubits));
        }
    }
    const std::size_t m = c1.generators.size();
    std::optional<std::size_t> best_cost;
    PauliOperator best;
    PauliOperator y = c1.logical_x[0] * c1.logical_z[0];
    y.set_phase(y.phase() + 1);
    for (const auto& l : {c1.logical_x[0], y, c1.logical_z[0]}) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
            PauliOperator p = l;
            for (std::size_t g = 0; g < m; ++g)
                if ((mask >> g) & 1) p *= c1.generators[g];
            std::size_t cost = 0;
            for (auto q : p.support()) cost += weight(reps.at({q, p.letter(q)}));
            if (!best_cost || cost < *best_cost) {
                best_cost = cost;
                best = PauliOperator(cc.physical_n);
                for (auto q : p.support()) best.xor_letters(reps.at({q, p.letter(q)}));
            }
        }
    }
    rep.witness = best;
    rep.witness_weight = weight(best);
    bool commuting = true;
    for (const auto& g : cc.code.generators) commuting = commuting && commutes(g, best);
    rep.witness_valid = commuting && !in_group(best, cc.code.generators);
    rep.partial = w_exhaustive + 1 < rep.witness_weight;
    return rep;
}

std::string concat_to_json(const ConcatCode& cc) {
    nlohmann::ordered_json j = nlohmann::ordered_json::parse(code_to_json(cc.code));
    nlohmann::ordered_json spec;
    spec["id"] = cc.spec.id;
    spec["scheme"] = scheme_name(cc.spec.scheme);
    spec["c1"] = cc.spec.c1->name;
    spec["case"] = cc.spec.case_tag;
    std::vector<std::string> assignment;
    for (const auto& a : cc.spec.assignment) assignment.push_back(a ? a->name : "unencoded");
    spec["assignment"] = assignment;
    j["spec"] = spec;
    j["qubit_map"] = cc.qubit_map;
    return j.dump(2);
}

}  // namespace ftcc
