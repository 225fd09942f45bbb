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

#include "ftcc/gadgets.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace ftcc {

std::string Clifford1::name() const {
    if (word.empty()) return "I";
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) s += ".";
        s += kind_name(word[i]);
    }
    return s;
}

const std::vector<Clifford1>& single_qubit_cliffords() {
    static const std::vector<Clifford1> table = [] {
        const GateKind alphabet[] = {GateKind::H,   GateKind::S, GateKind::SDG, GateKind::K,
                                     GateKind::KDG, GateKind::X, GateKind::Y,   GateKind::Z};
        std::vector<Clifford1> out;
        std::map<std::pair<std::string, std::string>, bool> seen;
        std::vector<std::vector<GateKind>> frontier = {{}};
        while (out.size() < 24 && !frontier.empty()) {
            std::vector<std::vector<GateKind>> next;
            for (const auto& w : frontier) {
                Clifford1 c;
                c.word = w;
                c.x_image = parse_pauli("X");
                c.z_image = parse_pauli("Z");
                for (auto k : w) {
                    conjugate_gate(make_gate(k, {0}), c.x_image);
                    conjugate_gate(make_gate(k, {0}), c.z_image);
                }
                auto key = std::make_pair(format_pauli(c.x_image), format_pauli(c.z_image));
                if (!seen.emplace(key, true).second) continue;
                out.push_back(c);
                for (auto k : alphabet) {
                    auto v = w;
                    v.push_back(k);
                    next.push_back(std::move(v));
                }
            }
            frontier = std::move(next);
        }
        if (out.size() != 24) throw std::logic_error("single-qubit Clifford enumeration is incomplete");
        return out;
    }();
    return table;
}

LogicalAction logical_gate_action(GateKind kind, std::size_t arity) {
    Circuit c;
    c.n = arity;
    std::vector<std::size_t> qs(arity);
    std::iota(qs.begin(), qs.end(), 0);
    c.add(make_gate(kind, qs));
    return ideal_action(c);
}

Circuit build_transversal(GateKind kind, std::span<const Block> blocks, std::size_t n, double theta) {
    Circuit c;
    c.n = n;
    c.blocks.assign(blocks.begin(), blocks.end());
    const Gate probe = make_gate(kind, {}, theta);
    const bool two = kind == GateKind::CNOT || kind == GateKind::CZ;
    if (two != (blocks.size() == 2) || blocks.empty() || blocks.size() > 2 || probe.is_marker() ||
        kind == GateKind::PERMUTE || kind == GateKind::OPAQUE || kind == GateKind::CCZ || kind == GateKind::CKZ)
        throw std::invalid_argument("build_transversal: " + std::string(kind_name(kind)) + " needs " +
                                    (two ? "two blocks" : "one block"));
    if (two) {
        if (blocks[0].qubits.size() != blocks[1].qubits.size())
            throw std::invalid_argument("build_transversal: block sizes differ");
        for (std::size_t i = 0; i < blocks[0].qubits.size(); ++i)
            c.add(make_gate(kind, {blocks[0].qubits[i], blocks[1].qubits[i]}));
    } else {
        for (auto q : blocks[0].qubits) c.add(make_gate(kind, {q}, theta));
    }
    c.check();
    return c;
}

namespace {

/// Logical Pauli P with P A_i P^dagger = T_i for every image, or nullopt
/// when A and T differ beyond signs.
std::optional<PauliOperator> sign_fix(const LogicalAction& a, const LogicalAction& t) {
    if (a.images.size() != t.images.size()) return std::nullopt;
    for (std::size_t i = 0; i < a.images.size(); ++i)
        if (!a.images[i].equal_up_to_phase(t.images[i])) return std::nullopt;
    const std::size_t k = a.images.size() / 2;
    const std::size_t total = std::size_t{1} << (2 * k);
    for (std::size_t m = 0; m < total; ++m) {
        PauliOperator p(k);
        for (std::size_t j = 0; j < k; ++j) {
            if ((m >> (2 * j)) & 1) p.x().set(j);
            if ((m >> (2 * j + 1)) & 1) p.z().set(j);
        }
        bool ok = true;
        for (std::size_t i = 0; i < a.images.size() && ok; ++i) {
            const bool flip = a.images[i].phase() != t.images[i].phase();
            ok = commutes(p, a.images[i]) != flip;
        }
        if (ok) return p;
    }
    return std::nullopt;
}

/// Appends single-qubit Pauli gates for the physical representative of a
/// k-qubit logical Pauli.
void append_logical_pauli(Circuit& c, const StabilizerCode& code, const PauliOperator& lp) {
    PauliOperator phys(code.n);
    for (std::size_t j = 0; j < code.k; ++j) {
        if (lp.x().get(j)) phys.xor_letters(code.logical_x[j]);
        if (lp.z().get(j)) phys.xor_letters(code.logical_z[j]);
    }
    for (std::size_t q = 0; q < code.n; ++q) {
        const char l = phys.letter(q);
        if (l != 'I') c.add(make_gate(*kind_from_name(std::string(1, l)), {q}));
    }
}

std::optional<Circuit> finish_with_fix(Circuit c, const StabilizerCode& code, const LogicalAction& target) {
    const auto r = induced_logical_action(c, code);
    if (!r.action) return std::nullopt;
    const auto fix = sign_fix(*r.action, target);
    if (!fix) return std::nullopt;
    append_logical_pauli(c, code, *fix);
    const auto check = induced_logical_action(c, code);
    if (!check.action || *check.action != target) throw std::logic_error("logical Pauli sign fix failed");
    return c;
}

PauliOperator image_of(const Clifford1& c, char letter) {
    if (letter == 'X') return c.x_image;
    if (letter == 'Z') return c.z_image;
    PauliOperator y = c.x_image * c.z_image;
    y.set_phase(y.phase() + 1);
    return y;
}

Gate rotation_gate(std::size_t k, double theta, std::vector<std::size_t> qubits) {
    const double pi = std::numbers::pi;
    auto near = [&](double v) { return std::abs(std::remainder(theta - v, 2 * pi)) < 1e-12; };
    if (k == 0) {
        if (near(pi / 4)) return make_gate(GateKind::T, std::move(qubits));
        if (near(-pi / 4)) return make_gate(GateKind::TDG, std::move(qubits));
        if (near(pi / 2)) return make_gate(GateKind::S, std::move(qubits));
        if (near(-pi / 2)) return make_gate(GateKind::SDG, std::move(qubits));
        return make_gate(GateKind::ZTHETA, std::move(qubits), theta);
    }
    if (k == 1 && near(pi)) return make_gate(GateKind::CZ, std::move(qubits));
    if (k == 2 && near(pi)) return make_gate(GateKind::CCZ, std::move(qubits));
    return make_gate(GateKind::CKZ, std::move(qubits), theta);
}

Circuit copies_layout(const CodePtr& code, std::size_t copies) {
    Circuit c;
    c.n = code->n * copies;
    for (std::size_t b = 0; b < copies; ++b) {
        Block blk{"b" + std::to_string(b), code, {}};
        for (std::size_t q = 0; q < code->n; ++q) blk.qubits.push_back(b * code->n + q);
        c.blocks.push_back(std::move(blk));
    }
    return c;
}

}  // namespace

std::optional<Circuit> find_transversal_clifford(const StabilizerCode& code, const LogicalAction& target) {
    if (code.k != 1 || target.images.size() != 2) throw std::invalid_argument("single-qubit logical target expected");
    for (const auto& cl : single_qubit_cliffords()) {
        Circuit c;
        c.n = code.n;
        for (std::size_t q = 0; q < code.n; ++q)
            for (auto k : cl.word) c.add(make_gate(k, {q}));
        if (auto done = finish_with_fix(std::move(c), code, target)) return done;
    }
    return std::nullopt;
}

std::optional<Circuit> find_transversal_two_block(GateKind kind, const StabilizerCode& a, const StabilizerCode& b) {
    if (kind != GateKind::CNOT && kind != GateKind::CZ) throw std::invalid_argument("CNOT or CZ expected");
    if (a.n != b.n || a.k != 1 || b.k != 1) return std::nullopt;
    std::vector<StabilizerCode> parts = {a, b};
    const auto joint = tensor_product(parts, a.name + "+" + b.name);
    Circuit c;
    c.n = 2 * a.n;
    for (std::size_t q = 0; q < a.n; ++q) c.add(make_gate(kind, {q, q + a.n}));
    return finish_with_fix(std::move(c), joint, logical_gate_action(kind, 2));
}

std::optional<DiagonalRealization> find_transversal_diagonal(const StabilizerCode& code, std::size_t k, double theta) {
    if (code.k != 1 || code.n > 64) return std::nullopt;
    std::vector<std::uint64_t> span = {0};
    for (const auto& g : code.generators) {
        if (g.phase() != 0) return std::nullopt;
        if (g.z().none()) {
            const std::uint64_t w = g.x().word(0);
            const std::size_t m = span.size();
            for (std::size_t i = 0; i < m; ++i) span.push_back(span[i] ^ w);
        } else if (!g.x().none()) {
            return std::nullopt;
        }
    }
    const auto& xl = code.logical_x[0];
    const auto& zl = code.logical_z[0];
    if (!xl.z().none() || !zl.x().none() || xl.phase() != 0 || zl.phase() != 0) return std::nullopt;
    const std::uint64_t xbits = xl.x().word(0);
    // Basis words of |a_L> are s + a X_L; the physical rotation contributes
    // phi per position where every block word has a one.
    const std::size_t per = 2 * span.size();
    std::size_t total = 1;
    for (std::size_t b = 0; b <= k; ++b) {
        if (total > (std::size_t{1} << 24) / per) return std::nullopt;
        total *= per;
    }
    for (double phi : {theta, -theta}) {
        bool ok = true;
        std::optional<double> offset;
        for (std::size_t idx = 0; idx < total && ok; ++idx) {
            std::size_t rest = idx;
            std::uint64_t all = ~std::uint64_t{0};
            bool logical_all = true;
            for (std::size_t b = 0; b <= k; ++b) {
                const std::size_t e = rest % per;
                rest /= per;
                const bool a = e >= span.size();
                const std::uint64_t word = span[e % span.size()] ^ (a ? xbits : 0);
                all &= word;
                logical_all = logical_all && a;
            }
            const double phase = phi * std::popcount(all) - (logical_all ? theta : 0.0);
            if (!offset) {
                offset = phase;
            } else if (std::abs(std::remainder(phase - *offset, 2 * std::numbers::pi)) > 1e-9) {
                ok = false;
            }
        }
        if (ok) return DiagonalRealization{phi};
    }
    return std::nullopt;
}

ActiveSet default_active_set(const StabilizerCode& code) {
    if (code.name == "five_qubit") return ActiveSet{{0, 2, 4}, 2};
    ActiveSet a;
    a.qubits = code.logical_z[0].support();
    if (a.qubits.empty()) throw std::invalid_argument("logical Z has empty support");
    a.target = a.qubits.back();
    return a;
}

CkzGadget build_ckz_gadget(CodePtr code, std::size_t k, double theta, std::optional<ActiveSet> active, bool verify,
                           const SvBudget& budget) {
    if (!code || code->k != 1) throw std::invalid_argument("build_ckz_gadget needs a k = 1 code");
    CkzGadget g;
    g.code = code;
    g.k = k;
    g.theta = theta;
    g.active = active ? *active : default_active_set(*code);
    auto& act = g.active;
    std::sort(act.qubits.begin(), act.qubits.end());
    if (!std::binary_search(act.qubits.begin(), act.qubits.end(), act.target))
        throw std::invalid_argument("rotation target is not an active qubit");
    auto rep = min_weight_coset_rep(*code, code->logical_z[0], act.qubits);
    if (!rep || rep->support() != act.qubits)
        throw std::invalid_argument("no logical Z representative supported exactly on the active set");
    g.z_rep = *rep;
    const std::size_t n = code->n, copies = k + 1;

    // Local Clifford per active factor; the first non-target qubit also
    // absorbs a negative sign.
    std::vector<std::size_t> chain;
    for (auto q : act.qubits)
        if (q != act.target) chain.push_back(q);
    chain.push_back(act.target);
    const bool negative = g.z_rep.phase() == 2;
    std::vector<std::pair<std::size_t, std::vector<GateKind>>> words;
    for (auto q : act.qubits) {
        const bool flip = negative && q == chain.front();
        const PauliOperator want = parse_pauli(flip ? "-Z" : "Z");
        const char f = g.z_rep.letter(q);
        for (const auto& cl : single_qubit_cliffords()) {
            if (image_of(cl, f) == want) {
                if (!cl.word.empty()) words.emplace_back(q, cl.word);
                break;
            }
        }
    }

    g.lc = copies_layout(code, copies);
    g.staircase = copies_layout(code, copies);
    g.rotation = copies_layout(code, copies);
    g.full = copies_layout(code, copies);
    for (std::size_t b = 0; b < copies; ++b)
        for (const auto& [q, w] : words)
            for (auto kind : w) g.lc.add(make_gate(kind, {b * n + q}));
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        for (std::size_t b = 0; b < copies; ++b) g.staircase.add(make_gate(GateKind::CNOT, {b * n + chain[i], b * n + chain[i + 1]}));
    std::vector<std::size_t> targets;
    for (std::size_t b = 0; b < copies; ++b) targets.push_back(b * n + act.target);
    g.rotation.add(rotation_gate(k, theta, targets));

    auto push_step = [&](const std::vector<Gate>& gates) {
        if (gates.empty()) return;
        const std::size_t begin = g.full.gates.size();
        for (const auto& x : gates) g.full.add(x);
        g.steps.emplace_back(begin, g.full.gates.size());
    };
    push_step(g.lc.gates);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
        push_step({g.staircase.gates.begin() + i * copies, g.staircase.gates.begin() + (i + 1) * copies});
    push_step(g.rotation.gates);
    for (std::size_t i = chain.size() - 1; i-- > 0;)
        push_step({g.staircase.gates.begin() + i * copies, g.staircase.gates.begin() + (i + 1) * copies});
    push_step(inverse(g.lc).gates);
    g.full.check();

    if (verify) {
        std::vector<StabilizerCode> parts(copies, *code);
        const auto joint = tensor_product(parts, code->name + "^" + std::to_string(copies));
        bool fits = joint.n <= budget.max_qubits;
        if (fits) {
            try {
                budget.require(joint.n, 4);
            } catch (const BudgetExceeded&) {
                fits = false;
            }
        }
        if (fits) {
            Circuit logical;
            logical.n = copies;
            std::vector<std::size_t> all(copies);
            std::iota(all.begin(), all.end(), 0);
            logical.add(rotation_gate(k, theta, all));
            g.oracle = logical_equiv(g.full, joint, logical_unitary(logical), 1e-9, budget);
            if (!g.oracle->equivalent)
                throw std::logic_error("C^kZ gadget disagrees with the logical target: " + g.oracle->violation);
        }
    }
    return g;
}

Circuit build_permutation_h_5q() {
    const auto five = base_code("five_qubit");
    const auto target = logical_gate_action(GateKind::H);
    std::vector<std::size_t> movable = {0, 1, 3, 4};
    std::vector<std::vector<std::size_t>> cycles, others;
    std::vector<std::size_t> p = movable;
    do {
        std::vector<std::size_t> perm = {0, 1, 2, 3, 4};
        for (std::size_t i = 0; i < 4; ++i) perm[movable[i]] = p[i];
        if (p == movable) continue;
        // Length of the orbit of q1 tells 4-cycles apart.
        std::size_t len = 1;
        for (std::size_t q = perm[0]; q != 0; q = perm[q]) ++len;
        (len == 4 ? cycles : others).push_back(perm);
    } while (std::next_permutation(p.begin(), p.end()));
    cycles.insert(cycles.end(), others.begin(), others.end());
    for (const auto& perm : cycles) {
        for (const auto& cl : single_qubit_cliffords()) {
            Circuit c;
            c.n = 5;
            for (std::size_t q = 0; q < 5; ++q)
                for (auto k : cl.word) c.add(make_gate(k, {q}));
            c.add(make_permute({0, 1, 2, 3, 4}, perm));
            if (auto done = finish_with_fix(std::move(c), *five, target)) {
                done->blocks.push_back(Block{"b0", five, {0, 1, 2, 3, 4}});
                return *done;
            }
        }
    }
    throw std::logic_error("no permutation-transversal H found for the five-qubit code");
}

CrossCodeCnotPlan build_cross_code_cnot(CodePtr control, CodePtr target, std::optional<std::size_t> pieces) {
    if (!control || !target || control->k != 1 || target->k != 1)
        throw std::invalid_argument("cross-code CNOT needs two k = 1 codes");
    CrossCodeCnotPlan plan;
    plan.control_code = control;
    plan.target_code = target;
    const auto& zl = control->logical_z[0];
    const auto& xl = target->logical_x[0];
    if (!zl.x().none() || !xl.z().none())
        throw std::invalid_argument("cross-code CNOT needs a Z-type control and X-type target logical");
    plan.sz_support = zl.support();
    plan.sx_support = xl.support();
    const std::size_t c = plan.sz_support.size(), m = plan.sx_support.size();
    const std::size_t rounds = std::max(c, m);
    const std::size_t per_round = std::min(c, m);
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t i = 0; i < per_round; ++i) {
            if (c <= m) {
                plan.cnots.emplace_back(plan.sz_support[i], plan.sx_support[(i + r) % m]);
            } else {
                plan.cnots.emplace_back(plan.sz_support[(i + r) % c], plan.sx_support[i]);
            }
        }
    }
    const std::size_t dc = control->claimed_distance.value_or(3), dt = target->claimed_distance.value_or(3);
    std::size_t p = pieces.value_or(std::max<std::size_t>(1, std::min(dc, dt) - 1));
    if (p == 0 || p > plan.cnots.size()) throw std::invalid_argument("piece count out of range");
    if (p <= rounds) {
        for (std::size_t i = 0; i < p; ++i) plan.piece_sizes.push_back((rounds / p + (i < rounds % p)) * per_round);
    } else {
        const std::size_t total = plan.cnots.size();
        for (std::size_t i = 0; i < p; ++i) plan.piece_sizes.push_back(total / p + (i < total % p));
    }

    std::vector<StabilizerCode> parts = {*control, *target};
    const auto joint = tensor_product(parts, control->name + "+" + target->name);
    Circuit prefix;
    prefix.n = joint.n;
    std::size_t at = 0;
    for (std::size_t piece = 0; piece + 1 < p; ++piece) {
        for (std::size_t j = 0; j < plan.piece_sizes[piece]; ++j, ++at)
            prefix.add(make_gate(GateKind::CNOT, {plan.cnots[at].first, control->n + plan.cnots[at].second}));
        auto inter = std::make_shared<StabilizerCode>(joint);
        inter->name = "intermediate-" + std::to_string(piece + 1);
        inter->claimed_distance.reset();
        for (auto& gen : inter->generators) gen = conjugate_clifford(prefix, gen);
        for (auto& l : inter->logical_x) l = conjugate_clifford(prefix, l);
        for (auto& l : inter->logical_z) l = conjugate_clifford(prefix, l);
        plan.intermediate.push_back(std::move(inter));
    }
    const auto r = induced_logical_action(cross_code_circuit(plan, false), joint);
    if (!r.action || *r.action != logical_gate_action(GateKind::CNOT, 2))
        throw std::logic_error("round-robin circuit does not implement logical CNOT: " + r.violation);
    return plan;
}

Circuit cross_code_circuit(const CrossCodeCnotPlan& plan, bool with_ec) {
    const std::size_t nc = plan.control_code->n, nt = plan.target_code->n;
    Circuit c;
    c.n = nc + nt;
    Block cb{"control", plan.control_code, {}}, tb{"target", plan.target_code, {}};
    for (std::size_t q = 0; q < nc; ++q) cb.qubits.push_back(q);
    for (std::size_t q = 0; q < nt; ++q) tb.qubits.push_back(nc + q);
    c.blocks = {cb, tb};
    std::size_t at = 0;
    for (std::size_t piece = 0; piece < plan.piece_sizes.size(); ++piece) {
        if (piece > 0) {
            c.add(make_piece());
            if (with_ec) c.add(make_ec({0, 1}, plan.intermediate[piece - 1]));
        }
        for (std::size_t j = 0; j < plan.piece_sizes[piece]; ++j, ++at)
            c.add(make_gate(GateKind::CNOT, {plan.cnots[at].first, nc + plan.cnots[at].second}));
    }
    c.check();
    return c;
}

std::optional<std::vector<std::pair<std::size_t, std::size_t>>> search_reduced_cross_code_cnot(
    const CrossCodeCnotPlan& plan, std::size_t max_removed) {
    std::vector<StabilizerCode> parts = {*plan.control_code, *plan.target_code};
    const auto joint = tensor_product(parts, "joint");
    const auto want = logical_gate_action(GateKind::CNOT, 2);
    const std::size_t total = plan.cnots.size(), nc = plan.control_code->n;
    std::optional<std::vector<std::pair<std::size_t, std::size_t>>> best;
    for (std::size_t r = 1; r <= max_removed && r < total; ++r) {
        std::vector<std::size_t> drop(r);
        std::iota(drop.begin(), drop.end(), 0);
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> kept;
            std::size_t d = 0;
            for (std::size_t i = 0; i < total; ++i) {
                if (d < r && drop[d] == i) {
                    ++d;
                    continue;
                }
                kept.push_back(plan.cnots[i]);
            }
            Circuit c;
            c.n = joint.n;
            for (const auto& [a, b] : kept) c.add(make_gate(GateKind::CNOT, {a, nc + b}));
            const auto res = induced_logical_action(c, joint);
            if (res.action && *res.action == want) {
                best = std::move(kept);
                break;
            }
            std::size_t i = r;
            while (i > 0 && drop[i - 1] == total - r + i - 1) --i;
            if (i == 0) break;
            ++drop[i - 1];
            for (std::size_t j = i; j < r; ++j) drop[j] = drop[j - 1] + 1;
        }
    }
    return best;
}

std::string_view lowering_name(Lowering l) {
    switch (l) {
        case Lowering::Transversal: return "transversal";
        case Lowering::CrossCodeCnot: return "cross-code-cnot";
        case Lowering::OpaqueConverter: return "opaque-converter";
        case Lowering::OpaqueBlockGate: return "opaque-block-gate";
        case Lowering::Physical: return "physical";
    }
    return "?";
}

std::vector<std::size_t> GadgetPlan::s1_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s1.size(); ++i)
        if (s1[i]) out.push_back(i);
    return out;
}

std::vector<std::size_t> GadgetPlan::s2_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < s1.size(); ++i)
        if (!s1[i]) out.push_back(i);
    return out;
}

bool permutation_h_applicable(const std::vector<CodePtr>& assignment) {
    if (assignment.size() != 5) return false;
    const Circuit h = build_permutation_h_5q();
    for (const auto& g : h.gates) {
        if (g.kind != GateKind::PERMUTE) continue;
        for (std::size_t i = 0; i < g.qubits.size(); ++i) {
            const auto& a = assignment[g.qubits[i]];
            const auto& b = assignment[g.qubits[g.perm[i]]];
            if ((a == nullptr) != (b == nullptr)) return false;
            if (a && a->generators != b->generators) return false;
        }
    }
    return true;
}

namespace {

bool single_qubit_clifford_kind(GateKind k) {
    using enum GateKind;
    return k == H || k == S || k == SDG || k == K || k == KDG || k == X || k == Y || k == Z;
}

Lowering lower_gate(const Gate& g, const std::vector<CodePtr>& assignment) {
    const std::size_t n1 = assignment.size();
    if (g.kind == GateKind::PERMUTE) return Lowering::Transversal;
    std::vector<CodePtr> codes;
    bool any = false, all = true;
    for (auto q : g.qubits) {
        codes.push_back(assignment[q % n1]);
        any = any || codes.back();
        all = all && codes.back();
    }
    if (!any) return Lowering::Physical;
    if (!all) throw std::invalid_argument(std::string(kind_name(g.kind)) + " mixes encoded and unencoded qubits");
    if (single_qubit_clifford_kind(g.kind)) {
        return find_transversal_clifford(*codes[0], logical_gate_action(g.kind)) ? Lowering::Transversal
                                                                                 : Lowering::OpaqueBlockGate;
    }
    if (g.kind == GateKind::CZ && codes[0]->generators == codes[1]->generators &&
        find_transversal_two_block(g.kind, *codes[0], *codes[1]))
        return Lowering::Transversal;
    if (g.kind == GateKind::CNOT) {
        if (codes[0]->generators == codes[1]->generators) {
            if (find_transversal_two_block(g.kind, *codes[0], *codes[1])) return Lowering::Transversal;
            throw std::invalid_argument("no transversal CNOT on " + codes[0]->name);
        }
        if (g.kind == GateKind::CNOT && is_css(*codes[0]) && is_css(*codes[1])) return Lowering::CrossCodeCnot;
        throw std::invalid_argument("no cross-code strategy for " + codes[0]->name + " / " + codes[1]->name);
    }
    if (g.is_diagonal()) {
        for (const auto& c : codes)
            if (c->generators != codes[0]->generators)
                throw std::invalid_argument("multi-block rotation over different inner codes");
        const std::size_t k = g.qubits.size() - 1;
        const double theta = rotation_angle(g);
        if (find_transversal_diagonal(*codes[0], k, theta)) return Lowering::Transversal;
        if (find_transversal_diagonal(*base_code("rm15"), k, theta)) return Lowering::OpaqueConverter;
    }
    throw std::invalid_argument("missing lowering strategy for " + std::string(kind_name(g.kind)));
}

}  // namespace

double rotation_angle(const Gate& g) {
    using enum GateKind;
    switch (g.kind) {
        case T: return std::numbers::pi / 4;
        case TDG: return -std::numbers::pi / 4;
        case S: return std::numbers::pi / 2;
        case SDG: return -std::numbers::pi / 2;
        case Z:
        case CZ:
        case CCZ: return std::numbers::pi;
        case ZTHETA:
        case CKZ: return g.theta;
        default: break;
    }
    throw std::invalid_argument(std::string(kind_name(g.kind)) + " is not a controlled phase");
}

Gate controlled_phase_gate(std::size_t k, double theta, std::vector<std::size_t> qubits) {
    return rotation_gate(k, theta, std::move(qubits));
}

GadgetPlan assemble_gate_plan(CodePtr c1, GateKind gate, const std::vector<CodePtr>& assignment) {
    using enum GateKind;
    if (gate != H && gate != K && gate != S && gate != T && gate != CZ && gate != CCZ)
        throw std::invalid_argument(std::string(kind_name(gate)) + " is not in the gate library");
    if (!c1 || assignment.size() != c1->n) throw std::invalid_argument("assignment must cover every C1 qubit");
    GadgetPlan plan;
    plan.gate = gate;
    plan.c1 = c1;
    plan.assignment = assignment;
    plan.copies = gate == CZ ? 2 : gate == CCZ ? 3 : 1;
    const double pi = std::numbers::pi;

    auto single_step = [&](Circuit c) {
        plan.level1 = copies_layout(c1, plan.copies);
        for (auto& g : c.gates) plan.level1.add(std::move(g));
        if (!plan.level1.gates.empty()) plan.steps.emplace_back(0, plan.level1.gates.size());
    };
    auto from_gadget = [&](std::size_t k, double theta) {
        auto g = build_ckz_gadget(c1, k, theta, {}, false);
        plan.level1 = g.full;
        plan.steps = g.steps;
    };

    std::optional<Circuit> transversal;
    if (gate == CZ) {
        transversal = find_transversal_two_block(CZ, *c1, *c1);
    } else if (gate == H || gate == K || gate == S) {
        transversal = find_transversal_clifford(*c1, logical_gate_action(gate));
    }
    if (transversal) {
        single_step(std::move(*transversal));
    } else if (gate == H || gate == S) {
        const bool perm_ok = c1->name == "five_qubit" && permutation_h_applicable(assignment);
        if (gate == H && !perm_ok) {
            plan.applicable = false;
            plan.reason = perm_ok || c1->name != "five_qubit"
                              ? "no transversal H on " + c1->name
                              : "H relabeling would move qubits between different inner codes";
            return plan;
        }
        if (gate == H) {
            single_step(build_permutation_h_5q());
        } else if (perm_ok) {
            // S = K H: permuted H, then transversal K, as one step.
            Circuit c = build_permutation_h_5q();
            auto k = find_transversal_clifford(*c1, logical_gate_action(K));
            if (!k) throw std::logic_error("five-qubit code lost its transversal K");
            c.blocks.clear();
            for (const auto& g : k->gates) c.add(g);
            const auto check = induced_logical_action(c, *c1);
            if (!check.action || *check.action != logical_gate_action(S))
                throw std::logic_error("K H does not implement logical S");
            single_step(std::move(c));
        } else {
            from_gadget(0, pi / 2);
        }
    } else if (gate == K) {
        plan.applicable = false;
        plan.reason = "no transversal K on " + c1->name;
        return plan;
    } else if (gate == T) {
        from_gadget(0, pi / 4);
    } else if (gate == CZ) {
        from_gadget(1, pi);
    } else {
        from_gadget(2, pi);
    }

    for (const auto& g : plan.level1.gates) {
        const Lowering l = lower_gate(g, assignment);
        plan.lowering.push_back(l);
        plan.s1.push_back(l != Lowering::Transversal && l != Lowering::Physical);
    }
    return plan;
}

}  // namespace ftcc
