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

#include "ftcc/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace ftcc {

namespace {

constexpr double kAngleTol = 1e-12;

// theta / (pi/2) rounded, when theta is (numerically) a multiple of pi/2.
std::optional<int> quarter_turns(double theta) {
    const double q = theta / (std::numbers::pi / 2);
    const double r = std::round(q);
    if (std::abs(q - r) > kAngleTol) return std::nullopt;
    return static_cast<int>(((static_cast<long long>(r) % 4) + 4) % 4);
}

bool is_multiple_of_pi(double theta) {
    auto q = quarter_turns(theta);
    return q && (*q % 2 == 0);
}

struct LocalImages {
    std::size_t arity;
    // images[2j] = U X_j U^dag, images[2j+1] = U Z_j U^dag on the gate's qubits.
    std::vector<PauliOperator> images;
};

LocalImages single(const char* x_img, const char* z_img) {
    return LocalImages{1, {parse_pauli(x_img), parse_pauli(z_img)}};
}

// Clifford kind reached by a diagonal single-qubit rotation of `turns` quarter turns.
LocalImages rotation_images(int turns) {
    switch (turns) {
        case 0: return single("X", "Z");
        case 1: return single("Y", "Z");
        case 2: return single("-X", "Z");
        default: return single("-Y", "Z");
    }
}

std::optional<LocalImages> clifford_images(const Gate& g) {
    switch (g.kind) {
        case GateKind::H: return single("Z", "X");
        case GateKind::S: return single("Y", "Z");
        case GateKind::SDG: return single("-Y", "Z");
        case GateKind::K: return single("Z", "Y");
        case GateKind::KDG: return single("Y", "X");
        case GateKind::X: return single("X", "-Z");
        case GateKind::Y: return single("-X", "-Z");
        case GateKind::Z: return single("-X", "Z");
        case GateKind::ZTHETA: {
            auto q = quarter_turns(g.theta);
            if (!q) return std::nullopt;
            return rotation_images(*q);
        }
        case GateKind::CNOT:
            return LocalImages{2, {parse_pauli("XX"), parse_pauli("ZI"), parse_pauli("IX"), parse_pauli("ZZ")}};
        case GateKind::CZ:
            return LocalImages{2, {parse_pauli("XZ"), parse_pauli("ZI"), parse_pauli("ZX"), parse_pauli("IZ")}};
        case GateKind::CKZ: {
            const std::size_t m = g.qubits.size();
            if (m == 1) {
                auto q = quarter_turns(g.theta);
                if (!q) return std::nullopt;
                return rotation_images(*q);
            }
            if (std::abs(std::remainder(g.theta, 2 * std::numbers::pi)) < kAngleTol) {
                LocalImages id{m, {}};
                for (std::size_t j = 0; j < m; ++j) {
                    id.images.push_back(PauliOperator::single(m, j, 'X'));
                    id.images.push_back(PauliOperator::single(m, j, 'Z'));
                }
                return id;
            }
            if (m == 2 && is_multiple_of_pi(g.theta))
                return LocalImages{2, {parse_pauli("XZ"), parse_pauli("ZI"), parse_pauli("ZX"), parse_pauli("IZ")}};
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

void apply_local(const LocalImages& li, std::span<const std::size_t> qubits, PauliOperator& p) {
    const std::size_t m = li.arity;
    PauliOperator acc(m);
    int ys = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const bool x = p.x().get(qubits[j]), z = p.z().get(qubits[j]);
        if (x && z) ++ys;
        if (x) acc *= li.images[2 * j];
        if (z) acc *= li.images[2 * j + 1];
    }
    // The local factor of p is i^{#Y} prod_j X_j^x Z_j^z, so its image is
    // i^{#Y} * acc.
    for (std::size_t j = 0; j < m; ++j) {
        p.x().set(qubits[j], acc.x().get(j));
        p.z().set(qubits[j], acc.z().get(j));
    }
    p.set_phase(p.phase() + ys + acc.phase());
}

bool is_non_clifford_diagonal(const Gate& g) { return g.is_diagonal() && !g.is_clifford(); }

}  // namespace

bool Gate::is_diagonal() const {
    switch (kind) {
        case GateKind::S:
        case GateKind::SDG:
        case GateKind::T:
        case GateKind::TDG:
        case GateKind::ZTHETA:
        case GateKind::Z:
        case GateKind::CZ:
        case GateKind::CCZ:
        case GateKind::CKZ: return true;
        default: return false;
    }
}

bool Gate::is_clifford() const {
    if (kind == GateKind::PERMUTE) return true;
    return clifford_images(*this).has_value();
}

Gate make_gate(GateKind kind, std::vector<std::size_t> qubits, double theta) {
    Gate g;
    g.kind = kind;
    g.qubits = std::move(qubits);
    g.theta = theta;
    if (kind == GateKind::T) g.theta = std::numbers::pi / 4;
    if (kind == GateKind::TDG) g.theta = -std::numbers::pi / 4;
    if (kind == GateKind::CCZ) g.theta = std::numbers::pi;
    return g;
}

Gate make_ec(std::vector<std::size_t> blocks, CodePtr joint_code) {
    Gate g;
    g.kind = GateKind::EC;
    g.blocks = std::move(blocks);
    g.code = std::move(joint_code);
    return g;
}

bool Gate::operator==(const Gate& o) const {
    if (kind != o.kind || qubits != o.qubits || theta != o.theta || perm != o.perm || blocks != o.blocks ||
        label != o.label || opaque_mode != o.opaque_mode || static_cast<bool>(code) != static_cast<bool>(o.code))
        return false;
    return !code || code == o.code || code->generators == o.code->generators;
}

Gate make_piece() {
    Gate g;
    g.kind = GateKind::PIECE;
    return g;
}

Gate make_permute(std::vector<std::size_t> qubits, std::vector<std::size_t> perm) {
    Gate g;
    g.kind = GateKind::PERMUTE;
    g.qubits = std::move(qubits);
    g.perm = std::move(perm);
    return g;
}

Gate make_opaque(std::string label, std::size_t block_in, std::size_t block_out, OpaqueMode mode,
                 std::vector<std::size_t> touched) {
    Gate g;
    g.kind = GateKind::OPAQUE;
    g.label = std::move(label);
    g.blocks = {block_in, block_out};
    g.opaque_mode = mode;
    g.qubits = std::move(touched);
    return g;
}

std::string_view kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::SDG: return "SDG";
        case GateKind::K: return "K";
        case GateKind::KDG: return "KDG";
        case GateKind::T: return "T";
        case GateKind::TDG: return "TDG";
        case GateKind::ZTHETA: return "ZTHETA";
        case GateKind::X: return "X";
        case GateKind::Y: return "Y";
        case GateKind::Z: return "Z";
        case GateKind::CNOT: return "CNOT";
        case GateKind::CZ: return "CZ";
        case GateKind::CCZ: return "CCZ";
        case GateKind::CKZ: return "CKZ";
        case GateKind::PERMUTE: return "PERMUTE";
        case GateKind::EC: return "EC";
        case GateKind::PIECE: return "PIECE";
        case GateKind::OPAQUE: return "OPAQUE";
    }
    return "?";
}

std::optional<GateKind> kind_from_name(std::string_view name) {
    static const GateKind all[] = {GateKind::H,    GateKind::S,      GateKind::SDG,   GateKind::K,
                                   GateKind::KDG,  GateKind::T,      GateKind::TDG,   GateKind::ZTHETA,
                                   GateKind::X,    GateKind::Y,      GateKind::Z,     GateKind::CNOT,
                                   GateKind::CZ,   GateKind::CCZ,    GateKind::CKZ,   GateKind::PERMUTE,
                                   GateKind::EC,   GateKind::PIECE,  GateKind::OPAQUE};
    for (auto k : all)
        if (kind_name(k) == name) return k;
    return std::nullopt;
}

void Circuit::add(Gate g) { gates.push_back(std::move(g)); }

void Circuit::append(const Circuit& other) {
    if (other.n != n) throw std::invalid_argument("append: qubit count mismatch");
    gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

std::size_t Circuit::count(GateKind kind) const {
    return static_cast<std::size_t>(std::count_if(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind == kind; }));
}

void Circuit::check() const {
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const auto& g = gates[i];
        auto fail = [&](const std::string& msg) {
            throw std::invalid_argument("gate " + std::to_string(i) + " (" + std::string(kind_name(g.kind)) + "): " + msg);
        };
        for (auto q : g.qubits)
            if (q >= n) fail("qubit " + std::to_string(q) + " out of range");
        std::set<std::size_t> distinct(g.qubits.begin(), g.qubits.end());
        if (distinct.size() != g.qubits.size()) fail("repeated qubit");
        std::size_t want = 0;
        switch (g.kind) {
            case GateKind::CNOT:
            case GateKind::CZ: want = 2; break;
            case GateKind::CCZ: want = 3; break;
            case GateKind::CKZ:
            case GateKind::PERMUTE:
            case GateKind::EC:
            case GateKind::PIECE:
            case GateKind::OPAQUE: want = 0; break;
            default: want = 1;
        }
        if (want && g.qubits.size() != want) fail("expected " + std::to_string(want) + " qubits");
        if (g.kind == GateKind::CKZ && g.qubits.empty()) fail("needs at least one qubit");
        if (g.kind == GateKind::PERMUTE) {
            if (g.perm.size() != g.qubits.size()) fail("map length differs from support");
            std::vector<std::size_t> sorted = g.perm;
            std::sort(sorted.begin(), sorted.end());
            for (std::size_t j = 0; j < sorted.size(); ++j)
                if (sorted[j] != j) fail("map is not a bijection");
        }
        if (g.kind == GateKind::EC || g.kind == GateKind::OPAQUE)
            for (auto b : g.blocks)
                if (b >= blocks.size()) fail("block " + std::to_string(b) + " not declared");
        if (g.kind == GateKind::EC && g.code) {
            std::size_t width = 0;
            for (auto b : g.blocks) width += blocks[b].qubits.size();
            if (g.code->n != width) fail("EC code width differs from its blocks");
        }
    }
}

Circuit compose(const Circuit& a, const Circuit& b) {
    if (a.n != b.n) throw std::invalid_argument("compose: qubit count mismatch");
    Circuit c = a;
    c.gates.insert(c.gates.end(), b.gates.begin(), b.gates.end());
    return c;
}

Circuit inverse(const Circuit& a) {
    Circuit c;
    c.n = a.n;
    c.blocks = a.blocks;
    for (auto it = a.gates.rbegin(); it != a.gates.rend(); ++it) {
        Gate g = *it;
        switch (g.kind) {
            case GateKind::S: g.kind = GateKind::SDG; break;
            case GateKind::SDG: g.kind = GateKind::S; break;
            case GateKind::K: g.kind = GateKind::KDG; break;
            case GateKind::KDG: g.kind = GateKind::K; break;
            case GateKind::T: g.kind = GateKind::TDG; g.theta = -g.theta; break;
            case GateKind::TDG: g.kind = GateKind::T; g.theta = -g.theta; break;
            case GateKind::ZTHETA:
            case GateKind::CKZ: g.theta = -g.theta; break;
            case GateKind::PERMUTE: {
                std::vector<std::size_t> inv(g.perm.size());
                for (std::size_t j = 0; j < g.perm.size(); ++j) inv[g.perm[j]] = j;
                g.perm = inv;
                break;
            }
            case GateKind::EC:
            case GateKind::PIECE:
            case GateKind::OPAQUE:
                throw std::invalid_argument("inverse: " + std::string(kind_name(g.kind)) + " has no inverse");
            default: break;
        }
        c.gates.push_back(std::move(g));
    }
    return c;
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream out;
    out.precision(17);
    out << "QUBITS " << c.n << "\n";
    for (std::size_t b = 0; b < c.blocks.size(); ++b) {
        const auto& blk = c.blocks[b];
        out << "BLOCK " << b << " " << (blk.code ? blk.code->name : std::string("none"));
        for (auto q : blk.qubits) out << " " << q;
        out << "\n";
    }
    for (const auto& g : c.gates) {
        out << kind_name(g.kind);
        switch (g.kind) {
            case GateKind::EC:
                for (auto b : g.blocks) out << " " << b;
                if (g.code) {
                    out << " @code=";
                    for (std::size_t i = 0; i < g.code->generators.size(); ++i)
                        out << (i ? "," : "") << format_pauli(g.code->generators[i]);
                }
                break;
            case GateKind::PIECE: break;
            case GateKind::OPAQUE:
                out << " " << g.label << " " << g.blocks[0] << " " << g.blocks[1] << " @mode="
                    << (g.opaque_mode == OpaqueMode::Arbitrary ? "arbitrary" : "converter");
                break;
            default:
                for (auto q : g.qubits) out << " " << q;
                if (g.kind == GateKind::ZTHETA || g.kind == GateKind::CKZ) out << " @theta=" << g.theta;
                if (g.kind == GateKind::PERMUTE) {
                    out << " @map=";
                    for (std::size_t j = 0; j < g.perm.size(); ++j) out << (j ? "," : "") << g.perm[j];
                }
        }
        out << "\n";
    }
    return out.str();
}

namespace {

std::size_t parse_index(std::string_view tok, std::size_t line) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
        throw ParseError("line " + std::to_string(line) + ": expected an index, got '" + std::string(tok) + "'", line);
    return v;
}

double parse_angle(std::string_view tok, std::size_t line) {
    std::string s(tok);
    const auto pi_pos = s.find("pi");
    if (pi_pos == std::string::npos) {
        try {
            std::size_t used = 0;
            double v = std::stod(s, &used);
            if (used != s.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(line) + ": bad angle '" + s + "'", line);
        }
    }
    std::string pre = s.substr(0, pi_pos), post = s.substr(pi_pos + 2);
    double mult = 1.0;
    if (pre == "-") {
        mult = -1.0;
    } else if (!pre.empty()) {
        mult = std::stod(pre);
    }
    double div = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw ParseError("line " + std::to_string(line) + ": bad angle '" + s + "'", line);
        div = std::stod(post.substr(1));
    }
    return mult * std::numbers::pi / div;
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    Circuit c;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    bool have_n = false;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        std::vector<std::string> pos, attrs;
        for (std::size_t i = 1; i < toks.size(); ++i) (toks[i][0] == '@' ? attrs : pos).push_back(toks[i]);
        auto attr = [&](const std::string& key) -> std::optional<std::string> {
            for (const auto& a : attrs)
                if (a.rfind("@" + key + "=", 0) == 0) return a.substr(key.size() + 2);
            return std::nullopt;
        };
        if (head == "QUBITS") {
            if (pos.size() != 1) throw ParseError("line " + std::to_string(line_no) + ": QUBITS takes one value", line_no);
            c.n = parse_index(pos[0], line_no);
            have_n = true;
            continue;
        }
        if (!have_n) throw ParseError("line " + std::to_string(line_no) + ": QUBITS must come first", line_no);
        if (head == "BLOCK") {
            if (pos.size() < 2) throw ParseError("line " + std::to_string(line_no) + ": BLOCK id code qubits...", line_no);
            if (parse_index(pos[0], line_no) != c.blocks.size())
                throw ParseError("line " + std::to_string(line_no) + ": blocks must be declared in order", line_no);
            Block b;
            b.name = "b" + pos[0];
            if (pos[1] != "none") b.code = base_code(pos[1]);
            for (std::size_t i = 2; i < pos.size(); ++i) b.qubits.push_back(parse_index(pos[i], line_no));
            c.blocks.push_back(std::move(b));
            continue;
        }
        auto kind = kind_from_name(head);
        if (!kind) throw ParseError("line " + std::to_string(line_no) + ": unknown gate '" + head + "'", line_no);
        Gate g;
        g.kind = *kind;
        if (*kind == GateKind::EC) {
            for (const auto& p : pos) g.blocks.push_back(parse_index(p, line_no));
            if (auto gens = attr("code")) {
                auto code = std::make_shared<StabilizerCode>();
                code->name = "joint";
                std::string s = *gens;
                std::replace(s.begin(), s.end(), ',', ' ');
                std::istringstream gs(s);
                for (std::string t; gs >> t;) code->generators.push_back(parse_pauli(t));
                if (code->generators.empty())
                    throw ParseError("line " + std::to_string(line_no) + ": empty EC code", line_no);
                code->n = code->generators[0].num_qubits();
                for (const auto& gen : code->generators)
                    if (gen.num_qubits() != code->n)
                        throw ParseError("line " + std::to_string(line_no) + ": ragged EC code", line_no);
                code->k = code->n >= code->generators.size() ? code->n - code->generators.size() : 0;
                g.code = std::move(code);
            }
        } else if (*kind == GateKind::PIECE) {
        } else if (*kind == GateKind::OPAQUE) {
            if (pos.size() < 2 || pos.size() > 3)
                throw ParseError("line " + std::to_string(line_no) + ": OPAQUE label b_in [b_out]", line_no);
            g.label = pos[0];
            const std::size_t bin = parse_index(pos[1], line_no);
            const std::size_t bout = pos.size() == 3 ? parse_index(pos[2], line_no) : bin;
            g.blocks = {bin, bout};
            const auto mode = attr("mode").value_or("arbitrary");
            if (mode == "arbitrary") {
                g.opaque_mode = OpaqueMode::Arbitrary;
            } else if (mode == "converter") {
                g.opaque_mode = OpaqueMode::Converter;
            } else {
                throw ParseError("line " + std::to_string(line_no) + ": unknown OPAQUE mode '" + mode + "'", line_no);
            }
            std::set<std::size_t> touched;
            for (auto b : g.blocks) {
                if (b >= c.blocks.size())
                    throw ParseError("line " + std::to_string(line_no) + ": undeclared block", line_no);
                touched.insert(c.blocks[b].qubits.begin(), c.blocks[b].qubits.end());
            }
            g.qubits.assign(touched.begin(), touched.end());
        } else {
            for (const auto& p : pos) g.qubits.push_back(parse_index(p, line_no));
            if (auto th = attr("theta")) g.theta = parse_angle(*th, line_no);
            if (*kind == GateKind::T) g.theta = std::numbers::pi / 4;
            if (*kind == GateKind::TDG) g.theta = -std::numbers::pi / 4;
            if (*kind == GateKind::CCZ) g.theta = std::numbers::pi;
            if (auto m = attr("map")) {
                std::string s = *m;
                std::replace(s.begin(), s.end(), ',', ' ');
                std::istringstream ms(s);
                for (std::string t; ms >> t;) g.perm.push_back(parse_index(t, line_no));
            }
        }
        c.gates.push_back(std::move(g));
    }
    try {
        c.check();
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), line_no);
    }
    return c;
}

void conjugate_gate(const Gate& g, PauliOperator& p) {
    if (g.is_marker()) return;
    if (g.kind == GateKind::PERMUTE) {
        const PauliOperator before = p;
        for (std::size_t j = 0; j < g.qubits.size(); ++j) {
            p.x().set(g.qubits[g.perm[j]], before.x().get(g.qubits[j]));
            p.z().set(g.qubits[g.perm[j]], before.z().get(g.qubits[j]));
        }
        return;
    }
    auto li = clifford_images(g);
    if (!li) throw std::invalid_argument("conjugate_gate: " + std::string(kind_name(g.kind)) + " is not Clifford");
    apply_local(*li, g.qubits, p);
}

PauliOperator conjugate_clifford(const Circuit& c, const PauliOperator& p, std::size_t from) {
    PauliOperator r = p;
    for (std::size_t i = from; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        if (g.kind == GateKind::OPAQUE) throw std::invalid_argument("conjugate_clifford: OPAQUE gate encountered");
        conjugate_gate(g, r);
    }
    return r;
}

PropagatedError conjugate_through(const Circuit& c, const PauliOperator& p, std::size_t from,
                                  std::size_t max_branches) {
    PropagatedError out;
    std::vector<PauliOperator> cur = {p.unsigned_part()};
    for (std::size_t i = from; i < c.gates.size(); ++i) {
        const auto& g = c.gates[i];
        if (g.is_marker()) continue;
        if (g.kind == GateKind::OPAQUE) throw std::invalid_argument("conjugate_through: OPAQUE gate encountered");
        if (is_non_clifford_diagonal(g)) {
            std::set<PauliOperator> next;
            bool touched = false;
            for (const auto& b : cur) {
                bool has_x = false;
                for (auto q : g.qubits) has_x |= b.x().get(q);
                if (!has_x) {
                    next.insert(b);
                    continue;
                }
                touched = true;
                const std::size_t m = g.qubits.size();
                for (std::uint32_t r = 0; r < (1u << m); ++r) {
                    PauliOperator v = b;
                    for (std::size_t j = 0; j < m; ++j)
                        if (r >> j & 1) v.z().flip(g.qubits[j]);
                    next.insert(v);
                }
                if (next.size() > max_branches)
                    throw BudgetExceeded("conjugate_through: more than " + std::to_string(max_branches) + " branches");
            }
            if (touched) ++out.non_clifford_passages;
            cur.assign(next.begin(), next.end());
            continue;
        }
        if (!g.is_clifford()) throw std::invalid_argument("conjugate_through: unsupported gate " + std::string(kind_name(g.kind)));
        for (auto& b : cur) {
            conjugate_gate(g, b);
            b.set_phase(0);
        }
    }
    if (out.non_clifford_passages == 0 && cur.size() == 1) {
        // Pure Clifford path: report the exact signed image.
        bool all_clifford = true;
        for (std::size_t i = from; i < c.gates.size(); ++i) all_clifford &= c.gates[i].is_marker() || c.gates[i].is_clifford();
        if (all_clifford) cur = {conjugate_clifford(c, p, from)};
    }
    out.branches = std::move(cur);
    return out;
}

namespace {

// Physical representative of a k-qubit logical Pauli.
PauliOperator physical_rep(const StabilizerCode& code, const PauliOperator& logical) {
    PauliOperator r(code.n);
    int ph = logical.phase();
    for (std::size_t i = 0; i < code.k; ++i) {
        const bool x = logical.x().get(i), z = logical.z().get(i);
        if (x && z) ++ph;
        if (x) r *= code.logical_x[i];
        if (z) r *= code.logical_z[i];
    }
    r.set_phase(r.phase() + ph);
    return r;
}

}  // namespace

LogicalActionResult induced_logical_action(const Circuit& c, const StabilizerCode& code) {
    if (c.n != code.n) throw std::invalid_argument("induced_logical_action: circuit and code sizes differ");
    for (const auto& g : c.gates)
        if (!g.is_marker() && !g.is_clifford())
            throw std::invalid_argument("induced_logical_action: non-Clifford gate " + std::string(kind_name(g.kind)));
    LogicalActionResult res;
    for (std::size_t i = 0; i < code.generators.size(); ++i) {
        const auto img = conjugate_clifford(c, code.generators[i]);
        if (!in_group(img, code.generators, PhaseMode::Exact)) {
            res.violation = "generator " + std::to_string(i) + " (" + format_pauli(code.generators[i]) + ") maps to " +
                            format_pauli(img) + ", outside the stabilizer group";
            return res;
        }
    }
    LogicalAction act;
    for (std::size_t i = 0; i < code.k; ++i) {
        for (const auto* l : {&code.logical_x[i], &code.logical_z[i]}) {
            const auto img = conjugate_clifford(c, *l);
            const auto cls = logical_class(code, img);
            PauliOperator q(code.k);
            for (std::size_t j = 0; j < code.k; ++j) {
                if (cls.get(2 * j)) q.x().set(j);
                if (cls.get(2 * j + 1)) q.z().set(j);
            }
            const auto rep = physical_rep(code, q);
            const auto m = img * rep;
            BitVector combo;
            EchelonBasis basis(2 * code.n, code.generators.size());
            for (const auto& g : code.generators) basis.insert(g.symplectic());
            auto express = basis.express(m.symplectic());
            if (!express) {
                res.violation = "image of a logical operator is not a logical operator";
                return res;
            }
            const int sign = (m.phase() - product_of(code.generators, *express).phase() + 4) % 4;
            q.set_phase(sign);
            act.images.push_back(q);
        }
    }
    res.action = std::move(act);
    return res;
}

LogicalAction ideal_action(const Circuit& logical_circuit) {
    LogicalAction act;
    for (std::size_t i = 0; i < logical_circuit.n; ++i) {
        act.images.push_back(conjugate_clifford(logical_circuit, PauliOperator::single(logical_circuit.n, i, 'X')));
        act.images.push_back(conjugate_clifford(logical_circuit, PauliOperator::single(logical_circuit.n, i, 'Z')));
    }
    return act;
}

bool same_clifford(const Circuit& a, const Circuit& b) {
    if (a.n != b.n) return false;
    return ideal_action(a) == ideal_action(b);
}

}  // namespace ftcc
