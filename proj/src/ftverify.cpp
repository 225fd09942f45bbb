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

#include "ftcc/ftverify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <unordered_map>

#include "ftcc/decoder.hpp"
#include "json.hpp"

namespace ftcc {

namespace {

constexpr std::size_t kWords = 3;
constexpr std::size_t kMaxQubits = 64 * kWords;

template <std::size_t W>
using Bits = std::array<std::uint64_t, W>;
/// X words then Z words.
using Sym = Bits<2 * kWords>;
/// Syndrome bits in words 0..2, logical class bits in word 3.
using Key = Bits<4>;
using SynKey = Bits<3>;

template <std::size_t W>
void xor_into(Bits<W>& a, const Bits<W>& b) {
    for (std::size_t i = 0; i < W; ++i) a[i] ^= b[i];
}

template <std::size_t W>
bool any(const Bits<W>& a) {
    for (auto w : a)
        if (w) return true;
    return false;
}

template <std::size_t W>
std::size_t first_set(const Bits<W>& a) {
    for (std::size_t i = 0; i < W; ++i)
        if (a[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(a[i]));
    return W * 64;
}

template <std::size_t W>
bool test(const Bits<W>& a, std::size_t i) {
    return (a[i >> 6] >> (i & 63)) & 1u;
}

/// Reduced row echelon form with rows sorted by pivot (lowest set bit).
template <std::size_t W>
void rref(std::vector<Bits<W>>& rows) {
    std::vector<Bits<W>> out;
    out.reserve(rows.size());
    for (auto r : rows) {
        for (const auto& o : out)
            if (test(r, first_set(o))) xor_into(r, o);
        if (!any(r)) continue;
        const std::size_t p = first_set(r);
        for (auto& o : out)
            if (test(o, p)) xor_into(o, r);
        out.push_back(r);
    }
    std::sort(out.begin(), out.end(),
              [](const Bits<W>& a, const Bits<W>& b) { return first_set(a) < first_set(b); });
    rows = std::move(out);
}

template <std::size_t W>
void reduce(const std::vector<Bits<W>>& basis, Bits<W>& v) {
    for (const auto& o : basis)
        if (test(v, first_set(o))) xor_into(v, o);
}

struct BitsHash {
    template <std::size_t W>
    std::size_t operator()(const Bits<W>& a) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        for (auto w : a) {
            h ^= w + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
            h *= 0xBF58476D1CE4E5B9ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 31));
    }
};

bool sx(const Sym& s, std::size_t q) { return (s[q >> 6] >> (q & 63)) & 1u; }
bool sz(const Sym& s, std::size_t q) { return (s[kWords + (q >> 6)] >> (q & 63)) & 1u; }
void set_x(Sym& s, std::size_t q, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    s[q >> 6] = v ? (s[q >> 6] | m) : (s[q >> 6] & ~m);
}
void set_z(Sym& s, std::size_t q, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (q & 63);
    s[kWords + (q >> 6)] = v ? (s[kWords + (q >> 6)] | m) : (s[kWords + (q >> 6)] & ~m);
}

Sym operator&(Sym a, const Sym& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= b[i];
    return a;
}

Sym operator^(Sym a, const Sym& b) {
    xor_into(a, b);
    return a;
}

Sym and_not(Sym a, const Sym& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] &= ~b[i];
    return a;
}

bool intersects(const Sym& a, const Sym& mask) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] & mask[i]) return true;
    return false;
}

bool anticommutes(const Sym& a, const Sym& b) {
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < kWords; ++i) acc ^= (a[i] & b[kWords + i]) ^ (a[kWords + i] & b[i]);
    return std::popcount(acc) & 1;
}

Sym to_sym(const PauliOperator& p) {
    if (p.num_qubits() > kMaxQubits) throw std::invalid_argument("fault engine supports at most 192 qubits");
    Sym s{};
    for (std::size_t w = 0; w < p.x().num_words(); ++w) {
        s[w] = p.x().word(w);
        s[kWords + w] = p.z().word(w);
    }
    return s;
}

PauliOperator from_sym(const Sym& s, std::size_t n) {
    PauliOperator p(n);
    for (std::size_t q = 0; q < n; ++q) {
        if (sx(s, q)) p.x().set(q);
        if (sz(s, q)) p.z().set(q);
    }
    return p;
}

Sym qubit_mask(const std::vector<std::size_t>& qubits) {
    Sym m{};
    for (auto q : qubits) {
        set_x(m, q, true);
        set_z(m, q, true);
    }
    return m;
}

/// Phase-free action of one Clifford gate on s.
void conjugate_sym(const Gate& g, Sym& s, std::size_t n) {
    auto swap_xz = [&](std::size_t q, bool nx, bool nz) {
        set_x(s, q, nx);
        set_z(s, q, nz);
    };
    switch (g.kind) {
        case GateKind::X:
        case GateKind::Y:
        case GateKind::Z:
        case GateKind::PIECE:
            return;
        case GateKind::H: {
            const std::size_t q = g.qubits[0];
            swap_xz(q, sz(s, q), sx(s, q));
            return;
        }
        case GateKind::S:
        case GateKind::SDG: {
            const std::size_t q = g.qubits[0];
            set_z(s, q, sz(s, q) ^ sx(s, q));
            return;
        }
        case GateKind::K: {
            const std::size_t q = g.qubits[0];
            const bool x = sx(s, q), z = sz(s, q);
            swap_xz(q, z, x ^ z);
            return;
        }
        case GateKind::KDG: {
            const std::size_t q = g.qubits[0];
            const bool x = sx(s, q), z = sz(s, q);
            swap_xz(q, x ^ z, x);
            return;
        }
        case GateKind::CNOT: {
            const std::size_t c = g.qubits[0], t = g.qubits[1];
            set_x(s, t, sx(s, t) ^ sx(s, c));
            set_z(s, c, sz(s, c) ^ sz(s, t));
            return;
        }
        case GateKind::CZ: {
            const std::size_t a = g.qubits[0], b = g.qubits[1];
            const bool xa = sx(s, a), xb = sx(s, b);
            set_z(s, a, sz(s, a) ^ xb);
            set_z(s, b, sz(s, b) ^ xa);
            return;
        }
        case GateKind::PERMUTE: {
            std::vector<std::pair<bool, bool>> old;
            for (auto q : g.qubits) old.emplace_back(sx(s, q), sz(s, q));
            for (std::size_t i = 0; i < g.qubits.size(); ++i)
                swap_xz(g.qubits[g.perm[i]], old[i].first, old[i].second);
            return;
        }
        default: {
            PauliOperator p = from_sym(s, n);
            conjugate_gate(g, p);
            s = to_sym(p);
            return;
        }
    }
}

bool in_region(const Gate& g) {
    if (g.kind == GateKind::PIECE) return true;
    if (g.kind == GateKind::EC || g.kind == GateKind::OPAQUE) return false;
    return g.is_clifford();
}

/// Phase function of a diagonal non-Clifford gate on its local basis state z.
double diagonal_phase(const Gate& g, std::uint32_t z) {
    const std::uint32_t all = (std::uint32_t{1} << g.qubits.size()) - 1;
    const bool on = (z & all) == all;
    switch (g.kind) {
        case GateKind::T:
            return on ? std::numbers::pi / 4 : 0.0;
        case GateKind::TDG:
            return on ? -std::numbers::pi / 4 : 0.0;
        case GateKind::ZTHETA:
        case GateKind::CKZ:
            return on ? g.theta : 0.0;
        case GateKind::CCZ:
            return on ? std::numbers::pi : 0.0;
        default:
            throw std::invalid_argument("fault engine: non-Clifford gate " + std::string(kind_name(g.kind)) +
                                        " is not diagonal");
    }
}

/// For each local X pattern a, the Z strings R with nonzero weight in
/// X_a D X_a D^dagger = sum_R c_R Z_R.
std::vector<std::vector<std::uint32_t>> diagonal_branches(const Gate& g) {
    const std::size_t m = g.qubits.size();
    if (m > 10) throw BudgetExceeded("diagonal gate on more than 10 qubits");
    const std::uint32_t dim = std::uint32_t{1} << m;
    std::vector<std::vector<std::uint32_t>> out(dim);
    for (std::uint32_t a = 0; a < dim; ++a) {
        std::vector<std::complex<double>> f(dim);
        for (std::uint32_t z = 0; z < dim; ++z) f[z] = std::polar(1.0, diagonal_phase(g, z ^ a) - diagonal_phase(g, z));
        for (std::uint32_t r = 0; r < dim; ++r) {
            std::complex<double> c = 0;
            for (std::uint32_t z = 0; z < dim; ++z) c += (std::popcount(r & z) & 1) ? -f[z] : f[z];
            if (std::abs(c) / dim > 1e-9) out[a].push_back(r);
        }
    }
    return out;
}

std::shared_ptr<const LookupDecoder> shared_decoder(const StabilizerCode& code, std::size_t max_weight) {
    static std::mutex mu;
    static std::map<std::string, std::shared_ptr<const LookupDecoder>> cache;
    std::string key = std::to_string(max_weight) + "|" + std::to_string(code.n);
    for (const auto& g : code.generators) key += "|" + format_pauli(g);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto dec = std::make_shared<const LookupDecoder>(code, max_weight);
    cache.emplace(key, dec);
    return dec;
}

char class_letter(bool x, bool z) { return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'); }

}  // namespace

std::uint32_t FaultLocation::num_paulis() const {
    if (wildcard) return 1;
    if (qubits.size() > 15) throw BudgetExceeded("fault location on more than 15 qubits");
    return (std::uint32_t{1} << (2 * qubits.size())) - 1;
}

std::string_view mode_name(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "sampled"; }

std::vector<FaultLocation> fault_locations(const Circuit& c, std::size_t data_qubits) {
    std::vector<FaultLocation> out;
    for (std::size_t q = 0; q < data_qubits; ++q) out.push_back({FaultLocation::kInput, {q}, false, 0});
    for (std::size_t gi = 0; gi < c.gates.size(); ++gi) {
        const Gate& g = c.gates[gi];
        if (g.is_marker() || g.kind == GateKind::PERMUTE) continue;
        if (g.kind == GateKind::OPAQUE) {
            const Block& bo = c.blocks.at(g.blocks.at(1));
            if (g.opaque_mode == OpaqueMode::Converter) {
                for (auto q : bo.qubits) out.push_back({gi, {q}, false, 0});
            } else {
                out.push_back({gi, bo.qubits, true, g.blocks[1]});
            }
            continue;
        }
        const bool joint = (g.kind == GateKind::CCZ || g.kind == GateKind::CKZ) && g.qubits.size() >= 2 &&
                           !g.is_clifford();
        if (joint) {
            out.push_back({gi, g.qubits, false, 0});
        } else {
            for (auto q : g.qubits) out.push_back({gi, {q}, false, 0});
        }
    }
    return out;
}

PauliOperator fault_pauli(const FaultLocation& loc, std::uint32_t pauli, std::size_t n) {
    PauliOperator p(n);
    if (loc.wildcard) return p;
    for (std::size_t j = 0; j < loc.qubits.size(); ++j) {
        if ((pauli >> (2 * j)) & 1u) p.x().set(loc.qubits[j]);
        if ((pauli >> (2 * j + 1)) & 1u) p.z().set(loc.qubits[j]);
    }
    return p;
}

std::string format_fault(const Circuit& c, const FaultLocation& loc, std::uint32_t pauli) {
    std::ostringstream os;
    if (loc.after_gate == FaultLocation::kInput) {
        os << "input";
    } else {
        const Gate& g = c.gates.at(loc.after_gate);
        os << "after #" << loc.after_gate << " " << kind_name(g.kind);
        if (g.kind == GateKind::OPAQUE) os << " " << g.label;
    }
    if (loc.wildcard) {
        os << " wildcard on block " << c.blocks.at(loc.block).name;
        return os.str();
    }
    for (std::size_t j = 0; j < loc.qubits.size(); ++j) {
        const bool x = (pauli >> (2 * j)) & 1u, z = (pauli >> (2 * j + 1)) & 1u;
        if (x || z) os << " " << class_letter(x, z) << loc.qubits[j];
    }
    return os.str();
}

FaultPattern sample_pattern(const std::vector<FaultLocation>& locs, std::size_t count, std::mt19937_64& rng) {
    if (count > locs.size()) throw std::invalid_argument("more faults than locations");
    std::vector<std::size_t> chosen;
    while (chosen.size() < count) {
        const std::size_t l = static_cast<std::size_t>(rng() % locs.size());
        if (std::find(chosen.begin(), chosen.end(), l) == chosen.end()) chosen.push_back(l);
    }
    std::sort(chosen.begin(), chosen.end());
    FaultPattern p;
    for (auto l : chosen) p.push_back({l, static_cast<std::uint32_t>(1 + rng() % locs[l].num_paulis())});
    return p;
}

// ---------------------------------------------------------------- engine

struct FaultEngine::Impl {
    struct Map {
        Sym touched{};
        std::vector<Sym> imx, imz;  // indexed by qubit, valid where touched
    };

    struct Unit {
        std::vector<std::size_t> qubits;
        Sym mask{};
        std::vector<Sym> gens;
        std::vector<Sym> lx, lz;  // empty when the code carries no logicals
        std::shared_ptr<const LookupDecoder> decoder;
        mutable std::unordered_map<std::uint64_t, std::optional<Sym>> memo;
    };

    enum class Op { Diag, Ec, Opaque, End };

    struct DiagGate {
        std::vector<std::size_t> qubits;
        Sym xmask{};
        std::vector<std::vector<std::uint32_t>> branches;
    };

    struct Region {
        std::size_t begin = 0, end = 0;  // Clifford gates
        Map map;
        Op op = Op::End;
        std::vector<DiagGate> diag;
        std::vector<std::size_t> units;  // Ec
        // Ec: per unit, syndrome -> error left by the lightest fault pattern.
        std::vector<std::unordered_map<std::uint64_t, Sym>> tables;
        std::size_t unit_in = 0, unit_out = 0;
        std::uint8_t image_x = 1, image_z = 2;  // Opaque class map: bit0 = X, bit1 = Z
    };

    struct LocInfo {
        std::size_t region = 0;
        std::vector<Sym> basis;  // images of X_q, Z_q per location qubit, interleaved
    };

    struct State {
        Sym base{};
        std::vector<Sym> span;
        auto operator<=>(const State&) const = default;
    };

    struct BranchKey {
        Key key{};
        std::vector<Key> span;
    };

    Circuit circuit;
    StabilizerCode final_code;
    EngineOptions options;
    std::size_t n = 0;
    std::vector<FaultLocation> locs;
    std::vector<LocInfo> info;
    std::vector<Region> regions;
    std::vector<Unit> units;
    std::map<std::size_t, std::size_t> block_unit;
    std::vector<Key> key_x, key_z;  // END contributions per data qubit

    Impl(const Circuit& c, const StabilizerCode& code, EngineOptions opts)
        : circuit(c), final_code(code), options(opts), n(c.n) {
        if (n > kMaxQubits) throw std::invalid_argument("fault engine supports at most 192 qubits");
        if (code.n > n) throw std::invalid_argument("final code is larger than the register");
        if (code.generators.size() > 64 * 3) throw std::invalid_argument("final code has too many generators");
        if (2 * code.logical_x.size() > 64) throw std::invalid_argument("final code has too many logical qubits");
        circuit.check();
        compile();
        locs = fault_locations(circuit, code.n);
        place_locations();
        build_ec_tables();
        build_keys();
    }

    // ---- compilation

    Sym propagate(Sym s, std::size_t from, std::size_t to) const {
        for (std::size_t i = from; i < to; ++i) {
            const Gate& g = circuit.gates[i];
            if (g.kind == GateKind::PIECE) continue;
            bool touches = false;
            for (auto q : g.qubits)
                if (sx(s, q) || sz(s, q)) touches = true;
            if (touches) conjugate_sym(g, s, n);
        }
        return s;
    }

    Sym basis_sym(std::size_t q, bool z) const {
        Sym s{};
        if (z) {
            set_z(s, q, true);
        } else {
            set_x(s, q, true);
        }
        return s;
    }

    void build_map(Region& r) const {
        r.map.imx.assign(n, Sym{});
        r.map.imz.assign(n, Sym{});
        std::vector<std::size_t> touched;
        for (std::size_t i = r.begin; i < r.end; ++i)
            for (auto q : circuit.gates[i].qubits) touched.push_back(q);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        r.map.touched = qubit_mask(touched);
        for (auto q : touched) {
            r.map.imx[q] = propagate(basis_sym(q, false), r.begin, r.end);
            r.map.imz[q] = propagate(basis_sym(q, true), r.begin, r.end);
        }
    }

    std::size_t make_unit(const StabilizerCode& code, const std::vector<std::size_t>& qubits, std::size_t max_w) {
        if (code.n != qubits.size()) throw std::invalid_argument("EC code size does not match its blocks");
        Unit u;
        u.qubits = qubits;
        u.mask = qubit_mask(qubits);
        for (const auto& g : code.generators) u.gens.push_back(to_sym(g.embed(n, qubits)));
        if (code.logical_x.size() == code.k && code.logical_z.size() == code.k && code.k > 0) {
            for (std::size_t j = 0; j < code.k; ++j) {
                u.lx.push_back(to_sym(code.logical_x[j].embed(n, qubits)));
                u.lz.push_back(to_sym(code.logical_z[j].embed(n, qubits)));
            }
        }
        u.decoder = shared_decoder(code, max_w);
        units.push_back(std::move(u));
        return units.size() - 1;
    }

    std::size_t unit_for_block(std::size_t b) {
        auto it = block_unit.find(b);
        if (it != block_unit.end()) return it->second;
        const Block& blk = circuit.blocks.at(b);
        if (!blk.code) throw std::invalid_argument("block " + blk.name + " has no code");
        const std::size_t id = make_unit(*blk.code, blk.qubits, SIZE_MAX);
        block_unit.emplace(b, id);
        return id;
    }

    void compile() {
        const auto& gates = circuit.gates;
        std::size_t begin = 0, i = 0;
        while (i < gates.size()) {
            const Gate& g = gates[i];
            if (in_region(g)) {
                ++i;
                continue;
            }
            Region r;
            r.begin = begin;
            r.end = i;
            if (g.kind == GateKind::EC) {
                r.op = Op::Ec;
                if (g.code) {
                    std::vector<std::size_t> qs;
                    for (auto b : g.blocks)
                        for (auto q : circuit.blocks.at(b).qubits) qs.push_back(q);
                    r.units.push_back(make_unit(*g.code, qs, options.joint_decoder_weight));
                } else {
                    for (auto b : g.blocks)
                        if (circuit.blocks.at(b).code) r.units.push_back(unit_for_block(b));
                }
                ++i;
            } else if (g.kind == GateKind::OPAQUE) {
                r.op = Op::Opaque;
                r.unit_in = unit_for_block(g.blocks.at(0));
                r.unit_out = unit_for_block(g.blocks.at(1));
                if (units[r.unit_in].lx.size() != 1 || units[r.unit_out].lx.size() != 1)
                    throw std::invalid_argument("OPAQUE blocks must each encode one logical qubit");
                if (auto kind = kind_from_name(g.label)) {
                    auto image = [&](char letter) {
                        PauliOperator p = PauliOperator::single(1, 0, letter);
                        conjugate_gate(make_gate(*kind, {0}), p);
                        return static_cast<std::uint8_t>((p.x().get(0) ? 1 : 0) | (p.z().get(0) ? 2 : 0));
                    };
                    r.image_x = image('X');
                    r.image_z = image('Z');
                }
                ++i;
            } else {
                r.op = Op::Diag;
                Sym used{};
                while (i < gates.size() && !in_region(gates[i]) && gates[i].kind != GateKind::EC &&
                       gates[i].kind != GateKind::OPAQUE) {
                    const Sym m = qubit_mask(gates[i].qubits);
                    if (intersects(m, used)) break;
                    used = used ^ m;
                    DiagGate d;
                    d.qubits = gates[i].qubits;
                    for (auto q : d.qubits) set_x(d.xmask, q, true);
                    d.branches = diagonal_branches(gates[i]);
                    r.diag.push_back(std::move(d));
                    ++i;
                }
            }
            build_map(r);
            regions.push_back(std::move(r));
            begin = i;
        }
        Region last;
        last.begin = begin;
        last.end = gates.size();
        last.op = Op::End;
        build_map(last);
        regions.push_back(std::move(last));
    }

    void place_locations() {
        // Region holding each gate, and whether it is the region's boundary.
        std::vector<std::size_t> region_of(circuit.gates.size());
        std::vector<bool> boundary(circuit.gates.size(), false);
        for (std::size_t r = 0; r < regions.size(); ++r) {
            for (std::size_t g = regions[r].begin; g < regions[r].end; ++g) region_of[g] = r;
            const std::size_t bend = r + 1 < regions.size() ? regions[r + 1].begin : circuit.gates.size();
            for (std::size_t g = regions[r].end; g < bend; ++g) {
                region_of[g] = r;
                boundary[g] = true;
            }
        }
        info.resize(locs.size());
        for (std::size_t l = 0; l < locs.size(); ++l) {
            const auto& loc = locs[l];
            std::size_t r = 0, from = 0;
            if (loc.after_gate != FaultLocation::kInput) {
                r = region_of[loc.after_gate];
                if (boundary[loc.after_gate]) {
                    ++r;
                    from = regions[r].begin;
                } else {
                    from = loc.after_gate + 1;
                }
            }
            info[l].region = r;
            for (auto q : loc.qubits) {
                info[l].basis.push_back(propagate(basis_sym(q, false), from, regions[r].end));
                info[l].basis.push_back(propagate(basis_sym(q, true), from, regions[r].end));
            }
        }
    }

    /// Fault-aware ideal EC: the table of EC region r holds, per syndrome, the
    /// error reaching r from no fault or from the first single fault (in
    /// location order) that produces it. Other syndromes fall back to the
    /// minimum-weight lookup.
    void build_ec_tables() {
        for (std::size_t r = 0; r < regions.size(); ++r) {
            Region& reg = regions[r];
            if (reg.op != Op::Ec) continue;
            reg.tables.assign(reg.units.size(), {});
            for (auto& t : reg.tables) t.emplace(0, Sym{});
            auto record = [&](const std::vector<State>& states) {
                for (const auto& st : states) {
                    if (!st.span.empty()) continue;
                    for (std::size_t i = 0; i < reg.units.size(); ++i) {
                        const Unit& u = units[reg.units[i]];
                        const Sym part = st.base & u.mask;
                        reg.tables[i].try_emplace(unit_syndrome(u, part), part);
                    }
                }
            };
            for (std::size_t l = 0; l < locs.size() && info[l].region <= r; ++l) {
                if (locs[l].wildcard) continue;
                for (std::uint32_t p = 1; p <= locs[l].num_paulis(); ++p) record(run({{l, p}}, r));
            }
        }
    }

    void build_keys() {
        const auto& code = final_code;
        key_x.assign(code.n, Key{});
        key_z.assign(code.n, Key{});
        for (std::size_t q = 0; q < code.n; ++q) {
            for (std::size_t i = 0; i < code.generators.size(); ++i) {
                const auto& g = code.generators[i];
                if (g.z().get(q)) key_x[q][i >> 6] |= std::uint64_t{1} << (i & 63);
                if (g.x().get(q)) key_z[q][i >> 6] |= std::uint64_t{1} << (i & 63);
            }
            for (std::size_t j = 0; j < code.logical_x.size(); ++j) {
                // Bit 2j: acts as X_j (anticommutes with Z_j); bit 2j+1: acts as Z_j.
                if (code.logical_z[j].z().get(q)) key_x[q][3] |= std::uint64_t{1} << (2 * j);
                if (code.logical_x[j].z().get(q)) key_x[q][3] |= std::uint64_t{1} << (2 * j + 1);
                if (code.logical_z[j].x().get(q)) key_z[q][3] |= std::uint64_t{1} << (2 * j);
                if (code.logical_x[j].x().get(q)) key_z[q][3] |= std::uint64_t{1} << (2 * j + 1);
            }
        }
    }

    // ---- evaluation

    Sym apply(const Map& m, const Sym& s) const {
        Sym out = s;
        for (std::size_t w = 0; w < kWords; ++w) {
            out[w] &= ~m.touched[w];
            out[kWords + w] &= ~m.touched[w];
        }
        for (std::size_t w = 0; w < kWords; ++w) {
            for (std::uint64_t b = s[w] & m.touched[w]; b; b &= b - 1)
                xor_into(out, m.imx[w * 64 + static_cast<std::size_t>(std::countr_zero(b))]);
            for (std::uint64_t b = s[kWords + w] & m.touched[w]; b; b &= b - 1)
                xor_into(out, m.imz[w * 64 + static_cast<std::size_t>(std::countr_zero(b))]);
        }
        return out;
    }

    static void canonicalize(State& s) {
        if (s.span.empty()) return;
        rref(s.span);
        reduce(s.span, s.base);
    }

    void dedup(std::vector<State>& states) const {
        for (auto& s : states) canonicalize(s);
        if (states.size() > 1) {
            std::sort(states.begin(), states.end());
            states.erase(std::unique(states.begin(), states.end()), states.end());
        }
        if (states.size() > options.max_branches) throw BudgetExceeded("fault branches exceed max_branches");
    }

    std::uint64_t unit_syndrome(const Unit& u, const Sym& part) const {
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < u.gens.size(); ++i)
            if (anticommutes(u.gens[i], part)) s |= std::uint64_t{1} << i;
        return s;
    }

    const std::optional<Sym>& lookup(const Unit& u, std::uint64_t s) const {
        auto it = u.memo.find(s);
        if (it != u.memo.end()) return it->second;
        std::optional<Sym> c;
        if (auto p = u.decoder->correction(s)) c = to_sym(p->embed(n, u.qubits));
        return u.memo.emplace(s, c).first->second;
    }

    /// Logical class of a zero-syndrome error on u: bit 2j is X_j, bit 2j+1 is Z_j.
    std::uint64_t unit_class(const Unit& u, const Sym& e) const {
        std::uint64_t c = 0;
        for (std::size_t j = 0; j < u.lx.size(); ++j) {
            if (anticommutes(e, u.lz[j])) c |= std::uint64_t{1} << (2 * j);
            if (anticommutes(e, u.lx[j])) c |= std::uint64_t{1} << (2 * j + 1);
        }
        return c;
    }

    Sym unit_rep(const Unit& u, std::uint64_t c) const {
        Sym r{};
        for (std::size_t j = 0; j < u.lx.size(); ++j) {
            if ((c >> (2 * j)) & 1u) xor_into(r, u.lx[j]);
            if ((c >> (2 * j + 1)) & 1u) xor_into(r, u.lz[j]);
        }
        return r;
    }

    /// Absorbs a span that covers every Pauli on u into u's logical span.
    /// Returns false when the span touches u some other way.
    bool absorb_span(State& st, const Unit& u, const Sym& clear, const Unit& target) const {
        std::vector<Sym> inside, rest;
        for (const auto& v : st.span) {
            if (!intersects(v, u.mask)) {
                rest.push_back(v);
            } else if (any(and_not(v, u.mask))) {
                return false;
            } else {
                inside.push_back(v);
            }
        }
        if (inside.size() < 2 * u.qubits.size() || target.lx.empty()) return false;
        st.span = std::move(rest);
        for (std::size_t j = 0; j < target.lx.size(); ++j) {
            st.span.push_back(target.lx[j]);
            st.span.push_back(target.lz[j]);
        }
        st.base = and_not(st.base, clear);
        return true;
    }

    bool span_touches(const State& st, const Sym& mask) const {
        for (const auto& v : st.span)
            if (intersects(v, mask)) return true;
        return false;
    }

    std::vector<State> expand(const State& st) const {
        if (st.span.size() > options.max_expand_dim) throw BudgetExceeded("wildcard span too large to expand");
        std::vector<State> out;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << st.span.size()); ++m) {
            State e;
            e.base = st.base;
            for (std::size_t i = 0; i < st.span.size(); ++i)
                if ((m >> i) & 1u) xor_into(e.base, st.span[i]);
            out.push_back(e);
        }
        return out;
    }

    /// Ideal EC of one unit. Returns false when the span must be expanded.
    bool correct_unit(State& st, const Unit& u, const std::unordered_map<std::uint64_t, Sym>* table) const {
        if (span_touches(st, u.mask)) return absorb_span(st, u, u.mask, u);
        Sym part = st.base & u.mask;
        if (!any(part)) return true;
        const std::uint64_t s = unit_syndrome(u, part);
        if (table) {
            auto it = table->find(s);
            if (it != table->end()) {
                xor_into(part, it->second);
                if (!u.lx.empty()) part = unit_rep(u, unit_class(u, part));
                st.base = and_not(st.base, u.mask) ^ part;
                return true;
            }
        }
        const auto& corr = lookup(u, s);
        if (!corr) return true;
        xor_into(part, *corr);
        if (!u.lx.empty()) part = unit_rep(u, unit_class(u, part));
        st.base = and_not(st.base, u.mask) ^ part;
        return true;
    }

    bool opaque_state(State& st, const Region& r) const {
        const Unit& ui = units[r.unit_in];
        const Unit& uo = units[r.unit_out];
        const Sym both = ui.mask ^ and_not(uo.mask, ui.mask);
        if (span_touches(st, ui.mask)) return absorb_span(st, ui, both, uo);
        Sym part = st.base & ui.mask;
        std::uint64_t cls = 0;
        if (any(part)) {
            const auto& corr = lookup(ui, unit_syndrome(ui, part));
            if (corr) xor_into(part, *corr);
            cls = unit_class(ui, part);
        }
        std::uint64_t mapped = 0;
        if (cls & 1u) mapped ^= r.image_x;
        if (cls & 2u) mapped ^= r.image_z;
        st.base = and_not(st.base, both) ^ unit_rep(uo, mapped);
        return true;
    }

    template <typename Fn>
    void per_state(std::vector<State>& states, Fn&& fn) const {
        std::vector<State> out;
        out.reserve(states.size());
        for (auto& st : states) {
            State copy = st;
            if (fn(copy)) {
                out.push_back(std::move(copy));
                continue;
            }
            for (auto& e : expand(st)) {
                if (!fn(e)) throw std::logic_error("expanded state still needs expansion");
                out.push_back(std::move(e));
            }
        }
        states = std::move(out);
    }

    void diag_op(std::vector<State>& states, const Region& r) const {
        for (const auto& d : r.diag) {
            std::vector<State> out;
            for (auto& st : states) {
                bool widen = false;
                for (const auto& v : st.span)
                    if (intersects(v, d.xmask)) widen = true;
                if (widen)
                    for (auto q : d.qubits) st.span.push_back(basis_sym(q, true));
                std::uint32_t a = 0;
                for (std::size_t j = 0; j < d.qubits.size(); ++j)
                    if (sx(st.base, d.qubits[j])) a |= std::uint32_t{1} << j;
                if (a == 0) {
                    out.push_back(std::move(st));
                    continue;
                }
                for (auto rmask : d.branches[a]) {
                    State b = st;
                    for (std::size_t j = 0; j < d.qubits.size(); ++j)
                        if ((rmask >> j) & 1u) set_z(b.base, d.qubits[j], !sz(b.base, d.qubits[j]));
                    out.push_back(std::move(b));
                }
            }
            states = std::move(out);
            if (states.size() > options.max_branches) dedup(states);
        }
    }

    Key key_of(const Sym& s) const {
        Key k{};
        const std::size_t m = final_code.n;
        for (std::size_t w = 0; w < kWords; ++w) {
            const std::uint64_t lim =
                m >= (w + 1) * 64 ? ~std::uint64_t{0}
                                  : (m <= w * 64 ? 0 : (std::uint64_t{1} << (m - w * 64)) - 1);
            for (std::uint64_t b = s[w] & lim; b; b &= b - 1)
                xor_into(k, key_x[w * 64 + static_cast<std::size_t>(std::countr_zero(b))]);
            for (std::uint64_t b = s[kWords + w] & lim; b; b &= b - 1)
                xor_into(k, key_z[w * 64 + static_cast<std::size_t>(std::countr_zero(b))]);
        }
        return k;
    }

    /// Propagates p; with stop < regions.size() returns the states reaching
    /// the boundary of region `stop` before its operation.
    std::vector<State> run(const FaultPattern& p, std::size_t stop = SIZE_MAX) const {
        std::vector<State> states(1);
        std::size_t fi = 0;
        for (const auto& f : p)
            if (f.location >= locs.size()) throw std::invalid_argument("fault location out of range");
        for (std::size_t ri = 0; ri < regions.size(); ++ri) {
            const Region& r = regions[ri];
            Sym inj{};
            std::vector<Sym> wild;
            for (; fi < p.size() && info[p[fi].location].region == ri; ++fi) {
                const auto& li = info[p[fi].location];
                if (locs[p[fi].location].wildcard) {
                    wild.insert(wild.end(), li.basis.begin(), li.basis.end());
                    continue;
                }
                for (std::size_t b = 0; b < li.basis.size(); ++b)
                    if ((p[fi].pauli >> b) & 1u) xor_into(inj, li.basis[b]);
            }
            bool spans = !wild.empty();
            for (auto& st : states) {
                st.base = apply(r.map, st.base) ^ inj;
                for (auto& v : st.span) v = apply(r.map, v);
                st.span.insert(st.span.end(), wild.begin(), wild.end());
                spans = spans || !st.span.empty();
            }
            if (spans) dedup(states);
            if (ri == stop) return states;
            switch (r.op) {
                case Op::Diag:
                    diag_op(states, r);
                    break;
                case Op::Ec:
                    per_state(states, [&](State& st) {
                        for (std::size_t i = 0; i < r.units.size(); ++i)
                            if (!correct_unit(st, units[r.units[i]], r.tables.empty() ? nullptr : &r.tables[i]))
                                return false;
                        return true;
                    });
                    break;
                case Op::Opaque:
                    per_state(states, [&](State& st) { return opaque_state(st, r); });
                    break;
                case Op::End:
                    break;
            }
            if (states.size() > 1 || spans) dedup(states);
        }
        return states;
    }

    std::vector<BranchKey> keys(const FaultPattern& p) const {
        std::vector<BranchKey> out;
        for (const auto& st : run(p)) {
            BranchKey b;
            b.key = key_of(st.base);
            for (const auto& v : st.span) b.span.push_back(key_of(v));
            rref(b.span);
            reduce(b.span, b.key);
            out.push_back(std::move(b));
        }
        return out;
    }
};

FaultEngine::FaultEngine(const Circuit& circuit, const StabilizerCode& final_code, EngineOptions options)
    : impl_(std::make_unique<Impl>(circuit, final_code, options)) {}
FaultEngine::~FaultEngine() = default;
FaultEngine::FaultEngine(FaultEngine&&) noexcept = default;
FaultEngine& FaultEngine::operator=(FaultEngine&&) noexcept = default;

const Circuit& FaultEngine::circuit() const { return impl_->circuit; }
const StabilizerCode& FaultEngine::final_code() const { return impl_->final_code; }
const std::vector<FaultLocation>& FaultEngine::locations() const { return impl_->locs; }

std::vector<OutputBranch> FaultEngine::propagate(const FaultPattern& pattern) const {
    std::vector<OutputBranch> out;
    for (const auto& st : impl_->run(pattern)) {
        OutputBranch b;
        b.error = from_sym(st.base, impl_->final_code.n);
        for (const auto& v : st.span) b.span.push_back(from_sym(v, impl_->final_code.n));
        out.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------- conflicts

namespace {

using BranchKey = FaultEngine::Impl::BranchKey;

SynKey syn_of(const Key& k) { return {k[0], k[1], k[2]}; }

bool has_k0(const std::vector<Key>& basis) {
    for (const auto& b : basis)
        if (!b[0] && !b[1] && !b[2]) return true;
    return false;
}

/// Whether a + w and b share a syndrome but not a logical class for some
/// w in the combined span.
bool branches_conflict(const BranchKey& a, const BranchKey& b) {
    std::vector<Key> basis = a.span;
    basis.insert(basis.end(), b.span.begin(), b.span.end());
    rref(basis);
    Key v = a.key;
    xor_into(v, b.key);
    reduce(basis, v);
    if (v[0] || v[1] || v[2]) return false;
    return v[3] != 0 || has_k0(basis);
}

std::optional<std::pair<std::size_t, std::size_t>> find_conflict(const std::vector<BranchKey>& a,
                                                                  const std::vector<BranchKey>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (branches_conflict(a[i], b[j])) return std::make_pair(i, j);
    return std::nullopt;
}

}  // namespace

struct ConflictTable::State {
    const FaultEngine::Impl* eng = nullptr;
    struct Stored {
        std::uint64_t logical;
        std::uint32_t pid;
    };
    struct Group {
        std::vector<Key> basis;
        std::vector<std::pair<Key, std::uint32_t>> entries;
        // Lazily built: reduced syndrome -> (logical, pid) over plain and own entries.
        bool bucket_valid = false;
        std::unordered_map<SynKey, Stored, BitsHash> bucket;
    };
    std::unordered_map<SynKey, Stored, BitsHash> plain;
    std::vector<Group> groups;
    std::map<std::vector<Key>, std::size_t> group_index;
    std::vector<Fault> flat;
    std::vector<std::uint32_t> offsets{0};
    std::uint64_t branch_count = 0;

    std::uint32_t store(const FaultPattern& p) {
        flat.insert(flat.end(), p.begin(), p.end());
        offsets.push_back(static_cast<std::uint32_t>(flat.size()));
        return static_cast<std::uint32_t>(offsets.size() - 2);
    }

    FaultPattern pattern(std::uint32_t id) const {
        return FaultPattern(flat.begin() + offsets[id], flat.begin() + offsets[id + 1]);
    }

    /// Group entries only; plain entries never conflict through a span they lack.
    void build_bucket(Group& g) const {
        if (g.bucket_valid) return;
        g.bucket.clear();
        for (const auto& [k, pid] : g.entries) {
            Key r = k;
            reduce(g.basis, r);
            g.bucket.try_emplace(syn_of(r), Stored{r[3], pid});
        }
        g.bucket_valid = true;
    }
};

ConflictTable::ConflictTable(const FaultEngine& engine) : s_(std::make_unique<State>()) {
    s_->eng = &engine.impl();
}
ConflictTable::~ConflictTable() = default;

std::uint64_t ConflictTable::size() const { return s_->offsets.size() - 1; }
std::uint64_t ConflictTable::branches() const { return s_->branch_count; }

std::optional<FaultPattern> ConflictTable::add(const FaultPattern& p) {
    auto& st = *s_;
    const auto keys = st.eng->keys(p);
    const std::uint32_t pid = st.store(p);
    st.branch_count += keys.size();
    for (const auto& b : keys) {
        if (b.span.empty()) {
            auto [it, fresh] = st.plain.try_emplace(syn_of(b.key), State::Stored{b.key[3], pid});
            if (!fresh && it->second.logical != b.key[3]) return st.pattern(it->second.pid);
            continue;
        }
        if (has_k0(b.span)) return p;
        auto [it, fresh] = st.group_index.try_emplace(b.span, st.groups.size());
        if (fresh) {
            st.groups.emplace_back();
            st.groups.back().basis = b.span;
        }
        auto& g = st.groups[it->second];
        g.entries.emplace_back(b.key, pid);
        g.bucket_valid = false;
    }
    return std::nullopt;
}

std::optional<std::pair<FaultPattern, FaultPattern>> ConflictTable::finish() {
    auto& st = *s_;
    for (auto& g : st.groups) {
        const bool k0 = has_k0(g.basis);
        std::unordered_map<SynKey, State::Stored, BitsHash> bucket;
        for (const auto& [k, pid] : g.entries) {
            Key r = k;
            reduce(g.basis, r);
            auto [it, fresh] = bucket.try_emplace(syn_of(r), State::Stored{r[3], pid});
            if (!fresh && (it->second.logical != r[3] || k0))
                return std::make_pair(st.pattern(pid), st.pattern(it->second.pid));
        }
        for (const auto& [s, e] : st.plain) {
            Key r{s[0], s[1], s[2], e.logical};
            reduce(g.basis, r);
            auto it = bucket.find(syn_of(r));
            if (it != bucket.end() && (it->second.logical != r[3] || k0))
                return std::make_pair(st.pattern(e.pid), st.pattern(it->second.pid));
        }
    }
    for (std::size_t i = 0; i < st.groups.size(); ++i) {
        for (std::size_t j = i + 1; j < st.groups.size(); ++j) {
            std::vector<Key> basis = st.groups[i].basis;
            basis.insert(basis.end(), st.groups[j].basis.begin(), st.groups[j].basis.end());
            rref(basis);
            const bool k0 = has_k0(basis);
            std::unordered_map<SynKey, State::Stored, BitsHash> first;
            for (const auto& [k, pid] : st.groups[i].entries) {
                Key r = k;
                reduce(basis, r);
                first.try_emplace(syn_of(r), State::Stored{r[3], pid});
            }
            for (const auto& [k, pid] : st.groups[j].entries) {
                Key r = k;
                reduce(basis, r);
                auto it = first.find(syn_of(r));
                if (it != first.end() && (it->second.logical != r[3] || k0))
                    return std::make_pair(st.pattern(pid), st.pattern(it->second.pid));
            }
        }
    }
    return std::nullopt;
}

std::optional<FaultPattern> ConflictTable::query(const FaultPattern& p) {
    auto& st = *s_;
    const auto keys = st.eng->keys(p);
    if (find_conflict(keys, keys)) return p;
    for (const auto& b : keys) {
        if (b.span.empty()) {
            auto it = st.plain.find(syn_of(b.key));
            if (it != st.plain.end() && it->second.logical != b.key[3]) return st.pattern(it->second.pid);
            for (auto& g : st.groups) {
                st.build_bucket(g);
                Key r = b.key;
                reduce(g.basis, r);
                auto jt = g.bucket.find(syn_of(r));
                if (jt != g.bucket.end() && (jt->second.logical != r[3] || has_k0(g.basis)))
                    return st.pattern(jt->second.pid);
            }
            continue;
        }
        for (const auto& [s, e] : st.plain) {
            BranchKey other{Key{s[0], s[1], s[2], e.logical}, {}};
            if (branches_conflict(b, other)) return st.pattern(e.pid);
        }
        for (const auto& g : st.groups) {
            for (const auto& [k, pid] : g.entries) {
                BranchKey other{k, g.basis};
                if (branches_conflict(b, other)) return st.pattern(pid);
            }
        }
    }
    return std::nullopt;
}

bool replay_conflict(const FaultEngine& engine, const FaultPattern& a, const FaultPattern& b) {
    return find_conflict(engine.impl().keys(a), engine.impl().keys(b)).has_value();
}

namespace {

std::string class_string(std::uint64_t bits, std::size_t k) {
    std::string s;
    for (std::size_t j = 0; j < k; ++j) s += class_letter((bits >> (2 * j)) & 1u, (bits >> (2 * j + 1)) & 1u);
    return s;
}

}  // namespace

Counterexample make_counterexample(const FaultEngine& engine, const FaultPattern& a, const FaultPattern& b) {
    Counterexample c;
    c.a = a;
    c.b = b;
    const auto& locs = engine.locations();
    for (const auto& f : a) c.a_text.push_back(format_fault(engine.circuit(), locs[f.location], f.pauli));
    for (const auto& f : b) c.b_text.push_back(format_fault(engine.circuit(), locs[f.location], f.pauli));
    const auto ka = engine.impl().keys(a);
    const auto kb = engine.impl().keys(b);
    const std::size_t k = engine.final_code().logical_x.size();
    if (auto hit = find_conflict(ka, kb)) {
        c.replayed = true;
        c.logical_a = class_string(ka[hit->first].key[3], k);
        c.logical_b = class_string(kb[hit->second].key[3], k);
    }
    return c;
}

namespace {

/// Visits every pattern of exactly `size` faults in location order; stops when fn returns true.
template <typename Fn>
bool for_each_pattern(const std::vector<FaultLocation>& locs, std::size_t size, Fn&& fn) {
    FaultPattern p(size);
    if (size == 0) return fn(p);
    if (size > locs.size()) return false;
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
        for (std::size_t i = 0; i < size; ++i) p[i] = {idx[i], 1};
        while (true) {
            if (fn(p)) return true;
            std::size_t j = size;
            while (j > 0 && p[j - 1].pauli == locs[idx[j - 1]].num_paulis()) p[--j].pauli = 1;
            if (j == 0) break;
            ++p[j - 1].pauli;
        }
        std::size_t i = size;
        while (i > 0 && idx[i - 1] == locs.size() - size + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
    return false;
}

}  // namespace

CorrectabilityReport correctable(const FaultEngine& engine, const CorrectabilityOptions& options) {
    ConflictTable table(engine);
    return correctable(engine, options, table);
}

CorrectabilityReport correctable(const FaultEngine& engine, const CorrectabilityOptions& options, ConflictTable& table) {
    const auto start = std::chrono::steady_clock::now();
    CorrectabilityReport rep;
    rep.t = options.t;
    rep.mode = options.mode;
    rep.seed = options.seed;
    rep.exhaustive_max = options.mode == SearchMode::Exhaustive ? options.t : std::min(options.t, options.exhaustive_max);
    rep.samples = options.mode == SearchMode::Sampled && options.t > rep.exhaustive_max ? options.samples : 0;
    const auto& locs = engine.locations();
    rep.locations_scanned = locs.size();

    std::optional<std::pair<FaultPattern, FaultPattern>> hit;
    for (std::size_t size = 0; size <= rep.exhaustive_max && !hit; ++size) {
        for_each_pattern(locs, size, [&](const FaultPattern& p) {
            if (auto other = table.add(p)) hit = std::make_pair(p, *other);
            return hit.has_value();
        });
    }
    if (!hit && rep.samples > 0) {
        std::mt19937_64 rng(options.seed);
        for (std::uint64_t i = 0; i < rep.samples && !hit; ++i) {
            const FaultPattern p = sample_pattern(locs, options.t, rng);
            if (auto other = table.add(p)) hit = std::make_pair(p, *other);
        }
    }
    if (!hit) hit = table.finish();
    rep.patterns_checked = table.size();
    rep.branches = table.branches();
    rep.correctable = !hit.has_value();
    if (hit) {
        rep.counterexample = make_counterexample(engine, hit->first, hit->second);
        if (!rep.counterexample->replayed) throw std::logic_error("counterexample failed to replay");
    }
    if (options.timing)
        rep.runtime_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    return rep;
}

const CrossCodeCnotPlan& fault_tolerant_cross_code_cnot(const CodePtr& control, const CodePtr& target) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<CrossCodeCnotPlan>> cache;
    std::string key = format_pauli(control->generators.front()) + "|" + control->name + "|" + target->name;
    for (const auto& g : target->generators) key += format_pauli(g);
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
    const StabilizerCode joint = tensor_product(std::vector<StabilizerCode>{*control, *target}, "joint");
    const CrossCodeCnotPlan first = build_cross_code_cnot(control, target);
    const std::size_t most = first.cnots.size();
    std::unique_ptr<CrossCodeCnotPlan> chosen;
    for (std::size_t p = first.num_pieces(); p <= most && !chosen; ++p) {
        CrossCodeCnotPlan plan = build_cross_code_cnot(control, target, p);
        if (plan.num_pieces() != p) continue;
        const FaultEngine engine(cross_code_circuit(plan), joint);
        CorrectabilityOptions opts;
        opts.t = 1;
        if (correctable(engine, opts).correctable) chosen = std::make_unique<CrossCodeCnotPlan>(std::move(plan));
    }
    if (!chosen) chosen = std::make_unique<CrossCodeCnotPlan>(build_cross_code_cnot(control, target, most));
    return *cache.emplace(key, std::move(chosen)).first->second;
}

namespace {

nlohmann::ordered_json pattern_json(const FaultPattern& p, const std::vector<std::string>& text) {
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < p.size(); ++i)
        arr.push_back({{"location", p[i].location}, {"pauli", p[i].pauli}, {"text", text.at(i)}});
    return arr;
}

nlohmann::ordered_json counterexample_obj(const Counterexample& c) {
    return {{"a", pattern_json(c.a, c.a_text)},
            {"b", pattern_json(c.b, c.b_text)},
            {"logical_a", c.logical_a},
            {"logical_b", c.logical_b},
            {"replayed", c.replayed}};
}

}  // namespace

std::string counterexample_to_json(const Counterexample& c) { return counterexample_obj(c).dump(2); }

std::string report_to_json(const CorrectabilityReport& r) {
    nlohmann::ordered_json j = {{"t", r.t},
                                {"mode", std::string(mode_name(r.mode))},
                                {"seed", r.seed},
                                {"samples", r.samples},
                                {"exhaustive_max", r.exhaustive_max},
                                {"verdict", r.correctable ? "correctable" : "counterexample"},
                                {"locations_scanned", r.locations_scanned},
                                {"patterns_checked", r.patterns_checked},
                                {"branches", r.branches},
                                {"runtime_ms", r.runtime_ms}};
    if (r.counterexample) j["counterexample"] = counterexample_obj(*r.counterexample);
    return j.dump(2);
}

}  // namespace ftcc
