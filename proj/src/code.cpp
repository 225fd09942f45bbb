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

#include "ftcc/code.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "json.hpp"

namespace ftcc {

namespace {

PauliOperator x_type(std::string_view bits) {
    PauliOperator p(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') p.set_letter(i, 'X');
    return p;
}

PauliOperator z_type(std::string_view bits) {
    PauliOperator p(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i] == '1') p.set_letter(i, 'Z');
    return p;
}

// Replaces each logical by its minimum-weight, lexicographically least coset rep.
void canonicalize_logicals(StabilizerCode& code) {
    for (auto& l : code.logical_x) l = *min_weight_coset_rep(code, l);
    for (auto& l : code.logical_z) l = *min_weight_coset_rep(code, l);
}

StabilizerCode make_five_qubit() {
    StabilizerCode c;
    c.name = "five_qubit";
    c.n = 5;
    c.k = 1;
    const char* rows[4] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
    for (auto r : rows) c.generators.push_back(parse_pauli(r));
    c.logical_x = {parse_pauli("XXXXX")};
    c.logical_z = {parse_pauli("ZZZZZ")};
    c.claimed_distance = 3;
    canonicalize_logicals(c);
    return c;
}

// Hamming [7,4] parity checks with qubits (q1..q7) carrying the column labels
// 1, 2, 4, 5, 6, 7, 3, so that {q1, q2, q7} is a weight-3 codeword.
StabilizerCode make_steane() {
    StabilizerCode c;
    c.name = "steane";
    c.n = 7;
    c.k = 1;
    const char* rows[3] = {"1001011", "0100111", "0011110"};
    for (auto r : rows) c.generators.push_back(x_type(r));
    for (auto r : rows) c.generators.push_back(z_type(r));
    c.logical_x = {x_type("1111111")};
    c.logical_z = {z_type("1111111")};
    c.claimed_distance = 3;
    canonicalize_logicals(c);
    return c;
}

// Punctured Reed-Muller code: qubit i (0-based) carries the label i+1 in binary.
StabilizerCode make_rm15() {
    StabilizerCode c;
    c.name = "rm15";
    c.n = 15;
    c.k = 1;
    std::string rows[4];
    for (int b = 0; b < 4; ++b) {
        rows[b].assign(15, '0');
        for (int i = 0; i < 15; ++i)
            if (((i + 1) >> b) & 1) rows[b][i] = '1';
    }
    for (int b = 0; b < 4; ++b) c.generators.push_back(x_type(rows[b]));
    for (int b = 0; b < 4; ++b) c.generators.push_back(z_type(rows[b]));
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            std::string r(15, '0');
            for (int i = 0; i < 15; ++i)
                if (rows[a][i] == '1' && rows[b][i] == '1') r[i] = '1';
            c.generators.push_back(z_type(r));
        }
    }
    c.logical_x = {x_type(std::string(15, '1'))};
    c.logical_z = {z_type(std::string(15, '1'))};
    c.claimed_distance = 3;
    canonicalize_logicals(c);
    return c;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a && b > UINT64_MAX / a) return UINT64_MAX;
    return a * b;
}

std::uint64_t binom(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        const std::uint64_t num = n - k + i;
        if (r > UINT64_MAX / num) return UINT64_MAX;
        r = r * num / i;
    }
    return r;
}

// Key of a Pauli: [syndrome bits | logical-class bits].
struct KeyTable {
    std::size_t words;
    std::size_t syn_bits;
    std::vector<std::vector<std::uint64_t>> keys;  // index 3*q + letter (0=X, 1=Y, 2=Z)
};

KeyTable build_key_table(const StabilizerCode& code) {
    KeyTable t;
    t.syn_bits = code.generators.size();
    const std::size_t total = t.syn_bits + 2 * code.k;
    t.words = (total + 63) / 64;
    t.keys.resize(3 * code.n);
    for (std::size_t q = 0; q < code.n; ++q) {
        for (int l = 0; l < 3; ++l) {
            const auto p = PauliOperator::single(code.n, q, "XYZ"[l]);
            const auto key = syndrome(code, p).concat(logical_class(code, p));
            t.keys[3 * q + l] = key.words();
        }
    }
    return t;
}

}  // namespace

StabilizerCode load_base_code(const std::string& name) {
    StabilizerCode c;
    if (name == "five_qubit") {
        c = make_five_qubit();
    } else if (name == "steane") {
        c = make_steane();
    } else if (name == "rm15") {
        c = make_rm15();
    } else {
        throw std::invalid_argument("unknown base code '" + name + "'");
    }
    require_valid(c);
    return c;
}

CodePtr base_code(const std::string& name) {
    static std::mutex mu;
    static std::map<std::string, CodePtr> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
    auto ptr = std::make_shared<const StabilizerCode>(load_base_code(name));
    cache.emplace(name, ptr);
    return ptr;
}

std::vector<std::string> base_code_names() { return {"five_qubit", "steane", "rm15"}; }

std::vector<std::string> validate(const StabilizerCode& code) {
    std::vector<std::string> out;
    auto check_size = [&](const PauliOperator& p, const std::string& what) {
        if (p.num_qubits() != code.n) {
            out.push_back(what + " has " + std::to_string(p.num_qubits()) + " qubits, expected " +
                          std::to_string(code.n));
            return false;
        }
        return true;
    };
    bool sizes_ok = true;
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        sizes_ok &= check_size(code.generators[i], "generator " + std::to_string(i));
    if (code.logical_x.size() != code.k || code.logical_z.size() != code.k) {
        out.push_back("logical operator count does not match k");
        return out;
    }
    for (std::size_t i = 0; i < code.k; ++i) {
        sizes_ok &= check_size(code.logical_x[i], "logical_x " + std::to_string(i));
        sizes_ok &= check_size(code.logical_z[i], "logical_z " + std::to_string(i));
    }
    if (!sizes_ok) return out;
    if (code.generators.size() + code.k != code.n)
        out.push_back("generator count " + std::to_string(code.generators.size()) + " != n - k");

    const auto& g = code.generators;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (!g[i].is_hermitian()) out.push_back("generator " + std::to_string(i) + " is not Hermitian");
        for (std::size_t j = i + 1; j < g.size(); ++j)
            if (!commutes(g[i], g[j]))
                out.push_back("anticommuting pair: generators " + std::to_string(i) + " and " +
                              std::to_string(j));
    }
    EchelonBasis basis(2 * code.n);
    for (std::size_t i = 0; i < g.size(); ++i)
        if (!basis.insert(g[i].symplectic()))
            out.push_back("dependent generators: generator " + std::to_string(i) + " is in the span of earlier ones");
    if (!out.empty()) return out;
    for (std::size_t i = 0; i < code.k; ++i) {
        for (const auto* l : {&code.logical_x[i], &code.logical_z[i]}) {
            const std::string which = (l == &code.logical_x[i] ? "logical_x " : "logical_z ") + std::to_string(i);
            for (std::size_t j = 0; j < g.size(); ++j)
                if (!commutes(*l, g[j]))
                    out.push_back(which + " anticommutes with generator " + std::to_string(j));
            if (basis.contains(l->symplectic())) out.push_back(which + " lies in the stabilizer span");
        }
        for (std::size_t j = 0; j < code.k; ++j) {
            const bool want = i != j;
            if (commutes(code.logical_x[i], code.logical_z[j]) != want)
                out.push_back("logical_x " + std::to_string(i) + " / logical_z " + std::to_string(j) +
                              (want ? " anticommute" : " commute"));
            if (j > i && !commutes(code.logical_x[i], code.logical_x[j]))
                out.push_back("logical_x " + std::to_string(i) + " / " + std::to_string(j) + " anticommute");
            if (j > i && !commutes(code.logical_z[i], code.logical_z[j]))
                out.push_back("logical_z " + std::to_string(i) + " / " + std::to_string(j) + " anticommute");
        }
    }
    return out;
}

void require_valid(const StabilizerCode& code) {
    auto v = validate(code);
    if (!v.empty()) throw std::invalid_argument("invalid code '" + code.name + "': " + v.front());
}

BitVector syndrome(const StabilizerCode& code, const PauliOperator& e) {
    if (e.num_qubits() != code.n)
        throw std::invalid_argument("syndrome: operator has " + std::to_string(e.num_qubits()) +
                                    " qubits, code has " + std::to_string(code.n));
    BitVector s(code.generators.size());
    for (std::size_t i = 0; i < code.generators.size(); ++i)
        if (!commutes(e, code.generators[i])) s.set(i);
    return s;
}

BitVector logical_class(const StabilizerCode& code, const PauliOperator& e) {
    BitVector s(2 * code.k);
    for (std::size_t i = 0; i < code.k; ++i) {
        if (!commutes(e, code.logical_z[i])) s.set(2 * i);
        if (!commutes(e, code.logical_x[i])) s.set(2 * i + 1);
    }
    return s;
}

std::optional<LogicalSearchResult> min_logical_weight(const StabilizerCode& code, std::size_t w_max,
                                                      TypeFilter filter, std::uint64_t budget) {
    const int letters[3] = {0, 1, 2};
    std::span<const int> allowed;
    switch (filter) {
        case TypeFilter::Any: allowed = std::span<const int>(letters, 3); break;
        case TypeFilter::XOnly: allowed = std::span<const int>(letters, 1); break;
        case TypeFilter::ZOnly: allowed = std::span<const int>(letters + 2, 1); break;
    }
    w_max = std::min(w_max, code.n);
    std::uint64_t total = 0;
    for (std::size_t w = 1; w <= w_max; ++w) {
        std::uint64_t pw = 1;
        for (std::size_t i = 0; i < w; ++i) pw = saturating_mul(pw, allowed.size());
        total += saturating_mul(binom(code.n, w), pw);
        if (total > budget) total = UINT64_MAX;
    }
    if (total > budget)
        throw BudgetExceeded("min_logical_weight: " + std::to_string(w_max) + "-qubit sweep on " +
                             std::to_string(code.n) + " qubits exceeds the budget of " + std::to_string(budget));

    const KeyTable t = build_key_table(code);
    const std::size_t W = t.words;
    const std::size_t syn_bits = t.syn_bits;
    auto is_logical = [&](const std::uint64_t* acc) {
        for (std::size_t w = 0; w < W; ++w) {
            const std::size_t lo = w * 64;
            std::uint64_t syn_mask = 0;
            if (syn_bits > lo) syn_mask = syn_bits - lo >= 64 ? ~0ull : ((1ull << (syn_bits - lo)) - 1);
            if (acc[w] & syn_mask) return false;
        }
        for (std::size_t w = 0; w < W; ++w) {
            const std::size_t lo = w * 64;
            std::uint64_t syn_mask = 0;
            if (syn_bits > lo) syn_mask = syn_bits - lo >= 64 ? ~0ull : ((1ull << (syn_bits - lo)) - 1);
            if (acc[w] & ~syn_mask) return true;
        }
        return false;
    };

    for (std::size_t w = 1; w <= w_max; ++w) {
        std::vector<std::uint64_t> stack((w + 1) * W, 0);
        std::vector<std::size_t> pos(w), let(w);
        // Iterative DFS over increasing positions and letter choices.
        std::optional<LogicalSearchResult> found;
        auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> bool {
            if (depth == w) {
                if (is_logical(&stack[depth * W])) {
                    PauliOperator p(code.n);
                    for (std::size_t i = 0; i < w; ++i) p.set_letter(pos[i], "XYZ"[let[i]]);
                    found = LogicalSearchResult{w, p};
                    return true;
                }
                return false;
            }
            for (std::size_t q = start; q + (w - depth) <= code.n; ++q) {
                for (int l : allowed) {
                    const auto& key = t.keys[3 * q + l];
                    for (std::size_t i = 0; i < W; ++i) stack[(depth + 1) * W + i] = stack[depth * W + i] ^ key[i];
                    pos[depth] = q;
                    let[depth] = static_cast<std::size_t>(l);
                    if (self(self, depth + 1, q + 1)) return true;
                }
            }
            return false;
        };
        if (rec(rec, 0, 0)) return found;
    }
    return std::nullopt;
}

bool supports_nontrivial_logical(const StabilizerCode& code, std::span<const std::size_t> qubits) {
    std::vector<char> in(code.n, 0);
    for (auto q : qubits) {
        if (q >= code.n) throw std::out_of_range("supports_nontrivial_logical: qubit out of range");
        in[q] = 1;
    }
    std::vector<std::size_t> s, comp;
    for (std::size_t q = 0; q < code.n; ++q) (in[q] ? s : comp).push_back(q);
    const std::size_t m = code.generators.size();

    // Operators on s commuting with all generators.
    BitMatrix a(m, 2 * s.size());
    for (std::size_t i = 0; i < m; ++i) {
        const auto& g = code.generators[i];
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (g.z().get(s[j])) a.set(i, j);
            if (g.x().get(s[j])) a.set(i, s.size() + j);
        }
    }
    const std::size_t dim_centralizer = 2 * s.size() - a.rank();

    // Stabilizers supported on s: combinations vanishing on the complement.
    BitMatrix b(m, 2 * comp.size());
    for (std::size_t i = 0; i < m; ++i) {
        const auto& g = code.generators[i];
        for (std::size_t j = 0; j < comp.size(); ++j) {
            if (g.x().get(comp[j])) b.set(i, j);
            if (g.z().get(comp[j])) b.set(i, comp.size() + j);
        }
    }
    const std::size_t dim_stab = m - b.rank();
    return dim_centralizer > dim_stab;
}

bool is_css(const StabilizerCode& code) {
    const std::size_t m = code.generators.size();
    BitMatrix xs(m, code.n), zs(m, code.n);
    for (std::size_t i = 0; i < m; ++i) {
        xs.row(i) = code.generators[i].x();
        zs.row(i) = code.generators[i].z();
    }
    // dim(S ∩ X-type) = m - rank(Z parts), and symmetrically.
    return (m - zs.rank()) + (m - xs.rank()) == m;
}

std::optional<PauliOperator> min_weight_coset_rep(const StabilizerCode& code, const PauliOperator& p,
                                                  std::span<const std::size_t> allowed) {
    const std::size_t m = code.generators.size();
    if (m > 24) throw BudgetExceeded("min_weight_coset_rep: stabilizer group too large to enumerate");
    BitVector allowed_mask(code.n);
    if (allowed.empty()) {
        for (std::size_t q = 0; q < code.n; ++q) allowed_mask.set(q);
    } else {
        for (auto q : allowed) allowed_mask.set(q);
    }
    std::optional<PauliOperator> best;
    std::vector<std::size_t> best_support;
    std::string best_letters;
    PauliOperator acc = p;
    const std::uint64_t count = std::uint64_t{1} << m;
    for (std::uint64_t i = 0; i < count; ++i) {
        if (i) acc *= code.generators[static_cast<std::size_t>(std::countr_zero(i))];
        const BitVector supp = acc.support_mask();
        if ((supp & allowed_mask) != supp) continue;
        const auto support = supp.ones();
        if (best) {
            if (support.size() > best_support.size()) continue;
            if (support.size() == best_support.size()) {
                if (support > best_support) continue;
                if (support == best_support) {
                    const std::string letters = format_pauli(acc.unsigned_part());
                    if (letters >= best_letters) continue;
                }
            }
        }
        best = acc;
        best_support = support;
        best_letters = format_pauli(acc.unsigned_part());
    }
    return best;
}

StabilizerCode tensor_product(std::span<const StabilizerCode> codes, const std::string& name) {
    StabilizerCode out;
    out.name = name;
    for (const auto& c : codes) {
        out.n += c.n;
        out.k += c.k;
    }
    std::size_t offset = 0;
    std::optional<int> d;
    for (const auto& c : codes) {
        std::vector<std::size_t> qs(c.n);
        std::iota(qs.begin(), qs.end(), offset);
        for (const auto& g : c.generators) out.generators.push_back(g.embed(out.n, qs));
        for (const auto& l : c.logical_x) out.logical_x.push_back(l.embed(out.n, qs));
        for (const auto& l : c.logical_z) out.logical_z.push_back(l.embed(out.n, qs));
        if (c.claimed_distance) d = d ? std::min(*d, *c.claimed_distance) : *c.claimed_distance;
        offset += c.n;
    }
    out.claimed_distance = d;
    return out;
}

std::string code_to_json(const StabilizerCode& code) {
    nlohmann::ordered_json j;
    j["name"] = code.name;
    j["n"] = code.n;
    j["k"] = code.k;
    std::vector<std::string> stabs;
    for (const auto& g : code.generators) stabs.push_back(format_pauli(g));
    j["stabilizers"] = stabs;
    auto emit = [&](const std::vector<PauliOperator>& ls) -> nlohmann::ordered_json {
        if (ls.size() == 1) return format_pauli(ls.front());
        std::vector<std::string> v;
        for (const auto& l : ls) v.push_back(format_pauli(l));
        return v;
    };
    j["logical_x"] = emit(code.logical_x);
    j["logical_z"] = emit(code.logical_z);
    if (code.claimed_distance) j["claimed_distance"] = *code.claimed_distance;
    return j.dump(2);
}

StabilizerCode code_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("code JSON: ") + e.what());
    }
    StabilizerCode c;
    try {
        c.name = j.at("name").get<std::string>();
        c.n = j.at("n").get<std::size_t>();
        c.k = j.value("k", std::size_t{1});
        for (const auto& s : j.at("stabilizers")) c.generators.push_back(parse_pauli(s.get<std::string>()));
        auto read = [&](const nlohmann::json& v, std::vector<PauliOperator>& dst) {
            if (v.is_string()) {
                dst.push_back(parse_pauli(v.get<std::string>()));
            } else {
                for (const auto& s : v) dst.push_back(parse_pauli(s.get<std::string>()));
            }
        };
        read(j.at("logical_x"), c.logical_x);
        read(j.at("logical_z"), c.logical_z);
        if (j.contains("claimed_distance")) c.claimed_distance = j["claimed_distance"].get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("code JSON: ") + e.what());
    }
    require_valid(c);
    return c;
}

}  // namespace ftcc
