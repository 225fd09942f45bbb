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

// Test-only dense-matrix oracle for few-qubit gates and Paulis. Qubit 0 is
// the least significant bit of the basis index.

#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

#include "ftcc/circuit.hpp"
#include "ftcc/pauli.hpp"

namespace ftcc::testing {

using Dense = Eigen::MatrixXcd;
using Cx = std::complex<double>;

inline Dense pauli_matrix(const PauliOperator& p) {
    const std::size_t n = p.num_qubits(), d = std::size_t{1} << n;
    static const Cx ip[4] = {1.0, {0, 1}, -1.0, {0, -1}};
    Dense m = Dense::Zero(d, d);
    for (std::size_t c = 0; c < d; ++c) {
        std::size_t r = c;
        Cx v = ip[p.phase()];
        for (std::size_t q = 0; q < n; ++q) {
            const bool bit = (c >> q) & 1;
            const char l = p.letter(q);
            if (l == 'X' || l == 'Y') r ^= std::size_t{1} << q;
            if (l == 'Z' && bit) v *= -1.0;
            if (l == 'Y') v *= bit ? Cx(0, -1) : Cx(0, 1);
        }
        m(r, c) = v;
    }
    return m;
}

inline Dense single_qubit_unitary(GateKind kind, double theta) {
    const double s = 1 / std::sqrt(2.0);
    Dense u(2, 2);
    const Cx i(0, 1);
    switch (kind) {
        case GateKind::H: u << s, s, s, -s; break;
        case GateKind::S: u << 1, 0, 0, i; break;
        case GateKind::SDG: u << 1, 0, 0, -i; break;
        case GateKind::K: {
            Dense h(2, 2), sm(2, 2);
            h << s, s, s, -s;
            sm << 1, 0, 0, i;
            u = sm * h;
            break;
        }
        case GateKind::KDG: {
            Dense h(2, 2), sm(2, 2);
            h << s, s, s, -s;
            sm << 1, 0, 0, i;
            u = (sm * h).adjoint();
            break;
        }
        case GateKind::T:
        case GateKind::TDG:
        case GateKind::ZTHETA: u << 1, 0, 0, std::exp(i * theta); break;
        case GateKind::X: u << 0, 1, 1, 0; break;
        case GateKind::Y: u << 0, -i, i, 0; break;
        case GateKind::Z: u << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("not a single-qubit kind");
    }
    return u;
}

/// Dense unitary of a gate acting on an n-qubit register.
inline Dense gate_unitary(const Gate& g, std::size_t n) {
    const std::size_t d = std::size_t{1} << n;
    Dense u = Dense::Zero(d, d);
    switch (g.kind) {
        case GateKind::CNOT:
            for (std::size_t c = 0; c < d; ++c) {
                std::size_t r = c;
                if ((c >> g.qubits[0]) & 1) r ^= std::size_t{1} << g.qubits[1];
                u(r, c) = 1;
            }
            return u;
        case GateKind::CZ:
        case GateKind::CCZ:
        case GateKind::CKZ: {
            const double th = g.kind == GateKind::CKZ ? g.theta : std::numbers::pi;
            for (std::size_t c = 0; c < d; ++c) {
                bool all = true;
                for (auto q : g.qubits) all &= ((c >> q) & 1) != 0;
                u(c, c) = all ? std::exp(Cx(0, th)) : Cx(1);
            }
            return u;
        }
        case GateKind::PERMUTE:
            for (std::size_t c = 0; c < d; ++c) {
                std::size_t r = c;
                for (std::size_t j = 0; j < g.qubits.size(); ++j) {
                    const std::size_t dst = g.qubits[g.perm[j]];
                    r &= ~(std::size_t{1} << dst);
                }
                for (std::size_t j = 0; j < g.qubits.size(); ++j)
                    if ((c >> g.qubits[j]) & 1) r |= std::size_t{1} << g.qubits[g.perm[j]];
                u(r, c) = 1;
            }
            return u;
        default: {
            const Dense s = single_qubit_unitary(g.kind, g.theta);
            const std::size_t q = g.qubits[0];
            for (std::size_t c = 0; c < d; ++c) {
                const std::size_t b = (c >> q) & 1;
                for (std::size_t a = 0; a < 2; ++a) {
                    const std::size_t r = (c & ~(std::size_t{1} << q)) | (a << q);
                    u(r, c) += s(a, b);
                }
            }
            return u;
        }
    }
}

inline Dense circuit_unitary(const Circuit& c) {
    const std::size_t d = std::size_t{1} << c.n;
    Dense u = Dense::Identity(d, d);
    for (const auto& g : c.gates)
        if (!g.is_marker()) u = gate_unitary(g, c.n) * u;
    return u;
}

}  // namespace ftcc::testing
