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

#pragma once

#include <Eigen/Dense>
#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ftcc/circuit.hpp"
#include "ftcc/code.hpp"
#include "ftcc/pauli.hpp"

namespace ftcc {

/// Limits for dense simulation. `max_megabytes` defaults to FTCC_BUDGET_MB
/// when that variable is set, else 4096.
struct SvBudget {
    std::size_t max_qubits = 24;
    std::size_t max_megabytes = 0;  // 0 = read from the environment

    std::size_t megabytes() const;
    /// Throws BudgetExceeded if `vectors` states on n qubits would not fit.
    void require(std::size_t n, std::size_t vectors) const;
};

/// Dense pure state on n qubits; qubit q is bit q of the basis index.
template <typename Scalar>
class BasicStateVector {
   public:
    using Complex = std::complex<Scalar>;
    using Amplitudes = Eigen::Matrix<Complex, Eigen::Dynamic, 1>;

    BasicStateVector() = default;
    /// |0...0>.
    explicit BasicStateVector(std::size_t n) : n_(n), amps_(Amplitudes::Zero(Eigen::Index{1} << n)) {
        amps_(0) = Complex(1);
    }
    BasicStateVector(std::size_t n, Amplitudes amps) : n_(n), amps_(std::move(amps)) {
        if (amps_.size() != (Eigen::Index{1} << n)) throw std::invalid_argument("amplitude count is not 2^n");
    }

    std::size_t num_qubits() const { return n_; }
    const Amplitudes& amplitudes() const { return amps_; }
    Amplitudes& amplitudes() { return amps_; }
    Scalar norm() const { return amps_.norm(); }
    void normalize() { amps_ /= amps_.norm(); }

    /// In-place P|psi>.
    void apply_pauli(const PauliOperator& p) {
        auto [xm, zm, ph] = masks(p);
        const Complex f = ipow(ph);
        if (xm == 0) {
            for (Eigen::Index c = 0; c < amps_.size(); ++c)
                amps_(c) *= parity(c & zm) ? -f : f;
            return;
        }
        const std::uint64_t hi = std::uint64_t{1} << (63 - std::countl_zero(xm));
        for (Eigen::Index c = 0; c < amps_.size(); ++c) {
            if (static_cast<std::uint64_t>(c) & hi) continue;
            const Eigen::Index d = c ^ static_cast<Eigen::Index>(xm);
            const Complex a = amps_(c), b = amps_(d);
            amps_(d) = parity(c & zm) ? -f * a : f * a;
            amps_(c) = parity(d & zm) ? -f * b : f * b;
        }
    }

    /// <a|P|b> without materializing P|b>.
    static Complex matrix_element(const BasicStateVector& a, const PauliOperator& p, const BasicStateVector& b) {
        auto [xm, zm, ph] = masks(p);
        Complex acc(0);
        for (Eigen::Index c = 0; c < b.amps_.size(); ++c) {
            const Complex v = parity(c & zm) ? -b.amps_(c) : b.amps_(c);
            acc += std::conj(a.amps_(c ^ static_cast<Eigen::Index>(xm))) * v;
        }
        return acc * ipow(ph);
    }
    Complex expectation(const PauliOperator& p) const { return matrix_element(*this, p, *this); }
    Complex inner(const BasicStateVector& o) const { return amps_.dot(o.amps_); }

    /// Applies (I + P) / 2.
    void project(const PauliOperator& p) {
        BasicStateVector img = *this;
        img.apply_pauli(p);
        amps_ = (amps_ + img.amps_) * Scalar(0.5);
    }

    void apply_gate(const Gate& g) {
        using enum GateKind;
        switch (g.kind) {
            case X:
            case Y:
            case Z: apply_pauli(PauliOperator::single(n_, g.qubits[0], kind_name(g.kind)[0])); return;
            case H: {
                const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
                apply_1q(g.qubits[0], Complex(s), Complex(s), Complex(s), Complex(-s));
                return;
            }
            case K: {
                const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
                apply_1q(g.qubits[0], Complex(s), Complex(s), Complex(0, s), Complex(0, -s));
                return;
            }
            case KDG: {
                const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
                apply_1q(g.qubits[0], Complex(s), Complex(0, -s), Complex(s), Complex(0, s));
                return;
            }
            case S:
            case SDG:
            case T:
            case TDG:
            case ZTHETA:
            case CZ:
            case CCZ:
            case CKZ: {
                std::uint64_t m = 0;
                for (auto q : g.qubits) m |= std::uint64_t{1} << q;
                const Scalar th = g.kind == S ? std::numbers::pi_v<Scalar> / 2
                                  : g.kind == SDG ? -std::numbers::pi_v<Scalar> / 2
                                  : g.kind == CZ ? std::numbers::pi_v<Scalar>
                                                 : static_cast<Scalar>(g.theta);
                const Complex ph = std::polar(Scalar(1), th);
                for (Eigen::Index c = 0; c < amps_.size(); ++c)
                    if ((static_cast<std::uint64_t>(c) & m) == m) amps_(c) *= ph;
                return;
            }
            case CNOT: {
                const std::uint64_t cm = std::uint64_t{1} << g.qubits[0], tm = std::uint64_t{1} << g.qubits[1];
                for (Eigen::Index c = 0; c < amps_.size(); ++c) {
                    const auto u = static_cast<std::uint64_t>(c);
                    if ((u & cm) && !(u & tm)) std::swap(amps_(c), amps_(static_cast<Eigen::Index>(u | tm)));
                }
                return;
            }
            case PERMUTE: {
                Amplitudes out(amps_.size());
                std::uint64_t clear = 0;
                for (auto q : g.qubits) clear |= std::uint64_t{1} << q;
                for (Eigen::Index c = 0; c < amps_.size(); ++c) {
                    const auto u = static_cast<std::uint64_t>(c);
                    std::uint64_t r = u & ~clear;
                    for (std::size_t j = 0; j < g.qubits.size(); ++j)
                        if ((u >> g.qubits[j]) & 1) r |= std::uint64_t{1} << g.qubits[g.perm[j]];
                    out(static_cast<Eigen::Index>(r)) = amps_(c);
                }
                amps_ = std::move(out);
                return;
            }
            case EC:
            case PIECE:
            case OPAQUE: break;
        }
        throw std::invalid_argument("state vector cannot apply " + std::string(kind_name(g.kind)));
    }

    /// Ideal run: EC and PIECE markers act as the identity.
    void apply(const Circuit& c) {
        if (c.n != n_) throw std::invalid_argument("circuit width does not match state");
        for (const auto& g : c.gates)
            if (!g.is_marker()) apply_gate(g);
    }

   private:
    struct Masks {
        std::uint64_t x, z;
        int phase;
    };
    static Masks masks(const PauliOperator& p) {
        if (p.num_qubits() > 63) throw std::invalid_argument("Pauli too wide for a dense state");
        Masks m{p.x().num_words() ? p.x().word(0) : 0, p.z().num_words() ? p.z().word(0) : 0, p.phase()};
        // Y = i X Z, so P = i^{phase + #Y} X^x Z^z.
        m.phase += std::popcount(m.x & m.z);
        return m;
    }
    static bool parity(std::uint64_t v) { return std::popcount(v) & 1; }
    static bool parity(Eigen::Index v) { return parity(static_cast<std::uint64_t>(v)); }
    static Complex ipow(int k) {
        switch (((k % 4) + 4) % 4) {
            case 0: return Complex(1);
            case 1: return Complex(0, 1);
            case 2: return Complex(-1);
            default: return Complex(0, -1);
        }
    }

    /// Applies [[u00, u01], [u10, u11]] to qubit q.
    void apply_1q(std::size_t q, Complex u00, Complex u01, Complex u10, Complex u11) {
        const Eigen::Index m = Eigen::Index{1} << q;
        for (Eigen::Index c = 0; c < amps_.size(); ++c) {
            if (c & m) continue;
            const Complex a = amps_(c), b = amps_(c | m);
            amps_(c) = u00 * a + u01 * b;
            amps_(c | m) = u10 * a + u11 * b;
        }
    }

    std::size_t n_ = 0;
    Amplitudes amps_;
};

using StateVector = BasicStateVector<double>;

/// Encoded basis state |j_L> = X_L^j |0_L>, where |0_L> is the +1 eigenstate
/// of every generator and every logical Z.
StateVector encode_basis(const StabilizerCode& code, std::size_t j, const SvBudget& budget = {});
/// sum_j amplitudes[j] |j_L>; amplitudes has 2^k entries and unit norm.
StateVector encode(const StabilizerCode& code, const std::vector<std::complex<double>>& amplitudes,
                   const SvBudget& budget = {});
StateVector encode(const StabilizerCode& code, std::complex<double> alpha, std::complex<double> beta,
                   const SvBudget& budget = {});

struct EquivalenceReport {
    bool equivalent = false;
    double min_fidelity = 0.0;
    double phase = 0.0;  // global phase (radians) of the first axis input
    std::size_t inputs_checked = 0;
    std::string violation;  // set when the circuit leaves the code space
};

/// Compares `circuit` on the encoded space of `code` (k logical qubits)
/// against `target` (2^k x 2^k) over every product of the six single-qubit
/// axis states, requiring one common global phase.
EquivalenceReport logical_equiv(const Circuit& circuit, const StabilizerCode& code, const Eigen::MatrixXcd& target,
                                double tolerance = 1e-9, const SvBudget& budget = {});

/// Dense unitary of a k-qubit logical circuit (the comparison target).
Eigen::MatrixXcd logical_unitary(const Circuit& logical_circuit);

/// Writes amplitudes as little-endian complex128 pairs.
void dump_state(const StateVector& s, const std::string& path);

}  // namespace ftcc
