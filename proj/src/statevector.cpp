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

#include "ftcc/statevector.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

namespace ftcc {

std::size_t SvBudget::megabytes() const {
    if (max_megabytes) return max_megabytes;
    if (const char* env = std::getenv("FTCC_BUDGET_MB")) {
        std::size_t v = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec == std::errc() && ptr == end && v > 0) return v;
    }
    return 4096;
}

void SvBudget::require(std::size_t n, std::size_t vectors) const {
    if (n > max_qubits)
        throw BudgetExceeded("state vector on " + std::to_string(n) + " qubits exceeds the " +
                             std::to_string(max_qubits) + "-qubit budget");
    const double mb = static_cast<double>(vectors) * std::ldexp(16.0, static_cast<int>(n)) / (1024.0 * 1024.0);
    if (mb > static_cast<double>(megabytes()))
        throw BudgetExceeded("state vectors need " + std::to_string(static_cast<std::size_t>(mb)) +
                             " MB, budget is " + std::to_string(megabytes()) + " MB");
}

namespace {

PauliOperator logical_x_product(const StabilizerCode& code, std::size_t j) {
    PauliOperator p(code.n);
    for (std::size_t b = 0; b < code.k; ++b)
        if ((j >> b) & 1) p *= code.logical_x[b];
    return p;
}

}  // namespace

StateVector encode_basis(const StabilizerCode& code, std::size_t j, const SvBudget& budget) {
    budget.require(code.n, 2);
    if (j >= (std::size_t{1} << code.k)) throw std::invalid_argument("logical basis index out of range");
    std::vector<PauliOperator> projectors = code.generators;
    projectors.insert(projectors.end(), code.logical_z.begin(), code.logical_z.end());
    // The joint +1 eigenspace is one-dimensional; some low basis state overlaps it.
    const std::size_t tries = std::min<std::size_t>(std::size_t{1} << code.n, 4096);
    for (std::size_t b = 0; b < tries; ++b) {
        StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(Eigen::Index{1} << code.n);
        amps(static_cast<Eigen::Index>(b)) = 1.0;
        StateVector s(code.n, std::move(amps));
        for (const auto& g : projectors) s.project(g);
        if (s.norm() < 1e-6) continue;
        s.normalize();
        s.apply_pauli(logical_x_product(code, j));
        return s;
    }
    throw std::runtime_error("no basis state overlaps the logical zero of " + code.name);
}

StateVector encode(const StabilizerCode& code, const std::vector<std::complex<double>>& amplitudes,
                   const SvBudget& budget) {
    const std::size_t dim = std::size_t{1} << code.k;
    if (amplitudes.size() != dim) throw std::invalid_argument("need 2^k logical amplitudes");
    double norm2 = 0;
    for (auto a : amplitudes) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > 1e-9) throw std::invalid_argument("logical amplitudes must have unit norm");
    budget.require(code.n, 3);
    StateVector zero = encode_basis(code, 0, budget);
    StateVector::Amplitudes out = StateVector::Amplitudes::Zero(zero.amplitudes().size());
    for (std::size_t j = 0; j < dim; ++j) {
        if (amplitudes[j] == 0.0) continue;
        StateVector b = zero;
        b.apply_pauli(logical_x_product(code, j));
        out += amplitudes[j] * b.amplitudes();
    }
    return StateVector(code.n, std::move(out));
}

StateVector encode(const StabilizerCode& code, std::complex<double> alpha, std::complex<double> beta,
                   const SvBudget& budget) {
    if (code.k != 1) throw std::invalid_argument("single-qubit encode needs k = 1");
    return encode(code, std::vector<std::complex<double>>{alpha, beta}, budget);
}

Eigen::MatrixXcd logical_unitary(const Circuit& logical_circuit) {
    const std::size_t k = logical_circuit.n;
    if (k > 12) throw BudgetExceeded("logical circuits are limited to 12 qubits");
    const Eigen::Index dim = Eigen::Index{1} << k;
    Eigen::MatrixXcd u(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector::Amplitudes amps = StateVector::Amplitudes::Zero(dim);
        amps(j) = 1.0;
        StateVector s(k, std::move(amps));
        s.apply(logical_circuit);
        u.col(j) = s.amplitudes();
    }
    return u;
}

EquivalenceReport logical_equiv(const Circuit& circuit, const StabilizerCode& code, const Eigen::MatrixXcd& target,
                                double tolerance, const SvBudget& budget) {
    if (circuit.n != code.n) throw std::invalid_argument("circuit width does not match code");
    const std::size_t k = code.k;
    const Eigen::Index dim = Eigen::Index{1} << k;
    if (target.rows() != dim || target.cols() != dim) throw std::invalid_argument("target must be 2^k x 2^k");
    budget.require(code.n, 4);

    EquivalenceReport rep;
    const StateVector zero = encode_basis(code, 0, budget);
    Eigen::MatrixXcd m(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        StateVector out = zero;
        out.apply_pauli(logical_x_product(code, static_cast<std::size_t>(j)));
        out.apply(circuit);
        for (Eigen::Index i = 0; i < dim; ++i)
            m(i, j) = StateVector::matrix_element(zero, logical_x_product(code, static_cast<std::size_t>(i)), out);
        const double kept = m.col(j).squaredNorm();
        if (kept < 1.0 - tolerance) {
            for (std::size_t g = 0; g < code.generators.size(); ++g) {
                const double e = out.expectation(code.generators[g]).real();
                if (e < 1.0 - 1e-6) {
                    std::ostringstream os;
                    os << "output leaves the code space: generator " << g << " ("
                       << format_pauli(code.generators[g]) << ") has expectation " << e;
                    rep.violation = os.str();
                    break;
                }
            }
            if (rep.violation.empty()) rep.violation = "output leaves the code space";
            return rep;
        }
    }

    // Six axis states |0>, |1>, |+>, |->, |+i>, |-i>.
    const double s = 1 / std::sqrt(2.0);
    const std::complex<double> i1(0, 1);
    const Eigen::Vector2cd axes[6] = {
        {1, 0}, {0, 1}, {s, s}, {s, -s}, {s, s * i1}, {s, -s * i1},
    };
    std::size_t combos = 1;
    for (std::size_t q = 0; q < k; ++q) combos *= 6;
    rep.min_fidelity = 1.0;
    bool first = true;
    bool ok = true;
    for (std::size_t c = 0; c < combos; ++c) {
        Eigen::VectorXcd a = Eigen::VectorXcd::Ones(1);
        std::size_t rest = c;
        for (std::size_t q = 0; q < k; ++q) {
            // Logical qubit q is bit q of the basis index.
            const Eigen::Vector2cd& ax = axes[rest % 6];
            rest /= 6;
            Eigen::VectorXcd next(a.size() * 2);
            next << a * ax(0), a * ax(1);
            a = std::move(next);
        }
        const std::complex<double> ov = (target * a).dot(m * a);
        const double fid = std::norm(ov);
        rep.min_fidelity = std::min(rep.min_fidelity, fid);
        const double ph = std::arg(ov);
        if (first) {
            rep.phase = ph;
            first = false;
        } else if (std::abs(std::remainder(ph - rep.phase, 2 * std::numbers::pi)) > 1e-6) {
            ok = false;
        }
        ++rep.inputs_checked;
    }
    rep.equivalent = ok && rep.min_fidelity >= 1.0 - tolerance;
    return rep;
}

void dump_state(const StateVector& s, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    auto put = [&](double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        char bytes[8];
        for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
        out.write(bytes, 8);
    };
    for (const auto& a : s.amplitudes()) {
        put(a.real());
        put(a.imag());
    }
    if (!out) throw std::runtime_error("short write to " + path);
}

}  // namespace ftcc
