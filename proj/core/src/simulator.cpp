// Copyright 2026 The esvqe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "esvqe/simulator.hpp"

#include <bit>
#include <cmath>
#include <map>

#include "esvqe/error.hpp"

namespace esvqe {

namespace {

constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

inline double parity_sign(std::uint64_t v) { return (std::popcount(v) & 1) ? -1.0 : 1.0; }

} // namespace

const char *to_string(Phase phase) {
    return phase == Phase::Selection ? "selection" : "optimization";
}

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(std::size_t{1} << n_qubits, Complex{}),
      counter_(std::make_shared<EvalCounter>()) {
    if (n_qubits > 30) {
        throw SizeMismatchError("state vectors are limited to 30 qubits");
    }
    amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)),
      counter_(std::make_shared<EvalCounter>()) {
    if (amps_.size() != (std::size_t{1} << n_qubits)) {
        throw SizeMismatchError("amplitude count does not match 2^n_qubits");
    }
}

double StateVector::norm() const {
    double acc = 0.0;
    for (const Complex &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

Complex StateVector::inner(const StateVector &other) const {
    if (other.dim() != dim()) {
        throw SizeMismatchError("state dimensions differ");
    }
    Complex acc{};
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

PauliOperator::PauliOperator(const PauliSum &sum, std::size_t diagonal_budget_bytes)
    : n_qubits_(sum.n_qubits()), term_count_(sum.size()), hermitian_(sum.is_hermitian()),
      sum_(sum) {
    std::map<std::uint64_t, Group> by_x;
    for (const auto &[key, c] : sum.terms()) {
        const auto [x, z] = key;
        Group &g = by_x[x];
        g.x = x;
        g.z.push_back(z);
        g.weight.push_back(c * kPhases[std::popcount(x & z) % 4]);
    }
    groups_.reserve(by_x.size());
    for (auto &[x, g] : by_x) {
        groups_.push_back(std::move(g));
    }

    const std::size_t dim = std::size_t{1} << n_qubits_;
    const std::size_t bytes = groups_.size() * dim * sizeof(Complex);
    if (term_count_ > groups_.size() && bytes <= diagonal_budget_bytes) {
        for (Group &g : groups_) {
            g.diagonal.assign(dim, Complex{});
            for (std::size_t t = 0; t < g.z.size(); ++t) {
                const std::uint64_t z = g.z[t];
                const Complex w = g.weight[t];
                for (std::size_t i = 0; i < dim; ++i) {
                    g.diagonal[i] += parity_sign(z & i) * w;
                }
            }
        }
    }
}

Complex PauliOperator::Group::weight_at(std::uint64_t i) const {
    if (!diagonal.empty()) return diagonal[i];
    Complex w{};
    for (std::size_t t = 0; t < z.size(); ++t) {
        w += parity_sign(z[t] & i) * weight[t];
    }
    return w;
}

// The hot loops below spell out complex products on re/im parts: std::complex
// multiplication carries an inf/nan recovery branch that blocks vectorization.

void PauliOperator::apply(std::span<const Complex> in, std::span<Complex> out) const {
    const std::size_t dim = in.size();
    if (dim != (std::size_t{1} << n_qubits_) || out.size() != dim) {
        throw SizeMismatchError("operator and state sizes differ");
    }
    std::fill(out.begin(), out.end(), Complex{});
    const auto *src = reinterpret_cast<const double *>(in.data());
    auto *dst = reinterpret_cast<double *>(out.data());
    for (const Group &g : groups_) {
        if (!g.diagonal.empty()) {
            const auto *d = reinterpret_cast<const double *>(g.diagonal.data());
            for (std::size_t i = 0; i < dim; ++i) {
                const std::size_t j = i ^ g.x;
                const double dr = d[2 * i], di = d[2 * i + 1];
                const double ar = src[2 * i], ai = src[2 * i + 1];
                dst[2 * j] += dr * ar - di * ai;
                dst[2 * j + 1] += dr * ai + di * ar;
            }
        } else {
            for (std::size_t i = 0; i < dim; ++i) {
                if (in[i] == Complex{}) {
                    continue;
                }
                out[i ^ g.x] += g.weight_at(i) * in[i];
            }
        }
    }
}

Complex PauliOperator::braket(std::span<const Complex> in) const {
    const std::size_t dim = in.size();
    if (dim != (std::size_t{1} << n_qubits_)) {
        throw SizeMismatchError("operator and state sizes differ");
    }
    Complex total{};
    for (const Group &g : groups_) {
        Complex acc{};
        for (std::size_t i = 0; i < dim; ++i) {
            if (in[i] == Complex{}) {
                continue;
            }
            acc += std::conj(in[i ^ g.x]) * g.weight_at(i) * in[i];
        }
        total += acc;
    }
    return total;
}

double PauliOperator::hermitian_braket(std::span<const Complex> in) const {
    const std::size_t dim = in.size();
    if (dim != (std::size_t{1} << n_qubits_)) {
        throw SizeMismatchError("operator and state sizes differ");
    }
    const auto *a = reinterpret_cast<const double *>(in.data());
    double total = 0.0;
    for (const Group &g : groups_) {
        double acc = 0.0;
        if (g.x == 0) {
            for (std::size_t i = 0; i < dim; ++i) {
                const double w = g.weight_at(i).real();
                acc += w * (a[2 * i] * a[2 * i] + a[2 * i + 1] * a[2 * i + 1]);
            }
            total += acc;
            continue;
        }
        // <j|O|i> = D_i and <i|O|j> = conj(D_i) for j = i ^ x, so each pair
        // contributes 2 Re(conj(psi_j) D_i psi_i).
        const std::size_t low = g.x & (~g.x + 1);
        const auto *d = g.diagonal.empty() ? nullptr
                                           : reinterpret_cast<const double *>(g.diagonal.data());
        for (std::size_t hi = 0; hi < dim; hi += 2 * low) {
            for (std::size_t i = hi; i < hi + low; ++i) {
                const std::size_t j = i ^ g.x;
                double dr, di;
                if (d) {
                    dr = d[2 * i];
                    di = d[2 * i + 1];
                } else {
                    const Complex w = g.weight_at(i);
                    dr = w.real();
                    di = w.imag();
                }
                const double pr = dr * a[2 * i] - di * a[2 * i + 1];
                const double pi = dr * a[2 * i + 1] + di * a[2 * i];
                acc += a[2 * j] * pr + a[2 * j + 1] * pi;
            }
        }
        total += 2.0 * acc;
    }
    return total;
}

StateVector prepare_basis_state(std::size_t n_qubits, Occupation occupation) {
    if (n_qubits < 64 && (occupation.bits() >> n_qubits) != 0) {
        throw IndexError("occupation does not fit in the register");
    }
    StateVector s(n_qubits);
    s[0] = 0.0;
    s[occupation.bits()] = 1.0;
    return s;
}

void apply_generator_exponential_inplace(StateVector &s, const PauliOperator &g, double theta) {
    if (g.n_qubits() != s.n_qubits()) {
        throw SizeMismatchError("generator and state qubit counts differ");
    }
    if (theta == 0.0) {
        return;
    }
    const std::size_t dim = s.dim();
    std::vector<Complex> g1(dim);
    std::vector<Complex> g2(dim);
    g.apply(s.amplitudes(), g1);
    g.apply(g1, g2);
    const double cm1 = std::cos(theta) - 1.0;
    const Complex ms = Complex(0.0, -std::sin(theta));
    auto *amps = reinterpret_cast<double *>(s.amplitudes().data());
    const auto *p1 = reinterpret_cast<const double *>(g1.data());
    const auto *p2 = reinterpret_cast<const double *>(g2.data());
    const double sn = ms.imag();
    for (std::size_t i = 0; i < dim; ++i) {
        amps[2 * i] += cm1 * p2[2 * i] - sn * p1[2 * i + 1];
        amps[2 * i + 1] += cm1 * p2[2 * i + 1] + sn * p1[2 * i];
    }
}

StateVector apply_generator_exponential(const StateVector &s, const PauliOperator &g,
                                        double theta) {
    StateVector out = s;
    apply_generator_exponential_inplace(out, g, theta);
    return out;
}

double expectation(const StateVector &s, const PauliOperator &h, Phase phase) {
    if (!h.is_hermitian()) {
        throw PreconditionError("expectation requires a Hermitian operator");
    }
    if (h.n_qubits() != s.n_qubits()) {
        throw SizeMismatchError("Hamiltonian and state qubit counts differ");
    }
    const double value = h.hermitian_braket(s.amplitudes());
    s.counter().add(phase);
    return value;
}

StateVector apply_pauli_rotation(const StateVector &s, const PauliString &p, double theta) {
    if (p.phase() != 0) {
        throw PreconditionError("Pauli rotation needs a phase-free string");
    }
    if (p.n_qubits() != s.n_qubits()) {
        throw SizeMismatchError("Pauli string and state qubit counts differ");
    }
    StateVector out = s;
    const Complex base = kPhases[std::popcount(p.x_mask() & p.z_mask()) % 4];
    const double c = std::cos(theta);
    const Complex ms = Complex(0.0, -std::sin(theta));
    auto in = s.amplitudes();
    auto amps = out.amplitudes();
    for (std::size_t i = 0; i < s.dim(); ++i) {
        amps[i] = c * in[i];
    }
    for (std::size_t i = 0; i < s.dim(); ++i) {
        amps[i ^ p.x_mask()] += ms * base * parity_sign(p.z_mask() & i) * in[i];
    }
    return out;
}

} // namespace esvqe
