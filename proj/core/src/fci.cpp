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

#include "esvqe/fci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "esvqe/error.hpp"
#include "esvqe/simulator.hpp"

namespace esvqe {

namespace {

constexpr std::size_t kMaxOracleQubits = 20;
constexpr std::size_t kMaxDenseOracleQubits = 10;
constexpr double kResidualTarget = 1e-10;
constexpr int kMaxProducts = 10000;
constexpr std::size_t kKrylovSize = 60;

using Vec = std::vector<Complex>;

std::vector<std::uint64_t> basis_of(std::size_t n_qubits, std::optional<Sector> sector) {
    std::vector<std::uint64_t> out;
    const std::uint64_t dim = std::uint64_t{1} << n_qubits;
    for (std::uint64_t i = 0; i < dim; ++i) {
        if (!sector || in_sector(i, *sector)) out.push_back(i);
    }
    if (out.empty()) throw PreconditionError("requested sector contains no basis states");
    return out;
}

Complex dot(const Vec &a, const Vec &b) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double norm(const Vec &a) { return std::sqrt(std::real(dot(a, a))); }

void axpy(Complex alpha, const Vec &x, Vec &y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

// H restricted to the sector: scatter, apply, gather.
class SectorOperator {
  public:
    SectorOperator(const PauliOperator &op, std::vector<std::uint64_t> basis)
        : op_(op), basis_(std::move(basis)), full_in_(std::size_t{1} << op.n_qubits()),
          full_out_(full_in_.size()) {}

    [[nodiscard]] std::size_t dim() const { return basis_.size(); }

    Vec apply(const Vec &v) {
        std::fill(full_in_.begin(), full_in_.end(), Complex(0.0));
        for (std::size_t k = 0; k < basis_.size(); ++k) full_in_[basis_[k]] = v[k];
        op_.apply(full_in_, full_out_);
        Vec out(basis_.size());
        for (std::size_t k = 0; k < basis_.size(); ++k) out[k] = full_out_[basis_[k]];
        ++products_;
        return out;
    }

    [[nodiscard]] int products() const { return products_; }

  private:
    const PauliOperator &op_;
    std::vector<std::uint64_t> basis_;
    Vec full_in_;
    Vec full_out_;
    int products_ = 0;
};

void check_input(const PauliSum &h, std::size_t max_qubits) {
    if (h.n_qubits() == 0 || h.n_qubits() > max_qubits) {
        throw PreconditionError("oracle supports 1.." + std::to_string(max_qubits) + " qubits");
    }
    if (!h.is_hermitian(1e-12)) throw PreconditionError("oracle needs a Hermitian operator");
}

} // namespace

bool in_sector(std::uint64_t basis_state, Sector sector) {
    constexpr std::uint64_t kEven = 0x5555555555555555ULL;
    const int up = std::popcount(basis_state & kEven);
    const int down = std::popcount(basis_state & ~kEven);
    return up + down == sector.n_elec && up - down == sector.ms2;
}

OracleResult ground_energy(const PauliSum &h, std::optional<Sector> sector, std::uint64_t seed) {
    check_input(h, kMaxOracleQubits);
    const PauliOperator op(h);
    SectorOperator hs(op, basis_of(h.n_qubits(), sector));
    const std::size_t dim = hs.dim();
    const std::size_t m_max = std::min(dim, kKrylovSize);

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    Vec x(dim);
    for (auto &a : x) a = normal(rng);
    {
        const double n = norm(x);
        for (auto &a : x) a /= n;
    }

    OracleResult result;
    while (true) {
        std::vector<Vec> basis{x};
        std::vector<double> alpha;
        std::vector<double> beta;
        for (std::size_t j = 0; j < m_max; ++j) {
            Vec w = hs.apply(basis[j]);
            alpha.push_back(std::real(dot(basis[j], w)));
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass) {
                for (const Vec &v : basis) axpy(-dot(v, w), v, w);
            }
            const double b = norm(w);
            if (j + 1 == m_max || b < 1e-13 * std::max(1.0, std::abs(alpha.back()))) break;
            beta.push_back(b);
            for (auto &a : w) a /= b;
            basis.push_back(std::move(w));
        }

        const auto k = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        const double theta = es.eigenvalues()(0);
        Vec ritz(dim, 0.0);
        for (Eigen::Index i = 0; i < k; ++i) axpy(es.eigenvectors()(i, 0), basis[i], ritz);
        const double rn = norm(ritz);
        for (auto &a : ritz) a /= rn;

        Vec r = hs.apply(ritz);
        axpy(-theta, ritz, r);
        result.e0 = theta;
        result.residual_norm = norm(r);
        result.iterations = hs.products();
        if (result.residual_norm < kResidualTarget) return result;
        if (hs.products() >= kMaxProducts) {
            throw ConvergenceError("Lanczos stopped at residual " +
                                   std::to_string(result.residual_norm) + " after " +
                                   std::to_string(hs.products()) + " products");
        }
        x = std::move(ritz);
    }
}

OracleResult ground_energy_dense(const PauliSum &h, std::optional<Sector> sector) {
    check_input(h, kMaxDenseOracleQubits);
    const auto basis = basis_of(h.n_qubits(), sector);
    const Eigen::MatrixXcd full = matrix_of(h);
    const auto k = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd sub(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index j = 0; j < k; ++j) {
            sub(i, j) = full(static_cast<Eigen::Index>(basis[i]), static_cast<Eigen::Index>(basis[j]));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sub);
    OracleResult result;
    result.e0 = es.eigenvalues()(0);
    const Eigen::VectorXcd v = es.eigenvectors().col(0);
    result.residual_norm = (sub * v - result.e0 * v).norm();
    result.iterations = 1;
    return result;
}

} // namespace esvqe
