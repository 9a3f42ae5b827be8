// Copyright 2026 The stabsim Authors
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

#include "stabsim/extent.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace stabsim {

using cd = std::complex<double>;

namespace {

std::vector<long long> canonical_key(Amplitudes &amps) {
    cd phase = 0;
    for (const auto &a : amps) {
        if (std::abs(a) > 1e-9) {
            phase = std::conj(a) / std::abs(a);
            break;
        }
    }
    std::vector<long long> key;
    key.reserve(2 * amps.size());
    for (auto &a : amps) {
        a *= phase;
        key.push_back(std::llround(a.real() * 1e7));
        key.push_back(std::llround(a.imag() * 1e7));
    }
    return key;
}

StabilizerDictionary build_dictionary(size_t n) {
    std::vector<Op> moves;
    for (size_t q = 0; q < n; q++) {
        moves.push_back({Gate::H, {q}, 0});
        moves.push_back({Gate::S, {q}, 0});
        for (size_t r = 0; r < n; r++) {
            if (r != q) {
                moves.push_back({Gate::CX, {q, r}, 0});
            }
        }
    }
    std::map<std::vector<long long>, size_t> seen;
    std::vector<Amplitudes> found;
    DenseState start = DenseState::zero(n);
    seen.emplace(canonical_key(start.amps), 0);
    found.push_back(start.amps);
    for (size_t k = 0; k < found.size(); k++) {
        for (const auto &op : moves) {
            DenseState next{n, found[k]};
            dense_apply(next, op);
            auto key = canonical_key(next.amps);
            if (seen.emplace(std::move(key), found.size()).second) {
                found.push_back(std::move(next.amps));
            }
        }
    }
    StabilizerDictionary dict;
    dict.n = n;
    dict.states.resize((Eigen::Index)(size_t{1} << n), (Eigen::Index)found.size());
    for (size_t c = 0; c < found.size(); c++) {
        for (size_t r = 0; r < found[c].size(); r++) {
            dict.states((Eigen::Index)r, (Eigen::Index)c) = found[c][r];
        }
    }
    return dict;
}

size_t qubits_of(const Amplitudes &psi) {
    size_t dim = psi.size();
    size_t n = (size_t)std::countr_zero(dim);
    if (dim == 0 || (size_t{1} << n) != dim || n == 0 || n > 3) {
        throw std::invalid_argument("stabilizer dictionary supports 1 to 3 qubits");
    }
    double norm = 0;
    for (const auto &a : psi) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1) > 1e-9) {
        throw std::invalid_argument("state must be normalized");
    }
    return n;
}

Eigen::VectorXcd to_eigen(const Amplitudes &psi) {
    Eigen::VectorXcd v((Eigen::Index)psi.size());
    for (size_t k = 0; k < psi.size(); k++) {
        v((Eigen::Index)k) = psi[k];
    }
    return v;
}

// Lawson-Hanson active set solver for min |B r - b| subject to r >= 0.
Eigen::VectorXd nnls(const Eigen::MatrixXd &B, const Eigen::VectorXd &b) {
    const Eigen::Index n = B.cols();
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    std::vector<bool> passive((size_t)n, false);
    const double eps = 1e-12;
    for (int iter = 0; iter < 3 * n + 10; iter++) {
        Eigen::VectorXd w = B.transpose() * (b - B * r);
        Eigen::Index best = -1;
        for (Eigen::Index j = 0; j < n; j++) {
            if (!passive[(size_t)j] && w(j) > eps && (best < 0 || w(j) > w(best))) {
                best = j;
            }
        }
        if (best < 0) {
            break;
        }
        passive[(size_t)best] = true;
        while (true) {
            std::vector<Eigen::Index> idx;
            for (Eigen::Index j = 0; j < n; j++) {
                if (passive[(size_t)j]) {
                    idx.push_back(j);
                }
            }
            Eigen::MatrixXd Bp(B.rows(), (Eigen::Index)idx.size());
            for (size_t k = 0; k < idx.size(); k++) {
                Bp.col((Eigen::Index)k) = B.col(idx[k]);
            }
            Eigen::VectorXd zp = Bp.completeOrthogonalDecomposition().solve(b);
            bool feasible = true;
            for (Eigen::Index k = 0; k < zp.size(); k++) {
                feasible = feasible && zp(k) > 0;
            }
            if (feasible) {
                for (size_t k = 0; k < idx.size(); k++) {
                    r(idx[k]) = zp((Eigen::Index)k);
                }
                break;
            }
            double alpha = 1;
            for (size_t k = 0; k < idx.size(); k++) {
                double z = zp((Eigen::Index)k);
                if (z <= 0) {
                    double cur = r(idx[k]);
                    alpha = std::min(alpha, cur / (cur - z));
                }
            }
            for (size_t k = 0; k < idx.size(); k++) {
                double &cur = r(idx[k]);
                cur += alpha * (zp((Eigen::Index)k) - cur);
                if (cur <= eps) {
                    cur = 0;
                    passive[(size_t)idx[k]] = false;
                }
            }
        }
    }
    return r;
}

}  // namespace

const StabilizerDictionary &enumerate_stabilizers(size_t n) {
    if (n < 1 || n > 3) {
        throw std::invalid_argument("enumerate_stabilizers supports n in {1, 2, 3}");
    }
    static std::mutex lock;
    static std::map<size_t, StabilizerDictionary> cache;
    std::lock_guard guard(lock);
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, build_dictionary(n)).first;
    }
    return it->second;
}

double stabilizer_fidelity(const Amplitudes &psi) {
    size_t n = qubits_of(psi);
    const auto &dict = enumerate_stabilizers(n);
    Eigen::VectorXcd overlaps = dict.states.adjoint() * to_eigen(psi);
    return overlaps.cwiseAbs2().maxCoeff();
}

ExtentResult solve_extent(const Amplitudes &psi, double tol) {
    size_t n = qubits_of(psi);
    const Eigen::MatrixXcd &M = enumerate_stabilizers(n).states;
    const Eigen::VectorXcd a = to_eigen(psi);
    const Eigen::Index m = M.rows();
    const Eigen::Index N = M.cols();

    // Real form: A z = b with z_j = (Re c_j, Im c_j), cones t_j >= |z_j|.
    Eigen::MatrixXd A(2 * m, 2 * N);
    for (Eigen::Index j = 0; j < N; j++) {
        A.block(0, 2 * j, m, 1) = M.col(j).real();
        A.block(m, 2 * j, m, 1) = M.col(j).imag();
        A.block(0, 2 * j + 1, m, 1) = -M.col(j).imag();
        A.block(m, 2 * j + 1, m, 1) = M.col(j).real();
    }
    Eigen::VectorXd b(2 * m);
    b << a.real(), a.imag();

    const auto gram = (M * M.adjoint()).ldlt();
    Eigen::VectorXcd c0 = M.adjoint() * gram.solve(a);
    Eigen::VectorXd z(2 * N), t(N);
    for (Eigen::Index j = 0; j < N; j++) {
        z(2 * j) = c0(j).real();
        z(2 * j + 1) = c0(j).imag();
        t(j) = std::abs(c0(j)) + 1.0;
    }

    auto barrier_value = [&](const Eigen::VectorXd &zz, const Eigen::VectorXd &tt, double tau, bool &ok) {
        double f = 0;
        ok = true;
        for (Eigen::Index j = 0; j < N; j++) {
            double s = tt(j) * tt(j) - zz(2 * j) * zz(2 * j) - zz(2 * j + 1) * zz(2 * j + 1);
            if (!(tt(j) > 0) || !(s > 0)) {
                ok = false;
                return 0.0;
            }
            f += tau * tt(j) - std::log(s);
        }
        return f;
    };

    auto witness_bound = [&](const Eigen::VectorXcd &y) {
        double top = std::norm(y.dot(a));
        double worst = (M.adjoint() * y).cwiseAbs2().maxCoeff();
        return worst > 0 ? top / worst : 0.0;
    };

    // Complementary slackness: an optimal c is supported where the optimal witness is tight, with
    // c_j = r_j <s_j, y> and r_j >= 0. Given a guess of the support, Gauss-Newton on
    // |<s_j, y>| = 1 and sum_j r_j <s_j, y> s_j = a sharpens both certificates.
    auto refine = [&](const std::vector<Eigen::Index> &sup, const std::vector<double> &mag,
                      const Eigen::VectorXcd &w, Eigen::VectorXcd &c, Eigen::VectorXcd &yv,
                      std::vector<double> &rout) {
        const Eigen::Index T = (Eigen::Index)sup.size();
        Eigen::VectorXd x(2 * m + T);
        x.head(m) = w.real();
        x.segment(m, m) = w.imag();
        for (Eigen::Index k = 0; k < T; k++) {
            x(2 * m + k) = mag[(size_t)k];
        }
        auto residual = [&](const Eigen::VectorXd &xx) {
            Eigen::VectorXcd yr = xx.head(m).cast<cd>() + cd(0, 1) * xx.segment(m, m).cast<cd>();
            Eigen::VectorXd f(T + 2 * m);
            Eigen::VectorXcd sum = -a;
            for (Eigen::Index k = 0; k < T; k++) {
                cd u = M.col(sup[(size_t)k]).dot(yr);
                f(k) = std::norm(u) - 1;
                sum += xx(2 * m + k) * u * M.col(sup[(size_t)k]);
            }
            f.tail(2 * m) << sum.real(), sum.imag();
            return f;
        };
        Eigen::VectorXd f = residual(x);
        for (int it = 0; it < 30 && T > 0 && f.norm() > 1e-15; it++) {
            Eigen::MatrixXd J(T + 2 * m, 2 * m + T);
            const double h = 1e-7;
            for (Eigen::Index col = 0; col < J.cols(); col++) {
                Eigen::VectorXd xp = x, xm = x;
                xp(col) += h;
                xm(col) -= h;
                J.col(col) = (residual(xp) - residual(xm)) / (2 * h);
            }
            Eigen::VectorXd nx = x - J.completeOrthogonalDecomposition().solve(f);
            Eigen::VectorXd nf = residual(nx);
            if (!(nf.norm() < f.norm())) {
                break;
            }
            x = nx;
            f = nf;
        }
        yv = x.head(m).cast<cd>() + cd(0, 1) * x.segment(m, m).cast<cd>();
        rout.assign(x.data() + 2 * m, x.data() + 2 * m + T);
        c = Eigen::VectorXcd::Zero(N);
        for (Eigen::Index k = 0; k < T; k++) {
            cd u = M.col(sup[(size_t)k]).dot(yv);
            c(sup[(size_t)k]) = std::max(x(2 * m + k), 0.0) * u / std::abs(u);
        }
        c += M.adjoint() * gram.solve(a - M * c);
    };

    // Witness scaled so that <y, a> > 0 and max_j |<s_j, y>| = 1.
    auto normalized = [&](const Eigen::VectorXcd &yy) {
        cd ya = yy.dot(a);
        Eigen::VectorXcd w = yy * (std::abs(ya) > 0 ? ya / std::abs(ya) : cd(1));
        return Eigen::VectorXcd(w / (M.adjoint() * w).cwiseAbs().maxCoeff());
    };

    // Support guesses: the witness-tight set pruned by nonnegative least squares.
    auto from_witness = [&](const Eigen::VectorXcd &w, double slack, std::vector<Eigen::Index> &sup,
                            std::vector<double> &mag) {
        Eigen::VectorXcd ov = M.adjoint() * w;
        std::vector<Eigen::Index> tight;
        for (Eigen::Index j = 0; j < N; j++) {
            if (std::abs(ov(j)) >= 1 - slack) {
                tight.push_back(j);
            }
        }
        Eigen::MatrixXd B(2 * m, (Eigen::Index)tight.size());
        for (size_t k = 0; k < tight.size(); k++) {
            Eigen::VectorXcd u = M.col(tight[k]) * (ov(tight[k]) / std::abs(ov(tight[k])));
            B.col((Eigen::Index)k) << u.real(), u.imag();
        }
        Eigen::VectorXd r = nnls(B, b);
        sup.clear();
        mag.clear();
        for (size_t k = 0; k < tight.size(); k++) {
            if (r((Eigen::Index)k) > 0) {
                sup.push_back(tight[k]);
                mag.push_back(r((Eigen::Index)k));
            }
        }
    };

    ExtentResult result;
    double tau = 1.0;
    Eigen::VectorXcd y = a;
    // Every witness gives a valid lower bound and every feasible c an upper bound; keep the best of each.
    double best_lower = witness_bound(a);
    Eigen::VectorXcd best_y = a;
    double best_upper = std::numeric_limits<double>::infinity();
    Eigen::VectorXcd best_c;
    std::vector<Eigen::Matrix3d> hinv((size_t)N);
    std::vector<Eigen::Vector3d> grad((size_t)N);
    for (int outer = 0; outer < 40 && tau < 1e18; outer++) {
        for (int inner = 0; inner < 100; inner++) {
            Eigen::MatrixXd S = Eigen::MatrixXd::Zero(2 * m, 2 * m);
            Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * m);
            for (Eigen::Index j = 0; j < N; j++) {
                double tj = t(j), z1 = z(2 * j), z2 = z(2 * j + 1);
                double s = tj * tj - z1 * z1 - z2 * z2;
                Eigen::Vector3d ds(2 * tj, -2 * z1, -2 * z2);
                Eigen::Matrix3d H = ds * ds.transpose() / (s * s);
                H(0, 0) -= 2 / s;
                H(1, 1) += 2 / s;
                H(2, 2) += 2 / s;
                Eigen::Vector3d g(tau - 2 * tj / s, 2 * z1 / s, 2 * z2 / s);
                hinv[(size_t)j] = H.inverse();
                grad[(size_t)j] = g;
                Eigen::MatrixXd Aj = A.block(0, 2 * j, 2 * m, 2);
                Eigen::Matrix2d Hzz = hinv[(size_t)j].block<2, 2>(1, 1);
                Eigen::Vector2d hg = (hinv[(size_t)j] * g).tail<2>();
                S.noalias() += Aj * Hzz * Aj.transpose();
                rhs.noalias() -= Aj * hg;
            }
            Eigen::VectorXd nu = S.ldlt().solve(rhs);
            Eigen::VectorXd dz(2 * N), dt(N);
            double decrement = 0;
            for (Eigen::Index j = 0; j < N; j++) {
                Eigen::Vector3d e = grad[(size_t)j];
                e.tail<2>() += A.block(0, 2 * j, 2 * m, 2).transpose() * nu;
                Eigen::Vector3d dx = -hinv[(size_t)j] * e;
                dt(j) = dx(0);
                dz.segment<2>(2 * j) = dx.tail<2>();
                decrement -= grad[(size_t)j].dot(dx);
            }
            y = Eigen::VectorXcd(m);
            for (Eigen::Index r = 0; r < m; r++) {
                y(r) = cd(nu(r), nu(m + r));
            }
            result.newton_steps++;
            if (decrement / 2 < 1e-12) {
                break;
            }
            // Damped Newton for a self-concordant barrier: the step stays strictly feasible and
            // needs no function comparisons, which lose precision once tau is large.
            double lambda = std::sqrt(std::max(decrement, 0.0));
            double step = lambda > 0.25 ? 1 / (1 + lambda) : 1.0;
            Eigen::VectorXd zn = z + step * dz, tn = t + step * dt;
            bool ok;
            barrier_value(zn, tn, tau, ok);
            if (!ok) {
                break;
            }
            z = zn;
            t = tn;
        }

        Eigen::VectorXcd c(N);
        for (Eigen::Index j = 0; j < N; j++) {
            c(j) = cd(z(2 * j), z(2 * j + 1));
        }
        // Newton steps drift off the constraint at large tau; project back so c is exactly feasible.
        c += M.adjoint() * gram.solve(a - M * c);
        double l1 = c.cwiseAbs().sum();
        if (l1 * l1 < best_upper) {
            best_upper = l1 * l1;
            best_c = c;
        }
        double wb = witness_bound(y);
        if (wb > best_lower) {
            best_lower = wb;
            best_y = y;
        }
        // Active-set iteration from a support guess: drop terms with negative weight, add the
        // stabilizer the witness violates most, until the optimality conditions hold.
        auto consider = [&](std::vector<Eigen::Index> sup, std::vector<double> mag, Eigen::VectorXcd w) {
            for (int round = 0; round < 4 * m; round++) {
                // Extreme points of the feasible set use at most 2m terms; larger guesses are noise.
                if (sup.empty() || (Eigen::Index)sup.size() > 4 * m) {
                    return;
                }
                Eigen::VectorXcd cp, yv;
                std::vector<double> r;
                refine(sup, mag, w, cp, yv, r);
                double lp = cp.cwiseAbs().sum();
                if (lp * lp < best_upper) {
                    best_upper = lp * lp;
                    best_c = cp;
                }
                double lw = witness_bound(yv);
                if (lw > best_lower) {
                    best_lower = lw;
                    best_y = yv;
                }
                if (best_upper - best_lower <= tol) {
                    return;
                }
                size_t neg = std::min_element(r.begin(), r.end()) - r.begin();
                if (r[neg] < 0) {
                    sup.erase(sup.begin() + (std::ptrdiff_t)neg);
                    r.erase(r.begin() + (std::ptrdiff_t)neg);
                } else {
                    Eigen::VectorXd ov = (M.adjoint() * yv).cwiseAbs();
                    Eigen::Index worst;
                    if (ov.maxCoeff(&worst) <= 1 + 1e-12 || std::find(sup.begin(), sup.end(), worst) != sup.end()) {
                        return;
                    }
                    sup.push_back(worst);
                    r.push_back(0);
                }
                mag = r;
                w = yv;
            }
        };
        std::vector<Eigen::Index> sup;
        std::vector<double> mag;
        for (const Eigen::VectorXcd &cand : {best_y, y}) {
            Eigen::VectorXcd w = normalized(cand);
            for (double slack : {1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2}) {
                from_witness(w, slack, sup, mag);
                consider(sup, mag, w);
            }
        }
        // Support guesses from the primal iterate: inactive terms shrink like 1/tau.
        double cmax = c.cwiseAbs().maxCoeff();
        for (double frac : {1e-1, 1e-2, 1e-3, 1e-4}) {
            sup.clear();
            mag.clear();
            for (Eigen::Index jj = 0; jj < N; jj++) {
                if (std::abs(c(jj)) >= frac * cmax) {
                    sup.push_back(jj);
                    mag.push_back(std::abs(c(jj)));
                }
            }
            consider(sup, mag, normalized(best_y));
        }
        if (best_upper - best_lower <= tol) {
            result.extent = best_upper;
            result.lower_bound = std::min(best_lower, best_upper);
            result.gap = best_upper - result.lower_bound;
            result.coefficients = best_c;
            return result;
        }
        tau *= 8;
    }
    throw std::runtime_error("solve_extent did not reach the requested duality gap (best " +
                             std::to_string(best_upper - best_lower) + ")");
}

}  // namespace stabsim
