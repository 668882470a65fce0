// Copyright 2026 The bcattack Authors
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

#include "bcattack/oracle.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <thread>

#include "bcattack/error.h"

namespace bcattack {

namespace {

constexpr double kGoldenRatio = std::numbers::phi;
constexpr int kGoldenIterations = 40;

struct Candidate {
    double value = -1.0;
    std::size_t index = 0;
};

bool better(const Candidate &a, const Candidate &b) {
    return a.value > b.value || (a.value == b.value && a.index < b.index);
}

// Bloch points of both bits, fetched once for the inner loop.
struct Objective {
    std::vector<Vec3> bit0;
    std::vector<Vec3> bit1;

    explicit Objective(const ProtocolSpec &p) : bit0(p.bloch_points(0)), bit1(p.bloch_points(1)) {
    }
    double operator()(const Vec3 &r) const {
        return 0.5 * (p_ub_max_at(r, bit0) + p_ub_max_at(r, bit1));
    }
};

Vec3 project_to_ball(const Vec3 &r) {
    const double n = r.norm();
    return n > 1.0 ? Vec3(r / n) : r;
}

// Value of the chord through r along u with the endpoints r + l_+ u and
// r + l_- u announced as a_plus and a_minus.
double chord_value(const Vec3 &r, const Vec3 &u, const Vec3 &a_plus, const Vec3 &a_minus) {
    const double ru = r.dot(u);
    const double root = std::sqrt(std::max(0.0, 1.0 - r.squaredNorm() + ru * ru));
    const double l_plus = -ru + root;
    const double l_minus = -ru - root;
    const double q_plus = -l_minus / (l_plus - l_minus);
    const double q_minus = l_plus / (l_plus - l_minus);
    return q_plus * 0.5 * (1.0 + (r + l_plus * u).dot(a_plus)) +
           q_minus * 0.5 * (1.0 + (r + l_minus * u).dot(a_minus));
}

std::pair<Vec3, Vec3> tangent_basis(const Vec3 &u) {
    const Vec3 seed = std::abs(u.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    const Vec3 t1 = u.cross(seed).normalized();
    return {t1, u.cross(t1)};
}

// Golden-section maximization of f on [lo, hi].
template <typename F>
std::pair<double, double> golden_max(F f, double lo, double hi) {
    const double inv = 1.0 / kGoldenRatio;
    double x1 = hi - inv * (hi - lo);
    double x2 = lo + inv * (hi - lo);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int i = 0; i < kGoldenIterations; ++i) {
        if (f1 >= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv * (hi - lo);
            f2 = f(x2);
        }
    }
    return f1 >= f2 ? std::pair{x1, f1} : std::pair{x2, f2};
}

std::vector<Vec3> ball_grid(int n, double *spacing) {
    const int shells = std::max(1, static_cast<int>(std::lround(std::cbrt(3.0 * n / (4.0 * std::numbers::pi)))));
    const double per_surface = 3.0 * n / shells;
    std::vector<Vec3> out{Vec3::Zero()};
    for (int i = 0; i < shells; ++i) {
        const double radius = static_cast<double>(i + 1) / shells;
        const int count = std::max(1, static_cast<int>(std::lround(per_surface * radius * radius)));
        for (const auto &u : fibonacci_sphere(count)) {
            out.push_back(radius * u);
        }
    }
    *spacing = 1.0 / shells;
    return out;
}

Candidate parallel_argmax(const std::vector<Vec3> &points, const Objective &f, int threads) {
    const std::size_t n = points.size();
    threads = std::max(1, std::min<int>(threads, static_cast<int>(n / 1024) + 1));
    std::vector<Candidate> best(threads);
    auto work = [&](int t) {
        const std::size_t begin = n * t / threads;
        const std::size_t end = n * (t + 1) / threads;
        Candidate local;
        for (std::size_t i = begin; i < end; ++i) {
            const Candidate c{f(points[i]), i};
            if (better(c, local)) {
                local = c;
            }
        }
        best[t] = local;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
        for (auto &th : pool) {
            th.join();
        }
    }
    Candidate out;
    for (const auto &c : best) {
        if (better(c, out)) {
            out = c;
        }
    }
    return out;
}

double recheck(const ProtocolSpec &protocol, const Vec3 &r, const OracleConfig &cfg) {
    const DensityOperator rho = bloch_to_density(BlochVector(r));
    double gap = 0.0;
    for (int b = 0; b < 2; ++b) {
        const auto states = protocol.states(b);
        const auto points = protocol.bloch_points(b);
        gap = std::max(gap, std::abs(oracle_p_ub_fixed_rho(rho, states, cfg) - p_ub_max_at(r, points)));
    }
    return gap;
}

}  // namespace

void OracleConfig::validate() const {
    if (rho_grid < 1 || direction_grid < 1 || refine_rounds < 0 || !(recheck_fraction >= 0 && recheck_fraction <= 1)) {
        throw Error(ErrorCode::kInvalidArgument, "oracle grid sizes must be positive");
    }
}

int worker_threads() {
    if (const char *env = std::getenv("BCATTACK_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<Vec3> fibonacci_sphere(int n) {
    std::vector<Vec3> out;
    out.reserve(n);
    if (n == 1) {
        out.emplace_back(0.0, 0.0, 1.0);
        return out;
    }
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < n; ++i) {
        const double z = 1.0 - (2.0 * i + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double phi = golden_angle * i;
        out.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
    }
    return out;
}

double oracle_p_ub_fixed_rho(const DensityOperator &rho, std::span<const QubitState> states, const OracleConfig &cfg) {
    cfg.validate();
    if (states.empty() || states.size() > 2) {
        throw Error(ErrorCode::kUnsupportedSetSize, "directional search covers sets of 1 or 2 states");
    }
    if (states.size() == 1) {
        return rho.expectation(states[0]);
    }
    if (rho.is_pure()) {
        return std::max(rho.expectation(states[0]), rho.expectation(states[1]));
    }
    const Vec3 r = rho.bloch();
    const std::vector<Vec3> a{states[0].bloch(), states[1].bloch()};
    const std::vector<Vec3> directions = fibonacci_sphere(cfg.direction_grid);
    double best = -1.0;
    for (const Vec3 &a_plus : a) {
        for (const Vec3 &a_minus : a) {
            auto value = [&](const Vec3 &u) { return chord_value(r, u, a_plus, a_minus); };
            Vec3 u = directions.front();
            double local = -1.0;
            for (const auto &dir : directions) {
                const double v = value(dir);
                if (v > local) {
                    local = v;
                    u = dir;
                }
            }
            double h = std::sqrt(4.0 * std::numbers::pi / cfg.direction_grid);
            for (int step = 0; step < 10 * cfg.refine_rounds; ++step) {
                const auto [t1, t2] = tangent_basis(u);
                bool moved = false;
                for (const Vec3 &t : {t1, t2}) {
                    auto along = [&](double x) { return value((u + x * t).normalized()); };
                    const auto [x, v] = golden_max(along, -h, h);
                    if (v > local) {
                        local = v;
                        u = (u + x * t).normalized();
                        moved = moved || std::abs(x) > 0.5 * h;
                    }
                }
                if (!moved) {
                    h *= 0.5;
                }
            }
            best = std::max(best, local);
        }
    }
    return best;
}

OracleResult oracle_p_u_max(const ProtocolSpec &protocol, const OracleConfig &cfg) {
    cfg.validate();
    const Objective f(protocol);
    const int threads = worker_threads();
    double spacing = 0.0;
    const std::vector<Vec3> grid = ball_grid(cfg.rho_grid, &spacing);
    Candidate best = parallel_argmax(grid, f, threads);
    Vec3 incumbent = grid[best.index];

    OracleResult out;
    out.evaluated = static_cast<long>(grid.size());
    if (cfg.recheck_fraction > 0) {
        const std::size_t stride = std::max<std::size_t>(1, std::lround(1.0 / cfg.recheck_fraction));
        for (std::size_t i = 0; i < grid.size(); i += stride) {
            out.recheck_gap = std::max(out.recheck_gap, recheck(protocol, grid[i], cfg));
            ++out.rechecked;
        }
    }

    constexpr int kLocal = 11;
    double h = spacing;
    double value = best.value;
    for (int round = 0; round < cfg.refine_rounds; ++round) {
        std::vector<Vec3> local;
        local.reserve(kLocal * kLocal * kLocal);
        for (int i = 0; i < kLocal; ++i) {
            for (int j = 0; j < kLocal; ++j) {
                for (int k = 0; k < kLocal; ++k) {
                    const Vec3 offset = Vec3(i, j, k) * (2.0 / (kLocal - 1)) - Vec3::Ones();
                    local.push_back(project_to_ball(incumbent + h * offset));
                }
            }
        }
        const Candidate c = parallel_argmax(local, f, threads);
        if (c.value > value) {
            value = c.value;
            incumbent = local[c.index];
        }
        out.evaluated += static_cast<long>(local.size());
        h *= 0.2;
    }
    out.recheck_gap = std::max(out.recheck_gap, recheck(protocol, incumbent, cfg));
    ++out.rechecked;
    out.value = value;
    out.argmax = BlochVector(incumbent);
    return out;
}

}  // namespace bcattack
