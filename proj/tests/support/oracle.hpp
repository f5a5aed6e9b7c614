#pragma once

// Brute-force reference implementations that share no code with the library
// beyond the Scenario struct: full-state beliefs, explicit rule evaluation.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include "sarx/sar/scenario.hpp"

namespace oracle {

struct State {
    int rx, ry, tx, ty, batt;
    auto operator<=>(const State&) const = default;
};

inline int dist_home(const sarx::sar::Scenario& sc, int x, int y) {
    return std::abs(x - sc.start.x) + std::abs(y - sc.start.y);
}

inline bool found(const State& s) { return s.rx == s.tx && s.ry == s.ty; }

inline bool out_of_battery(const sarx::sar::Scenario& sc, const State& s) {
    return s.batt - dist_home(sc, s.rx, s.ry) < 1;
}

inline bool terminal(const sarx::sar::Scenario& sc, const State& s) { return found(s) || out_of_battery(sc, s); }

// action 0 up, 1 down, 2 left, 3 right
inline State step(const sarx::sar::Scenario& sc, State s, int a) {
    const int dx[] = {0, 0, -1, 1};
    const int dy[] = {1, -1, 0, 0};
    const int nx = s.rx + dx[a];
    const int ny = s.ry + dy[a];
    if (nx >= 1 && ny >= 1 && nx <= sc.grid_size && ny <= sc.grid_size) {
        s.rx = nx;
        s.ry = ny;
    }
    s.batt -= 1;
    return s;
}

// Feature vector [interests..., target, battery] of a state.
inline std::vector<double> phi(const sarx::sar::Scenario& sc, const State& s) {
    std::vector<double> f(sc.interests.size() + 2, 0.0);
    for (std::size_t i = 0; i < sc.interests.size(); ++i)
        if (sc.interests[i].cell.x == s.rx && sc.interests[i].cell.y == s.ry) f[i] = 1.0;
    if (found(s)) f[sc.interests.size()] = 1.0;
    if (out_of_battery(sc, s)) f[sc.interests.size() + 1] = 1.0;
    return f;
}

inline double reward(const sarx::sar::Scenario& sc, const State& s) {
    const auto f = phi(sc, s);
    double r = 0.0;
    for (std::size_t i = 0; i < sc.interests.size(); ++i) r += sc.interests[i].weight * f[i];
    r += sc.target_weight * f[sc.interests.size()];
    r += sc.battery_weight * f[sc.interests.size() + 1];
    return r;
}

// Observation: -1 no detect, otherwise the detected cell index (x-1)+(y-1)*n.
inline std::vector<std::pair<int, double>> observations(const sarx::sar::Scenario& sc, const State& s) {
    const int cell = (s.tx - 1) + (s.ty - 1) * sc.grid_size;
    if (found(s)) return {{cell, 1.0}};
    const int dx = std::abs(s.rx - s.tx);
    const int dy = std::abs(s.ry - s.ty);
    const bool near = sc.metric == sarx::sar::DetectionMetric::Chebyshev ? std::max(dx, dy) <= 1 : dx + dy <= 1;
    if (!near) return {{-1, 1.0}};
    std::vector<std::pair<int, double>> out;
    if (sc.p_detect > 0.0) out.push_back({cell, sc.p_detect});
    if (sc.p_detect < 1.0) out.push_back({-1, 1.0 - sc.p_detect});
    return out;
}

using Belief = std::map<State, double>;

inline Belief uniform_belief(const sarx::sar::Scenario& sc) {
    Belief b;
    const double p = 1.0 / (sc.grid_size * sc.grid_size);
    for (int x = 1; x <= sc.grid_size; ++x)
        for (int y = 1; y <= sc.grid_size; ++y) b[State{sc.start.x, sc.start.y, x, y, sc.battery}] = p;
    return b;
}

// Optimal value over `horizon` actions; `b` holds live states only.
inline double future(const sarx::sar::Scenario& sc, const Belief& b, int horizon) {
    if (horizon == 0 || b.empty()) return 0.0;
    if (out_of_battery(sc, b.begin()->first)) return 0.0;
    double best = -1e300;
    for (int a = 0; a < 4; ++a) {
        double immediate = 0.0;
        std::map<int, Belief> branches;
        for (const auto& [s, p] : b) {
            const State n = step(sc, s, a);
            immediate += p * reward(sc, n);
            if (terminal(sc, n)) continue;
            for (const auto& [o, q] : observations(sc, n)) branches[o][n] += p * q;
        }
        double later = 0.0;
        for (auto& [o, branch] : branches) {
            double mass = 0.0;
            for (const auto& kv : branch) mass += kv.second;
            if (mass <= 0.0) continue;
            for (auto& kv : branch) kv.second /= mass;
            later += mass * future(sc, branch, horizon - 1);
        }
        best = std::max(best, sc.discount * (immediate + later));
    }
    return best;
}

inline double optimal_value(const sarx::sar::Scenario& sc, const Belief& b, int horizon) {
    double v = 0.0;
    Belief live;
    double live_mass = 0.0;
    for (const auto& [s, p] : b) {
        v += p * reward(sc, s);
        if (!terminal(sc, s)) {
            live[s] += p;
            live_mass += p;
        }
    }
    if (live_mass <= 0.0) return v;
    for (auto& kv : live) kv.second /= live_mass;
    return v + live_mass * future(sc, live, horizon);
}

// Open-loop feature expectation by walking each target hypothesis.
inline std::vector<double> open_loop_mu(const sarx::sar::Scenario& sc, const std::vector<int>& actions) {
    std::vector<double> mu(sc.interests.size() + 2, 0.0);
    for (const auto& [s0, p] : uniform_belief(sc)) {
        State s = s0;
        double g = 1.0;
        auto add = [&] {
            const auto f = phi(sc, s);
            for (std::size_t k = 0; k < f.size(); ++k) mu[k] += p * g * f[k];
        };
        add();
        for (int a : actions) {
            if (terminal(sc, s)) break;
            s = step(sc, s, a);
            g *= sc.discount;
            add();
        }
    }
    return mu;
}

}  // namespace oracle
