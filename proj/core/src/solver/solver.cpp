#include "sarx/solver/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "sarx/errors.hpp"

namespace sarx::solver {

using sar::Action;
using sar::kActions;

AlphaPolicy::AlphaPolicy(sar::Scenario scenario, std::vector<std::vector<AlphaVector>> strata,
                         SolveStats stats)
    : scenario_(std::move(scenario)), strata_(std::move(strata)), stats_(stats) {}

std::span<const AlphaVector> AlphaPolicy::stratum(sar::Cell robot, int battery) const {
    const sar::Grid grid = scenario_.grid();
    if (!grid.contains(robot) || battery < 0 || battery > scenario_.battery) return {};
    const std::size_t idx =
        static_cast<std::size_t>(grid.index(robot)) * (scenario_.battery + 1) + battery;
    if (idx >= strata_.size()) return {};
    return strata_[idx];
}

std::size_t AlphaPolicy::num_vectors() const {
    std::size_t n = 0;
    for (const auto& s : strata_) n += s.size();
    return n;
}

double default_epsilon(const sar::Scenario& s) {
    const double scale = std::abs(s.target_weight);
    return scale > 0.0 ? 1e-3 * scale : 1e-6;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double v = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * b[i];
    return v;
}

const AlphaVector* best_vector(std::span<const AlphaVector> vectors, std::span<const double> b,
                               double* value) {
    const AlphaVector* best = nullptr;
    double best_v = -std::numeric_limits<double>::infinity();
    for (const auto& v : vectors) {
        const double x = dot(v.coefficients, b);
        const double tol = 1e-12 * (1.0 + std::abs(best_v));
        if (best == nullptr || x > best_v + tol) {
            best = &v;
            best_v = x;
        } else if (x >= best_v - tol && v.action < best->action) {
            best = &v;
            best_v = std::max(best_v, x);
        }
    }
    if (value) *value = best_v;
    return best;
}

struct UpperPoint {
    std::vector<double> belief;
    std::vector<int> support;
    double value = 0.0;
    double corner_value = 0.0;  // corner interpolation at `belief`
};

class PointBasedSolver {
public:
    PointBasedSolver(const sar::Scenario& scenario, const SolveOptions& options)
        : model_(scenario),
          cells_(model_.num_cells()),
          budget_(scenario.battery),
          gamma_(scenario.discount),
          p_detect_(scenario.p_detect),
          target_weight_(scenario.target_weight),
          epsilon_(options.epsilon.value_or(default_epsilon(scenario))),
          options_(options) {
        if (!(epsilon_ > 0.0)) throw std::invalid_argument("epsilon must be positive");
        const double strata = static_cast<double>(cells_) * (budget_ + 1);
        if (strata * cells_ * (cells_ + 4) > 2.5e8)
            throw BudgetExceeded("scenario too large for the stratified solver");
        num_strata_ = cells_ * (budget_ + 1);
        const auto start = model_.grid().index(scenario.start);
        reachable_.resize(num_strata_);
        terminal_.resize(num_strata_);
        for (int r = 0; r < cells_; ++r) {
            const int from_start = model_.dist_to_start(r);
            for (int b = 0; b <= budget_; ++b) {
                const int s = index(r, b);
                reachable_[s] = from_start <= budget_ - b;
                terminal_[s] = b - model_.dist_to_start(r) < 1;
            }
        }
        root_ = index(start, budget_);
        solve_point_mdp();
        seed_lower_bounds();
        upper_.resize(num_strata_);
    }

    AlphaPolicy run() {
        const auto t0 = std::chrono::steady_clock::now();
        const sar::SarBelief b0 = model_.initial_belief();
        const std::vector<double> root(b0.target.probabilities().begin(),
                                       b0.target.probabilities().end());
        SolveStats stats;
        stats.epsilon = epsilon_;
        auto elapsed = [&] {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        };
        while (true) {
            stats.lower = lower_value(root_, root);
            stats.upper = upper_value(root_, root);
            if (stats.upper - stats.lower <= epsilon_) {
                stats.converged = true;
                break;
            }
            if (stats.iterations >= options_.max_iterations || elapsed() >= options_.max_seconds) {
                stats.budget_exhausted = true;
                break;
            }
            explore(root_, root, epsilon_);
            ++stats.iterations;
        }
        stats.backups = backups_;
        stats.seconds = elapsed();

        std::vector<std::vector<AlphaVector>> strata(num_strata_);
        for (int s = 0; s < num_strata_; ++s) strata[s] = std::move(lower_[s]);
        return AlphaPolicy(model_.scenario(), std::move(strata), stats);
    }

private:
    int index(int robot, int battery) const { return robot * (budget_ + 1) + battery; }
    int robot_of(int s) const { return s / (budget_ + 1); }
    int battery_of(int s) const { return s % (budget_ + 1); }
    int child(int s, Action a) const { return index(model_.step_index(robot_of(s), a), battery_of(s) - 1); }
    double point_value(int s, int y) const { return point_value_[static_cast<std::size_t>(s) * cells_ + y]; }

    double reward(int s, int y) const {
        const int r = robot_of(s);
        return model_.base_reward(r, battery_of(s)) + (y == r ? target_weight_ : 0.0);
    }

    // Exact values when the target location is known: a deterministic
    // shortest-path problem per hypothesis, solved by backward induction over
    // battery levels.
    void solve_point_mdp() {
        point_value_.assign(static_cast<std::size_t>(num_strata_) * cells_, 0.0);
        point_action_.assign(point_value_.size(), Action::Up);
        for (int b = 0; b <= budget_; ++b) {
            for (int r = 0; r < cells_; ++r) {
                const int s = index(r, b);
                for (int y = 0; y < cells_; ++y) {
                    const std::size_t k = static_cast<std::size_t>(s) * cells_ + y;
                    if (y == r || terminal_[s]) {
                        point_value_[k] = reward(s, y);
                        continue;
                    }
                    double best = -std::numeric_limits<double>::infinity();
                    for (Action a : kActions) {
                        const double v = point_value(child(s, a), y);
                        if (v > best) {
                            best = v;
                            point_action_[k] = a;
                        }
                    }
                    point_value_[k] = reward(s, y) + gamma_ * best;
                }
            }
        }
    }

    // Vector layout in every non-terminal stratum: [0,4) blind policies in
    // action order, [4, 4+cells) known-target plans, then backed-up vectors.
    // Terminal strata hold a single vector equal to the immediate reward.
    void seed_lower_bounds() {
        lower_.assign(num_strata_, {});
        for (int b = 0; b <= budget_; ++b) {
            for (int r = 0; r < cells_; ++r) {
                const int s = index(r, b);
                if (!reachable_[s]) continue;
                auto& out = lower_[s];
                if (terminal_[s]) {
                    AlphaVector v{std::vector<double>(cells_), Action::Up};
                    for (int y = 0; y < cells_; ++y) v.coefficients[y] = reward(s, y);
                    out.push_back(std::move(v));
                    continue;
                }
                out.reserve(4 + cells_);
                for (Action a : kActions) {
                    const int c = child(s, a);
                    const auto& next = terminal_[c] ? lower_[c][0] : lower_[c][static_cast<int>(a)];
                    out.push_back(plan_vector(s, a, next.coefficients));
                }
                for (int target = 0; target < cells_; ++target) {
                    const Action a = point_action_[static_cast<std::size_t>(s) * cells_ + target];
                    const int c = child(s, a);
                    const auto& next = terminal_[c] ? lower_[c][0] : lower_[c][4 + target];
                    out.push_back(plan_vector(s, a, next.coefficients));
                }
            }
        }
    }

    // Value of "take a, then follow `next` regardless of observations".
    AlphaVector plan_vector(int s, Action a, std::span<const double> next) const {
        const int r = robot_of(s);
        AlphaVector v{std::vector<double>(cells_), a};
        for (int y = 0; y < cells_; ++y)
            v.coefficients[y] = reward(s, y) + (y == r ? 0.0 : gamma_ * next[y]);
        return v;
    }

    double lower_value(int s, std::span<const double> b) const {
        double v = 0.0;
        best_vector(lower_[s], b, &v);
        return v;
    }

    double corner_value(int s, std::span<const double> b) const {
        return dot(std::span<const double>(&point_value_[static_cast<std::size_t>(s) * cells_], cells_), b);
    }

    // Sawtooth interpolation between the exact corners and stored points.
    double upper_value(int s, std::span<const double> b) const {
        const double corner = corner_value(s, b);
        double best = corner;
        for (const auto& pt : upper_[s]) {
            double ratio = std::numeric_limits<double>::infinity();
            for (int y : pt.support) {
                ratio = std::min(ratio, b[y] / pt.belief[y]);
                if (ratio <= 0.0) break;
            }
            if (ratio <= 0.0) continue;
            best = std::min(best, corner + ratio * (pt.value - pt.corner_value));
        }
        return best;
    }

    struct Backup {
        double q_upper = 0.0;
        double q_lower = 0.0;
        AlphaVector alpha;
        std::vector<double> no_detect;  // normalized posterior after no detection
        double p_no_detect = 0.0;
        int child = 0;
    };

    Backup backup_action(int s, std::span<const double> b, Action a) const {
        const int r = robot_of(s);
        Backup out;
        out.child = child(s, a);
        const int c = out.child;
        const int next = robot_of(c);
        const double immediate = model_.base_reward(r, battery_of(s)) + target_weight_ * b[r];

        out.alpha.action = a;
        out.alpha.coefficients.assign(cells_, 0.0);
        auto& alpha = out.alpha.coefficients;
        const double* corner = &point_value_[static_cast<std::size_t>(c) * cells_];

        if (terminal_[c]) {
            double future = 0.0;
            for (int y = 0; y < cells_; ++y) {
                alpha[y] = reward(s, y) + (y == r ? 0.0 : gamma_ * corner[y]);
                if (y != r) future += b[y] * corner[y];
            }
            out.q_upper = out.q_lower = immediate + gamma_ * future;
            return out;
        }

        out.no_detect.assign(cells_, 0.0);
        model_.no_detect_weights(b, next, out.no_detect);
        out.no_detect[r] = 0.0;
        double exact = 0.0;
        double mass = 0.0;
        for (int y = 0; y < cells_; ++y) {
            mass += out.no_detect[y];
            if (y == r) continue;
            if (y == next) exact += b[y] * corner[y];
            else if (model_.in_radius(next, y)) exact += b[y] * p_detect_ * corner[y];
        }
        out.p_no_detect = mass;

        const AlphaVector* cont = &lower_[c][0];
        double cont_value = 0.0;
        if (mass > 0.0) {
            cont = best_vector(lower_[c], out.no_detect, &cont_value);
            for (double& w : out.no_detect) w /= mass;
        }
        const auto& beta = cont->coefficients;
        for (int y = 0; y < cells_; ++y) {
            double future;
            if (y == r) future = 0.0;
            else if (y == next) future = corner[y];
            else if (model_.in_radius(next, y)) future = p_detect_ * corner[y] + (1.0 - p_detect_) * beta[y];
            else future = beta[y];
            alpha[y] = reward(s, y) + (y == r ? 0.0 : gamma_ * future);
        }
        out.q_lower = immediate + gamma_ * (exact + cont_value);
        const double up = mass > 0.0 ? mass * upper_value(c, out.no_detect) : 0.0;
        out.q_upper = immediate + gamma_ * (exact + up);
        return out;
    }

    void update(int s, std::span<const double> b, std::span<Backup> backups) {
        ++backups_;
        const Backup* best_low = nullptr;
        double upper = -std::numeric_limits<double>::infinity();
        for (const auto& bk : backups) {
            if (best_low == nullptr || bk.q_lower > best_low->q_lower) best_low = &bk;
            upper = std::max(upper, bk.q_upper);
        }
        const double scale = 1e-10 * (1.0 + std::abs(upper));

        if (best_low->q_lower > lower_value(s, b) + scale) add_lower(s, best_low->alpha);
        if (upper < upper_value(s, b) - scale) {
            UpperPoint pt;
            pt.belief.assign(b.begin(), b.end());
            for (int y = 0; y < cells_; ++y)
                if (b[y] > 0.0) pt.support.push_back(y);
            pt.value = upper;
            pt.corner_value = corner_value(s, b);
            upper_[s].push_back(std::move(pt));
        }
    }

    void add_lower(int s, AlphaVector v) {
        auto& vs = lower_[s];
        const std::size_t fixed = 4 + static_cast<std::size_t>(cells_);
        auto dominated = [&](const AlphaVector& old) {
            for (int y = 0; y < cells_; ++y)
                if (old.coefficients[y] > v.coefficients[y]) return false;
            return true;
        };
        vs.erase(std::remove_if(vs.begin() + static_cast<std::ptrdiff_t>(fixed), vs.end(), dominated),
                 vs.end());
        vs.push_back(std::move(v));
    }

    // One depth-first trial along the action with the highest upper bound.
    // Only the no-detection branch carries uncertainty: detection collapses
    // the belief to a corner whose value is exact.
    void explore(int s, std::span<const double> b, double threshold) {
        if (terminal_[s]) return;
        if (upper_value(s, b) - lower_value(s, b) <= threshold) return;

        std::array<Backup, 4> backups;
        std::size_t best = 0;
        for (std::size_t i = 0; i < kActions.size(); ++i) {
            backups[i] = backup_action(s, b, kActions[i]);
            if (backups[i].q_upper > backups[best].q_upper) best = i;
        }
        const Backup& chosen = backups[best];
        if (!terminal_[chosen.child] && chosen.p_no_detect > 0.0) {
            const std::vector<double> next = chosen.no_detect;
            explore(chosen.child, next, threshold / (gamma_ * chosen.p_no_detect));
            for (std::size_t i = 0; i < kActions.size(); ++i) {
                if (backups[i].child == chosen.child) backups[i] = backup_action(s, b, kActions[i]);
            }
        }
        update(s, b, backups);
    }

    sar::SarModel model_;
    int cells_;
    int budget_;
    double gamma_;
    double p_detect_;
    double target_weight_;
    double epsilon_;
    SolveOptions options_;
    int num_strata_ = 0;
    int root_ = 0;
    std::int64_t backups_ = 0;
    std::vector<char> reachable_;
    std::vector<char> terminal_;
    std::vector<double> point_value_;
    std::vector<Action> point_action_;
    std::vector<std::vector<AlphaVector>> lower_;
    std::vector<std::vector<UpperPoint>> upper_;
};

std::span<const AlphaVector> require_stratum(const AlphaPolicy& policy, const sar::SarBelief& b) {
    auto vs = policy.stratum(b.robot, b.battery);
    if (vs.empty())
        throw UnreachableStratum("no alpha vectors for robot " + sar::to_string(b.robot) +
                                 " with battery " + std::to_string(b.battery));
    if (b.target.size() != vs.front().coefficients.size())
        throw DimensionMismatch("belief does not match the policy's grid");
    return vs;
}

}  // namespace

AlphaPolicy solve(const sar::Scenario& scenario, const SolveOptions& options) {
    PointBasedSolver solver(scenario, options);
    return solver.run();
}

sar::Action policy_action(const AlphaPolicy& policy, const sar::SarBelief& b) {
    auto vs = require_stratum(policy, b);
    return best_vector(vs, b.target.probabilities(), nullptr)->action;
}

double policy_value(const AlphaPolicy& policy, const sar::SarBelief& b) {
    auto vs = require_stratum(policy, b);
    double v = 0.0;
    best_vector(vs, b.target.probabilities(), &v);
    return v;
}

}  // namespace sarx::solver
