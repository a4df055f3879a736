#include "exclusia/kmc.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

#include "exclusia/errors.hpp"

namespace exclusia::kmc {

namespace {

// Uniform double in (0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::string to_string(const Configuration& c) {
    std::string s;
    for (auto b : c) s += b ? '1' : '0';
    return s;
}

// Rates per slot: 0 left boundary, 1..L-1 bonds, L right boundary.
struct Slots {
    const ProcessParams& p;
    std::vector<double> rate;

    explicit Slots(const ProcessParams& params) : p(params), rate(static_cast<std::size_t>(params.L + 1), 0.0) {}

    void update(const Configuration& c, int k) {
        const int L = p.L;
        if (k == 0) rate[0] = c[0] ? p.gamma : p.alpha;
        else if (k == L) rate[L] = c[L - 1] ? p.beta : p.delta;
        else if (c[k - 1] && !c[k]) rate[k] = 1.0;
        else if (!c[k - 1] && c[k]) rate[k] = p.q;
        else rate[k] = 0.0;
    }
    void update_all(const Configuration& c) {
        for (int k = 0; k <= p.L; ++k) update(c, k);
    }
    double total() const {
        double t = 0.0;
        for (double r : rate) t += r;
        return t;
    }
};

Event event_for_slot(const Configuration& c, const ProcessParams& p, int k) {
    const int L = p.L;
    if (k == 0) return c[0] ? Event{EventKind::ExtractLeft, 1, p.gamma} : Event{EventKind::InjectLeft, 1, p.alpha};
    if (k == L) return c[L - 1] ? Event{EventKind::ExtractRight, L, p.beta} : Event{EventKind::InjectRight, L, p.delta};
    return c[k - 1] ? Event{EventKind::HopRight, k, 1.0} : Event{EventKind::HopLeft, k, p.q};
}

struct Walker {
    const ProcessParams& p;
    Configuration c;
    Slots slots;
    std::mt19937_64 rng;
    double total = 0.0;

    Walker(const ProcessParams& params, Configuration init, std::uint64_t seed)
        : p(params), c(std::move(init)), slots(params), rng(seed) {
        slots.update_all(c);
        total = slots.total();
    }

    double next_wait() {
        if (!(total > 0.0))
            throw ReducibleChainError("absorbing configuration " + to_string(c) + " has zero total rate");
        return -std::log(uniform01(rng)) / total;
    }

    Event step() {
        double target = uniform01(rng) * total;
        int k = 0;
        for (; k < p.L; ++k) {
            if (target < slots.rate[k]) break;
            target -= slots.rate[k];
        }
        while (slots.rate[k] == 0.0) --k;  // guard against rounding past the last enabled slot
        const Event e = event_for_slot(c, p, k);
        apply_event(c, e);
        for (int j = std::max(0, k - 1); j <= std::min(p.L, k + 1); ++j) slots.update(c, j);
        total = slots.total();
        return e;
    }
};

Configuration initial_configuration(const ProcessParams& p, const TrajectoryConfig& cfg, std::mt19937_64& rng) {
    Configuration c(static_cast<std::size_t>(p.L), 0);
    if (cfg.initial == InitialState::Full) std::fill(c.begin(), c.end(), 1);
    if (cfg.initial == InitialState::Product)
        for (auto& s : c) s = uniform01(rng) < cfg.rho0 ? 1 : 0;
    return c;
}

void mean_and_stderr(const std::vector<double>& xs, double& mean, double& se) {
    const double n = static_cast<double>(xs.size());
    mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    se = xs.size() > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
}

}  // namespace

void TrajectoryConfig::validate() const {
    if (!(t_measure > 0.0) || !std::isfinite(t_measure)) throw ValidationError("t_measure must be > 0");
    if (!std::isfinite(t_burn)) throw ValidationError("t_burn must be finite");
    if (n_replicas < 1) throw ValidationError("n_replicas must be >= 1");
    if (threads < 1) throw ValidationError("threads must be >= 1");
    if (!(rho0 >= 0.0 && rho0 <= 1.0)) throw ValidationError("rho0 must lie in [0, 1]");
}

double default_burn_in(const ProcessParams& p) {
    double lo = 1.0;  // right hop rate
    for (double r : {p.q, p.alpha, p.beta, p.gamma, p.delta})
        if (r > 0.0) lo = std::min(lo, r);
    return 10.0 * p.L / lo;
}

std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (replica + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

ReplicaResult run_replica(const ProcessParams& p, const TrajectoryConfig& cfg, std::uint64_t replica) {
    std::mt19937_64 init_rng(replica_seed(cfg.seed ^ 0xA5A5A5A5A5A5A5A5ULL, replica));
    Walker walk(p, initial_configuration(p, cfg, init_rng), replica_seed(cfg.seed, replica));
    ReplicaResult out;
    const int L = p.L;
    const int mid = L / 2;

    const double t_burn = cfg.t_burn < 0.0 ? default_burn_in(p) : cfg.t_burn;
    for (double t = walk.next_wait(); t < t_burn; t += walk.next_wait()) {
        walk.step();
        ++out.events;
    }

    // Exponential waits are memoryless, so measurement restarts the clock.
    std::vector<double> occ_time(static_cast<std::size_t>(L), 0.0);
    long long n_left = 0, n_mid = 0, n_right = 0;
    double t = 0.0;
    while (true) {
        const double dt = walk.next_wait();
        const double span = std::min(dt, cfg.t_measure - t);
        for (int i = 0; i < L; ++i)
            if (walk.c[i]) occ_time[i] += span;
        t += dt;
        if (t >= cfg.t_measure) break;
        const Event e = walk.step();
        ++out.events;
        switch (e.kind) {
            case EventKind::InjectLeft: ++n_left; break;
            case EventKind::ExtractLeft: --n_left; break;
            case EventKind::ExtractRight: ++n_right; break;
            case EventKind::InjectRight: --n_right; break;
            case EventKind::HopRight: if (e.site == mid) ++n_mid; break;
            case EventKind::HopLeft: if (e.site == mid) --n_mid; break;
        }
    }
    out.densities.resize(L);
    for (int i = 0; i < L; ++i) out.densities[i] = occ_time[i] / cfg.t_measure;
    out.current_left = n_left / cfg.t_measure;
    out.current_right = n_right / cfg.t_measure;
    out.current_middle = mid == 0 ? out.current_left : n_mid / cfg.t_measure;
    return out;
}

EstimateReport estimate(const ProcessParams& p, const TrajectoryConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!is_irreducible(p)) throw ReducibleChainError("rates give a reducible chain; no unique stationary state");

    std::vector<ReplicaResult> results(static_cast<std::size_t>(cfg.n_replicas));
    const int n_threads = std::min(cfg.threads, cfg.n_replicas);
    if (n_threads <= 1) {
        for (int r = 0; r < cfg.n_replicas; ++r) results[r] = run_replica(p, cfg, static_cast<std::uint64_t>(r));
    } else {
        std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n_threads));
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (int r = t; r < cfg.n_replicas; r += n_threads)
                        results[r] = run_replica(p, cfg, static_cast<std::uint64_t>(r));
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    EstimateReport rep;
    rep.replicas = cfg.n_replicas;
    rep.t_burn = cfg.t_burn < 0.0 ? default_burn_in(p) : cfg.t_burn;
    rep.t_measure = cfg.t_measure;
    rep.middle_bond = p.L / 2;
    std::vector<double> xs(results.size());
    for (int i = 0; i < p.L; ++i) {
        for (std::size_t r = 0; r < results.size(); ++r) xs[r] = results[r].densities[i];
        double m, se;
        mean_and_stderr(xs, m, se);
        rep.density_mean.push_back(m);
        rep.density_stderr.push_back(se);
    }
    auto collect = [&](auto field, double& mean, double& se) {
        for (std::size_t r = 0; r < results.size(); ++r) xs[r] = results[r].*field;
        mean_and_stderr(xs, mean, se);
    };
    collect(&ReplicaResult::current_middle, rep.current, rep.current_stderr);
    collect(&ReplicaResult::current_left, rep.current_left, rep.current_left_stderr);
    collect(&ReplicaResult::current_right, rep.current_right, rep.current_right_stderr);
    for (const auto& r : results) rep.events += r.events;
    return rep;
}

ObservableReport to_observables(const EstimateReport& e) {
    ObservableReport r;
    r.method = "kmc";
    r.current = e.current;
    r.current_stderr = e.current_stderr;
    r.densities = e.density_mean;
    r.density_stderr = e.density_stderr;
    r.currents = {e.current_left, e.current, e.current_right};
    const auto [lo, hi] = std::minmax_element(r.currents.begin(), r.currents.end());
    r.current_spread = *hi - *lo;
    return r;
}

double mean_holding_time(const Configuration& c, const ProcessParams& p, int n_samples, std::uint64_t seed) {
    double sum = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        Walker w(p, c, replica_seed(seed, static_cast<std::uint64_t>(k)));
        sum += w.next_wait();
    }
    return sum / n_samples;
}

}  // namespace exclusia::kmc
