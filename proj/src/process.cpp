#include "exclusia/process.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/SparseLU>

#include "exclusia/errors.hpp"

namespace exclusia {

namespace {

void require_rate(double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream os;
        os << name << " must be finite and >= 0 (got " << v << ")";
        throw ValidationError(os.str());
    }
}

// Forward and backward reachability from state 0 over the nonzero pattern.
bool strongly_connected(const Eigen::SparseMatrix<double>& g) {
    const Eigen::Index n = g.cols();
    if (n == 0) return false;
    std::vector<std::vector<Eigen::Index>> fwd(n), bwd(n);
    for (Eigen::Index s = 0; s < n; ++s) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(g, s); it; ++it) {
            if (it.row() == s || it.value() <= 0.0) continue;
            fwd[s].push_back(it.row());
            bwd[it.row()].push_back(s);
        }
    }
    auto covers = [n](const std::vector<std::vector<Eigen::Index>>& adj) {
        std::vector<char> seen(n, 0);
        std::deque<Eigen::Index> todo{0};
        seen[0] = 1;
        Eigen::Index count = 1;
        while (!todo.empty()) {
            Eigen::Index u = todo.front();
            todo.pop_front();
            for (Eigen::Index v : adj[u]) {
                if (!seen[v]) {
                    seen[v] = 1;
                    ++count;
                    todo.push_back(v);
                }
            }
        }
        return count == n;
    };
    return covers(fwd) && covers(bwd);
}

}  // namespace

void ProcessParams::validate() const {
    require_rate(q, "q");
    require_rate(alpha, "alpha");
    require_rate(beta, "beta");
    require_rate(gamma, "gamma");
    require_rate(delta, "delta");
    if (L < 1) throw ValidationError("L must be >= 1");
}

ProcessParams particle_hole_mirror(const ProcessParams& p) {
    ProcessParams m = p;
    m.alpha = p.beta;
    m.beta = p.alpha;
    m.gamma = p.delta;
    m.delta = p.gamma;
    return m;
}

std::uint64_t config_index(const Configuration& c) {
    std::uint64_t idx = 0;
    for (auto s : c) idx = (idx << 1) | (s ? 1u : 0u);
    return idx;
}

Configuration config_from_index(std::uint64_t index, int L) {
    Configuration c(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) c[i] = static_cast<std::uint8_t>((index >> (L - 1 - i)) & 1u);
    return c;
}

std::vector<Event> enabled_events(const Configuration& c, const ProcessParams& p) {
    std::vector<Event> ev;
    const int L = static_cast<int>(c.size());
    if (L == 0) return ev;
    auto add = [&ev](EventKind k, int site, double rate) {
        if (rate > 0.0) ev.push_back({k, site, rate});
    };
    if (c[0]) add(EventKind::ExtractLeft, 1, p.gamma);
    else add(EventKind::InjectLeft, 1, p.alpha);
    for (int i = 0; i + 1 < L; ++i) {
        if (c[i] && !c[i + 1]) add(EventKind::HopRight, i + 1, 1.0);
        else if (!c[i] && c[i + 1]) add(EventKind::HopLeft, i + 1, p.q);
    }
    if (c[L - 1]) add(EventKind::ExtractRight, L, p.beta);
    else add(EventKind::InjectRight, L, p.delta);
    return ev;
}

void apply_event(Configuration& c, const Event& e) {
    const int i = e.site - 1;
    switch (e.kind) {
        case EventKind::HopRight: c[i] = 0; c[i + 1] = 1; break;
        case EventKind::HopLeft: c[i] = 1; c[i + 1] = 0; break;
        case EventKind::InjectLeft:
        case EventKind::InjectRight: c[i] = 1; break;
        case EventKind::ExtractLeft:
        case EventKind::ExtractRight: c[i] = 0; break;
    }
}

std::string event_name(EventKind k) {
    switch (k) {
        case EventKind::HopRight: return "hop-right";
        case EventKind::HopLeft: return "hop-left";
        case EventKind::InjectLeft: return "inject-left";
        case EventKind::ExtractLeft: return "extract-left";
        case EventKind::InjectRight: return "inject-right";
        case EventKind::ExtractRight: return "extract-right";
    }
    return "unknown";
}

MarkovGenerator build_generator(const ProcessParams& p, int max_sites) {
    p.validate();
    if (p.L > max_sites) {
        std::ostringstream os;
        os << "L = " << p.L << " exceeds the generator cap of " << max_sites << " sites";
        throw CapacityError(os.str());
    }
    const std::uint64_t n = std::uint64_t{1} << p.L;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(n * static_cast<std::uint64_t>(p.L + 2));
    for (std::uint64_t s = 0; s < n; ++s) {
        Configuration c = config_from_index(s, p.L);
        double out = 0.0;
        for (const Event& e : enabled_events(c, p)) {
            Configuration t = c;
            apply_event(t, e);
            trip.emplace_back(static_cast<Eigen::Index>(config_index(t)), static_cast<Eigen::Index>(s), e.rate);
            out += e.rate;
        }
        trip.emplace_back(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s), -out);
    }
    MarkovGenerator g;
    g.L = p.L;
    g.gamma.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    g.gamma.setFromTriplets(trip.begin(), trip.end());
    g.gamma.makeCompressed();
    return g;
}

bool is_irreducible(const ProcessParams& p) {
    ProcessParams r = p;
    r.L = std::min(p.L, 12);
    return strongly_connected(build_generator(r, 12).gamma);
}

SteadyState steady_state(const MarkovGenerator& gen) {
    const Eigen::Index n = gen.gamma.cols();
    if (!strongly_connected(gen.gamma))
        throw ReducibleChainError("transition graph is not strongly connected; stationary state is not unique");

    // Replace the last balance equation by the normalization sum(P) = 1.
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs(n - 1) = 1.0;
    Eigen::VectorXd x;
    SteadyState ss;
    ss.L = gen.L;
    if (gen.L <= 8) {
        Eigen::MatrixXd a = Eigen::MatrixXd(gen.gamma);
        a.row(n - 1).setOnes();
        Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
        x = lu.solve(rhs);
        for (int k = 0; k < 2; ++k) x += lu.solve(rhs - a * x);
        ss.method = "dense-lu";
    } else {
        std::vector<Eigen::Triplet<double>> trip;
        trip.reserve(static_cast<std::size_t>(gen.gamma.nonZeros() + n));
        for (Eigen::Index s = 0; s < n; ++s) {
            for (Eigen::SparseMatrix<double>::InnerIterator it(gen.gamma, s); it; ++it)
                if (it.row() != n - 1) trip.emplace_back(it.row(), s, it.value());
            trip.emplace_back(n - 1, s, 1.0);
        }
        Eigen::SparseMatrix<double> a(n, n);
        a.setFromTriplets(trip.begin(), trip.end());
        a.makeCompressed();
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success) throw NonConvergenceError("sparse LU factorization of the generator failed");
        x = lu.solve(rhs);
        for (int k = 0; k < 2; ++k) x += lu.solve(rhs - a * x);
        ss.method = "sparse-lu";
    }

    for (Eigen::Index i = 0; i < n; ++i) {
        if (x(i) < 0.0) {
            if (x(i) > -1e-14) x(i) = 0.0;
            else {
                std::ostringstream os;
                os << "kernel vector has a negative entry " << x(i) << " at state " << i;
                throw NonConvergenceError(os.str());
            }
        }
    }
    x /= x.sum();
    ss.probs = x;
    ss.residual = (gen.gamma * x).cwiseAbs().maxCoeff();
    return ss;
}

ObservableReport observables(const SteadyState& ss, const ProcessParams& p) {
    const int L = ss.L;
    const std::uint64_t n = std::uint64_t{1} << L;
    ObservableReport r;
    r.method = "exact";
    r.densities.assign(L, 0.0);
    std::vector<double> hop_r(std::max(L - 1, 0), 0.0), hop_l(std::max(L - 1, 0), 0.0);
    r.probabilities.assign(ss.probs.data(), ss.probs.data() + ss.probs.size());
    for (std::uint64_t s = 0; s < n; ++s) {
        const double w = ss.probs(static_cast<Eigen::Index>(s));
        const Configuration c = config_from_index(s, L);
        for (int i = 0; i < L; ++i) {
            if (c[i]) r.densities[i] += w;
            if (i + 1 < L) {
                if (c[i] && !c[i + 1]) hop_r[i] += w;
                if (!c[i] && c[i + 1]) hop_l[i] += w;
            }
        }
    }
    r.currents.push_back(p.alpha * (1.0 - r.densities[0]) - p.gamma * r.densities[0]);
    for (int i = 0; i + 1 < L; ++i) r.currents.push_back(hop_r[i] - p.q * hop_l[i]);
    r.currents.push_back(p.beta * r.densities[L - 1] - p.delta * (1.0 - r.densities[L - 1]));
    const auto [lo, hi] = std::minmax_element(r.currents.begin(), r.currents.end());
    r.current_spread = *hi - *lo;
    r.current = r.currents[r.currents.size() / 2];
    r.tolerance = ss.residual;
    return r;
}

ObservableReport exact_observables(const ProcessParams& p) {
    return observables(steady_state(build_generator(p)), p);
}

}  // namespace exclusia
