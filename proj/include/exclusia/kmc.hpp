#pragma once

#include <cstdint>
#include <vector>

#include "exclusia/process.hpp"

namespace exclusia::kmc {

enum class InitialState { Empty, Full, Product };

struct TrajectoryConfig {
    double t_burn = -1.0;  // negative selects 10 L / (smallest positive rate)
    double t_measure = 1e3;
    int n_replicas = 8;
    std::uint64_t seed = 1;
    InitialState initial = InitialState::Empty;
    double rho0 = 0.5;  // occupation probability for InitialState::Product
    int threads = 1;

    void validate() const;
};

double default_burn_in(const ProcessParams& p);

struct ReplicaResult {
    std::vector<double> densities;
    double current_left = 0.0;
    double current_middle = 0.0;
    double current_right = 0.0;
    std::uint64_t events = 0;
};

struct EstimateReport {
    std::vector<double> density_mean;
    std::vector<double> density_stderr;
    double current = 0.0;  // middle bond (left boundary when L = 1)
    double current_stderr = 0.0;
    double current_left = 0.0, current_left_stderr = 0.0;
    double current_right = 0.0, current_right_stderr = 0.0;
    int middle_bond = 0;  // left site of the counted bond, 0 for the left boundary
    std::uint64_t events = 0;
    double t_burn = 0.0;
    double t_measure = 0.0;
    int replicas = 0;
};

// Seed of replica r: a splitmix64 step over (seed, r).
std::uint64_t replica_seed(std::uint64_t seed, std::uint64_t replica);

ReplicaResult run_replica(const ProcessParams& p, const TrajectoryConfig& cfg, std::uint64_t replica);

EstimateReport estimate(const ProcessParams& p, const TrajectoryConfig& cfg);

ObservableReport to_observables(const EstimateReport& e);

// Mean residence time of configuration c before the first event, over
// n_samples draws; used to validate the waiting-time sampler.
double mean_holding_time(const Configuration& c, const ProcessParams& p, int n_samples, std::uint64_t seed);

}  // namespace exclusia::kmc
