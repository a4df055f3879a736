#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace exclusia {

// Rates of the open exclusion process. Right hops occur at rate 1 and left
// hops at rate q; alpha/gamma inject/extract at site 1, delta/beta at site L.
struct ProcessParams {
    double q = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 0.0;
    double delta = 0.0;
    int L = 1;

    void validate() const;  // throws ValidationError
};

// Particle/hole exchange with the rates mirrored: (alpha, beta, gamma, delta)
// -> (beta, alpha, delta, gamma). Combined with site reversal it maps the
// process onto itself.
ProcessParams particle_hole_mirror(const ProcessParams& p);

// Occupancy s_1..s_L; entry i-1 holds s_i.
using Configuration = std::vector<std::uint8_t>;

// State index used by the generator: site 1 is the most significant bit.
std::uint64_t config_index(const Configuration& c);
Configuration config_from_index(std::uint64_t index, int L);

enum class EventKind { HopRight, HopLeft, InjectLeft, ExtractLeft, InjectRight, ExtractRight };

struct Event {
    EventKind kind;
    int site;  // 1-based; for hops the left site of the bond
    double rate;
};

// Events with nonzero rate available from configuration c.
std::vector<Event> enabled_events(const Configuration& c, const ProcessParams& p);
void apply_event(Configuration& c, const Event& e);
std::string event_name(EventKind k);

// Structural irreducibility of the configuration graph. Checked on the full
// state space for L <= 12, otherwise on a 12-site chain with the same rates.
bool is_irreducible(const ProcessParams& p);

struct MarkovGenerator {
    int L = 0;
    Eigen::SparseMatrix<double> gamma;  // column s holds the rates out of s
    std::size_t dim() const { return std::size_t{1} << L; }
};

inline constexpr int kDefaultMaxSites = 14;

MarkovGenerator build_generator(const ProcessParams& p, int max_sites = kDefaultMaxSites);

struct SteadyState {
    int L = 0;
    Eigen::VectorXd probs;
    double residual = 0.0;  // max |Gamma * probs|
    std::string method;
};

SteadyState steady_state(const MarkovGenerator& gen);

struct ObservableReport {
    std::string method;
    std::vector<double> Z;  // Z_1..Z_L when available, times exp(-z_log_scale)
    double z_log_scale = 0.0;
    double current = 0.0;
    double current_stderr = 0.0;
    std::vector<double> densities;
    std::vector<double> density_stderr;
    std::vector<double> probabilities;  // indexed by config_index
    std::vector<double> currents;       // left boundary, bonds 1..L-1, right boundary
    double current_spread = 0.0;
    double tolerance = 0.0;
    int truncation = 0;
};

ObservableReport observables(const SteadyState& ss, const ProcessParams& p);

// Convenience: generator, kernel and observables in one call.
ObservableReport exact_observables(const ProcessParams& p);

// ---- XXZ mapping --------------------------------------------------------

struct BasisConvention {
    bool occupied_is_down = true;    // occupied site <-> spin down
    bool reversed_sites = false;     // tensor factor k carries site L+1-k
    std::string describe() const;
};

struct XxzModel {
    int L = 0;
    double q = 1.0;
    double mu = 1.0;
    double delta_q = 0.0;
    double h = 0.0;
    BasisConvention convention;
    Eigen::Matrix2d b1;  // in the (up, down) spin basis of the first factor
    Eigen::Matrix2d bL;  // in the (up, down) spin basis of the last factor
    Eigen::MatrixXd hamiltonian;  // in the generator's configuration basis
    Eigen::VectorXd u_mu;         // diagonal of U_mu, same basis
};

inline constexpr int kDenseMaxSites = 10;

XxzModel build_xxz(const ProcessParams& p, double mu, const BasisConvention& conv = {});

struct SimilarityReport {
    double residual = 0.0;  // ||Gamma + sqrt(q) U^-1 H U||_inf for the chosen convention
    BasisConvention convention;
    std::vector<double> candidate_residuals;  // in candidate order
    std::vector<std::complex<double>> spectrum_generator;
    std::vector<std::complex<double>> spectrum_hamiltonian;  // of -sqrt(q) H
    double spectrum_distance = 0.0;
};

std::vector<BasisConvention> basis_candidates();

SimilarityReport similarity_residual(const ProcessParams& p, double mu);

// Sorted eigenvalues of a general real matrix.
std::vector<std::complex<double>> sorted_spectrum(const Eigen::MatrixXd& m);

// Largest distance in a greedy nearest-neighbour matching of two spectra.
double spectrum_distance(const std::vector<std::complex<double>>& a,
                         const std::vector<std::complex<double>>& b);

}  // namespace exclusia
