#pragma once

#include <cstdint>
#include <string>

#include "rtprof/graph.hpp"

namespace rtprof {

enum class PoincareMethod : std::uint8_t { spectral, two_valued, numeric };
enum class Certainty : std::uint8_t { exact, upper_bound };

const char* poincare_method_name(PoincareMethod m);
const char* certainty_name(Certainty c);

// An evaluation of h^p(G) = inf ||grad f||_p / ||f||_p over mean-zero f.
// The witness is mean-zero and nonzero, and value always equals the
// witness's own Rayleigh ratio, so "upper_bound" results are certified
// by evaluation.
struct PoincareResult {
    double p = 2.0;
    double value = 0.0;
    VertexFunction witness;
    PoincareMethod method = PoincareMethod::spectral;
    Certainty certified = Certainty::exact;
    std::uint64_t iterations = 0;
    std::uint64_t seed = 0;
};

// lambda_2 of the graph Laplacian with its eigenvector. Dense solve below
// kDenseSpectralLimit vertices, Lanczos with full reorthogonalization above
// (eigenvalue tolerance kSpectralTol).
inline constexpr std::size_t kDenseSpectralLimit = 512;
inline constexpr double kSpectralTol = 1e-10;

struct SpectralPair {
    double lambda2 = 0.0;
    VertexFunction vector;
    std::uint64_t iterations = 0;
};
SpectralPair fiedler_pair(const Graph& g);

// h^2 via the Rayleigh identity h^2 = sqrt(lambda_2(L)).
// Rejects disconnected graphs and n < 2.
PoincareResult h2_exact(const Graph& g);

// Two-valued upper bound on h^1: min over cuts S of
// n e(S, S^c) / (2 |S| |S^c|). Exhaustive for n <= kSweepExhaustiveLimit,
// otherwise sweep cuts of the Fiedler vector plus local exchange
// refinement.
inline constexpr std::size_t kSweepExhaustiveLimit = 20;
PoincareResult h1_sweep(const Graph& g);

struct MinimizeOptions {
    int restarts = 16;
    std::uint64_t seed = 12345;
    int max_iters = 5000;       // per restart, both phases combined
    double step_factor = 0.1;   // step = step_factor / max_degree
    double stop_rel = 1e-10;
    int stall_window = 50;      // fixed-step iterations without improvement
};

// Multi-start projected (sub)gradient descent on ||grad f||_p with f kept
// mean-zero and ||f||_p = 1; a step-halving polish runs after the
// fixed-step phase. Deterministic given the seed.
PoincareResult hp_minimize(const Graph& g, double p,
                           const MinimizeOptions& options = {});
PoincareResult hp_minimize(const Graph& g, double p, int restarts,
                           std::uint64_t seed);

// Upper estimate used by profile sweeps: spectral at p=2, two-valued at
// p=1, numeric otherwise.
PoincareResult hp_upper_estimate(const Graph& g, double p,
                                 const MinimizeOptions& options = {});

// {p, value, method, certified, iterations, seed} plus the minimizer
// hyperparameters for numeric results.
std::string poincare_to_json(const PoincareResult& result,
                             const MinimizeOptions* options = nullptr);
void write_witness_csv(const PoincareResult& result, const std::string& path);

}  // namespace rtprof
