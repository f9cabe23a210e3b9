#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rtprof/congestion.hpp"
#include "rtprof/poincare.hpp"

namespace rtprof {

// Critical exponent of the regular round tree: Q = 1 + log V / log H.
double q_of(int H, int V);

// Profile excess of the round-tree lower bound: (Q-p) / (p (Q-p+pQ)) for
// 1 <= p < Q; equals (Q-1)/(2Q-1) at p = 1.
double epsilon_of(double p, double Q);

// One certified sample of the profile sup: lower_bound = r * (certified
// h^p lower bound) witnesses Lambda^p(r) >= lower_bound.
struct ProfilePoint {
    std::string graph_id;
    std::uint64_t r = 0;
    double p = 1.0;
    double lower_bound = 0.0;
    std::optional<double> upper_estimate;  // r * numeric h^p upper bound
};

struct SweepOptions {
    bool upper_estimates = false;
    MinimizeOptions minimize;        // upper estimates at general p
    CongestionOptions congestion;
    Budgets budgets = Budgets::from_env();
};

// Runs build_yk -> build_coloring -> compute_congestion -> lemma_bound for
// each k in [k_min, k_max].
std::vector<ProfilePoint> sweep_yk(int H, int V, double p, int k_min,
                                   int k_max, const SweepOptions& options = {});

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t sample_count = 0;
    std::pair<std::uint64_t, std::uint64_t> size_range{0, 0};
    double slope_last3 = std::numeric_limits<double>::quiet_NaN();
};

enum class FitModel : std::uint8_t { power, logarithmic };

// power: OLS of ln y on ln x. logarithmic: OLS of y on ln x.
ExponentFit fit_xy(std::span<const double> x, std::span<const double> y,
                   FitModel model = FitModel::power);

// Power fit of certified lower bounds against size.
ExponentFit fit_exponent(std::span<const ProfilePoint> points);

// Exact fraction so the component constraint can be evaluated in integers.
struct Rational {
    std::int64_t num = 2;
    std::int64_t den = 3;
};

// A set S with every component of G - S of size <= epsilon |G|.
struct CutResult {
    Rational epsilon{2, 3};
    std::vector<VertexId> cut_set;
    std::size_t size = 0;
    double max_component_fraction = 0.0;
    bool exact_method = false;
    bool optimal = false;
};

inline constexpr std::size_t kCutExactCap = 20;

// Branch and bound over cut sets, branching on the vertices of an
// oversized component in degree-descending order; prunes when the
// remaining budget cannot break the largest component.
CutResult cut_exact(const Graph& g, Rational epsilon = {2, 3},
                    std::size_t cap = kCutExactCap);

// Fiedler sweep converted to a vertex separator, recursively applied to
// oversized components, then greedily shrunk. Always satisfies the
// component constraint; never claimed optimal.
CutResult cut_heuristic(const Graph& g, Rational epsilon = {2, 3});

// Witness record for the separation profile.
struct SepPoint {
    std::string graph_id;
    std::uint64_t r = 0;
    std::size_t cut_size = 0;
    bool exact_method = false;
    Rational epsilon{2, 3};
};

SepPoint sep_point(const Graph& g, const std::string& graph_id,
                   Rational epsilon = {2, 3},
                   std::size_t exact_cap = kCutExactCap);

// CSV / JSON emission (C locale, %.17g doubles, deterministic).
std::string profile_csv(std::span<const ProfilePoint> points);
std::string sep_csv(std::span<const SepPoint> points);
std::string cut_to_json(const CutResult& cut);
std::string fit_to_json(const ExponentFit& fit);

}  // namespace rtprof
