#include "rtprof/cantor.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace rtprof {

namespace {

std::uint64_t ipow(std::uint64_t base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) out *= base;
    return out;
}

}  // namespace

double CantorSpace::q_z() const {
    return std::log(static_cast<double>(V)) / std::log(static_cast<double>(H));
}

std::uint64_t CantorSpace::point_count() const {
    return ipow(static_cast<std::uint64_t>(V), depth);
}

Word CantorSpace::point(std::uint64_t index) const {
    Word w(static_cast<std::size_t>(depth));
    for (int pos = depth - 1; pos >= 0; --pos) {
        w[static_cast<std::size_t>(pos)] =
            static_cast<std::uint32_t>(index % static_cast<std::uint64_t>(V));
        index /= static_cast<std::uint64_t>(V);
    }
    return w;
}

CantorSpace make_cantor_space(int H, int V, int depth, const Budgets& budgets) {
    if (H < 2 || V < 2)
        throw validation_error("Cantor space requires H >= 2, V >= 2");
    if (depth < 1) throw validation_error("Cantor space requires depth >= 1");
    std::uint64_t count = 1;
    for (int i = 0; i < depth; ++i) {
        count *= static_cast<std::uint64_t>(V);
        if (count > budgets.vertex)
            throw budget_error("Cantor space exceeds vertex budget", count,
                               budgets.vertex);
    }
    return {H, V, depth};
}

int first_mismatch(const Word& a, const Word& b) {
    if (a.size() != b.size())
        throw validation_error("rho requires equal-length words");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return static_cast<int>(i) + 1;
    return static_cast<int>(a.size()) + 1;
}

double rho(const Word& a, const Word& b, int H) {
    if (H < 2) throw validation_error("rho requires H >= 2");
    const int i = first_mismatch(a, b);
    if (i > static_cast<int>(a.size())) return 0.0;
    return std::pow(static_cast<double>(H), -static_cast<double>(i));
}

double ball_measure(const CantorSpace& space, const Word& center, int k) {
    if (center.size() != static_cast<std::size_t>(space.depth))
        throw validation_error("centre must have the space's depth");
    for (auto d : center)
        if (d >= static_cast<std::uint32_t>(space.V))
            throw validation_error("centre digit out of range");
    if (k < 0 || k > space.depth)
        throw validation_error("radius exponent k out of [0, depth]");
    return 1.0 / static_cast<double>(ipow(static_cast<std::uint64_t>(space.V), k));
}

double ball_measure_enumerated(const CantorSpace& space, const Word& center,
                               int k) {
    if (center.size() != static_cast<std::size_t>(space.depth))
        throw validation_error("centre must have the space's depth");
    if (k < 0 || k > space.depth)
        throw validation_error("radius exponent k out of [0, depth]");
    const std::uint64_t total = space.point_count();
    std::uint64_t inside = 0;
    for (std::uint64_t i = 0; i < total; ++i) {
        // Strictly within radius H^-k, i.e. rho <= H^-(k+1): first k letters agree.
        if (first_mismatch(center, space.point(i)) > k) ++inside;
    }
    return static_cast<double>(inside) / static_cast<double>(total);
}

AhlforsReport ahlfors_report(const CantorSpace& space) {
    AhlforsReport report;
    report.q_z = space.q_z();
    const std::uint64_t total = space.point_count();
    const int n = space.depth;

    // radii: H^-k and geometric midpoints H^-(k+1/2)
    std::vector<double> radii;
    for (int k = 0; k <= n; ++k) {
        radii.push_back(std::pow(static_cast<double>(space.H), -k));
        radii.push_back(std::pow(static_cast<double>(space.H),
                                 -(static_cast<double>(k) + 0.5)));
    }
    report.radii_checked = radii.size();

    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n) + 2, 0);
    double min_ratio = std::numeric_limits<double>::infinity();
    double max_ratio = 0.0;
    Word center, other;
    for (std::uint64_t c = 0; c < total; ++c) {
        center = space.point(c);
        std::fill(hist.begin(), hist.end(), 0);
        for (std::uint64_t i = 0; i < total; ++i) {
            other = space.point(i);
            ++hist[static_cast<std::size_t>(first_mismatch(center, other))];
        }
        // hist[n+1] counts the centre itself (rho = 0).
        for (double r : radii) {
            std::uint64_t inside = hist[static_cast<std::size_t>(n) + 1];
            for (int i = 1; i <= n; ++i)
                if (std::pow(static_cast<double>(space.H), -i) < r)
                    inside += hist[static_cast<std::size_t>(i)];
            const double mu =
                static_cast<double>(inside) / static_cast<double>(total);
            const double ratio = mu / std::pow(r, report.q_z);
            min_ratio = std::min(min_ratio, ratio);
            max_ratio = std::max(max_ratio, ratio);
        }
    }
    report.centers_checked = total;
    report.min_ratio = min_ratio;
    report.max_ratio = max_ratio;
    report.c = std::max(max_ratio, 1.0 / min_ratio);
    return report;
}

std::string ahlfors_to_json(const CantorSpace& space, const AhlforsReport& report) {
    nlohmann::ordered_json j;
    j["H"] = space.H;
    j["V"] = space.V;
    j["depth"] = space.depth;
    j["q_z"] = report.q_z;
    j["c"] = report.c;
    j["min_ratio"] = report.min_ratio;
    j["max_ratio"] = report.max_ratio;
    j["centers_checked"] = report.centers_checked;
    j["radii_checked"] = report.radii_checked;
    return j.dump(2) + "\n";
}

namespace {

struct ConeLayout {
    std::vector<std::uint64_t> offset;   // per level
    std::vector<std::uint64_t> v_count;  // V^k
    std::vector<std::uint64_t> h_count;  // H^k
    std::uint64_t total = 0;
};

ConeLayout cone_layout(const CantorSpace& space, int depth,
                       const Budgets& budgets) {
    if (depth < 0) throw validation_error("cone depth must be >= 0");
    ConeLayout layout;
    layout.offset.resize(static_cast<std::size_t>(depth) + 2, 0);
    layout.v_count.resize(static_cast<std::size_t>(depth) + 1, 1);
    layout.h_count.resize(static_cast<std::size_t>(depth) + 1, 1);
    for (int k = 0; k <= depth; ++k) {
        if (k > 0) {
            layout.v_count[k] = layout.v_count[k - 1] *
                                static_cast<std::uint64_t>(space.V);
            layout.h_count[k] = layout.h_count[k - 1] *
                                static_cast<std::uint64_t>(space.H);
        }
        layout.offset[k + 1] =
            layout.offset[k] + layout.v_count[k] * layout.h_count[k];
        if (layout.offset[k + 1] > budgets.vertex)
            throw budget_error("cone graph exceeds vertex budget",
                               layout.offset[k + 1], budgets.vertex);
    }
    layout.total = layout.offset[static_cast<std::size_t>(depth) + 1];
    return layout;
}

}  // namespace

Graph build_cone_graph(const CantorSpace& space, int depth,
                       const Budgets& budgets) {
    const ConeLayout layout = cone_layout(space, depth, budgets);
    const auto H = static_cast<std::uint64_t>(space.H);

    std::vector<Edge> edges;
    for (int k = 0; k <= depth; ++k) {
        const std::uint64_t vc = layout.v_count[k];
        const std::uint64_t hc = layout.h_count[k];
        for (std::uint64_t w = 0; w < vc; ++w) {
            for (std::uint64_t j = 0; j < hc; ++j) {
                const std::uint64_t id = layout.offset[k] + w * hc + j;
                if (j + 1 < hc)
                    edges.push_back({static_cast<VertexId>(id),
                                     static_cast<VertexId>(id + 1)});
                if (k == depth) continue;
                const std::uint64_t child_hc = layout.h_count[k + 1];
                const std::uint64_t lo = j == 0 ? 0 : j * H - 1;
                const std::uint64_t hi = std::min(child_hc - 1, (j + 1) * H);
                for (std::uint64_t beta = 0;
                     beta < static_cast<std::uint64_t>(space.V); ++beta) {
                    const std::uint64_t child_w =
                        w * static_cast<std::uint64_t>(space.V) + beta;
                    for (std::uint64_t jj = lo; jj <= hi; ++jj)
                        edges.push_back(
                            {static_cast<VertexId>(id),
                             static_cast<VertexId>(layout.offset[k + 1] +
                                                   child_w * child_hc + jj)});
                }
            }
        }
    }
    return Graph::from_edges(layout.total, std::move(edges));
}

GraphRecord cone_to_record(const CantorSpace& space, int depth,
                           const Budgets& budgets) {
    GraphRecord record;
    record.graph = build_cone_graph(space, depth, budgets);
    const ConeLayout layout = cone_layout(space, depth, budgets);
    const bool dotted = space.V > 10;
    for (int k = 0; k <= depth; ++k) {
        const std::uint64_t vc = layout.v_count[k];
        const std::uint64_t hc = layout.h_count[k];
        for (std::uint64_t w = 0; w < vc; ++w) {
            Word word(static_cast<std::size_t>(k));
            std::uint64_t rem = w;
            for (int pos = k - 1; pos >= 0; --pos) {
                word[static_cast<std::size_t>(pos)] = static_cast<std::uint32_t>(
                    rem % static_cast<std::uint64_t>(space.V));
                rem /= static_cast<std::uint64_t>(space.V);
            }
            for (std::uint64_t j = 0; j < hc; ++j) {
                const auto id =
                    static_cast<VertexId>(layout.offset[k] + w * hc + j);
                record.labels[id] = "w=" + word_to_string(word, dotted) +
                                    ";j=" + std::to_string(j) +
                                    ";k=" + std::to_string(k);
            }
        }
    }
    return record;
}

}  // namespace rtprof
