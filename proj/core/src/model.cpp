#include "prony/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "prony/errors.hpp"
#include "prony/rng.hpp"

namespace prony {

void ClusterConfig::validate() const {
    if (n < 1) throw ArgumentError("ClusterConfig: n must be positive");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int total = 0;
    int max_card = 0;
    for (const auto& block : partition) {
        if (block.empty()) throw ArgumentError("ClusterConfig: empty cluster");
        max_card = std::max(max_card, static_cast<int>(block.size()));
        for (int idx : block) {
            if (idx < 1 || idx > n) throw ArgumentError("ClusterConfig: node index out of range");
            if (seen[static_cast<std::size_t>(idx - 1)])
                throw ArgumentError("ClusterConfig: partition blocks overlap");
            seen[static_cast<std::size_t>(idx - 1)] = true;
            ++total;
        }
    }
    if (total != n) throw ArgumentError("ClusterConfig: partition does not cover {1..n}");
    if (ell_star != max_card) throw ArgumentError("ClusterConfig: ell_star mismatch");
    if (!(delta > 0 && delta < 1)) throw ArgumentError("ClusterConfig: delta must be in (0,1)");
    if (!(tau > 1)) throw ArgumentError("ClusterConfig: tau must exceed 1");
    if (!(eta > 1)) throw ArgumentError("ClusterConfig: eta must exceed 1");
    if (!(big_t > tau * delta)) throw ArgumentError("ClusterConfig: T must exceed tau*delta");
}

int ClusterConfig::cluster_of(int node_1based) const {
    for (std::size_t s = 0; s < partition.size(); ++s)
        for (int idx : partition[s])
            if (idx == node_1based) return static_cast<int>(s);
    throw ArgumentError("ClusterConfig: node not present in partition");
}

int ClusterConfig::largest_cluster() const {
    int best = 0;
    for (std::size_t s = 1; s < partition.size(); ++s)
        if (partition[s].size() > partition[static_cast<std::size_t>(best)].size())
            best = static_cast<int>(s);
    return best;
}

Signal generate_clustered_signal(const GenRequest& req) {
    if (req.n < 1) throw ArgumentError("generate_clustered_signal: n must be positive");
    if (req.cluster_sizes.empty())
        throw ArgumentError("generate_clustered_signal: cluster_sizes must be non-empty");
    int total = 0;
    for (int s : req.cluster_sizes) {
        if (s < 1) throw ArgumentError("generate_clustered_signal: cluster sizes must be positive");
        total += s;
    }
    if (total != req.n)
        throw ArgumentError("generate_clustered_signal: cluster sizes must sum to n");
    if (!(req.delta > 0 && req.delta < 1))
        throw ArgumentError("generate_clustered_signal: delta must be in (0,1)");
    if (!(req.amp_lo > 0 && req.amp_hi >= req.amp_lo))
        throw ArgumentError("generate_clustered_signal: bad amplitude bounds");

    const int zeta = static_cast<int>(req.cluster_sizes.size());
    const int max_size = *std::max_element(req.cluster_sizes.begin(), req.cluster_sizes.end());
    const double pi = std::numbers::pi;

    // Feasibility: the widest cluster arc (max chord step 1.5*delta per gap)
    // must fit well inside the inter-center arc so T > tau*delta holds.
    const double max_step_arc = 2.0 * std::asin(std::min(1.0, 0.75 * req.delta));
    const double max_width = (max_size - 1) * max_step_arc;
    const double center_gap = 2.0 * pi / zeta;
    if (zeta > 1 && max_width > 0.25 * center_gap)
        throw GeometryError("generate_clustered_signal: delta*tau*max cluster size exceeds the inter-center arc");
    if (zeta == 1 && max_width > 0.5 * pi)
        throw GeometryError("generate_clustered_signal: cluster arc too wide for the unit circle");

    Rng rng(req.seed);
    const double rotation = rng.angle();

    Signal sig;
    sig.amp_lo = req.amp_lo;
    sig.amp_hi = req.amp_hi;
    sig.config.n = req.n;
    sig.config.delta = req.delta;
    sig.config.ell_star = max_size;
    sig.nodes.resize(static_cast<std::size_t>(req.n));
    sig.amplitudes.resize(static_cast<std::size_t>(req.n));

    int node = 0;
    for (int s = 0; s < zeta; ++s) {
        std::vector<int> block;
        double arc = rotation + center_gap * s;
        for (int k = 0; k < req.cluster_sizes[static_cast<std::size_t>(s)]; ++k) {
            if (k > 0) {
                // chord between consecutive nodes is exactly delta*(1+jitter)
                const double jitter = rng.uniform(0.0, 0.5);
                arc += 2.0 * std::asin(std::min(1.0, 0.5 * req.delta * (1.0 + jitter)));
            }
            sig.nodes[static_cast<std::size_t>(node)] = {std::cos(arc), std::sin(arc)};
            block.push_back(node + 1);
            ++node;
        }
        sig.config.partition.push_back(std::move(block));
    }

    for (int j = 0; j < req.n; ++j) {
        const double mag = rng.uniform(req.amp_lo, req.amp_hi);
        const double phase = rng.angle();
        sig.amplitudes[static_cast<std::size_t>(j)] = std::polar(mag, phase);
    }

    // Record the realized spreads so every pairwise invariant holds exactly.
    double max_intra = 0;
    double min_inter = std::numeric_limits<double>::infinity();
    double max_inter = 0;
    for (int i = 0; i < req.n; ++i) {
        for (int j = i + 1; j < req.n; ++j) {
            const double dist = std::abs(sig.nodes[static_cast<std::size_t>(i)] -
                                         sig.nodes[static_cast<std::size_t>(j)]);
            const bool same = sig.config.cluster_of(i + 1) == sig.config.cluster_of(j + 1);
            if (same) {
                max_intra = std::max(max_intra, dist);
            } else {
                min_inter = std::min(min_inter, dist);
                max_inter = std::max(max_inter, dist);
            }
        }
    }
    sig.config.tau = max_intra > 0 ? std::max(max_intra / req.delta, 1.0 + 1e-9) : 2.0;
    if (zeta > 1) {
        sig.config.big_t = min_inter;
        sig.config.eta = std::max(max_inter / min_inter, 1.0 + 1e-9);
        if (!(sig.config.big_t > sig.config.tau * req.delta))
            throw GeometryError("generate_clustered_signal: inter-cluster floor collapsed below tau*delta");
    } else {
        sig.config.big_t = 4.0; // vacuous: no inter-cluster pairs
        sig.config.eta = 2.0;
    }
    sig.config.validate();
    return sig;
}

MomentVector moments_of(const Signal& signal, int count) {
    if (count < 1) throw ArgumentError("moments_of: count must be positive");
    const std::size_t n = signal.nodes.size();
    MomentVector m;
    m.values.assign(static_cast<std::size_t>(count), cplx{0, 0});
    cvector power(n, cplx{1, 0});
    for (int k = 0; k < count; ++k) {
        cplx acc = 0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += signal.amplitudes[j] * power[j];
            power[j] *= signal.nodes[j];
        }
        m.values[static_cast<std::size_t>(k)] = acc;
    }
    return m;
}

cvector draw_tolerance_coeffs(int count, std::uint64_t seed) {
    Rng rng(Rng::mix(seed, 0xd1ceULL));
    cvector d(static_cast<std::size_t>(count));
    for (auto& v : d) v = rng.unit_disk();
    return d;
}

MomentVector perturb(const MomentVector& moments, const NoiseSpec& noise) {
    if (noise.epsilon < 0) throw ArgumentError("perturb: epsilon must be non-negative");
    if (noise.epsilon == 0) return moments; // bit-for-bit identity
    cvector d = noise.tolerance_coeffs;
    if (static_cast<int>(d.size()) < moments.size())
        d = draw_tolerance_coeffs(moments.size(), noise.seed);
    MomentVector out = moments;
    for (int i = 0; i < moments.size(); ++i)
        out[i] += noise.epsilon * d[static_cast<std::size_t>(i)];
    return out;
}

} // namespace prony
