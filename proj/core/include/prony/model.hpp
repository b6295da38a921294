#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace prony {

using cplx = std::complex<double>;
using cvector = std::vector<cplx>;

// Node geometry of a clustered configuration: a disjoint partition of the
// node indices into clusters, intra-cluster separations in [delta, tau*delta]
// and inter-cluster separations in [big_t, eta*big_t].
struct ClusterConfig {
    int n = 0;
    std::vector<std::vector<int>> partition; // 1-based node indices, disjoint cover of {1..n}
    double delta = 0;
    double tau = 0;
    double big_t = 0;
    double eta = 0;
    int ell_star = 0; // max cluster cardinality

    void validate() const; // throws ArgumentError on any broken invariant
    int cluster_of(int node_1based) const;
    int largest_cluster() const; // index into partition of a cluster of size ell_star
};

struct Signal {
    cvector nodes;      // on the unit circle
    cvector amplitudes;
    ClusterConfig config;
    double amp_lo = 0.5;
    double amp_hi = 1.5;
};

struct MomentVector {
    cvector values; // m_0 .. m_K

    MomentVector() = default;
    explicit MomentVector(cvector v) : values(std::move(v)) {}
    int size() const { return static_cast<int>(values.size()); }
    const cplx& operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
    cplx& operator[](int k) { return values[static_cast<std::size_t>(k)]; }
};

// Perturbation m_i -> m_i + epsilon * d_i with |d_i| <= 1. Coefficients are
// either given explicitly or drawn from the seed on use.
struct NoiseSpec {
    double epsilon = 0;
    cvector tolerance_coeffs;
    std::uint64_t seed = 0;
};

struct GenRequest {
    int n = 0;
    std::vector<int> cluster_sizes;
    double delta = 0;
    std::uint64_t seed = 0;
    double amp_lo = 0.5;
    double amp_hi = 1.5;
};

// Places cluster centers equispaced on the unit circle (with a seeded global
// rotation) and intra-cluster nodes at chord steps of delta*(1+jitter),
// jitter in [0, 1/2]. Recorded tau/big_t/eta are the realized spreads, so the
// returned Signal satisfies every ClusterConfig invariant by construction.
Signal generate_clustered_signal(const GenRequest& req);

// m_k = sum_j alpha_j x_j^k for k = 0..count-1.
MomentVector moments_of(const Signal& signal, int count);

// |d_i| <= 1, drawn area-uniformly from the unit disk.
cvector draw_tolerance_coeffs(int count, std::uint64_t seed);

MomentVector perturb(const MomentVector& moments, const NoiseSpec& noise);

} // namespace prony
