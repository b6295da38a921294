#include "prony/rng.hpp"

#include <cmath>
#include <numbers>

namespace prony {

double Rng::log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
}

double Rng::angle() {
    return uniform01() * 2.0 * std::numbers::pi;
}

int Rng::uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
}

std::complex<double> Rng::unit_disk() {
    const double r = std::sqrt(uniform01());
    const double t = angle();
    return {r * std::cos(t), r * std::sin(t)};
}

std::uint64_t Rng::mix(std::uint64_t a, std::uint64_t b) {
    Rng g(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL));
    g.next_u64();
    return g.next_u64();
}

} // namespace prony
