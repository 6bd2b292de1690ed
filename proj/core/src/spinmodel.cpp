#include "dtc/spinmodel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtc/rng.hpp"

namespace dtc {

char axis_letter(Axis a) {
    switch (a) {
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    throw std::logic_error("bad Axis value");
}

Axis axis_from_letter(char c) {
    switch (c) {
        case 'x': return Axis::X;
        case 'y': return Axis::Y;
        case 'z': return Axis::Z;
    }
    throw std::invalid_argument(std::string("unknown axis '") + c + "' (want x, y or z)");
}

int ChainSpec::n_bonds() const {
    if (n_sites == 1) return 0;
    return geometry == Geometry::ClosedLoop ? n_sites : n_sites - 1;
}

void ChainSpec::validate() const {
    if (n_sites < 1 || n_sites > 12)
        throw std::invalid_argument("n_sites must be in [1, 12], got " +
                                    std::to_string(n_sites));
    if (geometry == Geometry::ClosedLoop && n_sites < 3)
        throw std::invalid_argument("a closed loop needs at least 3 sites");
    if (j_width < 0.0) throw std::invalid_argument("j_width must be >= 0");
    for (double w : field_width)
        if (w < 0.0) throw std::invalid_argument("field widths must be >= 0");
}

DisorderRealization sample_disorder(const ChainSpec& spec, std::uint64_t seed) {
    spec.validate();
    SplitMix64 rng(seed);
    DisorderRealization real;
    real.seed = seed;
    real.couplings.resize(spec.n_bonds());
    for (double& j : real.couplings) j = rng.uniform_in(spec.j_mean, spec.j_width);
    real.fields.resize(spec.n_sites);
    for (auto& f : real.fields)
        for (int a = 0; a < 3; ++a)
            f[a] = rng.uniform_in(spec.field_mean[a], spec.field_width[a]);
    return real;
}

std::vector<int> DriveProtocol::resolved_targets(int n_sites) const {
    if (!h2i_targets.empty()) return h2i_targets;
    std::vector<int> odd;
    for (int s = 1; s <= n_sites; s += 2) odd.push_back(s);
    return odd;
}

void DriveProtocol::validate(int n_sites) const {
    if (h2i_count < 0 || h2i_count % 2 != 0)
        throw std::invalid_argument("h2i_count must be even and >= 0, got " +
                                    std::to_string(h2i_count));
    for (int s : h2i_targets)
        if (s < 1 || s > n_sites)
            throw std::invalid_argument("h2i target site " + std::to_string(s) +
                                        " outside 1.." + std::to_string(n_sites));
    int prev = 0;
    for (const auto& ev : events) {
        if (ev.period_index < 0)
            throw std::invalid_argument("event period_index must be >= 0");
        if (ev.period_index < prev)
            throw std::invalid_argument("event period indices must be non-decreasing");
        prev = ev.period_index;
        if (const auto* rot = std::get_if<GlobalRotation>(&ev.action)) {
            if (!(rot->angle > -std::numbers::pi - 1e-12 &&
                  rot->angle <= std::numbers::pi + 1e-12))
                throw std::invalid_argument("rotation angle must lie in (-pi, pi]");
        }
    }
}

ProductZ neel_state(int n_sites) {
    ProductZ p;
    p.up.resize(n_sites);
    for (int i = 0; i < n_sites; ++i) p.up[i] = (i % 2 == 0);  // site 1 up
    return p;
}

void validate_initial_state(const InitialStateSpec& init, int n_sites) {
    if (const auto* pz = std::get_if<ProductZ>(&init)) {
        if (static_cast<int>(pz->up.size()) != n_sites)
            throw std::invalid_argument("product_z pattern length " +
                                        std::to_string(pz->up.size()) +
                                        " does not match n_sites " +
                                        std::to_string(n_sites));
    } else {
        const auto& pb = std::get<ProductBloch>(init);
        if (pb.theta < 0.0 || pb.theta > std::numbers::pi / 2 + 1e-12)
            throw std::invalid_argument("bloch theta must lie in [0, pi/2]");
        if (pb.chi < 0.0 || pb.chi >= 2 * std::numbers::pi)
            throw std::invalid_argument("bloch chi must lie in [0, 2 pi)");
    }
}

double estimate_pulse_error(double pulse_duration, double dephasing_time) {
    if (dephasing_time <= 0.0)
        throw std::domain_error("dephasing time must be positive");
    if (pulse_duration < 0.0)
        throw std::domain_error("pulse duration must be >= 0");
    const double r = pulse_duration / dephasing_time;
    return (2.0 * std::numbers::ln2 / std::numbers::pi) * r * r;
}

}  // namespace dtc
