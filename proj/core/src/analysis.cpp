#include "dtc/analysis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dtc/rng.hpp"

namespace dtc {

TimeAverage time_averaged_component(const TrajectoryRecord& traj, int site, Axis axis,
                                    int ell) {
    if (site < 1 || site > traj.n_sites)
        throw std::invalid_argument("site outside the recorded chain");
    if (ell < 0) throw std::invalid_argument("ell must be >= 0");
    const int a = static_cast<int>(axis);
    double sum = 0.0;
    int m = 0;
    for (const auto& s : traj.samples) {
        if (s.tag != SampleTag::PostPulse || s.period_index != 2 * m) continue;
        sum += s.spins[site - 1][a];
        if (++m > ell) break;
    }
    if (m <= ell)
        throw std::invalid_argument("trajectory holds " + std::to_string(m) +
                                    " stroboscopic samples, need " +
                                    std::to_string(ell + 1));
    return TimeAverage{sum / (ell + 1), ell, site, axis};
}

std::vector<double> end_spin_purity(const TrajectoryRecord& traj, int site) {
    if (site < 1 || site > traj.n_sites)
        throw std::invalid_argument("site outside the recorded chain");
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        const auto& v = s.spins[site - 1];
        out.push_back(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));
    }
    return out;
}

double mean_end_purity(const TrajectoryRecord& traj, int site) {
    if (site < 1 || site > traj.n_sites)
        throw std::invalid_argument("site outside the recorded chain");
    double sum = 0.0;
    int count = 0;
    for (const auto& s : traj.samples) {
        if (s.tag != SampleTag::PostPulse || s.period_index < 1) continue;
        const auto& v = s.spins[site - 1];
        sum += std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
        ++count;
    }
    if (count == 0) throw std::invalid_argument("no post-pulse samples in trajectory");
    return sum / count;
}

std::vector<ProductBloch> BlochGrid::points() const {
    if (n_theta < 2 || n_chi < 2)
        throw std::invalid_argument("bloch grid needs at least 2x2 points");
    std::vector<ProductBloch> pts;
    pts.reserve(static_cast<std::size_t>(n_theta) * n_chi);
    for (int j = 0; j < n_theta; ++j) {
        // midpoint rule, uniform in cos(2 theta) over [-1, 1]
        const double c = -1.0 + (2.0 * j + 1.0) / n_theta;
        const double theta = std::acos(c) / 2.0;
        for (int k = 0; k < n_chi; ++k) {
            const double chi = 2.0 * std::numbers::pi * (k + 0.5) / n_chi;
            pts.push_back(ProductBloch{theta, chi});
        }
    }
    return pts;
}

BlochPurityAccumulator::BlochPurityAccumulator(Model model, ChainSpec spec,
                                               DriveProtocol protocol, int n_periods,
                                               BlochGrid grid)
    : model_(model),
      spec_(std::move(spec)),
      protocol_(std::move(protocol)),
      n_periods_(n_periods),
      grid_(grid),
      n_samples_(n_periods / 2 + 1) {
    if (n_periods < 2) throw std::invalid_argument("n_periods must be >= 2");
    spec_.validate();
    protocol_.validate(spec_.n_sites);
}

void BlochPurityAccumulator::add_realization(const DisorderRealization& real) {
    const auto pts = grid_.points();
    const int g_count = static_cast<int>(pts.size());
    const int dim = 1 << spec_.n_sites;

    Matrix states(dim, g_count);
    for (int g = 0; g < g_count; ++g)
        states.col(g) = make_initial_state(InitialStateSpec{pts[g]}, spec_.n_sites)
                            .amplitudes;

    std::vector<double> sums(static_cast<std::size_t>(g_count) * n_samples_ * 3, 0.0);
    const int half = dim / 2;  // site 1 splits the basis into upper/lower halves
    auto record = [&](int m) {
        for (int g = 0; g < g_count; ++g) {
            Complex r01 = 0;
            double n0 = 0, n1 = 0;
            for (int b = 0; b < half; ++b) {
                const Complex up = states(b, g);
                const Complex dn = states(b + half, g);
                r01 += up * std::conj(dn);
                n0 += std::norm(up);
                n1 += std::norm(dn);
            }
            double* v = &sums[(static_cast<std::size_t>(g) * n_samples_ + m) * 3];
            v[0] = 2.0 * r01.real();
            v[1] = -2.0 * r01.imag();
            v[2] = n0 - n1;
        }
    };
    record(0);

    Axis fl = protocol_.floquet_axis;
    Axis h2 = protocol_.h2i_axis;
    PeriodOperator period = assemble_period(model_, spec_, real, protocol_, fl, h2);
    auto event = protocol_.events.begin();
    for (int k = 0; k < n_periods_; ++k) {
        bool rebuild = false;
        while (event != protocol_.events.end() && event->period_index == k) {
            if (const auto* rot = std::get_if<GlobalRotation>(&event->action)) {
                states = rotation_unitary(spec_.n_sites, rot->axis, rot->angle).matrix() *
                         states;
            } else if (const auto* sf = std::get_if<SetFloquetAxis>(&event->action)) {
                fl = sf->axis;
                rebuild = true;
            } else {
                h2 = std::get<SetH2IAxis>(event->action).axis;
                rebuild = true;
            }
            ++event;
        }
        if (rebuild) period = assemble_period(model_, spec_, real, protocol_, fl, h2);
        states = period.operator_full.matrix() * states;
        if ((k + 1) % 2 == 0) record((k + 1) / 2);
    }
    per_realization_.push_back(std::move(sums));
}

double BlochPurityAccumulator::value_of(const std::vector<double>& sums,
                                        int count) const {
    const std::size_t cells = sums.size() / 3;
    double total = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double x = sums[3 * c] / count;
        const double y = sums[3 * c + 1] / count;
        const double z = sums[3 * c + 2] / count;
        total += std::sqrt(x * x + y * y + z * z);
    }
    return total / static_cast<double>(cells);
}

double BlochPurityAccumulator::value() const {
    const int r = realizations();
    if (r == 0) throw std::logic_error("no realizations accumulated");
    std::vector<double> total(per_realization_.front().size(), 0.0);
    for (const auto& one : per_realization_)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += one[i];
    return value_of(total, r);
}

double BlochPurityAccumulator::jackknife_stderr() const {
    const int r = realizations();
    if (r < 2) return 0.0;
    std::vector<double> total(per_realization_.front().size(), 0.0);
    for (const auto& one : per_realization_)
        for (std::size_t i = 0; i < total.size(); ++i) total[i] += one[i];

    std::vector<double> loo(total.size());
    double mean = 0.0;
    std::vector<double> theta(r);
    for (int k = 0; k < r; ++k) {
        for (std::size_t i = 0; i < total.size(); ++i)
            loo[i] = total[i] - per_realization_[k][i];
        theta[k] = value_of(loo, r - 1);
        mean += theta[k];
    }
    mean /= r;
    double var = 0.0;
    for (double t : theta) var += (t - mean) * (t - mean);
    var *= static_cast<double>(r - 1) / r;
    return std::sqrt(var);
}

PurityAverage bloch_averaged_purity(Model model, const ChainSpec& spec,
                                    const DriveProtocol& protocol, int n_periods,
                                    BlochGrid grid, int realizations,
                                    std::uint64_t master_seed) {
    if (realizations < 1) throw std::invalid_argument("realizations must be >= 1");
    BlochPurityAccumulator acc(model, spec, protocol, n_periods, grid);
    for (int r = 0; r < realizations; ++r)
        acc.add_realization(sample_disorder(spec, derive_seed(master_seed, 0, r)));
    return PurityAverage{acc.value(), grid.n_theta, grid.n_chi, n_periods,
                         realizations};
}

}  // namespace dtc
