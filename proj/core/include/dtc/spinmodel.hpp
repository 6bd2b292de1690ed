#pragma once
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

// Domain types: chain ensembles, quasistatic disorder, drive protocols, initial states.
// Units: the drive period T = 1 throughout; couplings and fields are stored as the
// dimensionless products J*T and h*T.
namespace dtc {

enum class Axis { X, Y, Z };
enum class Geometry { OpenChain, ClosedLoop };
enum class Model { Ising, Heisenberg };

char axis_letter(Axis a);
Axis axis_from_letter(char c);  // throws std::invalid_argument

// Ensemble definition: geometry plus mean/half-width of every disordered parameter.
// Disorder is uniform and quasistatic (drawn once per run, frozen during it).
struct ChainSpec {
    int n_sites = 4;
    Geometry geometry = Geometry::OpenChain;
    double j_mean = 0.0;                             // J*T
    double j_width = 0.0;                            // delta J * T
    std::array<double, 3> field_mean{0.0, 0.0, 0.0};   // h^{x,y,z} * T
    std::array<double, 3> field_width{0.0, 0.0, 0.0};  // delta h^{x,y,z} * T

    int n_bonds() const;
    void validate() const;  // throws std::invalid_argument
};

// One concrete draw of all bond couplings and site fields.
struct DisorderRealization {
    std::vector<double> couplings;                    // per bond, J_i*T
    std::vector<std::array<double, 3>> fields;        // per site, h_i^a*T
    std::uint64_t seed = 0;
};

DisorderRealization sample_disorder(const ChainSpec& spec, std::uint64_t seed);

// Timed protocol events; an event with period_index k fires at t = kT, before that
// period's segments. Events at equal period_index apply in list order (the flagship
// rotation protocol stacks a rotation and two axis switches on one period).
struct GlobalRotation {
    Axis axis;
    double angle;  // radians, in (-pi, pi]
};
struct SetFloquetAxis {
    Axis axis;
};
struct SetH2IAxis {
    Axis axis;
};
using ProtocolAction = std::variant<GlobalRotation, SetFloquetAxis, SetH2IAxis>;

struct ProtocolEvent {
    int period_index = 0;
    ProtocolAction action;
};

// Per-period pulse schedule. Every period applies n = h2i_count pulse pairs about
// h2i_axis on the target sites (default: odd sites 1,3,...) followed by one global
// Floquet pulse exp(+i(pi/2 - floquet_error) sum_i sigma^floquet_axis).
struct DriveProtocol {
    Axis floquet_axis = Axis::X;
    double floquet_error = 0.0;  // epsilon, radians
    int h2i_count = 0;           // n, even
    Axis h2i_axis = Axis::Z;
    double h2i_error = 0.0;      // radians
    std::vector<int> h2i_targets;  // 1-based; empty means default odd sites
    std::vector<ProtocolEvent> events;

    std::vector<int> resolved_targets(int n_sites) const;
    void validate(int n_sites) const;  // throws std::invalid_argument
};

// Initial product states: a z-basis pattern, or the same Bloch-sphere qubit
// cos(theta)|up> + sin(theta) e^{i chi}|down> on every site.
struct ProductZ {
    std::vector<bool> up;  // one entry per site, true = |up>
};
struct ProductBloch {
    double theta = 0.0;  // [0, pi/2]
    double chi = 0.0;    // [0, 2 pi)
};
using InitialStateSpec = std::variant<ProductZ, ProductBloch>;

ProductZ neel_state(int n_sites);  // |up down up down ...>

void validate_initial_state(const InitialStateSpec& init, int n_sites);

// Pulse error from finite pulse duration vs dephasing: (2 ln2 / pi) (tau / T2*)^2.
double estimate_pulse_error(double pulse_duration, double dephasing_time);

}  // namespace dtc
