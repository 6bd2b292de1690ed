// Microbenchmarks for the dense-simulation hot paths: Hamiltonian assembly,
// propagator construction, period-operator assembly, strobed evolution, and
// full sweep cells.

#include <benchmark/benchmark.h>

#include "dtc/analysis.hpp"
#include "dtc/floquet.hpp"
#include "dtc/hilbert.hpp"
#include "dtc/rng.hpp"
#include "dtc/spinmodel.hpp"
#include "dtc/sweep.hpp"

namespace {

using namespace dtc;

ChainSpec make_spec(int n_sites) {
  ChainSpec spec;
  spec.n_sites = n_sites;
  spec.j_mean = 0.6;
  spec.j_width = 0.1;
  spec.field_mean = {0.0, 0.0, 0.0};
  spec.field_width = {0.0, 0.0, 0.05};
  return spec;
}

DriveProtocol make_protocol(int h2i_count) {
  DriveProtocol protocol;
  protocol.floquet_error = 0.1;
  protocol.h2i_count = h2i_count;
  return protocol;
}

void BM_BuildHamiltonian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainSpec spec = make_spec(n);
  const DisorderRealization real = sample_disorder(spec, 42);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_hamiltonian(Model::Heisenberg, spec, real));
  }
}
BENCHMARK(BM_BuildHamiltonian)->Arg(4)->Arg(8)->Arg(10);

void BM_Propagator(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainSpec spec = make_spec(n);
  const DisorderRealization real = sample_disorder(spec, 42);
  const HermitianOperator h = build_hamiltonian(Model::Heisenberg, spec, real);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagator(h, 0.5));
  }
}
BENCHMARK(BM_Propagator)->Arg(4)->Arg(8)->Arg(10);

void BM_AssemblePeriod(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int pulses = static_cast<int>(state.range(1));
  const ChainSpec spec = make_spec(n);
  const DisorderRealization real = sample_disorder(spec, 42);
  const DriveProtocol protocol = make_protocol(pulses);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        assemble_period(Model::Heisenberg, spec, real, protocol, Axis::X, Axis::Z));
  }
}
BENCHMARK(BM_AssemblePeriod)->Args({4, 0})->Args({4, 16})->Args({4, 128})->Args({8, 128});

void BM_RunProtocol(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ChainSpec spec = make_spec(n);
  const DisorderRealization real = sample_disorder(spec, 42);
  const DriveProtocol protocol = make_protocol(0);
  const InitialStateSpec init{ProductZ{neel_state(n)}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_protocol(Model::Ising, spec, real, protocol, init, 200,
                                          SamplingMode::Stroboscopic2T));
  }
}
BENCHMARK(BM_RunProtocol)->Arg(4)->Arg(8);

void BM_SweepCell(benchmark::State& state) {
  SweepPlan plan;
  plan.model = Model::Ising;
  plan.spec = make_spec(4);
  plan.protocol = make_protocol(0);
  plan.initial = neel_state(4);
  plan.x = SweepAxis{"j_mean", {0.6}};
  plan.realizations = 20;
  plan.observable = TimeAverageZ{1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep(plan, 1));
  }
}
BENCHMARK(BM_SweepCell);

void BM_BlochPurityCell(benchmark::State& state) {
  const ChainSpec spec = make_spec(4);
  const DriveProtocol protocol = make_protocol(0);
  const BlochGrid grid{8, 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bloch_averaged_purity(Model::Ising, spec, protocol, 200, grid, 10, 7));
  }
}
BENCHMARK(BM_BlochPurityCell);

}  // namespace
