#include <benchmark/benchmark.h>

#include <random>

#include "orbitsum/certificate_json.hpp"
#include "orbitsum/certifier.hpp"
#include "orbitsum/oracle.hpp"

using namespace orbitsum;

namespace {

const StepSet kExample1 = parse_stepset("(-1,-1,0),(-1,0,1),(-1,1,-1),(0,-1,1),(0,0,-1),(0,1,0),(1,0,0)");

GroupResult group_of(const StepSet& s) {
  return close_group({generator(s, 0), generator(s, 1), generator(s, 2)}, 200);
}

std::vector<StepSet> random_models(int n) {
  std::mt19937 rng(1);
  std::vector<StepSet> out;
  while (static_cast<int>(out.size()) < n) {
    StepSet s(rng() & kMaxModelId);
    if (uses_all_directions(s)) out.push_back(s);
  }
  return out;
}

void BM_ModelOrbitSize(benchmark::State& st) {
  auto ms = random_models(1024);
  std::size_t i = 0;
  for (auto _ : st) benchmark::DoNotOptimize(model_orbit_size(ms[i++ & 1023], 200));
}
BENCHMARK(BM_ModelOrbitSize);

void BM_CanonicalTest(benchmark::State& st) {
  std::uint32_t id = 1;
  for (auto _ : st) {
    benchmark::DoNotOptimize(is_axis_canonical(id));
    id = id % kMaxModelId + 1;
  }
}
BENCHMARK(BM_CanonicalTest);

void BM_CloseGroupExample1(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(group_of(kExample1));
}
BENCHMARK(BM_CloseGroupExample1)->Unit(benchmark::kMillisecond);

void BM_CertifyExample1(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(certify(kExample1));
}
BENCHMARK(BM_CertifyExample1)->Unit(benchmark::kMillisecond);

void BM_VerifyExample1(benchmark::State& st) {
  auto cert = certify(kExample1);
  for (auto _ : st) benchmark::DoNotOptimize(verify_certificate(cert));
}
BENCHMARK(BM_VerifyExample1)->Unit(benchmark::kMillisecond);

void BM_CertificateJson(benchmark::State& st) {
  auto cert = certify(kExample1);
  for (auto _ : st) benchmark::DoNotOptimize(certificate_from_json(certificate_to_json(cert)));
}
BENCHMARK(BM_CertificateJson)->Unit(benchmark::kMicrosecond);

void BM_WalkCounts(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(walk_counts(kExample1, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_WalkCounts)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_PositivePart(benchmark::State& st) {
  auto cert = certify(kExample1);
  auto g = group_of(kExample1);
  for (auto _ : st) benchmark::DoNotOptimize(positive_part_check(kExample1, g, *cert.weight, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_PositivePart)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
