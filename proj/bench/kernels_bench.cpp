// Serial vs OpenMP kernels on a full-HD panel frame.
#include <benchmark/benchmark.h>

#include "foveagaze/kernels.hpp"
#include "foveagaze/synth.hpp"

namespace {

using namespace foveagaze;

const RgbImage& panel() {
    static const RgbImage img = render_panel(PanelSpec{});
    return img;
}

const RgbImage& blurred() {
    static const RgbImage img = kernels::serial::gaussian_blur(panel(), 6.0);
    return img;
}

template <bool Parallel>
void BM_Luminance(benchmark::State& state) {
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::luminance(panel()) : kernels::serial::luminance(panel());
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void BM_Laplacian(benchmark::State& state) {
    const auto luma = kernels::serial::luminance(panel());
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::laplacian(luma) : kernels::serial::laplacian(luma);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void BM_WindowVariance(benchmark::State& state) {
    const auto lap = kernels::serial::laplacian(kernels::serial::luminance(panel()));
    const int stride = static_cast<int>(state.range(0));
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::window_variance(lap, 31, stride)
                            : kernels::serial::window_variance(lap, 31, stride);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void BM_GaussianBlur(benchmark::State& state) {
    const double sigma = static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::gaussian_blur(panel(), sigma)
                            : kernels::serial::gaussian_blur(panel(), sigma);
        benchmark::DoNotOptimize(out);
    }
}

template <bool Parallel>
void BM_BlendFoveated(benchmark::State& state) {
    const Point gaze{960, 540};
    for (auto _ : state) {
        auto out = Parallel ? kernels::parallel::blend_foveated(panel(), blurred(), gaze, 200, 16)
                            : kernels::serial::blend_foveated(panel(), blurred(), gaze, 200, 16);
        benchmark::DoNotOptimize(out);
    }
}

}  // namespace

BENCHMARK(BM_Luminance<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Luminance<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Laplacian<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Laplacian<true>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowVariance<false>)->Arg(8)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_WindowVariance<true>)->Arg(8)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaussianBlur<false>)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GaussianBlur<true>)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlendFoveated<false>)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BlendFoveated<true>)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
