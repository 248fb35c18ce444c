#include "hobo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace hobo {

namespace {
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    fftw_complex* p;
    explicit FftwBuffer(int n) : p(fftw_alloc_complex(static_cast<size_t>(n))) {
        if (!p) throw std::bad_alloc();
    }
    ~FftwBuffer() { fftw_free(p); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
};
}  // namespace

Fft::Fft(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("Fft: size must be positive");
    FftwBuffer in(n), out(n);
    // FFTW planning is not thread-safe; execution via fftw_execute_dft is.
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_1d(n, in.p, out.p, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, in.p, out.p, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fft: FFTW plan creation failed");
}

Fft::~Fft() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
}

const Fft& Fft::plan_for(int n) {
    static std::mutex reg_mutex;
    static std::map<int, std::unique_ptr<Fft>>* registry = new std::map<int, std::unique_ptr<Fft>>;
    std::lock_guard<std::mutex> lock(reg_mutex);
    auto it = registry->find(n);
    if (it == registry->end())
        it = registry->emplace(n, std::unique_ptr<Fft>(new Fft(n))).first;
    return *it->second;
}

static void execute(void* plan, int n, std::span<const std::complex<double>> in,
                    std::span<std::complex<double>> out) {
    if (static_cast<int>(in.size()) != n || static_cast<int>(out.size()) != n)
        throw std::invalid_argument("Fft: buffer size does not match plan size");
    FftwBuffer a(n), b(n);
    for (int j = 0; j < n; ++j) {
        a.p[j][0] = in[static_cast<size_t>(j)].real();
        a.p[j][1] = in[static_cast<size_t>(j)].imag();
    }
    fftw_execute_dft(static_cast<fftw_plan>(plan), a.p, b.p);
    for (int j = 0; j < n; ++j)
        out[static_cast<size_t>(j)] = std::complex<double>(b.p[j][0], b.p[j][1]);
}

void Fft::forward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) const {
    execute(fwd_, n_, in, out);
}

void Fft::backward(std::span<const std::complex<double>> in,
                   std::span<std::complex<double>> out) const {
    execute(bwd_, n_, in, out);
}

}  // namespace hobo
