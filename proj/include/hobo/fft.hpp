// fft.hpp
// Complex-to-complex FFT engine backed by FFTW3.  Engines are cached per
// size, immutable after creation, and safe to share across threads
// (execution uses fftw_execute_dft on per-call buffers).

#pragma once

#include <complex>
#include <span>

namespace hobo {

class Fft {
  public:
    // cached engine for transform size n (n >= 1)
    static const Fft& plan_for(int n);

    // unnormalized: out_k = sum_j in_j e^{-2 pi i k j / n}
    void forward(std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out) const;
    // unnormalized: out_j = sum_k in_k e^{+2 pi i k j / n}
    void backward(std::span<const std::complex<double>> in,
                  std::span<std::complex<double>> out) const;

    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;
    ~Fft();

  private:
    explicit Fft(int n);
    int n_;
    void* fwd_;  // fftw_plan
    void* bwd_;
};

}  // namespace hobo
