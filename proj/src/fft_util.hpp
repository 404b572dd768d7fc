#pragma once

#include <fftw3.h>

#include <complex>
#include <mutex>
#include <vector>

namespace gl3::detail {

inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// Backward (positive exponent) DFT of fixed length:
// out[k] = sum_j in[j] e(j k / n). One instance per thread.
class BackwardDft {
public:
    explicit BackwardDft(int n) : n_(n) {
        in_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        out_ = fftw_alloc_complex(static_cast<std::size_t>(n));
        std::lock_guard<std::mutex> lk(fftw_planner_mutex());
        plan_ = fftw_plan_dft_1d(n, in_, out_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~BackwardDft() {
        {
            std::lock_guard<std::mutex> lk(fftw_planner_mutex());
            fftw_destroy_plan(plan_);
        }
        fftw_free(in_);
        fftw_free(out_);
    }
    BackwardDft(const BackwardDft&) = delete;
    BackwardDft& operator=(const BackwardDft&) = delete;

    int size() const { return n_; }
    std::complex<double>* input() { return reinterpret_cast<std::complex<double>*>(in_); }
    const std::complex<double>* output() const {
        return reinterpret_cast<const std::complex<double>*>(out_);
    }
    void run() { fftw_execute(plan_); }

private:
    int n_;
    fftw_complex* in_;
    fftw_complex* out_;
    fftw_plan plan_;
};

}  // namespace gl3::detail
