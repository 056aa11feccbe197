#include "peq/grid.hpp"

#include <fftw3.h>

#include <cstdlib>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "peq/errors.hpp"

namespace peq {

namespace testhooks {
bool corrupt_dealias = false;
}

Grid make_grid(int nx, int ny, int nz, double h) {
    auto check = [](int n, const char* name) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument(std::string("grid: ") + name +
                                        " must be even and >= 4, got " + std::to_string(n));
    };
    check(nx, "nx");
    check(ny, "ny");
    check(nz, "nz");
    if (!(h > 0.0)) throw std::invalid_argument("grid: h must be positive");
    Grid g;
    g.nx = nx;
    g.ny = ny;
    g.nz = nz;
    g.h = h;
    return g;
}

// ---------------------------------------------------------------------------
// FFT engine: cached c2c plans per (nx,ny,nz), FFTW_ESTIMATE only so plan
// selection is deterministic. Transforms copy through internal aligned
// buffers; the per-engine mutex makes concurrent use on distinct fields safe.
// ---------------------------------------------------------------------------
namespace {

std::mutex g_registry_mutex;
int g_fft_threads = 0;  // 0 = not initialized yet

int resolve_threads() {
    if (g_fft_threads > 0) return g_fft_threads;
    int n = 1;
    if (const char* env = std::getenv("PEQ_THREADS")) {
        n = std::atoi(env);
        if (n < 1) n = 1;
    }
    g_fft_threads = n;
    return n;
}

class FftEngine {
  public:
    FftEngine(int nx, int ny, int nz) : n3_(std::size_t(nx) * ny * nz), n2_(std::size_t(nx) * ny) {
#ifdef PEQ_FFTW_THREADS
        static std::once_flag once;
        std::call_once(once, [] { fftw_init_threads(); });
        fftw_plan_with_nthreads(resolve_threads());
#else
        (void)resolve_threads();
#endif
        in3_ = fftw_alloc_complex(n3_);
        out3_ = fftw_alloc_complex(n3_);
        in2_ = fftw_alloc_complex(n2_);
        out2_ = fftw_alloc_complex(n2_);
        fwd3_ = fftw_plan_dft_3d(nx, ny, nz, in3_, out3_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd3_ = fftw_plan_dft_3d(nx, ny, nz, in3_, out3_, FFTW_BACKWARD, FFTW_ESTIMATE);
        fwd2_ = fftw_plan_dft_2d(nx, ny, in2_, out2_, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd2_ = fftw_plan_dft_2d(nx, ny, in2_, out2_, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    ~FftEngine() {
        fftw_destroy_plan(fwd3_);
        fftw_destroy_plan(bwd3_);
        fftw_destroy_plan(fwd2_);
        fftw_destroy_plan(bwd2_);
        fftw_free(in3_);
        fftw_free(out3_);
        fftw_free(in2_);
        fftw_free(out2_);
    }

    void forward3(std::span<const double> in, std::span<Complex> out) {
        std::scoped_lock lock(mutex_);
        const double scale = 1.0 / double(n3_);
        for (std::size_t p = 0; p < n3_; ++p) {
            in3_[p][0] = in[p];
            in3_[p][1] = 0.0;
        }
        fftw_execute(fwd3_);
        for (std::size_t p = 0; p < n3_; ++p) out[p] = Complex(out3_[p][0] * scale, out3_[p][1] * scale);
    }

    void backward3(std::span<const Complex> in, std::span<double> out) {
        std::scoped_lock lock(mutex_);
        for (std::size_t p = 0; p < n3_; ++p) {
            in3_[p][0] = in[p].real();
            in3_[p][1] = in[p].imag();
        }
        fftw_execute(bwd3_);
        for (std::size_t p = 0; p < n3_; ++p) out[p] = out3_[p][0];
    }

    void forward2(std::span<const double> in, std::span<Complex> out) {
        std::scoped_lock lock(mutex_);
        const double scale = 1.0 / double(n2_);
        for (std::size_t p = 0; p < n2_; ++p) {
            in2_[p][0] = in[p];
            in2_[p][1] = 0.0;
        }
        fftw_execute(fwd2_);
        for (std::size_t p = 0; p < n2_; ++p) out[p] = Complex(out2_[p][0] * scale, out2_[p][1] * scale);
    }

    void backward2(std::span<const Complex> in, std::span<double> out) {
        std::scoped_lock lock(mutex_);
        for (std::size_t p = 0; p < n2_; ++p) {
            in2_[p][0] = in[p].real();
            in2_[p][1] = in[p].imag();
        }
        fftw_execute(bwd2_);
        for (std::size_t p = 0; p < n2_; ++p) out[p] = out2_[p][0];
    }

  private:
    std::size_t n3_, n2_;
    fftw_complex *in3_, *out3_, *in2_, *out2_;
    fftw_plan fwd3_, bwd3_, fwd2_, bwd2_;
    std::mutex mutex_;
};

FftEngine& engine_for(const Grid& g) {
    std::scoped_lock lock(g_registry_mutex);
    static std::map<std::tuple<int, int, int>, std::unique_ptr<FftEngine>> registry;
    auto key = std::make_tuple(g.nx, g.ny, g.nz);
    auto it = registry.find(key);
    if (it == registry.end())
        it = registry.emplace(key, std::make_unique<FftEngine>(g.nx, g.ny, g.nz)).first;
    return *it->second;
}

}  // namespace

void set_fft_threads(int n) {
    std::scoped_lock lock(g_registry_mutex);
    g_fft_threads = (n < 1) ? 1 : n;
}

// ---------------------------------------------------------------------------
// Field3 / Field2
// ---------------------------------------------------------------------------

Field3::Field3(const Grid& g, Rep rep) : grid_(g), rep_(rep) {
    if (rep == Rep::Physical)
        phys_.assign(g.size(), 0.0);
    else
        spec_.assign(g.size(), Complex(0.0, 0.0));
}

std::span<double> Field3::phys() {
    if (rep_ != Rep::Physical) throw std::logic_error("Field3: physical access on spectral field");
    return phys_;
}
std::span<const double> Field3::phys() const {
    if (rep_ != Rep::Physical) throw std::logic_error("Field3: physical access on spectral field");
    return phys_;
}
std::span<Complex> Field3::spec() {
    if (rep_ != Rep::Spectral) throw std::logic_error("Field3: spectral access on physical field");
    return spec_;
}
std::span<const Complex> Field3::spec() const {
    if (rep_ != Rep::Spectral) throw std::logic_error("Field3: spectral access on physical field");
    return spec_;
}

Field2::Field2(const Grid& g, Rep rep) : grid_(g), rep_(rep) {
    if (rep == Rep::Physical)
        phys_.assign(g.size2d(), 0.0);
    else
        spec_.assign(g.size2d(), Complex(0.0, 0.0));
}

std::span<double> Field2::phys() {
    if (rep_ != Rep::Physical) throw std::logic_error("Field2: physical access on spectral field");
    return phys_;
}
std::span<const double> Field2::phys() const {
    if (rep_ != Rep::Physical) throw std::logic_error("Field2: physical access on spectral field");
    return phys_;
}
std::span<Complex> Field2::spec() {
    if (rep_ != Rep::Spectral) throw std::logic_error("Field2: spectral access on physical field");
    return spec_;
}
std::span<const Complex> Field2::spec() const {
    if (rep_ != Rep::Spectral) throw std::logic_error("Field2: spectral access on physical field");
    return spec_;
}

Field3 transform(const Field3& f, Direction dir) {
    auto& eng = engine_for(f.grid());
    if (dir == Direction::Forward) {
        if (f.rep() != Rep::Physical)
            throw std::invalid_argument("transform: forward expects a physical field");
        Field3 out(f.grid(), Rep::Spectral);
        eng.forward3(f.phys(), out.spec());
        return out;
    }
    if (f.rep() != Rep::Spectral)
        throw std::invalid_argument("transform: backward expects a spectral field");
    Field3 out(f.grid(), Rep::Physical);
    eng.backward3(f.spec(), out.phys());
    return out;
}

Field2 transform(const Field2& f, Direction dir) {
    auto& eng = engine_for(f.grid());
    if (dir == Direction::Forward) {
        if (f.rep() != Rep::Physical)
            throw std::invalid_argument("transform: forward expects a physical field");
        Field2 out(f.grid(), Rep::Spectral);
        eng.forward2(f.phys(), out.spec());
        return out;
    }
    if (f.rep() != Rep::Spectral)
        throw std::invalid_argument("transform: backward expects a spectral field");
    Field2 out(f.grid(), Rep::Physical);
    eng.backward2(f.spec(), out.phys());
    return out;
}

Field3 to_spectral(Field3 f) {
    if (f.rep() == Rep::Spectral) return f;
    return transform(f, Direction::Forward);
}
Field3 to_physical(Field3 f) {
    if (f.rep() == Rep::Physical) return f;
    return transform(f, Direction::Backward);
}
Field2 to_spectral(Field2 f) {
    if (f.rep() == Rep::Spectral) return f;
    return transform(f, Direction::Forward);
}
Field2 to_physical(Field2 f) {
    if (f.rep() == Rep::Physical) return f;
    return transform(f, Direction::Backward);
}

namespace {

// i*k for order 1 (zero at Nyquist), -k^2 for order 2.
inline Complex deriv_symbol(double k, bool nyquist, int order) {
    if (order == 1) return nyquist ? Complex(0.0, 0.0) : Complex(0.0, k);
    return Complex(-k * k, 0.0);
}

}  // namespace

Field3 derivative(const Field3& f, Axis axis, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
    Field3 s = to_spectral(f);
    const Grid& g = s.grid();
    auto c = s.spec();
    std::size_t p = 0;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            for (int k = 0; k < g.nz; ++k, ++p) {
                double kk;
                bool nyq;
                switch (axis) {
                    case Axis::X: kk = g.kx(i); nyq = (i == g.nx / 2); break;
                    case Axis::Y: kk = g.ky(j); nyq = (j == g.ny / 2); break;
                    default: kk = g.kz(k); nyq = (k == g.nz / 2); break;
                }
                c[p] *= deriv_symbol(kk, nyq, order);
            }
        }
    }
    return (f.rep() == Rep::Physical) ? to_physical(std::move(s)) : s;
}

Field2 derivative(const Field2& f, Axis axis, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("derivative: order must be 1 or 2");
    if (axis == Axis::Z) throw std::invalid_argument("derivative: 2D fields have no z axis");
    Field2 s = to_spectral(f);
    const Grid& g = s.grid();
    auto c = s.spec();
    std::size_t p = 0;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j, ++p) {
            const bool xaxis = (axis == Axis::X);
            const double kk = xaxis ? g.kx(i) : g.ky(j);
            const bool nyq = xaxis ? (i == g.nx / 2) : (j == g.ny / 2);
            c[p] *= deriv_symbol(kk, nyq, order);
        }
    }
    return (f.rep() == Rep::Physical) ? to_physical(std::move(s)) : s;
}

Field3 dealias(Field3 f) {
    if (f.rep() != Rep::Spectral) throw std::invalid_argument("dealias: spectral field expected");
    if (testhooks::corrupt_dealias) return f;
    const Grid& g = f.grid();
    const int cx = Grid::dealias_cutoff(g.nx);
    const int cy = Grid::dealias_cutoff(g.ny);
    const int cz = Grid::dealias_cutoff(g.nz);
    auto c = f.spec();
    std::size_t p = 0;
    for (int i = 0; i < g.nx; ++i) {
        const bool kill_i = std::abs(Grid::signed_mode(i, g.nx)) > cx;
        for (int j = 0; j < g.ny; ++j) {
            const bool kill_j = kill_i || std::abs(Grid::signed_mode(j, g.ny)) > cy;
            for (int k = 0; k < g.nz; ++k, ++p) {
                if (kill_j || std::abs(Grid::signed_mode(k, g.nz)) > cz) c[p] = Complex(0.0, 0.0);
            }
        }
    }
    return f;
}

Field3 vertical_antiderivative_zero_mean(Field3 f) {
    Field3 s = to_spectral(std::move(f));
    const Grid& g = s.grid();
    auto c = s.spec();
    const int nyq = g.nz / 2;
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const std::size_t base = g.idx(i, j, 0);
            Complex anchor(0.0, 0.0);
            for (int k = 1; k < g.nz; ++k) {
                if (k == nyq) {
                    c[base + k] = Complex(0.0, 0.0);
                    continue;
                }
                const Complex ik(0.0, g.kz(k));
                c[base + k] /= ik;
                anchor -= c[base + k];
            }
            c[base] = anchor;  // F(z=-h) = 0
        }
    }
    return s;
}

Field3 vertical_antiderivative(const Field3& f) {
    Field3 s = to_spectral(f);
    const Grid& g = s.grid();

    // z-mean plane, needed in physical space for the linear profile
    Field2 mean(g, Rep::Spectral);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) mean.coef(i, j) = s.coef(i, j, 0);
    Field2 mean_phys = to_physical(std::move(mean));

    Field3 osc = to_physical(vertical_antiderivative_zero_mean(std::move(s)));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double m = mean_phys.at(i, j);
            for (int k = 0; k < g.nz; ++k) osc.at(i, j, k) += m * (g.z(k) + g.h);
        }
    return osc;
}

// ---------------------------------------------------------------------------
// arithmetic helpers
// ---------------------------------------------------------------------------
namespace {
void require_compatible(const Field3& a, const Field3& b) {
    if (!(a.grid() == b.grid()) || a.rep() != b.rep())
        throw std::invalid_argument("field arithmetic: mismatched grid or representation");
}
void require_compatible(const Field2& a, const Field2& b) {
    if (!(a.grid() == b.grid()) || a.rep() != b.rep())
        throw std::invalid_argument("field arithmetic: mismatched grid or representation");
}
}  // namespace

Field3& operator+=(Field3& a, const Field3& b) {
    require_compatible(a, b);
    if (a.rep() == Rep::Physical) {
        auto pa = a.phys();
        auto pb = b.phys();
        for (std::size_t p = 0; p < pa.size(); ++p) pa[p] += pb[p];
    } else {
        auto sa = a.spec();
        auto sb = b.spec();
        for (std::size_t p = 0; p < sa.size(); ++p) sa[p] += sb[p];
    }
    return a;
}

Field3& operator-=(Field3& a, const Field3& b) {
    require_compatible(a, b);
    if (a.rep() == Rep::Physical) {
        auto pa = a.phys();
        auto pb = b.phys();
        for (std::size_t p = 0; p < pa.size(); ++p) pa[p] -= pb[p];
    } else {
        auto sa = a.spec();
        auto sb = b.spec();
        for (std::size_t p = 0; p < sa.size(); ++p) sa[p] -= sb[p];
    }
    return a;
}

Field3& operator*=(Field3& a, double s) {
    if (a.rep() == Rep::Physical)
        for (auto& v : a.phys()) v *= s;
    else
        for (auto& v : a.spec()) v *= s;
    return a;
}

Field3 operator+(Field3 a, const Field3& b) { return a += b; }
Field3 operator-(Field3 a, const Field3& b) { return a -= b; }
Field3 operator*(double s, Field3 a) { return a *= s; }

Field2& operator+=(Field2& a, const Field2& b) {
    require_compatible(a, b);
    if (a.rep() == Rep::Physical) {
        auto pa = a.phys();
        auto pb = b.phys();
        for (std::size_t p = 0; p < pa.size(); ++p) pa[p] += pb[p];
    } else {
        auto sa = a.spec();
        auto sb = b.spec();
        for (std::size_t p = 0; p < sa.size(); ++p) sa[p] += sb[p];
    }
    return a;
}

Field2& operator-=(Field2& a, const Field2& b) {
    require_compatible(a, b);
    if (a.rep() == Rep::Physical) {
        auto pa = a.phys();
        auto pb = b.phys();
        for (std::size_t p = 0; p < pa.size(); ++p) pa[p] -= pb[p];
    } else {
        auto sa = a.spec();
        auto sb = b.spec();
        for (std::size_t p = 0; p < sa.size(); ++p) sa[p] -= sb[p];
    }
    return a;
}

Field2& operator*=(Field2& a, double s) {
    if (a.rep() == Rep::Physical)
        for (auto& v : a.phys()) v *= s;
    else
        for (auto& v : a.spec()) v *= s;
    return a;
}

Field2 operator*(double s, Field2 a) { return a *= s; }

Field3 pmul(const Field3& a, const Field3& b) {
    if (a.rep() != Rep::Physical || b.rep() != Rep::Physical)
        throw std::invalid_argument("pmul: physical fields expected");
    if (!(a.grid() == b.grid())) throw std::invalid_argument("pmul: mismatched grids");
    Field3 out(a.grid(), Rep::Physical);
    auto po = out.phys();
    auto pa = a.phys();
    auto pb = b.phys();
    for (std::size_t p = 0; p < po.size(); ++p) po[p] = pa[p] * pb[p];
    return out;
}

double max_abs(const Field3& f) {
    double m = 0.0;
    for (double v : f.phys()) m = std::max(m, std::abs(v));
    return m;
}

bool all_finite(const Field3& f) {
    if (f.rep() == Rep::Physical) {
        for (double v : f.phys())
            if (!std::isfinite(v)) return false;
    } else {
        for (const Complex& v : f.spec())
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
    return true;
}

}  // namespace peq
