#pragma once

#include "graphon/core.hpp"

#include <unsupported/Eigen/FFT>

namespace graphon {

enum class FilterKind { Polynomial, Rational, Tabulated };

/// Scalar filter function with declared regularity. Polynomial and rational
/// kinds carry analytic derivatives; tabulated kinds fall back to a central
/// difference with step 1e-5 unless a derivative callable is supplied.
class FilterSpec {
public:
    static FilterSpec polynomial(std::vector<double> coeffs, double domain_bound = 1.0) {
        FilterSpec f;
        f.kind_ = FilterKind::Polynomial;
        f.num_ = std::move(coeffs);
        if (f.num_.empty()) f.num_ = {0.0};
        f.gamma_bound_ = domain_bound;
        f.name_ = "poly:" + join(f.num_);
        return f;
    }

    static FilterSpec rational(std::vector<double> num, std::vector<double> den,
                               double domain_bound = 1.0) {
        if (den.empty() || std::all_of(den.begin(), den.end(),
                                       [](double c) { return c == 0.0; }))
            throw ParameterError("FilterSpec: rational denominator is zero");
        FilterSpec f;
        f.kind_ = FilterKind::Rational;
        f.num_ = std::move(num);
        f.den_ = std::move(den);
        if (f.num_.empty()) f.num_ = {0.0};
        f.gamma_bound_ = domain_bound;
        f.name_ = "rat:" + join(f.num_) + "/" + join(f.den_);
        return f;
    }

    static FilterSpec tabulated(std::function<double(double)> fn,
                                std::function<double(double)> deriv = nullptr,
                                double domain_bound = 1.0, bool differentiable = true,
                                std::string name = "tabulated") {
        FilterSpec f;
        f.kind_ = FilterKind::Tabulated;
        f.fn_ = std::move(fn);
        f.deriv_ = std::move(deriv);
        f.gamma_bound_ = domain_bound;
        f.differentiable_ = differentiable;
        f.name_ = std::move(name);
        return f;
    }

    /// Grammar: "poly:c0,c1,..." | "rat:c0,.../d0,..." | "id" | "sq" |
    /// "cube-minus-id". Coefficients ascending, whitespace-free.
    static FilterSpec parse(const std::string& spec, double domain_bound = 1.0) {
        if (spec == "id") return polynomial({0.0, 1.0}, domain_bound);
        if (spec == "sq") return polynomial({0.0, 0.0, 1.0}, domain_bound);
        if (spec == "cube-minus-id")
            return polynomial({0.0, -1.0, 0.0, 1.0}, domain_bound);
        if (spec.rfind("poly:", 0) == 0)
            return polynomial(split(spec.substr(5)), domain_bound);
        if (spec.rfind("rat:", 0) == 0) {
            const std::string body = spec.substr(4);
            const auto slash = body.find('/');
            if (slash == std::string::npos)
                throw FormatError("FilterSpec: rational spec needs num/den: " + spec);
            return rational(split(body.substr(0, slash)), split(body.substr(slash + 1)),
                            domain_bound);
        }
        throw FormatError("FilterSpec: unknown filter spec \"" + spec + "\"");
    }

    double operator()(double x) const {
        switch (kind_) {
            case FilterKind::Polynomial:
                return horner(num_, x);
            case FilterKind::Rational:
                return horner(num_, x) / horner(den_, x);
            case FilterKind::Tabulated:
                return fn_(x);
        }
        return 0.0;
    }

    double derivative(double x) const {
        switch (kind_) {
            case FilterKind::Polynomial:
                return horner(differentiate(num_), x);
            case FilterKind::Rational: {
                const double p = horner(num_, x), q = horner(den_, x);
                const double dp = horner(differentiate(num_), x);
                const double dq = horner(differentiate(den_), x);
                return (dp * q - p * dq) / (q * q);
            }
            case FilterKind::Tabulated: {
                if (!differentiable_)
                    throw RegularityError("FilterSpec: derivative of non-differentiable filter");
                if (deriv_) return deriv_(x);
                const double step = 1e-5;
                return (fn_(x + step) - fn_(x - step)) / (2.0 * step);
            }
        }
        return 0.0;
    }

    FilterKind kind() const { return kind_; }
    double domain_bound() const { return gamma_bound_; }
    const std::vector<double>& poly_coefficients() const {
        if (kind_ != FilterKind::Polynomial)
            throw ParameterError("FilterSpec: coefficient access needs a polynomial");
        return num_;
    }
    bool zero_at_zero() const { return std::abs((*this)(0.0)) <= 1e-12; }
    bool differentiable() const {
        return kind_ != FilterKind::Tabulated || differentiable_;
    }
    const std::string& name() const { return name_; }
    double denominator_at(double x) const {
        return kind_ == FilterKind::Rational ? horner(den_, x) : 1.0;
    }

    FilterSpec with_domain_bound(double gamma) const {
        FilterSpec f(*this);
        f.gamma_bound_ = gamma;
        return f;
    }

private:
    FilterSpec() = default;

    static double horner(const std::vector<double>& c, double x) {
        double r = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    static std::vector<double> differentiate(const std::vector<double>& c) {
        std::vector<double> d;
        for (std::size_t k = 1; k < c.size(); ++k) d.push_back(k * c[k]);
        if (d.empty()) d.push_back(0.0);
        return d;
    }

    static std::vector<double> split(const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw FormatError("FilterSpec: bad coefficient \"" + tok + "\"");
            }
        }
        if (out.empty()) throw FormatError("FilterSpec: empty coefficient list");
        return out;
    }

    static std::string join(const std::vector<double>& c) {
        std::ostringstream os;
        os.precision(17);
        for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
        return os.str();
    }

    FilterKind kind_ = FilterKind::Polynomial;
    std::vector<double> num_{0.0};
    std::vector<double> den_;
    std::function<double(double)> fn_;
    std::function<double(double)> deriv_;
    double gamma_bound_ = 1.0;
    bool differentiable_ = true;
    std::string name_;
};

/// True when the filter is C^1 with Lipschitz derivative on [-Gamma, Gamma]
/// (rational kinds additionally need a nonvanishing denominator there).
inline bool regularity_gate(const FilterSpec& h, std::string* why = nullptr) {
    if (!h.differentiable()) {
        if (why) *why = "filter is declared non-differentiable";
        return false;
    }
    if (h.kind() == FilterKind::Rational) {
        const double gamma = h.domain_bound();
        double mn = std::numeric_limits<double>::infinity(), mx = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double x = -gamma + 2.0 * gamma * i / 2000.0;
            const double q = std::abs(h.denominator_at(x));
            mn = std::min(mn, q);
            mx = std::max(mx, q);
        }
        if (mn <= 1e-9 * std::max(1.0, mx)) {
            if (why) *why = "rational denominator vanishes on the domain";
            return false;
        }
    }
    return true;
}

/// Periodic C^1 extension of a filter: equal to h on [-Gamma, Gamma], closed
/// by a cubic Hermite blend over the wrap-around gap, period 2*(Gamma+margin).
class PeriodicExtension {
public:
    explicit PeriodicExtension(const FilterSpec& h, double margin = 1.0)
        : h_(h), bound_(h.domain_bound()), margin_(margin) {
        std::string why;
        if (!regularity_gate(h, &why))
            throw RegularityError("PeriodicExtension: " + why);
        gamma_ = 2.0 * (bound_ + margin_);
        p0_ = h_(bound_);
        m0_ = h_.derivative(bound_);
        p1_ = h_(-bound_);
        m1_ = h_.derivative(-bound_);
    }

    double period() const { return gamma_; }
    double domain_bound() const { return bound_; }

    double operator()(double t) const {
        double u = std::fmod(t + 0.5 * gamma_, gamma_);
        if (u < 0.0) u += gamma_;
        u -= 0.5 * gamma_;  // u in [-gamma/2, gamma/2)
        if (u >= -bound_ && u <= bound_) return h_(u);
        // wrap-around gap from +Gamma to -Gamma, arc length 2*margin
        const double s = u > bound_ ? u - bound_ : u + gamma_ - bound_;
        return hermite(s / (2.0 * margin_));
    }

private:
    double hermite(double t) const {
        const double len = 2.0 * margin_;
        const double t2 = t * t, t3 = t2 * t;
        return (2 * t3 - 3 * t2 + 1) * p0_ + (t3 - 2 * t2 + t) * len * m0_ +
               (-2 * t3 + 3 * t2) * p1_ + (t3 - t2) * len * m1_;
    }

    FilterSpec h_;
    double bound_, margin_, gamma_;
    double p0_, m0_, p1_, m1_;
};

/// Fourier coefficients hhat(-N..N) of a gamma-periodic function, with
/// hhat(n) = (1/gamma) * integral of h(t) exp(-2 pi i n t / gamma).
struct FourierCoefficients {
    double gamma = 1.0;
    int n_max = 0;
    std::vector<Complex> coeffs;  // index n_max + n

    Complex operator()(int n) const { return coeffs[static_cast<std::size_t>(n_max + n)]; }

    /// Partial sum S_N h at t, for N <= n_max.
    double partial_sum(double t, int order) const {
        if (order > n_max) throw ParameterError("partial_sum: order exceeds n_max");
        Complex s = 0.0;
        for (int n = -order; n <= order; ++n)
            s += (*this)(n)*std::exp(Complex(0.0, 2.0 * M_PI * n * t / gamma));
        return s.real();
    }
};

inline FourierCoefficients fourier_coefficients(const std::function<double(double)>& h,
                                                double gamma, int n_max,
                                                int sample_count = 1 << 14) {
    if (sample_count <= 0 || (sample_count & (sample_count - 1)) != 0)
        throw ParameterError("fourier_coefficients: sample count must be a power of two");
    if (n_max < 0 || n_max > sample_count / 4)
        throw ParameterError("fourier_coefficients: n_max must be at most sample_count/4");
    std::vector<Complex> samples(sample_count);
    for (int j = 0; j < sample_count; ++j) {
        const double t = -0.5 * gamma + gamma * j / sample_count;
        samples[j] = Complex(h(t), 0.0);
    }
    std::vector<Complex> freq(sample_count);
    Eigen::FFT<double> fft;
    fft.fwd(freq, samples);
    FourierCoefficients out;
    out.gamma = gamma;
    out.n_max = n_max;
    out.coeffs.resize(2 * n_max + 1);
    for (int n = -n_max; n <= n_max; ++n) {
        const int idx = (n % sample_count + sample_count) % sample_count;
        // samples start at -gamma/2, which shifts bin n by (-1)^n
        const double sign = (n % 2 == 0) ? 1.0 : -1.0;
        out.coeffs[static_cast<std::size_t>(n_max + n)] = sign * freq[idx] / double(sample_count);
    }
    return out;
}

inline FourierCoefficients fourier_coefficients(const PeriodicExtension& ext, int n_max,
                                                int sample_count = 1 << 14) {
    return fourier_coefficients([&](double t) { return ext(t); }, ext.period(), n_max,
                                sample_count);
}

/// Stability constant data for the linear transfer bound: the weighted
/// coefficient sum C = sum |hhat(n)| |n| and the operator bound 2 + 2 pi C / gamma.
struct StabilityConstant {
    double gamma = 0.0;
    double coeff_sum = 0.0;
    double lemma_constant = 2.0;
    int truncation_n = 0;
    double tail_estimate = 0.0;
};

inline StabilityConstant stability_from_coefficients(const FourierCoefficients& fc) {
    StabilityConstant out;
    out.gamma = fc.gamma;
    out.truncation_n = fc.n_max;
    for (int n = -fc.n_max; n <= fc.n_max; ++n)
        out.coeff_sum += std::abs(fc(n)) * std::abs(n);
    out.lemma_constant = 2.0 + 2.0 * M_PI * out.coeff_sum / fc.gamma;
    // tail diagnostic: fit |hhat(n)| <= K/n^2 on the top decade and
    // extrapolate one further decade; reported only, never added to C
    double fit = 0.0;
    const int lo = std::max(2, fc.n_max / 10);
    for (int n = lo; n <= fc.n_max; ++n) {
        fit = std::max(fit, std::abs(fc(n)) * double(n) * double(n));
        fit = std::max(fit, std::abs(fc(-n)) * double(n) * double(n));
    }
    double tail = 0.0;
    for (int n = fc.n_max + 1; n <= 10 * fc.n_max; ++n) tail += 2.0 * fit / n;
    out.tail_estimate = tail;
    return out;
}

inline StabilityConstant stability_constant(const FilterSpec& h, int n_max = 2048,
                                            int sample_count = 1 << 14) {
    std::string why;
    if (!regularity_gate(h, &why)) throw RegularityError("stability_constant: " + why);
    if (!h.zero_at_zero())
        throw RegularityError("stability_constant: filter must vanish at zero");
    const PeriodicExtension ext(h);
    return stability_from_coefficients(fourier_coefficients(ext, n_max, sample_count));
}

/// Grid estimate of the Lipschitz constant of h on [a, b]; a reporting
/// lower bound, not a certified constant.
inline double lipschitz_estimate(const FilterSpec& h, double a, double b, int grid = 1000) {
    grid = std::max(grid, 2);
    double best = 0.0;
    if (h.differentiable()) {
        for (int i = 0; i <= grid; ++i) {
            const double x = a + (b - a) * i / grid;
            best = std::max(best, std::abs(h.derivative(x)));
        }
    } else {
        double prev = h(a);
        for (int i = 1; i <= grid; ++i) {
            const double x = a + (b - a) * i / grid;
            const double cur = h(x);
            best = std::max(best, std::abs(cur - prev) / ((b - a) / grid));
            prev = cur;
        }
    }
    return best;
}

/// Sup-norm gap between a periodic function and its order-n Fourier partial
/// sum, evaluated on a 10n-point grid over one period.
inline double jackson_gap(const std::function<double(double)>& h_ext, double gamma, int n,
                          int sample_count = 1 << 14) {
    if (n < 2) throw ParameterError("jackson_gap: order must be at least 2");
    const FourierCoefficients fc = fourier_coefficients(h_ext, gamma, n, sample_count);
    const int grid = 10 * n;
    double gap = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double t = -0.5 * gamma + gamma * i / grid;
        gap = std::max(gap, std::abs(h_ext(t) - fc.partial_sum(t, n)));
    }
    return gap;
}

inline double jackson_gap(const PeriodicExtension& ext, int n, int sample_count = 1 << 14) {
    return jackson_gap([&](double t) { return ext(t); }, ext.period(), n, sample_count);
}

}  // namespace graphon
