#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace finadd {

using Complex = std::complex<double>;

/// Characteristic function phi of X(1) for a process with independent
/// stationary increments, together with a logarithm that is continuous along
/// [0, u] and vanishes at 0.
class CharFn {
public:
    enum class Family { Gaussian, Poisson, Degenerate, CompoundPoisson, Custom };

    static CharFn gaussian(double mean = 0, double variance = 1);
    static CharFn poisson(double rate = 1);
    static CharFn degenerate(double value);
    // jumps: (size, probability); probabilities sum to 1
    static CharFn compound_poisson(double rate, std::vector<std::pair<double, double>> jumps);
    static CharFn custom(std::function<Complex(double)> phi, std::string name = "custom");

    Complex operator()(double u) const;
    // Closed form for the native families, branch tracking otherwise.
    Complex log(double u) const;
    // Continuous argument accumulated by stepping from 0; throws
    // SingularityError where phi vanishes.
    Complex tracked_log(double u) const;

    Family family() const noexcept { return family_; }
    const std::string& name() const noexcept { return name_; }
    // mean/variance for Gaussian, rate for Poisson and compound Poisson,
    // value for Degenerate
    double location() const noexcept { return a_; }
    double scale() const noexcept { return b_; }
    const std::vector<std::pair<double, double>>& jumps() const noexcept { return jumps_; }

private:
    Family family_ = Family::Custom;
    std::string name_;
    double a_ = 0;
    double b_ = 0;
    std::vector<std::pair<double, double>> jumps_;
    std::function<Complex(double)> custom_;
};

/// V_n = (t/n) sum_{h=1}^n X(th/n) with X(0) = c.
struct IntegralSumSpec {
    double t = 1;
    std::uint64_t n = 1;
    double c = 0;

    void validate() const;
};

struct BrunacciAbel {
    double lhs;   // (t/n) sum X(th/n)
    double rhs;   // ct + (t/n) sum (n-h+1) (X(th/n) - X(t(h-1)/n))
};

BrunacciAbel brunacci_abel(std::span<const double> values, double c, double t);

// Log of the characteristic function of V_n at xi.
Complex integral_sum_logcf(const CharFn& phi, const IntegralSumSpec& spec, double xi);

struct QuadratureOptions {
    double tolerance = 1e-10;
    std::uint64_t max_subdivisions = std::uint64_t{1} << 20;
};

// exp{i c xi t + (1/xi) int_0^{xi t} Log phi(u) du}, and 1 at xi = 0.
Complex limit_cf(const CharFn& phi, double t, double c, double xi, const QuadratureOptions& options = {});

struct ConvergenceRow {
    std::uint64_t n;
    double max_error;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    bool decreasing = true;
    double final_error = 0;
};

ConvergenceReport convergence_of_sums(const CharFn& phi, double t, double c, std::span<const double> xi_grid,
                                      std::span<const std::uint64_t> n_schedule, const QuadratureOptions& options = {});

/// Draws increments X(s + dt) - X(s), whose law has characteristic function
/// phi^dt. Native families only.
class PathSampler {
public:
    explicit PathSampler(CharFn phi);

    double increment(double dt, std::mt19937_64& rng) const;
    const CharFn& phi() const noexcept { return phi_; }

private:
    CharFn phi_;
};

struct EmpiricalCfRow {
    double xi;
    Complex empirical;
    double se_re;
    double se_im;
};

struct MonteCarloReport {
    std::vector<EmpiricalCfRow> rows;
    std::uint64_t samples = 0;
    double mean = 0;
    double variance = 0;
    double variance_se = 0;
};

// Simulates V_n through its increment form.
MonteCarloReport monte_carlo_integral(const PathSampler& sampler, const IntegralSumSpec& spec,
                                      std::span<const double> xi_grid, std::uint64_t samples, std::uint64_t seed = 0);

/// A target law X: sampler and distribution function.
struct TargetLaw {
    std::function<double(std::mt19937_64&)> sample;
    std::function<double(double)> cdf;
};

TargetLaw standard_gaussian_target();

enum class ApproximantKind {
    Exact,                   // X_n = X
    ShrinkingPerturbation,   // X_n = X + eps_n U, U uniform on [-1, 1]
    IndependentCopy,         // X_n an independent copy of X
};

struct CipOptions {
    std::vector<std::uint64_t> schedule{1, 10, 100, 1000};
    std::function<double(std::uint64_t)> epsilon = [](std::uint64_t n) { return 1.0 / static_cast<double>(n); };
    std::uint64_t samples = 100'000;
    double delta = 0.01;
    double probability_tolerance = 0.01;
    double ks_tolerance = 0.01;
    std::uint64_t seed = 0;
};

struct CipRow {
    std::uint64_t n;
    double epsilon;
    double exceedance;   // empirical P(|X_n - X| > delta)
    double ks;           // sup |empirical DF of X_n - DF of X|
    double ks_coupled;   // sup |empirical DF of X_n - empirical DF of the X draws|
};

struct CipReport {
    std::vector<CipRow> rows;
    bool in_probability = false;
    bool in_distribution = false;
};

CipReport cip_implies_cid_harness(const TargetLaw& target, ApproximantKind kind, const CipOptions& options = {});

// One-sample Kolmogorov-Smirnov distance; sorts `sample`.
double ks_distance(std::vector<double>& sample, const std::function<double(double)>& cdf);
// Two-sample distance; sorts both.
double ks_distance(std::vector<double>& a, std::vector<double>& b);

} // namespace finadd
