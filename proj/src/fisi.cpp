#include "finadd/fisi.hpp"

#include "finadd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace finadd {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

} // namespace

CharFn CharFn::gaussian(double mean, double variance) {
    require_finite(mean, "mean");
    if (!(variance >= 0) || !std::isfinite(variance)) throw DomainError("variance must be finite and nonnegative");
    CharFn f;
    f.family_ = Family::Gaussian;
    f.name_ = "gaussian";
    f.a_ = mean;
    f.b_ = variance;
    return f;
}

CharFn CharFn::poisson(double rate) {
    if (!(rate >= 0) || !std::isfinite(rate)) throw DomainError("rate must be finite and nonnegative");
    CharFn f;
    f.family_ = Family::Poisson;
    f.name_ = "poisson";
    f.a_ = rate;
    return f;
}

CharFn CharFn::degenerate(double value) {
    require_finite(value, "value");
    CharFn f;
    f.family_ = Family::Degenerate;
    f.name_ = "degenerate";
    f.a_ = value;
    return f;
}

CharFn CharFn::compound_poisson(double rate, std::vector<std::pair<double, double>> jumps) {
    if (!(rate >= 0) || !std::isfinite(rate)) throw DomainError("rate must be finite and nonnegative");
    if (jumps.empty()) throw DomainError("compound Poisson needs a jump law");
    double total = 0;
    for (const auto& [size, w] : jumps) {
        require_finite(size, "jump size");
        if (!(w >= 0)) throw DomainError("jump probabilities must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1) > 1e-12) throw DomainError("jump probabilities must sum to 1");
    CharFn f;
    f.family_ = Family::CompoundPoisson;
    f.name_ = "compound-poisson";
    f.a_ = rate;
    f.jumps_ = std::move(jumps);
    return f;
}

CharFn CharFn::custom(std::function<Complex(double)> phi, std::string name) {
    if (!phi) throw DomainError("custom characteristic function is empty");
    CharFn f;
    f.family_ = Family::Custom;
    f.name_ = std::move(name);
    f.custom_ = std::move(phi);
    return f;
}

Complex CharFn::operator()(double u) const {
    if (family_ == Family::Custom) return custom_(u);
    return std::exp(log(u));
}

Complex CharFn::log(double u) const {
    switch (family_) {
    case Family::Gaussian: return kI * a_ * u - b_ * u * u / 2.0;
    case Family::Poisson: return a_ * (std::exp(kI * u) - 1.0);
    case Family::Degenerate: return kI * a_ * u;
    case Family::CompoundPoisson: {
        Complex s = 0;
        for (const auto& [size, w] : jumps_) s += w * std::exp(kI * u * size);
        return a_ * (s - 1.0);
    }
    case Family::Custom: return tracked_log(u);
    }
    return 0;
}

Complex CharFn::tracked_log(double u) const {
    require_finite(u, "argument");
    if (u == 0) return 0;
    constexpr double kMaxTurn = std::numbers::pi / 4;   // well inside pi/2
    constexpr std::uint64_t kMaxSteps = 10'000'000;
    const double min_step = std::abs(u) * 1e-12;
    double x = 0, h = u / 64, arg = 0;
    Complex prev = (*this)(0.0);
    if (std::abs(prev - 1.0) > 1e-12) throw DomainError("characteristic function must equal 1 at 0");
    for (std::uint64_t steps = 0; x != u; ++steps) {
        if (steps > kMaxSteps) throw SingularityError("branch tracking did not finish", x);
        const double next = std::abs(u - x) <= std::abs(h) ? u : x + h;
        const Complex v = (*this)(next);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()) || std::abs(v) < 1e-300)
            throw SingularityError("characteristic function vanishes at u = " + std::to_string(next), next);
        const double turn = std::arg(v / prev);
        if (std::abs(turn) >= kMaxTurn) {
            h /= 2;
            if (std::abs(h) < min_step)
                throw SingularityError("characteristic function vanishes near u = " + std::to_string(next), next);
            continue;
        }
        arg += turn;
        prev = v;
        x = next;
        if (std::abs(turn) < kMaxTurn / 8) h *= 2;
    }
    return {std::log(std::abs(prev)), arg};
}

void IntegralSumSpec::validate() const {
    if (!(t > 0) || !std::isfinite(t)) throw DomainError("t must be positive");
    if (n == 0) throw DomainError("n starts at 1");
    require_finite(c, "c");
}

BrunacciAbel brunacci_abel(std::span<const double> values, double c, double t) {
    if (values.empty()) throw DomainError("need at least one path value");
    const double n = static_cast<double>(values.size());
    const double w = t / n;
    BrunacciAbel r{0, 0};
    double prev = c;
    for (std::size_t h = 1; h <= values.size(); ++h) {
        r.lhs += values[h - 1];
        r.rhs += (n - static_cast<double>(h) + 1) * (values[h - 1] - prev);
        prev = values[h - 1];
    }
    r.lhs *= w;
    r.rhs = c * t + w * r.rhs;
    return r;
}

Complex integral_sum_logcf(const CharFn& phi, const IntegralSumSpec& spec, double xi) {
    spec.validate();
    require_finite(xi, "xi");
    if (xi == 0) return 0;
    const double w = spec.t / static_cast<double>(spec.n);
    Complex s = 0;
    // h runs 1..n, so the weight n-h+1 runs n..1
    for (std::uint64_t j = 1; j <= spec.n; ++j) s += phi.log(static_cast<double>(j) * w * xi);
    return kI * spec.c * xi * spec.t + w * s;
}

namespace {

struct Segment {
    double a, b;
    Complex fa, fm, fb, whole;
    double tol;
    int depth;
};

Complex simpson(double a, double b, Complex fa, Complex fm, Complex fb) { return (b - a) / 6.0 * (fa + 4.0 * fm + fb); }

Complex adaptive_simpson(const std::function<Complex(double)>& f, double lo, double hi, const QuadratureOptions& opt) {
    constexpr int kInitialPieces = 16;
    constexpr int kMaxDepth = 60;
    std::vector<Segment> stack;
    for (int k = kInitialPieces - 1; k >= 0; --k) {
        double a = lo + (hi - lo) * k / kInitialPieces;
        double b = lo + (hi - lo) * (k + 1) / kInitialPieces;
        Complex fa = f(a), fm = f((a + b) / 2), fb = f(b);
        stack.push_back({a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), opt.tolerance / kInitialPieces, 0});
    }
    Complex total = 0;
    double achieved = 0;
    std::uint64_t subdivisions = 0;
    while (!stack.empty()) {
        Segment s = stack.back();
        stack.pop_back();
        const double m = (s.a + s.b) / 2;
        const Complex flm = f((s.a + m) / 2), frm = f((m + s.b) / 2);
        const Complex left = simpson(s.a, m, s.fa, flm, s.fm);
        const Complex right = simpson(m, s.b, s.fm, frm, s.fb);
        const Complex delta = left + right - s.whole;
        if (std::abs(delta) <= 15 * s.tol) {
            total += left + right + delta / 15.0;
            achieved += std::abs(delta) / 15;
            continue;
        }
        if (++subdivisions > opt.max_subdivisions || s.depth >= kMaxDepth) {
            throw QuadratureError("quadrature did not converge", achieved + std::abs(delta) / 15);
        }
        stack.push_back({m, s.b, s.fm, frm, s.fb, right, s.tol / 2, s.depth + 1});
        stack.push_back({s.a, m, s.fa, flm, s.fm, left, s.tol / 2, s.depth + 1});
    }
    return total;
}

} // namespace

Complex limit_cf(const CharFn& phi, double t, double c, double xi, const QuadratureOptions& options) {
    if (!(t > 0) || !std::isfinite(t)) throw DomainError("t must be positive");
    require_finite(c, "c");
    require_finite(xi, "xi");
    if (xi == 0) return 1;
    QuadratureOptions opt = options;
    // the integral is divided by xi afterwards
    opt.tolerance = options.tolerance * std::min(1.0, std::abs(xi));
    const Complex integral = adaptive_simpson([&phi](double u) { return phi.log(u); }, 0.0, xi * t, opt);
    return std::exp(kI * c * xi * t + integral / xi);
}

ConvergenceReport convergence_of_sums(const CharFn& phi, double t, double c, std::span<const double> xi_grid,
                                      std::span<const std::uint64_t> n_schedule, const QuadratureOptions& options) {
    if (xi_grid.empty() || n_schedule.empty()) throw DomainError("empty grid or schedule");
    if (!std::is_sorted(n_schedule.begin(), n_schedule.end())) throw DomainError("schedule must be increasing");
    std::vector<Complex> limits;
    for (double xi : xi_grid) limits.push_back(limit_cf(phi, t, c, xi, options));
    ConvergenceReport r;
    for (std::uint64_t n : n_schedule) {
        const IntegralSumSpec spec{t, n, c};
        double worst = 0;
        for (std::size_t g = 0; g < xi_grid.size(); ++g)
            worst = std::max(worst, std::abs(std::exp(integral_sum_logcf(phi, spec, xi_grid[g])) - limits[g]));
        if (!r.rows.empty() && worst > r.rows.back().max_error) r.decreasing = false;
        r.rows.push_back({n, worst});
    }
    r.final_error = r.rows.back().max_error;
    return r;
}

PathSampler::PathSampler(CharFn phi) : phi_(std::move(phi)) {
    if (phi_.family() == CharFn::Family::Custom) throw DomainError("no increment sampler for a custom characteristic function");
}

double PathSampler::increment(double dt, std::mt19937_64& rng) const {
    switch (phi_.family()) {
    case CharFn::Family::Gaussian: {
        std::normal_distribution<double> d(phi_.location() * dt, std::sqrt(phi_.scale() * dt));
        return d(rng);
    }
    case CharFn::Family::Poisson: {
        std::poisson_distribution<std::uint64_t> d(phi_.location() * dt);
        return static_cast<double>(d(rng));
    }
    case CharFn::Family::Degenerate: return phi_.location() * dt;
    case CharFn::Family::CompoundPoisson: {
        std::poisson_distribution<std::uint64_t> count(phi_.location() * dt);
        std::vector<double> w;
        for (const auto& j : phi_.jumps()) w.push_back(j.second);
        std::discrete_distribution<std::size_t> pick(w.begin(), w.end());
        double sum = 0;
        for (std::uint64_t k = count(rng); k > 0; --k) sum += phi_.jumps()[pick(rng)].first;
        return sum;
    }
    case CharFn::Family::Custom: break;
    }
    throw DomainError("no increment sampler for " + phi_.name());
}

MonteCarloReport monte_carlo_integral(const PathSampler& sampler, const IntegralSumSpec& spec,
                                      std::span<const double> xi_grid, std::uint64_t samples, std::uint64_t seed) {
    spec.validate();
    if (samples < 2) throw DomainError("need at least two samples");
    std::mt19937_64 rng(seed);
    const double dt = spec.t / static_cast<double>(spec.n);
    std::vector<double> v(samples);
    for (auto& value : v) {
        double x = spec.c, acc = 0;
        for (std::uint64_t h = 1; h <= spec.n; ++h) {
            x += sampler.increment(dt, rng);
            acc += x;
        }
        value = dt * acc;
    }

    MonteCarloReport r;
    r.samples = samples;
    const double s = static_cast<double>(samples);
    r.mean = std::accumulate(v.begin(), v.end(), 0.0) / s;
    double m2 = 0, m4 = 0;
    for (double x : v) {
        const double d2 = (x - r.mean) * (x - r.mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    r.variance = m2 / (s - 1);
    const double pop_var = m2 / s;
    r.variance_se = std::sqrt(std::max(0.0, m4 / s - pop_var * pop_var) / s);

    for (double xi : xi_grid) {
        double sc = 0, ss = 0, sc2 = 0, ss2 = 0;
        for (double x : v) {
            const double cs = std::cos(xi * x), sn = std::sin(xi * x);
            sc += cs;
            ss += sn;
            sc2 += cs * cs;
            ss2 += sn * sn;
        }
        const double mc = sc / s, ms = ss / s;
        r.rows.push_back({xi, {mc, ms}, std::sqrt(std::max(0.0, sc2 / s - mc * mc) / s),
                          std::sqrt(std::max(0.0, ss2 / s - ms * ms) / s)});
    }
    return r;
}

TargetLaw standard_gaussian_target() {
    return {[](std::mt19937_64& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); },
            [](double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }};
}

double ks_distance(std::vector<double>& sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw DomainError("empty sample");
    std::sort(sample.begin(), sample.end());
    const double s = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / s - f, f - static_cast<double>(i) / s});
    }
    return d;
}

double ks_distance(std::vector<double>& a, std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DomainError("empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

CipReport cip_implies_cid_harness(const TargetLaw& target, ApproximantKind kind, const CipOptions& options) {
    if (!target.sample) throw DomainError("target law needs a sampler");
    if (options.schedule.empty() || options.samples == 0) throw DomainError("empty schedule or sample size");
    std::mt19937_64 base_rng(options.seed);
    std::vector<double> x(options.samples);
    for (auto& v : x) v = target.sample(base_rng);

    CipReport r;
    for (std::size_t step = 0; step < options.schedule.size(); ++step) {
        const std::uint64_t n = options.schedule[step];
        CipRow row{n, options.epsilon(n), 0, 0, 0};
        std::mt19937_64 rng(options.seed + 1 + step);
        std::vector<double> xn(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            switch (kind) {
            case ApproximantKind::Exact: xn[i] = x[i]; break;
            case ApproximantKind::ShrinkingPerturbation:
                xn[i] = x[i] + row.epsilon * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
                break;
            case ApproximantKind::IndependentCopy: xn[i] = target.sample(rng); break;
            }
        }
        std::uint64_t exceed = 0;
        for (std::size_t i = 0; i < x.size(); ++i) exceed += std::abs(xn[i] - x[i]) > options.delta;
        row.exceedance = static_cast<double>(exceed) / static_cast<double>(x.size());
        std::vector<double> a = xn, b = x;
        row.ks_coupled = ks_distance(a, b);
        row.ks = target.cdf ? ks_distance(xn, target.cdf) : row.ks_coupled;
        r.rows.push_back(row);
    }
    r.in_probability = r.rows.back().exceedance <= options.probability_tolerance;
    r.in_distribution = r.rows.back().ks < options.ks_tolerance;
    return r;
}

} // namespace finadd
