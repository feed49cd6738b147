#include "finadd/cli.hpp"

#include "finadd/bernoulli.hpp"
#include "finadd/coherence.hpp"
#include "finadd/distribution.hpp"
#include "finadd/errors.hpp"
#include "finadd/fisi.hpp"
#include "finadd/json_io.hpp"
#include "finadd/limit_laws.hpp"
#include "finadd/svg.hpp"
#include "finadd/symbols.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

namespace finadd {

namespace {

struct Config {
    std::string format = "json";
    std::uint64_t seed = 0;
    std::optional<double> tol;

    // coherence
    std::string file;
    std::string event;

    // density
    std::string set;
    std::uint64_t horizon = 1'000'000;
    std::uint64_t cells = 8;

    // pdlim
    std::string family = "frechet";
    std::string df_file;
    std::uint64_t n_max = 1u << 12;

    // bernoulli / cantelli
    std::string law = "q";
    std::string p = "1/2";
    std::string cyl;
    std::string mixing = "beta:1:1";
    std::optional<std::uint64_t> component;
    std::uint64_t checkpoints = 0;
    std::uint64_t jump = 1;
    std::string prefix;
    std::uint64_t path_horizon = 10'000;
    std::string plot;
    std::string eps = "1/4";
    std::uint64_t n = 8;
    std::uint64_t m = 6;
    std::uint64_t cap = 64;
    std::uint64_t mc_samples = 0;
    std::optional<std::string> delta;
    std::uint64_t m_probe = 16;

    // symbols
    std::uint64_t alphabet = 10;
    std::string p_seq = "1/2,1/4,1/4";
    std::uint64_t big_m = 2;
    std::uint64_t slln_horizon = 100'000;

    // fisi
    std::string phi = "gaussian";
    double t = 1, c = 0;
    double mean = 0, variance = 1, rate = 1, value = 0;
    std::string xi_grid = "-4:4:0.25";
    std::uint64_t fisi_n = 256;
    std::string schedule = "4,16,64,256";
    std::string kind = "shrinking";
    std::uint64_t samples = 100'000;
    double cip_delta = 0.01;
};

class Printer {
public:
    Printer(std::ostream& out, std::string format) : out_(out), format_(std::move(format)) {}

    bool tsv() const { return format_ == "tsv"; }
    void json(const Json& doc) { out_ << doc.dump() << '\n'; }
    std::ostream& raw() { return out_; }

private:
    std::ostream& out_;
    std::string format_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        if (!cur.empty()) parts.push_back(cur);
    return parts;
}

std::uint64_t parse_index(const std::string& s) {
    try {
        std::size_t used = 0;
        unsigned long long v = std::stoull(s, &used);
        if (used != s.size() || s.front() == '-') throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("expected a nonnegative integer, got '" + s + "'");
    }
}

double parse_real(const std::string& s) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw DomainError("expected a number, got '" + s + "'");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0 ? 0.0 : v);
    return buf;
}

// ---- coherence ------------------------------------------------------------

int coherence_check(const Config& cfg, Printer& out) {
    Assessment a = assessment_from_json(read_json_file(cfg.file));
    CoherenceVerdict v = check_coherence(a);
    Json doc = verdict_to_json(a, v);
    Json pi = Json::array();
    for (const auto& viol : verify_pi_laws(a)) pi.push_back({{"law", to_string(viol.law)}, {"detail", viol.detail}});
    doc["pi_law_violations"] = std::move(pi);
    out.json(doc);
    return v.coherent() ? kExitOk : kExitIncoherent;
}

int coherence_extend(const Config& cfg, Printer& out) {
    Assessment a = assessment_from_json(read_json_file(cfg.file));
    Json members = Json::array();
    for (const auto& part : split(cfg.event, ',')) {
        if (a.space().find_label(part))
            members.push_back(part);
        else
            members.push_back(parse_index(part));
    }
    Event e = event_from_json(a.space(), members);
    try {
        ExtensionInterval iv = extension_bounds(a, e);
        out.json({{"event", event_to_json(e)},
                  {"interval", to_string(iv.lower) + "," + to_string(iv.upper)},
                  {"lower", rat_json(iv.lower)},
                  {"upper", rat_json(iv.upper)}});
        return kExitOk;
    } catch (const IncoherentAssessmentError& ex) {
        CoherenceVerdict v{CoherenceStatus::Incoherent, {}, ex.dutch_book()};
        out.json(verdict_to_json(a, v));
        return kExitIncoherent;
    }
}

// ---- density --------------------------------------------------------------

int density_eval(const Config& cfg, Printer& out) {
    Json desc;
    try {
        desc = Json::parse(cfg.set);
    } catch (const Json::parse_error& e) {
        throw DomainError(std::string("set descriptor is not valid JSON: ") + e.what());
    }
    DensityValue d = natural_density(counting_set_from_json(desc), DensityOptions{cfg.horizon});
    out.json(density_to_json(d));
    return d.determined() ? kExitOk : kExitUndetermined;
}

int density_partition(const Config& cfg, Printer& out) {
    IntervalPartitionReport r = interval_partition_check(cfg.cells);
    Json cells = Json::array();
    for (const auto& c : r.cells) {
        Json pts = Json::array();
        for (auto k : c.enumeration_points) pts.push_back(k);
        cells.push_back({{"cell", {rat_json(c.lower), rat_json(c.upper)}}, {"points", std::move(pts)},
                         {"gamma", rat_json(c.gamma_value)}});
    }
    out.json({{"cells", std::move(cells)},
              {"finite_union", rat_json(r.finite_union_value)},
              {"total", rat_json(r.total_value)},
              {"not_countably_additive", r.drawback_realized}});
    return kExitOk;
}

// ---- pdlim ----------------------------------------------------------------

int pdlim(const Config& cfg, Printer& out) {
    DfFamily family;
    PiecewiseLevels witness;
    if (cfg.family == "frechet") {
        family = frechet_member;
        witness = {Rat(1, 2), {}, Rat(1, 2)};
    } else if (cfg.family == "escape") {
        family = escaping_step_member;
        witness = {Rat(0), {}, Rat(0)};
    } else if (cfg.family == "fixed") {
        if (cfg.df_file.empty()) throw DomainError("--family fixed needs --df <file>");
        PiecewiseLevels lv = levels_from_json(read_json_file(cfg.df_file));
        if (auto why = StepDF::defect(lv)) {
            out.json({{"classification", to_string(DfClass::NotADistribution)}, {"reason", *why}});
            return kExitOk;
        }
        StepDF f(lv);
        family = [f](std::uint64_t) { return f; };
        witness = f.levels();
    } else {
        throw DomainError("unknown family '" + cfg.family + "' (frechet|escape|fixed)");
    }
    WeakLimitOptions opt;
    opt.n_max = cfg.n_max;
    WeakLimitReport r = weak_limit_classify(family, witness, opt);
    out.json({{"family", cfg.family},
              {"limit", levels_to_json(r.limit)},
              {"classification", to_string(r.classification)},
              {"adherent_mass", {rat_json(r.mass_minus_inf), rat_json(r.mass_plus_inf)}},
              {"reason", r.reason}});
    return kExitOk;
}

// ---- bernoulli ------------------------------------------------------------

MixingLaw parse_mixing(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.empty()) throw DomainError("empty mixing law");
    if (parts[0] == "point" && parts.size() == 2) return PointMass{parse_rat(parts[1])};
    if (parts[0] == "beta" && parts.size() == 3) return BetaMixing{parse_rat(parts[1]), parse_rat(parts[2])};
    if (parts[0] == "quantiles" && parts.size() == 2) {
        std::vector<Rat> q;
        for (const auto& s : split(parts[1], ',')) q.push_back(parse_rat(s));
        return mixing_from_quantiles(std::move(q));
    }
    throw DomainError("mixing law must be point:θ, beta:a:b or quantiles:q1,q2,...");
}

TailLaw parse_law(const Config& cfg) {
    Rat p = parse_rat(cfg.p);
    if (cfg.law == "q") return TailLaw::zeros(p);
    if (cfg.law == "qstar") return TailLaw::factorial_blocks(p);
    if (cfg.law == "qstarstar") return TailLaw::exchangeable(p, parse_mixing(cfg.mixing));
    throw DomainError("unknown law '" + cfg.law + "' (q|qstar|qstarstar)");
}

std::vector<bool> parse_bits(const std::string& s) {
    std::vector<bool> bits;
    for (const auto& part : split(s, ',')) {
        if (part != "0" && part != "1") throw DomainError("bits must be 0 or 1, got '" + part + "'");
        bits.push_back(part == "1");
    }
    return bits;
}

int bernoulli_cylinder(const Config& cfg, Printer& out) {
    TailLaw law = parse_law(cfg);
    Cylinder cyl = Cylinder::prefix(parse_bits(cfg.cyl));
    Json doc{{"law", cfg.law},
             {"p", rat_json(law.p)},
             {"cylinder", cfg.cyl},
             {"mixture", rat_json(mixture_prob(law, cyl))},
             {"product", rat_json(bernoulli_product(law.p, cyl))}};
    if (cfg.component) doc["component"] = {{"n", *cfg.component}, {"value", rat_json(component_prob(law, *cfg.component, cyl))}};
    out.json(doc);
    return kExitOk;
}

int bernoulli_path(const Config& cfg, Printer& out) {
    TailLaw law = parse_law(cfg);
    std::vector<bool> prefix = parse_bits(cfg.prefix);
    if (cfg.checkpoints > 0) {
        if (law.variant != TailVariant::FactorialBlocks) throw DomainError("--checkpoints applies to --law qstar");
        if (prefix.size() != cfg.jump - 1) throw DomainError("--prefix must have n-1 bits");
        auto ones = static_cast<std::uint64_t>(std::count(prefix.begin(), prefix.end(), true));
        for (const auto& cp : oscillation_checkpoints(cfg.jump, cfg.checkpoints, ones)) {
            out.json({{"nu", cp.nu},
                      {"N", cp.low_index.str()},
                      {"M", cp.high_index.str()},
                      {"f_N", rat_json(cp.low_frequency)},
                      {"f_M", rat_json(cp.high_frequency)},
                      {"f_N_approx", to_double(cp.low_frequency)},
                      {"f_M_approx", to_double(cp.high_frequency)}});
        }
        return kExitOk;
    }
    FrequencyPath path = tail_frequency_path(law, prefix, cfg.jump, cfg.path_horizon, cfg.seed);
    std::vector<std::uint64_t> ks;
    for (std::uint64_t k = 1; k < path.horizon(); k *= 2) ks.push_back(k);
    ks.push_back(path.horizon());
    for (auto k : ks) out.json({{"k", k}, {"f", rat_json(path.at(k))}, {"f_approx", path.approx(k)}});
    if (!cfg.plot.empty()) {
        PlotSeries s{cfg.law + " frequency", {}};
        const std::uint64_t stride = std::max<std::uint64_t>(1, path.horizon() / 2000);
        for (std::uint64_t k = 1; k <= path.horizon(); k += stride) s.points.push_back({double(k), path.approx(k)});
        write_svg(cfg.plot, {s}, {"running frequency f_k", "k", "f_k", true});
    }
    return kExitOk;
}

int cantelli(const Config& cfg, Printer& out) {
    Rat p = parse_rat(cfg.p), eps = parse_rat(cfg.eps);
    CantelliOptions opt{cfg.cap};
    if (cfg.delta) {
        Rat delta = parse_rat(*cfg.delta);
        auto n0 = find_n0(p, eps, delta, cfg.m_probe, opt);
        Json doc{{"p", rat_json(p)}, {"eps", rat_json(eps)}, {"delta", rat_json(delta)}, {"m_probe", cfg.m_probe}};
        if (n0)
            doc["n0"] = *n0;
        else
            doc["n0"] = nullptr, doc["note"] = "not found within cap";
        out.json(doc);
        return kExitOk;
    }
    if (cfg.n + cfg.m > cfg.cap && cfg.mc_samples > 0) {
        MonteCarloEstimate e = cantelli_monte_carlo(p, eps, cfg.n, cfg.m, cfg.mc_samples, cfg.seed);
        out.json({{"p", rat_json(p)}, {"eps", rat_json(eps)}, {"n", cfg.n}, {"m", cfg.m},
                  {"estimate", e.value}, {"stderr", e.standard_error}, {"samples", e.samples}});
        return kExitOk;
    }
    Rat v = cantelli_probability(p, eps, cfg.n, cfg.m, opt);
    out.json({{"p", rat_json(p)}, {"eps", rat_json(eps)}, {"n", cfg.n}, {"m", cfg.m},
              {"probability", rat_json(v)}, {"approx", to_double(v)}});
    return kExitOk;
}

// ---- symbols --------------------------------------------------------------

int symbols_distinct(const Config& cfg, Printer& out) {
    out.json({{"N", cfg.alphabet}, {"n", cfg.n}, {"probability", rat_json(distinctness_prob(cfg.alphabet, cfg.n))},
              {"gamma_limit", rat_json(distinctness_limit(cfg.n))}});
    return kExitOk;
}

int symbols_dilution(const Config& cfg, Printer& out) {
    std::vector<Rat> p_seq;
    for (const auto& s : split(cfg.p_seq, ',')) p_seq.push_back(parse_rat(s));
    DilutionReport r = frequency_dilution_check(p_seq, cfg.big_m, cfg.n);
    Json grid = Json::array();
    for (const auto& row : r.grid)
        grid.push_back({{"N", row.alphabet}, {"inner", rat_json(row.inner)}, {"distinct", rat_json(row.distinct)}});
    out.json({{"k_bar", r.k_bar},
              {"p_bar", rat_json(r.p_bar)},
              {"threshold", rat_json(r.threshold)},
              {"frequency_bound", rat_json(r.frequency_bound)},
              {"grid", std::move(grid)},
              {"mixture_probability", rat_json(r.mixture_probability)}});
    return kExitOk;
}

int symbols_slln(const Config& cfg, Printer& out) {
    SllnReport r = slln_simulation(cfg.alphabet, cfg.slln_horizon, cfg.seed);
    out.json({{"N", r.alphabet},
              {"horizon", r.horizon},
              {"max_deviation", r.max_deviation},
              {"band", r.band},
              {"within_band", r.within_band},
              {"max_frequency_beyond_N", rat_json(r.max_frequency_beyond)},
              {"frequency_sum", rat_json(r.frequency_sum)}});
    return kExitOk;
}

// ---- fisi -----------------------------------------------------------------

CharFn parse_phi(const Config& cfg) {
    if (cfg.phi == "gaussian") return CharFn::gaussian(cfg.mean, cfg.variance);
    if (cfg.phi == "poisson") return CharFn::poisson(cfg.rate);
    if (cfg.phi == "degenerate") return CharFn::degenerate(cfg.value);
    throw DomainError("unknown --phi '" + cfg.phi + "' (gaussian|poisson|degenerate)");
}

std::vector<double> parse_grid(const std::string& spec) {
    auto parts = split(spec, ':');
    if (parts.size() != 3) throw DomainError("grid must be lo:hi:step");
    double lo = parse_real(parts[0]), hi = parse_real(parts[1]), step = parse_real(parts[2]);
    if (!(step > 0) || hi < lo) throw DomainError("grid needs lo <= hi and step > 0");
    std::vector<double> g;
    const auto count = static_cast<std::uint64_t>(std::floor((hi - lo) / step + 1e-9));
    for (std::uint64_t i = 0; i <= count; ++i) g.push_back(lo + static_cast<double>(i) * step);
    return g;
}

QuadratureOptions quadrature(const Config& cfg) {
    QuadratureOptions q;
    if (cfg.tol) q.tolerance = *cfg.tol;
    return q;
}

int fisi_cf(const Config& cfg, Printer& out) {
    CharFn phi = parse_phi(cfg);
    std::vector<double> grid = parse_grid(cfg.xi_grid);
    IntegralSumSpec spec{cfg.t, cfg.fisi_n, cfg.c};
    std::optional<MonteCarloReport> mc;
    if (cfg.mc_samples > 0) mc = monte_carlo_integral(PathSampler(phi), spec, grid, cfg.mc_samples, cfg.seed);
    if (out.tsv()) out.raw() << "xi\tanalytic_re\tanalytic_im\tsum_re\tsum_im\tempirical_re\tempirical_im\tstderr_re\tstderr_im\n";
    PlotSeries analytic{"limit Re", {}}, sum{"sum formula Re", {}}, empirical{"empirical Re", {}};
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const double xi = grid[g];
        const Complex lim = limit_cf(phi, cfg.t, cfg.c, xi, quadrature(cfg));
        const Complex s = std::exp(integral_sum_logcf(phi, spec, xi));
        analytic.points.push_back({xi, lim.real()});
        sum.points.push_back({xi, s.real()});
        if (mc) empirical.points.push_back({xi, mc->rows[g].empirical.real()});
        if (out.tsv()) {
            out.raw() << fmt(xi) << '\t' << fmt(lim.real()) << '\t' << fmt(lim.imag()) << '\t' << fmt(s.real()) << '\t'
                      << fmt(s.imag());
            if (mc)
                out.raw() << '\t' << fmt(mc->rows[g].empirical.real()) << '\t' << fmt(mc->rows[g].empirical.imag())
                          << '\t' << fmt(mc->rows[g].se_re) << '\t' << fmt(mc->rows[g].se_im);
            else
                out.raw() << "\t\t\t\t";
            out.raw() << '\n';
        } else {
            Json row{{"xi", xi}, {"limit", {lim.real(), lim.imag()}}, {"sum", {s.real(), s.imag()}}};
            if (mc)
                row["empirical"] = {mc->rows[g].empirical.real(), mc->rows[g].empirical.imag()},
                row["stderr"] = {mc->rows[g].se_re, mc->rows[g].se_im};
            out.json(row);
        }
    }
    if (mc && !out.tsv())
        out.json({{"samples", mc->samples}, {"mean", mc->mean}, {"variance", mc->variance}, {"variance_stderr", mc->variance_se}});
    if (!cfg.plot.empty()) {
        std::vector<PlotSeries> series{analytic, sum};
        if (mc) series.push_back(empirical);
        write_svg(cfg.plot, series, {"characteristic function of the integral (real part)", "xi", "Re", false});
    }
    return kExitOk;
}

int fisi_convergence(const Config& cfg, Printer& out) {
    CharFn phi = parse_phi(cfg);
    std::vector<double> grid = parse_grid(cfg.xi_grid);
    std::vector<std::uint64_t> schedule;
    for (const auto& s : split(cfg.schedule, ',')) schedule.push_back(parse_index(s));
    ConvergenceReport r = convergence_of_sums(phi, cfg.t, cfg.c, grid, schedule, quadrature(cfg));
    if (out.tsv()) out.raw() << "n\tmax_error\n";
    for (const auto& row : r.rows) {
        if (out.tsv())
            out.raw() << row.n << '\t' << fmt(row.max_error) << '\n';
        else
            out.json({{"n", row.n}, {"max_error", row.max_error}});
    }
    if (!out.tsv()) out.json({{"decreasing", r.decreasing}, {"final_error", r.final_error}});
    return kExitOk;
}

int fisi_cip(const Config& cfg, Printer& out) {
    ApproximantKind kind;
    if (cfg.kind == "shrinking")
        kind = ApproximantKind::ShrinkingPerturbation;
    else if (cfg.kind == "exact")
        kind = ApproximantKind::Exact;
    else if (cfg.kind == "copy")
        kind = ApproximantKind::IndependentCopy;
    else
        throw DomainError("unknown --kind '" + cfg.kind + "' (shrinking|exact|copy)");
    CipOptions opt;
    opt.samples = cfg.samples;
    opt.delta = cfg.cip_delta;
    opt.seed = cfg.seed;
    if (!cfg.schedule.empty() && cfg.schedule != "4,16,64,256") {
        opt.schedule.clear();
        for (const auto& s : split(cfg.schedule, ',')) opt.schedule.push_back(parse_index(s));
    }
    CipReport r = cip_implies_cid_harness(standard_gaussian_target(), kind, opt);
    if (out.tsv()) out.raw() << "n\tepsilon\texceedance\tks\tks_coupled\n";
    for (const auto& row : r.rows) {
        if (out.tsv())
            out.raw() << row.n << '\t' << fmt(row.epsilon) << '\t' << fmt(row.exceedance) << '\t' << fmt(row.ks) << '\t'
                      << fmt(row.ks_coupled) << '\n';
        else
            out.json({{"n", row.n}, {"epsilon", row.epsilon}, {"exceedance", row.exceedance}, {"ks", row.ks},
                      {"ks_coupled", row.ks_coupled}});
    }
    if (!out.tsv()) out.json({{"in_probability", r.in_probability}, {"in_distribution", r.in_distribution}});
    return kExitOk;
}

// CLI11 reads "-4:4:0.25" as an option name; glue such values onto the
// preceding option as "--opt=value".
std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        const bool takes_value = a.rfind("--", 0) == 0 && a.find('=') == std::string::npos;
        if (takes_value && i + 1 < args.size()) {
            const std::string& v = args[i + 1];
            if (v.size() > 1 && v[0] == '-' && (std::isdigit(static_cast<unsigned char>(v[1])) || v[1] == '.')) {
                out.push_back(a + "=" + v);
                ++i;
                continue;
            }
        }
        out.push_back(a);
    }
    return out;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Finitely additive probability workbench", "finadd"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
    app.add_option("--seed", cfg.seed, "Seed for every simulation");
    app.add_option("--tol", cfg.tol, "Quadrature tolerance (fisi)");

    std::function<int(const Config&, Printer&)> action;
    auto bind = [&action](CLI::App* sub, int (*fn)(const Config&, Printer&)) {
        sub->callback([&action, fn] { action = fn; });
    };

    auto* coh = app.add_subcommand("coherence", "Coherence of finite assessments")->require_subcommand(1);
    auto* check = coh->add_subcommand("check", "Coherence verdict with certificate");
    check->add_option("file", cfg.file, "Assessment JSON")->required();
    bind(check, coherence_check);
    auto* extend = coh->add_subcommand("extend", "Coherent price interval for a new event");
    extend->add_option("file", cfg.file, "Assessment JSON")->required();
    extend->add_option("--event", cfg.event, "Comma-separated atoms")->required();
    bind(extend, coherence_extend);

    auto* dens = app.add_subcommand("density", "Natural density laws")->require_subcommand(1);
    auto* eval = dens->add_subcommand("eval", "Density of a counting set");
    eval->add_option("--set", cfg.set, "Set descriptor JSON")->required();
    eval->add_option("--horizon", cfg.horizon, "Scan horizon without a closed form");
    bind(eval, density_eval);
    auto* part = dens->add_subcommand("partition", "Interval-partition check on (0,1]");
    part->add_option("--cells", cfg.cells, "Number of cells");
    bind(part, density_partition);

    auto* pd = app.add_subcommand("pdlim", "Weak limits of distribution functions");
    pd->add_option("--family", cfg.family, "frechet|escape|fixed");
    pd->add_option("--df", cfg.df_file, "Distribution function JSON for --family fixed");
    pd->add_option("--n-max", cfg.n_max, "Largest family index checked");
    bind(pd, pdlim);

    auto* bern = app.add_subcommand("bernoulli", "Frequency counterexamples")->require_subcommand(1);
    auto* cyl = bern->add_subcommand("cylinder", "Cylinder probability under a tail law");
    auto add_law = [&cfg](CLI::App* s) {
        s->add_option("--law", cfg.law, "q|qstar|qstarstar");
        s->add_option("--p", cfg.p, "Success probability");
        s->add_option("--mixing", cfg.mixing, "point:θ | beta:a:b | quantiles:q1,q2,...");
    };
    add_law(cyl);
    cyl->add_option("--cyl", cfg.cyl, "Leading bits, e.g. 1,0,1")->required();
    cyl->add_option("--component", cfg.component, "Also evaluate component n");
    bind(cyl, bernoulli_cylinder);
    auto* path = bern->add_subcommand("path", "Running frequencies of a support sequence");
    add_law(path);
    path->add_option("--checkpoints", cfg.checkpoints, "Factorial checkpoints (qstar)");
    path->add_option("--n", cfg.jump, "Jump position");
    path->add_option("--prefix", cfg.prefix, "Bits before the jump");
    path->add_option("--horizon", cfg.path_horizon, "Path length");
    path->add_option("--plot", cfg.plot, "SVG output file");
    bind(path, bernoulli_path);

    auto* cant = app.add_subcommand("cantelli", "Uniform frequency band probability");
    cant->add_option("--p", cfg.p, "Success probability");
    cant->add_option("--eps", cfg.eps, "Band half-width");
    cant->add_option("--n", cfg.n, "First index");
    cant->add_option("--m", cfg.m, "Window length");
    cant->add_option("--cap", cfg.cap, "Largest n+m computed exactly");
    cant->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo fallback beyond the cap");
    cant->add_option("--delta", cfg.delta, "Search n0 for this delta");
    cant->add_option("--m-probe", cfg.m_probe, "Window probed by the n0 search");
    bind(cant, cantelli);

    auto* sym = app.add_subcommand("symbols", "Uniform symbol process")->require_subcommand(1);
    auto* distinct = sym->add_subcommand("distinct", "P{n draws pairwise distinct}");
    distinct->add_option("--N", cfg.alphabet, "Alphabet size");
    distinct->add_option("--n", cfg.n, "Draws");
    bind(distinct, symbols_distinct);
    auto* dil = sym->add_subcommand("dilution", "Frequency dilution check");
    dil->add_option("--p", cfg.p_seq, "Probabilities p_1,p_2,...");
    dil->add_option("--M", cfg.big_m, "M");
    dil->add_option("--n", cfg.n, "Draws");
    bind(dil, symbols_dilution);
    auto* slln = sym->add_subcommand("slln", "Frequencies under one component");
    slln->add_option("--N", cfg.alphabet, "Alphabet size");
    slln->add_option("--horizon", cfg.slln_horizon, "Draws");
    bind(slln, symbols_slln);

    auto* fisi = app.add_subcommand("fisi", "Integrals of independent-increment processes")->require_subcommand(1);
    auto add_phi = [&cfg](CLI::App* s) {
        s->add_option("--phi", cfg.phi, "gaussian|poisson|degenerate");
        s->add_option("--mean", cfg.mean, "Gaussian mean");
        s->add_option("--variance", cfg.variance, "Gaussian variance");
        s->add_option("--rate", cfg.rate, "Poisson rate");
        s->add_option("--value", cfg.value, "Degenerate value");
        s->add_option("--t", cfg.t, "Time horizon");
        s->add_option("--c", cfg.c, "Initial value");
        s->add_option("--xi-grid", cfg.xi_grid, "lo:hi:step");
    };
    auto* cf = fisi->add_subcommand("cf", "Characteristic function table");
    add_phi(cf);
    cf->add_option("--n", cfg.fisi_n, "Partition size");
    cf->add_option("--mc-samples", cfg.mc_samples, "Monte Carlo paths");
    cf->add_option("--plot", cfg.plot, "SVG output file");
    bind(cf, fisi_cf);
    auto* conv = fisi->add_subcommand("convergence", "Sum formula against the limit");
    add_phi(conv);
    conv->add_option("--schedule", cfg.schedule, "Partition sizes");
    bind(conv, fisi_convergence);
    auto* cip = fisi->add_subcommand("cip", "Convergence in probability and in distribution");
    cip->add_option("--kind", cfg.kind, "shrinking|exact|copy");
    cip->add_option("--samples", cfg.samples, "Sample size");
    cip->add_option("--delta", cfg.cip_delta, "Exceedance threshold");
    cip->add_option("--schedule", cfg.schedule, "Values of n");
    bind(cip, fisi_cip);

    std::vector<std::string> reversed = glue_negative_values(args);
    std::reverse(reversed.begin(), reversed.end());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Printer printer(out, cfg.format);
    try {
        return action(cfg, printer);
    } catch (const UndeterminedError& e) {
        err << "undetermined: " << e.what() << '\n';
        return kExitUndetermined;
    } catch (const IncoherentAssessmentError& e) {
        err << "incoherent: " << e.what() << '\n';
        return kExitIncoherent;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

} // namespace finadd
