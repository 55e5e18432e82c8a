// SPDX-License-Identifier: Apache-2.0
//
// photon-gbd: tables, figure data, verification reports, and Monte Carlo
// comparisons for photon-number statistics under beam splitting.
//
// Exit codes: 0 success, 1 verification or statistical failure, 2 usage
// error. Data goes to stdout, logs (including wall time) to stderr, so
// identical invocations produce byte-identical data streams.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "photon_gbd/dist.hpp"
#include "photon_gbd/sampling.hpp"
#include "photon_gbd/scenarios.hpp"
#include "photon_gbd/verify_suites.hpp"

namespace {

using photon_gbd::BeamState;
using photon_gbd::DegeneracyParam;
using photon_gbd::PhaseVolume;
using photon_gbd::PmfTable;
using photon_gbd::StatModel;
using ordered_json = nlohmann::ordered_json;

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::uint64_t parse_env_seed(const char* text) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(text, &end, 10);
    if (end == text || *end != '\0')
        throw std::domain_error("PHOTON_GBD_SEED must be an unsigned integer");
    return v;
}

// flag beats environment beats default 0
std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
    if (seed_opt != nullptr && seed_opt->count() > 0) return seed_flag;
    if (const char* env = std::getenv("PHOTON_GBD_SEED")) return parse_env_seed(env);
    return 0;
}

// Shared model flags: --model plus the per-kind parameters. For glauber the
// observation window --tau plays the volume role.
struct ModelFlags {
    std::string model;
    double volume = 0.0;
    double w = 0.0;
    double gamma = 0.0;
    double rate = 0.0;
    double tau = 0.0;
    CLI::Option* volume_opt = nullptr;
    CLI::Option* w_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
    CLI::Option* rate_opt = nullptr;
    CLI::Option* tau_opt = nullptr;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", model, "statistics family: poisson|be|glauber")
            ->required()
            ->check(CLI::IsMember({"poisson", "be", "glauber"}));
        volume_opt = cmd->add_option("--volume", volume,
                                     "beam phase-space cells (poisson/be)");
        w_opt = cmd->add_option(
            "--w", w, "mean photons per cell (be) / per unit volume (poisson)");
        gamma_opt = cmd->add_option("--gamma", gamma, "glauber bandwidth parameter");
        rate_opt = cmd->add_option("--photon-rate", rate, "glauber mean photon rate");
        tau_opt = cmd->add_option("--tau", tau, "glauber observation window");
    }

    std::pair<StatModel, PhaseVolume> build() const {
        if (model == "glauber") {
            if (gamma_opt->count() == 0 || rate_opt->count() == 0 || tau_opt->count() == 0)
                throw std::domain_error(
                    "glauber model needs --gamma, --photon-rate, and --tau");
            return {StatModel::glauber(gamma, rate), PhaseVolume(tau)};
        }
        if (volume_opt->count() == 0 || w_opt->count() == 0)
            throw std::domain_error(model + " model needs --volume and --w");
        if (model == "be")
            return {StatModel::bose_einstein(DegeneracyParam(w)), PhaseVolume(volume)};
        return {StatModel::poisson(w), PhaseVolume(volume)};
    }
};

int cmd_pmf(const ModelFlags& mf, long kmax, double tail, const std::string& format) {
    const auto [model, vol] = mf.build();
    std::vector<double> probs;
    double tail_bound = 0.0;
    if (kmax >= 0) {
        const auto lp = model.log_pmf_prefix(vol, kmax);
        probs.resize(lp.size());
        double s = 0.0;
        for (std::size_t k = 0; k < lp.size(); ++k) s += probs[k] = std::exp(lp[k]);
        tail_bound = std::max(0.0, 1.0 - s);
    } else {
        PmfTable table = model.pmf_table(vol, tail);
        probs.assign(table.probs().begin(), table.probs().end());
        tail_bound = table.tail_bound();
    }

    if (format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "pmf";
        j["model"] = model.describe();
        j["volume"] = vol.cells();
        j["tail_bound"] = tail_bound;
        ordered_json rows = ordered_json::array();
        for (std::size_t k = 0; k < probs.size(); ++k)
            rows.push_back({{"k", k}, {"p", probs[k]}});
        j["rows"] = std::move(rows);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::printf("# photon-gbd pmf\n# schema: 1\n# model: %s\n# volume: %s\n"
                "# tail_bound: %s\nk,p\n",
                model.describe().c_str(), g12(vol.cells()).c_str(),
                g12(tail_bound).c_str());
    for (std::size_t k = 0; k < probs.size(); ++k)
        std::printf("%zu,%s\n", k, g12(probs[k]).c_str());
    return 0;
}

int cmd_figures(const std::string& which, double smin, double smax, long points) {
    if (!(smin > 0.0 && smax > smin)) throw std::domain_error("need 0 < smin < smax");
    if (points < 2) throw std::domain_error("need at least 2 grid points");
    const auto grid_s = [&](long i) {
        return smin * std::pow(smax / smin, double(i) / double(points - 1));
    };

    if (which == "fig2") {
        std::printf("# photon-gbd figures fig2\n# schema: 1\n# alpha: 0.5\n"
                    "# grid: smin=%s smax=%s points=%ld\nS,W20,W11,W02\n",
                    g12(smin).c_str(), g12(smax).c_str(), points);
        for (long i = 0; i < points; ++i) {
            const double s = grid_s(i);
            const auto t = photon_gbd::two_photon_table(0.5, s);
            std::printf("%s,%s,%s,%s\n", g12(s).c_str(), g12(t.at(2)).c_str(),
                        g12(t.at(1)).c_str(), g12(t.at(0)).c_str());
        }
        return 0;
    }
    if (which == "fig3") {
        std::printf("# photon-gbd figures fig3\n# schema: 1\n# alpha: 0.55\n"
                    "# grid: smin=%s smax=%s points=%ld\nS,W30,W21,W12,W03\n",
                    g12(smin).c_str(), g12(smax).c_str(), points);
        for (long i = 0; i < points; ++i) {
            const double s = grid_s(i);
            const auto t = photon_gbd::three_photon_table(0.55, s);
            std::printf("%s,%s,%s,%s,%s\n", g12(s).c_str(), g12(t.at(3)).c_str(),
                        g12(t.at(2)).c_str(), g12(t.at(1)).c_str(), g12(t.at(0)).c_str());
        }
        return 0;
    }
    // fig4: fifty photons split in half, sweep of total cell count
    const double s_values[] = {1.0, 10.0, 100.0, 1e4};
    std::printf("# photon-gbd figures fig4\n# schema: 1\n# alpha: 0.5\n# n: 50\n"
                "# S: 1 10 100 10000\nk,S1,S10,S100,S10000\n");
    for (long k = 0; k <= 50; ++k) {
        std::printf("%ld", k);
        for (double s : s_values)
            std::printf(",%s", g12(photon_gbd::polya_pmf(k, 50, 0.5, s)).c_str());
        std::printf("\n");
    }
    return 0;
}

int cmd_verify(const std::string& suite, bool negative_control) {
    std::vector<photon_gbd::SuiteReport> reports;
    if (negative_control) {
        reports.push_back(photon_gbd::run_negative_control());
    } else if (suite == "all") {
        reports = photon_gbd::run_all_suites();
    } else if (suite == "convolution") {
        reports.push_back(photon_gbd::run_convolution_suite());
    } else if (suite == "vandermonde") {
        reports.push_back(photon_gbd::run_vandermonde_suite());
    } else if (suite == "gf") {
        reports.push_back(photon_gbd::run_gf_suite());
    } else {
        reports.push_back(photon_gbd::run_marginal_suite());
    }

    bool all_pass = true;
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "verify";
    j["suite"] = negative_control ? "negative-control" : suite;
    ordered_json out_suites = ordered_json::array();
    for (const auto& r : reports) {
        all_pass = all_pass && r.all_pass();
        ordered_json checks = ordered_json::array();
        for (const auto& c : r.checks)
            checks.push_back({{"name", c.name},
                              {"residual", c.residual},
                              {"tolerance", c.tolerance},
                              {"pass", c.pass}});
        out_suites.push_back({{"suite", r.suite},
                              {"all_pass", r.all_pass()},
                              {"worst_residual", r.worst_residual()},
                              {"checks", std::move(checks)}});
        std::fprintf(stderr, "photon-gbd: suite %s %s (worst residual %s)\n",
                     r.suite.c_str(), r.all_pass() ? "pass" : "FAIL",
                     g12(r.worst_residual()).c_str());
    }
    j["suites"] = std::move(out_suites);
    j["all_pass"] = all_pass;
    std::cout << j.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

ordered_json hist_json(const photon_gbd::EmpiricalHist& hist) {
    ordered_json h;
    h["draws"] = hist.draws();
    h["counts"] = std::vector<std::uint64_t>(hist.counts().begin(), hist.counts().end());
    return h;
}

ordered_json chi_square_json(const photon_gbd::EmpiricalHist& hist, const PmfTable& table) {
    try {
        const auto c = photon_gbd::chi_square_gof(hist, table);
        return {{"statistic", c.statistic},
                {"dof", c.dof},
                {"p_value", c.p_value},
                {"pooled_bins", c.pooled_bins}};
    } catch (const std::runtime_error&) {
        return nullptr;  // degenerate table: nothing to test
    }
}

PmfTable table_from_values(std::span<const double> values) {
    std::vector<double> probs(values.begin(), values.end());
    double s = 0.0;
    for (double p : probs) s += p;
    return PmfTable(std::move(probs), std::max(0.0, 1.0 - s) + 1e-13);
}

struct SampleFlags {
    bool polya = false;
    bool poisson = false;
    bool gbd = false;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
    long n = 0;
    double alpha = 0.0;
    double s_cells = 0.0;
    double mean = 0.0;
    std::string gbd_model = "be";
    double A = 0.0;
    double B = 0.0;
    double w = 0.0;
    std::uint64_t budget = 100'000'000;
};

int cmd_sample(const SampleFlags& f) {
    if (int(f.polya) + int(f.poisson) + int(f.gbd) != 1)
        throw std::domain_error("pick exactly one of --polya, --poisson, --gbd");
    if (f.draws < 1000) throw std::domain_error("--M must be at least 1000");
    const std::uint64_t seed = resolve_seed(f.seed_opt, f.seed);
    photon_gbd::RngStream rng(seed);

    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "sample";
    j["rng"] = {{"algorithm", std::string(photon_gbd::RngStream::algorithm())},
                {"seed", seed},
                {"stream", 0}};
    int rc = 0;

    if (f.polya) {
        j["mode"] = "polya";
        j["parameters"] = {{"n", f.n}, {"alpha", f.alpha}, {"S", f.s_cells}, {"M", f.draws}};
        std::vector<double> analytic(std::size_t(f.n) + 1);
        for (long k = 0; k <= f.n; ++k)
            analytic[std::size_t(k)] = photon_gbd::polya_pmf(k, f.n, f.alpha, f.s_cells);
        const PmfTable table = table_from_values(analytic);
        photon_gbd::EmpiricalHist hist;
        for (std::uint64_t i = 0; i < f.draws; ++i)
            hist.add(photon_gbd::sample_polya(f.n, f.alpha, f.s_cells, rng));
        j["histogram"] = hist_json(hist);
        j["analytic"] = analytic;
        j["tv"] = photon_gbd::tv_distance(hist, table);
        j["chi_square"] = chi_square_json(hist, table);
    } else if (f.poisson) {
        j["mode"] = "poisson";
        j["parameters"] = {{"mean", f.mean}, {"M", f.draws}};
        const PmfTable table =
            StatModel::poisson(f.mean).pmf_table(PhaseVolume(1.0), 1e-12);
        photon_gbd::EmpiricalHist hist;
        for (std::uint64_t i = 0; i < f.draws; ++i)
            hist.add(photon_gbd::sample_poisson(f.mean, rng));
        j["histogram"] = hist_json(hist);
        j["analytic"] = std::vector<double>(table.probs().begin(), table.probs().end());
        j["tv"] = photon_gbd::tv_distance(hist, table);
        j["chi_square"] = chi_square_json(hist, table);
    } else {
        j["mode"] = "gbd";
        if (f.gbd_model != "be" && f.gbd_model != "poisson")
            throw std::domain_error("--gbd supports --model be or poisson");
        const StatModel model = f.gbd_model == "be"
                                    ? StatModel::bose_einstein(DegeneracyParam(f.w))
                                    : StatModel::poisson(f.w);
        const PhaseVolume A(f.A);
        const PhaseVolume B(f.B);
        j["parameters"] = {{"model", model.describe()}, {"A", f.A}, {"B", f.B},
                           {"n", f.n},                  {"M", f.draws}};
        const auto result =
            photon_gbd::empirical_gbd(model, A, B, f.n, f.draws, rng, f.budget);
        const photon_gbd::GbdTable analytic = photon_gbd::gbd_table(f.n, model, A, B);
        const PmfTable table = table_from_values(analytic.values());
        std::vector<double> binom(std::size_t(f.n) + 1);
        const double p = f.A / (f.A + f.B);
        for (long k = 0; k <= f.n; ++k)
            binom[std::size_t(k)] = photon_gbd::binomial_pmf(k, f.n, p);
        j["accepted"] = result.accepted;
        j["attempted"] = result.attempted;
        j["budget_exhausted"] = result.budget_exhausted;
        j["histogram"] = hist_json(result.hist);
        j["analytic"] = std::vector<double>(analytic.values().begin(),
                                            analytic.values().end());
        if (result.accepted > 0) {
            j["tv"] = photon_gbd::tv_distance(result.hist, table);
            j["tv_binomial"] =
                photon_gbd::tv_distance(result.hist, table_from_values(binom));
            j["chi_square"] = chi_square_json(result.hist, table);
        } else {
            j["tv"] = nullptr;
            j["tv_binomial"] = nullptr;
            j["chi_square"] = nullptr;
        }
        if (result.budget_exhausted) {
            std::fprintf(stderr,
                         "photon-gbd: attempt budget exhausted (%llu accepted of %llu)\n",
                         (unsigned long long)result.accepted,
                         (unsigned long long)f.draws);
            rc = 1;
        }
    }
    std::cout << j.dump(2) << "\n";
    return rc;
}

int cmd_scenario(const ModelFlags& mf, const std::string& device, double alpha,
                 double cascade_alpha, bool has_cascade, long nmax) {
    const auto [model, vol] = mf.build();
    const auto kind = photon_gbd::device_kind_from_name(device);
    photon_gbd::SplitDevice dev(kind, alpha);
    if (has_cascade) dev = photon_gbd::cascade(dev, photon_gbd::SplitDevice(kind, cascade_alpha));
    const BeamState beam{model, vol};

    std::fprintf(stderr, "photon-gbd: device %s, transmittance %s (%s)\n",
                 std::string(photon_gbd::device_kind_name(dev.kind())).c_str(),
                 g12(dev.transmittance()).c_str(),
                 std::string(dev.loss_note()).c_str());

    const auto joint = photon_gbd::joint_output_distribution(beam, dev, nmax);
    const PmfTable marginal = photon_gbd::transmitted_marginal(beam, dev);

    // The data stream identifies the split by its fractions only: any of the
    // equivalent devices with this transmittance produces this exact file.
    std::printf("# photon-gbd scenario\n# schema: 1\n# model: %s\n# volume: %s\n"
                "# alpha: %s\n# nmax: %ld\n"
                "# equivalent devices: diaphragm beamsplitter detector neutral_filter\n"
                "section,k,m,value\n",
                model.describe().c_str(), g12(vol.cells()).c_str(),
                g12(dev.transmittance()).c_str(), nmax);
    for (long k = 0; k <= nmax; ++k)
        for (long m = 0; m <= nmax; ++m)
            std::printf("joint,%ld,%ld,%s\n", k, m, g12(joint.at(k, m)).c_str());
    for (std::size_t k = 0; k < marginal.size(); ++k)
        std::printf("marginal,%zu,,%s\n", k, g12(marginal[k]).c_str());
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"photon-number statistics under beam splitting"};
    app.require_subcommand(1);
    int rc = 0;

    // pmf
    auto* pmf = app.add_subcommand("pmf", "photon-number probability table");
    ModelFlags pmf_model;
    pmf_model.attach(pmf);
    long pmf_kmax = -1;
    double pmf_tail = 1e-12;
    std::string pmf_format = "csv";
    pmf->add_option("--kmax", pmf_kmax, "truncate the table at this count");
    pmf->add_option("--tail", pmf_tail, "tail-mass target when --kmax is absent");
    pmf->add_option("--format", pmf_format)->check(CLI::IsMember({"csv", "json"}));
    pmf->callback([&] { rc = cmd_pmf(pmf_model, pmf_kmax, pmf_tail, pmf_format); });

    // figures
    auto* fig = app.add_subcommand("figures", "data tables behind the standard plots");
    std::string fig_which;
    double fig_smin = 1e-2;
    double fig_smax = 1e2;
    long fig_points = 81;
    fig->add_option("which", fig_which, "fig2|fig3|fig4")
        ->required()
        ->check(CLI::IsMember({"fig2", "fig3", "fig4"}));
    fig->add_option("--smin", fig_smin, "smallest cell count on the sweep");
    fig->add_option("--smax", fig_smax, "largest cell count on the sweep");
    fig->add_option("--points", fig_points, "grid points on the log sweep");
    fig->callback([&] { rc = cmd_figures(fig_which, fig_smin, fig_smax, fig_points); });

    // verify
    auto* ver = app.add_subcommand("verify", "identity suites with JSON report");
    std::string ver_suite;
    bool ver_negative = false;
    ver->add_option("--suite", ver_suite,
                    "convolution|vandermonde|gf|marginal|all")
        ->required()
        ->check(CLI::IsMember({"convolution", "vandermonde", "gf", "marginal", "all"}));
    ver->add_flag("--negative-control", ver_negative)->group("");  // test hook
    ver->callback([&] { rc = cmd_verify(ver_suite, ver_negative); });

    // sample
    auto* smp = app.add_subcommand("sample", "Monte Carlo draws vs analytic tables");
    SampleFlags sf;
    smp->add_flag("--polya", sf.polya, "thermal split law sampler");
    smp->add_flag("--poisson", sf.poisson, "poisson counting sampler");
    smp->add_flag("--gbd", sf.gbd, "conditioned two-channel experiment");
    smp->add_option("--M", sf.draws, "draws (or accepted draws for --gbd)")->required();
    sf.seed_opt = smp->add_option("--seed", sf.seed, "rng seed (beats PHOTON_GBD_SEED)");
    smp->add_option("--n", sf.n, "total photon count");
    smp->add_option("--alpha", sf.alpha, "first-channel fraction");
    smp->add_option("--S", sf.s_cells, "total phase-space cells");
    smp->add_option("--mean", sf.mean, "poisson mean");
    smp->add_option("--model", sf.gbd_model, "counting family for --gbd: be|poisson");
    smp->add_option("--A", sf.A, "first sub-volume for --gbd");
    smp->add_option("--B", sf.B, "second sub-volume for --gbd");
    smp->add_option("--w", sf.w, "occupancy (be) or density (poisson) for --gbd");
    smp->add_option("--budget", sf.budget, "attempt budget for --gbd");
    smp->callback([&] { rc = cmd_sample(sf); });

    // scenario
    auto* scn = app.add_subcommand("scenario", "joint and marginal split tables");
    ModelFlags scn_model;
    scn_model.attach(scn);
    std::string scn_device;
    double scn_alpha = 0.0;
    double scn_cascade = 0.0;
    long scn_nmax = 16;
    scn->add_option("--device", scn_device,
                    "diaphragm|beamsplitter|detector|neutral_filter")
        ->required();
    auto* cascade_opt =
        scn->add_option("--cascade-alpha", scn_cascade, "second stage in series");
    scn->add_option("--alpha", scn_alpha, "transmitted fraction")->required();
    scn->add_option("--nmax", scn_nmax, "joint table extends to this count");
    scn->callback([&] {
        rc = cmd_scenario(scn_model, scn_device, scn_alpha, scn_cascade,
                          cascade_opt->count() > 0, scn_nmax);
    });

    const auto t0 = std::chrono::steady_clock::now();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // --help exits 0; bad usage exits 2
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::fprintf(stderr, "photon-gbd: completed in %lld ms\n", (long long)ms);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "photon-gbd: usage error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "photon-gbd: error: %s\n", e.what());
        return 1;
    }
}
