#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "hypdla/errors.hpp"
#include "hypdla/growth.hpp"
#include "hypdla/observables.hpp"
#include "hypdla/render.hpp"
#include "hypdla/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // invariant or suite failure
constexpr int kExitUsage = 2;

struct GrowArgs {
    long particles = 1000;
    std::uint64_t seed = 1;
    std::string mode = "discrete";
    std::string out;
    double eps = 1e-2;
    double hit_shell = 1e-3;
    double floor_shell = 1e-4;
    double far_cutoff = 15.0;
    long max_steps = 1'000'000;
    long cap_probes = 2000;
    int threads = 1;
    bool quiet = false;
};

struct StatsArgs {
    std::string in;
    std::string out;
    std::vector<double> density_radii;
    std::string density_out;
};

struct RenderArgs {
    std::string in;
    std::string out;
    std::string chart = "disc";
    int width = 1024;
    std::string highlight = "none";
    int radius_shown = 1;
};

struct VerifyArgs {
    std::string suite;
    int runs = 0;
    std::uint64_t seed = 20260808;
    int threads = 1;
    std::string out;
};

struct SpiralArgs {
    double turns = 1.0;
    double coeff = 0.5;
    std::string out;
};

std::string growth_echo(const hypdla::GrowthConfig& cfg) {
    std::ostringstream os;
    os << "hypdla grow particles=" << cfg.n_particles << " seed=" << cfg.seed
       << " mode=" << (cfg.mode == hypdla::GrowthMode::discrete ? "discrete" : "continuous")
       << " eps_offset=" << cfg.probe.eps_offset << " hit_shell=" << cfg.probe.hit_shell
       << " floor_shell=" << cfg.probe.floor_shell << " far_cutoff=" << cfg.probe.far_cutoff
       << " max_steps=" << cfg.probe.max_steps << " capacity_probes=" << cfg.capacity_probes;
    return os.str();
}

std::string record_echo(const hypdla::RunRecord& rec) {
    std::ostringstream os;
    os << "source seed=" << rec.meta.seed << " n=" << rec.rows.size() << " mode="
       << (rec.meta.fixture              ? "fixture"
           : rec.meta.mode == hypdla::GrowthMode::discrete ? "discrete"
                                                           : "continuous")
       << " eps_offset=" << rec.meta.probe.eps_offset;
    return os.str();
}

hypdla::RunRecord load_record_or_exit(const std::string& path) {
    if (!std::filesystem::exists(path)) {
        std::cerr << "input file '" << path << "' does not exist\n";
        std::exit(kExitUsage);
    }
    return hypdla::RunRecord::load(path);
}

int cmd_grow(const GrowArgs& args) {
    hypdla::GrowthConfig cfg;
    cfg.n_particles = args.particles;
    cfg.seed = args.seed;
    cfg.mode = args.mode == "continuous" ? hypdla::GrowthMode::continuous
                                         : hypdla::GrowthMode::discrete;
    cfg.probe.eps_offset = args.eps;
    cfg.probe.hit_shell = args.hit_shell;
    cfg.probe.floor_shell = args.floor_shell;
    cfg.probe.far_cutoff = args.far_cutoff;
    cfg.probe.max_steps = args.max_steps;
    cfg.capacity_probes = args.cap_probes;
    cfg.threads = args.threads;
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    }
    const hypdla::RunRecord rec = hypdla::run(cfg);
    rec.save(args.out);
    if (!args.quiet)
        std::cout << growth_echo(cfg) << "\nwrote " << rec.rows.size() << " particles to "
                  << args.out << "\n";
    return kExitOk;
}

int cmd_stats(const StatsArgs& args) {
    hypdla::RunRecord rec = load_record_or_exit(args.in);
    // observables live in the chart normalized to the origin particle at (0, 1)
    if (rec.meta.embedding.alpha != 0.0 || rec.meta.embedding.beta != 1.0 ||
        rec.meta.embedding.reflect) {
        const hypdla::HypIsometry undo = rec.meta.embedding.inverse();
        for (auto& row : rec.rows) row.center = undo(row.center);
    }
    std::ofstream out(args.out);
    if (!out) {
        std::cerr << "cannot open '" << args.out << "' for writing\n";
        return kExitUsage;
    }
    hypdla::write_stats_csv(rec, out, record_echo(rec));
    if (!args.density_radii.empty()) {
        std::vector<hypdla::HalfPlanePoint> centers;
        centers.reserve(rec.rows.size());
        for (const auto& row : rec.rows) centers.push_back(row.center);
        const auto profile = hypdla::density_profile(centers, centers.front(), args.density_radii);
        const std::string path =
            args.density_out.empty() ? args.out + ".density" : args.density_out;
        std::ofstream dout(path);
        if (!dout) {
            std::cerr << "cannot open '" << path << "' for writing\n";
            return kExitUsage;
        }
        hypdla::write_density_csv(profile, dout, record_echo(rec));
    }
    return kExitOk;
}

int cmd_render(const RenderArgs& args) {
    const hypdla::RunRecord rec = load_record_or_exit(args.in);
    hypdla::RenderOptions opts;
    opts.chart = args.chart == "halfplane" ? hypdla::RenderOptions::Chart::halfplane
                                           : hypdla::RenderOptions::Chart::disc;
    opts.width_px = args.width;
    opts.radius_shown = args.radius_shown;
    if (args.highlight == "front")
        opts.highlight = hypdla::RenderOptions::Highlight::front;
    else if (args.highlight == "parent_edges")
        opts.highlight = hypdla::RenderOptions::Highlight::parent_edges;
    try {
        opts.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid render options: " << e.what() << "\n";
        return kExitUsage;
    }
    const std::string svg = hypdla::render_svg(rec, opts, record_echo(rec) + " chart=" + args.chart);
    std::ofstream out(args.out, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open '" << args.out << "' for writing\n";
        return kExitUsage;
    }
    out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
    return kExitOk;
}

int cmd_verify(const VerifyArgs& args) {
    hypdla::verify::VerifyOptions opts;
    opts.runs = args.runs;
    opts.seed = args.seed;
    opts.threads = args.threads;
    const auto res = hypdla::verify::run_suite(args.suite, opts);
    std::cout << res.text();
    if (!args.out.empty()) {
        std::ofstream out(args.out);
        out << res.text();
    }
    return res.all_pass() ? kExitOk : kExitFailure;
}

int cmd_spiral(const SpiralArgs& args) {
    const double coeff = args.coeff;
    if (!(coeff > 0.0)) {
        std::cerr << "coeff must be positive\n";
        return kExitUsage;
    }
    const hypdla::RunRecord rec =
        hypdla::spiral_fixture(args.turns, [coeff](double t) { return coeff * t * t; });
    rec.save(args.out);
    std::cout << "hypdla spiral turns=" << args.turns << " coeff=" << coeff << "\nwrote "
              << rec.rows.size() << " particles to " << args.out << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion-limited aggregation on the hyperbolic plane"};
    app.require_subcommand(1);

    GrowArgs grow_args;
    auto* grow = app.add_subcommand("grow", "grow an aggregate and write the run record");
    grow->set_config("--config", "", "key = value file; command-line flags take precedence");
    grow->add_option("--particles", grow_args.particles, "number of particles")->capture_default_str();
    grow->add_option("--seed", grow_args.seed, "run seed")->capture_default_str();
    grow->add_option("--mode", grow_args.mode, "discrete|continuous")
        ->check(CLI::IsMember({"discrete", "continuous"}))
        ->capture_default_str();
    grow->add_option("--out", grow_args.out, "output run file")->required();
    grow->add_option("--eps", grow_args.eps, "launch offset")->capture_default_str();
    grow->add_option("--hit-shell", grow_args.hit_shell, "hit shell")->capture_default_str();
    grow->add_option("--floor-shell", grow_args.floor_shell, "floor shell")->capture_default_str();
    grow->add_option("--far-cutoff", grow_args.far_cutoff, "far cutoff")->capture_default_str();
    grow->add_option("--max-steps", grow_args.max_steps, "max walk steps")->capture_default_str();
    grow->add_option("--cap-probes", grow_args.cap_probes, "capacity probes per step (continuous)")
        ->capture_default_str();
    grow->add_option("--threads", grow_args.threads, "execution hint, never changes output bytes")
        ->envname("HYPDLA_THREADS")
        ->capture_default_str();
    grow->add_flag("--quiet", grow_args.quiet, "suppress the summary line");

    StatsArgs stats_args;
    auto* stats = app.add_subcommand("stats", "per-step observables of a run record");
    stats->add_option("--in", stats_args.in, "input run file")->required();
    stats->add_option("--out", stats_args.out, "output csv")->required();
    stats->add_option("--density-radii", stats_args.density_radii,
                      "radii for a density profile (comma separated)")
        ->delimiter(',');
    stats->add_option("--density-out", stats_args.density_out,
                      "density profile csv (default: <out>.density)");

    RenderArgs render_args;
    auto* render = app.add_subcommand("render", "render a run record to svg");
    render->add_option("--in", render_args.in, "input run file")->required();
    render->add_option("--out", render_args.out, "output svg")->required();
    render->add_option("--chart", render_args.chart, "disc|halfplane")
        ->check(CLI::IsMember({"disc", "halfplane"}))
        ->capture_default_str();
    render->add_option("--width", render_args.width, "image width in px")->capture_default_str();
    render->add_option("--highlight", render_args.highlight, "none|front|parent_edges")
        ->check(CLI::IsMember({"none", "front", "parent_edges"}))
        ->capture_default_str();
    render->add_option("--radius-shown", render_args.radius_shown, "draw radius 1 or 2 balls")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "run a statistical verification suite");
    verify->add_option("--suite", verify_args.suite, "suite name")
        ->check(CLI::IsMember(hypdla::verify::suite_names()))
        ->required();
    verify->add_option("--runs", verify_args.runs, "override replicate counts (0 = full budget)")
        ->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "suite seed")->capture_default_str();
    verify->add_option("--threads", verify_args.threads, "execution hint")
        ->envname("HYPDLA_THREADS")
        ->capture_default_str();
    verify->add_option("--out", verify_args.out, "also write the report to a file");

    SpiralArgs spiral_args;
    auto* spiral = app.add_subcommand("spiral", "build the connected zero-density spiral fixture");
    spiral->add_option("--turns", spiral_args.turns, "number of turns (fractional allowed)")
        ->required();
    spiral->add_option("--coeff", spiral_args.coeff, "radius law R(theta) = coeff * theta^2")
        ->capture_default_str();
    spiral->add_option("--out", spiral_args.out, "output fixture file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*grow) return cmd_grow(grow_args);
        if (*stats) return cmd_stats(stats_args);
        if (*render) return cmd_render(render_args);
        if (*verify) return cmd_verify(verify_args);
        if (*spiral) return cmd_spiral(spiral_args);
    } catch (const hypdla::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitFailure;
    } catch (const hypdla::MalformedRecord& e) {
        std::cerr << "malformed record: " << e.what() << "\n";
        return kExitFailure;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid arguments: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}
