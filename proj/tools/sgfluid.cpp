#include <iostream>

#include <CLI11.hpp>

#include "sgf/experiments.hpp"

namespace {

struct CommonOpts {
    std::string config_file;
    std::string out_dir;
    long long seed = -1;
    bool dump_coefficients = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "key = value configuration file");
    cmd->add_option("--seed", opts.seed, "override the noise seed");
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_flag("--dump-coefficients", opts.dump_coefficients,
                  "include raw coefficient columns in trajectory output");
}

int dispatch(sgf::RunKind kind, const CommonOpts& opts) {
    sgf::RunConfig cfg;
    if (!opts.config_file.empty()) cfg = sgf::load_config(opts.config_file);
    cfg.kind = kind;
    if (opts.seed >= 0) cfg.seed = static_cast<std::uint64_t>(opts.seed);
    if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
    if (opts.dump_coefficients) cfg.dump_coefficients = true;
    cfg.validate();
    return sgf::run(cfg, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral Galerkin laboratory for a 2D second-grade fluid driven by "
                 "multiplicative noise"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* desc;
        sgf::RunKind kind;
    };
    const Sub subs[] = {
        {"simulate", "integrate one trajectory and write it as CSV", sgf::RunKind::simulate},
        {"verify", "run the invariant suite; nonzero exit on any failure", sgf::RunKind::verify},
        {"linearize", "finite-difference check of the tangent solution", sgf::RunKind::linearize},
        {"pullback", "pullback ensemble norms at the configured times", sgf::RunKind::pullback},
        {"attractor", "absorbing radii and the attractor point-cloud estimate",
         sgf::RunKind::attractor},
        {"sweep", "upper-semicontinuity sweep over noise intensities", sgf::RunKind::sweep},
    };

    std::vector<CommonOpts> opts(std::size(subs));
    std::vector<CLI::App*> cmds;
    for (std::size_t i = 0; i < std::size(subs); ++i) {
        CLI::App* cmd = app.add_subcommand(subs[i].name, subs[i].desc);
        add_common(cmd, opts[i]);
        cmds.push_back(cmd);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < cmds.size(); ++i)
            if (cmds[i]->parsed()) return dispatch(subs[i].kind, opts[i]);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
