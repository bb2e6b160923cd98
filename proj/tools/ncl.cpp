// ncl: nonclassicality toolkit command line.
//
//   ncl moments  --state '{"type":"coherent","alpha":[0.5,0]}' --order 8 --out table.json
//   ncl criteria --state spec.json --kind quad --nmax 4
//   ncl sweep    --m 2,3,4 --lambda-min 1.05 --lambda-max 2 --lambda-step 0.05 --out sweep.csv
//   ncl qfunc    --state spec.json --re-min -4 --re-max 4 --grid 81
//   ncl simulate --state spec.json --scheme a --depth 2 --out rec.json
//   ncl invert   --in rec.json --out recovered.json

#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "verbs.hpp"

namespace {

ncl::cplx parse_complex(const std::string& text)
{
    double re = 0.0, im = 0.0;
    char tail = 0;
    const int got = std::sscanf(text.c_str(), "%lf,%lf%c", &re, &im, &tail);
    if (got == 2)
        return {re, im};
    if (std::sscanf(text.c_str(), "%lf%c", &re, &tail) == 1)
        return {re, 0.0};
    throw ncl::ValidationError("--lo-alpha expects re,im");
}

} // namespace

int main(int argc, char** argv)
{
    ncl::cli::RunConfig cfg;
    cfg.default_dim = ncl::cli::default_dimension();

    CLI::App app{"Nonclassicality witnesses, measurement simulation and amplitude-squared squeezed states"};
    app.add_option("verb", cfg.verb, "moments | criteria | sweep | qfunc | simulate | invert")
        ->required()
        ->check(CLI::IsMember({"moments", "criteria", "sweep", "qfunc", "simulate", "invert"}));

    int dim = 0;
    std::string lo_alpha;
    app.add_option("--state", cfg.state, "state spec file or inline JSON");
    auto* dim_opt = app.add_option("--dim", dim, "Fock truncation (default 64 or $NCL_DEFAULT_DIM)");
    app.add_option("--order", cfg.order, "moment table order")->capture_default_str();
    app.add_option("--phi", cfg.phi, "quadrature / LO phase")->capture_default_str();
    app.add_option("--kind", cfg.kind, "hierarchy: aa, quad, xn, d2 or all")
        ->check(CLI::IsMember({"aa", "quad", "xn", "d2", "all"}))
        ->capture_default_str();
    app.add_option("--nmax", cfg.nmax, "largest hierarchy / correlation order")->capture_default_str();
    app.add_option("--scheme", cfg.scheme, "detection scheme a, b or c")
        ->check(CLI::IsMember({"a", "b", "c"}))
        ->capture_default_str();
    app.add_option("--depth", cfg.depth, "scheme A splitter depth")->capture_default_str();
    app.add_option("--lo-alpha", lo_alpha, "local oscillator amplitude re,im (default 5,0)");
    app.add_option("--t0", cfg.t0, "entrance transmittance |T0|")->capture_default_str();
    app.add_option("--samples", cfg.samples, "shot-noise sample count (0: noiseless)")->capture_default_str();
    app.add_option("--seed", cfg.seed, "noise / search seed")->capture_default_str();
    app.add_option("--out", cfg.out, "output file (default stdout)");
    app.add_option("--in", cfg.in, "detection record for invert");
    app.add_option("--tolerance", cfg.tolerance, "negativity tolerance")->capture_default_str();

    app.add_option("--m", cfg.ms, "sweep: ASS index list")->delimiter(',');
    app.add_option("--lambda-min", cfg.lambda_min, "sweep: first lambda")->capture_default_str();
    app.add_option("--lambda-max", cfg.lambda_max, "sweep: last lambda")->capture_default_str();
    app.add_option("--lambda-step", cfg.lambda_step, "sweep: lambda step")->capture_default_str();

    int grid = 81;
    auto* grid_opt = app.add_option("--grid", grid, "qfunc: points per axis")->capture_default_str();
    app.add_option("--re-min", cfg.grid.re_min, "qfunc: Re alpha lower bound")->capture_default_str();
    app.add_option("--re-max", cfg.grid.re_max, "qfunc: Re alpha upper bound")->capture_default_str();
    app.add_option("--im-min", cfg.grid.im_min, "qfunc: Im alpha lower bound")->capture_default_str();
    app.add_option("--im-max", cfg.grid.im_max, "qfunc: Im alpha upper bound")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : ncl::cli::kValidation;
    }

    if (dim_opt->count() > 0)
        cfg.dim = dim;
    if (grid_opt->count() > 0)
        cfg.grid.n_re = cfg.grid.n_im = grid;
    if (!lo_alpha.empty()) {
        try {
            cfg.lo_alpha = parse_complex(lo_alpha);
        } catch (const ncl::ValidationError& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return ncl::cli::kValidation;
        }
    }
    return ncl::cli::run(cfg);
}
