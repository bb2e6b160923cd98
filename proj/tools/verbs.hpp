#ifndef NCL_TOOLS_VERBS_HPP
#define NCL_TOOLS_VERBS_HPP

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ncl/ncl.hpp"

namespace ncl::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kValidation = 2,
    kTruncation = 3,
    kSingular = 4,
    kNonclassical = 10,
};

struct RunConfig
{
    std::string verb;
    std::string state;                  // path or inline JSON
    std::optional<int> dim;             // overrides the spec's "dim"
    int default_dim = 64;
    int order = 8;
    double phi = 0.0;
    std::string kind = "all";           // aa | quad | xn | d2 | all
    int nmax = 4;
    std::string scheme = "a";
    int depth = 2;
    cplx lo_alpha{5.0, 0.0};
    double t0 = std::sqrt(0.96);
    std::uint64_t samples = 0;          // 0: noiseless
    std::uint64_t seed = 42;
    std::string out;                    // empty: stdout
    std::string in;                     // invert input record
    double tolerance = 1e-9;

    std::vector<int> ms{2, 3, 4};
    double lambda_min = 1.05;
    double lambda_max = 2.0;
    double lambda_step = 0.05;

    ComplexGrid grid{};
};

/// Default dimension, honoring NCL_DEFAULT_DIM.
inline int default_dimension()
{
    if (const char* env = std::getenv("NCL_DEFAULT_DIM")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0 && v < 1'000'000)
            return static_cast<int>(v);
        warn("ignoring malformed NCL_DEFAULT_DIM");
    }
    return 64;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ValidationError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& what)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError("invalid JSON in " + what + ": " + e.what());
    }
}

inline BuiltState load_state(const RunConfig& cfg)
{
    if (cfg.state.empty())
        throw ValidationError("--state is required");
    const bool inline_spec = cfg.state.find_first_not_of(" \t\n") != std::string::npos &&
                             cfg.state[cfg.state.find_first_not_of(" \t\n")] == '{';
    json spec = parse_json_text(inline_spec ? cfg.state : read_file(cfg.state), "state spec");
    if (cfg.dim) {
        if (*cfg.dim < 1)
            throw ValidationError("--dim must be >= 1");
        spec["dim"] = *cfg.dim;
    }
    return build_state(spec, cfg.default_dim);
}

/// Writes the artifact to --out (or stdout) and the summary to the other
/// stream, so piping stdout always yields the artifact alone.
class Output
{
public:
    Output(const RunConfig& cfg, std::ostream& out, std::ostream& err)
        : cfg_(cfg), out_(out), err_(err)
    { }

    void artifact(const std::string& text)
    {
        if (cfg_.out.empty()) {
            out_ << text;
            return;
        }
        std::ofstream f(cfg_.out, std::ios::binary | std::ios::trunc);
        if (!f)
            throw ValidationError("cannot write '" + cfg_.out + "'");
        f << text;
    }

    std::ostream& summary() { return cfg_.out.empty() ? err_ : out_; }

private:
    const RunConfig& cfg_;
    std::ostream& out_;
    std::ostream& err_;
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline int verb_moments(const RunConfig& cfg, Output& io)
{
    const auto built = load_state(cfg);
    const MomentTable table = std::visit([&](const auto& s) { return moment_table(s, cfg.order); }, built.state);
    io.artifact(dump(to_json(table)));
    const cplx a = table.max_order() >= 1 ? table(0, 1) : cplx{};
    const double n = table.max_order() >= 1 ? table(1, 1).real() : 0.0;
    io.summary() << "<n> = " << format_double(n) << "  <a> = " << format_double(a.real()) << " "
                 << (a.imag() < 0 ? "- " : "+ ") << format_double(std::abs(a.imag())) << "i\n";
    return kOk;
}

inline std::vector<BasisKind> requested_kinds(const std::string& kind)
{
    if (kind == "all")
        return {BasisKind::AA, BasisKind::QUAD, BasisKind::XN, BasisKind::XN_WEIGHTED};
    return {basis_kind_from_string(kind)};
}

inline int verb_criteria(const RunConfig& cfg, Output& io)
{
    const auto kinds = requested_kinds(cfg.kind);
    if (!(cfg.tolerance >= 0.0))
        throw ValidationError("--tolerance must be >= 0");
    const auto built = load_state(cfg);
    const MomentTable table = std::visit([&](const auto& s) { return moment_table(s, cfg.order); }, built.state);

    json reports = json::array();
    bool witnessed = false;
    for (BasisKind kind : kinds) {
        const auto report = determinant_hierarchy(table, kind, cfg.nmax, cfg.phi, cfg.tolerance);
        witnessed = witnessed || report.nonclassical();
        reports.push_back(to_json(report));
        io.summary() << to_string(kind) << ": first negative order "
                     << (report.first_negative_order ? std::to_string(*report.first_negative_order) : "none")
                     << "\n";
    }
    io.artifact(dump(cfg.kind == "all" ? reports : reports[0]));
    io.summary() << (witnessed ? "verdict: nonclassical" : "verdict: no witness below tolerance") << "\n";
    return witnessed ? kNonclassical : kOk;
}

inline std::vector<double> lambda_grid(const RunConfig& cfg)
{
    if (!(cfg.lambda_step > 0.0) || !(cfg.lambda_max >= cfg.lambda_min) || !(cfg.lambda_min > 0.0))
        throw ValidationError("lambda grid needs 0 < min <= max and step > 0");
    const long count = std::lround(std::floor((cfg.lambda_max - cfg.lambda_min) / cfg.lambda_step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) {
        const double lambda = cfg.lambda_min + i * cfg.lambda_step;
        if (std::abs(lambda - 1.0) < 1e-12)
            throw ValidationError("lambda grid must avoid lambda = 1");
        out.push_back(lambda);
    }
    return out;
}

inline int verb_sweep(const RunConfig& cfg, Output& io)
{
    const auto lambdas = lambda_grid(cfg);
    if (cfg.ms.empty())
        throw ValidationError("--m needs at least one value");
    std::vector<int> ms = cfg.ms;
    std::sort(ms.begin(), ms.end());
    const int dim = cfg.dim.value_or(cfg.default_dim);
    std::string csv = "lambda,m,s3,asq_min,asq_max,n_mean\n";
    for (int m : ms) {
        if (m < 0)
            throw ValidationError("m must be >= 0");
        for (double lambda : lambdas) {
            const auto [psi, params] = make_ass_state(m, lambda, dim);
            const MomentTable table = moment_table(psi, 4);
            const auto mm = asq_min_max(table);
            csv += format_double(lambda) + "," + std::to_string(m) + "," + format_double(s3(table)) + "," +
                   format_double(mm.min) + "," + format_double(mm.max) + "," +
                   format_double(table(1, 1).real()) + "\n";
        }
    }
    io.artifact(csv);
    io.summary() << "sweep: " << ms.size() * lambdas.size() << " rows\n";
    return kOk;
}

inline int verb_qfunc(const RunConfig& cfg, Output& io)
{
    const auto& g = cfg.grid;
    if (!std::isfinite(g.re_min) || !std::isfinite(g.re_max) || !std::isfinite(g.im_min) ||
        !std::isfinite(g.im_max) || g.re_max < g.re_min || g.im_max < g.im_min || g.n_re < 1 || g.n_im < 1)
        throw ValidationError("qfunc grid bounds must be finite and ordered, sizes >= 1");
    const auto built = load_state(cfg);
    const Eigen::MatrixXd q = q_function(built.state, g);
    std::string csv = "re_alpha,im_alpha,q_value\n";
    for (int i = 0; i < g.n_re; ++i)
        for (int j = 0; j < g.n_im; ++j)
            csv += format_double(g.re(i)) + "," + format_double(g.im(j)) + "," +
                   format_double(q(i, j)) + "\n";
    io.artifact(csv);
    io.summary() << "qfunc: max " << format_double(q.maxCoeff()) << "\n";
    return kOk;
}

inline LOConfig lo_from_config(const RunConfig& cfg)
{
    return LOConfig::with_transmittance(cfg.lo_alpha, cfg.t0, cfg.depth);
}

inline int verb_simulate(const RunConfig& cfg, Output& io)
{
    const Scheme scheme = scheme_from_string(cfg.scheme);
    const auto built = load_state(cfg);
    DetectionRecord rec;
    switch (scheme) {
    case Scheme::A: {
        const LOConfig lo = lo_from_config(cfg);
        const auto table = std::visit([&](const auto& s) { return moment_table(s, cfg.nmax); }, built.state);
        rec = scheme_a_simulate(table, lo, cfg.nmax);
        break;
    }
    case Scheme::B: {
        const auto table = std::visit([&](const auto& s) { return moment_table(s, 4); }, built.state);
        rec = scheme_b_forward(table, cfg.lo_alpha, cfg.phi);
        break;
    }
    case Scheme::C: {
        const auto table = std::visit([&](const auto& s) { return moment_table(s, 4); }, built.state);
        rec = scheme_c_forward(table, lo_from_config(cfg), cfg.phi);
        break;
    }
    }
    if (cfg.samples > 0)
        rec = add_shot_noise(rec, cfg.samples, cfg.seed);
    io.artifact(dump(to_json(rec)));
    io.summary() << "simulate: scheme " << to_string(scheme) << ", "
                 << rec.correlations.size() + rec.fn_samples.size() << " values"
                 << (cfg.samples > 0 ? ", noisy" : "") << "\n";
    return kOk;
}

inline int verb_invert(const RunConfig& cfg, Output& io)
{
    if (cfg.in.empty())
        throw ValidationError("--in is required");
    const DetectionRecord rec = detection_record_from_json(parse_json_text(read_file(cfg.in), "record"));
    switch (rec.scheme) {
    case Scheme::A: {
        const FourierRecord fr = scheme_a_fourier_record(rec);
        const MomentTable table = scheme_a_invert(fr, rec.lo, fr.max_n());
        io.artifact(dump(to_json(table)));
        io.summary() << "invert: moments up to order " << table.max_order() << "\n";
        break;
    }
    case Scheme::B:
        io.artifact(dump(to_json(scheme_b_extract(rec))));
        io.summary() << "invert: scheme b quadrature moments\n";
        break;
    case Scheme::C:
        io.artifact(dump(to_json(scheme_c_extract(rec))));
        io.summary() << "invert: scheme c moments\n";
        break;
    }
    return kOk;
}

/// Runs one verb, mapping library errors onto exit codes.
inline int run(const RunConfig& cfg, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Output io(cfg, out, err);
    try {
        if (cfg.verb == "moments") return verb_moments(cfg, io);
        if (cfg.verb == "criteria") return verb_criteria(cfg, io);
        if (cfg.verb == "sweep") return verb_sweep(cfg, io);
        if (cfg.verb == "qfunc") return verb_qfunc(cfg, io);
        if (cfg.verb == "simulate") return verb_simulate(cfg, io);
        if (cfg.verb == "invert") return verb_invert(cfg, io);
        throw ValidationError("unknown verb '" + cfg.verb + "'");
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const TruncationError& e) {
        err << "truncation: " << e.what() << "\n";
        return kTruncation;
    } catch (const OrderError& e) {
        err << "insufficient order: " << e.what() << "\n";
        return kTruncation;
    } catch (const IndexError& e) {
        err << "insufficient order: " << e.what() << "\n";
        return kTruncation;
    } catch (const SingularError& e) {
        err << "singular: " << e.what() << "\n";
        return kSingular;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

} // namespace ncl::cli

#endif // NCL_TOOLS_VERBS_HPP
