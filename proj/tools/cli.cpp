#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "io.hpp"
#include "tetra/fundops.hpp"
#include "tetra/geometry.hpp"
#include "tetra/jointspec.hpp"
#include "tetra/model.hpp"
#include "tetra/poly.hpp"
#include "tetra/variety.hpp"
#include "tetra/vn.hpp"

namespace tetra::cli {

namespace {

using io::json;
using io::to_json;

struct Common {
    std::uint64_t seed = 42;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string out_path;

    std::uint64_t effective_seed() const {
        if (const char* env = std::getenv("TETRA_SEED"); env && *env) {
            try {
                return std::stoull(env);
            } catch (const std::exception&) {
                throw Error(ErrorKind::Parse, std::string("TETRA_SEED is not an integer: ") + env);
            }
        }
        return seed;
    }
};

void add_common(CLI::App* sub, Common& c) {
    sub->add_option("--seed", c.seed, "random seed (TETRA_SEED overrides)");
    sub->add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", c.out_path, "write the JSON report here instead of stdout");
}

void emit(const json& j, const Common& c, std::ostream& out) {
    if (c.out_path.empty())
        out << io::dump(j);
    else
        io::write_text(c.out_path, io::dump(j));
}

json notes_json(const std::vector<std::string>& notes) {
    json a = json::array();
    for (const auto& n : notes) a.push_back(n);
    return a;
}

int exit_for(const Error& e) {
    switch (e.kind()) {
    case ErrorKind::Parse: return kParseError;
    case ErrorKind::FundamentalEquationsFail: return kNegative;
    case ErrorKind::NoConvergence:
    case ErrorKind::DeflationFailed: return kInconclusive;
    default: return kPrecondition;
    }
}

// subcommands

struct ClassifyArgs {
    Common common;
    std::string point;
    bool closed = false;
    int grid = 128;
    int samples = 64;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out) {
    const TetraPoint pt = io::parse_point(a.point);
    const Semantics sem = a.closed ? Semantics::Closed : Semantics::Open;
    json j;
    j["point"] = to_json(pt);
    j["semantics"] = a.closed ? "closed" : "open";
    j["tag"] = to_string(classify_tetra(pt, sem));
    if (std::abs(pt.x3) < 1.0 - kBoundaryBand) {
        const BetaPair b = beta_decompose(pt);
        j["beta"] = json::array({to_json(b.beta1), to_json(b.beta2)});
    } else {
        j["beta"] = nullptr;
    }
    const KernelCheck kc = kernel_check(pt, a.grid);
    j["kernel_check"] = {{"nonvanishing", kc.nonvanishing}, {"min_modulus", kc.min_modulus}};
    j["gamma_lift"] = gamma_lift_check(pt, a.samples);
    emit(j, a.common, out);
    return kSuccess;
}

struct KernelArgs {
    Common common;
    std::string point;
    int grid = 128;
};

int cmd_kernel(const KernelArgs& a, std::ostream& out) {
    const TetraPoint pt = io::parse_point(a.point);
    const KernelCheck kc = kernel_check(pt, a.grid);
    json j;
    j["point"] = to_json(pt);
    j["grid"] = a.grid;
    j["nonvanishing"] = kc.nonvanishing;
    j["min_modulus"] = kc.min_modulus;
    emit(j, a.common, out);
    return kSuccess;
}

struct GammaArgs {
    Common common;
    std::string s, p, point;
    bool closed = false;
    int samples = 64;
};

int cmd_gamma(const GammaArgs& a, std::ostream& out) {
    json j;
    const Semantics sem = a.closed ? Semantics::Closed : Semantics::Open;
    if (!a.point.empty()) {
        const TetraPoint pt = io::parse_point(a.point);
        const GammaPoint gp{pt.x1 + pt.x2, pt.x3};
        j["point"] = to_json(pt);
        j["lift_in_gamma"] = gamma_lift_check(pt, a.samples);
        j["projection"] = {{"s", to_json(gp.s)}, {"p", to_json(gp.p)}, {"tag", to_string(gamma_classify(gp, sem))}};
    } else {
        if (a.s.empty() || a.p.empty()) throw Error(ErrorKind::Parse, "gamma needs --s and --p, or --point");
        const GammaPoint gp{io::parse_complex(a.s), io::parse_complex(a.p)};
        j["s"] = to_json(gp.s);
        j["p"] = to_json(gp.p);
        j["tag"] = to_string(gamma_classify(gp, sem));
    }
    emit(j, a.common, out);
    return kSuccess;
}

struct JointArgs {
    Common common;
    std::string a, b;
    double tol = 1e-8;
};

int cmd_joint(const JointArgs& a, std::ostream& out) {
    const CommutingPair pair = verify_commuting(io::read_matrix(a.a), io::read_matrix(a.b));
    const JointSpectrum js = joint_eigenvalues(pair, a.common.effective_seed(), JointSpecOptions{a.tol});
    json pairs = json::array();
    for (const auto& p : js.pairs)
        pairs.push_back({{"lambda", to_json(p.lambda)}, {"mu", to_json(p.mu)}, {"residual", p.residual}});
    json j;
    j["commutator"] = pair.residual;
    j["pairs"] = std::move(pairs);
    emit(j, a.common, out);
    return kSuccess;
}

struct TripleArgs {
    std::string t1, t2, t3;

    OperatorTriple load() const {
        return make_triple(io::read_matrix(t1), io::read_matrix(t2), io::read_matrix(t3), 1e-9);
    }
};

struct FundArgs {
    Common common;
    TripleArgs triple;
    int grid = 64;
};

int cmd_fundops(const FundArgs& a, std::ostream& out) {
    const OperatorTriple tr = a.triple.load();
    const FundamentalPair fp = extract_fundamental(tr);
    const RadiusCheck rc = verify_fundamental_radius(fp, a.grid);
    const Sufficiency suf = check_sufficiency(tr, fp, SufficiencyOptions{1e-9, a.grid, {}});
    json j;
    j["A1"] = to_json(fp.a1);
    j["A2"] = to_json(fp.a2);
    j["defect_basis"] = to_json(fp.basis);
    j["residual1"] = fp.residual1;
    j["residual2"] = fp.residual2;
    j["radius"] = {{"ok", rc.ok}, {"max", rc.max_radius}, {"argmax", to_json(rc.argmax)}};
    j["sufficiency"] = {{"verdict", to_string(suf.verdict)},
                        {"commutator", suf.commutator},
                        {"normality_gap", suf.normality_gap},
                        {"notes", notes_json(suf.notes)}};
    j["E_isometry"] = check_E_isometry(tr);
    j["E_unitary"] = check_E_unitary(tr);
    j["T3_pure"] = check_pure(tr.t3);
    emit(j, a.common, out);
    return kSuccess;
}

struct VarietyArgs {
    Common common;
    std::string a1, a2, csv;
    int boundary_grid = 256;
    int interior_grid = 256;
    double delta = 0.01;
};

int cmd_variety(const VarietyArgs& a, std::ostream& out) {
    const VarietyParams vp = make_variety_params(io::read_matrix(a.a1), io::read_matrix(a.a2));
    DistinguishedOptions opts;
    opts.boundary_grid = a.boundary_grid;
    opts.interior_grid = a.interior_grid;
    opts.delta = a.delta;
    opts.sampling.seed = a.common.effective_seed();
    opts.sampling.threads = a.common.threads;
    const DistinguishedReport rep = classify_distinguished(vp, opts);
    const BdeCriterion bde = check_bDE_criterion(vp, a.boundary_grid, opts.tol, opts.sampling);

    json j;
    j["verdict"] = to_string(rep.verdict);
    j["sup_norm"] = rep.sup_norm;
    j["sup_theta"] = vp.sup_theta;
    if (rep.witness) {
        j["witness"] = to_json(*rep.witness);
        j["witness_tag"] = to_string(rep.witness_tag);
    } else {
        j["witness"] = nullptr;
    }
    j["boundary_points"] = rep.boundary_points;
    j["interior_points"] = rep.interior_points;
    j["min_interior_margin"] = rep.min_interior_margin;
    j["notes"] = notes_json(rep.notes);
    j["bDE"] = {{"disjoint", bde.disjoint_from_bde}, {"sup_norm_lt_1", bde.sup_norm_lt_1}, {"agree", bde.agree}};

    if (!a.csv.empty()) {
        VarietyPointCloud cloud = rep.cloud;
        if (cloud.records.empty())
            cloud = sample_variety(vp, x3_circle_samples(default_radii(), a.boundary_grid), opts.sampling);
        std::ostringstream csv;
        io::write_cloud_csv(csv, cloud);
        io::write_text(a.csv, csv.str());
    }
    emit(j, a.common, out);

    switch (rep.verdict) {
    case DistinguishedVerdict::Distinguished:
    case DistinguishedVerdict::DistinguishedEmpirical: return kSuccess;
    case DistinguishedVerdict::NotDistinguished: return kNegative;
    case DistinguishedVerdict::Inconclusive: return kInconclusive;
    case DistinguishedVerdict::HypothesisViolated: return kPrecondition;
    }
    return kInconclusive;
}

struct ParamArgs {
    long n = 1;
    std::string a = "0", b = "0";
    std::string a1, a2;

    std::pair<ComplexMatrix, ComplexMatrix> load() const {
        if (a1.empty() != a2.empty()) throw Error(ErrorKind::Parse, "--a1 and --a2 go together");
        if (!a1.empty()) return {io::read_matrix(a1), io::read_matrix(a2)};
        if (n < 1) throw Error(ErrorKind::Parse, "--n must be positive");
        const ComplexMatrix id = identity(n);
        return {io::parse_complex(a) * id, io::parse_complex(b) * id};
    }
};

struct ModelArgs {
    Common common;
    ParamArgs params;
    long modes = 64;
    long m = 0;
    bool periodic = false;
    std::string triple_prefix;
};

int cmd_model(const ModelArgs& a, std::ostream& out) {
    const auto [a1, a2] = a.params.load();
    const ModelTriple mt =
        a.periodic ? build_periodic_model(a1, a2, a.modes) : build_model(a1, a2, a.modes);
    json j = io::model_to_json(mt);
    if (a.m > 0) {
        const OperatorTriple tr = compress_to_comodel(mt, a.m);
        j["compression"] = {{"m", a.m}, {"T1", to_json(tr.t1)}, {"T2", to_json(tr.t2)}, {"T3", to_json(tr.t3)}};
        if (!a.triple_prefix.empty()) {
            io::write_text(a.triple_prefix + "_t1.json", io::dump(to_json(tr.t1)));
            io::write_text(a.triple_prefix + "_t2.json", io::dump(to_json(tr.t2)));
            io::write_text(a.triple_prefix + "_t3.json", io::dump(to_json(tr.t3)));
        }
    }
    emit(j, a.common, out);
    return kSuccess;
}

struct DilationArgs {
    Common common;
    TripleArgs triple;
    long modes = 64;
    int degree = 4;
    long buffer = 8;
};

int cmd_dilation(const DilationArgs& a, std::ostream& out) {
    const OperatorTriple tr = a.triple.load();
    const Dilation dil = dilate(tr, a.modes);
    const DilationReport rep = verify_dilation(tr, dil.model, dil.embedding.w, a.degree);
    const ModelIdentityReport mir = verify_model_identity(tr, a.modes, a.buffer);
    json j;
    j["N"] = a.modes;
    j["tail"] = dil.embedding.tail;
    j["adjoint_fundamental"] = {{"A1", to_json(dil.adjoint_fundamental.a1)},
                                {"A2", to_json(dil.adjoint_fundamental.a2)}};
    j["intertwining"] = {{"Q1", rep.intertwining[0]}, {"Q2", rep.intertwining[1]}, {"V", rep.intertwining[2]}};
    j["monomial_max"] = rep.monomial_max;
    j["worst_monomial"] = rep.worst_monomial;
    j["monomials"] = rep.monomials;
    j["isometry_defect"] = rep.isometry_defect;
    j["model_identity"] = {{"residual", mir.residual}, {"modes_checked", mir.modes_checked}};
    emit(j, a.common, out);
    return kSuccess;
}

struct VnArgs {
    Common common;
    TripleArgs triple;
    ParamArgs params;
    long modes = 16, m = 4;
    std::vector<std::string> polys;
    std::string polys_file;
    int random = 0;
    int grid = 2048;
};

int cmd_vn(const VnArgs& a, std::ostream& out) {
    std::vector<Poly3> polys;
    for (const auto& s : a.polys) polys.push_back(parse_poly(s));
    if (!a.polys_file.empty()) {
        std::ifstream in(a.polys_file);
        if (!in) throw Error(ErrorKind::Parse, "cannot open " + a.polys_file);
        for (std::string line; std::getline(in, line);) {
            if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
            polys.push_back(parse_poly(line));
        }
    }
    const std::uint64_t seed = a.common.effective_seed();
    if (a.random > 0) {
        std::mt19937_64 rng(seed);
        for (int k = 0; k < a.random; ++k) polys.push_back(random_poly(rng, 3));
    }
    if (polys.empty()) throw Error(ErrorKind::Parse, "no polynomials given (--poly, --polys or --random)");

    OperatorTriple tr;
    if (!a.triple.t1.empty()) {
        tr = a.triple.load();
    } else {
        const auto [a1, a2] = a.params.load();
        tr = compress_to_comodel(build_model(a1, a2, a.modes), a.m);
    }
    VnOptions opts;
    opts.boundary_grid = a.grid;
    opts.sampling.seed = seed;
    opts.sampling.threads = a.common.threads;
    const VnReport rep = verify_vn(tr, polys, opts);

    json entries = json::array();
    for (const auto& e : rep.entries) {
        entries.push_back({{"poly", e.poly},
                           {"lhs", e.lhs},
                           {"rhs", e.rhs},
                           {"margin", e.margin},
                           {"slack", e.slack},
                           {"verdict", e.pass ? "PASS" : "FAIL"},
                           {"argmax", to_json(e.argmax)}});
    }
    json j;
    j["hypotheses_met"] = rep.hypotheses_met;
    j["notes"] = notes_json(rep.notes);
    j["boundary_points"] = rep.boundary_points;
    j["dropped_points"] = rep.dropped_points;
    j["passed"] = rep.entries.size() - rep.violations();
    j["total"] = rep.entries.size();
    j["results"] = std::move(entries);
    emit(j, a.common, out);
    if (!rep.hypotheses_met) return kPrecondition;
    return rep.violations() == 0 ? kSuccess : kNegative;
}

void add_triple(CLI::App* sub, TripleArgs& t, bool required) {
    auto* o1 = sub->add_option("--t1", t.t1, "T1 matrix JSON");
    auto* o2 = sub->add_option("--t2", t.t2, "T2 matrix JSON");
    auto* o3 = sub->add_option("--t3", t.t3, "T3 matrix JSON");
    if (required) {
        o1->required();
        o2->required();
        o3->required();
    } else {
        o1->needs(o2, o3);
    }
}

void add_params(CLI::App* sub, ParamArgs& p) {
    sub->add_option("--n", p.n, "fiber dimension for scalar parameters");
    sub->add_option("--a", p.a, "A1 = a I");
    sub->add_option("--b", p.b, "A2 = b I");
    sub->add_option("--a1", p.a1, "A1 matrix JSON");
    sub->add_option("--a2", p.a2, "A2 matrix JSON");
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tetrablock geometry, fundamental operators, varieties and models"};
    app.require_subcommand(1);

    ClassifyArgs classify;
    auto* c_classify = app.add_subcommand("classify", "region of a point relative to E");
    c_classify->add_option("--point", classify.point, "x1,x2,x3 with complex entries like 0.5-0.1i")->required();
    c_classify->add_flag("--closed", classify.closed, "closure semantics");
    c_classify->add_option("--grid", classify.grid, "circle samples for the kernel check");
    add_common(c_classify, classify.common);

    KernelArgs kernel;
    auto* c_kernel = app.add_subcommand("kernel-check", "nonvanishing of 1 - z x1 - w x2 + z w x3");
    c_kernel->add_option("--point", kernel.point)->required();
    c_kernel->add_option("--grid", kernel.grid)->check(CLI::Range(8, 1 << 20));
    add_common(c_kernel, kernel.common);

    GammaArgs gamma;
    auto* c_gamma = app.add_subcommand("gamma", "symmetrized bidisc classification or lift check");
    c_gamma->add_option("--s", gamma.s);
    c_gamma->add_option("--p", gamma.p);
    c_gamma->add_option("--point", gamma.point);
    c_gamma->add_flag("--closed", gamma.closed);
    c_gamma->add_option("--samples", gamma.samples)->check(CLI::Range(8, 1 << 20));
    add_common(c_gamma, gamma.common);

    JointArgs joint;
    auto* c_joint = app.add_subcommand("joint-eigs", "joint spectrum of a commuting pair");
    c_joint->add_option("--a", joint.a)->required();
    c_joint->add_option("--b", joint.b)->required();
    c_joint->add_option("--tol", joint.tol);
    add_common(c_joint, joint.common);

    FundArgs fund;
    auto* c_fund = app.add_subcommand("fundops", "fundamental operators of a triple");
    add_triple(c_fund, fund.triple, true);
    c_fund->add_option("--grid", fund.grid)->check(CLI::Range(16, 1 << 16));
    add_common(c_fund, fund.common);

    VarietyArgs variety;
    auto* c_variety = app.add_subcommand("variety", "sample and classify the variety of (A1, A2)");
    c_variety->add_option("--a1", variety.a1)->required();
    c_variety->add_option("--a2", variety.a2)->required();
    c_variety->add_option("--boundary-grid", variety.boundary_grid)->check(CLI::Range(8, 1 << 20));
    c_variety->add_option("--interior-grid", variety.interior_grid)->check(CLI::Range(8, 1 << 20));
    c_variety->add_option("--delta", variety.delta);
    c_variety->add_option("--csv", variety.csv, "write the point cloud here");
    add_common(c_variety, variety.common);

    ModelArgs model;
    auto* c_model = app.add_subcommand("model", "truncated Hardy-space model");
    add_params(c_model, model.params);
    c_model->add_option("--N", model.modes, "modes")->check(CLI::Range(2L, 4096L));
    c_model->add_option("--m", model.m, "also emit the compression to the first m modes");
    c_model->add_flag("--periodic", model.periodic, "cyclic shift in place of the truncated shift");
    c_model->add_option("--triple-prefix", model.triple_prefix, "write the compression as PREFIX_t{1,2,3}.json");
    add_common(c_model, model.common);

    DilationArgs dil;
    auto* c_dil = app.add_subcommand("dilation-check", "dilation and model identity residuals");
    add_triple(c_dil, dil.triple, true);
    c_dil->add_option("--N", dil.modes)->check(CLI::Range(2L, 4096L));
    c_dil->add_option("--degree", dil.degree)->check(CLI::Range(0, 16));
    c_dil->add_option("--buffer", dil.buffer);
    add_common(c_dil, dil.common);

    VnArgs vn;
    auto* c_vn = app.add_subcommand("vn", "von Neumann inequality over the variety boundary");
    add_triple(c_vn, vn.triple, false);
    add_params(c_vn, vn.params);
    c_vn->add_option("--N", vn.modes, "model modes when building from parameters");
    c_vn->add_option("--m", vn.m, "compression size when building from parameters");
    c_vn->add_option("--poly", vn.polys, "polynomial, repeatable");
    c_vn->add_option("--polys", vn.polys_file, "file with one polynomial per line");
    c_vn->add_option("--random", vn.random, "add k seeded random polynomials of degree <= 3");
    c_vn->add_option("--grid", vn.grid, "boundary samples on |x3| = 1")->check(CLI::Range(8, 1 << 20));
    add_common(c_vn, vn.common);

    std::vector<const char*> argv{"tetra"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kParseError;
    }

    try {
        if (*c_classify) return cmd_classify(classify, out);
        if (*c_kernel) return cmd_kernel(kernel, out);
        if (*c_gamma) return cmd_gamma(gamma, out);
        if (*c_joint) return cmd_joint(joint, out);
        if (*c_fund) return cmd_fundops(fund, out);
        if (*c_variety) return cmd_variety(variety, out);
        if (*c_model) return cmd_model(model, out);
        if (*c_dil) return cmd_dilation(dil, out);
        if (*c_vn) return cmd_vn(vn, out);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return exit_for(e);
    } catch (const io::json::exception& e) {
        err << "error (Parse): " << e.what() << "\n";
        return kParseError;
    }
    return kParseError;
}

} // namespace tetra::cli
