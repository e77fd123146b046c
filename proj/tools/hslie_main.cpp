#include <cmath>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hslie/catalog_suite.hpp"
#include "hslie/structure_file.hpp"

namespace {

using namespace hslie;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitInputError = 2;

int cmd_verify(const std::string& path) {
    StructureFile s = load_structure(path);
    if (!s.J || !s.E || !s.metric) {
        std::cerr << "verify: the file needs J, E and metric blocks\n";
        return kExitInputError;
    }
    LieAlgebra L = s.algebra();
    ValidationReport rep =
        verify_hypersymplectic(L, *s.J, *s.E, BilinearForm(*s.metric, Symmetry::symmetric));
    std::cout << rep.to_text();
    return rep.verdict ? kExitPass : kExitCheckFailure;
}

int cmd_bicross(const std::string& path, const std::string& out_path) {
    MatchedPairFile f = load_matched_pair(path);
    BicrossResult res = build_bicrossproduct(to_spec(f));
    std::string text = serialize_structure(structure_of(res.structure));
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "bicross: cannot write '" << out_path << "'\n";
            return kExitInputError;
        }
        out << text;
    }
    return kExitPass;
}

const char* family_name(const FamilyTag& tag) {
    if (tag.algebra == Algebra2d::r2) {
        switch (tag.family) {
            case Family2d::zero: return "zero";
            case Family2d::a: return "a";
            case Family2d::b: return "b";
            case Family2d::c: return "c";
        }
    }
    return tag.family == Family2d::a ? "a" : "b";
}

int cmd_classify2d(const std::string& path) {
    StructureFile s = load_structure(path);
    if (s.dim != 2) {
        std::cerr << "classify2d: the file must describe a 2-dimensional algebra\n";
        return kExitInputError;
    }
    Connection nabla = s.connection_on_algebra();
    BilinearForm omega = s.omega ? BilinearForm(*s.omega, Symmetry::antisymmetric)
                                 : canonical_omega2();

    NormalizedFactor norm = normalize_2d(nabla, omega);
    const char* alg = norm.algebra == Algebra2d::r2 ? "abelian" : "aff";
    std::cout << "algebra: " << alg << "\n";
    auto res = norm.algebra == Algebra2d::r2 ? residuals_r2(norm.coeffs)
                                             : residuals_aff(norm.coeffs);
    std::cout << "residuals:";
    bool zero = true;
    for (const auto& r : res) {
        std::cout << " " << r.str();
        zero = zero && r.is_zero();
    }
    std::cout << "\n";
    if (!zero) {
        std::cout << "verdict: not a flat symplectic connection block\n";
        return kExitCheckFailure;
    }
    FamilyTag tag = classify(norm.algebra, norm.coeffs);
    std::cout << "family: " << family_name(tag);
    for (const auto& p : tag.params) std::cout << " " << p.str();
    std::cout << "\n";

    if (!(tag.algebra == Algebra2d::r2 && tag.family == Family2d::zero)) {
        CanonicalWitness w = canonical_witness(tag);
        const char* target = w.target == CanonicalTarget::nabla0   ? "nabla0"
                             : w.target == CanonicalTarget::nabla1 ? "nabla1"
                                                                   : "nabla2";
        std::cout << "canonical target: " << target << "\n";
        if (w.exact_xi) {
            std::cout << "witness (exact):\n" << w.exact_xi->str() << "\n";
        } else {
            std::cout << "witness (float, tolerance 1e-12): [[" << w.xi_float[0][0] << ", "
                      << w.xi_float[0][1] << "], [" << w.xi_float[1][0] << ", "
                      << w.xi_float[1][1] << "]]\n";
        }
    }

    bool complete = family_complete(tag);
    std::cout << "completeness (classified): " << (complete ? "complete" : "incomplete") << "\n";
    ProbeOptions opt;
    opt.horizon = complete ? 100.0 : 8.0;
    Trajectory traj = geodesic_probe(nabla, {1.0, 1.0}, opt);
    std::cout << "geodesic probe: "
              << (traj.verdict == ProbeVerdict::complete_up_to_horizon
                      ? "complete up to horizon"
                      : "blow-up near t = " + std::to_string(traj.blow_up_time))
              << " (heuristic)\n";
    return kExitPass;
}

int cmd_curvature(const std::string& path) {
    StructureFile s = load_structure(path);
    LieAlgebra L = s.algebra();
    Connection nabla = [&] {
        if (s.connection) return Connection(L, *s.connection);
        if (s.metric) return levi_civita(L, BilinearForm(*s.metric, Symmetry::symmetric));
        throw ParseError("curvature: the file needs a connection or a metric block");
    }();

    std::cout << "torsion:\n";
    auto T = torsion(nabla);
    bool tf = true;
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j) {
            if (vec_is_zero(T[i][j])) continue;
            tf = false;
            std::cout << "  T(" << L.basis_labels()[i] << ", " << L.basis_labels()[j] << ") =";
            for (std::size_t k = 0; k < L.dim(); ++k)
                if (!T[i][j][k].is_zero())
                    std::cout << " " << T[i][j][k].str() << "*" << L.basis_labels()[k];
            std::cout << "\n";
        }
    if (tf) std::cout << "  0 (torsion-free)\n";

    std::cout << "curvature:\n";
    bool flat = true;
    for (std::size_t i = 0; i < L.dim(); ++i)
        for (std::size_t j = i + 1; j < L.dim(); ++j) {
            Mat R = curvature(nabla, unit_vec(L.dim(), i), unit_vec(L.dim(), j));
            if (R.is_zero()) continue;
            flat = false;
            std::cout << "  R(" << L.basis_labels()[i] << ", " << L.basis_labels()[j] << ") =\n"
                      << R.str() << "\n";
        }
    if (flat) std::cout << "  0\n";
    std::cout << "verdict: " << (tf ? "torsion-free" : "has torsion") << ", "
              << (flat ? "flat" : "not flat") << "\n";
    return kExitPass;
}

int cmd_geodesic(const std::string& path, std::vector<double> x0, double horizon, double tol,
                 double escape) {
    StructureFile s = load_structure(path);
    LieAlgebra L = s.algebra();
    Connection nabla = [&] {
        if (s.connection) return Connection(L, *s.connection);
        if (s.metric) return levi_civita(L, BilinearForm(*s.metric, Symmetry::symmetric));
        throw ParseError("geodesic: the file needs a connection or a metric block");
    }();
    if (x0.empty()) x0.assign(L.dim(), 1.0);
    if (x0.size() != L.dim()) {
        std::cerr << "geodesic: --x0 must have " << L.dim() << " components\n";
        return kExitInputError;
    }
    ProbeOptions opt;
    opt.horizon = horizon;
    opt.abs_tol = tol;
    opt.escape_threshold = escape;
    Trajectory traj = geodesic_probe(nabla, x0, opt);

    std::cout << "t";
    for (const auto& lbl : L.basis_labels()) std::cout << "," << lbl;
    std::cout << ",norm\n";
    std::cout.precision(15);
    for (const auto& sample : traj.samples) {
        std::cout << sample.t;
        double norm = 0;
        for (double c : sample.state) {
            std::cout << "," << c;
            norm += c * c;
        }
        std::cout << "," << std::sqrt(norm) << "\n";
    }
    std::cerr << (traj.verdict == ProbeVerdict::complete_up_to_horizon
                      ? "verdict: complete up to horizon"
                      : "verdict: blow-up detected near t = " +
                            std::to_string(traj.blow_up_time))
              << " (heuristic)\n";
    return kExitPass;
}

int cmd_paper_suite(std::size_t workers) {
    Report report = catalog_suite(workers);
    std::cout << report.to_text();
    std::size_t fails = 0;
    for (const auto& e : report.entries)
        if (e.status == CheckStatus::fail) ++fails;
    std::cout << report.entries.size() << " checks, " << fails << " failing\n";
    return report.all_passing() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tools for hypersymplectic structures on low-dimensional Lie algebras"};
    app.require_subcommand(1);

    std::string path, out_path;
    std::vector<double> x0;
    double horizon = 100.0, tol = 1e-10, escape = 1e9;
    std::size_t workers = 0;

    auto* verify = app.add_subcommand("verify", "validate a structure file");
    verify->add_option("file", path)->required();

    auto* bicross = app.add_subcommand("bicross", "build a structure from a matched-pair file");
    bicross->add_option("file", path)->required();
    bicross->add_option("-o,--output", out_path, "write the result here instead of stdout");

    auto* classify = app.add_subcommand("classify2d", "classify a 2-d connection file");
    classify->add_option("file", path)->required();

    auto* curv = app.add_subcommand("curvature", "torsion/curvature dump of a connection file");
    curv->add_option("file", path)->required();

    auto* geo = app.add_subcommand("geodesic", "integrate the geodesic flow, CSV output");
    geo->add_option("file", path)->required();
    geo->add_option("--x0", x0, "starting point (defaults to all ones)");
    geo->add_option("--horizon", horizon);
    geo->add_option("--tol", tol);
    geo->add_option("--escape", escape);

    auto* suite = app.add_subcommand("paper-suite", "run the full reproduction battery");
    suite->add_option("--workers", workers, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (verify->parsed()) return cmd_verify(path);
        if (bicross->parsed()) return cmd_bicross(path, out_path);
        if (classify->parsed()) return cmd_classify2d(path);
        if (curv->parsed()) return cmd_curvature(path);
        if (geo->parsed()) return cmd_geodesic(path, x0, horizon, tol, escape);
        if (suite->parsed()) return cmd_paper_suite(workers);
    } catch (const ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const StructureError& e) {
        std::cerr << "validation error (" << e.identity << "): " << e.what() << "\n";
        return kExitCheckFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
