#include "hslie/catalog_suite.hpp"

#include <cmath>
#include <sstream>

namespace hslie {

namespace {

// ---- battery sample generation --------------------------------------------

Connection random_r2_connection(Rng& rng) {
    // nabla_{e1} e1 = a e1 + b e2, everything else zero: flat and torsion-free
    // for every (a, b); preserves e^1 ^ e^2 iff a = 0.
    Coeff2d co{rng.rational(2, 2), rng.rational(2, 2), 0, 0, 0, 0};
    return connection_from_coeffs(Algebra2d::r2, co);
}

Connection random_aff_connection(Rng& rng) {
    switch (rng.pick(0, 2)) {
        case 0: return canonical_connection(CanonicalTarget::nabla1);
        case 1: return canonical_connection(CanonicalTarget::nabla2);
        default: {
            FamilyTag tag{Algebra2d::aff, rng.pick(0, 1) ? Family2d::a : Family2d::b,
                          {rng.rational(2, 2)}};
            return make_family(tag).nabla;
        }
    }
}

}  // namespace

std::optional<BatterySample> battery_sample(Rng& rng) {
    bool u_aff = rng.pick(0, 3) == 0;  // bias toward r2 factors, which carry the
    bool v_aff = rng.pick(0, 3) == 0;  // non-parallel draws
    Connection nu = u_aff ? random_aff_connection(rng) : random_r2_connection(rng);
    Connection nv = v_aff ? random_aff_connection(rng) : random_r2_connection(rng);

    Mat phi{{rng.nonzero_rational(2, 2), Rational(0)}, {rng.rational(2, 2), Rational(0)}};
    phi(1, 1) = Rational(1) / phi(0, 0);
    if (rng.pick(0, 3) == 0) {
        // occasionally try a fully random gluing
        phi = Mat{{rng.rational(2, 2), rng.rational(2, 2)},
                  {rng.rational(2, 2), rng.rational(2, 2)}};
        if (det(phi).is_zero()) return std::nullopt;
    }

    Rational lambda = rng.nonzero_rational(2, 2);
    Mat w{{Rational(0), lambda}, {-lambda, Rational(0)}};
    BilinearForm omega_u(w, Symmetry::antisymmetric);
    Mat phi_inv = *inverse(phi);
    BilinearForm omega_v(phi_inv.transpose() * w * phi_inv, Symmetry::antisymmetric);

    FactorData u{nu.algebra(), nu, omega_u};
    FactorData v{nv.algebra(), nv, omega_v};

    Representations reps = build_representations(u.nabla, v.nabla, phi);
    if (!check_matched_pair(u.algebra, v.algebra, reps).empty()) return std::nullopt;

    BatterySample sample{assemble_bicrossproduct(u, v, phi),
                         parallel_form_check(u.nabla, u.omega),
                         parallel_form_check(v.nabla, v.omega)};
    return sample;
}

namespace {

// ---- helpers for the suite entries -----------------------------------------

ReportEntry pass_fail(std::string id, bool ok, std::string witness = "") {
    return {std::move(id), ok ? CheckStatus::pass : CheckStatus::fail,
            ok ? "" : std::move(witness)};
}

std::vector<HalfAngle> halfangle_samples(std::size_t count) {
    std::vector<HalfAngle> out;
    out.emplace_back(Rational(1), Rational(0));  // angle 0
    out.emplace_back(Rational(0), Rational(1));  // angle pi
    long num = 1, den = 2;
    while (out.size() < count) {
        out.push_back(HalfAngle::from_tangent(Rational(num, den)));
        ++num;
        if (num == den) ++num;
        if (num > 4) { num = 1; den += 1; }
    }
    return out;
}

bool family_soundness(Algebra2d alg, std::size_t draws, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t n = 0; n < draws; ++n) {
        FamilyTag tag;
        tag.algebra = alg;
        if (alg == Algebra2d::r2) {
            switch (rng.pick(0, 2)) {
                case 0: tag.family = Family2d::a; tag.params = {rng.nonzero_rational(6, 3)}; break;
                case 1: tag.family = Family2d::b; tag.params = {rng.nonzero_rational(6, 3)}; break;
                default:
                    tag.family = Family2d::c;
                    tag.params = {rng.nonzero_rational(6, 3), rng.nonzero_rational(6, 3)};
            }
        } else {
            tag.family = rng.pick(0, 1) ? Family2d::a : Family2d::b;
            tag.params = {rng.rational(6, 3)};
        }
        Family2dData data = make_family(tag);  // re-verifies residuals/flat/torsion/parallel
        Coeff2d co = coeffs_of_connection(data.nabla, alg);
        auto res = alg == Algebra2d::r2 ? residuals_r2(co) : residuals_aff(co);
        for (const auto& r : res)
            if (!r.is_zero()) return false;
    }
    return true;
}

// every zero-residual block on the coefficient grid classifies and round-trips
bool grid_completeness(Algebra2d alg, long max_num, long max_den, std::size_t* checked) {
    std::vector<Rational> values;
    for (long den = 1; den <= max_den; ++den)
        for (long num = -max_num; num <= max_num; ++num) {
            Rational r(num, den);
            bool seen = false;
            for (const auto& v : values)
                if (v == r) { seen = true; break; }
            if (!seen) values.push_back(r);
        }

    *checked = 0;
    for (const auto& a : values)
        for (const auto& c : values) {
            // parallelism forces d = -a, h = -c; iterate the free coefficients
            for (const auto& b : values)
                for (const auto& g : values) {
                    Coeff2d co{a, b, c, -a, g, -c};
                    auto res = alg == Algebra2d::r2 ? residuals_r2(co) : residuals_aff(co);
                    bool zero = true;
                    for (const auto& r : res)
                        if (!r.is_zero()) { zero = false; break; }
                    if (!zero) continue;
                    ++*checked;
                    FamilyTag tag = classify(alg, co);  // throws if unclassifiable
                    Family2dData data = make_family(tag);
                    Coeff2d back = coeffs_of_connection(data.nabla, alg);
                    if (back.a != co.a || back.b != co.b || back.c != co.c ||
                        back.d != co.d || back.g != co.g || back.h != co.h)
                        return false;
                }
        }
    return true;
}

bool witness_checks_r2() {
    // perfect-cube parameters: exact witnesses
    for (long alpha : {8, -27, 1}) {
        for (Family2d fam : {Family2d::a, Family2d::b}) {
            FamilyTag tag{Algebra2d::r2, fam, {Rational(alpha)}};
            Family2dData data = make_family(tag);
            CanonicalWitness w = canonical_witness(tag);
            if (!w.exact_xi) return false;
            Connection target = canonical_connection(w.target);
            if (!verify_symplectic_equivalence(*w.exact_xi, data.nabla, data.omega, target,
                                               canonical_omega2()))
                return false;
        }
    }
    {
        // family (c) with a rational cube root of beta
        FamilyTag tag{Algebra2d::r2, Family2d::c, {Rational(1), Rational(8)}};
        Family2dData data = make_family(tag);
        CanonicalWitness w = canonical_witness(tag);
        if (!w.exact_xi) return false;
        if (!verify_symplectic_equivalence(*w.exact_xi, data.nabla, data.omega,
                                           canonical_connection(CanonicalTarget::nabla0),
                                           canonical_omega2()))
            return false;
    }
    // non-cube: float witness at 1e-12
    {
        FamilyTag tag{Algebra2d::r2, Family2d::a, {Rational(5)}};
        CanonicalWitness w = canonical_witness(tag);
        if (w.exact_xi) return false;
        double r = std::cbrt(5.0);
        // xi nabla_{e1} e1 = nabla0_{xi e1} xi e1: 5 * (1/r) = r^2 -> exact identity
        double lhs = 5.0 / r, rhs = r * r;
        if (std::fabs(lhs - rhs) > 1e-12) return false;
        if (std::fabs(w.xi_float[0][0] - r) > 1e-15) return false;
    }
    return true;
}

bool witness_checks_aff(Rng& rng) {
    for (int n = 0; n < 50; ++n) {
        Rational alpha = rng.rational(8, 4);
        for (Family2d fam : {Family2d::a, Family2d::b}) {
            FamilyTag tag{Algebra2d::aff, fam, {alpha}};
            Family2dData data = make_family(tag);
            CanonicalWitness w = canonical_witness(tag);
            if (!w.exact_xi) return false;
            if (!verify_symplectic_equivalence(*w.exact_xi, data.nabla, data.omega,
                                               canonical_connection(w.target),
                                               canonical_omega2()))
                return false;
        }
    }
    return true;
}

struct CaseSampling {
    CaseId id;
    std::vector<CaseSpec> specs;
};

std::vector<CaseSampling> case_samples() {
    std::vector<CaseSampling> out;
    for (CaseId id : {CaseId::A1, CaseId::A2, CaseId::A3, CaseId::A4, CaseId::B1, CaseId::B2,
                      CaseId::B3, CaseId::B4, CaseId::B1p, CaseId::B2p, CaseId::B3p,
                      CaseId::B4p, CaseId::C1, CaseId::C3}) {
        CaseSampling cs{id, {}};
        if (case_has_params(id)) {
            cs.specs.push_back({id, Rational(1), Rational(0)});
            cs.specs.push_back({id, Rational(2), Rational(-1, 2)});
            cs.specs.push_back({id, Rational(-3, 4), Rational(5, 3)});
        } else {
            cs.specs.push_back({id});
        }
        out.push_back(std::move(cs));
    }
    return out;
}

Rational theta_cos_of_E(Algebra4 target, const Mat& E) {
    // angle block read off an invariant subspace: g0h: center (positions 2,3);
    // g1h/g2h: quotient by the ideal at positions 2,3 (upper-left block)
    return target == Algebra4::g0h ? E(2, 2) : E(0, 0);
}

Rational theta_sin_of_E(Algebra4 target, const Mat& E) {
    return target == Algebra4::g0h ? E(3, 2) : E(1, 0);
}

ReportEntry run_case(const CaseSampling& cs) {
    std::string id = std::string("4d/case/") + case_name(cs.id);
    for (const auto& spec : cs.specs) {
        CaseResult res = construct_case(spec);  // throws on any structural failure

        // the construction already verified Jacobi, the full structure
        // validation and the basis change; check the displayed eigenspaces
        Splitting sp = split(res.bicross.structure.cp());
        LieAlgebra target = catalog_algebra(res.target);
        std::vector<Vec> plus_moved, minus_moved;
        for (const auto& v : sp.plus.vectors()) plus_moved.push_back(res.basis_change * v);
        for (const auto& v : sp.minus.vectors()) minus_moved.push_back(res.basis_change * v);
        if (!(Subspace(target, plus_moved) == Subspace(target, res.plus_display)))
            return pass_fail(id, false, "plus eigenspace differs from the displayed span");
        if (!(Subspace(target, minus_moved) == Subspace(target, res.minus_display)))
            return pass_fail(id, false, "minus eigenspace differs from the displayed span");

        // transported J must equal the catalog J exactly
        Mat P = res.basis_change;
        Mat P_inv = *inverse(P);
        Mat J_cat = P * res.bicross.structure.cp().J() * P_inv;
        if (J_cat != canonical_J(res.target))
            return pass_fail(id, false, "transported J differs from the catalog matrix");

        // expected angle, read exactly off the transported E: the invariant
        // 2-plane (center for g0h, the complement of the ideal otherwise)
        // carries the full reflection block
        Mat E_cat = P * res.bicross.structure.cp().E() * P_inv;
        if (res.expected_family == CanonicalFamily::e0 ||
            res.expected_family == CanonicalFamily::e1_theta ||
            res.expected_family == CanonicalFamily::e2_theta) {
            std::size_t o = res.target == Algebra4::g0h ? 2 : 0;   // block offset
            std::size_t co = res.target == Algebra4::g0h ? 0 : 2;  // complementary offset
            if (E_cat(o, o) != res.expected_cos || E_cat(o + 1, o) != res.expected_sin ||
                E_cat(o, o + 1) != res.expected_sin || E_cat(o + 1, o + 1) != -res.expected_cos)
                return pass_fail(id, false, "transported E has the wrong angle block");
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j)
                    if (!E_cat(o + i, co + j).is_zero())
                        return pass_fail(id, false,
                                         "transported E does not preserve the invariant plane");
            if (res.expected_d == 0 && E_cat != canonical_E_full_angle(res.target,
                                                                       res.expected_family,
                                                                       res.expected_cos,
                                                                       res.expected_sin, 0))
                return pass_fail(id, false, "d = 0 case should land on the catalog matrix");
        }
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_c2_refutation() {
    std::string id = "4d/case/C2-refutation";
    FactorData u{named_algebra("aff"), canonical_connection(CanonicalTarget::nabla1),
                 canonical_omega2()};
    FactorData v{named_algebra("aff"), canonical_connection(CanonicalTarget::nabla2),
                 canonical_omega2()};
    std::size_t points = 0;
    for (long an = -4; an <= 4; ++an) {
        if (an == 0) continue;
        for (long bn = -4; bn <= 4; ++bn) {
            Rational a(an, 2), b(bn, 2);
            if (a.is_zero()) continue;
            Mat phi{{a, Rational(0)}, {b, Rational(1) / a}};
            auto bad = check_matched_pair(u.algebra, v.algebra,
                                          build_representations(u.nabla, v.nabla, phi));
            auto bad_rev = check_matched_pair(v.algebra, u.algebra,
                                              build_representations(v.nabla, u.nabla, phi));
            if (bad.empty() || bad_rev.empty())
                return pass_fail(id, false,
                                 "a compatible gluing exists at a = " + a.str() +
                                     ", b = " + b.str());
            ++points;
        }
    }
    return pass_fail(id, points > 0, "empty grid");
}

ReportEntry run_phi_admissibility() {
    // in the two-sided cases the matched-pair identities must reject every
    // sampled gluing that is not lower triangular with det 1
    std::string id = "4d/phi-admissibility";
    std::vector<FactorData> factors = {
        {named_algebra("R2"), canonical_connection(CanonicalTarget::nabla0),
         canonical_omega2()},
        {named_algebra("aff"), canonical_connection(CanonicalTarget::nabla1),
         canonical_omega2()},
        {named_algebra("aff"), canonical_connection(CanonicalTarget::nabla2),
         canonical_omega2()}};
    for (const auto& u : factors) {
        for (long a = -2; a <= 2; ++a)
            for (long b = -2; b <= 2; ++b)
                for (long c = -2; c <= 2; ++c)
                    for (long d = -2; d <= 2; ++d) {
                        Mat phi{{Rational(a), Rational(c)}, {Rational(b), Rational(d)}};
                        if (det(phi).is_zero()) continue;
                        bool admissible_shape =
                            (c == 0 && Rational(a) * Rational(d) == Rational(1));
                        auto bad = check_matched_pair(
                            u.algebra, u.algebra,
                            build_representations(u.nabla, u.nabla, phi));
                        bool omega_ok = det(phi) == Rational(1);
                        if ((bad.empty() && omega_ok) != admissible_shape)
                            return pass_fail(id, false,
                                             "gluing admissibility mismatch at phi = [[" +
                                                 std::to_string(a) + "," + std::to_string(c) +
                                                 "],[" + std::to_string(b) + "," +
                                                 std::to_string(d) + "]]");
                    }
    }
    return {id, CheckStatus::pass, ""};
}

std::vector<CanonicalCPSSpec> metric_table_specs(const HalfAngle& h) {
    return {CanonicalCPSSpec::r4(),
            CanonicalCPSSpec::g0h(h),
            CanonicalCPSSpec::g1h_theta(h, 0),
            CanonicalCPSSpec::g1h_theta(h, 1),
            CanonicalCPSSpec::g1h_shear(),
            CanonicalCPSSpec::g2h_theta(h, 0),
            CanonicalCPSSpec::g2h_theta(h, 1),
            CanonicalCPSSpec::g2h_shear()};
}

const char* metric_row_name(std::size_t i) {
    static const char* names[] = {"r4",      "g0h",      "g1h-d0",    "g1h-d1",
                                  "g1h-g1",  "g2h-d0",   "g2h-d1",    "g2h-g1"};
    return names[i];
}

// expected flatness per the source table ({row}: flat / flat iff angle = pi)
bool table_expected_flat(std::size_t row, const HalfAngle& h) {
    switch (row) {
        case 3: case 6: return h.c().is_zero();  // d = 1 families: flat iff c = 0
        default: return true;
    }
}

bool table_expected_complete(std::size_t row) { return row <= 1; }  // r4 and g0h only

ReportEntry run_metric_flatness(std::size_t row) {
    std::string id = std::string("metrics/") + metric_row_name(row) + "/flat";
    for (const auto& h : halfangle_samples(6)) {
        CanonicalCPSSpec spec = metric_table_specs(h)[row];
        CurvatureProfile prof = curvature_profile(spec);
        bool expected = table_expected_flat(row, h);
        if (prof.flat != expected) {
            std::ostringstream w;
            w << "computed " << (prof.flat ? "flat" : "nonflat") << " but the table says "
              << (expected ? "flat" : "nonflat") << "; R(U,V) entry = "
              << prof.distinguished_entry.str();
            return pass_fail(id, false, w.str());
        }
        if (spec.family == CanonicalFamily::e1_shear || spec.family == CanonicalFamily::e2_shear)
            break;  // angle-independent rows need one sample
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_metric_completeness(std::size_t row) {
    std::string id = std::string("metrics/") + metric_row_name(row) + "/completeness";
    HalfAngle h = HalfAngle::from_tangent(Rational(1, 3));
    CanonicalCPSSpec spec = metric_table_specs(h)[row];
    HSStructure hs = canonical_metric(spec);
    bool expected_complete = table_expected_complete(row);

    // exact certificate where an eigenspace factor is an incomplete family
    RestrictionCompleteness rc = restriction_completeness(hs);
    if (rc.incomplete_certified == expected_complete)
        return pass_fail(id, false, "restriction lookup disagrees with the table");

    Connection nabla = levi_civita(hs.algebra(), hs.metric());
    ProbeOptions opt;
    if (expected_complete) {
        // several starts, all of which must survive to the horizon
        opt.horizon = 100.0;
        for (const auto& x0 : std::vector<std::vector<double>>{{1.0, 0.5, -0.75, 1.25},
                                                               {1, 1, 1, 1},
                                                               {-2, 0.25, 3, -0.5}}) {
            if (geodesic_probe(nabla, x0, opt).verdict != ProbeVerdict::complete_up_to_horizon)
                return pass_fail(id, false, "geodesic probe disagrees with the table");
        }
        return {id, CheckStatus::heuristic, ""};
    }

    // incomplete rows: probe along the e1 direction of an incomplete factor;
    // the flow preserves the eigenspaces, so the 2-d blow-up is reproduced
    for (bool plus : {true, false}) {
        const FamilyTag& tag = plus ? rc.plus_tag : rc.minus_tag;
        if (family_complete(tag)) continue;
        RestrictedFactor f = plus ? plus_factor(hs.cp()) : minus_factor(hs.cp());
        FormTriple t = kaehler_forms(hs);
        NormalizedFactor norm = normalize_2d(f.nabla, restrict_form(t.omega1, f.space));
        Vec e1_ambient = zero_vec(hs.dim());
        for (std::size_t j = 0; j < f.space.dim(); ++j)
            e1_ambient = vec_add(e1_ambient,
                                 vec_scale(norm.new_basis(j, 0), f.space.vectors()[j]));
        std::vector<double> x0;
        for (const auto& c : e1_ambient) x0.push_back(c.to_double());
        opt.horizon = 8.0;
        Trajectory traj = geodesic_probe(nabla, x0, opt);
        if (traj.verdict != ProbeVerdict::blow_up_detected)
            return pass_fail(id, false, "geodesic probe disagrees with the table");
        return {id, CheckStatus::pass, ""};
    }
    return pass_fail(id, false, "no incomplete factor found");
}

ReportEntry run_curvature_entries(Algebra4 alg) {
    std::string id = std::string("metrics/curvature/") +
                     (alg == Algebra4::g1h ? "g1h-d1" : "g2h-d1");
    std::vector<HalfAngle> hs = {HalfAngle(Rational(3, 5), Rational(4, 5)),
                                 HalfAngle(Rational(0), Rational(1)),
                                 HalfAngle(Rational(5, 13), Rational(12, 13))};
    for (const auto& h : hs) {
        CanonicalCPSSpec spec = alg == Algebra4::g1h ? CanonicalCPSSpec::g1h_theta(h, 1)
                                                     : CanonicalCPSSpec::g2h_theta(h, 1);
        CurvatureProfile prof = curvature_profile(spec);  // asserts the closed form
        Rational expect = alg == Algebra4::g1h ? Rational(6) * h.c()
                                               : Rational(6) * h.c() * h.c();
        if (prof.distinguished_entry != expect)
            return pass_fail(id, false, "entry " + prof.distinguished_entry.str() +
                                            " != " + expect.str());
        if (!prof.other_pairs_zero)
            return pass_fail(id, false, "curvature does not vanish on the other basis pairs");
        if (prof.flat != h.c().is_zero())
            return pass_fail(id, false, "flat <=> cos(t/2) = 0 violated");
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_metric_uniqueness() {
    std::string id = "metrics/uniqueness";
    for (const auto& h : halfangle_samples(20)) {
        for (const auto& spec :
             {CanonicalCPSSpec::g0h(h), CanonicalCPSSpec::g1h_theta(h, 0),
              CanonicalCPSSpec::g1h_theta(h, 1), CanonicalCPSSpec::g2h_theta(h, 0),
              CanonicalCPSSpec::g2h_theta(h, 1)}) {
            auto basis = compatible_metric_space(canonical_cps(spec));
            if (basis.size() != 1)
                return pass_fail(id, false, "compatible space dimension != 1");
        }
    }
    for (const auto& spec : {CanonicalCPSSpec::r4(), CanonicalCPSSpec::g1h_shear(),
                             CanonicalCPSSpec::g2h_shear()}) {
        auto basis = compatible_metric_space(canonical_cps(spec));
        if (basis.size() != 1) return pass_fail(id, false, "compatible space dimension != 1");
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_coordinate_match(std::size_t row) {
    std::string id = std::string("metrics/coordinate/") + metric_row_name(row);
    HalfAngle h = HalfAngle::from_tangent(Rational(2, 5));
    CanonicalCPSSpec spec = metric_table_specs(h)[row];
    std::vector<std::array<double, 4>> points = {{0, 0, 0, 0},
                                                 {0.3, -1.2, 0.7, 2.0},
                                                 {-0.8, 0.4, -0.1, 0.6},
                                                 {1.1, 2.2, -3.1, 0.2},
                                                 {-0.2, -0.6, 1.4, -1.9}};
    for (const auto& p : points) {
        Mat4d got = metric_at_point(spec, p);
        Mat4d want = coordinate_metric_reference(spec, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::fabs(got[i][j] - want[i][j]) > 1e-12)
                    return pass_fail(id, false, "coordinate metric mismatch");
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_headline(int which) {
    std::string id = "headline/" + std::to_string(which);
    CanonicalCPSSpec spec = headline_spec(which);
    double lambda = headline_lambda(which).to_double();
    std::vector<std::array<double, 4>> points = {{0, 0, 0, 0},
                                                 {0.25, 1.5, -0.5, 0.75},
                                                 {-1.0, 0.1, 0.9, -0.4},
                                                 {0.6, -2.0, 1.3, 2.1},
                                                 {1.4, 0.8, -1.1, -0.3}};
    for (const auto& p : points) {
        Mat4d got = metric_at_point(spec, p);
        Mat4d want = headline_metric(which, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
                if (std::fabs(got[i][j] - lambda * want[i][j]) > 1e-12)
                    return pass_fail(id, false, "coordinate mismatch against the showcase form");
    }
    CurvatureProfile prof = curvature_profile(spec);
    bool expect_flat = which != 3;
    if (prof.flat != expect_flat) return pass_fail(id, false, "flatness mismatch");
    HSStructure hs = canonical_metric(spec);
    bool incomplete = restriction_completeness(hs).incomplete_certified;
    if ((which == 1) != !incomplete)
        return pass_fail(id, false, "completeness certificate mismatch");
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_closedness_battery() {
    std::string id = "structure/closedness-battery";
    Rng rng(0x5eed5eedULL);
    std::size_t found = 0, nonparallel = 0;
    while (found < 120) {
        auto sample = battery_sample(rng);
        if (!sample) continue;
        ++found;
        if (!sample->parallel_u || !sample->parallel_v) ++nonparallel;
        ClosednessReport rep = closedness_battery(sample->result.structure);
        if (!battery_pattern_holds(rep))
            return pass_fail(id, false, "closedness pattern violated");
        bool hypo = sample->parallel_u && sample->parallel_v;
        if (hypo != rep.d_omega1_zero)
            return pass_fail(id, false, "parallel hypotheses do not match closedness");
    }
    if (nonparallel == 0) return pass_fail(id, false, "sampling never drew a non-parallel factor");
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_levi_civita_battery() {
    std::string id = "structure/levi-civita-parallel";
    HalfAngle h = HalfAngle::from_tangent(Rational(1, 2));
    for (const auto& spec : metric_table_specs(h)) {
        HSStructure hs = canonical_metric(spec);
        Connection nabla = levi_civita(hs.algebra(), hs.metric());
        const Mat& J = hs.cp().J();
        const Mat& E = hs.cp().E();
        std::size_t n = hs.dim();
        for (std::size_t i = 0; i < n; ++i) {
            Mat ni = nabla.covariant_matrix(unit_vec(n, i));
            if (ni * J != J * ni || ni * E != E * ni)
                return pass_fail(id, false, "Levi-Civita does not annihilate J and E");
        }
        FormTriple t = kaehler_forms(hs);
        for (const auto* w : {&t.omega1, &t.omega2, &t.omega3})
            if (!parallel_form_check(nabla, *w))
                return pass_fail(id, false, "a form is not Levi-Civita parallel");
        // the eigenspace split is preserved
        Splitting sp = split(hs.cp());
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& v : sp.plus.vectors())
                if (!sp.plus.contains(nabla.apply(unit_vec(n, i), v)))
                    return pass_fail(id, false, "Levi-Civita leaves the plus eigenspace");
        for (std::size_t i = 0; i < n; ++i)
            for (const auto& v : sp.minus.vectors())
                if (!sp.minus.contains(nabla.apply(unit_vec(n, i), v)))
                    return pass_fail(id, false, "Levi-Civita leaves the minus eigenspace");
    }
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_coframe_checks() {
    std::string id = "coframes/structure-equations";
    for (Algebra4 g : {Algebra4::r4, Algebra4::g0h, Algebra4::g1h, Algebra4::g2h})
        if (!coframe_consistent(g)) return pass_fail(id, false, "structure equations violated");
    return {id, CheckStatus::pass, ""};
}

ReportEntry run_probe_checks() {
    std::string id = "2d/completeness/probe";
    ProbeOptions opt;
    opt.horizon = 100.0;
    Trajectory t0 = geodesic_probe(canonical_connection(CanonicalTarget::nabla0), {1.0, 0.0},
                                   opt);
    if (t0.verdict != ProbeVerdict::complete_up_to_horizon)
        return pass_fail(id, false, "the flat abelian connection probed incomplete");
    opt.horizon = 2.0;
    Trajectory t1 = geodesic_probe(canonical_connection(CanonicalTarget::nabla1), {1.0, 1.0},
                                   opt);
    if (t1.verdict != ProbeVerdict::blow_up_detected ||
        std::fabs(t1.blow_up_time - 1.0) > 0.05)
        return pass_fail(id, false, "expected blow-up near t = 1");
    Trajectory t2 = geodesic_probe(canonical_connection(CanonicalTarget::nabla2), {1.0, 1.0},
                                   opt);
    if (t2.verdict != ProbeVerdict::blow_up_detected)
        return pass_fail(id, false, "expected blow-up for the second aff connection");
    return {id, CheckStatus::heuristic, ""};
}

}  // namespace

Report catalog_suite(std::size_t workers) {
    std::vector<Check> checks;
    auto add = [&checks](std::string id, std::function<ReportEntry()> fn) {
        checks.push_back({std::move(id), std::move(fn)});
    };

    add("2d/r2/soundness", [] {
        return pass_fail("2d/r2/soundness", family_soundness(Algebra2d::r2, 200, 11),
                         "a family draw failed re-verification");
    });
    add("2d/aff/soundness", [] {
        return pass_fail("2d/aff/soundness", family_soundness(Algebra2d::aff, 200, 12),
                         "a family draw failed re-verification");
    });
    add("2d/r2/grid-completeness", [] {
        std::size_t n = 0;
        bool ok = grid_completeness(Algebra2d::r2, 2, 2, &n);
        return pass_fail("2d/r2/grid-completeness", ok && n > 0, "grid round-trip failed");
    });
    add("2d/aff/grid-completeness", [] {
        std::size_t n = 0;
        bool ok = grid_completeness(Algebra2d::aff, 2, 2, &n);
        return pass_fail("2d/aff/grid-completeness", ok && n > 0, "grid round-trip failed");
    });
    add("2d/witnesses/r2", [] {
        return pass_fail("2d/witnesses/r2", witness_checks_r2(), "witness verification failed");
    });
    add("2d/witnesses/aff", [] {
        Rng rng(13);
        return pass_fail("2d/witnesses/aff", witness_checks_aff(rng),
                         "witness verification failed");
    });
    add("2d/separation/annihilator", [] {
        bool ok =
            parallel_annihilator_dim(canonical_connection(CanonicalTarget::nabla1)) == 1 &&
            parallel_annihilator_dim(canonical_connection(CanonicalTarget::nabla2)) == 0;
        return pass_fail("2d/separation/annihilator", ok, "annihilator dimensions wrong");
    });
    add("2d/completeness/probe", run_probe_checks);

    for (const auto& cs : case_samples()) {
        add(std::string("4d/case/") + case_name(cs.id), [cs] { return run_case(cs); });
    }
    add("4d/case/C2-refutation", run_c2_refutation);
    add("4d/phi-admissibility", run_phi_admissibility);

    add("metrics/uniqueness", run_metric_uniqueness);
    for (std::size_t row = 0; row < 8; ++row) {
        add(std::string("metrics/") + metric_row_name(row) + "/flat",
            [row] { return run_metric_flatness(row); });
        add(std::string("metrics/") + metric_row_name(row) + "/completeness",
            [row] { return run_metric_completeness(row); });
        add(std::string("metrics/coordinate/") + metric_row_name(row),
            [row] { return run_coordinate_match(row); });
    }
    add("metrics/curvature/g1h-d1", [] { return run_curvature_entries(Algebra4::g1h); });
    add("metrics/curvature/g2h-d1", [] { return run_curvature_entries(Algebra4::g2h); });
    for (int which : {1, 2, 3})
        add("headline/" + std::to_string(which), [which] { return run_headline(which); });

    add("structure/closedness-battery", run_closedness_battery);
    add("structure/levi-civita-parallel", run_levi_civita_battery);
    add("coframes/structure-equations", run_coframe_checks);

    add("equivalence/angle-distinctness", [] {
        return ReportEntry{"equivalence/angle-distinctness", CheckStatus::asserted_not_verified,
                           "pairwise non-equivalence across angle values is not re-derived; "
                           "the canonical-form witnesses are verified instead"};
    });
    add("metrics/g0h/isometric-to-flat", [] {
        return ReportEntry{"metrics/g0h/isometric-to-flat", CheckStatus::asserted_not_verified,
                           "the isometry witnesses onto the flat neutral space are not "
                           "constructed; flatness and completeness are verified"};
    });

    return run_checks(checks, workers);
}

}  // namespace hslie
