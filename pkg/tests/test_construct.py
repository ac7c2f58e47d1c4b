import pytest

from acmschemes import hilbert, modops, resolve
from acmschemes.construct import (
    HypothesisError,
    NoSectionError,
    NotACMError,
    SyzygyRangeError,
    TransversalityError,
    certify,
    construct_acm,
    construct_from_scheme,
    infinitesimal_double,
    koszul_reconstruct,
    serre_codim2,
    split_dichotomy_test,
    syzygy_module,
    twist_extension,
    verify_hypotheses,
)
from acmschemes.presentations import IdealHandle, ModulePresentation, Seed


# -- syzygy modules -----------------------------------------------------------


def test_syzygy_module_of_tetrahedron(tetra_ideal):
    N = syzygy_module(tetra_ideal, 1)
    assert N.gen_twists == (3,) * 8
    bt = resolve.betti(N.resolution())
    assert bt.to_json() == {"0": {"3": 8}, "1": {"4": 3}}


def test_syzygy_module_range(tetra_ideal):
    with pytest.raises(SyzygyRangeError):
        syzygy_module(tetra_ideal, 2)  # pd(I) = 2, so only j = 1 is allowed
    with pytest.raises(SyzygyRangeError):
        syzygy_module(tetra_ideal, 0)


def test_syzygy_of_all_variables_matches_koszul_tail(R, xyzw):
    irrelevant = IdealHandle(R, list(xyzw))
    N = syzygy_module(irrelevant, R.r - 1)
    bt = resolve.betti(N.resolution())
    kos = resolve.koszul_complex(list(xyzw))
    expected = resolve.BettiTable.of_twists(
        {0: kos.modules[3].twists, 1: kos.modules[4].twists}
    )
    assert bt == expected


# -- hypotheses ---------------------------------------------------------------


def test_hypotheses_five_points(R, five_points_ideal):
    N = syzygy_module(five_points_ideal, 1)
    P = ModulePresentation.free(R, (3, 3, 3))
    rep = verify_hypotheses(P, N)
    assert rep.passed and rep.s == 2 and rep.k == -1
    assert rep.pd_p == 0 and rep.pd_n == 1


def test_hypotheses_four_planar(R, four_planar_ideal):
    N = syzygy_module(four_planar_ideal, 1)
    P = ModulePresentation.free(R, (3,))
    rep = verify_hypotheses(P, N)
    assert rep.passed and rep.k == -2


def test_hypotheses_rank_failure(R, five_points_ideal):
    N = syzygy_module(five_points_ideal, 1)
    rep = verify_hypotheses(N, N)
    assert not rep.rank_ok and not rep.passed


# -- the five-points golden run ------------------------------------------------


@pytest.fixture(scope="session")
def five_points_cert(R, five_points_ideal):
    return construct_from_scheme(five_points_ideal, 1, (3, 3, 3), Seed(1))


def test_five_points_certificate(five_points_cert):
    cert = five_points_cert
    assert cert.k == -1 and cert.s == 2
    assert cert.codim == 2 and cert.degree == 4
    assert cert.betti_id.to_json() == {"1": {"3": 2}, "2": {"5": 1}}
    assert cert.passed, cert.checks


def test_five_points_complete_intersection(five_points_cert):
    # two quadric generators, Cohen-Macaulay type 1 on both sides
    assert cert_gens_degrees(five_points_cert) == [2, 2]
    assert five_points_cert.certify.cm_type_x == 1
    assert five_points_cert.certify.cm_type_d == 1
    assert five_points_cert.certify.gorenstein_x
    assert five_points_cert.certify.gorenstein_d


def cert_gens_degrees(cert):
    res = cert.res_d
    return sorted(res.modules[1].twists)


def test_five_points_generator_bound(five_points_cert):
    # mu(I_D) = 2 against the five generators of N
    assert five_points_cert.res_d.modules[1].rank == 2
    assert five_points_cert.hypothesis.res_n.modules[0].rank == 5
    assert five_points_cert.certify.gen_bound_ok


def test_five_points_containment(five_points_cert, five_points_ideal):
    assert five_points_cert.certify.contains_x
    for g in five_points_cert.ideal.gens:
        assert five_points_ideal.contains_poly(g)


def test_five_points_seed_robust(R, five_points_ideal):
    target = None
    for seed in range(1, 6):
        cert = construct_from_scheme(five_points_ideal, 1, (3, 3, 3), Seed(seed))
        assert cert.passed
        if target is None:
            target = cert.betti_id
        assert cert.betti_id == target


def test_five_points_k_is_degree_difference(five_points_cert):
    rep = five_points_cert.hypothesis
    assert five_points_cert.k == hilbert.sheaf_degree(rep.res_n) - hilbert.sheaf_degree(
        rep.res_p
    )


def test_five_points_chain_map_shape(five_points_cert):
    # the cover-level map has constant entries and there is nothing above it
    gamma = five_points_cert.gamma
    rep = five_points_cert.hypothesis
    for col in gamma.columns:
        for poly in col.components:
            assert poly.is_zero() or poly.degree == 0
    gammas = resolve.lift_chain_map(gamma, rep.res_p, rep.res_n)
    assert len(gammas) == 1  # P is free, so the chain stops at the cover


def test_five_points_cone_shape_before_and_after(five_points_cert):
    rep = five_points_cert.hypothesis
    gammas = resolve.lift_chain_map(five_points_cert.gamma, rep.res_p, rep.res_n)
    cone = resolve.mapping_cone(gammas, rep.res_p, rep.res_n)
    assert cone.modules[0].twists == (3, 3, 3, 3, 3)
    assert cone.modules[1].twists == (3, 3, 3, 5)  # G_1 + F_2 blocks
    minimal = resolve.minimalize(cone)
    assert [m.twists for m in minimal.modules] == [(3, 3), (5,)]


def test_five_points_cokernel_series_matches_target(R, five_points_ideal, five_points_cert):
    N = syzygy_module(five_points_ideal, 1)
    P = ModulePresentation.free(R, (3, 3, 3))
    M = modops.cokernel(five_points_cert.gamma, P, N)
    # the series of I_D(-1) read off its resolution: 2t^3 - t^5 over (1-t)^4
    assert M.hilbert_series() == hilbert.HilbertSeries(R.nvars, {3: 2, 5: -1})


def test_five_points_hom_of_cokernel_is_cyclic(R, five_points_ideal, five_points_cert):
    N = syzygy_module(five_points_ideal, 1)
    P = ModulePresentation.free(R, (3, 3, 3))
    M = modops.cokernel(five_points_cert.gamma, P, N)
    hom = modops.hom_module(M, five_points_cert.k)
    bt = resolve.betti(hom.presentation.resolution())
    assert bt.to_json() == {"0": {"0": 1}}  # free of rank 1, generated in degree 0


def test_certified_ideal_has_trivial_dual(five_points_cert):
    # Hom(I_D, R) = R for codimension >= 2
    pres = five_points_cert.ideal.module_presentation()
    hom = modops.hom_module(pres, 0)
    bt = resolve.betti(hom.presentation.resolution())
    assert bt.to_json() == {"0": {"0": 1}}


# -- the four-planar-points double run ------------------------------------------


def test_four_planar_double_run(R, four_planar_ideal):
    c1 = construct_from_scheme(four_planar_ideal, 1, (3,), Seed(2))
    assert c1.passed
    assert c1.k == -2
    assert c1.betti_id.to_json() == {"1": {"3": 1, "4": 1}, "2": {"5": 1}}
    c2 = construct_from_scheme(four_planar_ideal, 1, (5,), Seed(2))
    assert c2.passed
    assert c2.k == 0
    assert c2.betti_id.to_json() == {"1": {"3": 2, "4": 1}, "2": {"5": 2}}


# -- a codimension-3 run with a non-free P ----------------------------------------


def test_codim_three_construction_in_p4():
    # X a point in P^4; P the first syzygy module of a plane through it.
    # Exercises constrained random maps, two-step chain lifts and the
    # higher-codimension branch of the dualizing-sequence certificate.
    from acmschemes.ring import PolyRing

    ring = PolyRing(32003, ["x", "y", "z", "w", "v"])
    x, y, z, w, v = ring.gens()
    ideal_x = IdealHandle(ring, [x, y, z, w])
    N = syzygy_module(ideal_x, 1)
    P = syzygy_module(IdealHandle(ring, [x, y, z]), 1)
    assert P.pd() == 1 and P.rank() == 2
    target = None
    for seed in (21, 22, 23):
        cert = construct_acm(N, P, Seed(seed), ideal_x=ideal_x)
        assert cert.passed, cert.checks
        assert cert.s == 3 and cert.codim == 3 and cert.k == -1
        assert cert.degree == 1  # the output is a line through the point
        assert sorted(f.degree for f in cert.ideal.gens) == [1, 1, 1]
        if target is None:
            target = cert.betti_id
        assert cert.betti_id == target


# -- certify: the minimal-degree obstruction -------------------------------------


def test_cm_type_obstruction_three_lines(three_lines_ideal, tetra_ideal):
    rep = certify(three_lines_ideal, tetra_ideal)
    assert rep.contains_x  # the three lines pass through all four points
    assert rep.cm_type_x == 3 and rep.cm_type_d == 2
    assert not rep.cm_type_bound_ok


# -- split dichotomy ---------------------------------------------------------------


def test_forced_split_regime_point(point_ideal):
    rep = split_dichotomy_test(point_ideal, (0,), Seed(4), samples=5)
    assert rep.forced_split
    assert rep.psi_zero_additive
    assert rep.all_additive


def test_nonsplit_reachable_in_codim_two(ci22_ideal):
    rep = split_dichotomy_test(ci22_ideal, (4,), Seed(4), samples=5)
    assert not rep.forced_split
    assert rep.psi_zero_additive
    assert rep.any_nonadditive


# -- serre construction ---------------------------------------------------------------


def test_serre_ci22_c0(ci22_ideal):
    out = serre_codim2(ci22_ideal, 0, Seed(3))
    assert out.pd_n == 0 and out.dissocie
    assert out.h2_equals_twist
    assert out.betti_n.to_json() == {"0": {"2": 2}}


def test_serre_ci22_c1(ci22_ideal):
    out = serre_codim2(ci22_ideal, 1, Seed(3))
    assert out.pd_n == 1 and not out.dissocie
    assert not out.h2_equals_twist


def test_serre_no_section(ci22_ideal):
    with pytest.raises(NoSectionError):
        serre_codim2(ci22_ideal, -7, Seed(3))


def test_serre_needs_codim_two(point_ideal):
    with pytest.raises(NotACMError):
        serre_codim2(point_ideal, 0, Seed(3))


def test_serre_on_non_complete_intersection(three_lines_ideal):
    # type-2 curve: two last-level summands, so the extension never goes free
    out = serre_codim2(three_lines_ideal, 1, Seed(8))
    assert out.section_space_dim == 2
    assert out.pd_n == 1 and not out.dissocie and not out.h2_equals_twist


# -- infinitesimal neighborhood ----------------------------------------------------


def test_double_run_contains_square(R, line_ideal):
    rep = infinitesimal_double(line_ideal, 2, Seed(5))
    assert rep.certificate.passed
    assert rep.contained_in_square
    sq = modops.ideal_power(line_ideal, 2)
    assert sq.contains(rep.certificate.ideal)


def test_double_run_ci_square_is_reachable(R, xyzw):
    x, y, *_ = xyzw
    ci = IdealHandle(R, [x * x, y * y])
    rep = infinitesimal_double(ci, 2, Seed(5))
    assert rep.contained_in_square
    assert rep.certificate.ideal.equals(rep.square)


def test_double_run_zero_map_when_degree_too_low(R, line_ideal):
    from acmschemes.construct import RetriesExhaustedError

    with pytest.raises((RetriesExhaustedError, HypothesisError)):
        infinitesimal_double(line_ideal, 0, Seed(5), retries=2)


# -- twist extensions -----------------------------------------------------------------


def test_twist_by_unit_is_isomorphism(R, ci22_ideal):
    out = twist_extension(ci22_ideal, 0, R.one, Seed(6))
    assert out.eps_injective and out.cokernel_series_ok
    assert out.d == 0


def test_twist_by_general_linear_form(R, xyzw, ci22_ideal):
    x, y, z, w = xyzw
    out = twist_extension(ci22_ideal, 0, x + 2 * y + 5 * z + 11 * w, Seed(6))
    assert out.eps_injective and out.cokernel_series_ok
    assert out.d == 1


def test_twist_rejects_form_in_ideal(R, xyzw, ci22_ideal):
    with pytest.raises(TransversalityError):
        twist_extension(ci22_ideal, 0, ci22_ideal.gens[0], Seed(6))


# -- koszul reconstruction --------------------------------------------------------------


def test_koszul_reconstruction_of_line(R, xyzw, line_ideal):
    x, y, z, w = xyzw
    out = koszul_reconstruct(line_ideal, [z])
    assert out.k == -1 and out.k_ok
    assert out.matches
    assert out.reconstructed.equals(line_ideal)


def test_koszul_reconstruction_complete_intersection_cut(R, xyzw):
    # cutting a complete intersection by a completing form recovers it
    x, y, z, w = xyzw
    D = IdealHandle(R, [x * x - y * z, w])
    out = koszul_reconstruct(D, [y])
    assert out.matches and out.k == -1


def test_koszul_identity_when_no_forms(line_ideal):
    out = koszul_reconstruct(line_ideal, [])
    assert out.t == 0 and out.matches and out.k == 0


def test_koszul_reconstruction_codim_three():
    # codimension 3 in P^4: the split-off module P is no longer free
    from acmschemes.ring import PolyRing

    ring = PolyRing(32003, ["x", "y", "z", "w", "v"])
    x, y, z, w, v = ring.gens()
    D = IdealHandle(ring, [x, y, z])
    out = koszul_reconstruct(D, [w])
    assert out.matches and out.k == -1 and out.k_ok
    assert out.reconstructed.equals(D)


def test_koszul_rejects_non_regular(R, xyzw, line_ideal):
    x, y, z, w = xyzw
    from acmschemes.construct import RegularSequenceError

    with pytest.raises((RegularSequenceError, TransversalityError)):
        koszul_reconstruct(line_ideal, [x])  # x cuts D in codimension 2, not 3


# -- certificate internals ----------------------------------------------------------------


def test_certificate_checks_all_present(five_points_cert):
    checks = five_points_cert.checks
    for key in (
        "h1", "h2", "h3", "acm", "cone_equals_direct", "dual_sequence",
        "contains_x", "cm_type_bound", "gen_bound", "summand_bound",
    ):
        assert key in checks and checks[key] is True


def test_hypothesis_error_raised(R, five_points_ideal):
    N = syzygy_module(five_points_ideal, 1)
    P = ModulePresentation.free(R, (3, 3))  # wrong rank: H.3 cannot hold
    with pytest.raises(HypothesisError):
        construct_acm(N, P, Seed(1))
