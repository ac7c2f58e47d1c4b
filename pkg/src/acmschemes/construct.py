"""Construction pipelines for ACM schemes and their certification.

The central routine builds, from torsion-free modules N and P satisfying the
numerical hypotheses, a random injective map gamma: P -> N whose cokernel is
realized as a saturated ideal I_D twisted by k; the run is certified
(codimension, ACM-ness, mapping-cone agreement, containment, Cohen-Macaulay
types, dualizing sequence) and everything is reported in a certificate.
Variants cover the syzygy route starting from an ACM scheme, the
codimension-2 section construction, push-out splitting tests, doubled-ideal
runs, hypersurface twists of extensions and Koszul reconstruction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import hilbert, modops, resolve
from .freemod import FreeElem, GradedFreeModule, GradedMap
from .gb import buchberger, submodule_contains
from .hilbert import H3Result, check_H3
from .presentations import IdealHandle, ModulePresentation, PresentationError, Seed
from .resolve import BettiTable, Resolution
from .ring import Polynomial, RingError


class ConstructError(RingError):
    pass


class HypothesisError(ConstructError):
    def __init__(self, report):
        self.report = report
        super().__init__(f"hypotheses fail: {report}")


class RetriesExhaustedError(ConstructError):
    def __init__(self, failures):
        self.failures = list(failures)
        super().__init__(
            "retries exhausted; failure modes: " + "; ".join(self.failures[-4:])
        )


class SyzygyRangeError(ConstructError):
    pass


class NoSectionError(ConstructError):
    pass


class FactorizationError(ConstructError):
    pass


class TransversalityError(ConstructError):
    pass


class RegularSequenceError(ConstructError):
    pass


class NotACMError(ConstructError):
    pass


# ---------------------------------------------------------------------------
# reports


@dataclass
class HypothesisReport:
    pd_p: int
    pd_n: int
    s: int
    torsion_free_p: bool
    torsion_free_n: bool
    h1: bool
    h2: bool
    h3: bool
    k: int
    rank_ok: bool
    p_degree: int
    passed: bool
    h3data: H3Result = field(repr=False)
    res_p: Resolution = field(repr=False)
    res_n: Resolution = field(repr=False)


@dataclass
class CertifyReport:
    contains_x: bool | None
    cm_type_x: int | None
    cm_type_d: int
    gorenstein_x: bool | None
    gorenstein_d: bool
    cm_type_bound_ok: bool | None
    gen_bound_ok: bool | None
    summand_bound_ok: bool | None


@dataclass
class ConstructionCertificate:
    seed: Seed
    retries_allowed: int
    attempts_used: int
    k: int
    s: int
    codim: int
    degree: int
    acm: bool
    codim_ok: bool
    cone_equals_direct: bool
    h3_poly_is_hilbert: bool
    dual_sequence_ok: bool | None
    gamma: GradedMap = field(repr=False)
    ideal: IdealHandle = field(repr=False)
    betti_p: BettiTable = field(repr=False)
    betti_n: BettiTable = field(repr=False)
    betti_id: BettiTable = field(repr=False)  # of I_D(k), ideal-rooted
    hypothesis: HypothesisReport = field(repr=False)
    certify: CertifyReport = field(repr=False)
    res_d: Resolution = field(repr=False)

    @property
    def checks(self) -> dict:
        out = {
            "h1": self.hypothesis.h1,
            "h2": self.hypothesis.h2,
            "h3": self.hypothesis.h3,
            "codim_equals_s": self.codim_ok,
            "acm": self.acm,
            "cone_equals_direct": self.cone_equals_direct,
            "h3_poly_is_hilbert": self.h3_poly_is_hilbert,
        }
        c = self.certify
        if c.gen_bound_ok is not None:
            out["gen_bound"] = c.gen_bound_ok
        if c.summand_bound_ok is not None:
            out["summand_bound"] = c.summand_bound_ok
        if c.contains_x is not None:
            out["contains_x"] = c.contains_x
            out["cm_type_bound"] = c.cm_type_bound_ok
        if self.dual_sequence_ok is not None:
            out["dual_sequence"] = self.dual_sequence_ok
        return out

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


# ---------------------------------------------------------------------------
# building blocks


def minimal_quotient_resolution(ideal: IdealHandle) -> Resolution:
    return ideal.quotient_presentation().resolution()


def require_acm(ideal: IdealHandle, res: Resolution | None = None):
    """Minimal resolution of R/I together with its invariants; ACM enforced."""
    if res is None:
        res = minimal_quotient_resolution(ideal)
    inv = hilbert.invariants(hilbert.hilbert_series(res))
    if res.proj_dim() != inv.codim:
        raise NotACMError(
            f"scheme is not ACM: pd {res.proj_dim()} != codim {inv.codim}"
        )
    return res, inv


def syzygy_module(ideal_x: IdealHandle, j: int,
                  res_x: Resolution | None = None) -> ModulePresentation:
    """The j-th syzygy module of a saturated ideal, presented minimally.

    Generators and relations are the tail of the minimal free resolution;
    the embedding into the previous free module is retained.
    """
    if res_x is None:
        res_x = minimal_quotient_resolution(ideal_x)
    pd_ideal = res_x.proj_dim() - 1
    if not 1 <= j <= pd_ideal - 1:
        raise SyzygyRangeError(
            f"syzygy index {j} out of range 1..{pd_ideal - 1}"
        )
    ring = ideal_x.ring
    gens_mod = res_x.modules[j + 1]
    if j + 2 <= res_x.length:
        relations = GradedMap(res_x.modules[j + 2], gens_mod, res_x.maps[j + 2].columns)
    else:
        relations = None
    embedding = GradedMap(gens_mod, res_x.modules[j], res_x.maps[j + 1].columns)
    return ModulePresentation(ring, gens_mod.twists, relations, embedding=embedding)


def verify_hypotheses(P: ModulePresentation, N: ModulePresentation) -> HypothesisReport:
    """Torsion-freeness, projective-dimension bound and the twist polynomial."""
    ring = P.ring
    res_p = P.resolution()
    res_n = N.resolution()
    if res_p.modules[0].twists != P.cover().twists:
        raise PresentationError("P is not minimally presented")
    if res_n.modules[0].twists != N.cover().twists:
        raise PresentationError("N is not minimally presented")
    tf_p = modops.is_torsion_free(P)
    tf_n = modops.is_torsion_free(N)
    pd_p = res_p.proj_dim()
    pd_n = res_n.proj_dim()
    s = pd_p + 2
    h1 = tf_p and s <= ring.r
    h2 = tf_n and pd_n <= pd_p + 1
    h3data = check_H3(res_p, res_n, ring.r)
    return HypothesisReport(
        pd_p=pd_p,
        pd_n=pd_n,
        s=s,
        torsion_free_p=tf_p,
        torsion_free_n=tf_n,
        h1=h1,
        h2=h2,
        h3=h3data.passed,
        k=h3data.k,
        rank_ok=h3data.rank_ok,
        p_degree=h3data.p_degree,
        passed=h1 and h2 and h3data.passed,
        h3data=h3data,
        res_p=res_p,
        res_n=res_n,
    )


def certify(ideal_d: IdealHandle, ideal_x: IdealHandle | None,
            res_d: Resolution | None = None,
            res_x: Resolution | None = None,
            res_n: Resolution | None = None,
            res_p: Resolution | None = None,
            k: int = 0) -> CertifyReport:
    """Containment, Cohen-Macaulay types and the resolution-shape bounds.

    Containment means I_D lies inside I_X (every generator reduces to zero).
    The generator and summand bounds compare the minimal resolution of
    I_D(k) with the mapping-cone shape F_i + G_{i-1} when res_n is given.
    """
    if res_d is None:
        res_d = minimal_quotient_resolution(ideal_d)
    cm_type_d = res_d.modules[res_d.proj_dim()].rank
    report = CertifyReport(
        contains_x=None,
        cm_type_x=None,
        cm_type_d=cm_type_d,
        gorenstein_x=None,
        gorenstein_d=cm_type_d == 1,
        cm_type_bound_ok=None,
        gen_bound_ok=None,
        summand_bound_ok=None,
    )
    if ideal_x is not None:
        report.contains_x = ideal_x.contains(ideal_d)
        if res_x is None:
            res_x = minimal_quotient_resolution(ideal_x)
        cm_type_x = res_x.modules[res_x.proj_dim()].rank
        report.cm_type_x = cm_type_x
        report.gorenstein_x = cm_type_x == 1
        report.cm_type_bound_ok = cm_type_x <= cm_type_d
    if res_n is not None:
        mu = res_d.modules[1].rank if res_d.length >= 1 else 0
        report.gen_bound_ok = mu <= res_n.modules[0].rank
        bound = {}
        top = max(res_n.length + 1, (res_p.length + 2) if res_p else 0)
        for i in range(1, top + 1):
            twists = []
            if i - 1 <= res_n.length:
                twists.extend(res_n.modules[i - 1].twists)
            if res_p is not None and 0 <= i - 2 <= res_p.length:
                twists.extend(res_p.modules[i - 2].twists)
            bound[i] = twists
        bound_table = BettiTable.of_twists(bound)
        report.summand_bound_ok = resolve.ideal_betti(res_d, shift=k).dominated_by(
            bound_table
        )
    return report


def dualizing_sequence_ok(gamma: GradedMap, P: ModulePresentation,
                          N: ModulePresentation, res_p: Resolution,
                          res_d: Resolution, res_x: Resolution,
                          k: int, s: int) -> bool:
    """Hilbert-series identity from the dualizing sheaf sequence.

    HS(omega_D(-k)) = HS(K) + HS(omega_X), where K is the top dual of P for
    s >= 3 and the cokernel of the restriction Hom(N, w) -> Hom(P, w) when
    s = 2 (there the top dual alone overcounts by the image of Hom(N, w)).
    """
    ring = P.ring
    omega_d = modops.canonical_module(res_d, s)
    omega_x = modops.canonical_module(res_x, res_x.proj_dim())
    if s >= 3:
        K = modops.transpose_cokernel(res_p, s - 2)
    else:
        a = -(ring.r + 1)
        hom_n = modops.hom_module(N, a)
        hom_p = modops.hom_module(P, a)
        restr = modops.hom_restriction(hom_n, hom_p, gamma)
        K = modops.cokernel(restr, hom_n.presentation, hom_p.presentation)
    lhs = omega_d.hilbert_series().shifted(-k)
    rhs = K.hilbert_series() + omega_x.hilbert_series()
    return lhs == rhs


def construct_acm(N: ModulePresentation, P: ModulePresentation, seed: Seed,
                  retries: int = 8, ideal_x: IdealHandle | None = None,
                  res_x: Resolution | None = None) -> ConstructionCertificate:
    """Random maximal injection gamma: P -> N and the ACM scheme it cuts out.

    Draws gamma per derived seed until it is injective with torsion-free
    rank-1 cokernel, embeds the cokernel as I_D(k), then certifies the run.
    Raises HypothesisError or RetriesExhaustedError when no attempt survives.
    """
    rep = verify_hypotheses(P, N)
    if not rep.passed:
        raise HypothesisError(rep)
    k, s = rep.k, rep.s
    res_p, res_n = rep.res_p, rep.res_n
    if ideal_x is not None and res_x is None:
        res_x = minimal_quotient_resolution(ideal_x)

    failures = []
    for attempt in range(retries):
        sd = seed.child("attempt", attempt)
        gamma, zero_flag = modops.random_graded_map(P, N, sd)
        if zero_flag:
            failures.append(f"attempt {attempt}: zero map")
            continue
        if not modops.map_is_injective(gamma, P, N):
            failures.append(f"attempt {attempt}: gamma not injective")
            continue
        M = modops.cokernel(gamma, P, N)
        try:
            ideal_d, _phi = modops.embed_rank1(M, k)
        except (modops.RankError, modops.TorsionCokernelError, modops.EmbedError) as e:
            failures.append(f"attempt {attempt}: {e}")
            continue

        res_d = minimal_quotient_resolution(ideal_d)
        inv = hilbert.invariants(hilbert.hilbert_series(res_d))
        acm = res_d.proj_dim() == inv.codim
        codim_ok = inv.codim == s

        gammas = resolve.lift_chain_map(gamma, res_p, res_n)
        cone = resolve.mapping_cone(gammas, res_p, res_n)
        cone_betti = resolve.betti(resolve.minimalize(cone))
        direct_betti = resolve.ideal_betti(res_d, shift=k).reindexed(-1)
        cone_ok = cone_betti == direct_betti

        h3_hp_ok = rep.h3data.p == inv.hilbert_polynomial

        cert = certify(
            ideal_d, ideal_x, res_d=res_d, res_x=res_x,
            res_n=res_n, res_p=res_p, k=k,
        )
        dual_ok = None
        if ideal_x is not None:
            if acm and codim_ok:
                dual_ok = dualizing_sequence_ok(
                    gamma, P, N, res_p, res_d, res_x, k, s
                )
            else:
                dual_ok = False  # the dualizing module is not defined here

        return ConstructionCertificate(
            seed=seed,
            retries_allowed=retries,
            attempts_used=attempt + 1,
            k=k,
            s=s,
            codim=inv.codim,
            degree=inv.degree,
            acm=acm,
            codim_ok=codim_ok,
            cone_equals_direct=cone_ok,
            h3_poly_is_hilbert=h3_hp_ok,
            dual_sequence_ok=dual_ok,
            gamma=gamma,
            ideal=ideal_d,
            betti_p=resolve.betti(res_p),
            betti_n=resolve.betti(res_n),
            betti_id=resolve.ideal_betti(res_d, shift=k),
            hypothesis=rep,
            certify=cert,
            res_d=res_d,
        )
    raise RetriesExhaustedError(failures)


def construct_from_scheme(ideal_x: IdealHandle, j: int, p_twists, seed: Seed,
                          retries: int = 8) -> ConstructionCertificate:
    """Syzygy route: N is the j-th syzygy module of the ACM scheme X."""
    res_x, _ = require_acm(ideal_x)
    N = syzygy_module(ideal_x, j, res_x=res_x)
    P = ModulePresentation.free(ideal_x.ring, p_twists)
    return construct_acm(N, P, seed, retries=retries, ideal_x=ideal_x, res_x=res_x)


# ---------------------------------------------------------------------------
# split dichotomy


@dataclass
class SplitReport:
    s: int
    forced_split: bool
    psi_zero_additive: bool
    sample_additive: list
    all_additive: bool
    any_nonadditive: bool


def _first_syzygy_of_quotient(res_d: Resolution, ring) -> ModulePresentation:
    """K = ker(H_1 -> I_D) from the minimal resolution of R/I_D."""
    gens_mod = res_d.modules[2]
    if res_d.length >= 3:
        relations = GradedMap(res_d.modules[3], gens_mod, res_d.maps[3].columns)
    else:
        relations = None
    embedding = GradedMap(gens_mod, res_d.modules[1], res_d.maps[2].columns)
    return ModulePresentation(ring, gens_mod.twists, relations, embedding=embedding)


def split_dichotomy_test(ideal_d: IdealHandle, p_twists, seed: Seed,
                         samples: int = 5) -> SplitReport:
    """Push-out N of the first syzygy of I_D against random maps into free P.

    In the forced-split regime (pd(P) + 2 < codim D) every sample must give
    Betti additivity Betti(N) = Betti(P) + Betti(I_D); outside it a sample
    may cancel and break additivity.
    """
    ring = ideal_d.ring
    res_d, inv = require_acm(ideal_d)
    s = inv.codim
    P = ModulePresentation.free(ring, p_twists)
    forced = 0 < s - 2  # free P has pd 0
    K = _first_syzygy_of_quotient(res_d, ring)
    H1 = ModulePresentation.free(ring, res_d.modules[1].twists)
    incl = GradedMap(K.cover(), res_d.modules[1], res_d.maps[2].columns)

    additive_target = (
        resolve.betti(P.resolution())
        + resolve.ideal_betti(res_d, shift=0).reindexed(-1)
    )

    def run(psi):
        n_pres = modops.pushout(incl, psi, K, H1, P)
        return resolve.betti(n_pres.resolution()) == additive_target

    psi_zero = GradedMap.zero(K.cover(), P.cover())
    zero_additive = run(psi_zero)

    flags = []
    for i in range(samples):
        psi, _ = modops.random_graded_map(K, P, seed.child("psi", i))
        flags.append(run(psi))
    return SplitReport(
        s=s,
        forced_split=forced,
        psi_zero_additive=zero_additive,
        sample_additive=flags,
        all_additive=zero_additive and all(flags),
        any_nonadditive=not all(flags),
    )


# ---------------------------------------------------------------------------
# codimension-2 section construction


@dataclass
class SerreReport:
    c: int
    section_space_dim: int
    attempts_used: int
    pd_n: int
    dissocie: bool
    h2_equals_twist: bool
    betti_n: BettiTable
    presentation: ModulePresentation = field(repr=False)
    psi: GradedMap = field(repr=False)


def _sample_nonfactoring_psi(res_d: Resolution, c: int, seed: Seed, retries: int):
    """Random map H_2 -> O(c-r-1) that does not lift through H_2 -> H_1.

    Factorization is decided exactly: psi factors iff its row vector lies in
    the submodule spanned by the rows of the last differential.
    """
    ring = res_d.ring
    tw = ring.r + 1 - c
    H1, H2 = res_d.modules[1], res_d.modules[2]
    E = GradedFreeModule(ring, tuple(tw - a for a in H2.twists))
    rows = []
    for i in range(H1.rank):
        rows.append(
            FreeElem(E, tuple(res_d.maps[2].columns[j].components[i]
                              for j in range(H2.rank)))
        )
    rows = [r for r in rows if not r.is_zero()]
    row_gb = buchberger(rows, ambient=E) if rows else None

    target = GradedFreeModule(ring, (tw,))
    for attempt in range(retries):
        rng = seed.child("psi", attempt).rng()
        entries = []
        for a in H2.twists:
            d = a - tw
            f = ring.zero
            if d >= 0:
                for mono in ring.monomials_of_degree(d):
                    cf = rng.randrange(ring.p)
                    if cf:
                        f = f + Polynomial(ring, ((mono, cf),))
            entries.append(f)
        row = FreeElem(E, entries)
        if row.is_zero():
            continue
        if row_gb is not None and submodule_contains(row, row_gb):
            continue
        cols = [FreeElem(target, (f,)) for f in entries]
        return GradedMap(H2, target, cols), attempt + 1
    raise FactorizationError("all sampled maps factor through the resolution")


def serre_codim2(ideal_d: IdealHandle, c: int, seed: Seed,
                 retries: int = 8) -> SerreReport:
    """Rank-2 extension of I_D by O(c-r-1) attached to a dualizing section.

    Requires D ACM of codimension 2 with a nonzero section of omega_D(c);
    the resulting N is presented by H_2 -> H_1 + O(c-r-1) and satisfies
    pd(N) <= 1, with pd(N) = 0 exactly when H_2 is the single twist.
    """
    ring = ideal_d.ring
    res_d, inv = require_acm(ideal_d)
    if inv.codim != 2:
        raise NotACMError(f"codimension {inv.codim} is not 2")
    omega = modops.canonical_module(res_d, 2)
    sections = omega.hilbert_series().coefficient(c)
    if sections == 0:
        raise NoSectionError(f"omega_D({c}) has no nonzero section")
    psi, attempts = _sample_nonfactoring_psi(res_d, c, seed, retries)

    tw = ring.r + 1 - c
    K = ModulePresentation.free(ring, res_d.modules[2].twists)
    H1 = ModulePresentation.free(ring, res_d.modules[1].twists)
    O = ModulePresentation.free(ring, (tw,))
    incl = GradedMap(K.cover(), H1.cover(), res_d.maps[2].columns)
    n_pres = modops.pushout(incl, psi, K, H1, O)
    res_n = n_pres.resolution()
    pd_n = res_n.proj_dim()
    h2_single = res_d.modules[2].twists == (tw,)
    return SerreReport(
        c=c,
        section_space_dim=sections,
        attempts_used=attempts,
        pd_n=pd_n,
        dissocie=pd_n == 0,
        h2_equals_twist=h2_single,
        betti_n=resolve.betti(res_n),
        presentation=n_pres,
        psi=psi,
    )


# ---------------------------------------------------------------------------
# first infinitesimal neighborhood via doubled ideals


@dataclass
class DoubleRunReport:
    certificate: ConstructionCertificate
    contained_in_square: bool
    square: IdealHandle = field(repr=False)


def infinitesimal_double(ideal_y: IdealHandle, m: int, seed: Seed,
                         retries: int = 8) -> DoubleRunReport:
    """Run the construction with N = I_Y + I_Y and P = R(-m).

    Every certified output ideal lies inside the square of I_Y, so the scheme
    contains the first infinitesimal neighborhood of Y.
    """
    res_y, inv = require_acm(ideal_y)
    if inv.codim != 2:
        raise NotACMError(f"codimension {inv.codim} is not 2")
    # re-present with the minimal generators so covers stay minimal
    min_gens = [col.components[0] for col in res_y.maps[1].columns]
    ideal_min = IdealHandle(ideal_y.ring, min_gens)
    part = ideal_min.module_presentation()
    N = part.direct_sum(part)
    P = ModulePresentation.free(ideal_y.ring, (m,))
    cert = construct_acm(N, P, seed, retries=retries)
    square = modops.ideal_power(ideal_min, 2)
    contained = square.contains(cert.ideal)
    return DoubleRunReport(
        certificate=cert, contained_in_square=contained, square=square
    )


# ---------------------------------------------------------------------------
# hypersurface twists of extensions


@dataclass
class TwistReport:
    c: int
    d: int
    eps_injective: bool
    cokernel_series_ok: bool
    betti_n: BettiTable
    betti_n2: BettiTable


def twist_extension(ideal_d: IdealHandle, c: int, f: Polynomial, seed: Seed,
                    retries: int = 8) -> TwistReport:
    """Compare the extensions attached to a section and its f-multiple.

    For a form f of degree d cutting D in codimension 3, the push-outs N
    (from psi) and N' (from f psi) sit in an exact sequence whose cokernel is
    the structure sheaf of V(f) twisted by c + d - r - 1; the identity is
    certified on Hilbert series.
    """
    ring = ideal_d.ring
    if f.is_zero() or not f.is_homogeneous():
        raise TransversalityError("twisting form must be nonzero homogeneous")
    d = f.degree
    res_d, inv = require_acm(ideal_d)
    if inv.codim != 2:
        raise NotACMError(f"codimension {inv.codim} is not 2")
    if d > 0:
        cut = IdealHandle(ring, list(ideal_d.gens) + [f])
        cut_inv = hilbert.invariants(cut.quotient_presentation().hilbert_series())
        if cut_inv.codim != 3:
            raise TransversalityError(
                f"V(f) cuts D in codimension {cut_inv.codim}, not 3"
            )

    omega = modops.canonical_module(res_d, 2)
    if omega.hilbert_series().coefficient(c) == 0:
        raise NoSectionError(f"omega_D({c}) has no nonzero section")
    psi, _ = _sample_nonfactoring_psi(res_d, c, seed, retries)

    tw1 = ring.r + 1 - c
    tw2 = ring.r + 1 - c - d
    K = ModulePresentation.free(ring, res_d.modules[2].twists)
    H1 = ModulePresentation.free(ring, res_d.modules[1].twists)
    O1 = ModulePresentation.free(ring, (tw1,))
    O2 = ModulePresentation.free(ring, (tw2,))
    incl = GradedMap(K.cover(), H1.cover(), res_d.maps[2].columns)
    psi2 = GradedMap(
        K.cover(), O2.cover(),
        [FreeElem(O2.cover(), (col.components[0] * f,)) for col in psi.columns],
    )
    n1 = modops.pushout(incl, psi, K, H1, O1)
    n2 = modops.pushout(incl, psi2, K, H1, O2)

    # eps: H1 generators map identically, the twist generator multiplies by f
    cover1, cover2 = n1.cover(), n2.cover()
    h = H1.ngens
    cols = [cover2.unit(i) for i in range(h)]
    cols.append(cover2.unit(h).poly_mul(f))
    eps = GradedMap(cover1, cover2, cols)
    injective = modops.map_is_injective(eps, n1, n2)
    coker = modops.cokernel(eps, n1, n2)
    num = {0: 1}
    num[d] = num.get(d, 0) - 1
    expected = hilbert.HilbertSeries(ring.nvars, num).shifted(c + d - ring.r - 1)
    series_ok = coker.hilbert_series() == expected
    return TwistReport(
        c=c,
        d=d,
        eps_injective=injective,
        cokernel_series_ok=series_ok,
        betti_n=resolve.betti(n1.resolution()),
        betti_n2=resolve.betti(n2.resolution()),
    )


# ---------------------------------------------------------------------------
# Koszul reconstruction


@dataclass
class KoszulReport:
    t: int
    k: int
    k_expected: int
    k_ok: bool
    reconstructed: IdealHandle
    matches: bool
    betti_x: BettiTable = field(repr=False)


def koszul_reconstruct(ideal_d: IdealHandle, forms) -> KoszulReport:
    """Rebuild D from its section by a transversal complete intersection.

    X = D cut by V(f_1, ..., f_t) is resolved by the tensor product of the
    two resolutions; splitting off the blocks containing the top exterior
    power produces the pair (P, N) whose cokernel recovers I_D exactly, with
    k = -(sum of the form degrees).
    """
    ring = ideal_d.ring
    forms = list(forms)
    res_d, inv = require_acm(ideal_d)
    s = inv.codim
    t = len(forms)
    if t == 0:
        return KoszulReport(
            t=0, k=0, k_expected=0, k_ok=True,
            reconstructed=ideal_d, matches=True,
            betti_x=resolve.ideal_betti(res_d),
        )
    kos = resolve.koszul_complex(forms)
    if not kos.meta["regular_sequence"]:
        raise RegularSequenceError("forms are not a regular sequence")
    if s + t > ring.r:
        raise TransversalityError(f"codimension {s + t} exceeds r = {ring.r}")
    cut = IdealHandle(ring, list(ideal_d.gens) + forms)
    cut_inv = hilbert.invariants(cut.quotient_presentation().hilbert_series())
    if cut_inv.codim != s + t:
        raise TransversalityError(
            f"intersection has codimension {cut_inv.codim}, expected {s + t}"
        )

    tensor = resolve.tensor_complexes(res_d, kos)
    blocks = tensor.meta["blocks"]

    def prime_indices(level):
        idx = []
        for (i, jj, off, size) in blocks[level]:
            if jj <= t - 1:
                idx.extend(range(off, off + size))
        return idx

    # N = ker(delta_t): presented by the tail of the tensor resolution
    gens_mod = tensor.modules[t + 1]
    if t + 2 <= tensor.length:
        n_rel = GradedMap(tensor.modules[t + 2], gens_mod, tensor.maps[t + 2].columns)
    else:
        n_rel = None
    N = ModulePresentation(
        ring, gens_mod.twists, n_rel,
        embedding=GradedMap(gens_mod, tensor.modules[t],
                            tensor.maps[t + 1].columns),
    )

    idx1 = prime_indices(t + 1)
    p_twists = tuple(gens_mod.twists[i] for i in idx1)
    p_cover = GradedFreeModule(ring, p_twists)
    if t + 2 <= tensor.length:
        idx2 = prime_indices(t + 2)
        cols = []
        for c in idx2:
            col = tensor.maps[t + 2].columns[c]
            for pos, poly in enumerate(col.components):
                if pos not in idx1 and not poly.is_zero():
                    raise ConstructError("tensor differential leaks out of the subcomplex")
            cols.append(FreeElem(p_cover, tuple(col.components[i] for i in idx1)))
        src = GradedFreeModule(ring, tuple(tensor.modules[t + 2].twists[c] for c in idx2))
        p_rel = GradedMap(src, p_cover, cols)
    else:
        p_rel = None
    P = ModulePresentation(ring, p_twists, p_rel)

    gamma = GradedMap(
        p_cover, N.cover(), [N.cover().unit(i) for i in idx1]
    )
    M = modops.cokernel(gamma, P, N)
    k_expected = -sum(f.degree for f in forms)
    k = hilbert.sheaf_degree(N.resolution(minimal=False)) - hilbert.sheaf_degree(
        P.resolution(minimal=False)
    )
    reconstructed, _phi = modops.embed_rank1(M, k)
    matches = reconstructed.equals(ideal_d)
    return KoszulReport(
        t=t,
        k=k,
        k_expected=k_expected,
        k_ok=k == k_expected,
        reconstructed=reconstructed,
        matches=matches,
        betti_x=resolve.betti(tensor),
    )
