"""Module-level constructions: kernels, cokernels, Hom, saturation, push-outs,
canonical modules, rank-1 embeddings and seeded random graded maps."""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .freemod import FreeElem, GradedFreeModule, GradedMap
from .gb import buchberger, kernel_of_free_map, reduce, submodule_contains
from .presentations import IdealHandle, ModulePresentation, PresentationError, Seed
from .ring import Polynomial


class IllDefinedMapError(PresentationError):
    """Generator images do not send relations into relations."""


class RankError(PresentationError):
    pass


class TorsionCokernelError(PresentationError):
    """The rank-1 cokernel has torsion: the chosen map was not maximal."""


class EmbedError(PresentationError):
    pass


class NotCMError(PresentationError):
    pass


def check_well_defined(phi: GradedMap, source: ModulePresentation,
                       target: ModulePresentation) -> None:
    """Raise unless phi (given on covers) descends to a map of the modules."""
    if phi.source != source.cover() or phi.target != target.cover():
        raise PresentationError("cover map does not match the presentations")
    gb = target.rel_gb()
    for col in source.relations.columns:
        image = phi.apply(col)
        if not image.is_zero() and not submodule_contains(image, gb):
            raise IllDefinedMapError("relations are not mapped into relations")


def _preimage_generators(phi: GradedMap, source: ModulePresentation,
                         target: ModulePresentation):
    """Generators of { x in cover(source) : phi(x) lies in the relation module }."""
    cover_s = source.cover()
    cover_t = target.cover()
    combined = list(phi.columns) + list(target.relations.columns)
    twists = tuple(cover_s.twists) + tuple(target.relations.source.twists)
    syz = kernel_of_free_map(combined, cover_t, source_twists=twists)
    n = cover_s.rank
    out = []
    seen = set()
    for s in syz:
        head = FreeElem(cover_s, s.components[:n])
        if head.is_zero() or head.components in seen:
            continue
        seen.add(head.components)
        out.append(head)
    return out


def map_is_injective(phi: GradedMap, source: ModulePresentation,
                     target: ModulePresentation) -> bool:
    """Module-level injectivity of the induced map."""
    check_well_defined(phi, source, target)
    gb = source.rel_gb()
    return all(
        submodule_contains(u, gb) for u in _preimage_generators(phi, source, target)
    )


def kernel_of_map(phi: GradedMap, source: ModulePresentation,
                  target: ModulePresentation) -> ModulePresentation:
    """Presentation of ker(phi) as a subquotient of the source."""
    check_well_defined(phi, source, target)
    cover_s = source.cover()
    gens = _preimage_generators(phi, source, target)
    gens = [g for g in gens if not submodule_contains(g, source.rel_gb())]
    twists = tuple(g.degree for g in gens)
    # relations: combinations of the kernel generators landing in Rel(source)
    combined = gens + list(source.relations.columns)
    ctw = twists + tuple(source.relations.source.twists)
    syz = kernel_of_free_map(combined, cover_s, source_twists=ctw)
    cover_k = GradedFreeModule(source.ring, twists)
    cols = []
    for s in syz:
        head = FreeElem(cover_k, s.components[: len(gens)])
        if not head.is_zero():
            cols.append(head)
    src = GradedFreeModule(source.ring, tuple(c.degree for c in cols))
    return ModulePresentation(
        source.ring, twists, GradedMap(src, cover_k, cols)
    )


def cokernel(phi: GradedMap, source: ModulePresentation,
             target: ModulePresentation) -> ModulePresentation:
    """Presentation of target / phi(source)."""
    check_well_defined(phi, source, target)
    cover_t = target.cover()
    cols = list(target.relations.columns) + list(phi.columns)
    src = GradedFreeModule(
        target.ring,
        tuple(target.relations.source.twists) + tuple(phi.source.twists),
    )
    return ModulePresentation(
        target.ring, target.gen_twists, GradedMap(src, cover_t, cols)
    )


def pushout(phi: GradedMap, psi: GradedMap, common: ModulePresentation,
            left: ModulePresentation, right: ModulePresentation) -> ModulePresentation:
    """Cokernel of (phi, -psi): K -> A + B, the push-out of the two maps."""
    check_well_defined(phi, common, left)
    check_well_defined(psi, common, right)
    total = left.direct_sum(right)
    cover = total.cover()
    cols = []
    for a_col, b_col in zip(phi.columns, psi.columns):
        comps = tuple(a_col.components) + tuple((-b_col).components)
        cols.append(FreeElem(cover, comps))
    q = GradedMap(common.cover(), cover, cols)
    return cokernel(q, common, total)


@dataclass
class HomModule:
    """Hom(M, R(a)) presented as a submodule of the dual of the cover.

    generators[l] is a row vector over M's generators: its i-th component is
    the value of the l-th homomorphism on generator i.
    """

    presentation: ModulePresentation
    dual_cover: GradedFreeModule
    generators: tuple
    twist: int


def hom_module(m: ModulePresentation, a: int) -> HomModule:
    ring = m.ring
    E = GradedFreeModule(ring, tuple(-a - b for b in m.gen_twists))
    rel_cols = m.relations.columns
    Eprime = GradedFreeModule(
        ring, tuple(-a - d for d in m.relations.source.twists)
    )
    tcols = []
    for i in range(m.ngens):
        comps = tuple(col.components[i] for col in rel_cols)
        tcols.append(FreeElem(Eprime, comps))
    gens = kernel_of_free_map(tcols, Eprime, source_twists=E.twists)
    gens = [FreeElem(E, g.components) for g in gens]
    twists = tuple(g.degree for g in gens)
    cover = GradedFreeModule(ring, twists)
    rels = kernel_of_free_map(gens, E, source_twists=twists)
    cols = [FreeElem(cover, s.components) for s in rels]
    src = GradedFreeModule(ring, tuple(c.degree for c in cols))
    pres = ModulePresentation(
        ring,
        twists,
        GradedMap(src, cover, cols),
        embedding=GradedMap(cover, E, gens) if gens else None,
    )
    return HomModule(presentation=pres, dual_cover=E, generators=tuple(gens), twist=a)


def embed_rank1(m: ModulePresentation, k: int):
    """Realize a rank-1 torsion-free module as a saturated ideal twisted by k.

    Returns (IdealHandle, phi) where phi is the degree-0 generator of
    Hom(m, R(k)) as a row vector over m's generators.
    """
    ring = m.ring
    if m.rank() != 1:
        raise RankError(f"module has rank {m.rank()}, expected 1")
    hom = hom_module(m, k)
    deg0 = [g for g in hom.generators if g.degree == 0]
    if not deg0:
        raise EmbedError("Hom(M, R(k)) has no degree-0 generator")
    phi = deg0[0]
    phigb = buchberger([phi], ambient=hom.dual_cover)
    for g in hom.generators:
        if not submodule_contains(g, phigb):
            raise EmbedError("Hom(M, R(k)) is not cyclic in degree 0")
    target = ModulePresentation.free(ring, (-k,))
    tcover = target.cover()
    cols = [FreeElem(tcover, (phi.components[i],)) for i in range(m.ngens)]
    ev = GradedMap(m.cover(), tcover, cols)
    if not map_is_injective(ev, m, target):
        raise TorsionCokernelError("evaluation against the degree-0 section has a kernel")
    ideal = IdealHandle(ring, [f for f in phi.components if not f.is_zero()])
    if ideal.is_zero():
        raise EmbedError("degree-0 section is zero")
    if not saturate(ideal).equals(ideal):
        raise EmbedError("embedded ideal failed the saturation recheck")
    ideal._saturated = True
    return ideal, phi


# ---------------------------------------------------------------------------
# ideal arithmetic


def ideal_colon_poly(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """I : (f) through syzygies of (f, gens(I))."""
    if f.is_zero():
        raise PresentationError("colon by zero")
    amb = I.ambient()
    cols = [FreeElem(amb, (f,))] + I.as_elems()
    twists = (f.degree,) + tuple(g.degree for g in I.gens)
    syz = kernel_of_free_map(cols, amb, source_twists=twists)
    gens = [s.components[0] for s in syz if not s.components[0].is_zero()]
    return IdealHandle(I.ring, gens)


def ideal_colon_stable(I: IdealHandle, f: Polynomial) -> IdealHandle:
    """I : f^infinity, iterated until the colon stabilizes."""
    current = I
    while True:
        nxt = ideal_colon_poly(current, f)
        if current.contains(nxt):
            return current
        current = nxt


def ideal_intersect(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """Intersection via syzygies of the concatenated generator lists."""
    if I.is_zero() or J.is_zero():
        return IdealHandle(I.ring, [])
    amb = I.ambient()
    cols = I.as_elems() + J.as_elems()
    twists = tuple(g.degree for g in I.gens) + tuple(g.degree for g in J.gens)
    syz = kernel_of_free_map(cols, amb, source_twists=twists)
    k = len(I.gens)
    gens = []
    for s in syz:
        h = I.ring.zero
        for c, g in zip(s.components[:k], I.gens):
            if not c.is_zero():
                h = h + c * g
        if not h.is_zero():
            gens.append(h)
    return IdealHandle(I.ring, gens)


def ideal_sum(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return IdealHandle(I.ring, list(I.gens) + list(J.gens))


def ideal_product(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    return IdealHandle(I.ring, [f * g for f in I.gens for g in J.gens])


def ideal_power(I: IdealHandle, n: int) -> IdealHandle:
    if n < 0:
        raise PresentationError("negative ideal power")
    if n == 0:
        return IdealHandle(I.ring, [I.ring.one])
    out = I
    for _ in range(n - 1):
        out = ideal_product(out, I)
    return out


def ideal_quotient(I: IdealHandle, J: IdealHandle) -> IdealHandle:
    """I : J as the intersection of the colons by the generators of J."""
    if J.is_zero():
        raise PresentationError("colon by the zero ideal")
    out = None
    for h in J.gens:
        col = ideal_colon_poly(I, h)
        out = col if out is None else ideal_intersect(out, col)
    return out


def ideal_contains(I: IdealHandle, J: IdealHandle) -> bool:
    """True when J is a subset of I (every generator of J reduces to zero)."""
    return I.contains(J)


def saturate(I: IdealHandle) -> IdealHandle:
    """I : (x_0, ..., x_r)^infinity: stabilized colon per variable, intersected."""
    if I._saturated:
        return I
    if I.is_zero():
        return I
    ring = I.ring
    out = None
    for i in range(ring.nvars):
        li = ideal_colon_stable(I, ring.gen(i))
        out = li if out is None else ideal_intersect(out, li)
    out._saturated = True
    return out


# ---------------------------------------------------------------------------
# random graded maps


def random_graded_map(P: ModulePresentation, N: ModulePresentation, seed: Seed):
    """Uniform random degree-0 homomorphism P -> N, deterministic per seed.

    Each generator of P is sent to a random combination of monomial multiples
    of N's generators of the matching degree.  When P has relations the
    sample is drawn from the exact solution space of the compatibility
    constraints.  Returns (map, zero_flag).
    """
    ring = P.ring
    rng = seed.rng()
    cover_n = N.cover()
    unknowns = []  # (source gen j, target gen h, monomial)
    for j, aj in enumerate(P.gen_twists):
        for h, bh in enumerate(N.gen_twists):
            d = aj - bh
            if d >= 0:
                for mono in ring.monomials_of_degree(d):
                    unknowns.append((j, h, mono))

    if not unknowns:
        zero = GradedMap.zero(P.cover(), cover_n)
        return zero, True

    if P.is_free_presentation():
        coeffs = [rng.randrange(ring.p) for _ in unknowns]
    else:
        gbn = N.rel_gb()
        columns = []
        keys = {}
        rows_per_unknown = []
        for (j, h, mono) in unknowns:
            coords = {}
            for c, rel in enumerate(P.relations.columns):
                rho = rel.components[j]
                if rho.is_zero():
                    continue
                probe = cover_n.unit(h).term_mul(1, mono).poly_mul(rho)
                nf, _ = reduce(probe, gbn)
                for comp, poly in enumerate(nf.components):
                    for mon, cf in poly.terms:
                        coords[(c, comp, mon)] = (
                            coords.get((c, comp, mon), 0) + cf
                        ) % ring.p
            rows_per_unknown.append(coords)
            for key in coords:
                keys.setdefault(key, len(keys))
        mat = [[0] * len(unknowns) for _ in range(len(keys))]
        for u, coords in enumerate(rows_per_unknown):
            for key, cf in coords.items():
                mat[keys[key]][u] = cf
        basis = linalg.nullspace(mat, len(unknowns), ring.p)
        coeffs = [0] * len(unknowns)
        for vec in basis:
            w = rng.randrange(ring.p)
            if w:
                coeffs = [(c + w * v) % ring.p for c, v in zip(coeffs, vec)]

    cols = [cover_n.zero_elem() for _ in P.gen_twists]
    for (j, h, mono), cf in zip(unknowns, coeffs):
        if cf:
            cols[j] = cols[j] + cover_n.unit(h).term_mul(cf, mono)
    gm = GradedMap(P.cover(), cover_n, cols)
    return gm, gm.is_zero()


# ---------------------------------------------------------------------------
# duals


def transpose_cokernel(res, level: int) -> ModulePresentation:
    """Cokernel of the transposed map into homological spot `level`, twisted
    by -(r+1): coker( Hom(F_{level-1}, R(-r-1)) -> Hom(F_level, R(-r-1)) )."""
    ring = res.ring
    shift = ring.r + 1
    F = res.modules[level]
    twists = tuple(shift - a for a in F.twists)
    cover = GradedFreeModule(ring, twists)
    if level == 0:
        return ModulePresentation(ring, twists)
    Fprev = res.modules[level - 1]
    src = GradedFreeModule(ring, tuple(shift - b for b in Fprev.twists))
    cols = []
    for j in range(Fprev.rank):
        comps = tuple(res.maps[level].columns[i].components[j] for i in range(F.rank))
        cols.append(FreeElem(cover, comps))
    return ModulePresentation(ring, twists, GradedMap(src, cover, cols))


def canonical_module(res, codim: int) -> ModulePresentation:
    """Dualizing module of a Cohen-Macaulay quotient from its minimal resolution."""
    if not res.minimal:
        raise NotCMError("canonical module requires a minimal resolution")
    if res.proj_dim() != codim:
        raise NotCMError(
            f"not CM: projective dimension {res.proj_dim()} differs from codimension {codim}"
        )
    return transpose_cokernel(res, codim)


def hom_restriction(hom_n: HomModule, hom_p: HomModule, gamma: GradedMap) -> GradedMap:
    """Precomposition Hom(N, R(a)) -> Hom(P, R(a)) along gamma: P -> N.

    gamma is given on covers; each functional beta on N pulls back to
    beta o gamma, expressed over the generators of Hom(P, R(a)).
    """
    ring = gamma.source.ring
    np_ = gamma.source.rank
    cols = []
    for beta in hom_n.generators:
        row = []
        for j in range(np_):
            val = ring.zero
            for i, b in enumerate(beta.components):
                if not b.is_zero():
                    val = val + b * gamma.columns[j].components[i]
            row.append(val)
        elem = FreeElem(hom_p.dual_cover, row)
        if elem.is_zero():
            coords = (ring.zero,) * hom_p.presentation.ngens
        else:
            coords = _express_in_submodule(
                elem, list(hom_p.generators), hom_p.dual_cover
            )
            if coords is None:
                raise PresentationError("pulled-back functional escapes Hom(P, R(a))")
        cols.append(FreeElem(hom_p.presentation.cover(), coords))
    return GradedMap(hom_n.presentation.cover(), hom_p.presentation.cover(), cols)


# ---------------------------------------------------------------------------
# torsion-freeness


def _express_in_submodule(elem, gens, ambient):
    """Coordinates of elem over the given submodule generators, or None."""
    gbs = buchberger(
        list(gens), ambient=ambient, track=True,
        input_twists=[g.degree for g in gens],
    )
    rem, quots = reduce(elem, gbs, track=True)
    if not rem.is_zero():
        return None
    acc = gbs.input_module.zero_elem()
    for q, rep in zip(quots, gbs.reps):
        if not q.is_zero():
            acc = acc + rep.poly_mul(q)
    return acc.components


def is_torsion_free(pres: ModulePresentation) -> bool:
    """Torsion-freeness via the kernel of the double-dual evaluation map.

    Submodules of free modules (embedding data present) and free presentations
    are torsion-free outright.
    """
    if pres.embedding is not None or pres.is_free_presentation():
        return True
    if pres.is_zero():
        return True
    dual = hom_module(pres, 0)
    if not dual.generators:
        return False  # Hom(M, R) = 0 forces torsion for nonzero M
    ddual = hom_module(dual.presentation, 0)
    E2 = ddual.dual_cover
    cover = pres.cover()
    cols = []
    for i in range(pres.ngens):
        ev = FreeElem(E2, tuple(g.components[i] for g in dual.generators))
        if ddual.generators:
            coords = _express_in_submodule(ev, list(ddual.generators), E2)
        else:
            coords = None if not ev.is_zero() else ()
        if coords is None:
            raise PresentationError("evaluation map escapes the double dual")
        cols.append(FreeElem(ddual.presentation.cover(), coords))
    ev_map = GradedMap(cover, ddual.presentation.cover(), cols)
    return map_is_injective(ev_map, pres, ddual.presentation)
