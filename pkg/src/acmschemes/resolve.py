"""Graded free resolutions and the chain-level toolbox.

Resolutions are chains F_len -> ... -> F_1 -> F_0 augmenting a presented
module (F_0 is the cover).  They are produced by iterated Schreyer syzygies,
minimalized by unit-pivot Gaussian cancellation, and summarized by Betti
tables.  The same chain type carries mapping cones, Koszul complexes and
tensor products of complexes.
"""

from __future__ import annotations

from . import hilbert
from .freemod import FreeElem, GradedFreeModule, GradedMap, TOP
from .gb import buchberger, reduce, syzygy_basis
from .presentations import ModulePresentation
from .ring import RingError


class ResolutionError(RingError):
    pass


class LiftError(ResolutionError):
    """A chain-map lifting step failed (map does not land in the module)."""


class Resolution:
    """Chain of graded maps with d o d = 0 augmenting modules[0]."""

    __slots__ = ("ring", "modules", "maps", "minimal", "truncated", "meta")

    def __init__(self, ring, modules, maps, minimal=False, truncated=False, meta=None):
        self.ring = ring
        self.modules = tuple(modules)
        self.maps = tuple(maps)
        self.minimal = minimal
        self.truncated = truncated
        self.meta = meta or {}

    @property
    def length(self) -> int:
        return len(self.modules) - 1

    def proj_dim(self) -> int:
        """Length of the minimal chain: largest index with a nonzero module."""
        if not self.minimal:
            raise ResolutionError("projective dimension requires a minimal resolution")
        for i in range(self.length, -1, -1):
            if self.modules[i].rank > 0:
                return i
        return 0

    def check_complex(self) -> bool:
        """Exact verification that consecutive maps compose to zero."""
        for i in range(2, self.length + 1):
            if not self.maps[i - 1].compose(self.maps[i]).is_zero():
                return False
        return True

    def has_constant_entry(self) -> bool:
        for i in range(1, self.length + 1):
            gm = self.maps[i]
            for col in gm.columns:
                for poly in col.components:
                    if not poly.is_zero() and poly.degree == 0:
                        return True
        return False

    def shifted(self, k: int) -> "Resolution":
        """Resolution of M(k): every twist drops by k."""
        modules = [GradedFreeModule(self.ring, tuple(a - k for a in m.twists))
                   for m in self.modules]
        maps = [None]
        for i in range(1, self.length + 1):
            cols = [FreeElem(modules[i - 1], c.components) for c in self.maps[i].columns]
            maps.append(GradedMap(modules[i], modules[i - 1], cols))
        return Resolution(self.ring, modules, maps,
                          minimal=self.minimal, truncated=self.truncated)

    def __repr__(self):
        arrow = " <- ".join(repr(m) for m in self.modules)
        tag = " (minimal)" if self.minimal else ""
        return f"Resolution[{arrow}]{tag}"


def free_resolution(pres: ModulePresentation, max_len: int | None = None) -> Resolution:
    """Resolution by iterated syzygies; ends at the first zero syzygy module.

    Not necessarily minimal.  max_len defaults to r+1; if the chain is cut
    there before the syzygies vanish the result is flagged truncated.
    """
    ring = pres.ring
    if max_len is None:
        max_len = ring.r + 1
    if max_len < 1:
        raise ResolutionError("max_len must be at least 1")
    modules = [pres.cover()]
    maps = [None]
    truncated = False
    cols = [c for c in pres.relations.columns if not c.is_zero()]
    gb = buchberger(cols, order=TOP, ambient=pres.cover()) if cols else None
    level = 0
    while gb is not None and gb.elements:
        if level >= max_len:
            truncated = True
            break
        F = GradedFreeModule(ring, gb.degrees())
        maps.append(GradedMap(F, modules[level], gb.elements))
        modules.append(F)
        level += 1
        gb = syzygy_basis(gb)
    res = Resolution(ring, modules, maps, truncated=truncated)
    res.minimal = not truncated and not res.has_constant_entry()
    return res


def full_resolution(pres: ModulePresentation) -> Resolution:
    """Complete (never truncated) resolution; internal workhorse."""
    res = free_resolution(pres, max_len=pres.ring.nvars + 2)
    if res.truncated:
        raise ResolutionError("resolution did not terminate within the syzygy bound")
    return res


def minimalize(res: Resolution) -> Resolution:
    """Cancel unit entries to reach the minimal resolution of the same module.

    Gaussian cancellation on constant pivots, processed from homological index
    1 upward in a fixed scan order; the Hilbert series is checked to be
    unchanged.
    """
    if res.truncated:
        raise ResolutionError("cannot minimalize a truncated resolution")
    ring = res.ring
    twists = [list(m.twists) for m in res.modules]
    mats = [None]
    for i in range(1, res.length + 1):
        gm = res.maps[i]
        mats.append(
            [
                [gm.columns[j].components[r_] for j in range(len(twists[i]))]
                for r_ in range(len(twists[i - 1]))
            ]
        )

    before = hilbert.hilbert_series(res)

    for lvl in range(1, len(mats)):
        while True:
            A = mats[lvl]
            pivot = None
            for ri in range(len(A)):
                for cj in range(len(A[ri])):
                    f = A[ri][cj]
                    if not f.is_zero() and f.degree == 0:
                        pivot = (ri, cj)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            ri, cj = pivot
            u = A[ri][cj].lead_coeff
            uinv = pow(u, ring.p - 2, ring.p)
            col_c = [A[i_][cj] for i_ in range(len(A))]
            row_b = A[ri]
            for i_ in range(len(A)):
                if i_ == ri or col_c[i_].is_zero():
                    continue
                factor = col_c[i_].scale(uinv)
                for j_ in range(len(A[0])):
                    if j_ == cj or row_b[j_].is_zero():
                        continue
                    A[i_][j_] = A[i_][j_] - factor * row_b[j_]
            # drop target generator ri and source generator cj
            mats[lvl] = [
                [A[i_][j_] for j_ in range(len(A[0])) if j_ != cj]
                for i_ in range(len(A))
                if i_ != ri
            ]
            twists[lvl].pop(cj)
            twists[lvl - 1].pop(ri)
            if lvl + 1 < len(mats):
                mats[lvl + 1] = [
                    row for i_, row in enumerate(mats[lvl + 1]) if i_ != cj
                ]
            if lvl - 1 >= 1:
                mats[lvl - 1] = [
                    [row[j_] for j_ in range(len(row)) if j_ != ri]
                    for row in mats[lvl - 1]
                ]

    # trim trailing zero modules
    top = len(twists) - 1
    while top >= 1 and not twists[top]:
        twists.pop()
        mats.pop()
        top -= 1

    modules = [GradedFreeModule(ring, tuple(t)) for t in twists]
    maps = [None]
    for i in range(1, len(modules)):
        cols = []
        for j in range(modules[i].rank):
            cols.append(
                FreeElem(modules[i - 1], tuple(mats[i][r_][j] for r_ in range(modules[i - 1].rank)))
            )
        maps.append(GradedMap(modules[i], modules[i - 1], cols))
    out = Resolution(ring, modules, maps, minimal=True)
    if out.has_constant_entry():
        raise ResolutionError("minimalization left a constant entry")
    after = hilbert.hilbert_series(out)
    if before != after:
        raise ResolutionError("minimalization changed the Hilbert series")
    return out


class BettiTable:
    """Ranks of twisted summands per homological index of a minimal resolution."""

    __slots__ = ("entries",)

    def __init__(self, entries=None):
        self.entries = {}
        if entries:
            for i, row in entries.items():
                for a, n in row.items():
                    if n:
                        self.entries.setdefault(i, {})[a] = n

    @classmethod
    def of_twists(cls, index_to_twists) -> "BettiTable":
        t = cls()
        for i, twists in index_to_twists.items():
            for a in twists:
                row = t.entries.setdefault(i, {})
                row[a] = row.get(a, 0) + 1
        return t

    def rank(self, i, a) -> int:
        return self.entries.get(i, {}).get(a, 0)

    def total_rank(self, i) -> int:
        return sum(self.entries.get(i, {}).values())

    def max_index(self) -> int:
        return max(self.entries) if self.entries else 0

    def indices(self):
        return sorted(self.entries)

    def __add__(self, other):
        out = BettiTable(self.entries)
        for i, row in other.entries.items():
            for a, n in row.items():
                r = out.entries.setdefault(i, {})
                r[a] = r.get(a, 0) + n
        return out

    def shifted(self, da: int) -> "BettiTable":
        return BettiTable(
            {i: {a + da: n for a, n in row.items()} for i, row in self.entries.items()}
        )

    def reindexed(self, di: int) -> "BettiTable":
        return BettiTable({i + di: dict(row) for i, row in self.entries.items()})

    def dominated_by(self, other) -> bool:
        """Entrywise comparison: every rank here is at most the one in other."""
        return all(
            n <= other.rank(i, a)
            for i, row in self.entries.items()
            for a, n in row.items()
        )

    def __eq__(self, other):
        return isinstance(other, BettiTable) and self.entries == other.entries

    def to_json(self):
        return {
            str(i): {str(a): n for a, n in sorted(row.items())}
            for i, row in sorted(self.entries.items())
        }

    def render(self) -> str:
        """Macaulay-style text: row d lists the ranks beta_{i, i+d}.

        Columns are homological indices; the row label is the internal degree
        d = twist - index.  A dot marks a zero entry.
        """
        if not self.entries:
            return "(zero module)"
        imin, imax = min(self.entries), self.max_index()
        ds = [a - i for i, row in self.entries.items() for a in row]
        dmin, dmax = min(ds), max(ds)
        cols = list(range(imin, imax + 1))
        header = ["      "] + [f"{i:>6}" for i in cols]
        lines = ["".join(header)]
        totals = ["total:"] + [f"{self.total_rank(i):>6}" for i in cols]
        lines.append("".join(totals))
        for d in range(dmin, dmax + 1):
            row = [f"{d:>5}:"]
            for i in cols:
                n = self.rank(i, i + d)
                row.append(f"{n:>6}" if n else f"{'.':>6}")
            lines.append("".join(row))
        return "\n".join(lines)

    def __repr__(self):
        return self.render()


def betti(res: Resolution) -> BettiTable:
    if not res.minimal:
        res = minimalize(res)
    return BettiTable.of_twists({i: m.twists for i, m in enumerate(res.modules)})


def ideal_betti(res: Resolution, shift: int = 0) -> BettiTable:
    """Betti table of an ideal I(shift) from the resolution of R/I.

    The cover R at index 0 is dropped; index i >= 1 keeps its place.
    """
    if not res.minimal:
        res = minimalize(res)
    return BettiTable.of_twists(
        {i: [a - shift for a in m.twists] for i, m in enumerate(res.modules) if i >= 1}
    )


def verify_chain_map(gammas, resP, resN) -> bool:
    """Exact commutation check gamma_{i} o Delta_{i+1} = delta_{i+1} o gamma_{i+1}."""
    for i in range(1, len(gammas)):
        lhs = gammas[i - 1].compose(resP.maps[i])
        rhs = resN.maps[i].compose(gammas[i]) if i <= resN.length else None
        if rhs is None:
            if not lhs.is_zero():
                return False
        elif lhs.entries() != rhs.entries():
            return False
    return True


def lift_chain_map(gamma_cover: GradedMap, resP: Resolution, resN: Resolution):
    """Lift a cover-level map P -> N to chain maps between the resolutions.

    gamma_cover sends resP.modules[0] into resN.modules[0]; each further map
    is solved through a tracked division against the image of the next
    differential.  Raises LiftError when the data is not a homomorphism.
    """
    if gamma_cover.source != resP.modules[0] or gamma_cover.target != resN.modules[0]:
        raise LiftError("cover map does not match the resolutions")
    gammas = [gamma_cover]
    for lvl in range(1, resP.length + 1):
        delta_p = resP.maps[lvl]
        targets = [gammas[lvl - 1].apply(col) for col in delta_p.columns]
        if lvl > resN.length:
            if any(not v.is_zero() for v in targets):
                raise LiftError("not a homomorphism into N")
            zero_mod = GradedFreeModule(resN.ring, ())
            gammas.append(GradedMap.zero(resP.modules[lvl], zero_mod))
            continue
        delta_n = resN.maps[lvl]
        gbn = buchberger(
            list(delta_n.columns),
            order=TOP,
            track=True,
            ambient=resN.modules[lvl - 1],
            input_twists=list(delta_n.source.twists),
        )
        cols = []
        for v in targets:
            rem, quots = reduce(v, gbn, track=True)
            if not rem.is_zero():
                raise LiftError("not a homomorphism into N")
            acc = gbn.input_module.zero_elem()
            for q, rep in zip(quots, gbn.reps):
                if not q.is_zero():
                    acc = acc + rep.poly_mul(q)
            cols.append(FreeElem(resN.modules[lvl], acc.components))
        gammas.append(GradedMap(resP.modules[lvl], resN.modules[lvl], cols))
    if not verify_chain_map(gammas, resP, resN):
        raise LiftError("lifted maps fail the commutation identity")
    return gammas


def mapping_cone(gammas, resP: Resolution, resN: Resolution) -> Resolution:
    """Resolution of coker(gamma) from a chain map between resolutions.

    Level j is G_j + F_{j+1} with the block differential
    [[Delta_j, 0], [(-1)^(j+1) gamma_j, delta_{j+1}]]; level 0 is F_1 with
    (gamma_1, delta_2) arriving from level 1.
    """
    ring = resP.ring
    if not verify_chain_map(gammas, resP, resN):
        raise LiftError("invalid chain map")

    def pmod(i):
        return resP.modules[i] if 0 <= i <= resP.length else GradedFreeModule(ring, ())

    def nmod(i):
        return resN.modules[i] if 0 <= i <= resN.length else GradedFreeModule(ring, ())

    top = max(resP.length + 1, resN.length)
    modules = [nmod(0)]
    for j in range(1, top + 1):
        modules.append(pmod(j - 1).direct_sum(nmod(j)))
    while len(modules) > 1 and modules[-1].rank == 0:
        modules.pop()

    maps = [None]
    for j in range(1, len(modules)):
        target = modules[j - 1]
        cols = []
        gp = pmod(j - 1)
        gn = nmod(j)
        sign = (-1) ** (j + 1)
        g_rank_prev = pmod(j - 2).rank if j >= 2 else 0
        for c in range(gp.rank):
            if j == 1:
                cols.append(gammas[0].columns[c])
                continue
            p_part = resP.maps[j - 1].columns[c].components
            n_part = gammas[j - 1].columns[c].scale(1 if sign == 1 else ring.p - 1)
            cols.append(FreeElem(target, tuple(p_part) + tuple(n_part.components)))
        for c in range(gn.rank):
            ncol = resN.maps[j].columns[c].components
            zeros = (ring.zero,) * g_rank_prev
            cols.append(FreeElem(target, zeros + tuple(ncol)))
        maps.append(GradedMap(modules[j], target, cols))

    cone = Resolution(ring, modules, maps)
    if not cone.check_complex():
        raise LiftError("mapping cone is not a complex (invalid chain map)")
    cone.minimal = not cone.has_constant_entry()
    return cone


def koszul_complex(forms) -> Resolution:
    """Koszul complex on the given forms, as a resolution of R / (forms).

    Exact precisely when the forms are a regular sequence, which is checked
    through the codimension and recorded in meta["regular_sequence"].
    """
    forms = list(forms)
    if not forms:
        raise ResolutionError("at least one form is required")
    ring = forms[0].ring
    t = len(forms)
    if t > ring.nvars:
        raise ResolutionError("more forms than variables cannot be regular")
    degs = []
    for f in forms:
        if f.is_zero() or f.degree is None:
            raise ResolutionError("forms must be nonzero and homogeneous")
        degs.append(f.degree)

    from itertools import combinations

    levels = []
    for j in range(t + 1):
        subsets = list(combinations(range(t), j))
        twists = tuple(sum(degs[i] for i in S) for S in subsets)
        levels.append((subsets, GradedFreeModule(ring, twists)))

    modules = [levels[j][1] for j in range(t + 1)]
    maps = [None]
    for j in range(1, t + 1):
        subsets, Fj = levels[j]
        prev_subsets, Fprev = levels[j - 1]
        pos = {S: idx for idx, S in enumerate(prev_subsets)}
        cols = []
        for S in subsets:
            comps = [ring.zero] * Fprev.rank
            for k, i in enumerate(S):
                rest = S[:k] + S[k + 1 :]
                sign = (-1) ** k
                val = forms[i] if sign == 1 else -forms[i]
                comps[pos[rest]] = comps[pos[rest]] + val
            cols.append(FreeElem(Fprev, comps))
        maps.append(GradedMap(Fj, Fprev, cols))

    res = Resolution(ring, modules, maps)
    if not res.check_complex():
        raise ResolutionError("Koszul differential failed d o d = 0")
    res.minimal = not res.has_constant_entry()

    from .presentations import IdealHandle

    inv = hilbert.invariants(
        IdealHandle(ring, forms).quotient_presentation().hilbert_series()
    )
    res.meta["regular_sequence"] = inv.codim == t
    return res


def tensor_complexes(resA: Resolution, resB: Resolution) -> Resolution:
    """Total complex of the tensor product of two cyclic-type resolutions.

    Level h is the direct sum of A_i x B_j over i + j = h (ascending i); the
    differential restricted to A_i x B_j is (dA x 1) + (-1)^i (1 x dB).
    Resolves R/(I_A + I_B) when the two quotients are transversal; block
    layout is recorded in meta["blocks"] as (i, j, offset, rank) tuples.
    """
    ring = resA.ring
    if resA.modules[0].twists != (0,) or resB.modules[0].twists != (0,):
        raise ResolutionError("tensor product expects resolutions of cyclic quotients")
    la, lb = resA.length, resB.length

    blocks = []
    modules = []
    offsets = []
    for h in range(la + lb + 1):
        twists = []
        level_blocks = []
        level_offsets = {}
        for i in range(max(0, h - lb), min(la, h) + 1):
            j = h - i
            ra = resA.modules[i].rank
            rb = resB.modules[j].rank
            level_offsets[(i, j)] = len(twists)
            level_blocks.append((i, j, len(twists), ra * rb))
            for a_idx in range(ra):
                for b_idx in range(rb):
                    twists.append(
                        resA.modules[i].twists[a_idx] + resB.modules[j].twists[b_idx]
                    )
        blocks.append(level_blocks)
        offsets.append(level_offsets)
        modules.append(GradedFreeModule(ring, twists))

    maps = [None]
    for h in range(1, la + lb + 1):
        target = modules[h - 1]
        cols = []
        for (i, j, off, _size) in blocks[h]:
            ra = resA.modules[i].rank
            rb = resB.modules[j].rank
            for a_idx in range(ra):
                for b_idx in range(rb):
                    comps = [ring.zero] * target.rank
                    if i >= 1:
                        dest = offsets[h - 1][(i - 1, j)]
                        acol = resA.maps[i].columns[a_idx]
                        rprev = resA.modules[i - 1].rank
                        for c in range(rprev):
                            poly = acol.components[c]
                            if not poly.is_zero():
                                comps[dest + c * rb + b_idx] = (
                                    comps[dest + c * rb + b_idx] + poly
                                )
                    if j >= 1:
                        dest = offsets[h - 1][(i, j - 1)]
                        bcol = resB.maps[j].columns[b_idx]
                        rprev = resB.modules[j - 1].rank
                        sign = (-1) ** i
                        for c in range(rprev):
                            poly = bcol.components[c]
                            if not poly.is_zero():
                                val = poly if sign == 1 else -poly
                                comps[dest + a_idx * rprev + c] = (
                                    comps[dest + a_idx * rprev + c] + val
                                )
                    cols.append(FreeElem(target, comps))
        maps.append(GradedMap(modules[h], target, cols))

    res = Resolution(ring, modules, maps, meta={"blocks": blocks})
    if not res.check_complex():
        raise ResolutionError("tensor differential failed d o d = 0")
    res.minimal = not res.has_constant_entry()
    return res
