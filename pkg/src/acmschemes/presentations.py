"""Finitely presented graded modules, ideal handles and reproducible seeds."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .freemod import FreeElem, GradedFreeModule, GradedMap, TOP
from .gb import GroebnerBasis, buchberger, kernel_of_free_map, reduce, submodule_contains
from .ring import Polynomial, PolyRing, RingError


class PresentationError(RingError):
    pass


class ModulePresentation:
    """A graded module given as the cokernel of a map between free modules.

    Generators are the target twists of the relation map; relation columns are
    homogeneous elements of the cover.  When the module was born as a
    submodule (syzygy modules, kernels, Hom modules) the embedding records the
    ambient free module together with the generator images.
    """

    __slots__ = ("ring", "gen_twists", "relations", "embedding", "_rel_gb")

    def __init__(self, ring: PolyRing, gen_twists, relations: GradedMap | None = None,
                 embedding: GradedMap | None = None):
        self.ring = ring
        self.gen_twists = tuple(gen_twists)
        cover = GradedFreeModule(ring, self.gen_twists)
        if relations is None:
            relations = GradedMap(GradedFreeModule(ring, ()), cover, ())
        if relations.target != cover:
            raise PresentationError("relation map does not land in the cover")
        self.relations = relations
        if embedding is not None:
            if embedding.source != cover:
                raise PresentationError("embedding must start at the cover")
            for col in relations.columns:
                if not embedding.apply(col).is_zero():
                    raise PresentationError(
                        "relations do not annihilate the embedded generators"
                    )
        self.embedding = embedding
        self._rel_gb = None

    # -- construction helpers ----------------------------------------------

    @classmethod
    def free(cls, ring, twists) -> "ModulePresentation":
        return cls(ring, twists)

    def cover(self) -> GradedFreeModule:
        return self.relations.target

    @property
    def ngens(self):
        return len(self.gen_twists)

    def rel_gb(self) -> GroebnerBasis:
        if self._rel_gb is None:
            cols = [c for c in self.relations.columns if not c.is_zero()]
            self._rel_gb = buchberger(cols, order=TOP, ambient=self.cover())
        return self._rel_gb

    def is_free_presentation(self):
        return all(c.is_zero() for c in self.relations.columns)

    def is_zero(self) -> bool:
        cover = self.cover()
        gb = self.rel_gb()
        return all(
            submodule_contains(cover.unit(i), gb) for i in range(cover.rank)
        )

    def shifted(self, k: int) -> "ModulePresentation":
        """The twisted module M(k): degrees drop by k."""
        ring = self.ring
        new_twists = tuple(a - k for a in self.gen_twists)
        cover = GradedFreeModule(ring, new_twists)
        src = GradedFreeModule(ring, tuple(a - k for a in self.relations.source.twists))
        cols = [FreeElem(cover, c.components) for c in self.relations.columns]
        return ModulePresentation(ring, new_twists, GradedMap(src, cover, cols))

    def direct_sum(self, other: "ModulePresentation") -> "ModulePresentation":
        ring = self.ring
        twists = self.gen_twists + other.gen_twists
        cover = GradedFreeModule(ring, twists)
        n1, n2 = self.ngens, other.ngens
        zero = ring.zero
        cols = []
        for c in self.relations.columns:
            cols.append(FreeElem(cover, c.components + (zero,) * n2))
        for c in other.relations.columns:
            cols.append(FreeElem(cover, (zero,) * n1 + c.components))
        src = GradedFreeModule(
            ring, self.relations.source.twists + other.relations.source.twists
        )
        embedding = None
        if self.embedding is not None and other.embedding is not None:
            amb = self.embedding.target.direct_sum(other.embedding.target)
            r1 = self.embedding.target.rank
            r2 = other.embedding.target.rank
            ecols = []
            for c in self.embedding.columns:
                ecols.append(FreeElem(amb, c.components + (zero,) * r2))
            for c in other.embedding.columns:
                ecols.append(FreeElem(amb, (zero,) * r1 + c.components))
            embedding = GradedMap(cover, amb, ecols)
        return ModulePresentation(
            ring, twists, GradedMap(src, cover, cols), embedding=embedding
        )

    # -- resolution-backed data (lazy import keeps layering clean) ----------

    def resolution(self, minimal=True):
        from . import resolve

        res = resolve.full_resolution(self)
        return resolve.minimalize(res) if minimal else res

    def hilbert_series(self):
        from . import hilbert

        return hilbert.hilbert_series(self.resolution(minimal=False))

    def betti(self):
        from . import resolve

        return resolve.betti(self.resolution())

    def pd(self):
        res = self.resolution()
        return res.proj_dim()

    def rank(self):
        from . import hilbert

        return hilbert.module_rank(self.resolution(minimal=False))

    def __repr__(self):
        return (
            f"ModulePresentation({self.ngens} gens {list(self.gen_twists)}, "
            f"{len(self.relations.columns)} relations)"
        )


class IdealHandle:
    """A homogeneous ideal: generator list plus a cached reduced basis."""

    __slots__ = ("ring", "gens", "_gb", "_saturated")

    def __init__(self, ring: PolyRing, gens, saturated: bool | None = None):
        cleaned = []
        seen = set()
        for f in gens:
            if f.is_zero():
                continue
            if not f.is_homogeneous():
                raise PresentationError(f"inhomogeneous ideal generator: {f}")
            if f not in seen:
                seen.add(f)
                cleaned.append(f)
        self.ring = ring
        self.gens = tuple(cleaned)
        self._gb = None
        self._saturated = saturated

    def ambient(self) -> GradedFreeModule:
        return GradedFreeModule(self.ring, (0,))

    def as_elems(self):
        amb = self.ambient()
        return [FreeElem(amb, (f,)) for f in self.gens]

    def gb(self) -> GroebnerBasis:
        if self._gb is None:
            self._gb = buchberger(self.as_elems(), order=TOP, ambient=self.ambient())
        return self._gb

    def gb_polys(self):
        return [e.components[0] for e in self.gb().elements]

    def is_zero(self):
        return not self.gens

    def contains_poly(self, f: Polynomial) -> bool:
        rem, _ = reduce(FreeElem(self.ambient(), (f,)), self.gb())
        return rem.is_zero()

    def contains(self, other: "IdealHandle") -> bool:
        return all(self.contains_poly(f) for f in other.gens)

    def equals(self, other: "IdealHandle") -> bool:
        return self.contains(other) and other.contains(self)

    def quotient_presentation(self) -> ModulePresentation:
        """R/I as a module: one generator in degree 0, relations = generators."""
        cover = GradedFreeModule(self.ring, (0,))
        cols = [FreeElem(cover, (f,)) for f in self.gens]
        src = GradedFreeModule(self.ring, tuple(f.degree for f in self.gens))
        return ModulePresentation(
            self.ring, (0,), GradedMap(src, cover, cols)
        )

    def module_presentation(self) -> ModulePresentation:
        """I as a module: generators, their syzygies, embedded into R."""
        amb = self.ambient()
        twists = tuple(f.degree for f in self.gens)
        syz = kernel_of_free_map(self.as_elems(), amb, source_twists=twists)
        cover = GradedFreeModule(self.ring, twists)
        cols = [FreeElem(cover, s.components) for s in syz]
        src = GradedFreeModule(self.ring, tuple(s.degree for s in syz))
        embedding = GradedMap(
            cover, amb, [FreeElem(amb, (f,)) for f in self.gens]
        )
        return ModulePresentation(
            self.ring, twists, GradedMap(src, cover, cols), embedding=embedding
        )

    def min_gen_count(self) -> int:
        """Number of minimal generators, read off the minimal resolution."""
        res = self.quotient_presentation().resolution()
        return res.modules[1].rank if res.length >= 1 else 0

    def __repr__(self):
        return f"IdealHandle({', '.join(str(f) for f in self.gens)})"


@dataclass(frozen=True)
class Seed:
    """Reproducible randomness: a 64-bit value plus a derivation path."""

    value: int
    path: tuple = field(default_factory=tuple)

    def child(self, *parts) -> "Seed":
        return Seed(self.value, self.path + tuple(parts))

    def rng(self) -> random.Random:
        material = repr((self.value, self.path)).encode()
        digest = hashlib.sha256(material).digest()
        return random.Random(int.from_bytes(digest[:8], "big"))

    def __repr__(self):
        if self.path:
            return f"Seed({self.value}, path={'/'.join(str(p) for p in self.path)})"
        return f"Seed({self.value})"
