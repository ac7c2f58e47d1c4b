"""Graded free modules, their elements, module term orders and graded maps.

A graded free module is F = R(-a_1) + ... + R(-a_n), stored as the twist list
(a_1, ..., a_n); generator i sits in degree a_i.  A homogeneous element of
degree d has component i homogeneous of degree d - a_i.
"""

from __future__ import annotations

from .ring import (
    Polynomial,
    PolyRing,
    RingError,
    degrevlex_key,
    mono_mul,
)


class GradedFreeModule:
    __slots__ = ("ring", "twists")

    def __init__(self, ring: PolyRing, twists):
        self.ring = ring
        self.twists = tuple(twists)

    @property
    def rank(self):
        return len(self.twists)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and self.ring == other.ring
            and self.twists == other.twists
        )

    def __hash__(self):
        return hash((self.ring.p, self.ring.variables, self.twists))

    def __repr__(self):
        if not self.twists:
            return "0"
        pieces = {}
        for a in self.twists:
            pieces[a] = pieces.get(a, 0) + 1
        return " + ".join(
            f"R({-a})^{n}" if n > 1 else f"R({-a})" for a, n in sorted(pieces.items())
        )

    def elem(self, components) -> "FreeElem":
        return FreeElem(self, components)

    def zero_elem(self) -> "FreeElem":
        z = self.ring.zero
        return FreeElem(self, (z,) * self.rank)

    def unit(self, i: int) -> "FreeElem":
        z = self.ring.zero
        one = self.ring.one
        return FreeElem(
            self, tuple(one if j == i else z for j in range(self.rank))
        )

    def direct_sum(self, other: "GradedFreeModule") -> "GradedFreeModule":
        return GradedFreeModule(self.ring, self.twists + other.twists)


class FreeElem:
    """Homogeneous element of a graded free module (componentwise storage)."""

    __slots__ = ("module", "components")

    def __init__(self, module: GradedFreeModule, components):
        comps = tuple(components)
        if len(comps) != module.rank:
            raise RingError("component count does not match module rank")
        self.module = module
        self.components = comps

    def is_zero(self):
        return all(c.is_zero() for c in self.components)

    @property
    def degree(self):
        """Degree of a homogeneous element; None for zero or inconsistent data."""
        d = None
        for poly, a in zip(self.components, self.module.twists):
            if poly.is_zero():
                continue
            dd = poly.degree
            if dd is None:
                return None
            dd += a
            if d is None:
                d = dd
            elif d != dd:
                return None
        return d

    def __add__(self, other):
        if self.module != other.module:
            raise RingError("elements live in different modules")
        return FreeElem(
            self.module,
            tuple(a + b for a, b in zip(self.components, other.components)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FreeElem(self.module, tuple(-c for c in self.components))

    def scale(self, c: int):
        return FreeElem(self.module, tuple(poly.scale(c) for poly in self.components))

    def term_mul(self, coeff: int, mono):
        return FreeElem(
            self.module, tuple(poly.term_mul(coeff, mono) for poly in self.components)
        )

    def poly_mul(self, f: Polynomial):
        return FreeElem(self.module, tuple(poly * f for poly in self.components))

    def lead_term(self, order):
        """Largest term (component, monomial, coeff) under the module order."""
        best = None
        best_key = None
        for i, poly in enumerate(self.components):
            if poly.is_zero():
                continue
            m = poly.lead_mono
            key = order.key(i, m)
            if best_key is None or key > best_key:
                best_key = key
                best = (i, m, poly.lead_coeff)
        return best

    def monic(self, order):
        lt = self.lead_term(order)
        if lt is None:
            return self
        inv = pow(lt[2], self.module.ring.p - 2, self.module.ring.p)
        return self.scale(inv)

    def __eq__(self, other):
        return (
            isinstance(other, FreeElem)
            and self.module == other.module
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.module, self.components))

    def __repr__(self):
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(str(c) for c in self.components) + ")"


class TermOverPosition:
    """Term-over-position order: degrevlex on monomials, lower position wins ties."""

    __slots__ = ()

    def key(self, comp: int, mono):
        return degrevlex_key(mono) + (-comp,)

    def __repr__(self):
        return "TOP"


class SchreyerOrder:
    """Order induced by a labeled generator list over a base module order.

    Term m*e_i is compared by sending it to m * label_i inside the covered
    module and comparing there under the base order; ties break toward the
    smaller index.
    """

    __slots__ = ("base", "labels")

    def __init__(self, base, labels):
        self.base = base
        self.labels = tuple(labels)  # (component, monomial) lead terms downstairs

    def key(self, comp: int, mono):
        lc, lm = self.labels[comp]
        return self.base.key(lc, mono_mul(mono, lm)) + (-comp,)

    def __repr__(self):
        return f"Schreyer({len(self.labels)} labels over {self.base!r})"


TOP = TermOverPosition()


class GradedMap:
    """Degree-0 map between graded free modules, stored column-wise.

    Column j is the image of source generator j: a homogeneous element of the
    target of degree source.twists[j].  Entry (i, j) therefore has degree
    source.twists[j] - target.twists[i] (or is zero).
    """

    __slots__ = ("source", "target", "columns")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, columns,
                 check: bool = True):
        cols = tuple(columns)
        if len(cols) != source.rank:
            raise RingError("column count does not match source rank")
        if check:
            for j, col in enumerate(cols):
                if col.module != target:
                    raise RingError("column lives in the wrong module")
                d = col.degree
                if d is not None and d != source.twists[j]:
                    raise RingError(
                        f"column {j} has degree {d}, expected {source.twists[j]}"
                    )
        self.source = source
        self.target = target
        self.columns = cols

    @classmethod
    def from_entries(cls, source, target, entries, check=True):
        """Build from a rows-by-columns nested list of polynomials."""
        cols = []
        for j in range(source.rank):
            cols.append(FreeElem(target, tuple(entries[i][j] for i in range(target.rank))))
        return cls(source, target, cols, check=check)

    @classmethod
    def zero(cls, source, target):
        z = target.zero_elem()
        return cls(source, target, (z,) * source.rank, check=False)

    def entry(self, i: int, j: int) -> Polynomial:
        return self.columns[j].components[i]

    def entries(self):
        """Rows-by-columns nested tuple of polynomials."""
        return tuple(
            tuple(self.columns[j].components[i] for j in range(self.source.rank))
            for i in range(self.target.rank)
        )

    def apply(self, elem: FreeElem) -> FreeElem:
        if elem.module != self.source:
            raise RingError("element does not live in the source module")
        out = self.target.zero_elem()
        for poly, col in zip(elem.components, self.columns):
            if not poly.is_zero():
                out = out + col.poly_mul(poly)
        return out

    def compose(self, other: "GradedMap") -> "GradedMap":
        """self o other (apply other first)."""
        if other.target != self.source:
            raise RingError("maps are not composable")
        return GradedMap(
            other.source, self.target, tuple(self.apply(c) for c in other.columns),
            check=False,
        )

    def is_zero(self):
        return all(c.is_zero() for c in self.columns)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMap)
            and self.source == other.source
            and self.target == other.target
            and self.columns == other.columns
        )

    def __repr__(self):
        return f"GradedMap({self.source!r} -> {self.target!r})"
