"""Groebner bases for graded submodules of free modules.

Buchberger's algorithm with the normal selection strategy (lowest degree
first, then first-in-first-out), the product criterion (restricted to
single-component elements, where it is sound for modules) and the chain
criterion.  Output bases are reduced, monic and canonically sorted, so
identical inputs give identical bases.

Syzygies are computed through the Schreyer construction: the pairwise
syzygies of a Groebner basis form a Groebner basis of the syzygy module with
respect to the order induced by the labeled generators.
"""

from __future__ import annotations

import heapq

from .freemod import FreeElem, GradedFreeModule, SchreyerOrder, TOP
from .ring import (
    Polynomial,
    RingError,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)


class GBError(RingError):
    pass


def _term_elem(module, comp, mono, coeff):
    z = module.ring.zero
    t = Polynomial(module.ring, ((mono, coeff % module.ring.p),))
    return FreeElem(module, tuple(t if i == comp else z for i in range(module.rank)))


def _canonical_key(elem, order):
    """Sort key grouping by lead component, then lead monomial lex-descending.

    Within one component this ordering makes iterated Schreyer syzygies drop
    one variable from the lead terms per homological step, which bounds the
    length of every resolution chain.
    """
    comp, mono, _ = elem.lead_term(order)
    return (comp, tuple(-e for e in mono))


class GroebnerBasis:
    """A list of monic module elements closed under S-pair reduction."""

    __slots__ = ("ambient", "order", "elements", "reps", "input_module", "_leads")

    def __init__(self, ambient, order, elements, reps=None, input_module=None):
        self.ambient = ambient
        self.order = order
        self.elements = tuple(elements)
        self.reps = tuple(reps) if reps is not None else None
        self.input_module = input_module
        self._leads = None

    def lead_terms(self):
        if self._leads is None:
            self._leads = tuple(
                (c, m) for c, m, _ in (g.lead_term(self.order) for g in self.elements)
            )
        return self._leads

    def degrees(self):
        return tuple(g.degree for g in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({len(self.elements)} elements in {self.ambient!r})"


def _reduce_list(f, elements, leads, order, track):
    """Full normal form of f against a monic element list; quotients optional."""
    ring = f.module.ring
    p = ring.p
    work = f
    rem = f.module.zero_elem()
    quots = [ring.zero for _ in elements] if track else None
    while True:
        lt = work.lead_term(order)
        if lt is None:
            break
        comp, mono, coeff = lt
        hit = -1
        for idx, (lc, lm) in enumerate(leads):
            if lc == comp and mono_divides(lm, mono):
                hit = idx
                break
        if hit >= 0:
            q = mono_div(mono, leads[hit][1])
            work = work - elements[hit].term_mul(coeff, q)
            if track:
                quots[hit] = quots[hit] + Polynomial(ring, ((q, coeff % p),))
        else:
            t = _term_elem(f.module, comp, mono, coeff)
            rem = rem + t
            work = work - t
    return rem, quots


def reduce(f, gb: GroebnerBasis, track=False):
    """Normal form of f modulo gb; with track, also the quotient list.

    The remainder has no term divisible by a lead term of gb, and
    f = sum(q_i * g_i) + remainder holds exactly.
    """
    if f.module != gb.ambient:
        raise GBError("element and basis live in different ambient modules")
    rem, quots = _reduce_list(f, gb.elements, gb.lead_terms(), gb.order, track)
    if track:
        return rem, tuple(quots)
    return rem, None


def submodule_contains(f, gb: GroebnerBasis) -> bool:
    """True when f lies in the submodule spanned by gb."""
    rem, _ = reduce(f, gb)
    return rem.is_zero()


def _single_component(elem):
    return sum(1 for c in elem.components if not c.is_zero()) == 1


def buchberger(gens, order=TOP, track=False, ambient=None, input_twists=None):
    """Reduced Groebner basis of the submodule generated by gens.

    Homogeneous generators with a common ambient module.  With track=True
    each basis element carries its expression over the input generators, as
    an element of a free module with one generator per input.
    """
    gens = list(gens)
    if ambient is None:
        if not gens:
            raise GBError("ambient module is required for an empty generator list")
        ambient = gens[0].module
    for g in gens:
        if g.module != ambient:
            raise GBError("generators live in different ambient modules")
    ring = ambient.ring

    input_module = None
    if track:
        if input_twists is None:
            input_twists = []
            for g in gens:
                d = g.degree
                if d is None and not g.is_zero():
                    raise GBError("inhomogeneous generator")
                input_twists.append(0 if d is None else d)
        input_module = GradedFreeModule(ring, input_twists)

    basis = []
    reps = []
    leads = []

    pending = set()
    heap = []
    counter = 0

    def push_pairs(t):
        nonlocal counter
        ct, mt = leads[t]
        for i in range(t):
            ci, mi = leads[i]
            if ci != ct:
                continue
            deg = mono_deg(mono_lcm(mi, mt)) + ambient.twists[ct]
            heapq.heappush(heap, (deg, counter, i, t))
            pending.add((i, t))
            counter += 1

    def add_element(g, rep):
        lt = g.lead_term(order)
        inv = pow(lt[2], ring.p - 2, ring.p)
        basis.append(g.scale(inv))
        reps.append(rep.scale(inv) if rep is not None else None)
        leads.append((lt[0], lt[1]))
        push_pairs(len(basis) - 1)

    for idx, g in enumerate(gens):
        if g.is_zero():
            continue
        rep = input_module.unit(idx) if track else None
        add_element(g, rep)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.discard((i, j))
        ci, mi = leads[i]
        cj, mj = leads[j]
        lcm = mono_lcm(mi, mj)
        if (
            mono_mul(mi, mj) == lcm
            and _single_component(basis[i])
            and _single_component(basis[j])
        ):
            continue  # product criterion
        skip = False
        for k, (ck, mk) in enumerate(leads):
            if k in (i, j) or ck != ci or not mono_divides(mk, lcm):
                continue
            a = (min(i, k), max(i, k))
            b = (min(j, k), max(j, k))
            if a not in pending and b not in pending:
                skip = True
                break
        if skip:
            continue  # chain criterion
        ui = mono_div(lcm, mi)
        uj = mono_div(lcm, mj)
        s = basis[i].term_mul(1, ui) - basis[j].term_mul(1, uj)
        rem, quots = _reduce_list(s, basis, leads, order, track)
        if rem.is_zero():
            continue
        rep = None
        if track:
            rep = reps[i].term_mul(1, ui) - reps[j].term_mul(1, uj)
            for q, rq in zip(quots, reps):
                if not q.is_zero():
                    rep = rep - rq.poly_mul(q)
        add_element(rem, rep)

    # minimal basis: drop elements whose lead is divisible by another kept lead
    idx_by_lead = sorted(
        range(len(basis)), key=lambda t: (mono_deg(leads[t][1]), leads[t][0], t)
    )
    kept = []
    for t in idx_by_lead:
        ct, mt = leads[t]
        if any(leads[k][0] == ct and mono_divides(leads[k][1], mt) for k in kept):
            continue
        kept.append(t)

    elements = [basis[t] for t in kept]
    element_reps = [reps[t] for t in kept] if track else None
    kept_leads = [leads[t] for t in kept]

    # tail interreduction: one pass yields the unique reduced basis
    for t in range(len(elements)):
        others = elements[:t] + elements[t + 1 :]
        other_leads = kept_leads[:t] + kept_leads[t + 1 :]
        rem, quots = _reduce_list(elements[t], others, other_leads, order, track)
        if track and rem != elements[t]:
            rep = element_reps[t]
            other_reps = element_reps[:t] + element_reps[t + 1 :]
            for q, rq in zip(quots, other_reps):
                if not q.is_zero():
                    rep = rep - rq.poly_mul(q)
            element_reps[t] = rep
        elements[t] = rem

    perm = sorted(
        range(len(elements)), key=lambda t: _canonical_key(elements[t], order)
    )
    elements = [elements[t] for t in perm]
    if track:
        element_reps = [element_reps[t] for t in perm]

    return GroebnerBasis(
        ambient, order, elements, reps=element_reps, input_module=input_module
    )


def syzygy_basis(gb: GroebnerBasis) -> GroebnerBasis:
    """Schreyer syzygies of a Groebner basis, pruned to a minimal basis.

    Lives in a free module with one generator per basis element (twist = the
    element's degree) and is itself a Groebner basis for the induced order.
    """
    ring = gb.ambient.ring
    degrees = gb.degrees()
    E = GradedFreeModule(ring, degrees)
    labels = gb.lead_terms()
    sord = SchreyerOrder(gb.order, labels)

    syzygies = []
    n = len(gb.elements)
    for i in range(n):
        ci, mi = labels[i]
        for j in range(i + 1, n):
            cj, mj = labels[j]
            if ci != cj:
                continue
            lcm = mono_lcm(mi, mj)
            ui = mono_div(lcm, mi)
            uj = mono_div(lcm, mj)
            s = gb.elements[i].term_mul(1, ui) - gb.elements[j].term_mul(1, uj)
            rem, quots = _reduce_list(s, gb.elements, labels, gb.order, True)
            if not rem.is_zero():
                raise GBError("input basis is not a Groebner basis")
            comps = [-q for q in quots]
            comps[i] = comps[i] + Polynomial(ring, ((ui, 1),))
            comps[j] = comps[j] - Polynomial(ring, ((uj, 1),))
            syzygies.append(FreeElem(E, comps))

    # prune to a minimal basis under the Schreyer order
    syz_leads = [s.lead_term(sord) for s in syzygies]
    idx_sorted = sorted(
        range(len(syzygies)),
        key=lambda t: (mono_deg(syz_leads[t][1]), syz_leads[t][0], t),
    )
    kept = []
    for t in idx_sorted:
        ct, mt, _ = syz_leads[t]
        if any(
            syz_leads[k][0] == ct and mono_divides(syz_leads[k][1], mt) for k in kept
        ):
            continue
        kept.append(t)
    elements = [syzygies[t].monic(sord) for t in kept]
    leads = [(syz_leads[t][0], syz_leads[t][1]) for t in kept]
    for t in range(len(elements)):
        others = elements[:t] + elements[t + 1 :]
        other_leads = leads[:t] + leads[t + 1 :]
        rem, _ = _reduce_list(elements[t], others, other_leads, sord, False)
        elements[t] = rem
    elements.sort(key=lambda s: _canonical_key(s, sord))
    return GroebnerBasis(E, sord, elements)


def kernel_of_free_map(columns, ambient, source_twists=None):
    """Generators of the syzygy module of the given columns.

    columns are homogeneous elements of ambient; the result is a list of
    elements of a free module E with one generator per column (twist = the
    column's degree), each an exact relation among the columns.
    """
    columns = list(columns)
    ring = ambient.ring
    if source_twists is None:
        source_twists = []
        for v in columns:
            d = v.degree
            if d is None and not v.is_zero():
                raise GBError("inhomogeneous column")
            source_twists.append(0 if d is None else d)
    E = GradedFreeModule(ring, source_twists)

    nonzero = [l for l, v in enumerate(columns) if not v.is_zero()]
    out = []
    for l, v in enumerate(columns):
        if v.is_zero():
            out.append(E.unit(l))
    if not nonzero:
        return out

    gb = buchberger(
        [columns[l] for l in nonzero],
        order=TOP,
        track=True,
        ambient=ambient,
        input_twists=[source_twists[l] for l in nonzero],
    )
    A = gb.reps  # basis element m = sum_l A[m][l] * column_{nonzero[l]}

    def into_E(elem_nz):
        comps = [ring.zero] * len(columns)
        for pos, l in enumerate(nonzero):
            comps[l] = elem_nz.components[pos]
        return FreeElem(E, comps)

    for s in syzygy_basis(gb).elements:
        acc = gb.input_module.zero_elem()
        for m, poly in enumerate(s.components):
            if not poly.is_zero():
                acc = acc + A[m].poly_mul(poly)
        if not acc.is_zero():
            out.append(into_E(acc))

    # columns not reproduced identically by the basis give extra relations
    for pos, l in enumerate(nonzero):
        rem, quots = reduce(columns[l], gb, track=True)
        if not rem.is_zero():
            raise GBError("column fails to reduce against its own basis")
        acc = gb.input_module.unit(pos)
        for q, rep in zip(quots, A):
            if not q.is_zero():
                acc = acc - rep.poly_mul(q)
        if not acc.is_zero():
            out.append(into_E(acc))

    seen = set()
    unique = []
    for s in out:
        key = s.components
        if key not in seen:
            seen.add(key)
            unique.append(s)
    return unique
