"""Exact arithmetic for homogeneous multivariate polynomials over a prime field.

The ground ring is R = F_p[x_0, ..., x_r] with the degree-reverse-lexicographic
monomial order fixed once and for all.  Monomials are exponent tuples of length
nvars; polynomials are immutable term lists, strictly descending in degrevlex,
with coefficients in {1, ..., p-1}.
"""

from __future__ import annotations

from typing import Sequence


class RingError(ValueError):
    """Structural problem with a ring, monomial or polynomial."""


class DegreeUndefinedError(RingError):
    """The zero polynomial has no degree."""


def _is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic Miller-Rabin, exact for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# monomials: bare exponent tuples


def mono_deg(m):
    return sum(m)


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Quotient a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def degrevlex_key(m):
    """Sort key realizing degrevlex: larger key = larger monomial."""
    return (sum(m),) + tuple(-e for e in reversed(m))


def monomial_compare(m1, m2) -> int:
    """Degrevlex comparison: -1, 0 or 1 as m1 <, =, > m2."""
    if len(m1) != len(m2):
        raise RingError("monomials live in different rings (nvars mismatch)")
    k1, k2 = degrevlex_key(m1), degrevlex_key(m2)
    return (k1 > k2) - (k1 < k2)


class PolyRing:
    """The graded polynomial ring F_p[x_0, ..., x_r]."""

    __slots__ = ("p", "variables", "nvars", "r", "_gens")

    def __init__(self, p: int, variables: Sequence[str]):
        if not _is_prime(p):
            raise RingError(f"field modulus {p} is not prime")
        if p <= 2:
            raise RingError("p must exceed 2")
        names = tuple(variables)
        if len(names) < 2:
            raise RingError("at least two variables are required")
        if len(set(names)) != len(names):
            raise RingError("variable names must be distinct")
        self.p = p
        self.variables = names
        self.nvars = len(names)
        self.r = self.nvars - 1
        self._gens = None

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.p == other.p
            and self.variables == other.variables
        )

    def __hash__(self):
        return hash((self.p, self.variables))

    def __repr__(self):
        return f"F_{self.p}[{','.join(self.variables)}]"

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, ())

    @property
    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.p
        if c == 0:
            return self.zero
        unit = (0,) * self.nvars
        return Polynomial(self, ((unit, c),))

    def gen(self, i: int) -> "Polynomial":
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, ((m, 1),))

    def gens(self):
        if self._gens is None:
            self._gens = tuple(self.gen(i) for i in range(self.nvars))
        return self._gens

    def monomial(self, exponents) -> "Polynomial":
        m = tuple(exponents)
        if len(m) != self.nvars or any(e < 0 for e in m):
            raise RingError(f"bad exponent vector {m}")
        return Polynomial(self, ((m, 1),))

    def from_dict(self, coeffs: dict) -> "Polynomial":
        return Polynomial(self, _normalize(coeffs, self.p))

    def monomials_of_degree(self, d: int):
        """All monomials of total degree d, descending in degrevlex."""
        if d < 0:
            return []
        out = []

        def rec(prefix, remaining, pos):
            if pos == self.nvars - 1:
                out.append(tuple(prefix + [remaining]))
                return
            for e in range(remaining, -1, -1):
                rec(prefix + [e], remaining - e, pos + 1)

        rec([], d, 0)
        out.sort(key=degrevlex_key, reverse=True)
        return out


def _normalize(coeffs: dict, p: int):
    items = []
    for m, c in coeffs.items():
        c %= p
        if c:
            items.append((m, c))
    items.sort(key=lambda mc: degrevlex_key(mc[0]), reverse=True)
    return tuple(items)


class Polynomial:
    """Immutable sparse polynomial; terms strictly descending in degrevlex."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms):
        self.ring = ring
        self.terms = tuple(terms)

    # -- predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        d = mono_deg(self.terms[0][0])
        return all(mono_deg(m) == d for m, _ in self.terms)

    @property
    def degree(self):
        """Common total degree of the terms, None when inhomogeneous.

        Raises DegreeUndefinedError on the zero polynomial.
        """
        if not self.terms:
            raise DegreeUndefinedError("the zero polynomial has no degree")
        d = mono_deg(self.terms[0][0])
        for m, _ in self.terms[1:]:
            if mono_deg(m) != d:
                return None
        return d

    # -- arithmetic -------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise RingError("operands live in different rings")

    def __add__(self, other):
        self._check_ring(other)
        acc = dict(self.terms)
        p = self.ring.p
        for m, c in other.terms:
            v = acc.get(m, 0) + c
            if v % p:
                acc[m] = v % p
            elif m in acc:
                del acc[m]
        return Polynomial(self.ring, _normalize(acc, p))

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, tuple((m, p - c) for m, c in self.terms))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check_ring(other)
        p = self.ring.p
        acc = {}
        for m1, c1 in self.terms:
            for m2, c2 in other.terms:
                m = mono_mul(m1, m2)
                acc[m] = (acc.get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, _normalize(acc, p))

    __rmul__ = __mul__

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if c == 0:
            return self.ring.zero
        if c == 1:
            return self
        return Polynomial(self.ring, tuple((m, ck * c % p) for m, ck in self.terms))

    def term_mul(self, coeff: int, mono) -> "Polynomial":
        """Multiply by the single term coeff * x^mono."""
        p = self.ring.p
        coeff %= p
        if coeff == 0:
            return self.ring.zero
        return Polynomial(
            self.ring,
            tuple((mono_mul(m, mono), c * coeff % p) for m, c in self.terms),
        )

    def __pow__(self, n: int):
        if n < 0:
            raise RingError("negative powers are not defined")
        out = self.ring.one
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- leading data -----------------------------------------------------

    @property
    def lead_mono(self):
        return self.terms[0][0]

    @property
    def lead_coeff(self):
        return self.terms[0][1]

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        inv = pow(self.lead_coeff, self.ring.p - 2, self.ring.p)
        return self.scale(inv)

    def evaluate(self, point: Sequence[int]) -> int:
        """Value at a point with coordinates in F_p."""
        p = self.ring.p
        total = 0
        for m, c in self.terms:
            v = c
            for x, e in zip(point, m):
                if e:
                    v = v * pow(x, e, p) % p
            total = (total + v) % p
        return total

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring.p, self.ring.variables, self.terms))

    def __str__(self):
        if not self.terms:
            return "0"
        p = self.ring.p
        names = self.ring.variables
        chunks = []
        for m, c in self.terms:
            # symmetric residue for readability
            cs = c if c <= p // 2 else c - p
            factors = []
            for name, e in zip(names, m):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            body = "*".join(factors)
            mag = abs(cs)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            sign = "-" if cs < 0 else "+"
            chunks.append((sign, text))
        first_sign, first_text = chunks[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in chunks[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__


def poly_degree(f: Polynomial):
    """Total degree of a homogeneous polynomial, or None when inhomogeneous."""
    return f.degree


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g
