"""Hilbert series, numerical invariants, Euler characteristics and (H.3).

All arithmetic is exact: series numerators are integer Laurent polynomials
over the fixed denominator (1-t)^(r+1), and Hilbert/Euler polynomials carry
rational coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .ring import RingError


class ZeroModuleError(RingError):
    """Dimension data is undefined for the zero module."""


class HilbertSeries:
    """Numerator over the implicit denominator (1-t)^nvars."""

    __slots__ = ("nvars", "numerator")

    def __init__(self, nvars: int, numerator: dict):
        self.nvars = nvars
        self.numerator = {e: c for e, c in numerator.items() if c}

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def of_twists(cls, nvars, twists, sign=1):
        num = {}
        for a in twists:
            num[a] = num.get(a, 0) + sign
        return cls(nvars, num)

    def __add__(self, other):
        num = dict(self.numerator)
        for e, c in other.numerator.items():
            num[e] = num.get(e, 0) + c
        return HilbertSeries(self.nvars, num)

    def __sub__(self, other):
        num = dict(self.numerator)
        for e, c in other.numerator.items():
            num[e] = num.get(e, 0) - c
        return HilbertSeries(self.nvars, num)

    def shifted(self, j: int) -> "HilbertSeries":
        """Series of M(j): exponents drop by j."""
        return HilbertSeries(self.nvars, {e - j: c for e, c in self.numerator.items()})

    def coefficient(self, d: int) -> int:
        """Hilbert function value dim_K M_d."""
        n = self.nvars
        total = 0
        for e, c in self.numerator.items():
            m = d - e
            if m >= 0:
                total += c * comb(m + n - 1, n - 1)
        return total

    def is_zero(self):
        return not self.numerator

    def __eq__(self, other):
        return (
            isinstance(other, HilbertSeries)
            and self.nvars == other.nvars
            and self.numerator == other.numerator
        )

    def __repr__(self):
        if not self.numerator:
            return f"0 / (1-t)^{self.nvars}"
        parts = []
        for e in sorted(self.numerator):
            c = self.numerator[e]
            parts.append(f"{'+' if c >= 0 and parts else ''}{c}*t^{e}")
        return f"({' '.join(parts)}) / (1-t)^{self.nvars}"


def hilbert_series(res) -> HilbertSeries:
    """Alternating twist generating function of a (possibly non-minimal) resolution."""
    if getattr(res, "truncated", False):
        raise RingError("cannot read a Hilbert series off a truncated resolution")
    nvars = res.ring.nvars
    hs = HilbertSeries.zero(nvars)
    for i, module in enumerate(res.modules):
        hs = hs + HilbertSeries.of_twists(nvars, module.twists, sign=(-1) ** i)
    return hs


def _divide_by_one_minus_t(num: dict) -> dict:
    """Exact quotient num/(1-t); requires num(1) = 0."""
    if sum(num.values()) != 0:
        raise RingError("numerator is not divisible by (1-t)")
    if not num:
        return {}
    # (1-t) q = n gives q_e = n_e + q_{e-1}: prefix sums over a dense window
    lo, hi = min(num), max(num)
    acc = 0
    out = {}
    for e in range(lo, hi + 1):
        acc += num.get(e, 0)
        if acc:
            out[e] = acc
    return out


@dataclass
class NumericalInvariants:
    """Dimension data of a graded module read off its Hilbert series."""

    krull_dim: int
    proj_dim: int  # dimension of the projective scheme, krull_dim - 1
    codim: int
    degree: int
    hilbert_polynomial: "RatPoly"


def invariants(hs: HilbertSeries) -> NumericalInvariants:
    if hs.is_zero():
        raise ZeroModuleError("zero module: dimension undefined")
    num = dict(hs.numerator)
    cancellations = 0
    while sum(num.values()) == 0:
        num = _divide_by_one_minus_t(num)
        cancellations += 1
        if cancellations > hs.nvars:
            raise RingError("numerator has a pole of negative order")
    krull = hs.nvars - cancellations
    degree = sum(num.values())
    hp = RatPoly.zero()
    if krull > 0:
        for e, c in num.items():
            hp = hp + RatPoly.binomial(krull - 1 - e, krull - 1).scale(Fraction(c))
    return NumericalInvariants(
        krull_dim=krull,
        proj_dim=krull - 1,
        codim=cancellations,
        degree=degree,
        hilbert_polynomial=hp,
    )


class RatPoly:
    """Polynomial in one variable with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(Fraction(c) for c in cs)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def binomial(cls, c: int, m: int) -> "RatPoly":
        """binom(t + c, m) as a polynomial in t."""
        if m < 0:
            raise RingError("binomial order must be non-negative")
        coeffs = [Fraction(1)]
        for l in range(m):
            shift = c - l
            new = [Fraction(0)] * (len(coeffs) + 1)
            for i, a in enumerate(coeffs):
                new[i] += a * shift
                new[i + 1] += a
            coeffs = new
        f = Fraction(1, factorial(m))
        return cls(a * f for a in coeffs)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, t):
        val = Fraction(0)
        for a in reversed(self.coeffs):
            val = val * t + a
        return val

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return RatPoly(
            (self.coeffs[i] if i < len(self.coeffs) else 0)
            + (other.coeffs[i] if i < len(other.coeffs) else 0)
            for i in range(n)
        )

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def __neg__(self):
        return self.scale(Fraction(-1))

    def scale(self, c) -> "RatPoly":
        return RatPoly(a * c for a in self.coeffs)

    def leading(self, d: int) -> Fraction:
        """Coefficient of t^d (zero when absent)."""
        return self.coeffs[d] if d < len(self.coeffs) else Fraction(0)

    def is_integer_valued(self, sample=8):
        return all(self(t).denominator == 1 for t in range(-sample, sample + 1))

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{a}*t^{i}" for i, a in enumerate(self.coeffs) if a)


def euler_characteristic(res, shift: int = 0) -> RatPoly:
    """chi of the associated sheaf twisted by t + shift, as a polynomial in t.

    chi(R(-a)(t)) = binom(t - a + r, r) summed with alternating signs over the
    resolution.
    """
    r = res.ring.r
    out = RatPoly.zero()
    for i, module in enumerate(res.modules):
        sign = (-1) ** i
        for a in module.twists:
            out = out + RatPoly.binomial(shift - a + r, r).scale(Fraction(sign))
    return out


def sheaf_degree(res) -> int:
    """First Chern number: alternating sum of -a over all twists R(-a)."""
    total = 0
    for i, module in enumerate(res.modules):
        sign = (-1) ** i
        for a in module.twists:
            total += sign * (-a)
    return total


def module_rank(res) -> int:
    """Rank as r! times the t^r coefficient of the Euler characteristic."""
    r = res.ring.r
    chi = euler_characteristic(res)
    val = chi.leading(r) * factorial(r)
    if val.denominator != 1:
        raise RingError("rank computation produced a non-integer")
    return int(val)


@dataclass
class H3Result:
    """Outcome of the twist/Euler-characteristic hypothesis check."""

    k: int
    s: int
    p: RatPoly
    p_degree: int
    degree_ok: bool
    rank_p: int
    rank_n: int
    rank_ok: bool
    passed: bool


def check_H3(resP, resN, r: int) -> H3Result:
    """Check the numerical hypothesis: deg p = r - s for k = deg(N) - deg(P).

    p(t) = -chi(N(t-k)) + chi(P(t-k)) + binom(t+r, r), with s = pd(P) + 2;
    additionally verifies rank(N) = rank(P) + 1.
    """
    if not resP.minimal or not resN.minimal:
        raise RingError("check_H3 expects minimal resolutions")
    s = resP.proj_dim() + 2
    k = sheaf_degree(resN) - sheaf_degree(resP)
    rank_p = module_rank(resP)
    rank_n = module_rank(resN)
    rank_ok = rank_n == rank_p + 1
    p = (
        (-euler_characteristic(resN, shift=-k))
        + euler_characteristic(resP, shift=-k)
        + RatPoly.binomial(r, r)
    )
    p_degree = p.degree()
    degree_ok = p_degree == r - s
    return H3Result(
        k=k,
        s=s,
        p=p,
        p_degree=p_degree,
        degree_ok=degree_ok,
        rank_p=rank_p,
        rank_n=rank_n,
        rank_ok=rank_ok,
        passed=rank_ok and degree_ok,
    )
