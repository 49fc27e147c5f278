"""Helicity phases ``psi = exp(2 pi i lambda H)`` with exact exponent bookkeeping.

A :class:`Phase` stores the integer power ``n`` with ``psi = alpha**n``
where ``alpha = exp(2 pi i lambda)``.  Ratios of phases under surgery are
then compared as integers, never as floating-point numbers.
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

from .diagram import CrossingSite, LinkDiagram, writhe
from .errors import BadSite, KnotError

__all__ = [
    "PhaseParam",
    "Phase",
    "IntegerLambdaWarning",
    "alpha_of",
    "psi_diagram",
    "psi_geometric",
    "surgery_ratio",
    "verify_curl_balance",
    "HELICITY_TOL",
]

HELICITY_TOL = 1e-4


class IntegerLambdaWarning(UserWarning):
    """Raised for integer lambda, where every phase collapses to 1."""


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, Rational):
        return Fraction(x)
    f = float(x)
    if not math.isfinite(f):
        raise ValueError("lambda must be finite")
    short = Fraction(f).limit_denominator(10 ** 6)
    return short if float(short) == f else Fraction(f)


def _turn(fraction_of_turn: Fraction) -> complex:
    """``exp(2 pi i q)``, exact on quarter turns."""
    q = fraction_of_turn % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j, Fraction(3, 4): -1j}
    if q in exact:
        return exact[q]
    return cmath.exp(2j * math.pi * float(q))


@dataclass(frozen=True)
class PhaseParam:
    """``lam`` is the WKB parameter, ``-1/k`` for Chern-Simons level ``k``."""

    lam: Fraction

    def __init__(self, lam: Real | str, *, warn: bool = True):
        value = Fraction(lam) if isinstance(lam, str) else _as_fraction(lam)
        object.__setattr__(self, "lam", value)
        if warn and value.denominator == 1 and value != 0:
            warnings.warn(f"lambda={value} is an integer: every phase equals 1",
                          IntegerLambdaWarning, stacklevel=2)

    @classmethod
    def from_k(cls, k: Real) -> PhaseParam:
        if k == 0:
            raise ValueError("k must be nonzero")
        return cls(-1 / _as_fraction(k))

    @property
    def alpha(self) -> complex:
        return _turn(self.lam)


@dataclass(frozen=True)
class Phase:
    """``alpha ** power`` for the parameter ``param``."""

    param: PhaseParam
    power: int

    @property
    def exponent(self) -> Fraction:
        """Turns: ``value == exp(2 pi i * exponent)``."""
        return self.param.lam * self.power

    @property
    def value(self) -> complex:
        return _turn(self.exponent)

    def __mul__(self, other: Phase) -> Phase:
        self._same(other)
        return Phase(self.param, self.power + other.power)

    def __truediv__(self, other: Phase) -> Phase:
        self._same(other)
        return Phase(self.param, self.power - other.power)

    def __pow__(self, n: int) -> Phase:
        return Phase(self.param, self.power * n)

    def _same(self, other: Phase) -> None:
        if not isinstance(other, Phase) or other.param != self.param:
            raise ValueError("phases must share the same lambda")

    def angle(self) -> float:
        """Phase angle in ``(-pi, pi]``."""
        return cmath.phase(self.value) if self.value != -1 else math.pi

    def to_dict(self) -> dict:
        v = self.value
        return {"psi": {"re": v.real + 0.0, "im": v.imag + 0.0},
                "exponent_over_lambda": self.power,
                "lambda": float(self.param.lam)}


def alpha_of(lam) -> Phase:
    """``alpha = exp(2 pi i lambda)``, the phase of one positive kink."""
    p = lam if isinstance(lam, PhaseParam) else PhaseParam(lam, warn=False)
    return Phase(p, 1)


def psi_diagram(d: LinkDiagram, p: PhaseParam) -> Phase:
    """Blackboard-framed phase: helicity equals the writhe."""
    return Phase(p, writhe(d))


def psi_geometric(link, p: PhaseParam, tol: float = HELICITY_TOL) -> Phase:
    """Phase of a framed polygonal link from its Gauss-integral helicity."""
    from .geometry import helicity_geometric

    h = helicity_geometric(link)
    n = round(h)
    if abs(h - n) > tol:
        raise KnotError(f"helicity {h!r} is not within {tol:g} of an integer")
    return Phase(p, int(n))


def surgery_ratio(d: LinkDiagram, site: CrossingSite | int, sign: int, p: PhaseParam) -> Phase:
    """``psi(after) / psi(before)`` for a rewrite at ``site``.

    A site naming one crossing is a crossing switch (``sign`` is ignored and
    the crossing's own sign decides).  A site naming strands inserts the
    figure-eight ``E_sign`` there.
    """
    from .moves import add_eight, switch_crossing

    if isinstance(site, int):
        site = CrossingSite.at(site)
    if site.crossings and site.arcs:
        raise BadSite("site must name either crossings or arcs")
    if site.crossings:
        if len(site.crossings) != 1:
            raise BadSite("a switch acts on exactly one crossing")
        after = switch_crossing(d, site.crossings[0])
    else:
        if sign not in (1, -1):
            raise BadSite("figure-eight sign must be +1 or -1")
        after = add_eight(d, site, sign)
    return psi_diagram(after, p) / psi_diagram(d, p)


def verify_curl_balance(d0: LinkDiagram, site: CrossingSite, p: PhaseParam) -> bool:
    """Check ``alpha^-1 psi(L+) == alpha psi(L-)`` with ``L+-`` built from ``d0``.

    Exact: both sides are ``alpha`` to the power ``writhe(d0)``.
    """
    from .moves import add_eight

    if site.crossings or not site.arcs:
        raise BadSite("the relation needs a strand site")
    a = alpha_of(p)
    lhs = psi_diagram(add_eight(d0, site, 1), p) / a
    rhs = psi_diagram(add_eight(d0, site, -1), p) * a
    return lhs.power == rhs.power == writhe(d0) and abs(lhs.value - rhs.value) <= 1e-12
