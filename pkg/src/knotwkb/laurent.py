"""Exact Laurent polynomials with integer coefficients.

``LaurentPoly2`` lives in Z[a, a^-1, z, z^-1] and holds HOMFLYPT values;
``LaurentPoly1H`` lives in Z[s, s^-1] where ``s = t^(1/2)``, so half-integer
powers of ``t`` (Jones values) stay integral.
"""
from __future__ import annotations

import re
from typing import Iterable, Mapping

from .errors import MalformedInput, PoleAtZero

__all__ = ["LaurentPoly2", "LaurentPoly1H", "ALPHA", "Z", "ONE", "ZERO"]


def _clean(items: Iterable[tuple[object, int]]) -> dict:
    out: dict = {}
    for key, c in items:
        if c:
            out[key] = out.get(key, 0) + int(c)
    return {k: v for k, v in out.items() if v}


def _power(base, one, n: int):
    result = one
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def _fmt_coeff(c: int, body: str) -> str:
    if not body:
        return str(abs(c))
    if abs(c) == 1:
        return body
    return f"{abs(c)}*{body}"


def _join(pieces: list[tuple[int, str]]) -> str:
    if not pieces:
        return "0"
    out = []
    for i, (c, body) in enumerate(pieces):
        text = _fmt_coeff(c, body)
        if i == 0:
            out.append(("-" if c < 0 else "") + text)
        else:
            out.append((" - " if c < 0 else " + ") + text)
    return "".join(out)


class LaurentPoly2:
    """Immutable element of Z[a^±1, z^±1]; ``a`` stands for alpha.

    Stored as a map ``(e_alpha, e_z) -> coefficient`` with no zero entries,
    so equality is plain dictionary equality.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        clean = _clean(((int(a), int(z)), c) for (a, z), c in (terms or {}).items())
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly2 is immutable")

    @classmethod
    def mono(cls, c: int, e_alpha: int = 0, e_z: int = 0) -> LaurentPoly2:
        return cls({(e_alpha, e_z): c})

    @classmethod
    def const(cls, c: int) -> LaurentPoly2:
        return cls({(0, 0): c})

    @property
    def terms(self) -> dict[tuple[int, int], int]:
        return dict(self._terms)

    def items(self):
        """Terms as ``((e_alpha, e_z), coeff)`` in lexicographic order."""
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other) -> LaurentPoly2:
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly2(_clean(list(self._terms.items()) + list(other._terms.items())))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[tuple[int, int], int] = {}
        for (a1, z1), c1 in self._terms.items():
            for (a2, z2), c2 in other._terms.items():
                key = (a1 + a2, z1 + z2)
                acc[key] = acc.get(key, 0) + c1 * c2
        return LaurentPoly2(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((a, z), c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly2.mono(c ** (-n), a * n, z * n)
        return _power(self, ONE, n)

    def mirror(self) -> LaurentPoly2:
        """Substitute ``a -> a^-1, z -> -z``."""
        return LaurentPoly2({(-a, z): c * (-1) ** (z % 2) for (a, z), c in self._terms.items()})

    def specialize(self, alpha: LaurentPoly1H, z: LaurentPoly1H) -> LaurentPoly1H:
        """Substitute ``a -> alpha`` and ``z -> z`` (both Laurent in ``s``).

        ``alpha`` must be a unit monomial. Negative powers of ``z`` are
        cleared by multiplying through and dividing back out exactly;
        :class:`ArithmeticError` is raised if the quotient is not Laurent.
        """
        if len(alpha._terms) != 1 or abs(next(iter(alpha._terms.values()))) != 1:
            raise ValueError("alpha must map to a unit monomial +-s^k")
        if not self._terms:
            return LaurentPoly1H()
        shift = max(0, -min(ez for _, ez in self._terms))
        z_pows: dict[int, LaurentPoly1H] = {}
        total = LaurentPoly1H()
        for (ea, ez), c in self._terms.items():
            k = ez + shift
            if k not in z_pows:
                z_pows[k] = z ** k
            total = total + (alpha ** ea) * z_pows[k] * c
        if shift:
            total = total.exact_div(z ** shift)
        return total

    def eval_complex(self, alpha: complex, z: complex) -> complex:
        alpha, z = complex(alpha), complex(z)
        if alpha == 0 and any(a < 0 for a, _ in self._terms):
            raise PoleAtZero("negative alpha power evaluated at alpha = 0")
        if z == 0 and any(e < 0 for _, e in self._terms):
            raise PoleAtZero("negative z power evaluated at z = 0")
        return sum((c * alpha ** a * z ** e for (a, e), c in self.items()), 0j)

    def to_json(self) -> list[list[int]]:
        return [[c, a, z] for (a, z), c in self.items()]

    @classmethod
    def from_json(cls, data) -> LaurentPoly2:
        try:
            return cls({(int(a), int(z)): int(c) for c, a, z in data})
        except (TypeError, ValueError) as exc:
            raise MalformedInput(f"bad polynomial triples: {exc}") from None

    def to_text(self) -> str:
        # powers of z ascending, alpha descending inside each z-degree
        order = sorted(self._terms, key=lambda k: (k[1], -k[0]))
        pieces = []
        for a, z in order:
            factors = [_var("a", a), _var("z", z)]
            pieces.append((self._terms[(a, z)], "*".join(f for f in factors if f)))
        return _join(pieces)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly2:
        return cls(_parse_terms(text, {"a": 0, "z": 1}, 2))

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly2({self.to_text()!r})"


def _var(name: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return name
    return f"{name}^{e}"


def _parse_terms(text: str, names: dict[str, int], nvars: int) -> dict:
    src = text.replace(" ", "")
    if src in ("", "0"):
        return {}
    terms: dict = {}
    # split on +/- that are not exponent signs
    chunks = re.split(r"(?<!\^)(?=[+-])", src)
    for chunk in chunks:
        if not chunk:
            continue
        sign = -1 if chunk[0] == "-" else 1
        body = chunk[1:] if chunk[0] in "+-" else chunk
        coeff = 1
        exps = [0] * nvars
        for factor in body.split("*"):
            m = re.fullmatch(r"(\d+)|([a-z])(?:\^(-?\d+))?", factor)
            if not m:
                raise MalformedInput(f"cannot parse factor {factor!r} in {text!r}")
            if m.group(1):
                coeff *= int(m.group(1))
            else:
                var = m.group(2)
                if var not in names:
                    raise MalformedInput(f"unknown variable {var!r}")
                exps[names[var]] += int(m.group(3) or 1)
        key = tuple(exps) if nvars > 1 else exps[0]
        terms[key] = terms.get(key, 0) + sign * coeff
    return terms


class LaurentPoly1H:
    """Immutable element of Z[s^±1] with ``s = t^(1/2)``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        object.__setattr__(self, "_terms", _clean((int(e), c) for e, c in (terms or {}).items()))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly1H is immutable")

    @classmethod
    def mono(cls, c: int, e_s: int = 0) -> LaurentPoly1H:
        return cls({e_s: c})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1H.mono(other)
        if not isinstance(other, LaurentPoly1H):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(frozenset(self._terms.items())))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, LaurentPoly1H):
            return other
        if isinstance(other, int):
            return LaurentPoly1H.mono(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return LaurentPoly1H(_clean(list(self._terms.items()) + list(other._terms.items())))

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly1H({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly1H(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._terms.items()
            if abs(c) != 1:
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly1H.mono(c ** (-n), e * n)
        return _power(self, LaurentPoly1H.mono(1), n)

    def exact_div(self, other: LaurentPoly1H) -> LaurentPoly1H:
        """Quotient ``self / other``; raises ArithmeticError unless exact."""
        if not other._terms:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = dict(self._terms)
        d_items = other.items()
        d_lo, d_hi = d_items[0][0], d_items[-1][0]
        lead = other._terms[d_hi]
        span = d_hi - d_lo
        quot: dict[int, int] = {}
        while rem:
            hi = max(rem)
            if hi - min(rem) < span:
                raise ArithmeticError("division is not exact")
            c, r = divmod(rem[hi], lead)
            if r:
                raise ArithmeticError("division is not exact over the integers")
            shift = hi - d_hi
            quot[shift] = c
            for e, dc in d_items:
                v = rem.get(e + shift, 0) - c * dc
                if v:
                    rem[e + shift] = v
                else:
                    rem.pop(e + shift, None)
        return LaurentPoly1H(quot)

    def eval_complex(self, s: complex) -> complex:
        s = complex(s)
        if s == 0 and any(e < 0 for e in self._terms):
            raise PoleAtZero("negative power evaluated at s = 0")
        return sum((c * s ** e for e, c in self.items()), 0j)

    def to_text(self, var: str = "t") -> str:
        """Render in ``t`` (half-integer exponents) or, with ``var='s'``, in ``s``."""
        pieces = []
        for e, c in sorted(self._terms.items(), reverse=True):
            if var == "s":
                body = _var("s", e)
            elif e % 2 == 0:
                body = _var("t", e // 2)
            else:
                body = f"t^({e}/2)"
            pieces.append((c, body))
        return _join(pieces)

    @classmethod
    def parse(cls, text: str) -> LaurentPoly1H:
        """Parse text written in ``s``."""
        return cls(_parse_terms(text, {"s": 0}, 1))

    def to_json(self) -> list[list[int]]:
        return [[c, e] for e, c in self.items()]

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"LaurentPoly1H({self.to_text('s')!r})"


ONE = LaurentPoly2.const(1)
ZERO = LaurentPoly2()
ALPHA = LaurentPoly2.mono(1, 1, 0)
Z = LaurentPoly2.mono(1, 0, 1)
