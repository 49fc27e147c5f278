"""HOMFLYPT polynomial by skein recursion over descending diagrams.

Convention: ``a^-1 P(L+) - a P(L-) = z P(L0)`` and ``P(unknot) = 1``, where
``a`` is the curl phase alpha.  At the first crossing met under-first along
the traversal, the relation is solved for the diagram at hand:

    P(L+) = a^2 P(L-) + a z P(L0)
    P(L-) = a^-2 P(L+) - a^-1 z P(L0)

Switching that crossing leaves one fewer bad crossing and smoothing leaves
one fewer crossing, so the recursion ends on descending diagrams, which are
unlinks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .diagram import IN_SLOT, LinkDiagram, canonical_key
from .errors import BadIndex, RecursionBudgetExceeded
from .laurent import ALPHA, ONE, Z, LaurentPoly1H, LaurentPoly2
from .moves import smooth_crossing, switch_crossing

__all__ = [
    "SkeinConfig",
    "SkeinNode",
    "SkeinEngine",
    "Ordering",
    "homflypt",
    "unlink_value",
    "default_ordering",
    "random_ordering",
    "is_descending",
    "first_bad_crossing",
    "verify_skein",
    "skein_residual",
    "specialize_jones",
    "specialize_trivial",
]

# (component index, basepoint arc) pairs, in traversal order
Ordering = list[tuple[int, int]]

DELTA = (ALPHA ** -1 - ALPHA) * Z ** -1


@dataclass(frozen=True)
class SkeinConfig:
    max_crossings: int = 24
    memo_enabled: bool = True


@dataclass
class SkeinNode:
    key: bytes
    value: LaurentPoly2 | None = None
    children: tuple[bytes, bytes] | None = None


def unlink_value(n: int) -> LaurentPoly2:
    """P of the n-component unlink: ``((a^-1 - a) / z) ** (n - 1)``."""
    if n < 1:
        raise ValueError("an unlink has at least one component")
    return DELTA ** (n - 1)


def default_ordering(d: LinkDiagram) -> Ordering:
    return [(i, comp[0]) for i, comp in enumerate(d.components)]


def random_ordering(d: LinkDiagram, rng: random.Random) -> Ordering:
    order = list(range(d.n_components))
    rng.shuffle(order)
    return [(i, rng.choice(d.components[i])) for i in order]


def _check_ordering(d: LinkDiagram, ordering: Ordering) -> None:
    if sorted(i for i, _ in ordering) != list(range(d.n_components)):
        raise BadIndex("ordering must list every component exactly once")
    for i, base in ordering:
        if base not in d.components[i]:
            raise BadIndex(f"basepoint arc {base} is not on component {i}")


def first_bad_crossing(d: LinkDiagram, ordering: Ordering | None = None) -> int | None:
    """Id of the first crossing reached on its under-strand, or None."""
    ordering = default_ordering(d) if ordering is None else ordering
    _check_ordering(d, ordering)
    met: set[int] = set()
    for i, base in ordering:
        if d.is_free(base):
            continue
        arc = base
        while True:
            cid, passage = d.heads[arc]
            if cid not in met:
                if passage == "under":
                    return cid
                met.add(cid)
            arc = d.next_arc(arc)
            if arc == base:
                break
    return None


def is_descending(d: LinkDiagram, ordering: Ordering | None = None) -> bool:
    return first_bad_crossing(d, ordering) is None


class SkeinEngine:
    """Skein evaluator with an optional memo table keyed by diagram normal form.

    ``nodes`` keeps the expanded skein tree; a stored value is never
    replaced.  Concurrent use may compute a key twice, which is harmless as
    both computations agree.
    """

    def __init__(self, config: SkeinConfig | None = None):
        self.config = config or SkeinConfig()
        self.nodes: dict[bytes, SkeinNode] = {}

    def homflypt(self, d: LinkDiagram, ordering: Ordering | None = None) -> LaurentPoly2:
        if d.n_crossings > self.config.max_crossings:
            raise RecursionBudgetExceeded(
                f"{d.n_crossings} crossings exceed max_crossings={self.config.max_crossings}")
        return self._eval(d, ordering)

    def _eval(self, d: LinkDiagram, ordering: Ordering | None) -> LaurentPoly2:
        memo = self.config.memo_enabled
        key = canonical_key(d) if memo else b""
        if memo:
            node = self.nodes.get(key)
            if node is not None and node.value is not None:
                return node.value
        if ordering is None:
            ordering = default_ordering(d)
        bad = first_bad_crossing(d, ordering)
        if bad is None:
            value = unlink_value(d.n_components)
            children = None
        else:
            switched = switch_crossing(d, bad)
            smoothed = smooth_crossing(d, bad)
            p_sw = self._eval(switched, ordering)
            p_sm = self._eval(smoothed, None)
            if d.crossing(bad).sign > 0:
                value = ALPHA ** 2 * p_sw + ALPHA * Z * p_sm
            else:
                value = ALPHA ** -2 * p_sw - ALPHA ** -1 * Z * p_sm
            children = (canonical_key(switched), canonical_key(smoothed)) if memo else None
        if memo:
            self.nodes.setdefault(key, SkeinNode(key, value, children))
        return value


def homflypt(d: LinkDiagram, config: SkeinConfig | None = None,
             ordering: Ordering | None = None) -> LaurentPoly2:
    """HOMFLYPT polynomial ``P(a, z)`` of a diagram."""
    return SkeinEngine(config).homflypt(d, ordering)


def skein_residual(d: LinkDiagram, cid: int, engine: SkeinEngine | None = None) -> LaurentPoly2:
    """``a^-1 P(L+) - a P(L-) - z P(L0)`` for the triple at crossing ``cid``."""
    engine = engine or SkeinEngine()
    x = d.crossing(cid)
    other = switch_crossing(d, cid)
    l_plus, l_minus = (d, other) if x.sign > 0 else (other, d)
    l_zero = smooth_crossing(d, cid)
    return (ALPHA ** -1 * engine.homflypt(l_plus) - ALPHA * engine.homflypt(l_minus)
            - Z * engine.homflypt(l_zero))


def verify_skein(d: LinkDiagram, cid: int, config: SkeinConfig | None = None) -> bool:
    return skein_residual(d, cid, SkeinEngine(config)).is_zero()


_S = LaurentPoly1H.mono(1, 1)
_S_INV = LaurentPoly1H.mono(1, -1)


def specialize_jones(p: LaurentPoly2) -> LaurentPoly1H:
    """Jones polynomial in ``s = t^(1/2)``: ``a -> t``, ``z -> t^(1/2) - t^(-1/2)``."""
    return p.specialize(LaurentPoly1H.mono(1, 2), _S - _S_INV)


def specialize_trivial(p: LaurentPoly2) -> LaurentPoly1H:
    """``a -> s``, ``z -> s^-1 - s``; every HOMFLYPT value collapses to 1."""
    return p.specialize(_S, _S_INV - _S)
