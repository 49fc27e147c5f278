"""Reference computations that share no code with the package's algorithms.

* Jones polynomial from the Kauffman bracket state sum.
* Gauss linking and writhe integrals by plain midpoint quadrature.
"""
from __future__ import annotations

import itertools
from collections import defaultdict

import numpy as np


def _loops(pairs: list[tuple[int, int]], labels: set[int]) -> int:
    parent = {a: a for a in labels}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(a) for a in labels})


def bracket_jones(diagram: dict) -> dict[int, int]:
    """Jones polynomial of a diagram in JSON form, as {exponent of s: coeff}
    with ``s = t^(1/2)``.

    ``<D> = sum_states A^(#A - #B) d^(loops - 1)`` with ``d = -A^2 - A^-2``,
    ``V = (-A^3)^(-w) <D>`` and ``A = t^(-1/4)``, so ``A^k = s^(-k/2)``.
    """
    xs = diagram["crossings"]
    n_free = sum(1 for c in diagram["components"] if not c) + diagram.get("free_circles", 0)
    labels = {a for x in xs for a in (x["under_in"], x["under_out"], x["over_in"], x["over_out"])}
    w = sum(x["sign"] for x in xs)
    bracket: dict[int, int] = defaultdict(int)  # exponent of A
    for state in itertools.product((0, 1), repeat=len(xs)):
        pairs = []
        n_a = 0
        for x, b in zip(xs, state):
            ui, uo, oi, oo = x["under_in"], x["under_out"], x["over_in"], x["over_out"]
            # A-smoothing joins the regions swept counterclockwise from the over strand
            a_pairs = [(ui, oo), (oi, uo)] if x["sign"] > 0 else [(ui, oi), (uo, oo)]
            b_pairs = [(ui, oi), (uo, oo)] if x["sign"] > 0 else [(ui, oo), (oi, uo)]
            pairs += b_pairs if b else a_pairs
            n_a += 1 - b
        loops = _loops(pairs, labels) + n_free if labels else n_free
        poly = {n_a - (len(xs) - n_a): 1}
        for _ in range(loops - 1):
            nxt: dict[int, int] = defaultdict(int)
            for e, c in poly.items():
                nxt[e + 2] -= c
                nxt[e - 2] -= c
            poly = nxt
        for e, c in poly.items():
            bracket[e] += c
    sign = -1 if w % 2 else 1
    out: dict[int, int] = defaultdict(int)
    for e, c in bracket.items():
        k = e - 3 * w
        assert k % 2 == 0
        out[-k // 2] += sign * c
    return {e: c for e, c in out.items() if c}


def _dense(vertices: np.ndarray, per_segment: int):
    v = np.asarray(vertices, dtype=float)
    d = np.roll(v, -1, axis=0) - v
    t = (np.arange(per_segment) + 0.5) / per_segment
    pts = (v[:, None, :] + t[None, :, None] * d[:, None, :]).reshape(-1, 3)
    dl = np.repeat(d / per_segment, per_segment, axis=0)
    return pts, dl


def gauss_linking_quadrature(c1, c2, per_segment: int = 4) -> float:
    """Midpoint-rule Gauss integral ``(1/4pi) sum (x - y).(dx x dy) / |x - y|^3``."""
    x, dx = _dense(c1, per_segment)
    y, dy = _dense(c2, per_segment)
    total = 0.0
    for i in range(0, len(x), 512):
        r = x[i:i + 512, None, :] - y[None, :, :]
        cr = np.cross(dx[i:i + 512, None, :], dy[None, :, :])
        total += float((np.einsum("ijk,ijk->ij", r, cr) / np.linalg.norm(r, axis=-1) ** 3).sum())
    return total / (4 * np.pi)


def smooth_writhe_quadrature(curve_fn, n: int = 2000) -> float:
    """Writhe of a smooth closed curve ``t -> R^3`` on ``[0, 2pi)`` with
    ``n`` nodes, diagonal cells excluded; the integrand is bounded there."""
    t = 2 * np.pi * np.arange(n) / n
    h = 2 * np.pi / n
    p = curve_fn(t)
    dp = (curve_fn(t + 1e-6) - curve_fn(t - 1e-6)) / 2e-6
    total = 0.0
    for i in range(0, n, 250):
        r = p[i:i + 250, None, :] - p[None, :, :]
        cr = np.cross(dp[i:i + 250, None, :], dp[None, :, :])
        dist = np.linalg.norm(r, axis=-1)
        with np.errstate(divide="ignore", invalid="ignore"):
            val = np.einsum("ijk,ijk->ij", r, cr) / dist ** 3
        val[~np.isfinite(val)] = 0.0
        total += float(val.sum())
    return total * h * h / (4 * np.pi)
