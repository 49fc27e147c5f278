"""Gauss integrals, framings and the Biot-Savart potential for polygonal links.

Segment pairs use the exact solid-angle form of the Gauss integrand
(Klenin & Langowski 2000), so linking numbers of polygons come out integral
up to rounding and no quadrature order has to be chosen.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import Crossing, LinkDiagram, assemble
from .errors import (
    CurvesTooClose,
    DegenerateSegments,
    EpsilonTooLarge,
    MalformedInput,
    PointOnCurve,
)

__all__ = [
    "PolyCurve",
    "FramedGeometricLink",
    "CSConstant",
    "parse_geometric",
    "polygonal_linking",
    "polygonal_writhe",
    "frame_offset",
    "biot_savart",
    "vector_potential",
    "circulation",
    "helicity_geometric",
    "linking_matrix_geometric",
    "project_diagram",
    "segment_distance",
    "braid_link",
]

CONTACT_TOL = 1e-9
_BLOCK = 1 << 18


@dataclass(frozen=True, eq=False)
class PolyCurve:
    """Closed polygon; the last vertex joins the first."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise MalformedInput("vertices must be an (n, 3) array")
        if len(v) < 3:
            raise MalformedInput("a closed curve needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise MalformedInput("vertices must be finite")
        if np.any(np.linalg.norm(np.roll(v, -1, axis=0) - v, axis=1) == 0):
            raise DegenerateSegments("consecutive vertices coincide")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def starts(self) -> np.ndarray:
        return self.vertices

    @property
    def ends(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0)

    def __len__(self):
        return len(self.vertices)

    def reversed(self) -> PolyCurve:
        return PolyCurve(self.vertices[::-1].copy())

    def subdivided(self, n: int) -> PolyCurve:
        """Split each segment into ``n`` equal pieces."""
        if n < 1:
            raise ValueError("n must be positive")
        t = np.arange(n)[None, :, None] / n
        pts = self.starts[:, None, :] + t * (self.ends - self.starts)[:, None, :]
        return PolyCurve(pts.reshape(-1, 3))

    def length(self) -> float:
        return float(np.linalg.norm(self.ends - self.starts, axis=1).sum())


@dataclass(frozen=True)
class CSConstant:
    """Nonzero Chern-Simons level ``k``."""

    k: float

    def __post_init__(self):
        if not math.isfinite(self.k) or self.k == 0:
            raise ValueError("k must be a finite nonzero number")


@dataclass(frozen=True, eq=False)
class FramedGeometricLink:
    components: tuple[PolyCurve, ...]
    framings: tuple[int, ...] = field(default=())

    def __post_init__(self):
        comps = tuple(c if isinstance(c, PolyCurve) else PolyCurve(c) for c in self.components)
        framings = tuple(self.framings) or (0,) * len(comps)
        if len(framings) != len(comps):
            raise MalformedInput("one framing per component is required")
        if not all(isinstance(f, (int, np.integer)) and not isinstance(f, bool) for f in framings):
            raise MalformedInput("framings must be integers")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "framings", tuple(int(f) for f in framings))

    def check_disjoint(self, tol: float = CONTACT_TOL) -> None:
        for i in range(len(self.components)):
            for j in range(i + 1, len(self.components)):
                _check_apart(self.components[i], self.components[j], tol)

    def subdivided(self, n: int) -> FramedGeometricLink:
        return FramedGeometricLink(tuple(c.subdivided(n) for c in self.components), self.framings)

    def to_dict(self) -> dict:
        return {"components": [{"vertices": c.vertices.tolist(), "framing": f}
                               for c, f in zip(self.components, self.framings)]}


def parse_geometric(text: str | bytes) -> FramedGeometricLink:
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    try:
        comps = data["components"]
        curves = tuple(PolyCurve(np.asarray(c["vertices"], dtype=float)) for c in comps)
        framings = tuple(c.get("framing", 0) for c in comps)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"geometric link schema violation: {exc!r}") from None
    link = FramedGeometricLink(curves, framings)
    link.check_disjoint()
    return link


# -- segment geometry ------------------------------------------------------------


def segment_distance(p0, p1, q0, q1) -> np.ndarray:
    """Distances between segments ``p0p1`` and ``q0q1`` (broadcasting)."""
    d1 = p1 - p0
    d2 = q1 - q0
    r = p0 - q0
    a = np.einsum("...i,...i", d1, d1)
    e = np.einsum("...i,...i", d2, d2)
    b = np.einsum("...i,...i", d1, d2)
    c = np.einsum("...i,...i", d1, r)
    f = np.einsum("...i,...i", d2, r)
    denom = a * e - b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        s = np.where(denom > 1e-14 * a * e, (b * f - c * e) / denom, 0.0)
    s = np.clip(s, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(e > 0, (b * s + f) / e, 0.0)
    t_cl = np.clip(t, 0.0, 1.0)
    s = np.where(t != t_cl, np.clip((b * t_cl - c) / a, 0.0, 1.0), s)
    diff = p0 + s[..., None] * d1 - q0 - t_cl[..., None] * d2
    return np.linalg.norm(diff, axis=-1)


def _min_distance(c1: PolyCurve, c2: PolyCurve) -> float:
    best = math.inf
    step = max(1, _BLOCK // len(c2))
    for i in range(0, len(c1), step):
        d = segment_distance(c1.starts[i:i + step, None], c1.ends[i:i + step, None],
                             c2.starts[None], c2.ends[None])
        best = min(best, float(d.min()))
    return best


def _check_apart(c1: PolyCurve, c2: PolyCurve, tol: float) -> None:
    dmin = _min_distance(c1, c2)
    if dmin < tol:
        raise CurvesTooClose(f"curves come within {dmin:.3g} (< {tol:g})")


def _solid_angle_terms(p1, p2, p3, p4) -> np.ndarray:
    """Signed Gauss-integral contribution of segment p1p2 against p3p4."""
    r13, r14 = p3 - p1, p4 - p1
    r23, r24 = p3 - p2, p4 - p2
    n = [np.cross(r13, r14), np.cross(r14, r24), np.cross(r24, r23), np.cross(r23, r13)]
    unit = []
    for v in n:
        norm = np.linalg.norm(v, axis=-1, keepdims=True)
        with np.errstate(divide="ignore", invalid="ignore"):
            unit.append(np.where(norm > 0, v / norm, 0.0))
    omega = np.zeros(unit[0].shape[:-1])
    for k in range(4):
        dot = np.einsum("...i,...i", unit[k], unit[(k + 1) % 4])
        omega += np.arcsin(np.clip(dot, -1.0, 1.0))
    orient = np.sign(np.einsum("...i,...i", np.cross(p4 - p3, p2 - p1), r13))
    return omega * orient / (4 * math.pi)


def _pair_terms(c1: PolyCurve, c2: PolyCurve, skip_adjacent: bool = False):
    """Yield blocks of per-pair contributions, rows in curve order."""
    m = len(c2)
    step = max(1, _BLOCK // m)
    for i in range(0, len(c1), step):
        block = _solid_angle_terms(c1.starts[i:i + step, None], c1.ends[i:i + step, None],
                                   c2.starts[None], c2.ends[None])
        if skip_adjacent:
            rows = np.arange(i, min(i + step, len(c1)))[:, None]
            cols = np.arange(m)[None, :]
            gap = np.abs(rows - cols)
            block = np.where((gap <= 1) | (gap == m - 1), 0.0, block)
        yield block


def polygonal_linking(c1: PolyCurve, c2: PolyCurve, tol: float = CONTACT_TOL) -> float:
    """Gauss linking integral of two disjoint closed polygons."""
    _check_apart(c1, c2, tol)
    return math.fsum(v for block in _pair_terms(c1, c2) for v in block.ravel())


def polygonal_writhe(c: PolyCurve) -> float:
    """Writhe of a closed polygon: the Gauss integral over distinct
    non-adjacent segment pairs."""
    return math.fsum(v for block in _pair_terms(c, c, skip_adjacent=True) for v in block.ravel())


def linking_matrix_geometric(link: FramedGeometricLink) -> np.ndarray:
    n = len(link.components)
    m = np.zeros((n, n))
    for i in range(n):
        m[i, i] = link.framings[i]
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = polygonal_linking(link.components[i], link.components[j])
    return m


def helicity_geometric(link: FramedGeometricLink) -> float:
    """Sum of linking numbers over ordered pairs plus the framings."""
    return float(linking_matrix_geometric(link).sum())


# -- framings --------------------------------------------------------------------


def _rotate(v: np.ndarray, axis: np.ndarray, angle: float) -> np.ndarray:
    axis = axis / np.linalg.norm(axis)
    return (v * math.cos(angle) + np.cross(axis, v) * math.sin(angle)
            + axis * np.dot(axis, v) * (1 - math.cos(angle)))


def _transport(v: np.ndarray, t0: np.ndarray, t1: np.ndarray) -> np.ndarray:
    """Rotate ``v`` by the minimal rotation taking unit ``t0`` to unit ``t1``."""
    axis = np.cross(t0, t1)
    s = np.linalg.norm(axis)
    c = float(np.clip(np.dot(t0, t1), -1.0, 1.0))
    if s < 1e-15:
        return v
    return _rotate(v, axis, math.atan2(s, c))


def _self_clearance(c: PolyCurve) -> float:
    """Half-width bound for offsets: discrete curvature radius and the
    distance between strands that are far apart along the curve."""
    seg = c.ends - c.starts
    lengths = np.linalg.norm(seg, axis=1)
    tang = seg / lengths[:, None]
    cosang = np.clip(np.einsum("ij,ij->i", tang, np.roll(tang, -1, axis=0)), -1, 1)
    turn = np.arccos(cosang)
    with np.errstate(divide="ignore"):
        radius = np.where(turn > 1e-12, np.minimum(lengths, np.roll(lengths, -1)) / turn, np.inf)
    best = float(radius.min())
    n = len(c)
    arc = np.concatenate([[0.0], np.cumsum(lengths)])
    total = arc[-1]
    mid = arc[:-1] + lengths / 2
    step = max(1, _BLOCK // n)
    for i in range(0, n, step):
        d = segment_distance(c.starts[i:i + step, None], c.ends[i:i + step, None],
                             c.starts[None], c.ends[None])
        along = np.abs(mid[i:i + step, None] - mid[None])
        along = np.minimum(along, total - along)
        rows = np.arange(i, min(i + step, n))[:, None]
        gap = np.abs(rows - np.arange(n)[None])
        gap = np.minimum(gap, n - gap)
        far = (d < 0.5 * along) & (gap > 2)
        if far.any():
            best = min(best, float(d[far].min()))
    return best


def frame_offset(c: PolyCurve, epsilon: float, twists: int = 0,
                 normal: np.ndarray | None = None) -> PolyCurve:
    """Push-off of ``c`` by ``epsilon`` along a closed normal field.

    The field is a parallel-transported (rotation-minimizing) normal with the
    holonomy angle spread evenly along arc length, plus ``twists`` extra full
    right-handed turns about the tangent.  Its linking number with ``c`` is
    then the integer nearest to ``writhe + twists``.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    clearance = _self_clearance(c)
    if epsilon >= 0.5 * clearance:
        raise EpsilonTooLarge(f"epsilon={epsilon:g} is not below half the clearance {clearance:.3g}")
    v = c.vertices
    seg = c.ends - c.starts
    lengths = np.linalg.norm(seg, axis=1)
    tseg = seg / lengths[:, None]
    tv = tseg + np.roll(tseg, 1, axis=0)
    tv /= np.linalg.norm(tv, axis=1)[:, None]
    n = len(v)
    if normal is None:
        guess = np.eye(3)[int(np.argmin(np.abs(tv[0])))]
    else:
        guess = np.asarray(normal, dtype=float)
    n0 = guess - np.dot(guess, tv[0]) * tv[0]
    if np.linalg.norm(n0) < 1e-12:
        raise ValueError("initial normal is parallel to the tangent")
    n0 /= np.linalg.norm(n0)
    normals = np.empty_like(v)
    normals[0] = n0
    for i in range(1, n):
        normals[i] = _transport(normals[i - 1], tv[i - 1], tv[i])
    back = _transport(normals[-1], tv[-1], tv[0])
    holonomy = math.atan2(np.dot(np.cross(n0, back), tv[0]), np.dot(n0, back))
    s = np.concatenate([[0.0], np.cumsum(lengths)[:-1]]) / lengths.sum()
    angles = (-holonomy + 2 * math.pi * twists) * s
    field_ = np.array([_rotate(normals[i], tv[i], angles[i]) for i in range(n)])
    return PolyCurve(v + epsilon * field_)


# -- vector potential ------------------------------------------------------------


def biot_savart(link: FramedGeometricLink, points: np.ndarray) -> np.ndarray:
    """Normalized potential ``(1/4pi) sum_j oint (y - x) x dy / |y - x|^3``.

    Each segment is integrated in closed form.  ``points`` has shape
    ``(..., 3)``; raises :class:`PointOnCurve` within 1e-9 of a curve.
    """
    x = np.asarray(points, dtype=float)
    flat = x.reshape(-1, 3)
    out = np.zeros_like(flat)
    for c in link.components:
        step = max(1, _BLOCK // len(c))
        for i in range(0, len(flat), step):
            pts = flat[i:i + step, None, :]
            d = (c.ends - c.starts)[None]
            r1 = c.starts[None] - pts
            r2 = c.ends[None] - pts
            dist = segment_distance(c.starts[None], c.ends[None], pts, pts)
            if dist.min() < CONTACT_TOL:
                raise PointOnCurve(f"evaluation point within {dist.min():.3g} of a curve")
            cr = np.cross(r1, d)
            cr2 = np.einsum("...i,...i", cr, cr)
            n1 = np.linalg.norm(r1, axis=-1)
            n2 = np.linalg.norm(r2, axis=-1)
            scal = (np.einsum("...i,...i", d, r2) / n2 - np.einsum("...i,...i", d, r1) / n1)
            dd = np.einsum("...i,...i", d, d)
            ok = cr2 > 1e-24 * dd * np.minimum(n1, n2) ** 2
            with np.errstate(divide="ignore", invalid="ignore"):
                coef = np.where(ok, scal / cr2, 0.0)
            out[i:i + step] += (cr * coef[..., None]).sum(axis=1)
    return (out / (4 * math.pi)).reshape(x.shape)


def vector_potential(link: FramedGeometricLink, x, k: CSConstant | float) -> np.ndarray:
    """Coulomb-gauge potential sourced by the link: ``-(4 pi / k)`` times
    the normalized Biot-Savart field."""
    kk = k.k if isinstance(k, CSConstant) else CSConstant(float(k)).k
    return -(4 * math.pi / kk) * biot_savart(link, np.asarray(x, dtype=float))


def _midpoint_circulation(link: FramedGeometricLink, loop: PolyCurve, m: int) -> float:
    t = (np.arange(m) + 0.5) / m
    d = loop.ends - loop.starts
    pts = loop.starts[:, None, :] + t[None, :, None] * d[:, None, :]
    a = biot_savart(link, pts)
    return math.fsum((np.einsum("smi,si->sm", a, d) / m).ravel())


def circulation(link: FramedGeometricLink, loop: PolyCurve, rtol: float = 1e-6,
                max_level: int = 10) -> float:
    """Line integral of the normalized potential around ``loop``.

    Midpoint rule on every segment, halving the step with Richardson
    extrapolation until successive estimates agree to ``rtol``.
    """
    m = 1
    coarse = _midpoint_circulation(link, loop, m)
    prev = None
    for _ in range(max_level):
        m *= 2
        fine = _midpoint_circulation(link, loop, m)
        rich = (4 * fine - coarse) / 3
        if prev is not None and abs(rich - prev) <= rtol * max(1.0, abs(rich)):
            return rich
        prev, coarse = rich, fine
    return prev


# -- projection ------------------------------------------------------------------

DEFAULT_VIEW = (0.1234, 0.0567, 1.0)


def project_diagram(link: FramedGeometricLink, view=DEFAULT_VIEW) -> LinkDiagram:
    """Regular projection of a polygonal link along ``view``.

    Crossings are found segment by segment; the strand nearer the viewer
    (larger coordinate along ``view``) is over.  Raises ValueError if the
    projection is not regular (tangencies or points on segments).
    """
    w = np.asarray(view, dtype=float)
    w /= np.linalg.norm(w)
    e1 = np.cross(w, [1.0, 0.0, 0.0] if abs(w[0]) < 0.9 else [0.0, 1.0, 0.0])
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(w, e1)
    basis = np.stack([e1, e2, w])
    starts = [c.starts @ basis.T for c in link.components]
    ends = [c.ends @ basis.T for c in link.components]
    # events[comp] = list of (segment index, t, crossing key, passage)
    events: list[list[tuple[int, float, int, str]]] = [[] for _ in link.components]
    found = []
    ncomp = len(link.components)
    for ci in range(ncomp):
        for cj in range(ci, ncomp):
            p0, p1 = starts[ci], ends[ci]
            q0, q1 = starts[cj], ends[cj]
            d1 = (p1 - p0)[:, None, :2]
            d2 = (q1 - q0)[None, :, :2]
            r = (q0[None, :, :2] - p0[:, None, :2])
            den = d1[..., 0] * d2[..., 1] - d1[..., 1] * d2[..., 0]
            with np.errstate(divide="ignore", invalid="ignore"):
                s = (r[..., 0] * d2[..., 1] - r[..., 1] * d2[..., 0]) / den
                t = (r[..., 0] * d1[..., 1] - r[..., 1] * d1[..., 0]) / den
            hit = (s >= 0) & (s < 1) & (t >= 0) & (t < 1) & (den != 0)
            if ci == cj:
                n = len(p0)
                ii, jj = np.indices(hit.shape)
                gap = np.abs(ii - jj)
                hit &= (ii < jj) & (gap > 1) & (gap != n - 1)
            for i, j in zip(*np.nonzero(hit)):
                si, tj = float(s[i, j]), float(t[i, j])
                if min(si, 1 - si, tj, 1 - tj) < 1e-9:
                    raise ValueError("projection is not regular; choose another view")
                zi = p0[i, 2] + si * (p1[i, 2] - p0[i, 2])
                zj = q0[j, 2] + tj * (q1[j, 2] - q0[j, 2])
                key = len(found)
                top_i = zi > zj
                da, db = d1[i, 0], d2[0, j]
                over_dir, under_dir = (da, db) if top_i else (db, da)
                sign = 1 if over_dir[0] * under_dir[1] - over_dir[1] * under_dir[0] > 0 else -1
                found.append(sign)
                events[ci].append((int(i), si, key, "over" if top_i else "under"))
                events[cj].append((int(j), tj, key, "under" if top_i else "over"))
    slots: dict[int, dict[str, int]] = {k: {} for k in range(len(found))}
    label = 0
    free = []
    hints = []
    for comp_events in events:
        comp_events.sort()
        if not comp_events:
            label += 1
            free.append(label)
            hints.append([label])
            continue
        first = label + 1
        arcs = []
        for k, (_, _, key, passage) in enumerate(comp_events):
            # arc entering this event
            incoming = first + k
            outgoing = first + (k + 1) % len(comp_events)
            slots[key][passage + "_in"] = incoming
            slots[key][passage + "_out"] = outgoing
            arcs.append(incoming)
        label += len(comp_events)
        hints.append(arcs)
    crossings = [Crossing(key + 1, sign=found[key], **slots[key]) for key in range(len(found))]
    return assemble(crossings, free, hints)


def braid_link(word, n_strands: int, samples: int = 24, framings=None) -> FramedGeometricLink:
    """Space curves for the closure of a braid word.

    Strand position ``p`` sits at radius ``2 + p`` and the braid runs
    counterclockwise around the z-axis, so the inner strand is on the left.
    In ``sigma_k`` the strand at position ``k`` is lifted over its neighbour,
    giving the same crossing as ``braid_closure`` when viewed from +z.
    """
    word = list(word)
    if not word or any(w == 0 or abs(w) >= n_strands for w in word):
        raise ValueError("braid generators must satisfy 1 <= |k| < n_strands")
    m = len(word)
    # per strand-start position: list of (theta, radius, height) samples
    paths: dict[int, list] = {p: [] for p in range(n_strands)}
    where = list(range(n_strands))  # where[p] = current position of strand that started at p
    u = np.arange(samples) / samples
    for step, w in enumerate(word):
        k = abs(w) - 1
        theta = 2 * np.pi * (step + u) / m
        blend = (1 - np.cos(np.pi * u)) / 2
        bump = np.sin(np.pi * u)
        for p in range(n_strands):
            pos = where[p]
            if pos == k:
                r, h = 2 + k + blend, bump * (1 if w > 0 else -1)
            elif pos == k + 1:
                r, h = 3 + k - blend, bump * (-1 if w > 0 else 1)
            else:
                r, h = np.full(samples, 2.0 + pos), np.zeros(samples)
            paths[p].append(np.c_[r * np.cos(theta), r * np.sin(theta), 0.5 * h])
        for p in range(n_strands):
            if where[p] == k:
                where[p] = k + 1
            elif where[p] == k + 1:
                where[p] = k
    perm = {p: where[p] for p in range(n_strands)}
    seen: set[int] = set()
    curves = []
    for p in range(n_strands):
        if p in seen:
            continue
        pieces = []
        q = p
        while q not in seen:
            seen.add(q)
            pieces.extend(paths[q])
            q = perm[q]
        curves.append(PolyCurve(np.concatenate(pieces)))
    return FramedGeometricLink(tuple(curves), tuple(framings or ()))
