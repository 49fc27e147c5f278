"""Oriented link diagrams: labelled arcs joined at signed crossings.

An *arc* runs from an outgoing slot of one crossing to an incoming slot of
the next one along its component.  A crossing records the four arcs meeting
there (``under_in``, ``under_out``, ``over_in``, ``over_out``) and its sign.
Crossing-free circles are components made of a single arc label that no
crossing mentions.

Signs follow the right-hand rule: ``+1`` iff turning the over-strand
direction a quarter turn counterclockwise gives the under-strand direction.
Together with the four slots, the sign fixes the counterclockwise order of
the strands around the crossing, so a diagram is accepted only when that
rotation system is planar (one sphere per connected piece).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import BadIndex, InconsistentDiagram, MalformedInput

__all__ = [
    "Crossing",
    "CrossingSite",
    "LinkDiagram",
    "parse_diagram",
    "diagram_from_dict",
    "braid_closure",
    "unlink",
    "writhe",
    "linking_number",
    "linking_matrix",
    "blackboard_framing",
    "helicity_diagram",
    "canonical_key",
    "relabel",
]

SLOTS = ("under_in", "under_out", "over_in", "over_out")
# counterclockwise order of the four strand ends around a crossing
ROTATION = {
    1: ("under_in", "over_out", "under_out", "over_in"),
    -1: ("under_in", "over_in", "under_out", "over_out"),
}
IN_SLOT = {"under": "under_in", "over": "over_in"}
OUT_SLOT = {"under": "under_out", "over": "over_out"}


@dataclass(frozen=True)
class Crossing:
    id: int
    under_in: int
    under_out: int
    over_in: int
    over_out: int
    sign: int

    def slot(self, name: str) -> int:
        return getattr(self, name)

    def arcs(self) -> tuple[int, int, int, int]:
        return (self.under_in, self.under_out, self.over_in, self.over_out)

    def switched(self) -> Crossing:
        return Crossing(self.id, self.over_in, self.over_out, self.under_in, self.under_out, -self.sign)

    def reversed(self) -> Crossing:
        return Crossing(self.id, self.under_out, self.under_in, self.over_out, self.over_in, self.sign)

    def relabeled(self, mapping: Mapping[int, int]) -> Crossing:
        f = lambda a: mapping.get(a, a)
        return Crossing(self.id, f(self.under_in), f(self.under_out), f(self.over_in), f(self.over_out), self.sign)

    def with_passage(self, passage: str, arc_in: int, arc_out: int) -> Crossing:
        slots = dict(zip(SLOTS, self.arcs()))
        slots[IN_SLOT[passage]] = arc_in
        slots[OUT_SLOT[passage]] = arc_out
        return Crossing(self.id, sign=self.sign, **slots)


@dataclass(frozen=True)
class CrossingSite:
    """Where a rewrite acts.

    ``crossings`` names existing crossings (switch, smooth, R1/R2/R3 removal
    and R3).  ``arcs`` names one strand (kink insertion) or two strands that
    border a common face.  ``side`` picks the face: the one on the left or
    right of the first arc.  ``parallel`` states the relative orientation of
    the second strand when the two arcs lie in different split pieces and
    the face data cannot decide it.
    """

    crossings: tuple[int, ...] = ()
    arcs: tuple[int, ...] = ()
    side: str = "left"
    parallel: bool | None = None

    @classmethod
    def at(cls, *cids: int) -> CrossingSite:
        return cls(crossings=tuple(cids))

    @classmethod
    def strands(cls, a: int, b: int, side: str = "left", parallel: bool | None = None) -> CrossingSite:
        return cls(arcs=(a, b), side=side, parallel=parallel)

    @classmethod
    def strand(cls, a: int, side: str = "left") -> CrossingSite:
        return cls(arcs=(a,), side=side)


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    components: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        _validate(self)

    # -- incidence ---------------------------------------------------------

    @cached_property
    def by_id(self) -> dict[int, Crossing]:
        return {x.id: x for x in self.crossings}

    @cached_property
    def heads(self) -> dict[int, tuple[int, str]]:
        """arc -> (crossing id, passage) where the arc ends."""
        out = {}
        for x in self.crossings:
            for passage, slot in IN_SLOT.items():
                out[x.slot(slot)] = (x.id, passage)
        return out

    @cached_property
    def tails(self) -> dict[int, tuple[int, str]]:
        """arc -> (crossing id, passage) where the arc starts."""
        out = {}
        for x in self.crossings:
            for passage, slot in OUT_SLOT.items():
                out[x.slot(slot)] = (x.id, passage)
        return out

    @cached_property
    def component_of(self) -> dict[int, int]:
        return {a: i for i, comp in enumerate(self.components) for a in comp}

    @property
    def arcs(self) -> list[int]:
        return sorted(self.component_of)

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    def crossing(self, cid: int) -> Crossing:
        try:
            return self.by_id[cid]
        except KeyError:
            raise BadIndex(f"no crossing with id {cid}") from None

    def is_free(self, arc: int) -> bool:
        return arc in self.component_of and arc not in self.heads

    def next_arc(self, arc: int) -> int:
        if self.is_free(arc):
            return arc
        cid, passage = self.heads[arc]
        return self.by_id[cid].slot(OUT_SLOT[passage])

    def crossing_components(self, x: Crossing) -> tuple[int, int]:
        """(component of the under strand, component of the over strand)."""
        return self.component_of[x.under_in], self.component_of[x.over_in]

    def fresh_label(self) -> int:
        return max(self.component_of, default=0) + 1

    def fresh_id(self) -> int:
        return max(self.by_id, default=0) + 1

    # -- planar structure ----------------------------------------------------

    def _next_dart(self, dart: tuple[int, bool]) -> tuple[int, bool]:
        arc, forward = dart
        cid, passage = (self.heads if forward else self.tails)[arc]
        x = self.by_id[cid]
        arrive = IN_SLOT[passage] if forward else OUT_SLOT[passage]
        rot = ROTATION[x.sign]
        leave = rot[rot.index(arrive) - 1]
        return x.slot(leave), leave.endswith("_out")

    @cached_property
    def faces(self) -> list[tuple[tuple[int, bool], ...]]:
        """Boundary cycles of darts, each traversed with the face on its left.

        A dart ``(arc, True)`` runs along the arc's orientation; ``(arc,
        False)`` runs against it.  Free circles are not included.
        """
        face_of: dict[tuple[int, bool], int] = {}
        faces = []
        for arc in sorted(self.heads):
            for start in ((arc, True), (arc, False)):
                if start in face_of:
                    continue
                cycle = []
                dart = start
                while dart not in face_of:
                    face_of[dart] = len(faces)
                    cycle.append(dart)
                    dart = self._next_dart(dart)
                faces.append(tuple(cycle))
        self.__dict__["_face_of"] = face_of
        return faces

    def face(self, arc: int, side: str = "left") -> int:
        """Index into :attr:`faces` of the face on the given side of an arc."""
        self.faces
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        return self.__dict__["_face_of"][(arc, side == "left")]

    @cached_property
    def pieces(self) -> dict[int, int]:
        """arc -> index of the connected piece of the diagram containing it."""
        parent = {cid: cid for cid in self.by_id}

        def find(c):
            while parent[c] != c:
                parent[c] = parent[parent[c]]
                c = parent[c]
            return c

        for arc, (cid, _) in self.heads.items():
            ra, rb = find(cid), find(self.tails[arc][0])
            if ra != rb:
                parent[ra] = rb
        roots: dict[int, int] = {}
        out = {}
        for arc in self.arcs:
            if arc in self.heads:
                out[arc] = roots.setdefault(find(self.heads[arc][0]), len(roots))
        n = len(roots)
        for arc in self.arcs:
            if arc not in out:
                out[arc] = n
                n += 1
        return out

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        """JSON-ready form with arcs renumbered 1..2c along the components."""
        mapping = {}
        for comp in self.components:
            if not self.is_free(comp[0]):
                for a in comp:
                    mapping[a] = len(mapping) + 1
        comps = [[mapping[a] for a in comp] if not self.is_free(comp[0]) else [] for comp in self.components]
        crossings = []
        for x in self.crossings:
            y = x.relabeled(mapping)
            crossings.append({"id": y.id, "under_in": y.under_in, "under_out": y.under_out,
                              "over_in": y.over_in, "over_out": y.over_out, "sign": y.sign})
        return {"components": comps, "crossings": crossings}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _validate(d: LinkDiagram) -> None:
    ids = [x.id for x in d.crossings]
    if len(set(ids)) != len(ids):
        raise InconsistentDiagram("crossing ids are not unique")
    for x in d.crossings:
        if x.sign not in (1, -1):
            raise InconsistentDiagram(f"crossing {x.id}: sign must be +1 or -1")
        if any(not isinstance(a, int) or a <= 0 for a in x.arcs()):
            raise InconsistentDiagram(f"crossing {x.id}: arc labels must be positive integers")

    ins: dict[int, int] = {}
    outs: dict[int, int] = {}
    for x in d.crossings:
        for s in ("under_in", "over_in"):
            ins[x.slot(s)] = ins.get(x.slot(s), 0) + 1
        for s in ("under_out", "over_out"):
            outs[x.slot(s)] = outs.get(x.slot(s), 0) + 1
    for arc in set(ins) | set(outs):
        if ins.get(arc, 0) != 1 or outs.get(arc, 0) != 1:
            raise InconsistentDiagram(
                f"arc {arc} must appear exactly twice (once entering, once leaving a crossing)")

    seen: set[int] = set()
    for i, comp in enumerate(d.components):
        if not comp:
            raise InconsistentDiagram(f"component {i} is empty; free circles need a label")
        for a in comp:
            if a in seen:
                raise InconsistentDiagram(f"arc {a} listed in more than one component position")
            seen.add(a)
        if len(comp) == 1 and comp[0] not in ins:
            continue
        for k, a in enumerate(comp):
            if a not in ins:
                raise InconsistentDiagram(f"component {i}: arc {a} is absent from every crossing")
            if d.next_arc(a) != comp[(k + 1) % len(comp)]:
                raise InconsistentDiagram(
                    f"component {i}: traversal after arc {a} does not reach arc {comp[(k + 1) % len(comp)]}")
    missing = set(ins) - seen
    if missing:
        raise InconsistentDiagram(f"arcs {sorted(missing)} belong to no component")

    # planarity of the rotation system fixed by the signs
    faces_per_piece: dict[int, int] = {}
    for f in d.faces:
        p = d.pieces[f[0][0]]
        faces_per_piece[p] = faces_per_piece.get(p, 0) + 1
    verts_per_piece: dict[int, int] = {}
    for x in d.crossings:
        p = d.pieces[x.under_in]
        verts_per_piece[p] = verts_per_piece.get(p, 0) + 1
    for p, v in verts_per_piece.items():
        if faces_per_piece[p] != v + 2:
            raise InconsistentDiagram(
                "crossing signs contradict the arc orientations (sign/orientation rotation system is not planar)")

    counts: dict[tuple[int, int], int] = {}
    for x in d.crossings:
        i, j = d.crossing_components(x)
        if i != j:
            key = (min(i, j), max(i, j))
            counts[key] = counts.get(key, 0) + 1
    for (i, j), n in counts.items():
        if n % 2:
            raise InconsistentDiagram(f"components {i} and {j} cross an odd number of times")


# -- construction ----------------------------------------------------------------


def diagram_from_dict(data: Mapping) -> LinkDiagram:
    if not isinstance(data, Mapping):
        raise MalformedInput("diagram must be a JSON object")
    try:
        raw_comps = data.get("components", [])
        raw_crossings = data.get("crossings", [])
        n_free = int(data.get("free_circles", 0))
        if not isinstance(raw_comps, list) or not isinstance(raw_crossings, list):
            raise MalformedInput("'components' and 'crossings' must be lists")
        crossings = []
        for c in raw_crossings:
            vals = {k: c[k] for k in ("id", *SLOTS, "sign")}
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in vals.values()):
                raise MalformedInput(f"crossing fields must be integers: {c!r}")
            crossings.append(Crossing(**vals))
        comps = []
        for comp in raw_comps:
            if not isinstance(comp, list) or not all(isinstance(a, int) and not isinstance(a, bool) for a in comp):
                raise MalformedInput(f"component must be a list of integer arc labels: {comp!r}")
            comps.append(tuple(comp))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, MalformedInput):
            raise
        raise MalformedInput(f"diagram schema violation: {exc!r}") from None
    used = {a for x in crossings for a in x.arcs()} | {a for c in comps for a in c}
    nxt = max(used, default=0) + 1
    final = []
    for comp in comps:
        if comp:
            final.append(comp)
        else:
            final.append((nxt,))
            nxt += 1
    for _ in range(n_free):
        final.append((nxt,))
        nxt += 1
    return LinkDiagram(tuple(sorted(crossings, key=lambda x: x.id)), tuple(final))


def parse_diagram(text: str | bytes) -> LinkDiagram:
    """Parse and validate the diagram JSON schema."""
    try:
        data = json.loads(text)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from None
    return diagram_from_dict(data)


def assemble(crossings: Iterable[Crossing], free: Iterable[int] = (),
             hints: Iterable[Iterable[int]] = ()) -> LinkDiagram:
    """Build a diagram from crossings alone, discovering components by traversal.

    ``hints`` lists arcs in the preferred order for starting components, so
    rewrites keep component order and starting arcs stable where possible.
    """
    crossings = sorted(crossings, key=lambda x: x.id)
    free = list(free)
    nxt = {}
    for x in crossings:
        nxt[x.under_in] = x.under_out
        nxt[x.over_in] = x.over_out
    free_set = set(free)
    arcs = set(nxt) | free_set
    seen: set[int] = set()
    comps = []
    for a in [a for h in hints for a in h] + sorted(arcs):
        if a in seen or a not in arcs:
            continue
        if a in free_set:
            comps.append((a,))
            seen.add(a)
            continue
        seq = [a]
        seen.add(a)
        b = nxt.get(a)
        while b != a:
            if b is None or b in seen or len(seq) > len(arcs):
                raise InconsistentDiagram("traversal does not close up")
            seq.append(b)
            seen.add(b)
            b = nxt.get(b)
        comps.append(tuple(seq))
    return LinkDiagram(tuple(crossings), tuple(comps))


def unlink(n: int) -> LinkDiagram:
    """Crossing-free diagram of ``n`` circles (``n = 1`` is the unknot)."""
    return LinkDiagram((), tuple((i + 1,) for i in range(n)))


def braid_closure(word: Iterable[int], n_strands: int) -> LinkDiagram:
    """Closure of a braid word; generator ``k`` (1-based) is sigma_k, ``-k`` its inverse.

    Strands run upward; in sigma_k the strand at position k passes over to
    position k+1, which makes the crossing positive.
    """
    word = list(word)
    if any(w == 0 or abs(w) >= n_strands for w in word):
        raise ValueError("braid generators must satisfy 1 <= |k| < n_strands")
    start = list(range(1, n_strands + 1))
    cur = list(start)
    nxt = n_strands + 1
    crossings = []
    for cid, w in enumerate(word, start=1):
        k = abs(w) - 1
        left_in, right_in = cur[k], cur[k + 1]
        left_out, right_out = nxt, nxt + 1
        nxt += 2
        if w > 0:
            # left strand goes over to the right
            x = Crossing(cid, right_in, left_out, left_in, right_out, 1)
        else:
            x = Crossing(cid, left_in, right_out, right_in, left_out, -1)
        crossings.append(x)
        cur[k], cur[k + 1] = left_out, right_out
    # close: the arc leaving the top of position p is the arc entering its bottom
    mapping = {end: s for end, s in zip(cur, start) if end != s}
    crossings = [x.relabeled(mapping) for x in crossings]
    used = {a for x in crossings for a in x.arcs()}
    free = [s for s in start if s not in used]
    return assemble(crossings, free)


# -- invariants ------------------------------------------------------------------


def writhe(d: LinkDiagram) -> int:
    return sum(x.sign for x in d.crossings)


def _check_component(d: LinkDiagram, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < d.n_components:
        raise BadIndex(f"component index {i} out of range for {d.n_components} components")


def linking_number(d: LinkDiagram, i: int, j: int) -> int:
    """Half the signed count of crossings between components ``i`` and ``j``."""
    _check_component(d, i)
    _check_component(d, j)
    if i == j:
        raise BadIndex("self-linking needs a framing; use blackboard_framing")
    total = 0
    for x in d.crossings:
        if set(d.crossing_components(x)) == {i, j}:
            total += x.sign
    return total // 2


def linking_matrix(d: LinkDiagram) -> list[list[int]]:
    """Symmetric matrix with linking numbers off the diagonal, framings on it."""
    n = d.n_components
    m = [[0] * n for _ in range(n)]
    for x in d.crossings:
        i, j = d.crossing_components(x)
        m[i][j] += x.sign
        if i != j:
            m[j][i] += x.sign
    for i in range(n):
        for j in range(n):
            if i != j:
                m[i][j] //= 2
    return m


def blackboard_framing(d: LinkDiagram, j: int) -> int:
    _check_component(d, j)
    return sum(x.sign for x in d.crossings if d.crossing_components(x) == (j, j))


def helicity_diagram(d: LinkDiagram) -> int:
    """Sum of the linking matrix over ordered pairs, framings on the diagonal."""
    n = d.n_components
    return sum(blackboard_framing(d, j) for j in range(n)) + sum(
        linking_number(d, i, j) for i in range(n) for j in range(n) if i != j)


# -- normal form -----------------------------------------------------------------


def _piece_code(d: LinkDiagram, start: int, piece_crossings: list[Crossing]) -> tuple:
    label: dict[int, int] = {}
    order: list[int] = []

    def take(a0):
        a = a0
        while True:
            label[a] = len(label) + 1
            order.append(a)
            a = d.next_arc(a)
            if a == a0:
                return

    take(start)
    k = 0
    while k < len(order):
        cid, passage = d.heads[order[k]]
        other = d.by_id[cid].slot(IN_SLOT["over" if passage == "under" else "under"])
        if other not in label:
            take(other)
        k += 1
    return tuple(sorted(tuple(label[a] for a in x.arcs()) + (x.sign,) for x in piece_crossings))


def canonical_key(d: LinkDiagram) -> bytes:
    """Normal form invariant under arc relabelling, crossing renumbering,
    reordering of components and choice of starting arcs."""
    by_piece: dict[int, list[int]] = {}
    for a in d.heads:
        by_piece.setdefault(d.pieces[a], []).append(a)
    codes = []
    for arcs in by_piece.values():
        cross = [x for x in d.crossings if d.pieces[x.under_in] == d.pieces[arcs[0]]]
        codes.append(min(_piece_code(d, a, cross) for a in arcs))
    free = sum(1 for comp in d.components if d.is_free(comp[0]))
    return repr((sorted(codes), free)).encode()


def relabel(d: LinkDiagram, mapping: Mapping[int, int]) -> LinkDiagram:
    """Rename arcs by ``mapping`` (must be injective on the diagram's arcs)."""
    f = lambda a: mapping.get(a, a)
    new = [f(a) for a in d.arcs]
    if len(set(new)) != len(new):
        raise ValueError("relabelling is not injective")
    return LinkDiagram(tuple(x.relabeled(mapping) for x in d.crossings),
                       tuple(tuple(f(a) for a in comp) for comp in d.components))
