"""Local rewrites of link diagrams.

Every rewrite returns a new validated :class:`LinkDiagram`.  Face data of
the input decides where strands may be joined; two arcs in different split
pieces can always be brought next to each other, so such sites are accepted
with the relative orientation supplied by the caller.
"""
from __future__ import annotations

from .diagram import (
    IN_SLOT,
    OUT_SLOT,
    Crossing,
    CrossingSite,
    LinkDiagram,
    assemble,
)
from .errors import BadSite, InconsistentDiagram

__all__ = [
    "switch_crossing",
    "smooth_crossing",
    "smoothing_site",
    "add_eight",
    "reidemeister",
    "mirror",
    "reverse",
    "kink_sites",
    "face_pair_sites",
    "kink_crossings",
    "bigon_sites",
    "triangle_sites",
]


class _Edit:
    """Mutable scratch copy of a diagram used while rewriting."""

    def __init__(self, d: LinkDiagram):
        self.d = d
        self.crossings: dict[int, Crossing] = dict(d.by_id)
        self.free = [c[0] for c in d.components if d.is_free(c[0])]
        self.hints = [list(c) for c in d.components]
        self.renames: dict[int, int] = {}
        self._label = d.fresh_label()
        self._cid = d.fresh_id()

    def label(self) -> int:
        self._label += 1
        return self._label - 1

    def cid(self) -> int:
        self._cid += 1
        return self._cid - 1

    def final(self, arc: int) -> int:
        while arc in self.renames:
            arc = self.renames[arc]
        return arc

    def _head_of(self, arc: int) -> tuple[int, str] | None:
        for x in self.crossings.values():
            if x.under_in == arc:
                return x.id, "under"
            if x.over_in == arc:
                return x.id, "over"
        return None

    def split(self, arc: int, pieces: int) -> list[int]:
        """Cut an arc into ``pieces`` consecutive arcs; returns their labels.

        The first label is the original one.  For a free circle the last
        label equals the first, since the circle closes up through the new
        crossings.
        """
        head = self._head_of(arc)
        if head is None:
            self.free.remove(arc)
            labels = [arc] + [self.label() for _ in range(pieces - 1)] + [arc]
        else:
            labels = [arc] + [self.label() for _ in range(pieces)]
            cid, passage = head
            x = self.crossings[cid]
            self.crossings[cid] = x.with_passage(passage, labels[-1], x.slot(OUT_SLOT[passage]))
        for h in self.hints:
            if arc in h:
                k = h.index(arc)
                h[k + 1:k + 1] = labels[1:-1] if head is None else labels[1:]
        return labels

    def remove(self, cid: int, pairs: list[tuple[str, str]]) -> None:
        """Delete a crossing, joining each (incoming, outgoing) slot pair."""
        x = self.crossings.pop(cid)
        self.reconnect([(x.slot(i), x.slot(o)) for i, o in pairs])

    def reconnect(self, joins: list[tuple[int, int]]) -> None:
        joins = list(joins)
        for k, (p, q) in enumerate(joins):
            if p == q:
                self.free.append(p)
                continue
            self.crossings = {cid: x.relabeled({q: p}) for cid, x in self.crossings.items()}
            joins[k + 1:] = [(p if u == q else u, p if v == q else v) for u, v in joins[k + 1:]]
            self.renames[q] = p
            self.hints = [[p if a == q else a for a in h] for h in self.hints]

    def build(self) -> LinkDiagram:
        return assemble(self.crossings.values(), self.free, self.hints)


STRAIGHT = [("under_in", "under_out"), ("over_in", "over_out")]
SMOOTH = [("under_in", "over_out"), ("over_in", "under_out")]


def switch_crossing(d: LinkDiagram, cid: int) -> LinkDiagram:
    """Exchange over and under at one crossing; its sign flips."""
    x = d.crossing(cid)
    return LinkDiagram(tuple(y.switched() if y.id == x.id else y for y in d.crossings), d.components)


def _smooth(d: LinkDiagram, cid: int) -> tuple[LinkDiagram, CrossingSite]:
    x = d.crossing(cid)
    e = _Edit(d)
    e.remove(x.id, SMOOTH)
    a, b = e.final(x.under_in), e.final(x.over_in)
    site = CrossingSite.strands(a, b) if x.sign > 0 else CrossingSite.strands(b, a)
    return e.build(), site


def smooth_crossing(d: LinkDiagram, cid: int) -> LinkDiagram:
    """Oriented smoothing: the crossing is removed and each incoming
    strand is joined to the outgoing strand of the other passage."""
    return _smooth(d, cid)[0]


def smoothing_site(d: LinkDiagram, cid: int) -> CrossingSite:
    """Site in ``smooth_crossing(d, cid)`` at which :func:`add_eight` with
    the crossing's sign restores ``d``."""
    return _smooth(d, cid)[1]


def _check_side(site: CrossingSite) -> None:
    if site.side not in ("left", "right"):
        raise BadSite("side must be 'left' or 'right'")


def _orientation(d: LinkDiagram, a: int, b: int, side: str, declared: bool | None) -> bool:
    """Is strand ``b`` parallel to ``a`` across the face on ``a``'s ``side``?"""
    for arc in (a, b):
        if arc not in d.component_of:
            raise BadSite(f"arc {arc} is not in the diagram")
    if a == b:
        raise BadSite("a two-strand site needs two distinct arcs")
    if d.pieces[a] != d.pieces[b]:
        return True if declared is None else declared
    other = "right" if side == "left" else "left"
    face = d.face(a, side)
    par = d.face(b, other) == face
    anti = d.face(b, side) == face
    if par and anti:
        if declared is None:
            raise BadSite(f"arc {b} bounds the face on both sides; state the orientation")
        return declared
    if not (par or anti):
        raise BadSite(f"arcs {a} and {b} do not border a common face")
    if declared is not None and declared != par:
        raise BadSite("declared relative orientation does not match the face")
    return par


def add_eight(d: LinkDiagram, site: CrossingSite, sign: int) -> LinkDiagram:
    """Graft a signed curl onto the diagram.

    With two coherently oriented strands bordering a common face, a crossing
    of the given sign is inserted between them (the inverse of an oriented
    smoothing).  With a single strand, a kink is inserted on the chosen side
    of it (first Reidemeister move).  Either way the writhe grows by ``sign``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    _check_side(site)
    if len(site.arcs) == 1:
        (a,) = site.arcs
        if a not in d.component_of:
            raise BadSite(f"arc {a} is not in the diagram")
        f = d.fresh_label()
        d = LinkDiagram(d.crossings, d.components + ((f,),))
        site = CrossingSite.strands(a, f, site.side)
    if len(site.arcs) != 2:
        raise BadSite("add_eight needs one or two arcs")
    a, b = site.arcs
    if not _orientation(d, a, b, site.side, site.parallel):
        raise BadSite("strands are not coherently oriented across the face")
    if site.side == "right":
        a, b = b, a
    e = _Edit(d)
    a1, a2 = e.split(a, 1)
    b1, b2 = e.split(b, 1)
    cid = e.cid()
    if sign > 0:
        e.crossings[cid] = Crossing(cid, a1, b2, b1, a2, 1)
    else:
        e.crossings[cid] = Crossing(cid, b1, a2, a1, b2, -1)
    try:
        return e.build()
    except InconsistentDiagram as exc:
        raise BadSite(f"insertion is not planar: {exc}") from None


def _r1_remove(d: LinkDiagram, site: CrossingSite) -> LinkDiagram:
    if len(site.crossings) != 1:
        raise BadSite("R1 removal needs one crossing id")
    x = d.crossing(site.crossings[0])
    if x.under_out != x.over_in and x.over_out != x.under_in:
        raise BadSite(f"crossing {x.id} is not a kink")
    e = _Edit(d)
    e.remove(x.id, STRAIGHT)
    return e.build()


def _r2_add(d: LinkDiagram, site: CrossingSite, over_first: bool) -> LinkDiagram:
    _check_side(site)
    if len(site.arcs) != 2:
        raise BadSite("R2 insertion needs two arcs")
    a, b = site.arcs
    par = _orientation(d, a, b, site.side, site.parallel)
    e = _Edit(d)
    a1, a2, a3 = e.split(a, 2)
    b1, b2, b3 = e.split(b, 2)
    # strand a bends across b and back; b meets the first crossing first
    # only when the strands are parallel
    if par:
        b_at_1, b_at_2 = (b1, b2), (b2, b3)
        signs = (-1, 1) if over_first else (1, -1)
    else:
        b_at_1, b_at_2 = (b2, b3), (b1, b2)
        signs = (1, -1) if over_first else (-1, 1)
    if site.side == "right":
        signs = (-signs[0], -signs[1])
    for (a_in, a_out), b_pass, s in (((a1, a2), b_at_1, signs[0]), ((a2, a3), b_at_2, signs[1])):
        cid = e.cid()
        if over_first:
            e.crossings[cid] = Crossing(cid, b_pass[0], b_pass[1], a_in, a_out, s)
        else:
            e.crossings[cid] = Crossing(cid, a_in, a_out, b_pass[0], b_pass[1], s)
    try:
        return e.build()
    except InconsistentDiagram as exc:
        raise BadSite(f"insertion is not planar: {exc}") from None


def _r2_remove(d: LinkDiagram, site: CrossingSite) -> LinkDiagram:
    if len(site.crossings) != 2:
        raise BadSite("R2 removal needs two crossing ids")
    x, y = (d.crossing(c) for c in site.crossings)
    if x.id == y.id or x.sign == y.sign:
        raise BadSite("R2 removal needs two distinct crossings of opposite sign")
    over = {x.over_out, x.over_in} & {y.over_in, y.over_out}
    over = [a for a in over if (a == x.over_out and a == y.over_in) or (a == y.over_out and a == x.over_in)]
    under = [a for a in {x.under_out, y.under_out}
             if (a == x.under_out and a == y.under_in) or (a == y.under_out and a == x.under_in)]
    if not over or not under:
        raise BadSite("crossings are not joined by one over-arc and one under-arc")
    for o in over:
        for u in under:
            for f in d.faces:
                if len(f) == 2 and {dart[0] for dart in f} == {o, u}:
                    e = _Edit(d)
                    e.remove(x.id, STRAIGHT)
                    e.remove(y.id, STRAIGHT)
                    return e.build()
    raise BadSite("crossings do not bound a bigon face")


def _passage_at(d: LinkDiagram, arc: int, end: str) -> tuple[int, str]:
    return (d.tails if end == "tail" else d.heads)[arc]


def _r3(d: LinkDiagram, site: CrossingSite) -> LinkDiagram:
    if len(site.crossings) != 3:
        raise BadSite("R3 needs three crossing ids")
    ids = set(site.crossings)
    for cid in ids:
        d.crossing(cid)
    for f in d.faces:
        if len(f) != 3:
            continue
        arcs = [dart[0] for dart in f]
        verts = {d.heads[a][0] for a in arcs} | {d.tails[a][0] for a in arcs}
        if verts != ids or len(set(arcs)) != 3:
            continue
        kinds = [(d.tails[a][1], d.heads[a][1]) for a in arcs]
        if ("over", "over") not in kinds:
            raise BadSite("no strand passes over both others; R3 does not apply")
        new = dict(d.by_id)
        for a in arcs:
            p, pp = d.tails[a]
            q, qp = d.heads[a]
            s_in = d.by_id[p].slot(IN_SLOT[pp])
            s_out = d.by_id[q].slot(OUT_SLOT[qp])
            new[p] = new[p].with_passage(pp, a, s_out)
            new[q] = new[q].with_passage(qp, s_in, a)
        return assemble(new.values(), [c[0] for c in d.components if d.is_free(c[0])], d.components)
    raise BadSite("crossings do not bound a triangular face")


def reidemeister(d: LinkDiagram, move: str, site: CrossingSite, direction: str = "add",
                 *, sign: int = 1, over_first: bool = True) -> LinkDiagram:
    """Apply a Reidemeister move at an explicit site.

    R1 add inserts a kink of ``sign`` on ``site.arcs[0]``; R1 remove takes a
    kink crossing.  R2 add pushes ``site.arcs[0]`` across ``site.arcs[1]``
    (over it when ``over_first``); R2 remove takes the two crossings of a
    bigon.  R3 takes the three crossings of a triangle with one strand over
    both others and is its own inverse, so ``direction`` is not used.
    """
    move = move.upper()
    if direction not in ("add", "remove"):
        raise ValueError("direction must be 'add' or 'remove'")
    if move == "R1":
        if direction == "add":
            if len(site.arcs) != 1:
                raise BadSite("R1 insertion needs one arc")
            return add_eight(d, site, sign)
        return _r1_remove(d, site)
    if move == "R2":
        return _r2_add(d, site, over_first) if direction == "add" else _r2_remove(d, site)
    if move == "R3":
        return _r3(d, site)
    raise ValueError(f"unknown move {move!r}")


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Reflect through the projection plane: over and under trade places."""
    return LinkDiagram(tuple(x.switched() for x in d.crossings), d.components)


def reverse(d: LinkDiagram) -> LinkDiagram:
    """Reverse the orientation of every component."""
    return LinkDiagram(tuple(x.reversed() for x in d.crossings),
                       tuple(tuple(reversed(c)) if len(c) > 1 else c for c in d.components))


# -- site enumeration ------------------------------------------------------------


def kink_sites(d: LinkDiagram) -> list[CrossingSite]:
    """Single-strand sites for R1 insertion: every arc, both sides."""
    return [CrossingSite.strand(a, side) for a in d.arcs for side in ("left", "right")]


def face_pair_sites(d: LinkDiagram) -> list[CrossingSite]:
    """Two-arc sites for R2 insertion: distinct arcs bordering one face."""
    out = []
    for f in d.faces:
        for i, (a, fa) in enumerate(f):
            for b, _ in f[i + 1:]:
                if a != b:
                    out.append(CrossingSite.strands(a, b, "left" if fa else "right"))
    return out


def kink_crossings(d: LinkDiagram) -> list[int]:
    return [x.id for x in d.crossings if x.under_out == x.over_in or x.over_out == x.under_in]


def bigon_sites(d: LinkDiagram) -> list[CrossingSite]:
    """Crossing pairs removable by R2."""
    out = []
    for f in d.faces:
        if len(f) != 2:
            continue
        (a, _), (b, _) = f
        ends = {d.heads[a][0], d.tails[a][0]}
        if ends != {d.heads[b][0], d.tails[b][0]} or len(ends) != 2:
            continue
        x, y = (d.crossing(c) for c in sorted(ends))
        if x.sign != y.sign and {d.heads[a][1], d.heads[b][1]} == {"over", "under"}:
            out.append(CrossingSite.at(x.id, y.id))
    return out


def triangle_sites(d: LinkDiagram) -> list[CrossingSite]:
    """Triangular faces where one strand passes over both others."""
    out = []
    for f in d.faces:
        arcs = [dart[0] for dart in f]
        if len(f) != 3 or len(set(arcs)) != 3:
            continue
        ids = {d.heads[a][0] for a in arcs} | {d.tails[a][0] for a in arcs}
        if len(ids) == 3 and any((d.tails[a][1], d.heads[a][1]) == ("over", "over") for a in arcs):
            out.append(CrossingSite.at(*sorted(ids)))
    return out
