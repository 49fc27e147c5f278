"""Regenerate the shipped corpus under src/knotwkb/corpus."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from knotwkb.diagram import braid_closure, unlink
from knotwkb.geometry import FramedGeometricLink, PolyCurve, braid_link

OUT = Path(__file__).resolve().parents[1] / "src" / "knotwkb" / "corpus"

DIAGRAMS = {
    "unknot": unlink(1),
    "unlink2": unlink(2),
    "unlink3": unlink(3),
    "curl_plus": braid_closure([1], 2),
    "curl_minus": braid_closure([-1], 2),
    "hopf_plus": braid_closure([1, 1], 2),
    "hopf_minus": braid_closure([-1, -1], 2),
    "trefoil_right": braid_closure([1, 1, 1], 2),
    "trefoil_left": braid_closure([-1, -1, -1], 2),
    "figure_eight": braid_closure([1, -2, 1, -2], 3),
    "whitehead": braid_closure([1, -2, 1, -2, -2], 3),
    "borromean": braid_closure([1, -2] * 3, 3),
    "torus_2_4": braid_closure([1, 1, 1, 1], 2),
    "r3_triangle": braid_closure([1, 2, 1], 3),
}


def _circle(n, center, u, v):
    t = 2 * np.pi * np.arange(n) / n
    return np.asarray(center) + np.outer(np.cos(t), u) + np.outer(np.sin(t), v)


def geometric_fixtures(n: int = 200) -> dict[str, FramedGeometricLink]:
    t = 2 * np.pi * np.arange(n) / n
    hopf = FramedGeometricLink((
        PolyCurve(_circle(n, (0, 0, 0), (1, 0, 0), (0, 1, 0))),
        PolyCurve(_circle(n, (1, 0, 0), (1, 0, 0), (0, 0, -1))),
    ), (0, 0))

    def torus_strand(k):
        th = -2 * t + k * np.pi
        return PolyCurve(np.c_[(2 + np.cos(th)) * np.cos(t), (2 + np.cos(th)) * np.sin(t), np.sin(th)])

    torus = FramedGeometricLink((torus_strand(0), torus_strand(1)), (0, 0))
    trefoil = FramedGeometricLink((PolyCurve(np.c_[
        np.sin(t) + 2 * np.sin(2 * t), np.cos(t) - 2 * np.cos(2 * t), np.sin(3 * t)]),), (3,))
    separated = FramedGeometricLink((
        PolyCurve(_circle(n, (0, 0, 0), (1, 0, 0), (0, 1, 0))),
        PolyCurve(_circle(n, (10, 0, 0), (1, 0, 0), (0, 1, 0))),
    ), (0, 0))
    return {
        "hopf_geometric": hopf,
        "torus_2_4_geometric": torus,
        "trefoil_geometric": trefoil,
        "whitehead_geometric": braid_link([1, -2, 1, -2, -2], 3, samples=40),
        "separated_circles_geometric": separated,
    }


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for name, d in DIAGRAMS.items():
        (OUT / f"{name}.json").write_text(d.to_json() + "\n")
    for name, link in geometric_fixtures().items():
        data = link.to_dict()
        for comp in data["components"]:
            comp["vertices"] = [[round(x, 12) for x in v] for v in comp["vertices"]]
        (OUT / f"{name}.json").write_text(json.dumps(data) + "\n")


if __name__ == "__main__":
    main()
