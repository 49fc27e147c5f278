import json

import pytest
from conftest import load

from knotwkb.diagram import (
    Crossing,
    LinkDiagram,
    blackboard_framing,
    braid_closure,
    canonical_key,
    helicity_diagram,
    linking_matrix,
    linking_number,
    parse_diagram,
    relabel,
    writhe,
)
from knotwkb.errors import BadIndex, InconsistentDiagram, MalformedInput


def test_empty_component_is_unknot():
    d = parse_diagram('{"crossings":[],"components":[[ ]]}')
    assert d.n_components == 1 and d.n_crossings == 0
    assert writhe(d) == 0


def test_free_circles_shorthand():
    d = parse_diagram('{"crossings":[],"components":[],"free_circles":3}')
    assert d.n_components == 3


def test_hopf_parses():
    d = load("hopf_plus")
    assert d.n_components == 2 and [x.sign for x in d.crossings] == [1, 1]
    assert linking_number(d, 0, 1) == 1


def test_flipped_sign_is_rejected():
    data = json.loads(load("trefoil_right").to_json())
    data["crossings"][0]["sign"] = -1
    with pytest.raises(InconsistentDiagram):
        parse_diagram(json.dumps(data))


@pytest.mark.parametrize("text", ["{", "[]", '{"crossings": [{"id": 1}], "components": []}',
                                  '{"crossings": [], "components": [["x"]]}'])
def test_malformed(text):
    with pytest.raises(MalformedInput):
        parse_diagram(text)


def test_arc_used_twice_is_rejected():
    x = Crossing(1, 1, 2, 1, 2, 1)
    with pytest.raises(InconsistentDiagram):
        LinkDiagram((x,), ((1, 2),))


def test_wrong_component_order_is_rejected():
    d = load("trefoil_right")
    comp = d.components[0]
    with pytest.raises(InconsistentDiagram):
        LinkDiagram(d.crossings, (comp[::-1],))


def test_odd_parity_is_rejected():
    # a single crossing between two circles cannot close up in the plane
    x = Crossing(1, 1, 1, 2, 2, 1)
    with pytest.raises(InconsistentDiagram):
        LinkDiagram((x,), ((1,), (2,)))


def test_writhe_values():
    assert writhe(load("unknot")) == 0
    assert writhe(load("curl_plus")) == 1
    assert writhe(load("trefoil_right")) == 3
    assert writhe(load("trefoil_left")) == -3
    assert writhe(load("figure_eight")) == 0


def test_linking_values():
    assert linking_number(load("hopf_minus"), 0, 1) == -1
    assert linking_number(load("torus_2_4"), 1, 0) == 2
    assert linking_number(load("whitehead"), 0, 1) == 0
    b = load("borromean")
    assert all(linking_number(b, i, j) == 0 for i in range(3) for j in range(3) if i != j)
    with pytest.raises(BadIndex):
        linking_number(b, 0, 0)
    with pytest.raises(BadIndex):
        linking_number(b, 0, 3)


def test_whitehead_crossing_signs():
    d = load("whitehead")
    inter = sorted(x.sign for x in d.crossings if len(set(d.crossing_components(x))) == 2)
    assert inter == [-1, -1, 1, 1]


def test_helicity_equals_writhe(corpus_diagram):
    assert helicity_diagram(corpus_diagram) == writhe(corpus_diagram)


def test_linking_matrix_diagonal_is_framing(corpus_diagram):
    m = linking_matrix(corpus_diagram)
    for j in range(corpus_diagram.n_components):
        assert m[j][j] == blackboard_framing(corpus_diagram, j)


def test_json_round_trip(corpus_diagram):
    again = parse_diagram(corpus_diagram.to_json())
    assert canonical_key(again) == canonical_key(corpus_diagram)


def test_canonical_key_ignores_labels_and_order():
    d = braid_closure([1, -2, 1, -2, -2], 3)
    shift = relabel(d, {a: a + 100 for a in d.arcs})
    rotated = LinkDiagram(d.crossings, tuple(c[1:] + c[:1] for c in reversed(d.components)))
    assert canonical_key(shift) == canonical_key(d) == canonical_key(rotated)
    assert canonical_key(load("trefoil_left")) != canonical_key(load("trefoil_right"))


def test_braid_closure_component_counts():
    assert braid_closure([1, 1, 1], 2).n_components == 1
    assert braid_closure([1, -2] * 3, 3).n_components == 3
    with pytest.raises(ValueError):
        braid_closure([2], 2)
