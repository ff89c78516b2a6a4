import random

import pytest

from oracles import naive_children_g, naive_children_h
from svmv.errors import FormatError, ResourceLimitError
from svmv.families import (FamilyView, ROOT, build_ball, build_full, children,
                           children_g, children_h, format_path, g_projection,
                           node_colour, node_degree, parse_path, pi,
                           validate_path)


def test_root_children_d5():
    assert [c[-1] for c in children_g(ROOT, 5)] == \
        [(1, 0), (2, 1), (3, 2), (4, 3), (5, 4)]


def test_children_of_first_branch_d5():
    v = ((1, 0),)
    assert [c[-1] for c in children_g(v, 5)] == \
        [(2, 2), (3, 3), (4, 4), (5, 5)]


def test_children_of_second_branch_d5():
    v = ((2, 1),)
    assert [c[-1] for c in children_g(v, 5)] == \
        [(2, 1), (3, 3), (4, 4), (5, 5)]


def test_children_beyond_max_depth_empty():
    deep = validate_random_descent("g", 2, depth=4)
    assert len(deep) == 4
    assert children_g(deep, 2) == []


def validate_random_descent(family, d, depth, rng=None, first_step=None):
    rng = rng or random.Random(7)
    v = ROOT
    for level in range(depth):
        kids = children(family, v, d)
        if level == 0 and first_step is not None:
            kids = [k for k in kids if first_step(k[-1])]
        v = rng.choice(kids)
    return v


def test_coloured_root_children_d4():
    kids = [c[-1] for c in children_h(ROOT, 4, "hb")]
    assert kids == [(1, 0, "B"), (2, 1, "B"), (3, 2, "B"), (4, 3, "B"),
                    (2, 1, "W"), (3, 2, "W"), (4, 3, "W")]
    mirror = [c[-1] for c in children_h(ROOT, 4, "hw")]
    assert mirror == [(1, 0, "W"), (2, 1, "W"), (3, 2, "W"), (4, 3, "W"),
                      (2, 1, "B"), (3, 2, "B"), (4, 3, "B")]


def test_grey_node_flip_children_d4():
    grey = ((1, 0, "B"), (2, 2, "G"))
    flips = [c[-1] for c in children_h(grey, 4, "hb")[3:]]
    assert flips == [(2, 1, "W"), (3, 2, "W"), (4, 3, "W")]


def test_coloured_degree_audit():
    d = 4
    assert node_degree("hb", ROOT, d) == 2 * d - 1
    odd = ((2, 1, "B"),)
    assert node_degree("hb", odd, d) == d
    grey = ((2, 1, "B"), (2, 1, "G"))
    assert node_degree("hb", grey, d) == 2 * d - 1
    view = FamilyView("hb", d)
    for v in (ROOT, odd, grey):
        assert len(view.neighbours(v)) == node_degree("hb", v, d)


@pytest.mark.parametrize("family,d", [("g", 2), ("g", 3), ("g", 5),
                                      ("hb", 2), ("hb", 4), ("hw", 3)])
def test_children_match_naive_interpreter(family, d):
    rng = random.Random(d * 31 + len(family))
    for _ in range(200):
        depth = rng.randint(0, 2 * d)
        v = ROOT
        for _ in range(depth):
            kids = children(family, v, d)
            if not kids:
                break
            v = rng.choice(kids)
        if family == "g":
            assert children_g(v, d) == naive_children_g(v, d)
        else:
            assert children_h(v, d, family) == naive_children_h(v, d, family)


def test_port_labels_plain():
    assert pi("g", ROOT, ((1, 0),)) == 1
    assert pi("g", ((1, 0),), ROOT) == 0
    assert pi("g", ROOT, ((2, 1),)) == 2
    assert pi("g", ((2, 1),), ROOT) == 1


def test_port_labels_coloured():
    u = ((1, 0, "B"),)
    grey = ((1, 0, "B"), (2, 2, "G"))
    # Towards a coloured node the label carries that node's colour; towards
    # a grey node the tag is G.
    assert pi("hb", ROOT, u) == (1, "B")
    assert pi("hb", u, ROOT) == (0, "G")
    assert pi("hb", u, grey) == (2, "G")
    assert pi("hb", grey, u) == (2, "B")


def test_pi_rejects_non_adjacent():
    with pytest.raises(FormatError):
        pi("g", ((1, 0),), ((2, 1),))


def test_full_small_tree_node_count():
    graph = build_full("g", 2)
    assert len(graph.nodes) == 9
    assert sorted(graph.degree(v) for v in graph.nodes).count(1) == 2
    assert graph.max_degree() == 2


def test_radius_zero_ball_records_true_degree():
    graph = build_ball("g", 5, ROOT, 0)
    assert graph.nodes == [ROOT]
    assert graph.degree(ROOT) == 0
    assert graph.declared_degree(ROOT) == 5


def test_radius_three_ball_structure_d5():
    graph = build_ball("g", 5, ROOT, 3)
    levels = {}
    for v in graph.nodes:
        levels[len(v)] = levels.get(len(v), 0) + 1
    assert levels == {0: 1, 1: 5, 2: 20, 3: 80}
    assert sorted(graph.out_port(ROOT, u) for u in graph.neighbours(ROOT)) \
        == [1, 2, 3, 4, 5]
    for v in graph.nodes:
        if len(v) < 3:
            assert graph.degree(v) == 5
        else:
            assert graph.degree(v) == 1
            assert graph.declared_degree(v) == 5


def test_coloured_ball_counts():
    graph = build_ball("hb", 4, ROOT, 1)
    assert len(graph.nodes) == 8
    colours = sorted(graph.colour(v) for v in graph.nodes if v != ROOT)
    assert colours == ["B", "B", "B", "B", "W", "W", "W"]
    assert graph.colour(ROOT) == "G"


def test_ball_node_cap():
    with pytest.raises(ResourceLimitError):
        build_full("g", 6, max_nodes=10_000)


def test_path_syntax_round_trip():
    for family, text in (("g", "()"), ("g", "(1,0)/(2,2)"),
                         ("hb", "(2,1,W)/(3,3,G)")):
        assert format_path(parse_path(text, family)) == text


def test_parse_rejects_malformed():
    for family, text in (("g", "(1)"), ("g", "(1,0,B)"), ("hb", "(1,0)"),
                         ("hb", "(1,0,X)"), ("g", "1,0")):
        with pytest.raises(FormatError):
            parse_path(text, family)


def test_validate_path_regenerates():
    validate_path("g", ((1, 0), (2, 2)), 2)
    validate_path("g", ((3, 2),), 3)
    with pytest.raises(FormatError):
        validate_path("g", ((1, 1),), 2)
    with pytest.raises(FormatError):
        validate_path("g", ((3, 2),), 2)
    with pytest.raises(FormatError):
        validate_path("hb", ((1, 0, "W"),), 2)


@pytest.mark.parametrize("d", [2, 3])
def test_single_colour_subtree_is_isomorphic_to_plain_tree(d):
    # The subgraph of the coloured tree whose paths avoid the complement
    # colour maps onto the plain tree by dropping colours, preserving
    # adjacency and the numeric parts of all labels.
    for family, keep in (("hb", "B"), ("hw", "W")):
        plain = {ROOT}
        stack = [ROOT]
        mapped = {ROOT: ROOT}
        while stack:
            v = stack.pop()
            for child in children(family, v, d):
                if child[-1][2] in (keep, "G"):
                    mapped[child] = g_projection(child)
                    plain.add(child)
                    stack.append(child)
        full_plain = set()
        stack = [ROOT]
        while stack:
            v = stack.pop()
            full_plain.add(v)
            stack.extend(children_g(v, d))
        assert set(mapped.values()) == full_plain
        assert len(mapped) == len(full_plain)
        for v, image in mapped.items():
            if v == ROOT:
                continue
            num_label_up = pi(family, v, v[:-1])[0]
            assert num_label_up == pi("g", image, image[:-1])
            assert pi(family, v[:-1], v)[0] == pi("g", image[:-1], image)


def test_node_colour():
    assert node_colour("hb", ROOT) == "G"
    assert node_colour("hb", ((2, 1, "W"),)) == "W"
    assert node_colour("g", ((1, 0),)) is None
