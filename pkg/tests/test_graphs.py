import random

import pytest

from svmv.errors import FormatError, NumberingError
from svmv.families import build_ball, build_full, format_path
from svmv.graphs import PortNumberedGraph, random_colouring, random_graph


def test_duplicate_ports_rejected_at_construction():
    graph = PortNumberedGraph()
    graph.add_edge("a", "b", 1, 1)
    with pytest.raises(NumberingError):
        graph.add_edge("a", "c", 1, 1)


def test_self_loops_rejected():
    graph = PortNumberedGraph()
    with pytest.raises(NumberingError):
        graph.add_edge("a", "a", 1, 2)


def test_json_round_trip_preserves_structure():
    graph = build_ball("hb", 2, (), 2)
    doc = graph.to_json_dict(node_fmt=format_path)
    assert doc["proper"] is False  # generalised tuple labels
    loaded = PortNumberedGraph.from_json(graph.to_json(node_fmt=format_path))
    assert len(loaded.nodes) == len(graph.nodes)
    assert len(loaded.edges()) == len(graph.edges())
    assert sorted(loaded.colours.values()) == sorted(graph.colours.values())
    root = format_path(())
    assert loaded.colour(root) == "G"
    # Tuple labels survive the string round trip.
    child = format_path(((1, 0, "B"),))
    assert loaded.out_port(root, child) == (1, "B")


def test_collapsed_json_round_trip_is_runnable():
    from svmv.families import build_collapsed
    graph = build_collapsed("g", 2)
    loaded = PortNumberedGraph.from_json(graph.to_json(node_fmt=format_path))
    loaded.require_runnable(2)
    assert loaded.is_proper() == graph.is_proper() is False


def test_proper_flag_on_random_numbering():
    rng = random.Random(3)
    graph = random_graph(rng, 20, 4)
    assert graph.is_proper()
    doc = graph.to_json_dict()
    assert doc["proper"] is True


def test_random_graph_respects_degree_cap():
    rng = random.Random(17)
    for _ in range(30):
        delta = rng.randint(1, 5)
        graph = random_graph(rng, rng.randint(1, 40), delta)
        assert graph.max_degree() <= delta
        graph.require_runnable(delta)


def test_random_colouring_total():
    rng = random.Random(5)
    graph = random_graph(rng, 12, 3)
    colours = random_colouring(rng, graph)
    assert set(colours) == set(graph.nodes)
    assert set(colours.values()) <= {"B", "W", "G"}


def test_dot_export_carries_labels_and_fills():
    graph = build_ball("hb", 2, (), 1)
    dot = graph.to_dot(node_fmt=format_path)
    assert dot.startswith("graph {")
    assert 'label="(1,B)/(0,G)"' in dot.replace("'", "")
    assert "fillcolor" in dot


def test_malformed_json_rejected():
    with pytest.raises(FormatError):
        PortNumberedGraph.from_json("not json at all {")
    with pytest.raises(FormatError):
        PortNumberedGraph.from_json('{"nodes": 3}')


def test_true_degree_bookkeeping():
    ball = build_ball("g", 4, (), 1)
    assert ball.degree(((1, 0),)) == 1
    assert ball.declared_degree(((1, 0),)) == 4
    full = build_full("g", 2)
    for v in full.nodes:
        assert full.degree(v) == full.declared_degree(v)
