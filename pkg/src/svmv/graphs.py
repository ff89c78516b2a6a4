"""Port-numbered graphs: construction, validation, serialisation.

``out_port(u, v)`` is the label node ``u`` writes on its end of the edge
towards ``v``; ``in_port(u, v)`` is the label under which that end is
addressed when ``u`` receives.  Set- and multiset-reception machines never
observe in-ports; they are materialised for export and for ordering trace
slots.  In the tree families both labels of an edge end coincide; random
numberings sample them independently.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Iterable

from .errors import FormatError, NumberingError


class PortNumberedGraph:
    """Finite simple undirected graph with per-edge directional port labels.

    ``true_degree`` optionally records the degree a node has in the full
    (non-truncated) structure a ball was cut from; consumers that need exact
    answers consult it to detect truncation.
    """

    def __init__(self):
        self._out: dict[Any, dict[Any, Any]] = {}
        self._in: dict[Any, dict[Any, Any]] = {}
        self._order: list[Any] = []
        self._edges: list[tuple[Any, Any]] = []
        self.colours: dict[Any, str] = {}
        self.true_degree: dict[Any, int] = {}

    # -- construction -----------------------------------------------------

    def add_node(self, v, colour: str | None = None):
        if v not in self._out:
            self._out[v] = {}
            self._in[v] = {}
            self._order.append(v)
        if colour is not None:
            self.colours[v] = colour
        return v

    def add_edge(self, u, v, out_uv, out_vu, in_uv=None, in_vu=None):
        """Add the edge {u, v} with out-labels and optional in-labels.

        In-labels default to the corresponding out-labels, which is the
        pairing the tree constructions use.
        """
        if u == v:
            raise NumberingError("self-loops are not allowed")
        self.add_node(u)
        self.add_node(v)
        if v in self._out[u]:
            raise NumberingError(f"duplicate edge {u!r} -- {v!r}")
        in_uv = out_uv if in_uv is None else in_uv
        in_vu = out_vu if in_vu is None else in_vu
        if out_uv in self._out[u].values():
            raise NumberingError(f"node {u!r} reuses out-port {out_uv!r}")
        if out_vu in self._out[v].values():
            raise NumberingError(f"node {v!r} reuses out-port {out_vu!r}")
        if in_uv in self._in[u].values():
            raise NumberingError(f"node {u!r} reuses in-port {in_uv!r}")
        if in_vu in self._in[v].values():
            raise NumberingError(f"node {v!r} reuses in-port {in_vu!r}")
        self._out[u][v] = out_uv
        self._out[v][u] = out_vu
        self._in[u][v] = in_uv
        self._in[v][u] = in_vu
        self._edges.append((u, v))

    # -- access -----------------------------------------------------------

    @property
    def nodes(self) -> list:
        return list(self._order)

    def edges(self) -> list[tuple]:
        return list(self._edges)

    def has_node(self, v) -> bool:
        return v in self._out

    def neighbours(self, v) -> list:
        return list(self._out[v])

    def degree(self, v) -> int:
        return len(self._out[v])

    def declared_degree(self, v) -> int:
        return self.true_degree.get(v, len(self._out[v]))

    def colour(self, v) -> str | None:
        return self.colours.get(v)

    def out_port(self, u, v):
        return self._out[u][v]

    def in_port(self, u, v):
        return self._in[u][v]

    def max_degree(self) -> int:
        return max((len(a) for a in self._out.values()), default=0)

    def port_alphabet(self) -> frozenset:
        labels = set()
        for adj in self._out.values():
            labels.update(adj.values())
        for adj in self._in.values():
            labels.update(adj.values())
        return frozenset(labels)

    # -- validation -------------------------------------------------------

    def is_proper(self) -> bool:
        """True iff every node's out- and in-port sets are exactly 1..deg."""
        for v, adj in self._out.items():
            want = set(range(1, len(adj) + 1))
            if set(adj.values()) != want or set(self._in[v].values()) != want:
                return False
        return True

    def require_runnable(self, delta: int):
        """Check the numbering an executor needs: integer labels in
        ``1..delta``, distinct per node on both sides.

        Weaker than :meth:`is_proper`: the collapsed tree numberings carry
        labels above a leaf's degree and stay runnable.
        """
        for v in self._order:
            for labels in (self._out[v].values(), self._in[v].values()):
                seen = set()
                for lab in labels:
                    if not isinstance(lab, int) or not 1 <= lab <= delta:
                        raise NumberingError(
                            f"node {v!r} carries port label {lab!r}, "
                            f"need integers in 1..{delta}")
                    if lab in seen:
                        raise NumberingError(
                            f"node {v!r} reuses port label {lab!r}")
                    seen.add(lab)

    # -- serialisation ----------------------------------------------------

    def to_json_dict(self, node_fmt: Callable[[Any], str] = None,
                     label_fmt: Callable[[Any], str] = None) -> dict:
        node_fmt = node_fmt or _default_node_fmt
        label_fmt = label_fmt or _default_label_fmt
        nodes = []
        for v in self._order:
            rec: dict[str, Any] = {"id": node_fmt(v)}
            if v in self.colours:
                rec["colour"] = self.colours[v]
            nodes.append(rec)
        edges = [{"u": node_fmt(u), "v": node_fmt(v),
                  "port_uv": label_fmt(self._out[u][v]),
                  "port_vu": label_fmt(self._out[v][u])}
                 for u, v in self._edges]
        return {"nodes": nodes, "edges": edges, "proper": self.is_proper()}

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_json_dict(**kw), indent=2, sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "PortNumberedGraph":
        graph = cls()
        try:
            for rec in data["nodes"]:
                graph.add_node(rec["id"], rec.get("colour"))
            for rec in data["edges"]:
                graph.add_edge(rec["u"], rec["v"],
                               _parse_label(rec["port_uv"]),
                               _parse_label(rec["port_vu"]))
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed graph document: {exc}") from exc
        return graph

    @classmethod
    def from_json(cls, text: str) -> "PortNumberedGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not valid JSON: {exc}") from exc
        return cls.from_json_dict(data)

    def to_dot(self, node_fmt: Callable[[Any], str] = None,
               label_fmt: Callable[[Any], str] = None,
               highlight: Iterable = ()) -> str:
        node_fmt = node_fmt or _default_node_fmt
        label_fmt = label_fmt or _default_label_fmt
        fills = {"B": ("black", "white"), "W": ("white", "black"),
                 "G": ("grey", "black")}
        marked = set(highlight)
        lines = ["graph {", "  node [shape=circle];"]
        for v in self._order:
            attrs = []
            if v in self.colours:
                fill, font = fills[self.colours[v]]
                attrs.append(f'style=filled fillcolor="{fill}" fontcolor="{font}"')
            if v in marked:
                attrs.append("penwidth=3")
            attr = (" [" + " ".join(attrs) + "]") if attrs else ""
            lines.append(f'  "{node_fmt(v)}"{attr};')
        for u, v in self._edges:
            label = f"{label_fmt(self._out[u][v])}/{label_fmt(self._out[v][u])}"
            lines.append(f'  "{node_fmt(u)}" -- "{node_fmt(v)}" [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _default_node_fmt(v) -> str:
    return v if isinstance(v, str) else repr(v)


def _default_label_fmt(label) -> str:
    if isinstance(label, tuple):
        return "(" + ",".join(str(x) for x in label) + ")"
    return str(label)


def _parse_label(text):
    if isinstance(text, int):
        return text
    text = str(text)
    if text.startswith("("):
        parts = text.strip("()").split(",")
        return tuple(int(p) if p.strip().lstrip("-").isdigit() else p.strip()
                     for p in parts)
    try:
        return int(text)
    except ValueError:
        return text


# -- random instances ------------------------------------------------------


def random_graph(rng, n: int, delta: int, density: float = 0.5) -> PortNumberedGraph:
    """Random simple graph on nodes ``0..n-1`` with max degree <= delta.

    Edges are sampled by repeated pair draws under the degree cap, so the
    result is connected-ish but not guaranteed connected.
    """
    graph = PortNumberedGraph()
    for v in range(n):
        graph.add_node(v)
    if n < 2:
        return graph
    deg = [0] * n
    adj = [set() for _ in range(n)]
    target = int(density * n * min(delta, n - 1) / 2)
    attempts = 0
    edges = []
    while len(edges) < target and attempts < 20 * (target + 1):
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or v in adj[u] or deg[u] >= delta or deg[v] >= delta:
            continue
        adj[u].add(v)
        adj[v].add(u)
        deg[u] += 1
        deg[v] += 1
        edges.append((u, v))
    numbering = _random_numbering(rng, n, edges)
    for u, v in edges:
        out_uv, in_uv = numbering[(u, v)]
        out_vu, in_vu = numbering[(v, u)]
        graph.add_edge(u, v, out_uv, out_vu, in_uv=in_uv, in_vu=in_vu)
    return graph


def _random_numbering(rng, n, edges):
    incident: dict[int, list] = {}
    for u, v in edges:
        incident.setdefault(u, []).append(v)
        incident.setdefault(v, []).append(u)
    ports = {}
    for u, nbrs in incident.items():
        for side in ("out", "in"):
            order = list(nbrs)
            rng.shuffle(order)
            for i, v in enumerate(order, start=1):
                key = (u, v)
                cur = ports.get(key, [None, None])
                cur[0 if side == "out" else 1] = i
                ports[key] = cur
    return {k: tuple(v) for k, v in ports.items()}


def random_colouring(rng, graph: PortNumberedGraph,
                     palette=("B", "W", "G")) -> dict:
    return {v: rng.choice(palette) for v in graph.nodes}
