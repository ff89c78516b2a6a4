"""Hash-consed view trees and the full-information set-reception machine.

A view is everything a set-reception node can possibly know after a number
of rounds: its degree, its local input, and the *set* of (sender out-port,
sender view) pairs it heard in the latest round.  Views are interned, so
structurally equal views are the same object and comparisons are exact --
there is no hashing shortcut that could collide.

The machine built from views is the coarsest-distinguishing set-reception
machine: two nodes carry equal views in round r exactly when no machine of
the class can have told them apart by round r.
"""

from __future__ import annotations

import hashlib

from .machines import EPSILON, SV, StateMachine

_INTERN: dict = {}


class ViewTree:
    """Immutable interned view; compare with ``is`` or ``==`` freely."""

    __slots__ = ("degree", "input", "round", "children", "digest", "_hash")

    def __init__(self, degree, input, round, children, digest):
        self.degree = degree
        self.input = input
        self.round = round
        self.children = children
        self.digest = digest
        self._hash = hash((degree, input, round, children))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is ViewTree
                and self.degree == other.degree
                and self.input == other.input
                and self.round == other.round
                and self.children == other.children)

    def __repr__(self):
        return f"View#{self.digest[:12]}(r={self.round})"


def view(degree, input, round, children: frozenset) -> ViewTree:
    """Interned constructor; ``children`` holds (port label, child view)."""
    key = (degree, input, round, children)
    got = _INTERN.get(key)
    if got is None:
        payload = ",".join(sorted(f"{label!r}:{child.digest}"
                                  for label, child in children))
        blob = f"{degree}|{input!r}|{round}|{payload}"
        digest = hashlib.sha256(blob.encode()).hexdigest()
        got = _INTERN[key] = ViewTree(degree, input, round, children, digest)
    return got


def view_root(degree, input) -> ViewTree:
    return view(degree, input, 0, frozenset())


def extend_view(current: ViewTree, pairs) -> ViewTree:
    """Next-round view after hearing ``pairs`` of (port label, sender view)."""
    return view(current.degree, current.input, current.round + 1,
                frozenset(pairs))


def canonical_sv(delta: int) -> StateMachine:
    """Full-information set-reception machine for degree bound ``delta``.

    State is the node's view; the message on port ``j`` is ``(j, view)``.
    It never stops on its own -- callers bound it with ``max_rounds``.
    """
    if delta < 1:
        raise ValueError("delta must be >= 1")

    def init(degree, local_input):
        return view_root(degree, local_input)

    def emit(state, port):
        return (port, state)

    def transition(state, received):
        return extend_view(state, (m for m in received if m is not EPSILON))

    return StateMachine("canonical-sv", delta, SV, init, emit, transition,
                        lambda s: False)
