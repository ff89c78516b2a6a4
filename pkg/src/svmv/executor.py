"""Deterministic synchronous executor for port-numbered graphs.

One run is a pure function of (machine, graph, input, max_rounds).  Each
round every node's incoming messages are computed from its neighbours'
previous states and out-port labels, padded with epsilon up to the machine's
degree bound, reduced to a set or multiset per the machine's reception
class, and fed to the transition.  ``max_rounds`` is mandatory: there are no
open-ended runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .errors import (DegreeBoundError, DidNotHaltError, MachineContractError,
                     NumberingError)
from .graphs import PortNumberedGraph
from .machines import EPSILON, MV, StateMachine, vmset_reduce, vset_reduce
from .util import stable_fingerprint


@dataclass
class ExecutionTrace:
    """Complete record of one synchronous run.

    ``states[r][v]`` is the state of ``v`` in round ``r``.  ``messages[r-1]
    [v]`` is the padded length-delta vector delivered to ``v`` in round
    ``r``, slots ordered by in-port label with epsilon padding at the end.
    ``stopped_round`` is the first round in which every node is stopping, or
    None if ``max_rounds`` ran out first.
    """

    delta: int
    states: list[dict[Any, Any]] = field(default_factory=list)
    messages: list[dict[Any, tuple]] = field(default_factory=list)
    stopped_round: int | None = None

    def rounds(self) -> int:
        return len(self.states) - 1

    def state(self, r: int, v):
        if r < len(self.states):
            return self.states[r][v]
        if self.stopped_round is not None:
            return self.states[-1][v]
        raise IndexError(f"round {r} not recorded and the run did not halt")

    def received(self, r: int, v) -> tuple:
        """Padded message vector delivered to ``v`` in round ``r`` (r >= 1)."""
        if 1 <= r < len(self.states):
            return self.messages[r - 1][v]
        if self.stopped_round is not None and r >= len(self.states):
            return (EPSILON,) * self.delta
        raise IndexError(f"round {r} not recorded")

    def to_csv(self, fh):
        fh.write("round,node,state_hash,halted\n")
        for r, row in enumerate(self.states):
            for v, state in row.items():
                halted = int(self.stopped_round is not None
                             and r >= self.stopped_round)
                fh.write(f"{r},{_node_text(v)},{stable_fingerprint(state)},"
                         f"{halted}\n")


def _node_text(v) -> str:
    text = v if isinstance(v, str) else repr(v)
    if "," in text or '"' in text:
        text = '"' + text.replace('"', '""') + '"'
    return text


def execute(machine: StateMachine, graph: PortNumberedGraph,
            colouring: dict | None = None, *,
            max_rounds: int) -> ExecutionTrace:
    """Run ``machine`` on ``graph`` and return the full trace.

    ``colouring`` supplies local inputs; when None the graph's own colouring
    is used and uncoloured nodes get the no-input value ``None``.  The run
    halts at the first globally stopping round or after ``max_rounds``,
    whichever comes first; in the latter case ``stopped_round`` stays unset.
    """
    if max_rounds < 0:
        raise ValueError("max_rounds must be >= 0")
    delta = machine.delta
    if graph.max_degree() > delta:
        raise DegreeBoundError(
            f"graph max degree {graph.max_degree()} exceeds bound {delta}")
    graph.require_runnable(delta)

    inputs = colouring if colouring is not None else graph.colours
    nodes = graph.nodes
    if machine.input_alphabet is not None:
        for v in nodes:
            if inputs.get(v) not in machine.input_alphabet:
                raise NumberingError(
                    f"local input {inputs.get(v)!r} of node {v!r} is outside "
                    f"the machine's input alphabet")

    reduce = vmset_reduce if machine.reception_class == MV else vset_reduce
    slot_order = {v: sorted(graph.neighbours(v),
                            key=lambda u, v=v: _slot_key(graph.in_port(v, u)))
                  for v in nodes}

    states = {v: machine.init(graph.degree(v), inputs.get(v)) for v in nodes}
    stopped = {v: machine.stopping(states[v]) for v in nodes}
    for v in nodes:
        if stopped[v]:
            _check_stop_contract(machine, states[v], delta)
    trace = ExecutionTrace(delta=delta)
    trace.states.append(dict(states))
    if all(stopped.values()):
        trace.stopped_round = 0
        return trace

    for r in range(1, max_rounds + 1):
        delivered = {}
        for v in nodes:
            msgs = tuple(machine.emit(states[u], graph.out_port(u, v))
                         for u in slot_order[v])
            for u, m in zip(slot_order[v], msgs):
                if stopped[u] and m is not EPSILON:
                    raise MachineContractError(
                        f"stopped node {u!r} emitted {m!r} in round {r}")
            delivered[v] = msgs + (EPSILON,) * (delta - len(msgs))
        next_states = {}
        for v in nodes:
            if stopped[v]:
                next_states[v] = states[v]
                continue
            new = machine.transition(states[v], reduce(delivered[v]))
            if machine.stopping(new):
                _check_stop_contract(machine, new, delta)
                stopped[v] = True
            next_states[v] = new
        states = next_states
        trace.states.append(dict(states))
        trace.messages.append(delivered)
        if all(stopped.values()):
            trace.stopped_round = r
            break
    return trace


def _slot_key(label):
    return (0, label) if isinstance(label, int) else (1, repr(label))


def _check_stop_contract(machine: StateMachine, state, delta: int):
    for port in range(1, delta + 1):
        if machine.emit(state, port) is not EPSILON:
            raise MachineContractError(
                f"stopping state {state!r} emits a message on port {port}")
    idle = (EPSILON,) * delta
    reduce = vmset_reduce if machine.reception_class == MV else vset_reduce
    if machine.transition(state, reduce(idle)) != state:
        raise MachineContractError(
            f"stopping state {state!r} is not a fixed point")


def local_outputs(trace: ExecutionTrace) -> dict:
    """Map each node to its state at the stopping round.

    Raises ``DidNotHaltError`` when the run exhausted ``max_rounds`` without
    every node stopping.
    """
    if trace.stopped_round is None:
        raise DidNotHaltError("did not halt: no global stopping round")
    return dict(trace.states[trace.stopped_round])
