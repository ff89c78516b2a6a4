"""The reproduction pipeline: every acceptance check as one table row.

Rows are produced by plain functions so the command line and the test suite
share one implementation.  Each row carries the expected value, the
observed value, and a pass flag; the CSV rendering is deterministic for a
fixed seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .bisim import PointedInstance, max_bisim_radius
from .errors import SvmvError
from .families import (FamilyView, PortCollapse, build_full, collapse_g,
                       family_collapse)
from .graphs import random_colouring, random_graph
from .problem import solve_pi_mv
from .propsuite import run_all_suites
from .simulate import gather_rounds, multiset_echo, run_simulation
from .experiments import run_theorem1, run_theorem2
from .util import derive_seed
from .walks import PSW, find_critical_psw, verify_psw, walk_pair_from_labels

DESK_SCALE_CAPS = ("walk search d<=5; bisimilarity radius runs d<=4; "
                   "coloured-tree executions d<=3; pair searches capped at "
                   "50M states; parameters d>=6 exceed the memory budget, "
                   "so the criteria above stand in for full-scale numbers")


@dataclass
class CriterionRow:
    criterion: str
    parameter: str
    expected: str
    observed: str
    passed: bool


def _row(criterion, parameter, expected, observed, passed) -> CriterionRow:
    return CriterionRow(criterion, parameter, str(expected), str(observed),
                        bool(passed))


def psw_rows(d_max: int = 5) -> list[CriterionRow]:
    rows = []
    t0 = time.perf_counter()
    for d in range(2, d_max + 1):
        k, witness = find_critical_psw(d)
        audit = verify_psw(witness, d, allow_mirrored=True)
        ok = k == 2 * d - 3 and audit.status == PSW
        rows.append(_row("psw-critical-length", f"d={d}", 2 * d - 3,
                         f"{k} (witness {audit.status})", ok))
    rows.append(_budget_row("psw-runtime", f"d<={d_max}", 60,
                            time.perf_counter() - t0))
    return rows


def _budget_row(criterion, parameter, budget_s, elapsed) -> CriterionRow:
    # Keep passing observations time-free so output files stay byte-identical
    # for a fixed seed.
    ok = elapsed < budget_s
    observed = f"within {budget_s} s" if ok else f"exceeded: {elapsed:.1f} s"
    return _row(criterion, parameter, f"< {budget_s} s", observed, ok)


def psw_witness_row() -> CriterionRow:
    labels = (2, 2, 3, 3, 4, 4, 5)
    try:
        pair = walk_pair_from_labels(5, labels)
        audit = verify_psw(pair, 5)
        observed = f"{audit.status} (sep label {pair.separating_label})"
        ok = audit.status == PSW and pair.separating_label == 5
    except SvmvError as exc:
        observed, ok = f"error: {exc}", False
    return _row("psw-witness-labels", "d=5 labels 2,2,3,3,4,4,5", PSW,
                observed, ok)


def bisim_radius_rows(d_values=(2, 3, 4)) -> list[CriterionRow]:
    rows = []
    t0 = time.perf_counter()
    for d in d_values:
        view = FamilyView("g", d)
        got = max_bisim_radius(PointedInstance(view, ((1, 0),)),
                               PointedInstance(view, ((2, 1),)), cap=2 * d)
        rows.append(_row("bisim-radius", f"d={d} cap={2 * d}", 2 * d - 3,
                         got, got == 2 * d - 3))
    rows.append(_budget_row("bisim-runtime", f"d<={max(d_values)}", 300,
                            time.perf_counter() - t0))
    return rows


def theorem1_rows(deltas=(2, 3, 4)) -> list[CriterionRow]:
    rows = []
    for delta in deltas:
        report = run_theorem1(delta)
        want = 2 * delta - 2
        ok = (report["equal_through"] == want
              and report["first_difference_round"] == want + 1)
        for name, extra in report["extra_machines"].items():
            ok = ok and extra["equal_through"] >= want
        rows.append(_row(
            "theorem1-messages", f"delta={delta}",
            f"equal rounds 1..{want}",
            f"equal through {report['equal_through']}, first difference at "
            f"{report['first_difference_round']}", ok))
    return rows


def theorem2_rows(d_values=(2, 3)) -> list[CriterionRow]:
    rows = []
    for d in d_values:
        report = run_theorem2(d)
        want = 2 * d - 2
        solver = report["mv_solver"]
        ok = (report["equal_through"] >= want
              and report["pi_allowed_at_roots"] == {"b": ["B"], "w": ["W"]}
              and solver["b"]["rounds"] == 1 and solver["w"]["rounds"] == 1
              and solver["b"]["accepted"] and solver["w"]["accepted"]
              and solver["b"]["root_output"] == "B"
              and solver["w"]["root_output"] == "W")
        rows.append(_row(
            "theorem2-roots", f"d={d}",
            f"roots equal rounds 0..{want}; forced B vs W; multiset solver "
            f"in 1 round",
            f"equal through {report['equal_through']} (first difference "
            f"{report['first_difference_round']}); allowed "
            f"{report['pi_allowed_at_roots']}; solver rounds "
            f"{solver['b']['rounds']}/{solver['w']['rounds']}", ok))
    return rows


def simulation_rows(seed: int, instances: int = 100) -> list[CriterionRow]:
    rng = random.Random(derive_seed(seed, "simulation-differential"))
    t0 = time.perf_counter()
    failures = []
    for i in range(instances):
        n = rng.randint(1, 40)
        delta = rng.randint(1, 5)
        graph = random_graph(rng, n, delta)
        colouring = random_colouring(rng, graph)
        if i % 2 == 0:
            inner = solve_pi_mv(delta)
        else:
            inner = multiset_echo(delta, rounds=rng.randint(1, 3))
        try:
            report = run_simulation(inner, graph, colouring)
            if not report.outputs_equal:
                failures.append(f"instance {i}: outputs diverge at "
                                f"{report.mismatches[:3]}")
            if report.overhead != gather_rounds(delta):
                failures.append(f"instance {i}: overhead {report.overhead} "
                                f"!= {gather_rounds(delta)}")
        except SvmvError as exc:
            failures.append(f"instance {i}: {exc}")
    rows = [_row("simulation-differential", f"{instances} seeded instances",
                 "all outputs equal, exact overhead, no collisions",
                 failures[0] if failures else "all held", not failures)]
    for family in ("hb", "hw"):
        d = 2
        graph = family_collapse(family, d).apply_graph(build_full(family, d))
        inner = solve_pi_mv(2 * d - 1)
        try:
            report = run_simulation(inner, graph, graph.colours)
            ok = report.outputs_equal and \
                report.overhead == gather_rounds(2 * d - 1)
            observed = (f"outputs_equal={report.outputs_equal} "
                        f"overhead={report.overhead}")
        except SvmvError as exc:
            ok, observed = False, f"error: {exc}"
        rows.append(_row("simulation-differential", f"{family} d=2",
                         f"outputs equal, overhead {gather_rounds(2*d-1)}",
                         observed, ok))
    rows.append(_budget_row("simulation-runtime", f"{instances} instances",
                            120, time.perf_counter() - t0))
    return rows


def property_rows(seed: int) -> list[CriterionRow]:
    rows = []
    for result in run_all_suites(seed):
        rows.append(_row(f"property-{result.name}", f"{result.cases} cases",
                         "all held", result.summary(), result.ok))
    return rows


def collapse_audit_rows(fault: PortCollapse | None = None
                        ) -> list[CriterionRow]:
    """Audit the collapsed numberings: runnable everywhere, strictly proper
    at internal nodes; leaves keep their single label, which may exceed 1.

    ``fault`` swaps in a corrupted plain-family collapse (test hook).
    """
    rows = []
    for family, d in (("g", 2), ("g", 3), ("hb", 2), ("hw", 2)):
        delta = d if family == "g" else 2 * d - 1
        collapse = family_collapse(family, d)
        if fault is not None and family == "g":
            collapse = fault
        try:
            graph = collapse.apply_graph(build_full(family, d))
            graph.require_runnable(delta)
            bad = []
            for v in graph.nodes:
                want = set(range(1, graph.degree(v) + 1))
                out = {graph.out_port(v, u) for u in graph.neighbours(v)}
                inn = {graph.in_port(v, u) for u in graph.neighbours(v)}
                if len(v) < 2 * d and (out != want or inn != want):
                    bad.append(v)
            ok = not bad
            observed = "internal nodes proper, all labels runnable" if ok \
                else f"{len(bad)} internal nodes break properness"
        except SvmvError as exc:
            ok, observed = False, f"error: {exc}"
        rows.append(_row("collapse-properness", f"{family} d={d}",
                         "runnable; internal nodes strictly proper",
                         observed, ok))
    return rows


def caps_row() -> CriterionRow:
    return _row("desk-scale-caps", "-", "documented", DESK_SCALE_CAPS, True)


def corrupted_collapse(d: int) -> PortCollapse:
    """Fault injection for the reproduction pipeline: map label 0 onto 2 so
    per-node injectivity breaks."""
    broken = collapse_g(d)
    broken.mapping[0] = 2
    return PortCollapse(broken.name + "-corrupted", broken.mapping)


def run_reproduction(seed: int, d_max: int = 5,
                     inject_collapse_fault: bool = False
                     ) -> list[CriterionRow]:
    rows: list[CriterionRow] = []
    rows.extend(psw_rows(d_max))
    if d_max >= 5:
        rows.append(psw_witness_row())
    rows.extend(bisim_radius_rows())
    fault = corrupted_collapse(2) if inject_collapse_fault else None
    rows.extend(collapse_audit_rows(fault))
    rows.extend(theorem1_rows())
    rows.extend(theorem2_rows())
    rows.extend(simulation_rows(seed))
    rows.extend(property_rows(seed))
    rows.append(caps_row())
    return rows


def rows_to_csv(rows: list[CriterionRow], fh):
    fh.write("criterion,parameter,expected,observed,pass\n")
    for row in rows:
        fields = [row.criterion, row.parameter, row.expected, row.observed,
                  "pass" if row.passed else "FAIL"]
        fh.write(",".join(_csv_quote(f) for f in fields) + "\n")


def _csv_quote(text: str) -> str:
    if any(c in text for c in ',"\n'):
        return '"' + text.replace('"', '""') + '"'
    return text
