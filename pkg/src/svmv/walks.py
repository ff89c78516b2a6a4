"""Compatible and separating walk pairs in the plain tree family.

A walk pair starts at the two depth-1 nodes (1,0) and (2,1) and moves both
walks in lockstep so that the label each new node writes back towards the
previous one agrees across the walks.  Walks may revisit nodes.  A pair
separates when one end has a neighbour whose back-label the other end
cannot match; the shortest separating length is found by breadth-first
search over pair states.

Per-label neighbour uniqueness in the generalised numbering makes the
successor of a walk node a function of the back-label alone, so pair states
need no history and the BFS visited-set is sound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FormatError, InternalInconsistencyError, ResourceLimitError
from .families import FamilyView, Path, format_path, validate_path

START_1: Path = ((1, 0),)
START_2: Path = ((2, 1),)
DEFAULT_MAX_PAIRS = 50_000_000

PSW = "psw"
PCW = "pcw"
INVALID = "invalid"


@dataclass(frozen=True)
class WalkPair:
    """Two equal-length walks with their shared back-label sequence.

    For separating pairs, ``extension`` is the neighbour of ``walk1``'s end
    whose back-label ``separating_label`` has no match at ``walk2``'s end.
    ``mirrored`` marks a pair whose walks were swapped so that walk1 owns
    the extension; such pairs start at (2,1)/(1,0).
    """

    walk1: tuple[Path, ...]
    walk2: tuple[Path, ...]
    labels: tuple
    separating_label: object = None
    extension: Path | None = None
    mirrored: bool = False

    @property
    def length(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class VerifyResult:
    status: str
    reason: str | None = None


def successor(view: FamilyView, v: Path, label) -> Path | None:
    """The unique neighbour u of v with label(u -> v) = ``label``, if any.

    Absence is a value, not an error: it is the separation signal.
    """
    hits = [u for u, lab in view.back_edges(v) if lab == label]
    if len(hits) > 1:
        raise InternalInconsistencyError(
            f"{len(hits)} neighbours of {format_path(v)} share back-label "
            f"{label!r}; per-label uniqueness is violated")
    return hits[0] if hits else None


def _back_label_map(view: FamilyView, v: Path) -> dict:
    return {lab: u for u, lab in view.back_edges(v)}


def find_critical_psw(d: int, max_pairs: int = DEFAULT_MAX_PAIRS
                      ) -> tuple[int, WalkPair]:
    """Minimal separating length in the plain tree for ``d`` plus a witness.

    Breadth-first search over pair states from ((1,0)), ((2,1)); a state is
    separating when the two ends' back-label sets differ (either side may
    own the unmatched label).  Aborts loudly if no separation shows up by
    depth 2d-1, which would contradict the construction.
    """
    if d < 2:
        raise FormatError("d must be >= 2")
    view = FamilyView("g", d)
    start = (START_1, START_2)
    parents: dict[tuple, tuple] = {start: (None, None)}
    frontier = [start]
    depth = 0
    while frontier:
        # Scan the whole level before expanding so the reported k is minimal.
        for pair in frontier:
            m1 = _back_label_map(view, pair[0])
            m2 = _back_label_map(view, pair[1])
            if set(m1) != set(m2):
                return depth, _witness(parents, pair, m1, m2)
        if depth >= 2 * d - 1:
            raise InternalInconsistencyError(
                f"no separating pair within depth {2 * d - 1} for d={d}")
        nxt = []
        for pair in frontier:
            m1 = _back_label_map(view, pair[0])
            m2 = _back_label_map(view, pair[1])
            for label in sorted(m1):
                child = (m1[label], m2[label])
                if child not in parents:
                    if len(parents) >= max_pairs:
                        raise ResourceLimitError(
                            f"pair search exceeded {max_pairs} states (d={d})")
                    parents[child] = (pair, label)
                    nxt.append(child)
        frontier = nxt
        depth += 1
    raise InternalInconsistencyError(f"pair frontier died out for d={d}")


def _witness(parents, pair, m1, m2) -> WalkPair:
    chain = []
    labels = []
    cur = pair
    while cur is not None:
        chain.append(cur)
        prev, label = parents[cur]
        if label is not None:
            labels.append(label)
        cur = prev
    chain.reverse()
    labels.reverse()
    walk1 = tuple(p[0] for p in chain)
    walk2 = tuple(p[1] for p in chain)
    extra1 = sorted(set(m1) - set(m2))
    extra2 = sorted(set(m2) - set(m1))
    if extra1:
        label = extra1[0]
        return WalkPair(walk1, walk2, tuple(labels), label, m1[label], False)
    label = extra2[0]
    return WalkPair(walk2, walk1, tuple(labels), label, m2[label], True)


def verify_psw(pair: WalkPair, d: int, *,
               allow_mirrored: bool = False) -> VerifyResult:
    """Re-validate a walk pair from scratch against the generation rules.

    Independent of the search: adjacency, labels, the length bound and the
    separation condition are all recomputed.  Mirrored pairs (walks swapped
    so walk1 starts at (2,1)) fail the start condition unless allowed.
    """
    view = FamilyView("g", d)
    w1, w2 = pair.walk1, pair.walk2
    if len(w1) != len(w2) or not w1:
        return VerifyResult(INVALID, "walks empty or of different lengths")
    k = len(w1) - 1
    if len(pair.labels) != k:
        return VerifyResult(INVALID, "label sequence length mismatch")
    starts = (w1[0], w2[0])
    if starts != (START_1, START_2):
        if not (allow_mirrored and starts == (START_2, START_1)):
            return VerifyResult(
                INVALID, "walks must start at (1,0) and (2,1)")
    for walk in (w1, w2):
        for v in walk:
            try:
                validate_path("g", v, d)
            except FormatError as exc:
                return VerifyResult(INVALID, str(exc))
    for j in range(1, k + 1):
        for walk in (w1, w2):
            a, b = walk[j - 1], walk[j]
            if a == b or (b[:-1] != a and a[:-1] != b):
                return VerifyResult(
                    INVALID,
                    f"step {j}: {format_path(a)} and {format_path(b)} "
                    f"are not adjacent")
        lab1 = view.out_label(w1[j], w1[j - 1])
        lab2 = view.out_label(w2[j], w2[j - 1])
        if lab1 != lab2:
            return VerifyResult(
                INVALID, f"step {j}: back-labels differ ({lab1} vs {lab2})")
        if lab1 != pair.labels[j - 1]:
            return VerifyResult(
                INVALID, f"step {j}: recorded label {pair.labels[j - 1]} "
                f"does not match {lab1}")
    if k > 2 * d - 3:
        return VerifyResult(INVALID, f"length {k} exceeds 2d-3 = {2 * d - 3}")
    m1 = _back_label_map(view, w1[-1])
    m2 = _back_label_map(view, w2[-1])
    extra = sorted(set(m1) - set(m2))
    if not extra:
        return VerifyResult(PCW, None)
    if pair.separating_label is not None:
        if pair.separating_label not in extra:
            return VerifyResult(
                INVALID, f"recorded separating label "
                f"{pair.separating_label!r} has a match on walk2")
        if pair.extension is not None and \
                m1.get(pair.separating_label) != pair.extension:
            return VerifyResult(INVALID, "recorded extension node is not the "
                                         "labelled neighbour of walk1's end")
    return VerifyResult(PSW, None)


def walk_pair_from_labels(d: int, labels, *, swap: bool = False) -> WalkPair:
    """Build the unique walk pair following ``labels`` from the two starts.

    Raises ``FormatError`` if some label has no successor on either side.
    """
    view = FamilyView("g", d)
    walks = []
    starts = (START_2, START_1) if swap else (START_1, START_2)
    for start in starts:
        walk = [start]
        for j, label in enumerate(labels, start=1):
            nxt = successor(view, walk[-1], label)
            if nxt is None:
                raise FormatError(
                    f"label {label!r} at step {j} has no successor from "
                    f"{format_path(walk[-1])}")
            walk.append(nxt)
        walks.append(tuple(walk))
    m1 = _back_label_map(view, walks[0][-1])
    m2 = _back_label_map(view, walks[1][-1])
    extra = sorted(set(m1) - set(m2))
    if extra:
        return WalkPair(walks[0], walks[1], tuple(labels),
                        extra[0], m1[extra[0]], swap)
    return WalkPair(walks[0], walks[1], tuple(labels), mirrored=swap)


def separating_depths(d: int, depth_limit: int,
                      max_pairs: int = DEFAULT_MAX_PAIRS) -> list[int]:
    """All pair-state depths <= depth_limit at which some state separates.

    Used as the re-scan audit of criticality and of the odd-parity law.
    """
    view = FamilyView("g", d)
    start = (START_1, START_2)
    seen = {start}
    frontier = [start]
    found = []
    depth = 0
    while frontier and depth <= depth_limit:
        separated_here = False
        nxt = []
        for pair in frontier:
            m1 = _back_label_map(view, pair[0])
            m2 = _back_label_map(view, pair[1])
            if set(m1) != set(m2):
                separated_here = True
                continue
            for label in sorted(m1):
                child = (m1[label], m2[label])
                if child not in seen:
                    if len(seen) >= max_pairs:
                        raise ResourceLimitError(
                            f"pair scan exceeded {max_pairs} states (d={d})")
                    seen.add(child)
                    nxt.append(child)
        if separated_here:
            found.append(depth)
        frontier = nxt
        depth += 1
    return found
