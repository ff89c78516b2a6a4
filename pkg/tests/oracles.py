"""Independent reference implementations used as test oracles.

These recompute the same quantities as the package with deliberately
different machinery: the child rules as literal iterated minimum picks, the
critical separating length by raw path enumeration without deduplication,
and bisimilarity by direct unmemoised recursion.
"""

from svmv.families import COMPLEMENT


def mex(pool, forbidden):
    for x in sorted(pool):
        if x not in forbidden:
            return x
    raise AssertionError("pool exhausted")


def naive_children_g(v, d):
    i = len(v)
    if i >= 2 * d:
        return []
    if i == 0:
        return [v + ((j, j - 1),) for j in range(1, d + 1)]
    b1, b2 = v[-1]
    firsts, seconds = [], []
    if i % 2 == 1:
        b2p = 1 if b2 == 0 else b2
        for _ in range(d - 1):
            firsts.append(mex(range(1, d + 1), {b2p} | set(firsts)))
            seconds.append(mex(range(1, d + 1), {b1} | set(seconds)))
    else:
        for _ in range(d - 1):
            firsts.append(mex(range(1, d + 1), {b2} | set(firsts)))
            seconds.append(mex(range(0, d), {b1} | set(seconds)))
    return [v + ((a, b),) for a, b in zip(firsts, seconds)]


def naive_children_h(v, d, family):
    base = "B" if family == "hb" else "W"
    i = len(v)
    if i >= 2 * d:
        return []
    if i == 0:
        return ([v + ((j, j - 1, base),) for j in range(1, d + 1)]
                + [v + ((j, j - 1, COMPLEMENT[base]),) for j in range(2, d + 1)])
    if i % 2 == 1:
        b1, b2, _ = v[-1]
        b2p = 1 if b2 == 0 else b2
        firsts, seconds = [], []
        for _ in range(d - 1):
            firsts.append(mex(range(1, d + 1), {b2p} | set(firsts)))
            seconds.append(mex(range(1, d + 1), {b1} | set(seconds)))
        return [v + ((a, b, "G"),) for a, b in zip(firsts, seconds)]
    gcol = v[-2][2]
    b1, b2, _ = v[-1]
    firsts, seconds = [], []
    for _ in range(d - 1):
        firsts.append(mex(range(1, d + 1), {b2} | set(firsts)))
        seconds.append(mex(range(0, d), {b1} | set(seconds)))
    same = [v + ((a, b, gcol),) for a, b in zip(firsts, seconds)]
    f2, s2 = [], []
    for _ in range(d - 1):
        f2.append(mex(range(2, d + 1), set(f2)))
        s2.append(mex(range(1, d), set(s2)))
    return same + [v + ((a, b, COMPLEMENT[gcol]),) for a, b in zip(f2, s2)]


def naive_back_label_map(v, d):
    """label(u -> v) -> u over all neighbours u of v in the plain tree."""
    out = {}
    if v:
        out[v[-1][0]] = v[:-1]
    for child in naive_children_g(v, d):
        out[child[-1][1]] = child
    return out


def brute_critical_length(d, max_len):
    """Minimal separating length by raw pair-path enumeration (no visited
    set; walks may revisit).  Either end may own the unmatched label."""
    frontier = [(((1, 0),), ((2, 1),))]
    for k in range(max_len + 1):
        nxt = []
        for x, y in frontier:
            mx = naive_back_label_map(x, d)
            my = naive_back_label_map(y, d)
            if set(mx) != set(my):
                return k
            for a in mx:
                nxt.append((mx[a], my[a]))
        frontier = nxt
    return None


def naive_bisimilar(va, x, vb, y, r):
    """Direct recursion over the definition; exponential, keep r small."""
    if va.degree(x) != vb.degree(y) or va.local_input(x) != vb.local_input(y):
        return False
    if r == 0:
        return True
    ea = va.back_edges(x)
    eb = vb.back_edges(y)
    for w, a in ea:
        if not any(b == a and naive_bisimilar(va, w, vb, w2, r - 1)
                   for w2, b in eb):
            return False
    for w2, b in eb:
        if not any(a == b and naive_bisimilar(va, w, vb, w2, r - 1)
                   for w, a in ea):
            return False
    return True
