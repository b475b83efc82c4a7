"""Pure-Python bitset kernels; same signatures as the compiled ``_kernels``.

A vertex set is an int whose bit ``i`` stands for vertex ``i + 1``.
``closed[i]`` / ``opened[i]`` are the closed and open neighbourhood masks.
"""

DOMINATING = 0
SECURE = 1
CONNECTED = 2
SECURE_CONNECTED = 3


def coverage(closed, s):
    cov = 0
    i = 0
    while s:
        if s & 1:
            cov |= closed[i]
        s >>= 1
        i += 1
    return cov


def is_connected_set(opened, s):
    if s == 0:
        return False
    low = s & -s
    reached = low
    frontier = low
    while frontier:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            nxt |= opened[b.bit_length() - 1]
            f ^= b
        nxt &= s & ~reached
        reached |= nxt
        frontier = nxt
    return reached == s


def _ok_after_swap(closed, opened, full, t, need_connected):
    if coverage(closed, t) != full:
        return False
    return not need_connected or is_connected_set(opened, t)


def first_undefended(closed, opened, n, s, need_connected):
    """First vertex (0-based) outside ``s`` with no valid defender, else -1.

    The defender ``w`` ranges over ``N(v) & s``; the swapped set
    ``s - w + v`` must dominate and, when ``need_connected``, be connected.
    """
    full = (1 << n) - 1
    for v in range(n):
        vb = 1 << v
        if s & vb:
            continue
        cand = opened[v] & s
        defended = False
        while cand:
            wb = cand & -cand
            cand ^= wb
            if _ok_after_swap(closed, opened, full, (s ^ wb) | vb, need_connected):
                defended = True
                break
        if not defended:
            return v
    return -1


def has_property(closed, opened, n, s, prop):
    full = (1 << n) - 1
    if n == 0:
        return True
    if coverage(closed, s) != full:
        return False
    if prop in (CONNECTED, SECURE_CONNECTED) and not is_connected_set(opened, s):
        return False
    if prop == SECURE:
        return first_undefended(closed, opened, n, s, False) < 0
    if prop == SECURE_CONNECTED:
        return first_undefended(closed, opened, n, s, True) < 0
    return True


def min_property_set(closed, opened, n, prop, lo, hi):
    """Smallest ``s`` with the property, sizes ``lo..hi``; lexicographic ties.

    Returns ``(size, mask)`` or ``(-1, 0)`` when no set up to ``hi`` works.
    Subsets are generated in lexicographic order of their sorted members,
    pruning any prefix that can no longer cover its lowest uncovered vertex.
    """
    full = (1 << n) - 1
    if n == 0:
        return 0, 0
    for size in range(max(lo, 1), hi + 1):
        found = _search(closed, opened, n, prop, size, full)
        if found >= 0:
            return size, found
    return -1, 0


def _search(closed, opened, n, prop, size, full):
    # maxnb[v]: highest vertex index able to cover v
    maxnb = [c.bit_length() - 1 for c in closed]
    chosen = [0] * size
    covs = [0] * (size + 1)
    depth = 0
    nxt = 0
    while True:
        if depth == size:
            s = 0
            for t in range(size):
                s |= 1 << chosen[t]
            if covs[size] == full and has_property(closed, opened, n, s, prop):
                return s
            depth -= 1
            if depth < 0:
                return -1
            nxt = chosen[depth] + 1
            continue
        cov = covs[depth]
        unc = ~cov & full
        limit = n - (size - depth)
        if unc:
            first = (unc & -unc).bit_length() - 1
            limit = min(limit, maxnb[first])
        if nxt > limit:
            depth -= 1
            if depth < 0:
                return -1
            nxt = chosen[depth] + 1
            continue
        chosen[depth] = nxt
        covs[depth + 1] = cov | closed[nxt]
        depth += 1
        nxt += 1


def eta_ftran(v, rows, etas, count):
    """Apply ``count`` stored eta columns to ``v`` in place (forward order).

    Eta ``t`` replaced basis position ``rows[t]`` by a column whose
    representation in the previous basis is ``etas[t]``.
    """
    for t in range(count):
        r = rows[t]
        e = etas[t]
        tr = v[r] / e[r]
        if tr != 0.0:
            v -= tr * e
        v[r] = tr
    return v


def eta_btran(w, rows, etas, count):
    """Transpose counterpart of :func:`eta_ftran`, applied in reverse order."""
    for t in range(count - 1, -1, -1):
        r = rows[t]
        e = etas[t]
        wr = w[r]
        w[r] = (wr - (e @ w - e[r] * wr)) / e[r]
    return w
