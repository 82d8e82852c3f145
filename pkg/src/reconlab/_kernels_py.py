"""Pure-Python versions of the hot kernels.

Must stay result-identical to ``_kernels.pyx``: same refinement signature,
same target-cell rule, same twin pruning, same tie-breaking. A digraph is
passed as ``n`` plus a tuple of out-neighbour bitmasks (bit ``j`` of
``rows[i]`` set iff ``i -> j``).
"""

MAX_N = 32


def _relations(n, rows):
    inr = [0] * n
    for i in range(n):
        r = rows[i]
        j = 0
        while r:
            if r & 1:
                inr[j] |= 1 << i
            r >>= 1
            j += 1
    rel = [[0] * n for _ in range(n)]
    for x in range(n):
        ox, ix = rows[x], inr[x]
        rx = rel[x]
        for y in range(n):
            rx[y] = ((ox >> y) & 1) | (((ix >> y) & 1) << 1)
    return inr, rel


def _rank(keys):
    distinct = sorted(set(keys))
    index = {k: i for i, k in enumerate(distinct)}
    return [index[k] for k in keys], len(distinct)


def _refine(n, rel, col, k):
    while True:
        sigs = []
        for x in range(n):
            cnt = [0] * (3 * k)
            rx = rel[x]
            for y in range(n):
                r = rx[y]
                if r:
                    cnt[col[y] * 3 + r - 1] += 1
            sigs.append((col[x], *cnt))
        new, k2 = _rank(sigs)
        if k2 == k:
            return col, k
        col, k = new, k2


def _twins(rows, inr, x, y):
    mask = ~((1 << x) | (1 << y))
    if (rows[x] & mask) != (rows[y] & mask) or (inr[x] & mask) != (inr[y] & mask):
        return False
    return ((rows[x] >> y) & 1) == ((rows[y] >> x) & 1)


def canon(n, rows, colors=None):
    """Return ``(bits, order)`` for the canonical relabelling.

    ``order[p]`` is the vertex placed at canonical position ``p``; ``bits`` is
    the row-major adjacency matrix of the relabelled digraph read as a binary
    number with entry (0, 0) most significant. ``bits`` is minimal over all
    orderings compatible with the refined colour partition.
    """
    if n == 0:
        return 0, ()
    if n > MAX_N:
        raise ValueError(f"canonical labelling supports at most {MAX_N} vertices")
    inr, rel = _relations(n, rows)
    init = []
    for x in range(n):
        a = b = c = 0
        for r in rel[x]:
            if r == 1:
                a += 1
            elif r == 2:
                b += 1
            elif r == 3:
                c += 1
        init.append((colors[x] if colors is not None else 0, a, b, c))
    col, k = _rank(init)
    col, k = _refine(n, rel, col, k)

    best = [None, None]

    def leaf(col):
        order = [0] * n
        for x in range(n):
            order[col[x]] = x
        code = 0
        for p in range(n):
            r = rows[order[p]]
            rc = 0
            for q in range(n):
                rc = (rc << 1) | ((r >> order[q]) & 1)
            code = (code << n) | rc
        if best[0] is None or code < best[0]:
            best[0] = code
            best[1] = tuple(order)

    def search(col, k):
        if k == n:
            leaf(col)
            return
        sizes = [0] * k
        for x in range(n):
            sizes[col[x]] += 1
        target = next(c for c in range(k) if sizes[c] > 1)
        cell = [x for x in range(n) if col[x] == target]
        explored = []
        for x in cell:
            if any(_twins(rows, inr, y, x) for y in explored):
                continue
            explored.append(x)
            new = [c + 1 if c > target else c for c in col]
            for y in cell:
                if y != x:
                    new[y] = target + 1
            sub, k2 = _refine(n, rel, new, k + 1)
            search(sub, k2)

    search(col, k)
    return best[0], best[1]


def count_embeddings(pn, prows, hn, hrows, induced):
    """Number of injective maps pattern -> host that carry arcs to arcs.

    With ``induced`` the map must also carry non-arcs to non-arcs.
    """
    if pn > hn:
        return 0
    if pn == 0:
        return 1
    img = [0] * pn

    def arc(rows, i, j):
        return (rows[i] >> j) & 1

    def extend(i, used):
        if i == pn:
            return 1
        total = 0
        for h in range(hn):
            if used >> h & 1:
                continue
            ok = True
            for j in range(i):
                g = img[j]
                p_ij, p_ji = arc(prows, i, j), arc(prows, j, i)
                h_ij, h_ji = arc(hrows, h, g), arc(hrows, g, h)
                if induced:
                    if p_ij != h_ij or p_ji != h_ji:
                        ok = False
                        break
                elif (p_ij and not h_ij) or (p_ji and not h_ji):
                    ok = False
                    break
            if ok:
                img[i] = h
                total += extend(i + 1, used | (1 << h))
        return total

    return extend(0, 0)
