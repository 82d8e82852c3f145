# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_kernels_py`` for the reference semantics."""

from libc.string cimport memcpy, memset

cdef enum:
    MAXN = 32
    MAXSIG = 3 * MAXN + 1

MAX_N = MAXN


cdef struct Graph:
    int n
    unsigned int out[MAXN]
    unsigned int inr[MAXN]
    int rel[MAXN][MAXN]


cdef struct Best:
    int have
    unsigned int rows[MAXN]
    int order[MAXN]


cdef int _cmp(int *a, int *b, int length) noexcept nogil:
    cdef int i
    for i in range(length):
        if a[i] < b[i]:
            return -1
        if a[i] > b[i]:
            return 1
    return 0


cdef int _rank(int n, int *keys, int width, int *out) noexcept nogil:
    # keys is an n x width row-major array; writes dense ranks to out.
    cdef int idx[MAXN]
    cdef int i, j, t, k
    for i in range(n):
        idx[i] = i
    for i in range(1, n):
        t = idx[i]
        j = i - 1
        while j >= 0 and _cmp(&keys[idx[j] * width], &keys[t * width], width) > 0:
            idx[j + 1] = idx[j]
            j -= 1
        idx[j + 1] = t
    k = 0
    out[idx[0]] = 0
    for i in range(1, n):
        if _cmp(&keys[idx[i - 1] * width], &keys[idx[i] * width], width) != 0:
            k += 1
        out[idx[i]] = k
    return k + 1


cdef int _refine(Graph *g, int *col, int k) noexcept nogil:
    cdef int sig[MAXN * MAXSIG]
    cdef int new[MAXN]
    cdef int n = g.n
    cdef int x, y, r, width, k2
    while True:
        width = 3 * k + 1
        memset(sig, 0, n * width * sizeof(int))
        for x in range(n):
            sig[x * width] = col[x]
            for y in range(n):
                r = g.rel[x][y]
                if r:
                    sig[x * width + 1 + col[y] * 3 + r - 1] += 1
        k2 = _rank(n, sig, width, new)
        if k2 == k:
            return k
        memcpy(col, new, n * sizeof(int))
        k = k2


cdef bint _twins(Graph *g, int x, int y) noexcept nogil:
    cdef unsigned int mask = ~((1u << x) | (1u << y))
    if (g.out[x] & mask) != (g.out[y] & mask) or (g.inr[x] & mask) != (g.inr[y] & mask):
        return False
    return ((g.out[x] >> y) & 1u) == ((g.out[y] >> x) & 1u)


cdef void _leaf(Graph *g, int *col, Best *best) noexcept nogil:
    cdef int order[MAXN]
    cdef unsigned int rows[MAXN]
    cdef int n = g.n
    cdef int x, p, q, c
    cdef unsigned int r, rc
    for x in range(n):
        order[col[x]] = x
    for p in range(n):
        r = g.out[order[p]]
        rc = 0
        for q in range(n):
            rc = (rc << 1) | ((r >> order[q]) & 1u)
        rows[p] = rc
    c = 0
    if best.have:
        for p in range(n):
            if rows[p] != best.rows[p]:
                c = -1 if rows[p] < best.rows[p] else 1
                break
    if not best.have or c < 0:
        best.have = 1
        memcpy(best.rows, rows, n * sizeof(unsigned int))
        memcpy(best.order, order, n * sizeof(int))


cdef void _search(Graph *g, int *col, int k, Best *best) noexcept nogil:
    cdef int n = g.n
    cdef int sizes[MAXN]
    cdef int cell[MAXN]
    cdef int explored[MAXN]
    cdef int new[MAXN]
    cdef int x, y, i, j, c, target, m, ne, k2
    cdef bint skip
    if k == n:
        _leaf(g, col, best)
        return
    memset(sizes, 0, k * sizeof(int))
    for x in range(n):
        sizes[col[x]] += 1
    target = 0
    while sizes[target] <= 1:
        target += 1
    m = 0
    for x in range(n):
        if col[x] == target:
            cell[m] = x
            m += 1
    ne = 0
    for i in range(m):
        x = cell[i]
        skip = False
        for j in range(ne):
            if _twins(g, explored[j], x):
                skip = True
                break
        if skip:
            continue
        explored[ne] = x
        ne += 1
        for y in range(n):
            c = col[y]
            new[y] = c + 1 if c > target else c
        for j in range(m):
            if cell[j] != x:
                new[cell[j]] = target + 1
        k2 = _refine(g, new, k + 1)
        _search(g, new, k2, best)


def canon(int n, rows, colors=None):
    """Compiled ``_kernels_py.canon``."""
    cdef Graph g
    cdef Best best
    cdef int keys[MAXN * 4]
    cdef int col[MAXN]
    cdef int x, y, a, b, c, r, k, p
    if n == 0:
        return 0, ()
    if n > MAXN:
        raise ValueError(f"canonical labelling supports at most {MAXN} vertices")
    g.n = n
    for x in range(n):
        g.out[x] = rows[x]
        g.inr[x] = 0
    for x in range(n):
        for y in range(n):
            if (g.out[x] >> y) & 1u:
                g.inr[y] |= 1u << x
    for x in range(n):
        a = b = c = 0
        for y in range(n):
            r = <int>((g.out[x] >> y) & 1u) | (<int>((g.inr[x] >> y) & 1u) << 1)
            g.rel[x][y] = r
            if r == 1:
                a += 1
            elif r == 2:
                b += 1
            elif r == 3:
                c += 1
        keys[x * 4] = colors[x] if colors is not None else 0
        keys[x * 4 + 1] = a
        keys[x * 4 + 2] = b
        keys[x * 4 + 3] = c
    best.have = 0
    with nogil:
        k = _rank(n, keys, 4, col)
        k = _refine(&g, col, k)
        _search(&g, col, k, &best)
    bits = 0
    for p in range(n):
        bits = (bits << n) | best.rows[p]
    return bits, tuple([best.order[p] for p in range(n)])


cdef long long _extend(int i, int pn, unsigned int *prows, int hn, unsigned int *hrows,
                       bint induced, unsigned int used, int *img) noexcept nogil:
    cdef long long total = 0
    cdef int h, j, g
    cdef unsigned int p_ij, p_ji, h_ij, h_ji
    cdef bint ok
    if i == pn:
        return 1
    for h in range(hn):
        if (used >> h) & 1u:
            continue
        ok = True
        for j in range(i):
            g = img[j]
            p_ij = (prows[i] >> j) & 1u
            p_ji = (prows[j] >> i) & 1u
            h_ij = (hrows[h] >> g) & 1u
            h_ji = (hrows[g] >> h) & 1u
            if induced:
                if p_ij != h_ij or p_ji != h_ji:
                    ok = False
                    break
            elif (p_ij and not h_ij) or (p_ji and not h_ji):
                ok = False
                break
        if ok:
            img[i] = h
            total += _extend(i + 1, pn, prows, hn, hrows, induced, used | (1u << h), img)
    return total


def count_embeddings(int pn, prows, int hn, hrows, bint induced):
    """Compiled ``_kernels_py.count_embeddings``."""
    cdef unsigned int pr[MAXN]
    cdef unsigned int hr[MAXN]
    cdef int img[MAXN]
    cdef int i
    cdef long long total
    if pn > hn:
        return 0
    if pn == 0:
        return 1
    if hn > MAXN:
        raise ValueError(f"embedding count supports at most {MAXN} host vertices")
    for i in range(pn):
        pr[i] = prows[i]
    for i in range(hn):
        hr[i] = hrows[i]
    with nogil:
        total = _extend(0, pn, pr, hn, hr, induced, 0, img)
    return total
