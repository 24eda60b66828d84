"""Bitmask search kernels.

A graph is handed to the kernels as ``rows``: an int64 array of length n
whose entry ``rows[i]`` has bit ``j`` set iff x_i ~ y_j (0-based here; the
public API is 1-based). Vertex subsets are int64 masks over one colour class.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def popcount(v):
    c = 0
    while v:
        v &= v - 1
        c += 1
    return c


@njit(cache=True)
def lowbit(v):
    # v must be non-zero
    i = 0
    while not (v >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def transpose(rows, n):
    cols = np.zeros(n, np.int64)
    for i in range(n):
        r = rows[i]
        for j in range(n):
            if (r >> j) & 1:
                cols[j] |= np.int64(1) << i
    return cols


@njit(cache=True)
def relabel(rows, n, xo, yo):
    """Rows of the graph whose x_k is old x_{xo[k]} and y_t is old y_{yo[t]}."""
    out = np.zeros(n, np.int64)
    for k in range(n):
        r = rows[xo[k]]
        m = np.int64(0)
        for t in range(n):
            if (r >> yo[t]) & 1:
                m |= np.int64(1) << t
        out[k] = m
    return out


@njit(cache=True)
def remainder_connected(rows, cols, v, v_is_x, ux, uy):
    """True iff every unvisited vertex is reachable from ``v`` through unvisited ones."""
    fx = np.int64(0)
    fy = np.int64(0)
    if v_is_x:
        fy = rows[v] & uy
    else:
        fx = cols[v] & ux
    sx = fx
    sy = fy
    while fx or fy:
        nx = np.int64(0)
        ny = np.int64(0)
        m = fx
        while m:
            ny |= rows[lowbit(m)]
            m &= m - 1
        m = fy
        while m:
            nx |= cols[lowbit(m)]
            m &= m - 1
        nx &= ux & ~sx
        ny &= uy & ~sy
        sx |= nx
        sy |= ny
        fx = nx
        fy = ny
    return sx == ux and sy == uy


@njit(cache=True)
def hamilton_search(rows, n, xallow, yallow, xo, yo):
    """Depth-first Hamilton cycle search on the subgraph induced by the masks.

    Starts at the lowest allowed x and extends with the lowest-index
    neighbour first, pruning whenever the unvisited remainder is
    disconnected from the path's end. On success the cycle is
    x_{xo[0]} y_{yo[0]} x_{xo[1]} ... y_{yo[m-1]} and True is returned.
    """
    m = popcount(xallow)
    if m < 2 or popcount(yallow) != m:
        return False
    cols = transpose(rows, n)
    start = lowbit(xallow)
    length = 2 * m
    path = np.zeros(length, np.int64)
    cand = np.zeros(length, np.int64)
    path[0] = start
    ux = xallow & ~(np.int64(1) << start)
    uy = yallow
    close = rows[start] & yallow
    d = 1
    cand[1] = rows[start] & uy
    while d > 0:
        c = cand[d]
        if c == 0:
            d -= 1
            if d == 0:
                break
            v = path[d]
            if d & 1:
                uy |= np.int64(1) << v
            else:
                ux |= np.int64(1) << v
            continue
        v = lowbit(c)
        cand[d] = c & (c - 1)
        path[d] = v
        if d == length - 1:
            if (close >> v) & 1:
                for k in range(m):
                    xo[k] = path[2 * k]
                    yo[k] = path[2 * k + 1]
                return True
            continue
        bit = np.int64(1) << v
        on_x = (d & 1) == 0
        if on_x:
            ux &= ~bit
        else:
            uy &= ~bit
        if (close & uy) != 0 and remainder_connected(rows, cols, v, on_x, ux, uy):
            d += 1
            if on_x:
                cand[d] = rows[v] & uy
            else:
                cand[d] = cols[v] & ux
        elif on_x:
            ux |= bit
        else:
            uy |= bit
    return False


@njit(cache=True)
def cycle_search(rows, n, length, xallow, yallow, out):
    """Find a simple cycle on exactly ``length`` vertices.

    Each cycle is anchored at its lowest-index x and read in the direction
    whose first y is smaller than its last y, so every cycle is met once.
    The cycle is written to ``out[:length]`` as alternating x, y indices.
    """
    if length < 4 or length % 2 != 0:
        return False
    half = length // 2
    cols = transpose(rows, n)
    path = np.zeros(length, np.int64)
    cand = np.zeros(length, np.int64)
    ax = xallow
    while ax:
        a = lowbit(ax)
        ax &= ax - 1
        ux = ax
        uy = yallow
        if popcount(ux) < half - 1 or popcount(uy) < half:
            break
        path[0] = a
        d = 1
        cand[1] = rows[a] & uy
        while d > 0:
            c = cand[d]
            if c == 0:
                d -= 1
                if d == 0:
                    break
                v = path[d]
                if d & 1:
                    uy |= np.int64(1) << v
                else:
                    ux |= np.int64(1) << v
                continue
            v = lowbit(c)
            cand[d] = c & (c - 1)
            path[d] = v
            if d == length - 1:
                if (rows[a] >> v) & 1 and v > path[1]:
                    for t in range(length):
                        out[t] = path[t]
                    return True
                continue
            bit = np.int64(1) << v
            on_x = (d & 1) == 0
            if on_x:
                ux &= ~bit
            else:
                uy &= ~bit
            x_need = half - (d // 2 + 1)
            y_need = half - (d + 1) // 2
            above = ~((np.int64(1) << (path[1] + 1)) - 1)
            if (
                popcount(ux) >= x_need
                and popcount(uy) >= y_need
                and (rows[a] & uy & above) != 0
            ):
                d += 1
                if on_x:
                    cand[d] = rows[v] & uy
                else:
                    cand[d] = cols[v] & ux
            elif on_x:
                ux |= bit
            else:
                uy |= bit
    return False


@njit(cache=True)
def check_cycle(rows, n, seq, length):
    """Certify that ``seq`` (alternating x, y indices) is a cycle of ``length``."""
    size = seq.shape[0]
    if size != length or size < 4 or size % 2 != 0:
        return False
    used_x = np.int64(0)
    used_y = np.int64(0)
    for t in range(size):
        v = seq[t]
        if v < 0 or v >= n:
            return False
        bit = np.int64(1) << v
        if t % 2 == 0:
            if used_x & bit:
                return False
            used_x |= bit
        else:
            if used_y & bit:
                return False
            used_y |= bit
    for t in range(0, size, 2):
        y = seq[t + 1]
        if not (rows[seq[t]] >> y) & 1:
            return False
        if not (rows[seq[(t + 2) % size]] >> y) & 1:
            return False
    return True
