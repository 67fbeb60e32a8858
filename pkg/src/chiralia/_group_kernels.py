"""Compiled helpers for groups stored as a regular right action.

``act[c, x]`` is ``x * g`` where column ``c`` is a generator or its inverse;
element 0 is the identity.  ``parent[x]``/``pcol[x]`` describe a spanning
tree: ``x = parent[x] * gen(pcol[x])``.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def bfs_tree(act):
    ncols, n = act.shape
    order = np.empty(n, dtype=np.int32)
    parent = np.full(n, -1, dtype=np.int32)
    pcol = np.full(n, -1, dtype=np.int32)
    depth = np.zeros(n, dtype=np.int32)
    seen = np.zeros(n, dtype=np.bool_)
    seen[0] = True
    order[0] = 0
    count = 1
    head = 0
    while head < count:
        x = order[head]
        head += 1
        for c in range(ncols):
            y = act[c, x]
            if not seen[y]:
                seen[y] = True
                parent[y] = x
                pcol[y] = c
                depth[y] = depth[x] + 1
                order[count] = y
                count += 1
    return order[:count], parent, pcol, depth


@njit(cache=True)
def renumber_bfs(gen_act):
    """BFS numbering from 0 over the given action rows (forward edges only)."""
    k, n = gen_act.shape
    num = np.full(n, -1, dtype=np.int32)
    order = np.empty(n, dtype=np.int32)
    num[0] = 0
    order[0] = 0
    count = 1
    head = 0
    while head < count:
        x = order[head]
        head += 1
        for c in range(k):
            y = gen_act[c, x]
            if num[y] < 0:
                num[y] = count
                order[count] = y
                count += 1
    return num, count


@njit(cache=True)
def _path(parent, pcol, b, buf):
    ln = 0
    while b != 0:
        buf[ln] = pcol[b]
        ln += 1
        b = parent[b]
    return ln


@njit(cache=True)
def mul_many(act, parent, pcol, maxdepth, a, b):
    out = np.empty(a.shape[0], dtype=np.int64)
    buf = np.empty(maxdepth + 1, dtype=np.int32)
    for i in range(a.shape[0]):
        ln = _path(parent, pcol, b[i], buf)
        x = a[i]
        for k in range(ln - 1, -1, -1):
            x = act[buf[k], x]
        out[i] = x
    return out


@njit(cache=True)
def inverses(act, parent, pcol, maxdepth):
    n = act.shape[1]
    out = np.empty(n, dtype=np.int64)
    buf = np.empty(maxdepth + 1, dtype=np.int32)
    for b in range(n):
        ln = _path(parent, pcol, b, buf)
        x = 0
        for k in range(ln):
            x = act[buf[k] ^ 1, x]
        out[b] = x
    return out


@njit(cache=True)
def element_orders(act, parent, pcol, maxdepth):
    n = act.shape[1]
    out = np.empty(n, dtype=np.int64)
    buf = np.empty(maxdepth + 1, dtype=np.int32)
    for b in range(n):
        ln = _path(parent, pcol, b, buf)
        x = b
        k = 1
        while x != 0:
            for j in range(ln - 1, -1, -1):
                x = act[buf[j], x]
            k += 1
        out[b] = k
    return out


@njit(cache=True)
def powers(act, parent, pcol, maxdepth, elems, e):
    """``x ** e`` for each x in ``elems`` (e >= 0)."""
    out = np.empty(elems.shape[0], dtype=np.int64)
    buf = np.empty(maxdepth + 1, dtype=np.int32)
    for i in range(elems.shape[0]):
        ln = _path(parent, pcol, elems[i], buf)
        x = 0
        for _ in range(e):
            for j in range(ln - 1, -1, -1):
                x = act[buf[j], x]
        out[i] = x
    return out


@njit(cache=True)
def left_perm(act, order, parent, pcol, a):
    """x -> a * x for all x, propagated down the spanning tree."""
    n = act.shape[1]
    out = np.empty(n, dtype=np.int64)
    out[0] = a
    for k in range(1, order.shape[0]):
        x = order[k]
        out[x] = act[pcol[x], out[parent[x]]]
    return out


@njit(cache=True)
def right_table(act, order, parent, pcol):
    """Row b of the result is the permutation x -> x * b."""
    n = act.shape[1]
    out = np.empty((n, n), dtype=np.int32)
    for x in range(n):
        out[0, x] = x
    for k in range(1, order.shape[0]):
        b = order[k]
        c = pcol[b]
        pb = parent[b]
        for x in range(n):
            out[b, x] = act[c, out[pb, x]]
    return out


@njit(cache=True)
def closure_mask(gen_perms, seed_mask):
    """Orbit of the seed set under right multiplication by the given perms."""
    k, n = gen_perms.shape
    mask = seed_mask.copy()
    queue = np.empty(n, dtype=np.int64)
    count = 0
    for x in range(n):
        if mask[x]:
            queue[count] = x
            count += 1
    head = 0
    while head < count:
        x = queue[head]
        head += 1
        for c in range(k):
            y = gen_perms[c, x]
            if not mask[y]:
                mask[y] = True
                queue[count] = y
                count += 1
    return mask


@njit(cache=True)
def pair_closure(gperms, hperms):
    """Extend g_i -> h_i along the Cayley graph; returns (ok, images, visited)."""
    k, n = gperms.shape
    f = np.full(n, -1, dtype=np.int64)
    f[0] = 0
    queue = np.empty(n, dtype=np.int64)
    queue[0] = 0
    count = 1
    head = 0
    while head < count:
        x = queue[head]
        head += 1
        fx = f[x]
        for c in range(k):
            y = gperms[c, x]
            fy = hperms[c, fx]
            if f[y] < 0:
                f[y] = fy
                queue[count] = y
                count += 1
            elif f[y] != fy:
                return False, f, count
    return True, f, count


@njit(cache=True)
def pair_key(ra, rb):
    """Relabel the Cayley graph of <a, b> breadth-first from the identity.

    Two generating pairs get equal keys iff some automorphism maps one to
    the other.  Returns (size of <a, b>, relabelled actions).
    """
    n = ra.shape[0]
    num = np.full(n, -1, dtype=np.int32)
    order = np.empty(n, dtype=np.int32)
    num[0] = 0
    order[0] = 0
    count = 1
    head = 0
    while head < count:
        x = order[head]
        head += 1
        y = ra[x]
        if num[y] < 0:
            num[y] = count
            order[count] = y
            count += 1
        y = rb[x]
        if num[y] < 0:
            num[y] = count
            order[count] = y
            count += 1
    out = np.empty((2, count), dtype=np.int32)
    for i in range(count):
        x = order[i]
        out[0, i] = num[ra[x]]
        out[1, i] = num[rb[x]]
    return count, out


@njit(cache=True)
def orbit_labels(perms):
    """Label the orbits of the group generated by ``perms`` (rows), in first-seen order."""
    k, n = perms.shape
    lab = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    nlab = 0
    for s in range(n):
        if lab[s] >= 0:
            continue
        lab[s] = nlab
        queue[0] = s
        count = 1
        head = 0
        while head < count:
            x = queue[head]
            head += 1
            for c in range(k):
                y = perms[c, x]
                if lab[y] < 0:
                    lab[y] = nlab
                    queue[count] = y
                    count += 1
        nlab += 1
    return lab, nlab
