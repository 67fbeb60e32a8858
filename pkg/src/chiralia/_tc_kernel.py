"""Compiled Todd-Coxeter core.

Cosets are numbered from 1; ``0`` marks an undefined table entry.  Column
``2*i`` is generator ``i`` and column ``2*i + 1`` its inverse.  The
procedures follow the HLT and Felsch strategies with immediate coincidence
processing (union-find, merge into the smaller coset).
"""

from __future__ import annotations

import numpy as np
from numba import njit

# state slots
NEXT = 0  # next unused row
LIVE = 1  # live coset count
TOP = 2  # deduction stack height
OVERFLOW = 3  # deduction stack overflowed
FELSCH = 4  # push deductions
MAXNEXT = 5  # high-water mark of NEXT

CLOSED = 0
EXCEEDED = 1


@njit(cache=True)
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r


@njit(cache=True)
def _push(stack, state, a, x):
    if not state[FELSCH]:
        return
    top = state[TOP]
    if top >= stack.shape[0]:
        state[OVERFLOW] = 1
        return
    stack[top, 0] = a
    stack[top, 1] = x
    state[TOP] = top + 1


@njit(cache=True)
def _merge(p, q, qlen, k, l, state):
    a = _rep(p, k)
    b = _rep(p, l)
    if a != b:
        if a < b:
            mu, nu = a, b
        else:
            mu, nu = b, a
        p[nu] = mu
        q[qlen] = nu
        qlen += 1
        state[LIVE] -= 1
    return qlen


@njit(cache=True)
def _coincidence(table, p, q, inv_col, a, b, state, stack):
    ncols = table.shape[1]
    qlen = _merge(p, q, 0, a, b, state)
    i = 0
    while i < qlen:
        g = q[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d != 0:
                xi = inv_col[x]
                table[d, xi] = 0
                mu = _rep(p, g)
                nu = _rep(p, d)
                if table[mu, x] != 0:
                    qlen = _merge(p, q, qlen, nu, table[mu, x], state)
                elif table[nu, xi] != 0:
                    qlen = _merge(p, q, qlen, mu, table[nu, xi], state)
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu
                    _push(stack, state, mu, x)


@njit(cache=True)
def _define(table, p, inv_col, a, x, state, stack):
    b = state[NEXT]
    if b >= table.shape[0]:
        return 0
    state[NEXT] = b + 1
    if b + 1 > state[MAXNEXT]:
        state[MAXNEXT] = b + 1
    p[b] = b
    table[a, x] = b
    table[b, inv_col[x]] = a
    state[LIVE] += 1
    _push(stack, state, a, x)
    return b


@njit(cache=True)
def _scan(table, p, q, inv_col, a, w, state, stack, fill):
    """Scan ``w`` from coset ``a``; define cosets when ``fill``.

    Returns False only when a definition was needed but the table is full.
    """
    f = a
    b = a
    i = 0
    j = w.shape[0] - 1
    while True:
        while i <= j and table[f, w[i]] != 0:
            f = table[f, w[i]]
            i += 1
        if i > j:
            if f != b:
                _coincidence(table, p, q, inv_col, f, b, state, stack)
            return True
        while j >= i and table[b, inv_col[w[j]]] != 0:
            b = table[b, inv_col[w[j]]]
            j -= 1
        if j < i:
            _coincidence(table, p, q, inv_col, f, b, state, stack)
            return True
        if i == j:
            table[f, w[i]] = b
            table[b, inv_col[w[i]]] = f
            _push(stack, state, f, w[i])
            return True
        if not fill:
            return True
        if _define(table, p, inv_col, f, w[i], state, stack) == 0:
            return False


@njit(cache=True)
def _compact(table, p, state, remap):
    nxt = state[NEXT]
    k = 1
    for c in range(1, nxt):
        if p[c] == c:
            remap[c] = k
            k += 1
        else:
            remap[c] = 0
    ncols = table.shape[1]
    for c in range(1, nxt):
        if p[c] == c:
            new = remap[c]
            for x in range(ncols):
                t = table[c, x]
                table[new, x] = remap[t] if t != 0 else 0
    for c in range(k, nxt):
        for x in range(ncols):
            table[c, x] = 0
    for c in range(1, k):
        p[c] = c
    state[NEXT] = k


@njit(cache=True)
def _process_deductions(table, p, q, inv_col, conj_flat, conj_off, col_conj, col_off, relf, relo, state, stack):
    while True:
        while state[TOP] > 0:
            top = state[TOP] - 1
            state[TOP] = top
            a = stack[top, 0]
            x = stack[top, 1]
            if p[a] == a:
                for k in range(col_off[x], col_off[x + 1]):
                    c = col_conj[k]
                    _scan(table, p, q, inv_col, a, conj_flat[conj_off[c]:conj_off[c + 1]], state, stack, False)
                    if p[a] != a:
                        break
            if p[a] == a:
                b = table[a, x]
                if b != 0 and p[b] == b:
                    xi = inv_col[x]
                    for k in range(col_off[xi], col_off[xi + 1]):
                        c = col_conj[k]
                        _scan(table, p, q, inv_col, b, conj_flat[conj_off[c]:conj_off[c + 1]], state, stack, False)
                        if p[b] != b:
                            break
        if not state[OVERFLOW]:
            return
        # lost deductions: fall back to a full relator sweep
        state[OVERFLOW] = 0
        for c in range(1, state[NEXT]):
            for r in range(relo.shape[0] - 1):
                if p[c] != c:
                    break
                _scan(table, p, q, inv_col, c, relf[relo[r]:relo[r + 1]], state, stack, False)


@njit(cache=True)
def enumerate_hlt(table, p, inv_col, relf, relo, subf, subo, margin, state):
    n = table.shape[0]
    q = np.zeros(n, dtype=np.int32)
    remap = np.zeros(n, dtype=np.int32)
    stack = np.zeros((1, 2), dtype=np.int32)
    ncols = table.shape[1]
    for s in range(subo.shape[0] - 1):
        if not _scan(table, p, q, inv_col, 1, subf[subo[s]:subo[s + 1]], state, stack, True):
            return EXCEEDED
    a = 1
    while a < state[NEXT]:
        if p[a] == a:
            if n - state[NEXT] < margin and state[LIVE] < state[NEXT] - 1:
                _compact(table, p, state, remap)
                a = remap[a]
            for r in range(relo.shape[0] - 1):
                if p[a] != a:
                    break
                if not _scan(table, p, q, inv_col, a, relf[relo[r]:relo[r + 1]], state, stack, True):
                    return EXCEEDED
            if p[a] == a:
                for x in range(ncols):
                    if table[a, x] == 0:
                        if _define(table, p, inv_col, a, x, state, stack) == 0:
                            return EXCEEDED
        a += 1
    return CLOSED


@njit(cache=True)
def enumerate_felsch(table, p, inv_col, relf, relo, subf, subo, conj_flat, conj_off, col_conj, col_off, stack_size, state):
    n = table.shape[0]
    q = np.zeros(n, dtype=np.int32)
    remap = np.zeros(n, dtype=np.int32)
    stack = np.zeros((stack_size, 2), dtype=np.int32)
    ncols = table.shape[1]
    state[FELSCH] = 1
    for s in range(subo.shape[0] - 1):
        if not _scan(table, p, q, inv_col, 1, subf[subo[s]:subo[s + 1]], state, stack, True):
            return EXCEEDED
        _process_deductions(table, p, q, inv_col, conj_flat, conj_off, col_conj, col_off, relf, relo, state, stack)
    fp = 1
    while True:
        found = False
        while fp < state[NEXT]:
            if p[fp] == fp:
                for x in range(ncols):
                    if table[fp, x] == 0:
                        found = True
                        break
                if found:
                    break
            fp += 1
        if not found:
            # confirm completeness before declaring closure
            for c in range(1, state[NEXT]):
                if p[c] == c:
                    for x in range(ncols):
                        if table[c, x] == 0:
                            found = True
                            break
                    if found:
                        fp = c
                        break
            if not found:
                return CLOSED
        if state[NEXT] >= n and state[LIVE] < state[NEXT] - 1:
            _compact(table, p, state, remap)
            fp = remap[fp]
        x = 0
        while table[fp, x] != 0:
            x += 1
        if _define(table, p, inv_col, fp, x, state, stack) == 0:
            return EXCEEDED
        _process_deductions(table, p, q, inv_col, conj_flat, conj_off, col_conj, col_off, relf, relo, state, stack)


@njit(cache=True)
def standardize(table, p, start):
    """Renumber live cosets breadth-first from ``start``; returns a 0-based table."""
    nxt = table.shape[0]
    ncols = table.shape[1]
    num = np.full(nxt, -1, dtype=np.int32)
    order = np.zeros(nxt, dtype=np.int32)
    num[start] = 0
    order[0] = start
    count = 1
    head = 0
    while head < count:
        c = order[head]
        head += 1
        for x in range(ncols):
            d = table[c, x]
            if num[d] < 0:
                num[d] = count
                order[count] = d
                count += 1
    out = np.empty((count, ncols), dtype=np.int32)
    for k in range(count):
        c = order[k]
        for x in range(ncols):
            out[k, x] = num[table[c, x]]
    return out


@njit(cache=True)
def relators_hold(table, relf, relo):
    """True iff every relator traces a closed loop from every coset (0-based table)."""
    n = table.shape[0]
    for c in range(n):
        for r in range(relo.shape[0] - 1):
            f = c
            for k in range(relo[r], relo[r + 1]):
                f = table[f, relf[k]]
            if f != c:
                return False
    return True
