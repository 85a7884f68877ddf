"""HLT coset enumeration over a dense integer coset table.

Columns are letter codes ``2*g`` (generator ``g``) and ``2*g + 1`` (its
inverse), so ``col ^ 1`` is the inverse column.  Undefined entries hold -1.
All helpers mutate their array arguments in place; the same source runs
compiled (numba) or interpreted.
"""

from __future__ import annotations

import numpy as np

from ._jit import kernel

UNDEF = -1


@kernel
def _rep(p, k):
    r = k
    while p[r] != r:
        r = p[r]
    while p[k] != r:
        nxt = p[k]
        p[k] = r
        k = nxt
    return r


@kernel
def _merge(p, queue, qlen, a, b):
    ra = _rep(p, a)
    rb = _rep(p, b)
    if ra != rb:
        lo = min(ra, rb)
        hi = max(ra, rb)
        p[hi] = lo
        queue[qlen[0]] = hi
        qlen[0] += 1


@kernel
def _coincidence(table, p, queue, qlen, a, b):
    ncols = table.shape[1]
    qlen[0] = 0
    _merge(p, queue, qlen, a, b)
    i = 0
    while i < qlen[0]:
        g = queue[i]
        i += 1
        for x in range(ncols):
            d = table[g, x]
            if d >= 0:
                xi = x ^ 1
                table[d, xi] = UNDEF
                mu = _rep(p, g)
                nu = _rep(p, d)
                if table[mu, x] >= 0:
                    _merge(p, queue, qlen, nu, table[mu, x])
                elif table[nu, xi] >= 0:
                    _merge(p, queue, qlen, mu, table[nu, xi])
                else:
                    table[mu, x] = nu
                    table[nu, xi] = mu


@kernel
def _define(table, p, state, f, x):
    n = state[0]
    if n >= table.shape[0]:
        return False
    p[n] = n
    table[f, x] = n
    table[n, x ^ 1] = f
    state[0] = n + 1
    return True


@kernel
def _scan_and_fill(table, p, queue, qlen, state, alpha, word, start, end):
    f = alpha
    b = alpha
    i = start
    j = end - 1
    while True:
        while i <= j and table[f, word[i]] >= 0:
            f = table[f, word[i]]
            i += 1
        if i > j:
            if f != alpha:
                _coincidence(table, p, queue, qlen, f, alpha)
            return True
        while j >= i and table[b, word[j] ^ 1] >= 0:
            b = table[b, word[j] ^ 1]
            j -= 1
        if j < i:
            _coincidence(table, p, queue, qlen, f, b)
            return True
        if i == j:
            table[f, word[i]] = b
            table[b, word[i] ^ 1] = f
            return True
        if not _define(table, p, state, f, word[i]):
            return False


@kernel
def hlt_enumerate(ncols, rel_letters, rel_offsets, sub_letters, sub_offsets, max_cosets):
    """Run HLT enumeration; return ``(completed, index, cosets_defined)``.

    ``completed`` is False when the table would exceed ``max_cosets`` rows.
    """
    table = np.full((max_cosets, ncols), UNDEF, dtype=np.int64)
    p = np.zeros(max_cosets, dtype=np.int64)
    queue = np.zeros(max_cosets, dtype=np.int64)
    qlen = np.zeros(1, dtype=np.int64)
    state = np.ones(1, dtype=np.int64)

    for k in range(sub_offsets.shape[0] - 1):
        if not _scan_and_fill(table, p, queue, qlen, state, 0,
                              sub_letters, sub_offsets[k], sub_offsets[k + 1]):
            return False, 0, state[0]

    nrel = rel_offsets.shape[0] - 1
    alpha = 0
    while alpha < state[0]:
        if p[alpha] == alpha:
            for k in range(nrel):
                if not _scan_and_fill(table, p, queue, qlen, state, alpha,
                                      rel_letters, rel_offsets[k], rel_offsets[k + 1]):
                    return False, 0, state[0]
                if p[alpha] != alpha:
                    break
            if p[alpha] == alpha:
                for x in range(ncols):
                    if table[alpha, x] < 0:
                        if not _define(table, p, state, alpha, x):
                            return False, 0, state[0]
        alpha += 1

    live = 0
    for k in range(state[0]):
        if p[k] == k:
            live += 1
    return True, live, state[0]
