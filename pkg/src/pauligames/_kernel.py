"""The jitted Gray-code scan kernel.  Import only via _scan (keeps numba lazy).

State per shard: c[q] is question q's current 2-bit choice; T[k][b] counts,
over k's intersecting partners j, the cross pairs (j, k) that a responder
answering b at k would win against the scanned side's current answers; m[k]
is the responder's best per-question score max_b (wa*T[k][b] + ws*[b==c[k]]);
tot is their sum; sym is the count of cross pairs won when the responder
copies c exactly; flags[k] marks questions where copying c[k] already attains
m[k], agree is their count.  One Gray step flips one choice bit, so only the
flipped question and its partners are touched.
"""
from __future__ import annotations

import numpy as np
from numba import njit, prange


@njit(cache=True, parallel=True)
def scan_kernel(nq, deg, nbr, contrib, wa, ws, nshards, shard_len):
    best = np.full(nshards, -1, np.int64)
    bestwit = np.zeros(nshards, np.int64)
    symbest = np.full(nshards, -1, np.int64)
    symwit = np.zeros(nshards, np.int64)
    agreebest = np.full(nshards, -1, np.int64)
    agreewit = np.zeros(nshards, np.int64)
    agreenf = np.full(nshards, -1, np.int64)
    agreenfwit = np.full(nshards, -1, np.int64)

    for s in prange(nshards):
        base = np.int64(s) * np.int64(shard_len)
        gray = base ^ (base >> 1)
        c = np.empty(nq, np.int64)
        for q in range(nq):
            c[q] = (gray >> (2 * q)) & 3
        T = np.zeros((nq, 4), np.int64)
        for k in range(nq):
            for t in range(deg[k]):
                j = nbr[k, t]
                for b in range(4):
                    T[k, b] += contrib[j, k, c[j], b]
        m = np.empty(nq, np.int64)
        flags = np.empty(nq, np.int64)
        tot = np.int64(0)
        agree = np.int64(0)
        sym = np.int64(0)
        for k in range(nq):
            mk = np.int64(-1)
            for b in range(4):
                sc = wa * T[k, b]
                if b == c[k]:
                    sc += ws
                if sc > mk:
                    mk = sc
            m[k] = mk
            tot += mk
            fl = np.int64(1) if wa * T[k, c[k]] + ws == mk else np.int64(0)
            flags[k] = fl
            agree += fl
            sym += T[k, c[k]]

        sbest = tot
        swit = gray
        sagree = agree
        sagreewit = gray
        if agree < nq:
            snf = agree
            snfwit = gray
        else:
            snf = np.int64(-1)
            snfwit = np.int64(-1)
        ssym = sym
        ssymwit = gray

        i = base + 1
        end = base + np.int64(shard_len)
        while i < end:
            x = i
            bit = np.int64(0)
            while x & 1 == 0:
                x >>= 1
                bit += 1
            gray ^= np.int64(1) << bit
            q = bit >> 1
            old = c[q]
            new = (gray >> (2 * q)) & 3
            for t in range(deg[q]):
                k = nbr[q, t]
                ck = c[k]
                sym += 2 * (contrib[q, k, new, ck] - contrib[q, k, old, ck])
                for b in range(4):
                    T[k, b] += contrib[q, k, new, b] - contrib[q, k, old, b]
                mk = np.int64(-1)
                for b in range(4):
                    sc = wa * T[k, b]
                    if b == ck:
                        sc += ws
                    if sc > mk:
                        mk = sc
                tot += mk - m[k]
                m[k] = mk
                fl = np.int64(1) if wa * T[k, ck] + ws == mk else np.int64(0)
                agree += fl - flags[k]
                flags[k] = fl
            c[q] = new
            if ws != 0:
                mk = np.int64(-1)
                for b in range(4):
                    sc = wa * T[q, b]
                    if b == new:
                        sc += ws
                    if sc > mk:
                        mk = sc
                tot += mk - m[q]
                m[q] = mk
            fl = np.int64(1) if wa * T[q, new] + ws == m[q] else np.int64(0)
            agree += fl - flags[q]
            flags[q] = fl

            if tot > sbest:
                sbest = tot
                swit = gray
                sagree = agree
                sagreewit = gray
                if agree < nq:
                    snf = agree
                    snfwit = gray
                else:
                    snf = np.int64(-1)
                    snfwit = np.int64(-1)
            elif tot == sbest:
                if gray < swit:
                    swit = gray
                if agree > sagree:
                    sagree = agree
                    sagreewit = gray
                elif agree == sagree and gray < sagreewit:
                    sagreewit = gray
                if agree < nq:
                    if agree > snf:
                        snf = agree
                        snfwit = gray
                    elif agree == snf and gray < snfwit:
                        snfwit = gray
            if sym > ssym:
                ssym = sym
                ssymwit = gray
            elif sym == ssym and gray < ssymwit:
                ssymwit = gray
            i += 1

        best[s] = sbest
        bestwit[s] = swit
        symbest[s] = ssym
        symwit[s] = ssymwit
        agreebest[s] = sagree
        agreewit[s] = sagreewit
        agreenf[s] = snf
        agreenfwit[s] = snfwit

    return best, bestwit, symbest, symwit, agreebest, agreewit, agreenf, agreenfwit
