"""Hot loops: graph primitives, proposal moves and the chain runners.

Graphs arrive as CSR arrays (``indptr``, ``indices``) with sorted rows.
Selections are sorted int64 arrays. Scratch arrays are passed in by the
caller and handed back clean (all False / -1) so a chain allocates once.

Every random choice goes through ``_pick`` which consumes exactly one
``rng.random()`` draw; the draw order is part of the determinism contract.
"""

import math

import numpy as np

from ._jit import njit


@njit(cache=True)
def _pick(rng, m):
    i = int(rng.random() * m)
    if i >= m:
        i = m - 1
    return i


@njit(cache=True)
def induced_edge_count(indptr, indices, nodes, cnt, inset):
    """Edges with both endpoints in ``nodes[:cnt]``; ``inset`` marks those nodes."""
    twice = 0
    for a in range(cnt):
        u = nodes[a]
        for p in range(indptr[u], indptr[u + 1]):
            if inset[indices[p]]:
                twice += 1
    return twice // 2


@njit(cache=True)
def frontier(indptr, indices, nodes, cnt, inset, seen, out):
    """Sorted nodes outside ``inset`` adjacent to ``nodes[:cnt]``; returns the count."""
    c = 0
    for a in range(cnt):
        u = nodes[a]
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if not inset[v] and not seen[v]:
                seen[v] = True
                out[c] = v
                c += 1
    for i in range(c):
        seen[out[i]] = False
    out[:c].sort()
    return c


@njit(cache=True)
def induced_connected(indptr, indices, nodes, cnt, pos, seen, queue):
    """BFS over edges induced by ``nodes[:cnt]``; ``pos[v] >= 0`` marks membership."""
    if cnt == 0:
        return True
    queue[0] = nodes[0]
    seen[nodes[0]] = True
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        for p in range(indptr[u], indptr[u + 1]):
            v = indices[p]
            if pos[v] >= 0 and not seen[v]:
                seen[v] = True
                queue[tail] = v
                tail += 1
    for i in range(tail):
        seen[queue[i]] = False
    return tail == cnt


@njit(cache=True)
def articulation(indptr, indices, nodes, cnt, pos, is_cut, disc, low, parent, cursor, stack):
    """Iterative Hopcroft-Tarjan over the subgraph induced by ``nodes[:cnt]``.

    ``pos[v]`` must hold the local index of ``v`` in ``nodes`` or -1.
    Fills ``is_cut[:cnt]`` and returns True iff the induced subgraph is
    connected. Cut flags are only meaningful for a connected input.
    """
    for i in range(cnt):
        disc[i] = -1
        low[i] = 0
        is_cut[i] = False
    if cnt == 0:
        return True
    disc[0] = 0
    low[0] = 0
    parent[0] = -1
    cursor[0] = indptr[nodes[0]]
    stack[0] = 0
    sp = 0
    t = 1
    root_children = 0
    while sp >= 0:
        i = stack[sp]
        u = nodes[i]
        if cursor[i] < indptr[u + 1]:
            v = indices[cursor[i]]
            cursor[i] += 1
            j = pos[v]
            if j < 0:
                continue
            if disc[j] == -1:
                parent[j] = i
                disc[j] = t
                low[j] = t
                t += 1
                cursor[j] = indptr[v]
                sp += 1
                stack[sp] = j
                if i == 0:
                    root_children += 1
            elif j != parent[i]:
                if disc[j] < low[i]:
                    low[i] = disc[j]
        else:
            sp -= 1
            if sp >= 0:
                q = stack[sp]
                if low[i] < low[q]:
                    low[q] = low[i]
                if q != 0 and low[i] >= disc[q]:
                    is_cut[q] = True
    if root_children > 1:
        is_cut[0] = True
    return t == cnt


@njit(cache=True)
def distance_sum(indptr, indices, n, sel, k, penalty, dist, queue, inset):
    """Sum of full-graph BFS distances over ordered pairs of ``sel``.

    Unreachable pairs cost ``penalty``. ``dist`` must be all -1 on entry.
    """
    total = 0
    for a in range(k):
        src = sel[a]
        dist[src] = 0
        queue[0] = src
        head = 0
        tail = 1
        found = 1
        while head < tail and found < k:
            u = queue[head]
            head += 1
            du = dist[u] + 1
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[v] < 0:
                    dist[v] = du
                    queue[tail] = v
                    tail += 1
                    if inset[v]:
                        found += 1
                        total += du
        total += (k - found) * penalty
        for i in range(tail):
            dist[queue[i]] = -1
    return total


@njit(cache=True)
def _replace_sorted(sel, k, u0, u1, out):
    """``out[:k]`` = sorted(sel - {u0} + {u1})."""
    c = 0
    placed = False
    for i in range(k):
        v = sel[i]
        if v == u0:
            continue
        if not placed and u1 < v:
            out[c] = u1
            c += 1
            placed = True
        out[c] = v
        c += 1
    if not placed:
        out[c] = u1


@njit(cache=True)
def grow(indptr, indices, k, start, rng, mark, seen, buf, out):
    """Random connected growth from ``start``; True when ``out[:k]`` is filled (sorted)."""
    out[0] = start
    mark[start] = True
    size = 1
    while size < k:
        c = frontier(indptr, indices, out, size, mark, seen, buf)
        if c == 0:
            break
        v = buf[_pick(rng, c)]
        out[size] = v
        mark[v] = True
        size += 1
    for i in range(size):
        mark[out[i]] = False
    if size < k:
        return False
    out[:k].sort()
    return True


@njit(cache=True)
def init_selection(indptr, indices, n, k, attempts, rng, out):
    mark = np.zeros(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    buf = np.empty(n, dtype=np.int64)
    for _ in range(attempts):
        start = _pick(rng, n)
        if grow(indptr, indices, k, start, rng, mark, seen, buf, out):
            return True
    return False


@njit(cache=True)
def local_move(indptr, indices, sel, k, inset, rng, out, seen, buf, tmp, pos,
               is_cut, disc, low, parent, cursor, stack):
    """Swap in a frontier node and drop a non-cut selected node. False = no proposal."""
    c = frontier(indptr, indices, sel, k, inset, seen, buf)
    if c == 0:
        return False
    u1 = buf[_pick(rng, c)]
    for i in range(k):
        tmp[i] = sel[i]
        pos[sel[i]] = i
    tmp[k] = u1
    pos[u1] = k
    connected = articulation(indptr, indices, tmp, k + 1, pos, is_cut, disc, low,
                             parent, cursor, stack)
    for i in range(k + 1):
        pos[tmp[i]] = -1
    if not connected:
        return False
    cc = 0
    for i in range(k):
        if not is_cut[i]:
            buf[cc] = sel[i]
            cc += 1
    if cc == 0:
        return False
    u0 = buf[_pick(rng, cc)]
    _replace_sorted(sel, k, u0, u1, out)
    return True


@njit(cache=True)
def global_move(indptr, indices, n, inset, outside, k, retries, rng, out, mark, seen, buf):
    """Regrow a connected k-set from a fresh node outside ``inset``. False = no proposal.

    ``outside`` is the number of nodes not marked in ``inset``.
    """
    if outside <= 0:
        return False
    for _ in range(retries):
        r = _pick(rng, outside)
        start = -1
        for v in range(n):
            if not inset[v]:
                if r == 0:
                    start = v
                    break
                r -= 1
        if grow(indptr, indices, k, start, rng, mark, seen, buf, out):
            return True
    return False


@njit(cache=True)
def sm_swap(indptr, indices, n, sel, k, inset, rng, out, seen, buf, tmp):
    """SM proposal. Returns False only in the degenerate case sel == V."""
    i0 = _pick(rng, k)
    u0 = sel[i0]
    c = 0
    for i in range(k):
        if i != i0:
            tmp[c] = sel[i]
            c += 1
    cnt = frontier(indptr, indices, tmp, k - 1, inset, seen, buf)
    if cnt > 0:
        u1 = buf[_pick(rng, cnt)]
    else:
        outside = n - k
        if outside <= 0:
            for i in range(k):
                out[i] = sel[i]
            return False
        r = _pick(rng, outside)
        u1 = -1
        for v in range(n):
            if not inset[v]:
                if r == 0:
                    u1 = v
                    break
                r -= 1
    _replace_sorted(sel, k, u0, u1, out)
    return True


@njit(cache=True)
def sm_ninth(indptr, indices, n, sel, k, inset, rng, out, seen, buf):
    """Swap a selected node for one with no edge into ``sel``. False = unchanged."""
    c = frontier(indptr, indices, sel, k, inset, seen, buf)
    for i in range(c):
        seen[buf[i]] = True
    cc = 0
    for v in range(n):
        if not inset[v] and not seen[v]:
            buf[c + cc] = v
            cc += 1
    for i in range(c):
        seen[buf[i]] = False
    if cc == 0:
        for i in range(k):
            out[i] = sel[i]
        return False
    u0 = sel[_pick(rng, k)]
    u1 = buf[c + _pick(rng, cc)]
    _replace_sorted(sel, k, u0, u1, out)
    return True


@njit(cache=True)
def _set_members(inset, sel, k, value):
    for i in range(k):
        inset[sel[i]] = value


@njit(cache=True)
def run_sm(indptr, indices, n, k, start, n_iter, penalty, target_edges, stop_at_target,
           rng, cur, best, density, best_density, edges, best_edges, accepted,
           objective, proposed, draws, states):
    """SM chain. Arrays are filled for iterations 1..returned count.

    ``objective`` has length ``n_iter + 1``; entry 0 holds L of the start state.
    ``states`` gets the selection after each iteration when it has rows.
    """
    denom = k * (k - 1)
    inset = np.zeros(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    buf = np.empty(n, dtype=np.int64)
    tmp = np.empty(n, dtype=np.int64)
    dist = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    prop = np.empty(k, dtype=np.int64)
    for i in range(k):
        cur[i] = start[i]
        best[i] = start[i]
    _set_members(inset, cur, k, True)
    m_cur = induced_edge_count(indptr, indices, cur, k, inset)
    m_best = m_cur
    l_cur = distance_sum(indptr, indices, n, cur, k, penalty, dist, queue, inset)
    objective[0] = l_cur
    done = 0
    for it in range(1, n_iter + 1):
        sm_swap(indptr, indices, n, cur, k, inset, rng, prop, seen, buf, tmp)
        _set_members(inset, cur, k, False)
        _set_members(inset, prop, k, True)
        l_new = distance_sum(indptr, indices, n, prop, k, penalty, dist, queue, inset)
        u = rng.random()
        ok = l_new <= l_cur or u < math.exp(-(l_new - l_cur) / k)
        if ok:
            for i in range(k):
                cur[i] = prop[i]
            l_cur = l_new
        else:
            _set_members(inset, prop, k, False)
            _set_members(inset, cur, k, True)
        if it % 9 == 0:
            if sm_ninth(indptr, indices, n, cur, k, inset, rng, prop, seen, buf):
                _set_members(inset, cur, k, False)
                for i in range(k):
                    cur[i] = prop[i]
                _set_members(inset, cur, k, True)
                l_cur = distance_sum(indptr, indices, n, cur, k, penalty, dist, queue, inset)
        m_cur = induced_edge_count(indptr, indices, cur, k, inset)
        if m_cur > m_best:
            m_best = m_cur
            for i in range(k):
                best[i] = cur[i]
        j = it - 1
        edges[j] = m_cur
        best_edges[j] = m_best
        density[j] = 2.0 * m_cur / denom
        best_density[j] = 2.0 * m_best / denom
        accepted[j] = ok
        objective[it] = l_cur
        proposed[j] = l_new
        draws[j] = u
        if states.shape[0] > 0:
            for i in range(k):
                states[j, i] = cur[i]
        done = it
        if stop_at_target and m_best >= target_edges:
            break
    return done


@njit(cache=True)
def run_anneal(indptr, indices, n, k, start, n_iter, alpha, temps, use_theta, thresholds,
               pi, theta, gains, target_edges, stop_at_target, rng, cur, best, density,
               best_density, edges, best_edges, accepted, region, draws, states):
    """SA chain, or SAA when ``use_theta``: ``theta`` is updated in place.

    ``temps[l-1]`` and ``gains[l-1]`` are the schedule values of iteration l.
    Regions are stored 1-based in ``region``; 0 when ``use_theta`` is False.
    ``states`` gets the selection after each iteration when it has rows.
    """
    denom = k * (k - 1)
    nreg = pi.shape[0]
    inset = np.zeros(n, dtype=np.bool_)
    seen = np.zeros(n, dtype=np.bool_)
    mark = np.zeros(n, dtype=np.bool_)
    buf = np.empty(n, dtype=np.int64)
    tmp = np.empty(k + 1, dtype=np.int64)
    pos = np.full(n, -1, dtype=np.int64)
    is_cut = np.zeros(k + 1, dtype=np.bool_)
    disc = np.empty(k + 1, dtype=np.int64)
    low = np.empty(k + 1, dtype=np.int64)
    parent = np.empty(k + 1, dtype=np.int64)
    cursor = np.empty(k + 1, dtype=np.int64)
    stack = np.empty(k + 1, dtype=np.int64)
    prop = np.empty(k, dtype=np.int64)
    for i in range(k):
        cur[i] = start[i]
        best[i] = start[i]
    _set_members(inset, cur, k, True)
    m_cur = induced_edge_count(indptr, indices, cur, k, inset)
    m_best = m_cur
    d_cur = 2.0 * m_cur / denom
    j_cur = 0
    if use_theta:
        j_cur = np.searchsorted(thresholds, d_cur)
    done = 0
    for it in range(1, n_iter + 1):
        t = temps[it - 1]
        if rng.random() < alpha:
            have = local_move(indptr, indices, cur, k, inset, rng, prop, seen, buf, tmp,
                              pos, is_cut, disc, low, parent, cursor, stack)
        else:
            have = global_move(indptr, indices, n, inset, n - k, k, 100, rng, prop, mark,
                               seen, buf)
        ok = False
        u = np.nan
        if have:
            _set_members(inset, cur, k, False)
            _set_members(inset, prop, k, True)
            m_new = induced_edge_count(indptr, indices, prop, k, inset)
            d_new = 2.0 * m_new / denom
            x = (d_new - d_cur) / t
            j_new = 0
            if use_theta:
                j_new = np.searchsorted(thresholds, d_new)
                x += theta[j_cur] - theta[j_new]
            u = rng.random()
            ok = x >= 0.0 or u < math.exp(x)
            if ok:
                for i in range(k):
                    cur[i] = prop[i]
                m_cur = m_new
                d_cur = d_new
                j_cur = j_new
            else:
                _set_members(inset, prop, k, False)
                _set_members(inset, cur, k, True)
        if use_theta:
            eta = gains[it - 1]
            for r in range(nreg):
                theta[r] -= eta * pi[r]
            theta[j_cur] += eta
        if m_cur > m_best:
            m_best = m_cur
            for i in range(k):
                best[i] = cur[i]
        j = it - 1
        edges[j] = m_cur
        best_edges[j] = m_best
        density[j] = d_cur
        best_density[j] = 2.0 * m_best / denom
        accepted[j] = ok
        region[j] = j_cur + 1 if use_theta else 0
        draws[j] = u
        if states.shape[0] > 0:
            for i in range(k):
                states[j, i] = cur[i]
        done = it
        if stop_at_target and m_best >= target_edges:
            break
    return done


@njit(cache=True)
def brute_force(adj, n, k, witness):
    """Max induced edge count over all k-subsets, lexicographic enumeration.

    The first subset reaching the maximum is kept in ``witness``, which makes
    it the lexicographically smallest. Branches that cannot beat the current
    best are pruned.
    """
    full = k * (k - 1) // 2
    idx = np.empty(k, dtype=np.int64)
    partial = np.zeros(k + 1, dtype=np.int64)
    best = -1
    i = 0
    idx[0] = -1
    while i >= 0:
        idx[i] += 1
        if idx[i] > n - k + i:
            i -= 1
            continue
        v = idx[i]
        s = partial[i]
        for a in range(i):
            s += adj[v, idx[a]]
        partial[i + 1] = s
        if i == k - 1:
            if s > best:
                best = s
                for a in range(k):
                    witness[a] = idx[a]
                if best == full:
                    break
        elif s + full - (i + 1) * i // 2 > best:
            i += 1
            idx[i] = idx[i - 1]
    return best
