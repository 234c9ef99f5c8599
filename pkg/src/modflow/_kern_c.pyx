# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in modflow._kern_py.

Semantics (including tie-breaking and iteration order) must match the pure
implementations exactly; tests/test_backend_parity.py enforces this.
"""

from libc.stdlib cimport free, malloc
from libc.string cimport memset

import numpy as np

cdef extern from *:
    int __builtin_ctzll(unsigned long long)


cdef inline const int[:] _as_i32(object arr):
    return np.ascontiguousarray(arr, dtype=np.int32)


def components(int n, indptr_obj, indices_obj):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef int* label = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int i, start, head, tail, v, u, k, nxt = 0
    for i in range(n):
        label[i] = -1
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = nxt
        queue[0] = start
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                u = indices[k]
                if label[u] == -1:
                    label[u] = nxt
                    queue[tail] = u
                    tail += 1
        nxt += 1
    out = [label[i] for i in range(n)]
    free(label)
    free(queue)
    return out


def co_components(int n, indptr_obj, indices_obj):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef int* label = <int*>malloc(n * sizeof(int))
    cdef int* queue = <int*>malloc(n * sizeof(int))
    # doubly linked list of unvisited vertices, sentinel index n
    cdef int* nxt = <int*>malloc((n + 1) * sizeof(int))
    cdef int* prv = <int*>malloc((n + 1) * sizeof(int))
    cdef char* mark = <char*>malloc(n)
    cdef int i, start, head, tail, v, u, k, cur, nu, comp = 0
    for i in range(n):
        label[i] = -1
        nxt[i] = i + 1
        prv[i + 1] = i
        mark[i] = 0
    nxt[n] = 0 if n > 0 else n
    prv[0] = n
    # list head/tail threaded through sentinel n
    while nxt[n] != n:
        start = nxt[n]
        # unlink start
        nxt[n] = nxt[start]
        prv[nxt[start]] = n
        label[start] = comp
        queue[0] = start
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                mark[indices[k]] = 1
            cur = nxt[n]
            while cur != n:
                nu = nxt[cur]
                if not mark[cur]:
                    nxt[prv[cur]] = nxt[cur]
                    prv[nxt[cur]] = prv[cur]
                    label[cur] = comp
                    queue[tail] = cur
                    tail += 1
                cur = nu
            for k in range(indptr[v], indptr[v + 1]):
                mark[indices[k]] = 0
        comp += 1
    out = [label[i] for i in range(n)]
    free(label)
    free(queue)
    free(nxt)
    free(prv)
    free(mark)
    return out


def refine_modular(int n, indptr_obj, indices_obj, part_of_obj):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef const int[:] pin = _as_i32(part_of_obj)
    cdef int cap = 2 * n + 2
    cdef int* part = <int*>malloc(n * sizeof(int))
    cdef long* size = <long*>malloc(cap * sizeof(long))
    cdef long* hit = <long*>malloc(cap * sizeof(long))
    cdef int* newid = <int*>malloc(cap * sizeof(int))
    cdef int* touched = <int*>malloc((n + 1) * sizeof(int))
    cdef int i, y, k, u, pu, py, ntouched, next_id = 0, changed, any_split
    memset(size, 0, cap * sizeof(long))
    memset(hit, 0, cap * sizeof(long))
    for i in range(cap):
        newid[i] = -1
    for i in range(n):
        if pin[i] < 0 or pin[i] >= n:
            free(part)
            free(size)
            free(hit)
            free(newid)
            free(touched)
            raise ValueError("initial part ids must lie in [0, n)")
        part[i] = pin[i]
        size[pin[i]] += 1
        if pin[i] + 1 > next_id:
            next_id = pin[i] + 1
    while True:
        changed = 0
        for y in range(n):
            py = part[y]
            ntouched = 0
            for k in range(indptr[y], indptr[y + 1]):
                u = indices[k]
                pu = part[u]
                if pu != py:
                    if hit[pu] == 0:
                        touched[ntouched] = pu
                        ntouched += 1
                    hit[pu] += 1
            any_split = 0
            for i in range(ntouched):
                pu = touched[i]
                if hit[pu] < size[pu]:
                    newid[pu] = next_id
                    size[next_id] = hit[pu]
                    size[pu] -= hit[pu]
                    next_id += 1
                    any_split = 1
                    changed = 1
            if any_split:
                for k in range(indptr[y], indptr[y + 1]):
                    u = indices[k]
                    pu = part[u]
                    if pu < cap and newid[pu] != -1:
                        part[u] = newid[pu]
            for i in range(ntouched):
                pu = touched[i]
                hit[pu] = 0
                newid[pu] = -1
        if not changed:
            break
    out = [part[i] for i in range(n)]
    free(part)
    free(size)
    free(hit)
    free(newid)
    free(touched)
    return out


def module_closure(int n, indptr_obj, indices_obj, seed):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef char* inside = <char*>malloc(n)
    cdef long* cnt = <long*>malloc(n * sizeof(long))
    cdef int* members = <int*>malloc(n * sizeof(int))
    cdef int* added = <int*>malloc(n * sizeof(int))
    cdef int i, v, u, k, w, nmem = 0, nadd, sz
    memset(inside, 0, n)
    memset(cnt, 0, n * sizeof(long))
    for obj in seed:
        v = obj
        if not inside[v]:
            inside[v] = 1
            members[nmem] = v
            nmem += 1
    for i in range(nmem):
        v = members[i]
        for k in range(indptr[v], indptr[v + 1]):
            u = indices[k]
            if not inside[u]:
                cnt[u] += 1
    while True:
        sz = nmem
        nadd = 0
        for u in range(n):
            if not inside[u] and 0 < cnt[u] < sz:
                added[nadd] = u
                nadd += 1
        if nadd == 0:
            break
        for i in range(nadd):
            inside[added[i]] = 1
        for i in range(nadd):
            u = added[i]
            for k in range(indptr[u], indptr[u + 1]):
                w = indices[k]
                if not inside[w]:
                    cnt[w] += 1
        for i in range(nadd):
            members[nmem] = added[i]
            nmem += 1
    out = sorted(members[i] for i in range(nmem))
    free(inside)
    free(cnt)
    free(members)
    free(added)
    return out


cdef int _blossom_lca(int n, int* match, int* p, int* base, char* seen, int a, int b):
    cdef int i
    for i in range(n):
        seen[i] = 0
    a = base[a]
    while True:
        seen[a] = 1
        if match[a] == -1:
            break
        a = base[p[match[a]]]
    b = base[b]
    while not seen[b]:
        b = base[p[match[b]]]
    return b


cdef void _blossom_mark(int* match, int* p, int* base, char* flag, int v, int stop, int child):
    while base[v] != stop:
        flag[base[v]] = 1
        flag[base[match[v]]] = 1
        p[v] = child
        child = match[v]
        v = p[match[v]]


def blossom(int n, indptr_obj, indices_obj):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef int* match = <int*>malloc(n * sizeof(int))
    cdef int* p = <int*>malloc(n * sizeof(int))
    cdef int* base = <int*>malloc(n * sizeof(int))
    cdef char* used = <char*>malloc(n)
    cdef char* seen = <char*>malloc(n)
    cdef char* flag = <char*>malloc(n)
    cdef int* queue = <int*>malloc(n * sizeof(int))
    cdef int i, v, u, k, to, root, head, tail, stop, w, end, pv, ppv
    for i in range(n):
        match[i] = -1
    for v in range(n):
        if match[v] == -1:
            for k in range(indptr[v], indptr[v + 1]):
                u = indices[k]
                if match[u] == -1:
                    match[u] = v
                    match[v] = u
                    break
    for root in range(n):
        if match[root] != -1:
            continue
        # alternating-tree search from root
        for i in range(n):
            used[i] = 0
            p[i] = -1
            base[i] = i
        used[root] = 1
        queue[0] = root
        head = 0
        tail = 1
        end = -1
        while head < tail and end == -1:
            v = queue[head]
            head += 1
            for k in range(indptr[v], indptr[v + 1]):
                to = indices[k]
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    stop = _blossom_lca(n, match, p, base, seen, v, to)
                    for i in range(n):
                        flag[i] = 0
                    _blossom_mark(match, p, base, flag, v, stop, to)
                    _blossom_mark(match, p, base, flag, to, stop, v)
                    for w in range(n):
                        if flag[base[w]]:
                            base[w] = stop
                            if not used[w]:
                                used[w] = 1
                                queue[tail] = w
                                tail += 1
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        end = to
                        break
                    used[match[to]] = 1
                    queue[tail] = match[to]
                    tail += 1
        while end != -1:
            pv = p[end]
            ppv = match[pv]
            match[end] = pv
            match[pv] = end
            end = ppv
    out = [match[i] for i in range(n)]
    free(match)
    free(p)
    free(base)
    free(used)
    free(seen)
    free(flag)
    free(queue)
    return out


def dinic(int num_nodes, tails, heads, caps, int source, int sink,
          bint want_flows=True):
    cdef const int[:] tlv = np.ascontiguousarray(tails, dtype=np.int32)
    cdef const int[:] hdv = np.ascontiguousarray(heads, dtype=np.int32)
    cdef const long long[:] capv = np.ascontiguousarray(caps, dtype=np.int64)
    cdef int na = tlv.shape[0]
    cdef int* to = <int*>malloc(2 * na * sizeof(int))
    cdef long long* cap = <long long*>malloc(2 * na * sizeof(long long))
    cdef long long* cap0 = <long long*>malloc(na * sizeof(long long))
    cdef int* deg = <int*>malloc(num_nodes * sizeof(int))
    cdef int* aptr = <int*>malloc((num_nodes + 1) * sizeof(int))
    cdef int* arcs = <int*>malloc(2 * na * sizeof(int))
    cdef int* fill = <int*>malloc(num_nodes * sizeof(int))
    cdef int* level = <int*>malloc(num_nodes * sizeof(int))
    cdef int* it = <int*>malloc(num_nodes * sizeof(int))
    cdef int* queue = <int*>malloc(num_nodes * sizeof(int))
    cdef int* path = <int*>malloc((num_nodes + 1) * sizeof(int))
    cdef int k, i, v, u, a, head, tail, tl, hd, plen, advanced
    cdef long long value = 0, bottleneck
    memset(deg, 0, num_nodes * sizeof(int))
    for k in range(na):
        tl = tlv[k]
        hd = hdv[k]
        to[2 * k] = hd
        to[2 * k + 1] = tl
        cap[2 * k] = capv[k]
        cap[2 * k + 1] = 0
        cap0[k] = cap[2 * k]
        deg[tl] += 1
        deg[hd] += 1
    aptr[0] = 0
    for v in range(num_nodes):
        aptr[v + 1] = aptr[v] + deg[v]
        fill[v] = aptr[v]
    for k in range(na):
        tl = tlv[k]
        hd = hdv[k]
        arcs[fill[tl]] = 2 * k
        fill[tl] += 1
        arcs[fill[hd]] = 2 * k + 1
        fill[hd] += 1

    while True:
        # BFS levels
        for v in range(num_nodes):
            level[v] = -1
        level[source] = 0
        queue[0] = source
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for i in range(aptr[v], aptr[v + 1]):
                a = arcs[i]
                u = to[a]
                if cap[a] > 0 and level[u] == -1:
                    level[u] = level[v] + 1
                    queue[tail] = u
                    tail += 1
        if level[sink] == -1:
            break
        for v in range(num_nodes):
            it[v] = aptr[v]
        # blocking flow: walk with per-node arc pointers, retreat on dead ends
        while True:
            v = source
            plen = 0
            while v != sink:
                advanced = 0
                while it[v] < aptr[v + 1]:
                    a = arcs[it[v]]
                    u = to[a]
                    if cap[a] > 0 and level[u] == level[v] + 1:
                        path[plen] = a
                        plen += 1
                        v = u
                        advanced = 1
                        break
                    it[v] += 1
                if not advanced:
                    if v == source:
                        break
                    plen -= 1
                    v = to[path[plen] ^ 1]  # tail of the popped arc
                    it[v] += 1
            if v != sink:
                break
            bottleneck = cap[path[0]]
            for i in range(1, plen):
                if cap[path[i]] < bottleneck:
                    bottleneck = cap[path[i]]
            for i in range(plen):
                a = path[i]
                cap[a] -= bottleneck
                cap[a ^ 1] += bottleneck
            value += bottleneck
    flows = [cap0[k] - cap[2 * k] for k in range(na)] if want_flows else None
    out_value = int(value)
    free(to)
    free(cap)
    free(cap0)
    free(deg)
    free(aptr)
    free(arcs)
    free(fill)
    free(level)
    free(it)
    free(queue)
    free(path)
    return out_value, flows


def triangle_count(int n, indptr_obj, indices_obj):
    cdef const int[:] indptr = _as_i32(indptr_obj)
    cdef const int[:] indices = _as_i32(indices_obj)
    cdef long long total = 0
    cdef int u, v, i, a, b, ae, be, x, y
    for u in range(n):
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            if v <= u:
                continue
            a = i + 1
            ae = indptr[u + 1]
            b = indptr[v]
            be = indptr[v + 1]
            while b < be and indices[b] <= v:
                b += 1
            while a < ae and b < be:
                x = indices[a]
                y = indices[b]
                if x == y:
                    total += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
    return int(total)


def bmatch_dual(adj_masks, b):
    cdef int k = len(b)
    if k == 0:
        return 0
    if k > 62:
        raise ValueError("bmatch_dual supports at most 62 classes")
    cdef unsigned long long* masks = <unsigned long long*>malloc(k * sizeof(unsigned long long))
    cdef long long* bv = <long long*>malloc(k * sizeof(long long))
    cdef long long total = 0, best = 0, score, bk
    cdef unsigned long long full, s_mask, rem, r, low, comp, frontier, nxt, f, fl, c, s
    cdef int i, vbit
    for i in range(k):
        masks[i] = adj_masks[i]
        bv[i] = b[i]
        if bv[i] <= 0:
            free(masks)
            free(bv)
            raise AssertionError("bmatch_dual requires positive bounds")
        total += bv[i]
    full = (<unsigned long long>1 << k) - 1
    s_mask = 0
    while True:
        score = 0
        rem = full & ~s_mask
        r = rem
        while r:
            low = r & (~r + 1)
            comp = low
            frontier = low
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    fl = f & (~f + 1)
                    vbit = _bit_index(fl)
                    nxt |= masks[vbit]
                    f ^= fl
                frontier = nxt & rem & ~comp
                comp |= frontier
            bk = 0
            c = comp
            while c:
                fl = c & (~c + 1)
                bk += bv[_bit_index(fl)]
                c ^= fl
            if comp == (comp & (~comp + 1)):
                score += bk
            else:
                score += bk & 1
            r &= ~comp
        s = s_mask
        while s:
            fl = s & (~s + 1)
            score -= bv[_bit_index(fl)]
            s ^= fl
        if score > best:
            best = score
        if s_mask == full:
            break
        s_mask += 1
    free(masks)
    free(bv)
    if (total - best) % 2 != 0:
        raise AssertionError("parity violation in dual enumeration")
    return int((total - best) // 2)


cdef inline int _bit_index(unsigned long long x):
    return __builtin_ctzll(x)
