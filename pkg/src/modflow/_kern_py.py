"""Pure-Python implementations of the hot kernels.

Mirrors the interface of the compiled module ``modflow._kern_c``; the active
implementation is chosen at import time in :mod:`modflow._backend`. Every
function here is the semantic reference: the compiled twin must produce
identical output (see tests/test_backend_parity.py).

All graph inputs arrive in CSR form (indptr, indices); outputs are plain
Python lists/ints so both backends are interchangeable.
"""

from __future__ import annotations

from collections import deque

__all__ = [
    "components",
    "co_components",
    "refine_modular",
    "module_closure",
    "blossom",
    "dinic",
    "triangle_count",
    "bmatch_dual",
]


def _aslist(x):
    return x.tolist() if hasattr(x, "tolist") else list(x)


def components(n, indptr, indices):
    """Connected-component labels; components numbered by smallest vertex."""
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    label = [-1] * n
    nxt = 0
    for start in range(n):
        if label[start] != -1:
            continue
        label[start] = nxt
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for i in range(indptr[v], indptr[v + 1]):
                u = indices[i]
                if label[u] == -1:
                    label[u] = nxt
                    queue.append(u)
        nxt += 1
    return label


def co_components(n, indptr, indices):
    """Component labels of the complement graph, without materializing it.

    BFS over non-neighbors using a shrinking list of unvisited vertices, so
    the total work stays near-linear in n + m.
    """
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    label = [-1] * n
    unvisited = list(range(n))  # kept sorted; rebuilt as we consume it
    nxt = 0
    mark = [False] * n
    while unvisited:
        start = unvisited[0]
        label[start] = nxt
        queue = deque([start])
        unvisited = unvisited[1:]
        while queue:
            v = queue.popleft()
            for i in range(indptr[v], indptr[v + 1]):
                mark[indices[i]] = True
            keep = []
            for u in unvisited:
                if mark[u]:
                    keep.append(u)
                else:
                    label[u] = nxt
                    queue.append(u)
            for i in range(indptr[v], indptr[v + 1]):
                mark[indices[i]] = False
            unvisited = keep
        nxt += 1
    return label


def refine_modular(n, indptr, indices, part_of):
    """Coarsest partition into modules refining the given partition.

    Repeats full splitter passes until a pass makes no split; that final
    clean pass doubles as a certificate that every part is a module. Worst
    case O(n(n+m)), typically a handful of passes.
    """
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    part = _aslist(part_of)
    size = {}
    for p in part:
        size[p] = size.get(p, 0) + 1
    next_id = max(size) + 1 if size else 0
    while True:
        changed = False
        for y in range(n):
            py = part[y]
            buckets = {}
            for i in range(indptr[y], indptr[y + 1]):
                u = indices[i]
                pu = part[u]
                if pu != py:
                    if pu in buckets:
                        buckets[pu].append(u)
                    else:
                        buckets[pu] = [u]
            for pu, hit in buckets.items():
                if len(hit) < size[pu]:
                    new_id = next_id
                    next_id += 1
                    for u in hit:
                        part[u] = new_id
                    size[new_id] = len(hit)
                    size[pu] -= len(hit)
                    changed = True
        if not changed:
            return part


def module_closure(n, indptr, indices, seed):
    """Smallest module containing all seed vertices, as a sorted list.

    Grows the set by absorbing every outside vertex adjacent to part (but not
    all) of it; such a distinguisher must belong to any module containing the
    current set, so the fixpoint is the minimal module. O(n^2 + m).
    """
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    inside = [False] * n
    members = []
    for v in seed:
        if not inside[v]:
            inside[v] = True
            members.append(v)
    cnt = [0] * n
    for v in members:
        for i in range(indptr[v], indptr[v + 1]):
            u = indices[i]
            if not inside[u]:
                cnt[u] += 1
    while True:
        k = len(members)
        add = [u for u in range(n) if not inside[u] and 0 < cnt[u] < k]
        if not add:
            return sorted(members)
        for u in add:
            inside[u] = True
        for u in add:
            for i in range(indptr[u], indptr[u + 1]):
                w = indices[i]
                if not inside[w]:
                    cnt[w] += 1
        members.extend(add)


def blossom(n, indptr, indices):
    """Maximum matching (Edmonds' blossom algorithm), as a match array.

    Greedy initialization, then one alternating-tree search per remaining
    exposed vertex with blossom contraction via base pointers.
    """
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for i in range(indptr[v], indptr[v + 1]):
                u = indices[i]
                if match[u] == -1:
                    match[u] = v
                    match[v] = u
                    break
    p = [-1] * n
    base = list(range(n))
    used = [False] * n

    def lca(a, b):
        seen = [False] * n
        a = base[a]
        while True:
            seen[a] = True
            if match[a] == -1:
                break
            a = base[p[match[a]]]
        b = base[b]
        while not seen[b]:
            b = base[p[match[b]]]
        return b

    def mark_path(v, stop, child, in_blossom):
        while base[v] != stop:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            p[v] = child
            child = match[v]
            v = p[match[v]]

    def find_path(root):
        for i in range(n):
            used[i] = False
            p[i] = -1
            base[i] = i
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for i in range(indptr[v], indptr[v + 1]):
                to = indices[i]
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    stop = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, stop, to, in_blossom)
                    mark_path(to, stop, v, in_blossom)
                    for w in range(n):
                        if in_blossom[base[w]]:
                            base[w] = stop
                            if not used[w]:
                                used[w] = True
                                queue.append(w)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    for v in range(n):
        if match[v] == -1:
            end = find_path(v)
            while end != -1:
                pv = p[end]
                ppv = match[pv]
                match[end] = pv
                match[pv] = end
                end = ppv
    return match


def dinic(num_nodes, tails, heads, caps, source, sink, want_flows=True):
    """Blocking-flow max flow. Returns (value, per-input-arc flows).

    Arcs are directed; a residual reverse arc is created for each input arc.
    Arc order is the construction order, so results are deterministic.
    """
    tails = _aslist(tails)
    heads = _aslist(heads)
    caps = _aslist(caps)
    na = len(tails)
    to = [0] * (2 * na)
    cap = [0] * (2 * na)
    adj = [[] for _ in range(num_nodes)]
    for k in range(na):
        to[2 * k] = heads[k]
        cap[2 * k] = caps[k]
        to[2 * k + 1] = tails[k]
        adj[tails[k]].append(2 * k)
        adj[heads[k]].append(2 * k + 1)
    level = [-1] * num_nodes
    it = [0] * num_nodes
    value = 0

    def bfs():
        for i in range(num_nodes):
            level[i] = -1
        level[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for a in adj[v]:
                if cap[a] > 0 and level[to[a]] == -1:
                    level[to[a]] = level[v] + 1
                    queue.append(to[a])
        return level[sink] != -1

    def dfs(v, f):
        if v == sink:
            return f
        while it[v] < len(adj[v]):
            a = adj[v][it[v]]
            w = to[a]
            if cap[a] > 0 and level[w] == level[v] + 1:
                d = dfs(w, min(f, cap[a]))
                if d > 0:
                    cap[a] -= d
                    cap[a ^ 1] += d
                    return d
            it[v] += 1
        return 0

    import sys

    limit = num_nodes + 10
    if sys.getrecursionlimit() < limit:
        sys.setrecursionlimit(limit + 100)
    inf = sum(c for c in caps) + 1
    while bfs():
        for i in range(num_nodes):
            it[i] = 0
        while True:
            f = dfs(source, inf)
            if f <= 0:
                break
            value += f
    flows = [caps[k] - cap[2 * k] for k in range(na)] if want_flows else None
    return value, flows


def triangle_count(n, indptr, indices):
    """Exact triangle count by sorted-adjacency merge over each edge."""
    indptr = _aslist(indptr)
    indices = _aslist(indices)
    total = 0
    for u in range(n):
        for i in range(indptr[u], indptr[u + 1]):
            v = indices[i]
            if v <= u:
                continue
            # count common neighbors w with w > v
            a, b = i + 1, indptr[v]
            ae, be = indptr[u + 1], indptr[v + 1]
            while b < be and indices[b] <= v:
                b += 1
            while a < ae and b < be:
                x, y = indices[a], indices[b]
                if x == y:
                    total += 1
                    a += 1
                    b += 1
                elif x < y:
                    a += 1
                else:
                    b += 1
    return total


def bmatch_dual(adj_masks, b):
    """Maximum b-matching value on a small graph via dual enumeration.

    The graph is given as per-vertex neighbor bitmasks. Correctness rests on
    the deficiency form of the matching min-max applied to the copy blow-up:
    vertex copies are interchangeable, so an optimal dual set can be taken as
    a union of whole vertex classes and enumerated over all 2^k class
    subsets. A removed-class subset S scores sum over leftover components K
    of (b(K) if K is a single class else b(K) mod 2), minus b(S); the value
    is (b(V) - best score) / 2. Exponential in k; callers keep k <= ~15.
    """
    adj_masks = _aslist(adj_masks)
    b = _aslist(b)
    k = len(b)
    if k == 0:
        return 0
    assert all(x > 0 for x in b)
    total = sum(b)
    full = (1 << k) - 1
    best = 0
    for s_mask in range(full + 1):
        score = 0
        rem = full & ~s_mask
        r = rem
        while r:
            low = r & (-r)
            comp = low
            frontier = low
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    fl = f & (-f)
                    nxt |= adj_masks[fl.bit_length() - 1]
                    f ^= fl
                frontier = nxt & rem & ~comp
                comp |= frontier
            bk = 0
            c = comp
            while c:
                cl = c & (-c)
                bk += b[cl.bit_length() - 1]
                c ^= cl
            score += bk if comp == (comp & -comp) else (bk & 1)
            r &= ~comp
        s = s_mask
        while s:
            sl = s & (-s)
            score -= b[sl.bit_length() - 1]
            s ^= sl
        if score > best:
            best = score
    assert (total - best) % 2 == 0
    return (total - best) // 2
