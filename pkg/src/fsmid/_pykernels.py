"""Pure-Python search kernels; the reference twin of ``_kernels.pyx``.

Both kernels walk the ``k * sigma`` transition entries in row-major order,
depth first, and keep the prefix-tree nodes whose state is already fixed by
the assigned entries.  Assigning an entry fixes the subtrees hanging off the
nodes it extends; a node whose observed output disagrees with the output
already forced on its state prunes the branch.  Work per assignment is
proportional to the nodes it newly fixes.
"""

NAME = "python"


class _Search:
    def __init__(self, child, obs, sigma, k):
        self.child = child
        self.obs = obs
        self.sigma = sigma
        self.k = k
        self.n_nodes = len(obs)
        self.delta = [-1] * (k * sigma)
        self.node_state = [-1] * self.n_nodes
        self.state_out = [-1] * k
        self.by_state = [[] for _ in range(k)]
        self.trail = []
        self.out_trail = []
        self.visited = 0

    def fix(self, node, state):
        """Fix ``node`` (and reachable descendants) to ``state``; False on output conflict."""
        child, obs, sigma, delta = self.child, self.obs, self.sigma, self.delta
        node_state, state_out, by_state = self.node_state, self.state_out, self.by_state
        trail, out_trail = self.trail, self.out_trail
        stack = [(node, state)]
        while stack:
            c, s = stack.pop()
            node_state[c] = s
            trail.append(c)
            by_state[s].append(c)
            o = obs[c]
            if o >= 0:
                so = state_out[s]
                if so < 0:
                    state_out[s] = o
                    out_trail.append(s)
                elif so != o:
                    return False
            base = c * sigma
            row = s * sigma
            for a in range(sigma):
                ch = child[base + a]
                if ch >= 0:
                    t = delta[row + a]
                    if t >= 0:
                        stack.append((ch, t))
        return True

    def undo(self, mark, out_mark):
        trail, node_state, by_state = self.trail, self.node_state, self.by_state
        while len(trail) > mark:
            c = trail.pop()
            by_state[node_state[c]].pop()
            node_state[c] = -1
        out_trail, state_out = self.out_trail, self.state_out
        while len(out_trail) > out_mark:
            state_out[out_trail.pop()] = -1

    def assign(self, e, t):
        self.visited += 1
        self.delta[e] = t
        q, a = divmod(e, self.sigma)
        nodes = self.by_state[q]
        child, sigma = self.child, self.sigma
        for i in range(len(nodes)):
            ch = child[nodes[i] * sigma + a]
            if ch >= 0 and not self.fix(ch, t):
                return False
        return True

    def start(self):
        return self.fix(0, 0)


def search_first(child, obs, sigma, k):
    """First consistent ``k``-state table in row-major lexicographic order among canonical tables.

    A table is canonical when its reachable states carry breadth-first labels
    (restricted growth, see ``count_canonical``) and the remaining states come
    last with all-zero rows.  Every machine has a canonical relabelling, so
    this decides existence exactly.  Returns ``(delta, state_out, visited)``;
    ``delta`` is None when no ``k``-state table is consistent.  ``state_out[q]``
    is -1 for states no observation touches.
    """
    s = _Search(child, obs, sigma, k)
    if not s.start():
        return None, None, s.visited
    n_entries = k * sigma

    def dfs(e, max_seen):
        if e == n_entries:
            return True
        if e % sigma == 0 and e // sigma > max_seen:
            for rest in range(e, n_entries):
                s.delta[rest] = 0
            return True
        mark, out_mark = len(s.trail), len(s.out_trail)
        for t in range(min(max_seen + 1, k - 1) + 1):
            if s.assign(e, t) and dfs(e + 1, max(max_seen, t)):
                return True
            s.undo(mark, out_mark)
            s.delta[e] = -1
        return False

    if dfs(0, 0):
        return list(s.delta), list(s.state_out), s.visited
    return None, None, s.visited


def count_canonical(child, obs, sigma, k):
    """Count consistent tables in canonical form with exactly ``k`` states, all reachable.

    Canonical means states are numbered in breadth-first discovery order, which
    for row-major enumeration is the restricted-growth condition: each entry is
    at most one more than the largest state seen so far, and row ``q`` may only
    start once state ``q`` has been seen.  Returns ``(by_free, visited)`` where
    ``by_free[f]`` counts tables leaving ``f`` states with an unconstrained output.
    """
    s = _Search(child, obs, sigma, k)
    by_free = [0] * (k + 1)
    if not s.start():
        return by_free, s.visited
    n_entries = k * sigma

    def dfs(e, max_seen):
        if e == n_entries:
            by_free[s.state_out.count(-1)] += 1
            return
        if e % sigma == 0 and e // sigma > max_seen:
            return
        mark, out_mark = len(s.trail), len(s.out_trail)
        top = min(max_seen + 1, k - 1)
        for t in range(top + 1):
            if s.assign(e, t):
                dfs(e + 1, max(max_seen, t))
            s.undo(mark, out_mark)
            s.delta[e] = -1

    dfs(0, 0)
    return by_free, s.visited
