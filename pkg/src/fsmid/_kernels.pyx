# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels; same algorithm and results as ``_pykernels``."""

from libc.stdlib cimport malloc, free

NAME = "cython"


cdef class _Search:
    cdef int n_nodes, sigma, k, n_entries
    cdef int *child
    cdef int *obs
    cdef int *delta
    cdef int *node_state
    cdef int *state_out
    cdef int *by_state      # k rows of n_nodes
    cdef int *by_count
    cdef int *trail
    cdef int trail_len
    cdef int *out_trail
    cdef int out_len
    cdef int *stack_node
    cdef int *stack_state
    cdef long long visited

    def __cinit__(self, child, obs, int sigma, int k):
        cdef int i
        self.n_nodes = len(obs)
        self.sigma = sigma
        self.k = k
        self.n_entries = k * sigma
        n = self.n_nodes
        self.child = <int *> malloc(max(1, n * sigma) * sizeof(int))
        self.obs = <int *> malloc(max(1, n) * sizeof(int))
        self.delta = <int *> malloc(max(1, k * sigma) * sizeof(int))
        self.node_state = <int *> malloc(max(1, n) * sizeof(int))
        self.state_out = <int *> malloc(max(1, k) * sizeof(int))
        self.by_state = <int *> malloc(max(1, k * n) * sizeof(int))
        self.by_count = <int *> malloc(max(1, k) * sizeof(int))
        self.trail = <int *> malloc(max(1, n) * sizeof(int))
        self.out_trail = <int *> malloc(max(1, k) * sizeof(int))
        self.stack_node = <int *> malloc(max(1, n) * sizeof(int))
        self.stack_state = <int *> malloc(max(1, n) * sizeof(int))
        if (self.child == NULL or self.obs == NULL or self.delta == NULL or self.node_state == NULL
                or self.state_out == NULL or self.by_state == NULL or self.by_count == NULL
                or self.trail == NULL or self.out_trail == NULL or self.stack_node == NULL
                or self.stack_state == NULL):
            raise MemoryError()
        for i in range(n * sigma):
            self.child[i] = child[i]
        for i in range(n):
            self.obs[i] = obs[i]
            self.node_state[i] = -1
        for i in range(k * sigma):
            self.delta[i] = -1
        for i in range(k):
            self.state_out[i] = -1
            self.by_count[i] = 0
        self.trail_len = 0
        self.out_len = 0
        self.visited = 0

    def __dealloc__(self):
        free(self.child)
        free(self.obs)
        free(self.delta)
        free(self.node_state)
        free(self.state_out)
        free(self.by_state)
        free(self.by_count)
        free(self.trail)
        free(self.out_trail)
        free(self.stack_node)
        free(self.stack_state)

    cdef bint fix(self, int node, int state) nogil:
        cdef int top = 0, c, s, o, so, a, ch, t, base, row
        cdef int sigma = self.sigma
        self.stack_node[0] = node
        self.stack_state[0] = state
        top = 1
        while top > 0:
            top -= 1
            c = self.stack_node[top]
            s = self.stack_state[top]
            self.node_state[c] = s
            self.trail[self.trail_len] = c
            self.trail_len += 1
            self.by_state[s * self.n_nodes + self.by_count[s]] = c
            self.by_count[s] += 1
            o = self.obs[c]
            if o >= 0:
                so = self.state_out[s]
                if so < 0:
                    self.state_out[s] = o
                    self.out_trail[self.out_len] = s
                    self.out_len += 1
                elif so != o:
                    return False
            base = c * sigma
            row = s * sigma
            for a in range(sigma):
                ch = self.child[base + a]
                if ch >= 0:
                    t = self.delta[row + a]
                    if t >= 0:
                        self.stack_node[top] = ch
                        self.stack_state[top] = t
                        top += 1
        return True

    cdef void undo(self, int mark, int out_mark) nogil:
        cdef int c
        while self.trail_len > mark:
            self.trail_len -= 1
            c = self.trail[self.trail_len]
            self.by_count[self.node_state[c]] -= 1
            self.node_state[c] = -1
        while self.out_len > out_mark:
            self.out_len -= 1
            self.state_out[self.out_trail[self.out_len]] = -1

    cdef bint assign(self, int e, int t) nogil:
        cdef int q = e // self.sigma, a = e % self.sigma
        cdef int i, ch, count = self.by_count[q]
        self.visited += 1
        self.delta[e] = t
        for i in range(count):
            ch = self.child[self.by_state[q * self.n_nodes + i] * self.sigma + a]
            if ch >= 0 and not self.fix(ch, t):
                return False
        return True

    cdef bint dfs_first(self, int e, int max_seen) nogil:
        cdef int t, mark, out_mark, top, rest
        if e == self.n_entries:
            return True
        if e % self.sigma == 0 and e // self.sigma > max_seen:
            for rest in range(e, self.n_entries):
                self.delta[rest] = 0
            return True
        mark = self.trail_len
        out_mark = self.out_len
        top = max_seen + 1
        if top > self.k - 1:
            top = self.k - 1
        for t in range(top + 1):
            if self.assign(e, t) and self.dfs_first(e + 1, t if t > max_seen else max_seen):
                return True
            self.undo(mark, out_mark)
            self.delta[e] = -1
        return False

    cdef void dfs_count(self, int e, int max_seen, long long *by_free) nogil:
        cdef int t, mark, out_mark, top, q, nfree
        if e == self.n_entries:
            nfree = 0
            for q in range(self.k):
                if self.state_out[q] < 0:
                    nfree += 1
            by_free[nfree] += 1
            return
        if e % self.sigma == 0 and e // self.sigma > max_seen:
            return
        mark = self.trail_len
        out_mark = self.out_len
        top = max_seen + 1
        if top > self.k - 1:
            top = self.k - 1
        for t in range(top + 1):
            if self.assign(e, t):
                self.dfs_count(e + 1, t if t > max_seen else max_seen, by_free)
            self.undo(mark, out_mark)
            self.delta[e] = -1


def search_first(child, obs, int sigma, int k):
    cdef _Search s = _Search(child, obs, sigma, k)
    cdef bint found
    if not s.fix(0, 0):
        return None, None, s.visited
    with nogil:
        found = s.dfs_first(0, 0)
    if not found:
        return None, None, s.visited
    delta = [s.delta[i] for i in range(k * sigma)]
    state_out = [s.state_out[i] for i in range(k)]
    return delta, state_out, s.visited


def count_canonical(child, obs, int sigma, int k):
    cdef _Search s = _Search(child, obs, sigma, k)
    cdef long long *by_free = <long long *> malloc((k + 1) * sizeof(long long))
    cdef int i
    if by_free == NULL:
        raise MemoryError()
    try:
        for i in range(k + 1):
            by_free[i] = 0
        if s.fix(0, 0):
            with nogil:
                s.dfs_count(0, 0, by_free)
        return [by_free[i] for i in range(k + 1)], s.visited
    finally:
        free(by_free)
