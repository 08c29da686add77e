"""Prefix tree of the domain of an observation set."""

from __future__ import annotations

from .charmatrix import prefix_closure
from .observations import ObservationSet


class PrefixTree:
    """Nodes are the prefixes of ``dom(d)`` in length-lex order; node 0 is the empty string.

    ``child`` is a flat list, ``child[node * sigma + a]`` being the node for
    ``word(node) + (a,)`` or -1.  ``obs[node]`` is the observed output id or -1.
    """

    def __init__(self, d: ObservationSet):
        self.sigma = len(d.input_alphabet)
        self.omega = len(d.output_alphabet)
        words = list(prefix_closure(d.domain())) or [()]
        self.words = words
        self.index = {w: i for i, w in enumerate(words)}
        self.child = [-1] * (len(words) * self.sigma)
        for i, w in enumerate(words):
            if w:
                self.child[self.index[w[:-1]] * self.sigma + w[-1]] = i
        entries = d.entries
        self.obs = [entries.get(w, -1) for w in words]

    def __len__(self):
        return len(self.words)

    def parent(self, node):
        w = self.words[node]
        return (self.index[w[:-1]], w[-1]) if w else None

    def edges(self):
        """``(parent, symbol, child)`` triples in node order."""
        for i, w in enumerate(self.words):
            if w:
                yield self.index[w[:-1]], w[-1], i

