"""Shared brute-force oracles and random instance factories for the tests."""

import itertools
import random

from streamgraphs import graphs as G


def naive_least_embedding(g, h, induced=False):
    """All-injections enumeration, returning the lexicographically least
    valid mapping (as a dict) or None."""
    gs = sorted(g.vertices)
    hs = sorted(h.vertices)
    if len(gs) > len(hs):
        return None
    for image in itertools.permutations(hs, len(gs)):
        m = dict(zip(gs, image))
        ok = True
        for a, b in itertools.combinations(gs, 2):
            ge = g.has_edge(a, b)
            he = h.has_edge(m[a], m[b])
            if ge and not he:
                ok = False
                break
            if induced and not ge and he:
                ok = False
                break
        if ok:
            return m
    return None


def random_fin_graph(rng, min_v=1, max_v=6, density=0.4, spread=2):
    n = rng.randrange(min_v, max_v + 1)
    vs = sorted(rng.sample(range(spread * max_v), n))
    es = [(a, b) for i, a in enumerate(vs) for b in vs[i + 1:]
          if rng.random() < density]
    return G.FinGraph(vs, es)


def random_certified_stream(rng, values=(0, 1), max_prefix=6):
    """A random EventuallyConstant or Periodic stream over the given values."""
    from streamgraphs.streams import EventuallyConstant, Periodic
    prefix = [rng.choice(values) for _ in range(rng.randrange(max_prefix))]
    if rng.random() < 0.5:
        return EventuallyConstant(prefix, rng.choice(values))
    period = [rng.choice(values) for _ in range(rng.randrange(1, 4))]
    return Periodic(prefix, period)
