"""Reduction gadgets: stream transducers turning a source problem instance
into a graph (name) whose containment structure encodes the answer, each
paired with the decoder that extracts information back from a solution.
"""

from .decide import CertForest, CertTree
from .errors import (BadParam, HeightExceeded, MalformedInstance,
                     NoIllFoundedCertificate, NotConvergent, NotInB)
from .graphs import OMEGA, CountableGraph, DisjointUnion, TreeAsGraph, _mul
from .spaces import SpaceName
from .streams import (CertifiedStream, EventuallyConstant, GeneratorBacked,
                      Periodic, exists_one, first_index, infinitely_often,
                      limit, pair, unpair)
from .trees import coinfinite_wrap, nonmember_enumeration, string_decode


class GadgetOutput:
    """A gadget's product: the graph (name) plus whatever finite metadata the
    paired decoder needs."""

    def __init__(self, name, decoder_hint=None):
        self.name = name
        self.decoder_hint = decoder_hint


# ---------------------------------------------------------------------------
# Sigma-1: one frozen copy of G appears iff the stream ever hits 1
# ---------------------------------------------------------------------------

def sigma1_gadget(p, g):
    """Gr name denoting the empty graph if p is all zero, else a single copy
    of g placed at the index of p's first 1."""
    if not g.vertices:
        raise BadParam("pattern must be nonempty")
    labels = sorted(g.vertices)
    rank = {v: r for r, v in enumerate(labels)}
    n_verts = len(labels)

    def placed_bit(t, i, j):
        # copy of g on labels t .. t+n_verts-1
        if not (t <= i < t + n_verts and t <= j < t + n_verts):
            return 0
        if i == j:
            return 1
        return 1 if g.has_edge(labels[i - t], labels[j - t]) else 0

    if isinstance(p, (EventuallyConstant, Periodic)):
        if not exists_one(p, 1):
            return SpaceName("Gr", EventuallyConstant([], 0),
                             meta={"sigma1": (p, g)})
        t = first_index(p, 1)
        top = pair(t + n_verts - 1, t + n_verts - 1) + 1
        head = [placed_bit(t, *unpair(c)) for c in range(top)]
        return SpaceName("Gr", EventuallyConstant(head, 0),
                         meta={"sigma1": (p, g)})

    def bit(c):
        i, j = unpair(c)
        budget = min(i, j)
        for t in range(budget + 1):
            if p.eval(t) == 1:
                return placed_bit(t, i, j)
        return 0

    return SpaceName("Gr", GeneratorBacked(bit), meta={"sigma1": (p, g)})


# ---------------------------------------------------------------------------
# Sigma-2: K_n + omega copies of G, collapsing to K_omega on infinitely many 1s
# ---------------------------------------------------------------------------

class _Sigma2:
    """Stage machine: every stage spawns a fresh copy of g; a 1 in the driver
    makes every vertex allocated so far pairwise adjacent."""

    def __init__(self, p, g):
        self.p = p
        self.labels = sorted(g.vertices)
        self.g = g
        self.next_vertex = 0
        self.present = set()   # canonical (a, b) edges already emitted
        self.out = []          # wire-shifted emissions
        self.stages = 0

    def _emit_vertex(self, v):
        self.out.append(pair(v, v) + 1)

    def _emit_edge(self, a, b):
        a, b = min(a, b), max(a, b)
        if (a, b) in self.present:
            return
        self.present.add((a, b))
        self.out.append(pair(a, b) + 1)

    def run_stage(self):
        s = self.stages
        base = self.next_vertex
        self.next_vertex += len(self.labels)
        for r in range(len(self.labels)):
            self._emit_vertex(base + r)
        rank = {v: r for r, v in enumerate(self.labels)}
        for a, b in self.g.edges:
            self._emit_edge(base + rank[a], base + rank[b])
        if self.p.eval(s) == 1:
            for a in range(self.next_vertex):
                for b in range(a + 1, self.next_vertex):
                    self._emit_edge(a, b)
        self.stages += 1

    def value(self, n):
        while len(self.out) <= n:
            self.run_stage()
        return self.out[n]


def sigma2_gadget(p, g):
    """EGr name denoting K_n + omega-many copies of g when p has finitely
    many 1s (n = vertices spawned up to the last 1), and K_omega otherwise."""
    n = len(g.vertices)
    if not n:
        raise BadParam("pattern must be nonempty")
    if len(g.edges) == n * (n - 1) // 2:
        raise BadParam("pattern must not be complete")
    machine = _Sigma2(p, g)
    meta = {"sigma2": (p, g)}
    if isinstance(p, (EventuallyConstant, Periodic)):
        if not infinitely_often(p, 1):
            ones = [t for t in range(len(p.head)) if p.eval(t) == 1]
            last = ones[-1] if ones else -1
            probe = _Sigma2(p, g)
            for _ in range(last + 1):
                probe.run_stage()
            meta["sigma2_stable_fuel"] = max(len(probe.out), 1)
    return SpaceName("EGr", GeneratorBacked(machine.value), meta=meta)


# ---------------------------------------------------------------------------
# Forests: the quantifier-hierarchy lift
# ---------------------------------------------------------------------------

class ForestGraph(CountableGraph):
    """Concrete graph realization of a CertForest: nodes get consecutive ids
    in a deterministic fair expansion; edges are the parent links."""

    def __init__(self, forest):
        self.cert_forest = forest
        self._parent = []      # id -> parent id or None
        self._template = []    # id -> CertTree
        self._producers = []   # (kind, state...) generators yielding nodes
        self._cursor = 0
        self._producers.append(self._tree_list_producer(forest.trees, None))

    def _tree_list_producer(self, entries, parent):
        def gen():
            pending = [(sub, mult) for sub, mult in entries]
            while pending:
                progressed = False
                nxt = []
                for sub, mult in pending:
                    yield ("node", parent, sub)
                    progressed = True
                    if mult == OMEGA or mult > 1:
                        nxt.append((sub, mult if mult == OMEGA else mult - 1))
                pending = nxt
                if not progressed:
                    return
        return gen()

    def _child_producer(self, node_id):
        template = self._template[node_id]

        def gen():
            entries = list(template.children)
            stream = template.stream_children
            pending = [(sub, mult) for sub, mult in entries]
            idx = 0
            while pending or stream is not None:
                for sub, mult in list(pending):
                    yield ("node", node_id, sub)
                    pending.remove((sub, mult))
                    if mult == OMEGA:
                        pending.append((sub, OMEGA))
                    elif mult > 1:
                        pending.append((sub, mult - 1))
                if stream is not None:
                    p, shape = stream
                    if p.eval(idx) == 0:
                        yield ("node", node_id, shape)
                    else:
                        yield ("miss",)
                    idx += 1
        return gen()

    def _create(self, parent, template):
        node_id = len(self._parent)
        self._parent.append(parent)
        self._template.append(template)
        self._producers.append(self._child_producer(node_id))
        return node_id

    def _poll_once(self):
        """Advance the expansion by one producer step; True on progress."""
        alive = [p for p in self._producers if p is not None]
        if not alive:
            return False
        tried = 0
        while tried < len(self._producers):
            idx = self._cursor % len(self._producers)
            self._cursor += 1
            tried += 1
            prod = self._producers[idx]
            if prod is None:
                continue
            try:
                item = next(prod)
            except StopIteration:
                self._producers[idx] = None
                continue
            if item[0] == "node":
                self._create(item[1], item[2])
            return True
        return False

    def _ensure(self, node_id):
        while len(self._parent) <= node_id:
            if not self._poll_once():
                return False
        return True

    def vertex_count(self):
        total = 0
        for t, mult in self.cert_forest.trees:
            total += t.node_count() if mult != OMEGA else OMEGA
            if total == OMEGA:
                return OMEGA
        return total

    def has_vertex(self, v):
        count = self.vertex_count()
        if count != OMEGA:
            return v < count
        return self._ensure(v)

    def has_edge(self, a, b):
        if a == b:
            return False
        count = self.vertex_count()
        hi = max(a, b)
        if count != OMEGA and hi >= count:
            return False
        if not self._ensure(hi):
            return False
        return self._parent[a] == b or self._parent[b] == a

    def degree(self, v):
        if not self.has_vertex(v):
            raise BadParam("vertex %r absent" % v)
        self._ensure(v)
        template = self._template[v]
        total = 0 if self._parent[v] is None else 1
        for sub, mult in template.child_multiplicities():
            if mult == OMEGA:
                return OMEGA
            total += mult
        return total

    def iter_vertices(self):
        count = self.vertex_count()
        v = 0
        while count == OMEGA or v < count:
            yield v
            v += 1


def forests_lift(arg, k=None):
    """Quantifier lift for forests.

    Base case: arg is a binary stream p; the result is the single tree with
    one leaf under the root for every n with p(n) = 0.

    Step case: arg is a list whose entries are forest graphs or
    ("omega", forest graph); each part's trees are wired under a fresh root
    (with omega multiplicity for omega entries, which is what pushes the
    witness rank up a level) and the roots are disjoint-unioned.  With k
    given, parts taller than k are rejected.
    """
    if isinstance(arg, CertifiedStream):
        root = CertTree(stream_children=(arg, CertTree()))
        return ForestGraph(CertForest([(root, 1)]))
    trees = []
    for entry in arg:
        scale = 1
        if isinstance(entry, tuple):
            tag, part = entry
            if tag != "omega":
                raise BadParam("unknown part tag %r" % (tag,))
            scale = OMEGA
        else:
            part = entry
        forest = part.cert_forest
        if k is not None and forest.height() > k:
            raise HeightExceeded(
                "part of height %r exceeds bound %r" % (forest.height(), k))
        children = [(sub, _mul(scale, m)) for sub, m in forest.trees]
        trees.append((CertTree(children=children), 1))
    return ForestGraph(CertForest(trees))


def p_complete_generator(level, membership, seed=0):
    """Certified/structured test instances inside or outside the quantifier
    level sets P_1 (some 1), P_2 (infinitely many 1s), and the pair-coded
    alternating levels 3 and 4."""
    if level == 1:
        if membership:
            return EventuallyConstant([0] * (seed % 4) + [1], 0)
        return EventuallyConstant([0] * (seed % 4), 0)
    if level == 2:
        if membership:
            return Periodic([0] * (seed % 3), [1] + [0] * (seed % 2))
        return EventuallyConstant([1] * (seed % 4), 0)
    if level == 3:
        # (exists n0)(exists^inf n1) p(<n0, n1>) = 1
        row = seed % 3
        if membership:
            return GeneratorBacked(
                lambda c: 1 if unpair(c)[0] == row else 0)
        return GeneratorBacked(
            lambda c: 1 if unpair(c)[1] < unpair(c)[0] else 0)
    if level == 4:
        # (exists^inf n0)(exists^inf n1) p(<n0, n1>) = 1
        if membership:
            return GeneratorBacked(lambda c: 1)
        row = seed % 3
        return GeneratorBacked(
            lambda c: 1 if unpair(c)[0] == row else 0)
    raise BadParam("level must be 1..4")


# ---------------------------------------------------------------------------
# ACC: closed choice over co-singletons via ray search
# ---------------------------------------------------------------------------

class _AccMachine:
    """Stage machine of the growing-ray construction: a plain ray 1-2-3-...
    until a removal arrives, then a detour edge to vertex 0 and a fresh
    infinite tail from 0."""

    def __init__(self, stream):
        self.stream = stream
        self.out = []
        self.stages = 0
        self.removed = None
        self.removal_stage = None
        self.ended = False
        self.top = None        # last vertex of the initial segment
        self.tail_prev = None  # last emitted tail vertex (0 at switch)

    def _vertex(self, v):
        self.out.append(pair(v, v) + 1)

    def _edge(self, a, b):
        self.out.append(pair(min(a, b), max(a, b)) + 1)

    def run_stage(self):
        s = self.stages
        self.stages += 1
        if s == 0:
            self._vertex(1)
            self.top = 1
            return
        if self.ended:
            nxt = self.tail_prev + 1
            self._vertex(nxt)
            self._edge(self.tail_prev, nxt)
            self.tail_prev = nxt
            return
        val = self.stream.eval(s - 1)
        if val != 0:
            n = val - 1
            if self.removed is not None and self.removed != n:
                raise MalformedInstance("two distinct removals")
            if self.removed is None:
                self.removed = n
                self.removal_stage = s
                if n == 0:
                    # vertex 0 never joins the ray; any triple avoids 0
                    pass
                else:
                    if n > self.top:
                        for v in range(self.top + 1, n + 1):
                            self._vertex(v)
                            self._edge(v - 1, v)
                        self.top = n
                    self._vertex(0)
                    self._edge(self.removed, 0)
                    self.ended = True
                    self.tail_prev = self.top
                    # tail continues from 0 with fresh labels
                    nxt = self.top + 1
                    self._vertex(nxt)
                    self._edge(0, nxt)
                    self.tail_prev = nxt
                    return
        nxt = self.top + 1
        self._vertex(nxt)
        self._edge(self.top, nxt)
        self.top = nxt

    def value(self, n):
        while len(self.out) <= n:
            self.run_stage()
        return self.out[n]


def acc_gadget(complement_enum):
    """EGr name of the ACC ray graph; 0 in the input stream means "nothing
    removed yet", m+1 means "m removed"."""
    if isinstance(complement_enum, (EventuallyConstant, Periodic)):
        removals = {v - 1 for v in list(complement_enum.head)
                    + ([complement_enum.tail]
                       if isinstance(complement_enum, EventuallyConstant)
                       else list(complement_enum.period)) if v != 0}
        if len(removals) > 1:
            raise MalformedInstance("two distinct removals")
    machine = _AccMachine(complement_enum)
    name = SpaceName("EGr", GeneratorBacked(machine.value),
                     meta={"acc": machine})
    return GadgetOutput(name, decoder_hint=machine)


def acc_decode(solution, hint=None, fuel=4000):
    """Extract a member of the input set from a ray solution: scan for a
    consecutive-integer triple j, j+1, j+2 along the solution and answer the
    middle vertex j+1 (never the removed number, by construction)."""
    edges = set()
    for t in range(fuel):
        v = solution.stream.eval(t)
        if v == 0:
            continue
        i, j = unpair(v - 1)
        if i == j:
            continue
        edges.add((min(i, j), max(i, j)))
        for a, b in sorted(edges):
            # a >= 1 keeps the detour edge (1, 0) from faking a triple
            if a >= 1 and b == a + 1 and (a + 1, a + 2) in edges:
                return a + 1
    raise MalformedInstance("no consecutive triple in solution")


# ---------------------------------------------------------------------------
# lim2 <-> ray embedding
# ---------------------------------------------------------------------------

def _lim2_vertex_rule(q, v):
    if v == 0:
        return True
    if v % 2 == 0:
        return q.eval(v // 2 - 1) == 0
    return q.eval((v - 1) // 2) == 1


def _lim2_prev(q, v):
    """Previous present vertex on v's side (0 if none)."""
    step = 2
    w = v - step
    while w > 0:
        if _lim2_vertex_rule(q, w):
            return w
        w -= step
    return 0


def lim2_to_embR(q):
    """Gr name of a one-way ray: the even side extends when q says 0, the odd
    side when q says 1; the converging side is the infinite one."""

    def bit(c):
        i, j = unpair(c)
        if i == j:
            return 1 if _lim2_vertex_rule(q, i) else 0
        a, b = min(i, j), max(i, j)
        if not (_lim2_vertex_rule(q, a) and _lim2_vertex_rule(q, b)):
            return 0
        if a != 0 and a % 2 != b % 2:
            return 0
        return 1 if _lim2_prev(q, b) == a else 0

    return SpaceName("Gr", GeneratorBacked(bit), meta={"lim2": q})


def embR_decode(p):
    """Recover lim q from the first two vertices of a ray embedding into the
    lim2 gadget graph (parity table; the p(1)=0 corner is disambiguated by
    p(0)'s parity)."""
    a, b = p.eval(0), p.eval(1)
    if a < b:
        return 0 if b % 2 == 0 else 1
    if b == 0:
        return 1 if a % 2 == 0 else 0
    return 1 if b % 2 == 0 else 0


def embR_canonical_solution(q):
    """The ray embedding that starts at the finite side's far endpoint,
    walks down to 0 and climbs the infinite side (requires certified q)."""
    target = limit(q)
    if target not in (0, 1):
        raise NotConvergent("binary limit expected")
    finite_side = 1 - target
    horizon = len(q.head)
    fin = [v for v in range(1, 2 * horizon + 3)
           if v % 2 == (1 if finite_side == 1 else 0)
           and _lim2_vertex_rule(q, v)]
    descent = sorted(fin, reverse=True)

    def value(n):
        if n < len(descent):
            return descent[n]
        k = n - len(descent)   # 0 -> vertex 0, then climb the infinite side
        if k == 0:
            return 0
        count = 0
        v = 1 if target == 1 else 2
        while True:
            if _lim2_vertex_rule(q, v):
                count += 1
                if count == k:
                    return v
            v += 2

    return GeneratorBacked(value)


# ---------------------------------------------------------------------------
# Cycles with boxes: path search through an ill-founded tree
# ---------------------------------------------------------------------------

def _p_size(n):
    return 3 * n + 3


def _f_size(s):
    return 3 * s + 4


def _g_size(x):
    return 3 * x + 5


class CyclesBox(CountableGraph):
    """The cycles-with-boxes host: for every n, omega copies of the cycle
    P_n, each with a box of chained G-cycles; enumeration of tree
    non-members attaches F-cycles to free docking vertices so that a full
    disjoint copy of all cycles forces choosing a path through the tree."""

    def __init__(self, tree):
        self.tree = coinfinite_wrap(tree)
        self._nonmembers = nonmember_enumeration(self.tree)
        self._next = 0
        self._edges = set()
        self._components = {}   # key -> list of vertex ids (cycle order)
        self._docks = {}        # (n, i, k) -> vertex id
        self._dock_free = {}    # (n, i, k) -> bool
        self._stage_log = []
        self._stages = 0

    # -- construction ------------------------------------------------------

    def _fresh(self):
        v = self._next
        self._next += 1
        return v

    def _add_cycle(self, key, size, shared=None):
        shared = shared or {}
        ids = [shared.get(pos, None) for pos in range(size)]
        ids = [v if v is not None else self._fresh() for v in ids]
        for pos in range(size):
            a, b = ids[pos], ids[(pos + 1) % size]
            self._edges.add((min(a, b), max(a, b)))
        self._components[key] = ids
        return ids

    def _ensure_box(self, n, i, k):
        """Instantiate P_n^i's box chain down to index k."""
        pkey = ("P", n, i)
        if pkey not in self._components:
            p_ids = self._add_cycle(pkey, _p_size(n))
            x0 = pair(n, pair(i, 0))
            self._add_cycle(("G1", n, i, 0), _g_size(x0),
                            shared={0: p_ids[0]})
        j = 0
        while j <= k:
            gkey = ("G0", n, i, j)
            if gkey not in self._components:
                xj = pair(n, pair(i, j))
                g0 = self._add_cycle(gkey, _g_size(xj))
                self._docks[(n, i, j)] = g0[2]
                self._dock_free[(n, i, j)] = True
                xj1 = pair(n, pair(i, j + 1))
                self._add_cycle(("G1", n, i, j + 1), _g_size(xj1),
                                shared={0: g0[1]})
            j += 1

    def _attach_f(self, s, sigma):
        """Attach the cycle F_s to a free dock in box (n, sigma(n)) for each
        coordinate n (capped by the cycle's capacity)."""
        size = _f_size(s)
        coords = min(len(sigma), size // 2)
        shared = {}
        log = []
        for n in range(coords):
            i = sigma[n]
            k = 0
            while True:
                self._ensure_box(n, i, k)
                if self._dock_free[(n, i, k)]:
                    break
                k += 1
            self._dock_free[(n, i, k)] = False
            shared[2 * n] = self._docks[(n, i, k)]
            log.append((n, i, k))
        self._add_cycle(("F", s), size, shared=shared)
        self._stage_log.append((s, tuple(sigma), tuple(log)))

    def run_stage(self):
        t = self._stages
        self._stages += 1
        for n in range(t + 1):
            for i in range(t + 1):
                self._ensure_box(n, i, t)
        sigma = string_decode(next(self._nonmembers))
        self._attach_f(t, sigma)

    def run_until(self, stages):
        while self._stages < stages:
            self.run_stage()

    # -- graph interface ---------------------------------------------------

    def _advance_past(self, v):
        while self._next <= v:
            self.run_stage()

    def has_vertex(self, v):
        self._advance_past(v)
        return True

    def has_edge(self, a, b):
        if a == b:
            return False
        # later stages only add edges touching a fresh vertex, so once both
        # endpoints exist the answer is settled
        self._advance_past(max(a, b))
        return (min(a, b), max(a, b)) in self._edges

    def vertex_count(self):
        return OMEGA

    def iter_vertices(self):
        v = 0
        while True:
            yield v
            v += 1

    def component(self, key):
        return list(self._components[key])

    def stage_log(self):
        return list(self._stage_log)


def cycles_box(tree):
    return CyclesBox(tree)


def cycles_box_canonical_solution(box, path_digits, levels):
    """Vertex set of the proof's canonical solution down to the given number
    of levels: for each n, the cycle P_n^{q(n)} and its forced G0 chain."""
    box.run_until(levels)
    chosen = set()
    for n in range(levels):
        i = path_digits(n)
        box._ensure_box(n, i, levels)
        chosen.update(box.component(("P", n, i)))
        for k in range(levels):
            chosen.update(box.component(("G0", n, i, k)))
    return chosen


def cycles_box_decode(box, solution_vertices, levels):
    """Read off the path: q(n) = the i whose P_n^i lies inside the solution."""
    digits = []
    for n in range(levels):
        found = None
        i = 0
        while found is None:
            key = ("P", n, i)
            if key not in box._components:
                box._ensure_box(n, i, 0)
            if set(box.component(key)) <= solution_vertices:
                found = i
            i += 1
        digits.append(found)
    return digits


# ---------------------------------------------------------------------------
# EnumInf: recovering a characteristic function from any infinite subset
# ---------------------------------------------------------------------------

def _first_primes(k):
    out = []
    n = 2
    while len(out) < k:
        if all(n % q for q in out):
            out.append(n)
        n += 1
    return out


class CertifiedPiSet:
    """A set A with a computable witness level: lam(n) = 0 iff n in A, and
    otherwise 1 + the index of the co-class containing n."""

    def __init__(self, lam, level=1):
        if level not in (1, 2):
            raise BadParam("level must be 1 or 2")
        self.lam = lam
        self.level = level

    def chi(self, n):
        return 1 if self.lam(n) == 0 else 0


def enuminf_encode(a):
    """Stream enumerating B = { prod_{i<=k} p_i^(lam(i)+1) : k in N }.

    The +1 in the exponents keeps B infinite even when A = N (all lam = 0);
    recovery only needs the exponent pattern, which is preserved."""
    def element(k):
        primes = _first_primes(k + 1)
        prod = 1
        for i, p in enumerate(primes):
            prod *= p ** (a.lam(i) + 1)
        return prod
    return GeneratorBacked(element)


def enuminf_decode(enum, fuel=64):
    """Characteristic function of A from any enumeration of an infinite
    subset of B."""
    def exponents(value):
        out = []
        rest = value
        for p in _first_primes(64):
            if rest == 1:
                break
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            if e == 0:
                raise NotInB("gap in the prime support of %d" % value)
            out.append(e)
        if rest != 1:
            raise NotInB("%d has a prime factor outside the window" % value)
        if any(e < 1 for e in out):
            raise NotInB("exponent below 1")
        return out

    def chi(n):
        for t in range(fuel):
            value = enum.eval(t)
            exps = exponents(value)
            if len(exps) > n:
                return 1 if exps[n] - 1 == 0 else 0
        raise NotInB("enumeration never reached index %d" % n)

    return GeneratorBacked(chi)


# ---------------------------------------------------------------------------
# Sigma-1-1 choice: pick an ill-founded tree
# ---------------------------------------------------------------------------

def _has_path_certificate(tree):
    from .trees import DisjointTreeUnion, FullBinary, SinglePath
    if isinstance(tree, (SinglePath, FullBinary)):
        return True
    if isinstance(tree, DisjointTreeUnion):
        return any(_has_path_certificate(part) for part in tree.parts)
    return False


def sigma11_choice_gadget(trees):
    """Disjoint union of the trees viewed as graphs; any infinite-ray
    solution lives inside one ill-founded tree and its index is the answer."""
    if not trees:
        raise BadParam("need at least one tree")
    if not any(_has_path_certificate(t) for t in trees):
        raise NoIllFoundedCertificate("no certified ill-founded tree")
    return DisjointUnion([TreeAsGraph(t) for t in trees])


def choice_decode(vertex):
    """Project a solution vertex of the disjoint union to its tree index."""
    return unpair(vertex)[0]
