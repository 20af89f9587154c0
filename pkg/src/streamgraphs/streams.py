"""Certified lazy infinite sequences over the naturals, plus the pairing code.

A stream is an infinite sequence of naturals together with a finiteness
certificate that makes the tail behavior inspectable:

  * EventuallyConstant(prefix, tail) -- equals ``tail`` from ``len(prefix)`` on;
  * Periodic(prefix, period)         -- cycles through ``period`` after the prefix;
  * GeneratorBacked(step)            -- a total function n -> value, memoized.

The quantifier operations (exists_one, infinitely_often, limit, ...) answer
exactly on the first two kinds and refuse GeneratorBacked streams instead of
sampling; fueled approximations live in the decide module.
"""

import math
import threading

from .errors import NotConvergent, ParseError, UndecidableWithoutCertificate


# ---------------------------------------------------------------------------
# Cantor pairing
# ---------------------------------------------------------------------------

def pair(i, j):
    """Cantor pairing code (i+j)(i+j+1)/2 + j. Bijective, monotone in each arg."""
    s = i + j
    return s * (s + 1) // 2 + j


def unpair(n):
    """Inverse of pair, by closed form."""
    # Largest s with s(s+1)/2 <= n, via exact integer square root.
    s = (math.isqrt(8 * n + 1) - 1) // 2
    j = n - s * (s + 1) // 2
    return (s - j, j)


# ---------------------------------------------------------------------------
# Certified streams
# ---------------------------------------------------------------------------

class CertifiedStream:
    """Base class; use one of the three concrete kinds."""

    def eval(self, n):
        raise NotImplementedError

    def __getitem__(self, n):
        return self.eval(n)

    def prefix(self, n):
        """First n values as a list."""
        return [self.eval(i) for i in range(n)]


class EventuallyConstant(CertifiedStream):
    def __init__(self, prefix, tail):
        self._prefix = tuple(prefix)
        self.tail = tail

    @property
    def head(self):
        return self._prefix

    def eval(self, n):
        if n < len(self._prefix):
            return self._prefix[n]
        return self.tail

    def __repr__(self):
        return "EventuallyConstant(%r, %r)" % (list(self._prefix), self.tail)

    def __eq__(self, other):
        # Normalized comparison: same infinite sequence.
        if not isinstance(other, EventuallyConstant):
            return NotImplemented
        n = max(len(self._prefix), len(other._prefix))
        return self.tail == other.tail and self.prefix(n) == other.prefix(n)


class Periodic(CertifiedStream):
    def __init__(self, prefix, period):
        if not period:
            raise ParseError("period must be nonempty")
        self._prefix = tuple(prefix)
        self.period = tuple(period)

    @property
    def head(self):
        return self._prefix

    def eval(self, n):
        if n < len(self._prefix):
            return self._prefix[n]
        return self.period[(n - len(self._prefix)) % len(self.period)]

    def __repr__(self):
        return "Periodic(%r, %r)" % (list(self._prefix), list(self.period))


class GeneratorBacked(CertifiedStream):
    """Stream computed on demand by a total step function, memoized.

    eval(n) calls the step function only at index n (and only once per index),
    so forcing a prefix of length n never touches positions beyond n-1.
    """

    def __init__(self, step):
        self.step = step
        self._cache = {}
        self._lock = threading.Lock()

    def eval(self, n):
        hit = self._cache.get(n)
        if hit is not None:
            return hit
        if n in self._cache:
            return self._cache[n]
        v = self.step(n)
        with self._lock:
            self._cache.setdefault(n, v)
        return self._cache[n]

    def __repr__(self):
        return "GeneratorBacked(%r)" % (self.step,)


def eval_at(s, n):
    """Module-level form of CertifiedStream.eval, to match the op signature."""
    return s.eval(n)


# ---------------------------------------------------------------------------
# Decidable quantifiers
# ---------------------------------------------------------------------------

def _require_certificate(s):
    if isinstance(s, GeneratorBacked) or not isinstance(
            s, (EventuallyConstant, Periodic)):
        raise UndecidableWithoutCertificate(
            "quantifier needs an EventuallyConstant or Periodic certificate")


def exists_one(s, v):
    """True iff some position of s carries v. Decidable on certified streams."""
    _require_certificate(s)
    if v in s.head:
        return True
    if isinstance(s, EventuallyConstant):
        return s.tail == v
    return v in s.period


def infinitely_often(s, v):
    """True iff v occurs at infinitely many positions."""
    _require_certificate(s)
    if isinstance(s, EventuallyConstant):
        return s.tail == v
    return v in s.period


def eventually_always(s, v):
    """True iff all but finitely many positions carry v."""
    _require_certificate(s)
    if isinstance(s, EventuallyConstant):
        return s.tail == v
    return all(x == v for x in s.period)


def limit(s):
    """The eventual value of a converging certified stream."""
    if isinstance(s, EventuallyConstant):
        return s.tail
    if isinstance(s, Periodic):
        if len(set(s.period)) == 1:
            return s.period[0]
        raise NotConvergent("period oscillates: %r" % (list(s.period),))
    raise NotConvergent("no convergence certificate")


def first_index(s, v, start=0):
    """Least index >= start with s(index) = v, or None. Certified streams only."""
    _require_certificate(s)
    head = s.head
    for n in range(start, len(head)):
        if head[n] == v:
            return n
    base = max(start, len(head))
    if isinstance(s, EventuallyConstant):
        return base if s.tail == v else None
    for n in range(base, base + len(s.period)):
        if s.eval(n) == v:
            return n
    return None


def occurrences(s, v):
    """All positions carrying v, as a finite list; requires finitely many."""
    _require_certificate(s)
    if infinitely_often(s, v):
        raise UndecidableWithoutCertificate("infinitely many occurrences")
    return [n for n in range(len(s.head)) if s.eval(n) == v]


def is_binary(s):
    """Certified check that every value is 0 or 1."""
    _require_certificate(s)
    tail = [s.tail] if isinstance(s, EventuallyConstant) else list(s.period)
    return all(x in (0, 1) for x in list(s.head) + tail)


# ---------------------------------------------------------------------------
# Textual format:  ec:[1,0,1];0   per:[1];[0,1]
# ---------------------------------------------------------------------------

def _parse_nat_list(text):
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        raise ParseError("expected [..] list, got %r" % text)
    body = text[1:-1].strip()
    if not body:
        return []
    try:
        return [int(x) for x in body.split(",")]
    except ValueError as e:
        raise ParseError("bad nat list %r" % text) from e


def parse_stream(text):
    text = text.strip()
    if text.startswith("ec:"):
        rest = text[3:]
        if ";" not in rest:
            raise ParseError("ec stream needs prefix;tail")
        pfx, tail = rest.rsplit(";", 1)
        try:
            return EventuallyConstant(_parse_nat_list(pfx), int(tail))
        except ValueError as e:
            raise ParseError("bad tail in %r" % text) from e
    if text.startswith("per:"):
        rest = text[4:]
        if ";" not in rest:
            raise ParseError("per stream needs prefix;period")
        pfx, period = rest.rsplit(";", 1)
        return Periodic(_parse_nat_list(pfx), _parse_nat_list(period))
    raise ParseError("unknown stream spec %r" % text)


def format_stream(s):
    if isinstance(s, EventuallyConstant):
        return "ec:[%s];%d" % (",".join(map(str, s.head)), s.tail)
    if isinstance(s, Periodic):
        return "per:[%s];[%s]" % (",".join(map(str, s.head)),
                                  ",".join(map(str, s.period)))
    raise ParseError("generator-backed streams have no textual form")
