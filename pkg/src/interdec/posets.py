"""Finite posets and the order-theoretic subsets everything else is built on.

A poset is stored as its reflexive-transitive closure: one bitmask per
element for the elements above it and one for the elements below it.
Covers are never materialized; every construction here queries ≤ directly
and the intended posets are small.

For an element a the derived subsets are
    downset(a)        = {b | b ≤ a}
    strict_downset(a) = {b | b < a}
    cheek(a)          = {b | a ≰ b}
and for a subset B, lower_completion(B) is the smallest lower set
containing B.  Lower sets are the subsets equal to their own completion.
"""

from __future__ import annotations

from collections import deque

from .errors import (
    CapExceeded,
    CycleDetected,
    DuplicateLabel,
    NotComparable,
    UnknownElement,
    UnknownLabel,
)

LOWER_SET_CAP = 4096


class Poset:
    """Immutable finite poset over opaque string labels."""

    __slots__ = ("labels", "_index", "_up", "_down")

    def __init__(self, labels, up_masks):
        """Internal constructor: up_masks must already be a reflexive-
        transitive, antisymmetric closure.  Use build_poset for raw input."""
        self.labels = tuple(labels)
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        self._up = tuple(up_masks)
        n = len(self.labels)
        down = [0] * n
        for a in range(n):
            mask = self._up[a]
            while mask:
                low = mask & -mask
                down[low.bit_length() - 1] |= 1 << a
                mask ^= low
        self._down = tuple(down)

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self._index

    def __eq__(self, other):
        return (
            isinstance(other, Poset)
            and self.labels == other.labels
            and self._up == other._up
        )

    def __hash__(self):
        return hash((self.labels, self._up))

    def __repr__(self):
        return f"Poset({len(self.labels)} elements)"

    def index(self, label):
        try:
            return self._index[label]
        except KeyError:
            raise UnknownElement(f"no element {label!r}") from None

    def leq(self, a, b):
        """a ≤ b."""
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def lt(self, a, b):
        ia, ib = self.index(a), self.index(b)
        return ia != ib and bool(self._up[ia] >> ib & 1)

    # -- mask plumbing ------------------------------------------------------

    def _mask_of(self, members):
        if isinstance(members, Subposet):
            if members.parent is not self and members.parent != self:
                raise UnknownElement("subposet belongs to a different poset")
            return members.mask
        mask = 0
        for label in members:
            mask |= 1 << self.index(label)
        return mask

    def _labels_of(self, mask):
        return tuple(
            lab for i, lab in enumerate(self.labels) if mask >> i & 1
        )

    def subposet(self, members):
        return Subposet(self, self._mask_of(members))

    def full_subposet(self):
        return Subposet(self, (1 << len(self.labels)) - 1)

    def induced(self, members):
        """Standalone poset on a subset, with the inherited order."""
        mask = self._mask_of(members)
        kept = [i for i in range(len(self.labels)) if mask >> i & 1]
        pos = {i: j for j, i in enumerate(kept)}
        ups = []
        for i in kept:
            m = self._up[i] & mask
            packed = 0
            while m:
                low = m & -m
                packed |= 1 << pos[low.bit_length() - 1]
                m ^= low
            ups.append(packed)
        return Poset([self.labels[i] for i in kept], ups)


class Subposet:
    """A subset of a poset's elements, remembering its parent."""

    __slots__ = ("parent", "mask")

    def __init__(self, parent, mask):
        self.parent = parent
        self.mask = mask

    def __iter__(self):
        """Labels in parent element order."""
        return iter(self.parent._labels_of(self.mask))

    def __len__(self):
        return self.mask.bit_count()

    def __contains__(self, label):
        i = self.parent._index.get(label)
        return i is not None and bool(self.mask >> i & 1)

    def __eq__(self, other):
        return (
            isinstance(other, Subposet)
            and self.parent == other.parent
            and self.mask == other.mask
        )

    def __hash__(self):
        return hash((self.parent, self.mask))

    def __repr__(self):
        return f"Subposet({set(self) or '{}'})"

    @property
    def labels(self):
        return self.parent._labels_of(self.mask)

    def intersection(self, other):
        return Subposet(self.parent, self.mask & other.mask)

    def union(self, other):
        return Subposet(self.parent, self.mask | other.mask)

    def difference(self, other):
        return Subposet(self.parent, self.mask & ~other.mask)

    def issubset(self, other):
        return self.mask & ~other.mask == 0

    def as_poset(self):
        return self.parent.induced(self)


def build_poset(labels, relations):
    """Poset from labels and a list of (a, b) pairs meaning a ≤ b.

    The stored order is the reflexive-transitive closure of the pairs;
    a closure that violates antisymmetry is rejected.
    """
    labels = list(labels)
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(f"duplicate element {lab!r}")
        seen.add(lab)
    index = {lab: i for i, lab in enumerate(labels)}
    n = len(labels)
    up = [1 << i for i in range(n)]
    for pair in relations:
        a, b = pair
        if a not in index:
            raise UnknownLabel(f"relation mentions unknown element {a!r}")
        if b not in index:
            raise UnknownLabel(f"relation mentions unknown element {b!r}")
        up[index[a]] |= 1 << index[b]
    # Warshall closure on bitmask rows
    for k in range(n):
        bit = 1 << k
        row_k = up[k]
        for i in range(n):
            if up[i] & bit:
                up[i] |= row_k
    for i in range(n):
        for j in range(i + 1, n):
            if up[i] >> j & 1 and up[j] >> i & 1:
                raise CycleDetected(
                    f"elements {labels[i]!r} and {labels[j]!r} are mutually related"
                )
    return Poset(labels, up)


# ---------------------------------------------------------------------------
# the derived subsets
# ---------------------------------------------------------------------------

def downset(poset, a):
    """â = {b | b ≤ a}; always a lower set."""
    return Subposet(poset, poset._down[poset.index(a)])


def strict_downset(poset, a):
    """â* = {b | b < a}."""
    i = poset.index(a)
    return Subposet(poset, poset._down[i] & ~(1 << i))


def cheek(poset, a):
    """ǎ = {b | a ≰ b}; always a lower set."""
    i = poset.index(a)
    full = (1 << len(poset.labels)) - 1
    return Subposet(poset, full & ~poset._up[i])


def lower_completion(poset, members):
    """B̂ = {a | a ≤ b for some b in B}: the smallest lower set containing B."""
    mask = poset._mask_of(members)
    out = 0
    while mask:
        low = mask & -mask
        out |= poset._down[low.bit_length() - 1]
        mask ^= low
    return Subposet(poset, out)


def is_lower_set(poset, members):
    mask = poset._mask_of(members)
    return lower_completion(poset, Subposet(poset, mask)).mask == mask


def enumerate_lower_sets(poset, cap=LOWER_SET_CAP):
    """All lower sets of the poset, sorted by (size, element order).

    Raises CapExceeded when more than cap exist; the count can be
    exponential in the poset size, so brute-force callers stay desk-scale.
    """
    if cap < 1:
        raise CapExceeded("cap must allow at least the empty lower set")
    n = len(poset.labels)
    strict_down = [poset._down[i] & ~(1 << i) for i in range(n)]
    seen = {0}
    queue = deque([0])
    while queue:
        mask = queue.popleft()
        for i in range(n):
            bit = 1 << i
            if mask & bit:
                continue
            if strict_down[i] & ~mask:
                continue
            grown = mask | bit
            if grown not in seen:
                seen.add(grown)
                if len(seen) > cap:
                    raise CapExceeded(
                        f"poset has more than {cap} lower sets"
                    )
                queue.append(grown)
    order = sorted(seen, key=lambda m: (m.bit_count(), _index_key(m)))
    return [Subposet(poset, m) for m in order]


def _index_key(mask):
    key = []
    i = 0
    while mask:
        if mask & 1:
            key.append(i)
        mask >>= 1
        i += 1
    return tuple(key)


def maximal_elements(poset, members):
    """Elements of B with nothing of B strictly above them."""
    mask = poset._mask_of(members)
    out = 0
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        if poset._up[i] & mask == low:
            out |= low
        m ^= low
    return Subposet(poset, out)


def height(poset):
    """Cardinality of a longest chain; 0 for the empty poset."""
    n = len(poset.labels)
    if n == 0:
        return 0
    depth = [0] * n
    order = sorted(range(n), key=lambda i: poset._down[i].bit_count())
    for i in order:
        below = poset._down[i] & ~(1 << i)
        best = 0
        while below:
            low = below & -below
            j = low.bit_length() - 1
            if depth[j] > best:
                best = depth[j]
            below ^= low
        depth[i] = best + 1
    return max(depth)


def interval_elements(poset, a, b):
    """[a, b] = {c | a ≤ c ≤ b}; demands a ≤ b."""
    ia, ib = poset.index(a), poset.index(b)
    if not poset._up[ia] >> ib & 1:
        raise NotComparable(f"{a!r} is not below {b!r}")
    return Subposet(poset, poset._up[ia] & poset._down[ib])


def is_order_embedding(mapping, source, target):
    """True iff f(a1) ≤ f(a2) exactly when a1 ≤ a2 (forces injectivity)."""
    imgs = []
    for lab in source.labels:
        if lab not in mapping:
            raise UnknownElement(f"map is not defined on {lab!r}")
        imgs.append(target.index(mapping[lab]))
    n = len(source.labels)
    for i in range(n):
        for j in range(n):
            fwd = bool(source._up[i] >> j & 1)
            back = bool(target._up[imgs[i]] >> imgs[j] & 1)
            if fwd != back:
                return False
    return True
