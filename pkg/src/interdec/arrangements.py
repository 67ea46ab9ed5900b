"""Poset-indexed subspace arrangements and their decomposition theory.

An Arrangement assigns to every poset element a a subspace F(a) of a fixed
ambient space, monotonically: a ≤ b implies F(a) ⊆ F(b).  For a subset B of
elements, F(B) denotes the sum of the member spaces.

The checkers decide, exactly:

  (C)   for every element a:            F(a) ∩ F(ǎ) ⊆ F(â*)
  (I)   for all lower sets ℬ, 𝒞:        F(ℬ) ∩ F(𝒞) ⊆ F(ℬ ∩ 𝒞)
  (sI)  for all families of lower sets: ∩ F(𝒜_j)  =  F(∩ 𝒜_j)

A decomposition is a family of subspaces {s_a} whose overall sum is direct
and which rebuilds every F(a) as the sum of s_b over b ≤ a.  On a finite
poset an arrangement is decomposable exactly when (C) holds, and then any
pre-decomposition (images of sections of F(a) ↠ F(a)/F(â*)) already works;
decompose() exploits this and certificate-checks the result.

Everything is exact; verdicts carry re-verifiable witnesses on failure.
"""

from __future__ import annotations

import random

from .errors import (
    DimensionMismatch,
    InputError,
    InternalContradiction,
    NotMonotone,
    NotMonotoneMap,
    VectorOutsideArrangement,
)
from .linalg import (
    IntEchelon,
    Subspace,
    complement_rows,
    complement_within,
    intersect,
    mix_rows,
    random_invertible,
    solve_exact,
    subspace_from_generators,
)
from .posets import (
    Poset,
    downset,
    enumerate_lower_sets,
    interval_elements,
    is_order_embedding,
)

DEFAULT_CAP = 4096


# ---------------------------------------------------------------------------
# reports and witnesses
# ---------------------------------------------------------------------------

class Witness:
    """A violating vector together with the two facts that convict it.

    location is the element (property C, decomposition checks) or the pair
    of lower-set label tuples (properties I and sI) where the violation
    happened; the vector belongs to lhs_space and stays outside rhs_space,
    and verify() re-checks both memberships from scratch.
    """

    __slots__ = ("location", "vector", "lhs_space", "rhs_space")

    def __init__(self, location, vector, lhs_space, rhs_space):
        self.location = location
        self.vector = tuple(vector)
        self.lhs_space = lhs_space
        self.rhs_space = rhs_space

    def verify(self):
        return self.lhs_space.contains_vector(
            self.vector
        ) and not self.rhs_space.contains_vector(self.vector)

    def __repr__(self):
        return f"Witness(at {self.location!r}, vector {self.vector})"


class CheckReport:
    """Outcome of one property check; verdict is false iff a witness exists."""

    __slots__ = ("property", "verdict", "witness", "work")

    def __init__(self, property, verdict, witness, work):
        if verdict == (witness is not None):
            raise InternalContradiction(
                "a check verdict must be false exactly when a witness exists"
            )
        self.property = property
        self.verdict = verdict
        self.witness = witness
        self.work = dict(work)

    def __repr__(self):
        return f"CheckReport({self.property}: {self.verdict}, work={self.work})"


class Decomposition:
    """Candidate or certified interaction components {s_a}."""

    __slots__ = ("components", "certified")

    def __init__(self, components, certified=False):
        self.components = dict(components)
        self.certified = certified

    def dims(self):
        return {lab: s.dim for lab, s in self.components.items()}

    def __repr__(self):
        state = "certified" if self.certified else "uncertified"
        return f"Decomposition({state}, dims {self.dims()})"


# ---------------------------------------------------------------------------
# the arrangement itself
# ---------------------------------------------------------------------------

class Arrangement:
    """Monotone map from a finite poset into the subspaces of F^d.

    Built through new_arrangement, which validates monotonicity; instances
    are immutable.  Sums over subsets of elements are memoized, keyed by
    the subset bitmask.
    """

    __slots__ = ("poset", "ambient_dim", "field", "spaces", "_eval_memo", "_dim_memo")

    def __init__(self, poset, ambient_dim, field, spaces):
        self.poset = poset
        self.ambient_dim = ambient_dim
        self.field = field
        self.spaces = dict(spaces)
        self._eval_memo = {}
        self._dim_memo = {}

    def space(self, label):
        sp = self.spaces.get(label)
        if sp is None:
            raise InputError(f"no subspace for element {label!r}")
        return sp

    def _member_rows(self, mask):
        rows = []
        for i, lab in enumerate(self.poset.labels):
            if mask >> i & 1:
                rows.extend(self.spaces[lab].exact_rows())
        return rows

    def eval_mask(self, mask):
        """Canonical sum of the member spaces of a bitmask subset."""
        hit = self._eval_memo.get(mask)
        if hit is not None:
            return hit
        gens = []
        for i, lab in enumerate(self.poset.labels):
            if mask >> i & 1:
                gens.extend(self.spaces[lab].basis)
        out = subspace_from_generators(self.ambient_dim, gens, self.field)
        self._eval_memo[mask] = out
        self._dim_memo[mask] = out.dim
        return out

    def dim_of_mask(self, mask):
        """dim of the sum over a bitmask subset, without canonicalizing."""
        hit = self._dim_memo.get(mask)
        if hit is not None:
            return hit
        acc = IntEchelon(self.field)
        for row in self._member_rows(mask):
            acc.insert(row)
        self._dim_memo[mask] = acc.rank
        return acc.rank

    def full_space_value(self):
        return self.eval_mask((1 << len(self.poset.labels)) - 1)

    def __repr__(self):
        return (
            f"Arrangement({len(self.poset.labels)} elements, "
            f"ambient {self.ambient_dim} over {self.field!r})"
        )


def new_arrangement(poset, ambient_dim, field, spaces):
    """Validated arrangement; spaces may be Subspace values or generator rows."""
    table = {}
    for lab in poset.labels:
        if lab not in spaces:
            raise InputError(f"no subspace given for element {lab!r}")
        val = spaces[lab]
        if not isinstance(val, Subspace):
            val = subspace_from_generators(ambient_dim, val, field)
        if val.ambient_dim != ambient_dim:
            raise DimensionMismatch(
                f"space at {lab!r} lives in dim {val.ambient_dim}, "
                f"arrangement ambient is {ambient_dim}"
            )
        if val.field != field:
            raise DimensionMismatch(
                f"space at {lab!r} is over {val.field!r}, arrangement is over {field!r}"
            )
        table[lab] = val
    for lab in spaces:
        if lab not in poset:
            raise InputError(f"subspace given for unknown element {lab!r}")
    report = check_monotonicity(poset, table)
    if not report.verdict:
        w = report.witness
        raise NotMonotone(w.location[0], w.location[1], w.vector)
    return Arrangement(poset, ambient_dim, field, table)


def check_monotonicity(poset, spaces):
    """Cover-pair containment scan; containment along covers is transitive."""
    n = len(poset.labels)
    pairs = 0
    ranks = 0
    for ib in range(n):
        down_b = poset._down[ib]
        for ia in range(n):
            if ia == ib or not down_b >> ia & 1:
                continue
            # a < b; covers only: nothing strictly between
            between = poset._up[ia] & down_b
            if between != (1 << ia | 1 << ib):
                continue
            pairs += 1
            a, b = poset.labels[ia], poset.labels[ib]
            small, big = spaces[a], spaces[b]
            acc = big.echelon()
            ranks += 1
            for row, exact in zip(small.basis, small.exact_rows()):
                if not acc.contains_row(exact):
                    witness = Witness((a, b), row, small, big)
                    return CheckReport(
                        "monotonicity",
                        False,
                        witness,
                        {"pairs_checked": pairs, "ranks_computed": ranks},
                    )
    return CheckReport(
        "monotonicity", True, None, {"pairs_checked": pairs, "ranks_computed": ranks}
    )


def eval_lower_set(arrangement, members):
    """Σ_{b in members} F(b), summing exactly the given members."""
    return arrangement.eval_mask(arrangement.poset._mask_of(members))


# ---------------------------------------------------------------------------
# property checkers
# ---------------------------------------------------------------------------

def check_condition_C(arrangement):
    """Per-element check F(a) ∩ F(ǎ) ⊆ F(â*).

    Since every b < a satisfies a ≰ b, F(â*) sits inside F(a) ∩ F(ǎ)
    already, so the containment holds exactly when the two dimensions
    agree; that needs three subset-sum ranks per element.
    """
    poset = arrangement.poset
    n = len(poset.labels)
    full = (1 << n) - 1
    pairs = 0
    ranks = 0
    for i, a in enumerate(poset.labels):
        pairs += 1
        bit = 1 << i
        cheek_mask = full & ~poset._up[i]
        strict_mask = poset._down[i] & ~bit
        dim_a = arrangement.spaces[a].dim
        dim_cheek = arrangement.dim_of_mask(cheek_mask)
        dim_join = arrangement.dim_of_mask(cheek_mask | bit)
        dim_strict = arrangement.dim_of_mask(strict_mask)
        ranks += 3
        if dim_a + dim_cheek - dim_join == dim_strict:
            continue
        meet = intersect(arrangement.spaces[a], arrangement.eval_mask(cheek_mask))
        below = arrangement.eval_mask(strict_mask)
        vector = _basis_vector_outside(meet, below)
        witness = Witness(a, vector, meet, below)
        return CheckReport(
            "C", False, witness, {"pairs_checked": pairs, "ranks_computed": ranks}
        )
    return CheckReport(
        "C", True, None, {"pairs_checked": pairs, "ranks_computed": ranks}
    )


def _basis_vector_outside(source, target):
    """First canonical basis vector of source that is not in target."""
    acc = target.echelon()
    for row, exact in zip(source.basis, source.exact_rows()):
        if not acc.contains_row(exact):
            return row
    raise InternalContradiction(
        "dimension count promised a violating vector but none was found"
    )


def _pairwise_lower_set_scan(arrangement, cap, property_name):
    """Shared engine for (I) and (sI).

    Both reduce to the same per-pair dimension identity: the sum over
    ℬ ∩ 𝒞 always sits inside F(ℬ) ∩ F(𝒞), so containment one way (I) and
    equality (sI) each hold exactly when
        dim F(ℬ) + dim F(𝒞) − dim F(ℬ ∪ 𝒞) = dim F(ℬ ∩ 𝒞).
    Larger families reduce to pairs: lower sets are closed under
    intersection, so the family identity follows by induction.
    """
    poset = arrangement.poset
    sets = enumerate_lower_sets(poset, cap)
    masks = [b.mask for b in sets]
    dims = {}
    ranks = 0
    for m in masks:
        dims[m] = arrangement.dim_of_mask(m)
        ranks += 1
    pairs = 0
    for i, mi in enumerate(masks):
        di = dims[mi]
        for mj in masks[i:]:
            pairs += 1
            meet = mi & mj
            join = mi | mj
            if di + dims[mj] - dims[join] == dims[meet]:
                continue
            lhs = intersect(arrangement.eval_mask(mi), arrangement.eval_mask(mj))
            rhs = arrangement.eval_mask(meet)
            vector = _basis_vector_outside(lhs, rhs)
            witness = Witness(
                (poset._labels_of(mi), poset._labels_of(mj)), vector, lhs, rhs
            )
            return CheckReport(
                property_name,
                False,
                witness,
                {"pairs_checked": pairs, "ranks_computed": ranks},
            )
    return CheckReport(
        property_name, True, None, {"pairs_checked": pairs, "ranks_computed": ranks}
    )


def check_intersection_bruteforce(arrangement, cap=DEFAULT_CAP):
    """F(ℬ) ∩ F(𝒞) ⊆ F(ℬ ∩ 𝒞) over every pair of lower sets."""
    return _pairwise_lower_set_scan(arrangement, cap, "I-bruteforce")


def check_strong_intersection(arrangement, cap=DEFAULT_CAP):
    """∩ F(𝒜_j) = F(∩ 𝒜_j) over families of lower sets, by pair reduction."""
    return _pairwise_lower_set_scan(arrangement, cap, "sI")


# ---------------------------------------------------------------------------
# decomposition
# ---------------------------------------------------------------------------

def pre_decompose(arrangement, seed=None):
    """Candidate components: a section image of F(a) ↠ F(a)/F(â*) per element.

    With seed None the deterministic greedy rule picks each component from
    F(a)'s canonical basis; an integer seed re-mixes that basis by a random
    invertible matrix first, yielding a different but equally valid section.
    """
    poset = arrangement.poset
    field = arrangement.field
    rng = random.Random(seed) if seed is not None else None
    components = {}
    for i, a in enumerate(poset.labels):
        strict_mask = poset._down[i] & ~(1 << i)
        below = arrangement.eval_mask(strict_mask)
        space = arrangement.spaces[a]
        if rng is None:
            components[a] = complement_within(below, space)
        else:
            mix = random_invertible(field, space.dim, rng)
            rows = mix_rows(mix, [list(r) for r in space.basis], field)
            kept = complement_rows(below, rows, field)
            components[a] = subspace_from_generators(
                arrangement.ambient_dim, kept, field
            )
    return Decomposition(components, certified=False)


def verify_decomposition(arrangement, decomposition):
    """Certificate check: global direct sum, and Σ_{b≤a} s_b = F(a) per element.

    Returns the report together with a copy of the decomposition whose
    certified flag records the verdict.
    """
    poset = arrangement.poset
    comps = decomposition.components
    for lab in poset.labels:
        if lab not in comps:
            raise InputError(f"decomposition misses element {lab!r}")
    ranks = 0
    pairs = 0

    # (i) the sum of all components is direct
    total = 0
    acc = IntEchelon(arrangement.field)
    for lab in poset.labels:
        comp = comps[lab]
        if comp.ambient_dim != arrangement.ambient_dim or comp.field != arrangement.field:
            raise DimensionMismatch(f"component at {lab!r} does not fit the arrangement")
        total += comp.dim
        for row in comp.exact_rows():
            acc.insert(row)
    ranks += 1
    if acc.rank != total:
        witness = _direct_sum_witness(arrangement, comps)
        report = CheckReport(
            "decomposition",
            False,
            witness,
            {"pairs_checked": pairs, "ranks_computed": ranks},
        )
        return report, Decomposition(comps, certified=False)

    # (ii) components rebuild every space along downsets
    for i, a in enumerate(poset.labels):
        pairs += 1
        gens = []
        down = poset._down[i]
        for j, b in enumerate(poset.labels):
            if down >> j & 1:
                gens.extend(comps[b].basis)
        rebuilt = subspace_from_generators(
            arrangement.ambient_dim, gens, arrangement.field
        )
        ranks += 1
        space = arrangement.spaces[a]
        if rebuilt == space:
            continue
        if not _contains_all(space, rebuilt):
            vector = _basis_vector_outside(rebuilt, space)
            witness = Witness(a, vector, rebuilt, space)
        else:
            vector = _basis_vector_outside(space, rebuilt)
            witness = Witness(a, vector, space, rebuilt)
        report = CheckReport(
            "decomposition",
            False,
            witness,
            {"pairs_checked": pairs, "ranks_computed": ranks},
        )
        return report, Decomposition(comps, certified=False)

    report = CheckReport(
        "decomposition", True, None, {"pairs_checked": pairs, "ranks_computed": ranks}
    )
    return report, Decomposition(comps, certified=True)


def _contains_all(big, small):
    acc = big.echelon()
    return all(acc.contains_row(r) for r in small.exact_rows())


def _direct_sum_witness(arrangement, comps):
    """Pinned-element witness: some component meets the sum of the others."""
    labels = arrangement.poset.labels
    for x in labels:
        gens = []
        for y in labels:
            if y != x:
                gens.extend(comps[y].basis)
        others = subspace_from_generators(
            arrangement.ambient_dim, gens, arrangement.field
        )
        meet = intersect(comps[x], others)
        if meet.dim:
            return Witness(
                x,
                meet.basis[0],
                meet,
                Subspace(arrangement.field, arrangement.ambient_dim, ()),
            )
    raise InternalContradiction(
        "rank deficit promised an overlapping component but none was found"
    )


def decompose(arrangement, seed=None):
    """Decomposition if one exists, else the witness refuting condition (C).

    On a finite poset decomposability is equivalent to (C), and any
    pre-decomposition of a (C)-arrangement is a decomposition, so a single
    synthesis pass must verify; a verification failure after (C) passed
    can only mean a bug and raises InternalContradiction.
    """
    report = check_condition_C(arrangement)
    if not report.verdict:
        return report.witness
    candidate = pre_decompose(arrangement, seed=seed)
    check, certified = verify_decomposition(arrangement, candidate)
    if not check.verdict:
        raise InternalContradiction(
            "condition (C) holds but a pre-decomposition failed verification"
        )
    return certified


def decomposition_of(arrangement, decomposition, vector):
    """The unique components {s_a(v)} with v = Σ s_a(v), s_a(v) ∈ s_a."""
    if not decomposition.certified:
        raise InputError("need a certified decomposition to split vectors")
    field = arrangement.field
    target = tuple(field.parse(x) for x in vector)
    if len(target) != arrangement.ambient_dim:
        raise DimensionMismatch(
            f"vector has length {len(target)}, ambient dim is {arrangement.ambient_dim}"
        )
    if not arrangement.full_space_value().contains_vector(target):
        raise VectorOutsideArrangement(
            "vector is outside the sum of the arrangement's spaces"
        )
    labels = arrangement.poset.labels
    columns = []
    spans = []
    for lab in labels:
        rows = decomposition.components[lab].basis
        spans.append((lab, len(rows)))
        columns.extend(rows)
    coeffs = solve_exact(columns, target, field)
    if coeffs is None:
        raise InternalContradiction(
            "vector inside the arrangement has no expansion in a certified decomposition"
        )
    out = {}
    at = 0
    zero = tuple(field.zero for _ in range(arrangement.ambient_dim))
    for lab, count in spans:
        if count == 0:
            out[lab] = zero
            continue
        part = list(zero)
        for k in range(count):
            c = coeffs[at + k]
            row = decomposition.components[lab].basis[k]
            part = [field.add(x, field.mul(c, y)) for x, y in zip(part, row)]
        out[lab] = tuple(part)
        at += count
    return out


# ---------------------------------------------------------------------------
# functorial operations
# ---------------------------------------------------------------------------

def restrict(arrangement, members):
    """Arrangement on the induced subposet, spaces copied."""
    induced = arrangement.poset.subposet(members).as_poset()
    spaces = {lab: arrangement.spaces[lab] for lab in induced.labels}
    return new_arrangement(induced, arrangement.ambient_dim, arrangement.field, spaces)


def interval_restrict(arrangement, a, b):
    """Arrangement on [a, b]; the bottom carries F(â) summed in the parent."""
    poset = arrangement.poset
    members = interval_elements(poset, a, b)
    induced = members.as_poset()
    spaces = {}
    for lab in induced.labels:
        if lab == a:
            spaces[lab] = eval_lower_set(arrangement, downset(poset, a))
        else:
            spaces[lab] = arrangement.spaces[lab]
    return new_arrangement(induced, arrangement.ambient_dim, arrangement.field, spaces)


def pushforward(mapping, arrangement, target_poset):
    """f_* F on the target poset: (f_*F)(b) = Σ over {a | f(a) ≤ b} of F(a).

    The map must be monotone.  For order-embeddings the defining property
    (f_*F)(f(a)) = F(a) is asserted after construction.
    """
    source = arrangement.poset
    images = {}
    for lab in source.labels:
        if lab not in mapping:
            raise NotMonotoneMap(f"map is not defined on element {lab!r}")
        images[lab] = mapping[lab]
        target_poset.index(images[lab])
    for a1 in source.labels:
        for a2 in source.labels:
            if source.leq(a1, a2) and not target_poset.leq(images[a1], images[a2]):
                raise NotMonotoneMap(
                    f"map does not preserve {a1!r} ≤ {a2!r}"
                )
    spaces = {}
    for b in target_poset.labels:
        mask = 0
        for i, a in enumerate(source.labels):
            if target_poset.leq(images[a], b):
                mask |= 1 << i
        spaces[b] = arrangement.eval_mask(mask)
    result = new_arrangement(
        target_poset, arrangement.ambient_dim, arrangement.field, spaces
    )
    if is_order_embedding(images, source, target_poset):
        for a in source.labels:
            assert result.spaces[images[a]] == arrangement.spaces[a], (
                "pushforward along an order-embedding must restrict back to F"
            )
    return result


def lower_set_label(labels):
    return "{" + ",".join(labels) + "}"


def extend_to_lower_sets(arrangement, cap=DEFAULT_CAP):
    """Arrangement on the lattice of all lower sets, ℬ ↦ F(ℬ)."""
    poset = arrangement.poset
    sets = enumerate_lower_sets(poset, cap)
    masks = [b.mask for b in sets]
    labels = [lower_set_label(poset._labels_of(m)) for m in masks]
    ups = []
    for i, mi in enumerate(masks):
        row = 0
        for j, mj in enumerate(masks):
            if mi & ~mj == 0:
                row |= 1 << j
        ups.append(row)
    lattice = Poset(labels, ups)
    spaces = {lab: arrangement.eval_mask(m) for lab, m in zip(labels, masks)}
    return new_arrangement(lattice, arrangement.ambient_dim, arrangement.field, spaces)
