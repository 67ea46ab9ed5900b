"""Factor spaces of a finite product E = Π E_i and their interaction terms.

Functions E → F form the ambient space F^E.  For a subset a of the
variables, the factor subspace F(a) holds the functions that only depend
on the coordinates in a; these subspaces assemble into an arrangement over
the powerset of the variable set, ordered by inclusion.  That arrangement
is always decomposable, and the components s_a are the interaction terms:
s_∅ the constants, s_{i} the pure effects, higher subsets the genuine
joint interactions.  interaction_dimensions reports dim s_a per subset,
cross-checked against the quotient dimensions dim F(a) − dim F(â*).
"""

from __future__ import annotations

from itertools import combinations

from .arrangements import (
    Decomposition,
    decompose,
    new_arrangement,
)
from .errors import (
    DuplicateLabel,
    EmptyVariableDomain,
    InternalContradiction,
    SizeLimitExceeded,
    UnknownVariable,
)
from .linalg import QQ, quotient_dim, subspace_from_generators
from .posets import Poset

POINT_LIMIT = 4096


class ProductSpace:
    """The finite set E = Π E_i with a fixed point enumeration.

    Points are tuples of value indices, one per variable in declaration
    order, enumerated mixed-radix with the first variable most
    significant: for sizes (2,2) the order is 00, 01, 10, 11.
    """

    __slots__ = ("labels", "cardinalities", "total_points", "points")

    def __init__(self, labels, cardinalities, limit=POINT_LIMIT):
        labels = tuple(labels)
        cardinalities = tuple(cardinalities)
        if len(labels) != len(cardinalities):
            raise EmptyVariableDomain(
                "need exactly one cardinality per variable label"
            )
        if len(set(labels)) != len(labels):
            raise DuplicateLabel("variable labels must be distinct")
        total = 1
        for lab, card in zip(labels, cardinalities):
            if card < 1:
                raise EmptyVariableDomain(
                    f"variable {lab!r} has empty domain (cardinality {card})"
                )
            total *= card
        if total > limit:
            raise SizeLimitExceeded(
                f"product space has {total} points, limit is {limit}"
            )
        self.labels = labels
        self.cardinalities = cardinalities
        self.total_points = total
        self.points = tuple(_mixed_radix(cardinalities))

    def variable_index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownVariable(f"no variable {label!r}") from None

    def __repr__(self):
        sizes = "x".join(str(c) for c in self.cardinalities) or "1"
        return f"ProductSpace({sizes}, {self.total_points} points)"


def _mixed_radix(cardinalities):
    if not cardinalities:
        yield ()
        return
    head, rest = cardinalities[0], cardinalities[1:]
    for v in range(head):
        for tail in _mixed_radix(rest):
            yield (v,) + tail


def build_product_space(labels, cardinalities, limit=POINT_LIMIT):
    return ProductSpace(labels, cardinalities, limit)


def factor_subspace(product, variables, field=QQ):
    """Functions on E depending only on the given variables.

    Spanned by the indicator functions of the cylinder sets {x | x_a = y},
    one per joint value y of the chosen variables; the cylinders partition
    E, so the indicators are independent and dim = Π_{i in a} |E_i|.
    """
    idxs = sorted(product.variable_index(v) for v in set(variables))
    one, zero = field.one, field.zero
    rows = {}
    for col, point in enumerate(product.points):
        key = tuple(point[i] for i in idxs)
        row = rows.get(key)
        if row is None:
            row = [zero] * product.total_points
            rows[key] = row
        row[col] = one
    gens = [rows[key] for key in sorted(rows)]
    return subspace_from_generators(product.total_points, gens, field)


class FactorArrangement:
    """The factor subspaces indexed by the powerset of the variables."""

    __slots__ = ("product", "arrangement")

    def __init__(self, product, arrangement):
        self.product = product
        self.arrangement = arrangement

    def __repr__(self):
        return f"FactorArrangement({self.product!r})"


def subset_label(members):
    return "{" + ",".join(sorted(members)) + "}"


def _powerset_poset(labels, cap):
    if 2 ** len(labels) > cap:
        raise SizeLimitExceeded(
            f"powerset has {2 ** len(labels)} subsets, cap is {cap}"
        )
    subsets = []
    for size in range(len(labels) + 1):
        subsets.extend(combinations(sorted(labels), size))
    names = [subset_label(c) for c in subsets]
    sets = [frozenset(c) for c in subsets]
    ups = []
    for si in sets:
        row = 0
        for j, sj in enumerate(sets):
            if si <= sj:
                row |= 1 << j
        ups.append(row)
    return Poset(names, ups), subsets


def build_factor_arrangement(product, field=QQ, cap=POINT_LIMIT):
    """Arrangement a ↦ F(a) over the inclusion-ordered powerset.

    Monotonicity (a ⊆ b means F(a) ⊆ F(b)) is certified by construction
    validation, not assumed.
    """
    poset, subsets = _powerset_poset(product.labels, cap)
    spaces = {
        name: factor_subspace(product, members, field)
        for name, members in zip(poset.labels, subsets)
    }
    arrangement = new_arrangement(poset, product.total_points, field, spaces)
    return FactorArrangement(product, arrangement)


def interaction_dimensions(factor_arrangement):
    """dim s_a per subset of variables, from an actual decomposition.

    The decomposition must exist for factor arrangements; the resulting
    dimensions are cross-checked against the independent quotient
    computation dim F(a) − dim F(â*), and any disagreement (or a failed
    decomposition) is a bug, not a data condition.
    """
    arr = factor_arrangement.arrangement
    out = decompose(arr)
    if not isinstance(out, Decomposition):
        raise InternalContradiction(
            "a factor arrangement failed to decompose; its witness was "
            f"{out!r}"
        )
    poset = arr.poset
    dims = {}
    for i, name in enumerate(poset.labels):
        strict_mask = poset._down[i] & ~(1 << i)
        oracle = quotient_dim(arr.spaces[name], arr.eval_mask(strict_mask))
        got = out.components[name].dim
        if got != oracle:
            raise InternalContradiction(
                f"component dimension {got} at {name} disagrees with the "
                f"quotient dimension {oracle}"
            )
        dims[name] = got
    return dims
