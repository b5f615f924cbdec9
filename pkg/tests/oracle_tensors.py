"""Independent point-value oracle for wedge and contraction.

Forms are flattened to their component values at a rational point and the
operations are recomputed on dense antisymmetric index tuples: the wedge as a
signed sum over (p, q)-shuffles, the contraction by filling the first slot.
This shares no code path with the sparse implementations it cross-checks.
"""

from fractions import Fraction
from itertools import combinations


def form_values(form, point):
    """Nonzero component values of a form at a point, keyed by increasing tuple."""
    values = {key: poly.eval_at(point) for key, poly in form.components.items()}
    return {key: value for key, value in values.items() if value}


def tensor_entry(values, idx):
    """Antisymmetric lookup at an arbitrary (possibly unsorted) index tuple."""
    items = list(idx)
    sign = 1
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(items, items[1:]):
        if a == b:
            return Fraction(0)
    return sign * values.get(tuple(items), Fraction(0))


def wedge_at_point(avals, p, bvals, q, n):
    """Shuffle-sum wedge of point-evaluated forms: increasing keys only."""
    out = {}
    for key in combinations(range(n), p + q):
        total = Fraction(0)
        for apos in combinations(range(p + q), p):
            asel = tuple(key[i] for i in apos)
            bsel = tuple(key[i] for i in range(p + q) if i not in apos)
            swaps = sum(apos[j] - j for j in range(p))
            sign = -1 if swaps % 2 else 1
            total += sign * avals.get(asel, Fraction(0)) * bvals.get(bsel, Fraction(0))
        if total:
            out[key] = total
    return out


def contract_at_point(vvals, avals, p, n):
    """First-slot contraction of point-evaluated data: (i_v a)_J = sum_i v^i a_{iJ}."""
    out = {}
    for key in combinations(range(n), p - 1):
        total = Fraction(0)
        for i in range(n):
            if vvals[i]:
                total += vvals[i] * tensor_entry(avals, (i,) + key)
        if total:
            out[key] = total
    return out
