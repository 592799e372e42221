"""Exact sparse Gaussian elimination with provenance tracking.

Vectors are dicts ``column -> scalar`` with no zero entries.  Columns are
compared with a caller-supplied key; the pivot of a row is its largest
column under that key.  Every stored row remembers how it was formed from
the tagged input vectors, so membership tests return coefficients and
dependent inputs yield explicit kernel relations.
"""

from __future__ import annotations

from typing import Callable, Dict, Hashable, List, Optional, Tuple

from .field import Field

Vector = Dict[Hashable, object]


def _axpy(target: Vector, c, source: Vector) -> None:
    """target += c * source, in place, dropping zeros."""
    for k, v in source.items():
        s = target.get(k)
        if s is None:
            target[k] = c * v
        else:
            s = s + c * v
            if s:
                target[k] = s
            else:
                del target[k]


class Echelon:
    """Incrementally built echelon basis of a span of sparse vectors."""

    def __init__(self, field: Field, key: Optional[Callable] = None):
        self.field = field
        self.key = key
        # pivot column -> (row vector with pivot coefficient 1, combination of tags)
        self.rows: Dict[Hashable, Tuple[Vector, Vector]] = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _lead(self, vec: Vector):
        if self.key is None:
            return max(vec)
        return max(vec, key=self.key)

    def reduce(self, vec: Vector, combo: Optional[Vector] = None) -> Tuple[Vector, Vector]:
        """Reduce ``vec`` until its leading column is not a pivot.

        Returns ``(residual, combo)`` with ``residual = vec - sum(combo[t] * input[t])``
        when ``combo`` starts empty.  The residual is zero iff ``vec`` lies in the span.
        """
        vec = dict(vec)
        combo = dict(combo) if combo else {}
        while vec:
            lead = self._lead(vec)
            row = self.rows.get(lead)
            if row is None:
                break
            c = vec[lead]
            _axpy(vec, -c, row[0])
            _axpy(combo, c, row[1])
        return vec, combo

    def add(self, vec: Vector, tag: Hashable) -> Tuple[bool, Vector]:
        """Insert a tagged vector.

        Returns ``(True, {})`` when the vector enlarges the span, otherwise
        ``(False, relation)`` where ``relation`` is a kernel vector over tags
        (``sum(relation[t] * input[t]) == 0``) with ``relation[tag] == 1``.
        """
        residual, combo = self.reduce(vec)
        if not residual:
            relation = {t: -c for t, c in combo.items()}
            relation[tag] = relation.get(tag, self.field.zero) + 1
            return False, {t: c for t, c in relation.items() if c}
        lead = self._lead(residual)
        inv = 1 / residual[lead]
        row = {k: inv * v for k, v in residual.items()}
        # residual = vec - sum(combo) so row = inv * (input[tag] - sum(combo))
        comb = {t: -inv * c for t, c in combo.items()}
        comb[tag] = comb.get(tag, self.field.zero) + inv
        self.rows[lead] = (row, {t: c for t, c in comb.items() if c})
        return True, {}

    def solve(self, vec: Vector) -> Optional[Vector]:
        """Coefficients over tags expressing ``vec``, or ``None`` if not in the span."""
        residual, combo = self.reduce(vec)
        if residual:
            return None
        return combo

    def contains(self, vec: Vector) -> bool:
        return not self.reduce(vec)[0]

    def pivots(self) -> List[Hashable]:
        return list(self.rows)


def rank_of(vectors, field: Field, key=None) -> int:
    ech = Echelon(field, key)
    for i, v in enumerate(vectors):
        ech.add(v, i)
    return ech.rank


def kernel(vectors, field: Field, key=None) -> List[Vector]:
    """A basis of linear relations among the given vectors, as index->coefficient maps."""
    ech = Echelon(field, key)
    relations = []
    for i, v in enumerate(vectors):
        ok, rel = ech.add(v, i)
        if not ok:
            relations.append(rel)
    return relations


def complement(span_vectors, candidates, field: Field, key=None) -> List[int]:
    """Indices of ``candidates`` that extend a basis of ``span_vectors``.

    Candidates are scanned in order, so earlier ones are preferred.
    """
    ech = Echelon(field, key)
    for i, v in enumerate(span_vectors):
        ech.add(v, ("span", i))
    chosen = []
    for i, v in enumerate(candidates):
        ok, _ = ech.add(v, ("cand", i))
        if ok:
            chosen.append(i)
    return chosen
