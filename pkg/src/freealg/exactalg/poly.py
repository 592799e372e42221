"""Words and noncommutative polynomials with exact coefficients.

A word is a tuple of non-negative generator indices; the empty tuple is the
unit monomial.  Words are ordered degree-then-lexicographically (deglex),
which fixes the canonical term order of every :class:`NcPoly`.
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple

from .field import QQ, Field, FieldMismatchError, GFElement, Scalar

Word = Tuple[int, ...]

NEG_INF = -math.inf
POS_INF = math.inf

_DEFAULT_NAMES = ("x", "y", "z")


def deglex_key(word: Word):
    return (len(word), word)


def words(window: Iterable[int], degree: int) -> Iterator[Word]:
    """All words of the given length over ``window``, in lexicographic order."""
    return itertools.product(sorted(window), repeat=degree)


def default_name(index: int) -> str:
    if index < len(_DEFAULT_NAMES):
        return _DEFAULT_NAMES[index]
    return f"x{index}"


def format_word(word: Word, names=None) -> str:
    if not word:
        return "1"
    parts = []
    for letter, run in itertools.groupby(word):
        n = len(list(run))
        name = names[letter] if names is not None else default_name(letter)
        parts.append(name if n == 1 else f"{name}^{n}")
    return "*".join(parts)


def format_scalar(c) -> str:
    return str(c)


class NcPoly:
    """Element of the free associative algebra k<F> over an exact field.

    ``terms`` maps words to nonzero scalars.  Instances are immutable; every
    operation returns a new polynomial.  ``window`` optionally declares the
    generator set the polynomial lives over; it defaults to the letters used.
    """

    __slots__ = ("field", "_terms", "_window", "_hash")

    def __init__(self, terms: Optional[Mapping[Word, object]] = None, field: Field = QQ,
                 window: Optional[Iterable[int]] = None):
        self.field = field
        clean: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                c = field(c)
                if c:
                    clean[tuple(w)] = c
        self._terms = clean
        self._window = frozenset(window) if window is not None else None
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Word, Scalar], field: Field, window=None) -> NcPoly:
        # terms must already be clean: field elements, no zeros
        p = object.__new__(cls)
        p.field = field
        p._terms = terms
        p._window = window
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, field: Field = QQ) -> NcPoly:
        return cls._raw({}, field)

    @classmethod
    def one(cls, field: Field = QQ) -> NcPoly:
        return cls.constant(1, field)

    @classmethod
    def constant(cls, c, field: Field = QQ) -> NcPoly:
        return cls({(): c}, field)

    @classmethod
    def gen(cls, index: int, field: Field = QQ) -> NcPoly:
        return cls._raw({(index,): field.one}, field)

    @classmethod
    def monomial(cls, word: Sequence[int], coeff=1, field: Field = QQ) -> NcPoly:
        return cls({tuple(word): coeff}, field)

    # -- basic access -------------------------------------------------------

    @property
    def terms(self) -> Mapping[Word, Scalar]:
        return dict(self._terms)

    def items(self):
        """Terms in canonical deglex order."""
        return sorted(self._terms.items(), key=lambda t: deglex_key(t[0]))

    def coeff(self, word: Sequence[int]) -> Scalar:
        return self._terms.get(tuple(word), self.field.zero)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def letters(self) -> frozenset:
        return frozenset(g for w in self._terms for g in w)

    @property
    def window(self) -> frozenset:
        """Declared generator window, or the letters actually used."""
        if self._window is not None:
            return self._window
        return self.letters

    @property
    def declared_window(self) -> Optional[frozenset]:
        return self._window

    def with_window(self, window: Iterable[int]) -> NcPoly:
        window = frozenset(window)
        if not self.letters <= window:
            raise ValueError("polynomial uses generators outside the declared window")
        return NcPoly._raw(self._terms, self.field, window)

    def _join_window(self, other: NcPoly):
        if self._window is None or other._window is None:
            return self._window if other._window is None else other._window
        return self._window | other._window

    # -- degrees ------------------------------------------------------------

    def nu_top(self):
        """Top degree; ``-inf`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(len(w) for w in self._terms)

    def nu_low(self):
        """Lowest degree (order); ``+inf`` for the zero polynomial."""
        if not self._terms:
            return POS_INF
        return min(len(w) for w in self._terms)

    @property
    def degree(self):
        return self.nu_top()

    def degrees(self) -> list:
        return sorted({len(w) for w in self._terms})

    def component(self, d: int) -> NcPoly:
        if d < 0:
            raise ValueError("degree must be non-negative")
        return NcPoly._raw({w: c for w, c in self._terms.items() if len(w) == d},
                           self.field, self._window)

    def components(self) -> Dict[int, NcPoly]:
        out: Dict[int, Dict[Word, Scalar]] = {}
        for w, c in self._terms.items():
            out.setdefault(len(w), {})[w] = c
        return {d: NcPoly._raw(t, self.field, self._window) for d, t in sorted(out.items())}

    def top_component(self) -> NcPoly:
        if not self._terms:
            return self
        return self.component(self.nu_top())

    def low_component(self) -> NcPoly:
        if not self._terms:
            return self
        return self.component(self.nu_low())

    def truncate(self, max_degree) -> NcPoly:
        """Drop every term of degree above ``max_degree``."""
        return NcPoly._raw({w: c for w, c in self._terms.items() if len(w) <= max_degree},
                           self.field, self._window)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: NcPoly):
        if other.field != self.field:
            raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other) -> Optional[NcPoly]:
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        if isinstance(other, (int, GFElement)) or hasattr(other, "denominator"):
            return NcPoly.constant(other, self.field)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w)
            if s is None:
                out[w] = c
            else:
                s = s + c
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcPoly._raw(out, self.field, self._join_window(other))

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({w: -c for w, c in self._terms.items()}, self.field, self._window)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> NcPoly:
        c = self.field(c)
        if not c:
            return NcPoly._raw({}, self.field, self._window)
        return NcPoly._raw({w: c * v for w, v in self._terms.items()}, self.field, self._window)

    def mul(self, other: NcPoly, max_degree=None) -> NcPoly:
        """Noncommutative product, optionally dropping terms above ``max_degree``."""
        self._check(other)
        out: Dict[Word, Scalar] = {}
        for u, a in self._terms.items():
            lu = len(u)
            for v, b in other._terms.items():
                if max_degree is not None and lu + len(v) > max_degree:
                    continue
                w = u + v
                s = out.get(w)
                out[w] = a * b if s is None else s + a * b
        out = {w: c for w, c in out.items() if c}
        return NcPoly._raw(out, self.field, self._join_window(other))

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            return self.mul(other)
        if isinstance(other, (int, GFElement)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, GFElement)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int) -> NcPoly:
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = NcPoly.one(self.field)
        for _ in range(n):
            out = out * self
        return out

    # -- word-level maps ----------------------------------------------------

    def map_words(self, fn) -> NcPoly:
        """Apply ``fn`` to each word; words mapped to ``None`` are dropped."""
        out: Dict[Word, Scalar] = {}
        for w, c in self._terms.items():
            w2 = fn(w)
            if w2 is None:
                continue
            s = out.get(w2)
            out[w2] = c if s is None else s + c
        return NcPoly._raw({w: c for w, c in out.items() if c}, self.field)

    def substitute(self, images: Mapping[int, NcPoly]) -> NcPoly:
        """Algebra homomorphism sending generator ``i`` to ``images[i]``.

        Generators without an image are left fixed.
        """
        out = NcPoly.zero(self.field)
        cache: Dict[int, NcPoly] = {}
        for w, c in self._terms.items():
            term = NcPoly.constant(c, self.field)
            for g in w:
                img = images.get(g)
                if img is None:
                    img = cache.setdefault(g, NcPoly.gen(g, self.field))
                term = term * img
            out = out + term
        return out

    # -- comparison / display ---------------------------------------------

    def __eq__(self, other):
        if isinstance(other, NcPoly):
            return self.field == other.field and self._terms == other._terms
        if isinstance(other, int) and other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self._terms.items())))
        return self._hash

    def format(self, names=None) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.items():
            neg = False
            if self.field.characteristic == 0 and c < 0:
                neg, c = True, -c
            if not w:
                body = format_scalar(c)
            elif c == 1:
                body = format_word(w, names)
            else:
                body = f"{format_scalar(c)}*{format_word(w, names)}"
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"NcPoly({self.format()!r}, {self.field!r})"


def check_common_field(polys: Iterable[NcPoly]) -> Field:
    field = None
    for p in polys:
        if field is None:
            field = p.field
        elif p.field != field:
            raise FieldMismatchError(f"field mismatch: {field} vs {p.field}")
    return field if field is not None else QQ


# Operation-level names used throughout the package.

def poly_add(p: NcPoly, q: NcPoly) -> NcPoly:
    return p + q


def poly_mul(p: NcPoly, q: NcPoly) -> NcPoly:
    return p * q


def component(p: NcPoly, d: int) -> NcPoly:
    return p.component(d)


def nu_top(p: NcPoly):
    return p.nu_top()


def nu_low(s):
    return s.nu_low()
