"""Free Lie algebras inside the free associative algebra.

Lie elements are recognised with the Dynkin criterion: a homogeneous ``p``
of degree ``n >= 1`` is a Lie element iff ``theta(p) == n * p`` where
``theta`` sends a word to its left-nested bracket.  Bases come from Lyndon
words with their standard bracketing.

Bracket trees are nested tuples: a leaf is an ``int`` (a generator index or
a template slot) and an internal node is a pair ``(left, right)``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from .exactalg import QQ, Field, NcPoly, check_common_field
from .exactalg.poly import default_name

Tree = Union[int, Tuple["Tree", "Tree"]]


class CharacteristicError(ValueError):
    """Lie computations here assume characteristic zero."""


class NotLieError(ValueError):
    """An input that must be a Lie element is not one."""


def require_char0(field: Field) -> None:
    if field.characteristic != 0:
        raise CharacteristicError(f"Lie operations need characteristic 0, got {field}")


def bracket(p: NcPoly, q: NcPoly) -> NcPoly:
    """Commutator ``pq - qp``."""
    p, q = _carrier(p, check=False), _carrier(q, check=False)
    require_char0(check_common_field([p, q]))
    return p * q - q * p


# -- Dynkin criterion --------------------------------------------------------

@lru_cache(maxsize=None)
def _theta_word(word: Tuple[int, ...]) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    # left-nested bracket [[..[w1,w2],..],wn] with integer coefficients
    if len(word) == 1:
        return ((word, 1),)
    inner = dict(_theta_word(word[:-1]))
    a = word[-1:]
    out: Dict[Tuple[int, ...], int] = {}
    for u, c in inner.items():
        out[u + a] = out.get(u + a, 0) + c
        out[a + u] = out.get(a + u, 0) - c
    return tuple((w, c) for w, c in out.items() if c)


def dynkin(p: NcPoly) -> NcPoly:
    """Apply the left-nested bracketing map word by word (constants map to 0)."""
    acc: Dict[Tuple[int, ...], object] = {}
    for w, c in p._terms.items():
        if not w:
            continue
        for u, k in _theta_word(w):
            acc[u] = acc.get(u, 0) + k * c
    return NcPoly(acc, p.field)


def is_lie_element(p) -> bool:
    """Whether ``p`` lies in the free Lie algebra (characteristic 0 only)."""
    if isinstance(p, LiePoly):
        return True
    require_char0(p.field)
    for d, comp in p.components().items():
        if d == 0:
            return False
        if dynkin(comp) != comp.scale(d):
            return False
    return True


# -- Lyndon words ------------------------------------------------------------

def lyndon_words(alphabet: Sequence[int], n: int) -> Iterator[Tuple[int, ...]]:
    """Lyndon words of length exactly ``n`` over the ordered ``alphabet`` (Duval)."""
    k = len(alphabet)
    if n <= 0 or k == 0:
        return
    w = [-1]
    while w:
        w[-1] += 1
        if len(w) == n:
            yield tuple(alphabet[i] for i in w)
        m = len(w)
        while len(w) < n:
            w.append(w[-m])
        while w and w[-1] == k - 1:
            w.pop()


def is_lyndon(word: Sequence) -> bool:
    word = tuple(word)
    return bool(word) and all(word < word[i:] for i in range(1, len(word)))


def standard_bracketing(word: Sequence[int]) -> Tree:
    """Standard bracketing: split off the longest proper Lyndon suffix."""
    word = tuple(word)
    if len(word) == 1:
        return word[0]
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return (standard_bracketing(word[:i]), standard_bracketing(word[i:]))
    raise ValueError(f"{word} is not a Lyndon word")


def tree_leaves(tree: Tree) -> List[int]:
    if isinstance(tree, int):
        return [tree]
    return tree_leaves(tree[0]) + tree_leaves(tree[1])


def evaluate_tree(tree: Tree, args: Sequence[NcPoly], cache: Optional[dict] = None) -> NcPoly:
    """Expand a bracket tree with leaf ``i`` replaced by ``args[i]``."""
    if cache is None:
        cache = {}
    hit = cache.get(tree)
    if hit is not None:
        return hit
    if isinstance(tree, int):
        out = args[tree]
    else:
        left = evaluate_tree(tree[0], args, cache)
        right = evaluate_tree(tree[1], args, cache)
        out = left * right - right * left
    cache[tree] = out
    return out


def format_tree(tree: Tree, leaf_name=None) -> str:
    if isinstance(tree, int):
        return leaf_name(tree) if leaf_name else default_name(tree)
    return f"[{format_tree(tree[0], leaf_name)},{format_tree(tree[1], leaf_name)}]"


def lyndon_basis(window: Iterable[int], d: int, field: Field = QQ) -> List[LiePoly]:
    """Standard-bracketed Lyndon words of length ``d``: a basis of the degree-``d`` Lie elements."""
    if d < 1:
        raise ValueError("degree must be at least 1")
    require_char0(field)
    alphabet = sorted(window)
    gens = {g: NcPoly.gen(g, field) for g in alphabet}
    cache: dict = {}
    out = []
    for w in lyndon_words(alphabet, d):
        tree = standard_bracketing(w)
        out.append(LiePoly(evaluate_tree(tree, gens, cache), LiePoly.BRACKETS, tree=tree))
    return out


# -- Lie elements ------------------------------------------------------------

class LiePoly:
    """A noncommutative polynomial certified to be a Lie element."""

    BRACKETS = "constructed-from-brackets"
    CRITERION = "criterion-checked"

    __slots__ = ("carrier", "certificate", "tree")

    def __init__(self, carrier: NcPoly, certificate: str = CRITERION, tree: Optional[Tree] = None,
                 check: bool = False):
        require_char0(carrier.field)
        if check and not is_lie_element(carrier):
            raise NotLieError(f"{carrier.format()} is not a Lie element")
        self.carrier = carrier
        self.certificate = certificate
        self.tree = tree

    @classmethod
    def from_poly(cls, p: NcPoly) -> LiePoly:
        return cls(p, cls.CRITERION, check=True)

    @classmethod
    def generator(cls, index: int, field: Field = QQ) -> LiePoly:
        return cls(NcPoly.gen(index, field), cls.BRACKETS, tree=index)

    @property
    def field(self) -> Field:
        return self.carrier.field

    def _cert(self, other: LiePoly) -> str:
        if self.certificate == other.certificate == self.BRACKETS:
            return self.BRACKETS
        return self.CRITERION

    def bracket(self, other: LiePoly) -> LiePoly:
        return LiePoly(bracket(self.carrier, other.carrier), self._cert(other))

    def __add__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        return LiePoly(self.carrier + other.carrier, self._cert(other))

    def __sub__(self, other):
        if not isinstance(other, LiePoly):
            return NotImplemented
        return LiePoly(self.carrier - other.carrier, self._cert(other))

    def __neg__(self):
        return LiePoly(-self.carrier, self.certificate)

    def scale(self, c) -> LiePoly:
        return LiePoly(self.carrier.scale(c), self.certificate)

    def __rmul__(self, c):
        return self.scale(c)

    def nu_top(self):
        return self.carrier.nu_top()

    def is_homogeneous(self) -> bool:
        return self.carrier.is_homogeneous()

    @property
    def is_zero(self) -> bool:
        return self.carrier.is_zero

    def top_component(self) -> LiePoly:
        return LiePoly(self.carrier.top_component(), self.certificate)

    def component(self, d: int) -> LiePoly:
        return LiePoly(self.carrier.component(d), self.certificate)

    def __eq__(self, other):
        if isinstance(other, LiePoly):
            return self.carrier == other.carrier
        if isinstance(other, NcPoly):
            return self.carrier == other
        return NotImplemented

    def __hash__(self):
        return hash(self.carrier)

    def format(self, names=None) -> str:
        if self.tree is not None:
            return format_tree(self.tree, (lambda i: names[i]) if names is not None else None)
        return self.carrier.format(names)

    def __repr__(self):
        return f"LiePoly({self.carrier.format()!r})"


def _carrier(x, check: bool = True) -> NcPoly:
    if isinstance(x, LiePoly):
        return x.carrier
    if check and not is_lie_element(x):
        raise NotLieError(f"{x.format()} is not a Lie element")
    return x


def as_lie(x) -> LiePoly:
    if isinstance(x, LiePoly):
        return x
    return LiePoly.from_poly(x)


# -- templates ---------------------------------------------------------------

def multidegree(tree: Tree, arity: int) -> Tuple[int, ...]:
    counts = [0] * arity
    for leaf in tree_leaves(tree):
        counts[leaf] += 1
    return tuple(counts)


def slot_name(i: int) -> str:
    return f"b{i + 1}"


class LieTemplate:
    """Formal Lie polynomial in slots ``b1..bn``, kept as bracket monomials with coefficients."""

    __slots__ = ("arity", "field", "_terms")

    def __init__(self, terms: Mapping[Tree, object], arity: int, field: Field = QQ):
        require_char0(field)
        self.arity = arity
        self.field = field
        clean = {}
        for tree, c in terms.items():
            if max(tree_leaves(tree)) >= arity:
                raise ValueError(f"slot index out of range for arity {arity}")
            c = field(c)
            if c:
                clean[tree] = c
        self._terms = clean

    @classmethod
    def zero(cls, arity: int, field: Field = QQ) -> LieTemplate:
        return cls({}, arity, field)

    @classmethod
    def slot(cls, i: int, arity: int, field: Field = QQ) -> LieTemplate:
        return cls({i: 1}, arity, field)

    @classmethod
    def monomial(cls, tree: Tree, arity: int, coeff=1, field: Field = QQ) -> LieTemplate:
        return cls({tree: coeff}, arity, field)

    @property
    def terms(self) -> Dict[Tree, object]:
        return dict(self._terms)

    @property
    def monomials(self) -> List[Tuple[Tree, object, Tuple[int, ...]]]:
        """``(tree, coefficient, multidegree)`` for every monomial."""
        return [(t, c, multidegree(t, self.arity)) for t, c in self._terms.items()]

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def max_length(self) -> int:
        return max((len(tree_leaves(t)) for t in self._terms), default=0)

    def __add__(self, other: LieTemplate) -> LieTemplate:
        if self.arity != other.arity:
            raise ValueError("template arities differ")
        out = dict(self._terms)
        for t, c in other._terms.items():
            out[t] = out.get(t, 0) + c
        return LieTemplate(out, self.arity, self.field)

    def scale(self, c) -> LieTemplate:
        return LieTemplate({t: c * v for t, v in self._terms.items()}, self.arity, self.field)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        if not isinstance(other, LieTemplate):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    def __hash__(self):
        return hash((self.arity, frozenset(self._terms.items())))

    def evaluate(self, args: Sequence, cache: Optional[dict] = None) -> NcPoly:
        if len(args) != self.arity:
            raise ValueError(f"template of arity {self.arity} got {len(args)} arguments")
        polys = [_carrier(a, check=False) for a in args]
        field = check_common_field(polys) if polys else self.field
        if cache is None:
            cache = {}
        out = NcPoly.zero(field)
        for t, c in self._terms.items():
            out = out + evaluate_tree(t, polys, cache).scale(c)
        return out

    def format(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for t, c in sorted(self._terms.items(), key=lambda tc: (len(tree_leaves(tc[0])), repr(tc[0]))):
            body = format_tree(t, slot_name)
            neg = c < 0
            mag = -c if neg else c
            term = body if mag == 1 else f"{mag}*{body}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append((" - " if neg else " + ") + term)
        return "".join(parts)

    def __repr__(self):
        return f"LieTemplate({self.format()!r})"


def eval_template(f: LieTemplate, args: Sequence) -> NcPoly:
    """Substitute ``args`` into the template and expand brackets as ``ab - ba``."""
    return f.evaluate(args)
