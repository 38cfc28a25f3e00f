"""Z-graded modules, vectors, and homogeneous multilinear maps.

Everything is exact and sparse: a basis element is a pair ``(degree, index)``,
a word is a tuple of basis elements, and a map stores only the words with
nonzero image.  All Koszul signs are generated in `apply_block` /
`compose_product`; no other module writes sign formulas for tensor
evaluation.

Values are immutable after construction by convention; operations return
fresh objects.
"""

import itertools

from . import signs
from .fields import QQ


class StructureError(ValueError):
    """Shape violation: arity/degree mismatch, unknown basis element, ..."""


def word_degree(word):
    return sum(b[0] for b in word)


class GradedModule:
    """Finite-dimensional Z-graded module with an indexed basis per degree."""

    __slots__ = ("dims", "field")

    def __init__(self, dims, field=QQ):
        clean = {}
        for d, k in dims.items():
            d, k = int(d), int(k)
            if k < 0:
                raise StructureError("negative dimension %d in degree %d" % (k, d))
            if k:
                clean[d] = k
        self.dims = clean
        self.field = field

    def degrees(self):
        return sorted(self.dims)

    def dim(self, degree):
        return self.dims.get(degree, 0)

    @property
    def total_dim(self):
        return sum(self.dims.values())

    def basis(self):
        for d in sorted(self.dims):
            for i in range(self.dims[d]):
                yield (d, i)

    def has_basis(self, b):
        d, i = b
        return 0 <= i < self.dims.get(d, 0)

    def __eq__(self, other):
        return (isinstance(other, GradedModule)
                and self.dims == other.dims and self.field == other.field)

    def __hash__(self):
        return hash((tuple(sorted(self.dims.items())), self.field))

    def __repr__(self):
        return "GradedModule(%r)" % (self.dims,)


class Vector:
    """A sparse element of a graded module: basis element -> scalar."""

    __slots__ = ("module", "coords")

    def __init__(self, module, coords=()):
        clean = {}
        for b, c in dict(coords).items():
            if not module.has_basis(b):
                raise StructureError("unknown basis element %r" % (b,))
            if c:
                clean[b] = c
        self.module = module
        self.coords = clean

    def is_zero(self):
        return not self.coords

    def __add__(self, other):
        if other.module != self.module:
            raise StructureError("vectors in different modules")
        out = dict(self.coords)
        for b, c in other.coords.items():
            _acc(out, b, c)
        return Vector(self.module, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return Vector(self.module, {b: c * v for b, v in self.coords.items()})

    def __eq__(self, other):
        return (isinstance(other, Vector)
                and self.module == other.module and self.coords == other.coords)

    def __repr__(self):
        return "Vector(%r)" % (sorted(self.coords.items()),)


def _acc(table, key, value):
    cur = table.get(key)
    if cur is None:
        if value:
            table[key] = value
        return
    cur = cur + value
    if cur:
        table[key] = cur
    else:
        del table[key]


class MultiMap:
    """Homogeneous multilinear map V^{x n} -> W of fixed arity and degree.

    `table` maps input words (tuples of n source basis elements) to sparse
    output dicts {target basis element: scalar}; absent words are zero.
    Homogeneity -- (sum of input degrees) + degree == output degree -- is
    enforced on construction.
    """

    __slots__ = ("source", "target", "arity", "degree", "table")

    def __init__(self, source, target, arity, degree, table=()):
        if arity < 1:
            raise StructureError("arity must be >= 1")
        clean = {}
        for word, vec in dict(table).items():
            if len(word) != arity:
                raise StructureError("word %r has arity %d, expected %d"
                                     % (word, len(word), arity))
            out_degree = word_degree(word) + degree
            kept = {}
            for b, c in vec.items():
                if not c:
                    continue
                if not target.has_basis(b):
                    raise StructureError("unknown target basis element %r" % (b,))
                if b[0] != out_degree:
                    raise StructureError(
                        "inhomogeneous entry: %r -> %r under degree %d map"
                        % (word, b, degree))
                kept[b] = c
            for b in word:
                if not source.has_basis(b):
                    raise StructureError("unknown source basis element %r" % (b,))
            if kept:
                clean[word] = kept
        self.source = source
        self.target = target
        self.arity = arity
        self.degree = degree
        self.table = clean

    @classmethod
    def zero(cls, source, target, arity, degree):
        return cls(source, target, arity, degree, {})

    @classmethod
    def identity(cls, module):
        one = module.field.one
        return cls(module, module, 1, 0, {(b,): {b: one} for b in module.basis()})

    def is_zero(self):
        return not self.table

    def apply(self, word):
        """Image of a basis word as a sparse dict (copy)."""
        return dict(self.table.get(tuple(word), ()))

    def vector_at(self, word):
        return Vector(self.target, self.apply(word))

    def same_shape(self, other):
        return (self.source == other.source and self.target == other.target
                and self.arity == other.arity and self.degree == other.degree)

    def __add__(self, other):
        if not self.same_shape(other):
            raise StructureError("map shape mismatch")
        table = {w: dict(v) for w, v in self.table.items()}
        for w, vec in other.table.items():
            dst = table.setdefault(w, {})
            for b, c in vec.items():
                _acc(dst, b, c)
        return MultiMap(self.source, self.target, self.arity, self.degree, table)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        if not c:
            return MultiMap.zero(self.source, self.target, self.arity, self.degree)
        table = {w: {b: c * v for b, v in vec.items()}
                 for w, vec in self.table.items()}
        return MultiMap(self.source, self.target, self.arity, self.degree, table)

    def __eq__(self, other):
        return (isinstance(other, MultiMap) and self.same_shape(other)
                and self.table == other.table)

    def entry_count(self):
        return sum(len(vec) for vec in self.table.values())

    def sorted_entries(self):
        """Deterministic iteration: (word, [(basis, scalar)...]) sorted lex."""
        for word in sorted(self.table):
            yield word, sorted(self.table[word].items())

    def first_word(self):
        return min(self.table) if self.table else None

    def __repr__(self):
        return ("MultiMap(arity=%d, degree=%d, entries=%d)"
                % (self.arity, self.degree, self.entry_count()))


def koszul_sign(left_degrees, map_degree):
    """Sign (+-1) a map of degree `map_degree` acquires moving past
    homogeneous elements with the listed degrees."""
    return signs.sign_of(signs.koszul_exponent(map_degree, sum(left_degrees)))


def _split_word(word, arities):
    parts, at = [], 0
    for a in arities:
        parts.append(word[at:at + a])
        at += a
    return parts


def apply_block(maps, word):
    """Evaluate (f_1 x ... x f_k)(v_1 x ... x v_n) with Koszul signs.

    Returns a sparse dict {output word: scalar}; the output word collects one
    target basis element per block.  Raises on arity mismatch.
    """
    word = tuple(word)
    arities = [m.arity for m in maps]
    if sum(arities) != len(word):
        raise StructureError("apply_block: %d inputs for total arity %d"
                             % (len(word), sum(arities)))
    source = maps[0].source
    for m in maps:
        if m.source != source:
            raise StructureError("apply_block: blocks have different sources")
    parts = _split_word(word, arities)
    exponent = 0
    left = 0
    vecs = []
    for j, (m, part) in enumerate(zip(maps, parts)):
        if j:
            exponent += signs.koszul_exponent(m.degree, left)
        left += word_degree(part)
        vec = m.table.get(part)
        if not vec:
            return {}
        vecs.append(vec)
    base = signs.sign_of(exponent)
    out = {}
    for outs in itertools.product(*(v.items() for v in vecs)):
        coeff = base
        for _, c in outs:
            coeff = coeff * c
        _acc(out, tuple(b for b, _ in outs), coeff)
    return out


def tensor_table(maps):
    """Sparse table of f_1 x ... x f_k: {input word: {output word: scalar}}."""
    degrees = [m.degree for m in maps]
    entry_lists = [[(part, word_degree(part), list(vec.items()))
                    for part, vec in m.table.items()] for m in maps]
    table = {}
    for combo in itertools.product(*entry_lists):
        exponent = 0
        left = 0
        in_word = ()
        for j, (part, part_degree, _) in enumerate(combo):
            if j:
                exponent += signs.koszul_exponent(degrees[j], left)
            left += part_degree
            in_word += part
        negate = exponent % 2 == 1
        dst = table.setdefault(in_word, {})
        for outs in itertools.product(*(entries for _, _, entries in combo)):
            coeff = outs[0][1]
            for _, c in outs[1:]:
                coeff = coeff * c
            if negate:
                coeff = -coeff
            _acc(dst, tuple(b for b, _ in outs), coeff)
    return {w: v for w, v in table.items() if v}


def compose_product(outer, inners):
    """outer o (inner_1 x ... x inner_k), one inner per input slot of outer.

    The workhorse composite: plain composition (k = 1), insertions, and all
    the recursion terms are built through it, so every sign in the library
    comes from the single Koszul exponent above.
    """
    inners = list(inners)
    if len(inners) != outer.arity:
        raise StructureError("compose_product: %d blocks for arity %d"
                             % (len(inners), outer.arity))
    source = inners[0].source
    for m in inners:
        if m.source != source:
            raise StructureError("compose_product: mixed sources")
        if m.target != outer.source:
            raise StructureError("compose_product: block target != outer source")
    arity = sum(m.arity for m in inners)
    degree = outer.degree + sum(m.degree for m in inners)
    result = MultiMap.zero(source, outer.target, arity, degree)
    if outer.is_zero() or any(m.is_zero() for m in inners):
        return result
    table = {}
    inner_degrees = [m.degree for m in inners]
    for combo in itertools.product(*(m.table.items() for m in inners)):
        exponent = 0
        left = 0
        in_word = ()
        for j, (part, _) in enumerate(combo):
            if j:
                exponent += signs.koszul_exponent(inner_degrees[j], left)
            left += word_degree(part)
            in_word += part
        negate = exponent % 2 == 1
        dst = None
        for outs in itertools.product(*(vec.items() for _, vec in combo)):
            mid = tuple(b for b, _ in outs)
            final = outer.table.get(mid)
            if not final:
                continue
            coeff = outs[0][1]
            for _, c in outs[1:]:
                coeff = coeff * c
            if negate:
                coeff = -coeff
            if dst is None:
                dst = table.setdefault(in_word, {})
            for b, c2 in final.items():
                _acc(dst, b, coeff * c2)
    return MultiMap(source, outer.target, arity, degree, table)


def compose(outer, inner):
    """Plain composition outer o inner for an arity-1 outer."""
    return compose_product(outer, [inner])


def insert(outer, position, inner):
    """outer o (1^{x i-1} x inner x 1^{x k-i}) at 1-based `position`."""
    if not 1 <= position <= outer.arity:
        raise StructureError("insert position %d out of range 1..%d"
                             % (position, outer.arity))
    ident = MultiMap.identity(outer.source)
    blocks = [ident] * (position - 1) + [inner] + [ident] * (outer.arity - position)
    return compose_product(outer, blocks)


def tensor_power(m, n):
    """The list [m]*n, for readability at call sites building m^{x n}."""
    return [m] * n


class ChainComplex:
    """A graded module with a degree -1 endomorphism.  d^2 = 0 is *not*
    assumed here; checkers and consumers that need it verify it."""

    __slots__ = ("module", "d")

    def __init__(self, module, d):
        if d.source != module or d.target != module:
            raise StructureError("differential must be an endomorphism")
        if d.arity != 1 or d.degree != -1:
            raise StructureError("differential must have arity 1, degree -1")
        self.module = module
        self.d = d

    def d_squared(self):
        return compose(self.d, self.d)

    def __eq__(self, other):
        return (isinstance(other, ChainComplex)
                and self.module == other.module and self.d == other.d)

    def __repr__(self):
        return "ChainComplex(%r)" % (self.module,)
