"""The reduced tensor coalgebra: lifts, comultiplication, and both sides of
the componentwise/operator-level dictionary.

An operator T(V) -> T(W) truncated at homogeneity N is stored per block
(input homogeneity m, output homogeneity j) as a sparse table over tensor
words.  Tensor-word bases are ordered lexicographically by (degree, index)
tuples, which fixes serialization and report order bit-exactly.

Component families lift as

* coderivation:  blocks (n, j) = sum_i 1^{i-1} x d_{n-j+1} x 1^{j-i}
* morphism:      blocks (n, k) = sum over k-part compositions of
                 f_{r_1} x ... x f_{r_k}
* homotopy with flanks (E, G):  blocks (n, k) = sum over compositions and
                 positions of e_{r_1} x .. x h_{r_i} x .. x g_{r_k}

and componentwise relation checks mirror the operator-level identities
(square zero / intertwining / homotopy identity); the acceptance battery
asserts the two agree on every instance.
"""

from . import signs
from .combi import compositions, enum_A, enum_B
from .graded import (MultiMap, StructureError, compose, compose_product,
                     insert, tensor_table, word_degree)
from .reports import CheckReport

KIND_DEGREES = {"coderivation": -1, "morphism": 0, "homotopy": 1}


class ComponentFamily:
    """A truncated family {x_n: V^{x n} -> W} of uniform degree per kind.

    Homotopy families carry their flanking morphism families (left, right).
    """

    def __init__(self, kind, source, target, components, trunc,
                 left=None, right=None):
        if kind not in KIND_DEGREES:
            raise StructureError("unknown family kind %r" % (kind,))
        degree = KIND_DEGREES[kind]
        self.kind = kind
        self.source = source
        self.target = target
        self.trunc = trunc
        self.components = {}
        for n, m in components.items():
            n = int(n)
            if not 1 <= n <= trunc:
                raise StructureError("component arity %d outside 1..%d" % (n, trunc))
            if m.arity != n or m.degree != degree:
                raise StructureError("component %d must have arity %d, degree %d"
                                     % (n, n, degree))
            if m.source != source or m.target != target:
                raise StructureError("component %d has wrong modules" % n)
            if not m.is_zero():
                self.components[n] = m
        if kind == "homotopy":
            if left is None or right is None:
                raise StructureError("homotopy family needs morphism flanks")
            if left.kind != "morphism" or right.kind != "morphism":
                raise StructureError("flanks must be morphism families")
        self.left = left
        self.right = right

    @property
    def degree(self):
        return KIND_DEGREES[self.kind]

    def component(self, n):
        got = self.components.get(n)
        if got is None:
            return MultiMap.zero(self.source, self.target, n, self.degree)
        return got

    @classmethod
    def strict_morphism(cls, f, trunc):
        return cls("morphism", f.source, f.target, {1: f}, trunc)

    @classmethod
    def identity(cls, module, trunc):
        return cls.strict_morphism(MultiMap.identity(module), trunc)

    def __eq__(self, other):
        return (isinstance(other, ComponentFamily) and self.kind == other.kind
                and self.source == other.source and self.target == other.target
                and self.trunc == other.trunc and self.components == other.components)


def _merge(dst, src, factor=1):
    negate = factor == -1
    scale = factor != 1 and not negate
    for w, vec in src.items():
        acc = dst.setdefault(w, {})
        for out, c in vec.items():
            if negate:
                c = -c
            elif scale:
                c = factor * c
            cur = acc.get(out)
            cur = c if cur is None else cur + c
            if cur:
                acc[out] = cur
            elif out in acc:
                del acc[out]
        if not acc:
            del dst[w]


class CoalgebraOperator:
    """Blockwise linear map T(V) -> T(W), truncated at homogeneity `trunc`."""

    def __init__(self, source, target, degree, trunc, blocks=()):
        self.source = source
        self.target = target
        self.degree = degree
        self.trunc = trunc
        self.blocks = {}
        for (m, j), table in dict(blocks).items():
            if not (1 <= m <= trunc and 1 <= j <= trunc):
                raise StructureError("block (%d, %d) outside truncation %d"
                                     % (m, j, trunc))
            clean = {}
            for w, vec in table.items():
                kept = {out: c for out, c in vec.items() if c}
                for out in kept:
                    if word_degree(out) != word_degree(w) + degree:
                        raise StructureError("inhomogeneous operator entry")
                if kept:
                    clean[w] = kept
            if clean:
                self.blocks[(m, j)] = clean

    @classmethod
    def zero(cls, source, target, degree, trunc):
        return cls(source, target, degree, trunc, {})

    @classmethod
    def _raw(cls, source, target, degree, trunc, blocks):
        """Internal constructor for blocks already known homogeneous and
        zero-normalized (results of arithmetic on validated operators)."""
        op = cls.__new__(cls)
        op.source, op.target = source, target
        op.degree, op.trunc = degree, trunc
        op.blocks = blocks
        return op

    @classmethod
    def identity(cls, module, trunc):
        one = module.field.one
        blocks = {}
        words = [(b,) for b in module.basis()]
        for n in range(1, trunc + 1):
            blocks[(n, n)] = {w: {w: one} for w in words}
            if n < trunc:
                words = [w + (b,) for w in words for b in module.basis()]
        return cls._raw(module, module, 0, trunc, blocks)

    def block(self, m, j):
        return self.blocks.get((m, j), {})

    def apply_word(self, word):
        """Image of a word as {output word: scalar} across all blocks."""
        m = len(word)
        out = {}
        for j in range(1, self.trunc + 1):
            vec = self.blocks.get((m, j), {}).get(word)
            if vec:
                for w, c in vec.items():
                    out[w] = out.get(w, 0) + c
        return {w: c for w, c in out.items() if c}

    def is_zero(self):
        return not self.blocks

    def same_shape(self, other):
        return (self.source == other.source and self.target == other.target
                and self.degree == other.degree and self.trunc == other.trunc)

    def __add__(self, other):
        if not self.same_shape(other):
            raise StructureError("operator shape mismatch")
        blocks = {k: {w: dict(v) for w, v in t.items()} for k, t in self.blocks.items()}
        for k, t in other.blocks.items():
            _merge(blocks.setdefault(k, {}), t)
        blocks = {k: t for k, t in blocks.items() if t}
        return CoalgebraOperator._raw(self.source, self.target, self.degree,
                                      self.trunc, blocks)

    def __sub__(self, other):
        if not self.same_shape(other):
            raise StructureError("operator shape mismatch")
        blocks = {k: {w: dict(v) for w, v in t.items()} for k, t in self.blocks.items()}
        for k, t in other.blocks.items():
            _merge(blocks.setdefault(k, {}), t, factor=-1)
        blocks = {k: t for k, t in blocks.items() if t}
        return CoalgebraOperator._raw(self.source, self.target, self.degree,
                                      self.trunc, blocks)

    def scale(self, c):
        if not c:
            return CoalgebraOperator.zero(self.source, self.target,
                                          self.degree, self.trunc)
        blocks = {k: {w: {out: c * v for out, v in vec.items()}
                      for w, vec in t.items()}
                  for k, t in self.blocks.items()}
        return CoalgebraOperator._raw(self.source, self.target, self.degree,
                                      self.trunc, blocks)

    def compose(self, other):
        """self o other (apply `other` first)."""
        if other.target != self.source:
            raise StructureError("operators not composable")
        trunc = min(self.trunc, other.trunc)
        blocks = {}
        for (m, k), table in other.blocks.items():
            if m > trunc:
                continue
            for j in range(1, trunc + 1):
                mine = self.blocks.get((k, j))
                if not mine:
                    continue
                dst = blocks.setdefault((m, j), {})
                for w, vec in table.items():
                    for mid, c in vec.items():
                        final = mine.get(mid)
                        if not final:
                            continue
                        acc = dst.setdefault(w, {})
                        for out, c2 in final.items():
                            cur = acc.get(out)
                            cur = c * c2 if cur is None else cur + c * c2
                            if cur:
                                acc[out] = cur
                            elif out in acc:
                                del acc[out]
        blocks = {k: {w: v for w, v in t.items() if v} for k, t in blocks.items()}
        blocks = {k: t for k, t in blocks.items() if t}
        return CoalgebraOperator._raw(other.source, self.target,
                                      self.degree + other.degree, trunc, blocks)

    def __eq__(self, other):
        return (isinstance(other, CoalgebraOperator) and self.same_shape(other)
                and self.blocks == other.blocks)

    def entry_count(self):
        return sum(len(vec) for t in self.blocks.values() for vec in t.values())

    def first_word(self):
        words = [w for t in self.blocks.values() for w in t]
        return min(words) if words else None

    def restricted_to(self, m):
        """The operator's restriction to homogeneity-m inputs."""
        blocks = {k: t for k, t in self.blocks.items() if k[0] == m}
        return CoalgebraOperator._raw(self.source, self.target, self.degree,
                                      self.trunc, blocks)

    def __repr__(self):
        return ("CoalgebraOperator(degree=%d, trunc=%d, entries=%d)"
                % (self.degree, self.trunc, self.entry_count()))


def comultiply(word):
    """Deconcatenation splits of a tensor word; a single letter maps to 0."""
    word = tuple(word)
    return [(word[:i], word[i:]) for i in range(1, len(word))]


# ----------------------------------------------------------------- lifts

def lift_coderivation(family):
    if family.kind != "coderivation":
        raise StructureError("lift_coderivation needs a coderivation family")
    V, N = family.source, family.trunc
    blocks = {}
    for n in range(1, N + 1):
        for j in range(1, n + 1):
            comp = family.components.get(n - j + 1)
            if comp is None:
                continue
            ident = MultiMap.identity(V)
            acc = {}
            for i in range(1, j + 1):
                maps = [ident] * (i - 1) + [comp] + [ident] * (j - i)
                _merge(acc, tensor_table(maps))
            if acc:
                blocks[(n, j)] = acc
    return CoalgebraOperator._raw(V, V, -1, N, blocks)


def lift_morphism(family):
    if family.kind != "morphism":
        raise StructureError("lift_morphism needs a morphism family")
    V, W, N = family.source, family.target, family.trunc
    blocks = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            acc = {}
            for parts in compositions(n, k):
                maps = [family.components.get(r) for r in parts]
                if any(m is None for m in maps):
                    continue
                _merge(acc, tensor_table(maps))
            if acc:
                blocks[(n, k)] = acc
    return CoalgebraOperator._raw(V, W, 0, N, blocks)


def lift_homotopy(family):
    """(E, G)-colinear lift of a homotopy family with its morphism flanks."""
    if family.kind != "homotopy":
        raise StructureError("lift_homotopy needs a homotopy family")
    V, W, N = family.source, family.target, family.trunc
    left, right = family.left, family.right
    blocks = {}
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            acc = {}
            for parts in compositions(n, k):
                for i in range(1, k + 1):
                    h = family.components.get(parts[i - 1])
                    if h is None:
                        continue
                    maps = ([left.components.get(r) for r in parts[:i - 1]]
                            + [h]
                            + [right.components.get(r) for r in parts[i:]])
                    if any(m is None for m in maps):
                        continue
                    _merge(acc, tensor_table(maps))
            if acc:
                blocks[(n, k)] = acc
    return CoalgebraOperator._raw(V, W, 1, N, blocks)


def extract_components(op, kind, left=None, right=None):
    """Projection to homogeneity 1 per input homogeneity, as a family."""
    comps = {}
    for n in range(1, op.trunc + 1):
        table = op.block(n, 1)
        if not table:
            continue
        comps[n] = MultiMap(op.source, op.target, n, op.degree,
                            {w: {out[0]: c for out, c in vec.items()}
                             for w, vec in table.items()})
    return ComponentFamily(kind, op.source, op.target, comps, op.trunc,
                           left=left, right=right)


# --------------------------------------------- componentwise relation checks

def check_codifferential(family, n_max=None):
    """Residuals of the componentwise square-zero identity:
    d_1 d_n + sum_i d_n(1..d_1..1) + sum_{A(n)} d_k(1..d_l..1) = 0."""
    n_max = n_max or family.trunc
    report = CheckReport("codifferential")
    d1 = family.component(1)
    for n in range(1, n_max + 1):
        if n == 1:
            report.add(1, compose(d1, d1))
            continue
        d_n = family.component(n)
        res = compose(d1, d_n)
        for i in range(1, n + 1):
            res = res + insert(d_n, i, d1)
        for (k, l, i) in enum_A(n):
            res = res + insert(family.component(k), i, family.component(l))
        report.add(n, res)
    return report


def check_morphism_components(family, src_codiff, tgt_codiff, n_max=None):
    """Residuals of the componentwise intertwining identity:
    d^W_1 f_n + sum_{B(n)} d^W_k(f_{r_1} x..x f_{r_k})
      = f_1 d^V_n + sum_i f_n(1..d^V_1..1) + sum_{A(n)} f_k(1..d^V_l..1)."""
    n_max = n_max or family.trunc
    report = CheckReport("intertwining")
    for n in range(1, n_max + 1):
        f_n = family.component(n)
        if n == 1:
            report.add(1, compose(tgt_codiff.component(1), f_n)
                       - compose(f_n, src_codiff.component(1)))
            continue
        res = compose(tgt_codiff.component(1), f_n)
        for (k, parts) in enum_B(n):
            res = res + compose_product(tgt_codiff.component(k),
                                        [family.component(r) for r in parts])
        res = res - compose(family.component(1), src_codiff.component(n))
        for i in range(1, n + 1):
            res = res - insert(f_n, i, src_codiff.component(1))
        for (k, l, i) in enum_A(n):
            res = res - insert(family.component(k), i, src_codiff.component(l))
        report.add(n, res)
    return report


def check_homotopy_components(family, src_codiff, tgt_codiff, n_max=None):
    """Residuals of the componentwise homotopy identity:
    e_n - g_n = f_1 d^V_n + sum_i f_n(1..d^V_1..1) + sum_{A(n)} f_k(1..d^V_l..1)
      + d^W_1 f_n + sum_{B(n)} sum_i d^W_k(e_{r_1}..f_{r_i}..g_{r_k})."""
    n_max = n_max or family.trunc
    report = CheckReport("cohomotopy")
    left, right = family.left, family.right
    for n in range(1, n_max + 1):
        f_n = family.component(n)
        diff = left.component(n) - right.component(n)
        if n == 1:
            report.add(1, diff - compose(f_n, src_codiff.component(1))
                       - compose(tgt_codiff.component(1), f_n))
            continue
        res = diff - compose(family.component(1), src_codiff.component(n))
        for i in range(1, n + 1):
            res = res - insert(f_n, i, src_codiff.component(1))
        for (k, l, i) in enum_A(n):
            res = res - insert(family.component(k), i, src_codiff.component(l))
        res = res - compose(tgt_codiff.component(1), f_n)
        for (k, parts) in enum_B(n):
            for i in range(1, k + 1):
                maps = ([left.component(r) for r in parts[:i - 1]]
                        + [family.component(parts[i - 1])]
                        + [right.component(r) for r in parts[i:]])
                res = res - compose_product(tgt_codiff.component(k), maps)
        report.add(n, res)
    return report


# ------------------------------------------------- operator-level identities

def operator_square(op):
    return op.compose(op)


def operator_intertwining_residual(F, src_op, tgt_op):
    return tgt_op.compose(F) - F.compose(src_op)


def operator_homotopy_residual(H, E, G, src_op, tgt_op):
    return (E - G) - (H.compose(src_op) + tgt_op.compose(H))


# ------------------------------------------------- colinearity (co-Leibniz)

def _pair_acc(dst, key, c):
    cur = dst.get(key)
    cur = c if cur is None else cur + c
    if cur:
        dst[key] = cur
    elif key in dst:
        del dst[key]


def colinearity_residual(op, kind, left=None, right=None, n_max=None):
    """Residual of the comultiplication compatibility of `op` per input word.

    morphism:     C o F - (F x F) o C
    coderivation: C o d - (d x 1 + 1 x d) o C
    homotopy:     C o H - (E x H + H x G) o C   (flank operators E, G)

    Returns a CheckReport keyed by homogeneity; residual entries live over
    pairs of output words.
    """
    n_max = n_max or op.trunc
    report = CheckReport("colinearity")
    words = [(b,) for b in op.source.basis()]
    for n in range(1, n_max + 1):
        if n > 1:
            words = [w + (b,) for w in words for b in op.source.basis()]
        res_entries = {}
        for w in words:
            res = {}
            for out, c in op.apply_word(w).items():
                for pair in comultiply(out):
                    _pair_acc(res, pair, c)
            for (w1, w2) in comultiply(w):
                if kind == "morphism":
                    for (u1, c1) in op.apply_word(w1).items():
                        for (u2, c2) in op.apply_word(w2).items():
                            _pair_acc(res, (u1, u2), -(c1 * c2))
                elif kind == "coderivation":
                    for (u1, c1) in op.apply_word(w1).items():
                        _pair_acc(res, (u1, w2), -c1)
                    sign = signs.sign_of(signs.koszul_exponent(op.degree,
                                                               word_degree(w1)))
                    for (u2, c2) in op.apply_word(w2).items():
                        _pair_acc(res, (w1, u2), -(sign * c2))
                elif kind == "homotopy":
                    sign = signs.sign_of(signs.koszul_exponent(op.degree,
                                                               word_degree(w1)))
                    for (u1, c1) in left.apply_word(w1).items():
                        for (u2, c2) in op.apply_word(w2).items():
                            _pair_acc(res, (u1, u2), -(sign * c1 * c2))
                    for (u1, c1) in op.apply_word(w1).items():
                        for (u2, c2) in right.apply_word(w2).items():
                            _pair_acc(res, (u1, u2), -(c1 * c2))
                else:
                    raise StructureError("unknown kind %r" % (kind,))
            if res:
                res_entries[w] = res
        report.add(n, _PairResidual(res_entries))
    return report


class _PairResidual:
    def __init__(self, entries):
        self.entries = entries

    def is_zero(self):
        return not self.entries

    def entry_count(self):
        return sum(len(v) for v in self.entries.values())

    def first_word(self):
        return min(self.entries) if self.entries else None
