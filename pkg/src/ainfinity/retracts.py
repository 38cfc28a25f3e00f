"""Deformation retracts onto homology by exact linear algebra.

The splitting V_i = B_i + H_i + C_i (image of d, chosen homology
representatives, chosen complement of the kernel) is fixed by
leftmost-pivot elimination on the lex-ordered basis, so retracts are
deterministic and packages reproduce bit-exactly.

The retract built here satisfies all four side conditions by construction:
f projects onto H along B + C, g includes H, and h inverts d from B into C
(with the sign required by  gf - 1 = d h + h d).
"""

from .graded import ChainComplex, GradedModule, MultiMap, StructureError, compose
from .kernels import DeformationRetract


def _rref(rows, width, field):
    """Reduced row echelon form with leftmost pivots.  Returns (rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(width):
        pivot = None
        for rr in range(r, len(rows)):
            if rows[rr][c]:
                pivot = rr
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = field.one / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for rr in range(len(rows)):
            if rr != r and rows[rr][c]:
                factor = rows[rr][c]
                rows[rr] = [a - factor * b for a, b in zip(rows[rr], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def _nullspace(rows, width, field):
    """Canonical nullspace basis (one vector per free column, ascending)."""
    rref, pivots = _rref(rows, width, field)
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        vec = [field.zero] * width
        vec[free] = field.one
        for r, p in enumerate(pivots):
            vec[p] = -rref[r][free]
        basis.append(vec)
    return basis


def _invert(cols, field):
    """Inverse of the square matrix whose columns are `cols`."""
    n = len(cols)
    aug = [[cols[c][r] for c in range(n)] + [field.one if k == r else field.zero
                                             for k in range(n)]
           for r in range(n)]
    reduced, pivots = _rref(aug, 2 * n, field)
    if pivots[:n] != list(range(n)):
        raise StructureError("singular basis-change matrix")
    return [row[n:] for row in reduced]


def _d_matrix(cx, degree):
    """Columns = images of the degree-`degree` basis under d, as coordinate
    rows over the degree-1-lower basis."""
    V = cx.module
    n_in, n_out = V.dim(degree), V.dim(degree - 1)
    zero = V.field.zero
    rows = [[zero] * n_in for _ in range(n_out)]
    for j in range(n_in):
        for (dd, i), c in cx.d.apply(((degree, j),)).items():
            rows[i][j] = c
    return rows


def homology(cx):
    """Per-degree homology dimensions, by exact rank computation."""
    if not cx.d_squared().is_zero():
        raise StructureError("differential does not square to zero")
    V = cx.module
    field = V.field
    dims = {}
    for deg in V.degrees():
        rank_out = len(_rref(_d_matrix(cx, deg), V.dim(deg), field)[1])
        rank_in = len(_rref(_d_matrix(cx, deg + 1), V.dim(deg + 1), field)[1])
        h = V.dim(deg) - rank_out - rank_in
        if h:
            dims[deg] = h
    return GradedModule(dims, field)


class Splitting:
    """Ordered basis change V_i = B_i + H_i + C_i per degree; B/H/C are
    lists of coordinate vectors over the degree-i basis."""

    def __init__(self, cx):
        if not cx.d_squared().is_zero():
            raise StructureError("differential does not square to zero")
        V = cx.module
        field = V.field
        self.complex = cx
        self.B, self.H, self.C = {}, {}, {}
        self.c_pivots = {}
        for deg in V.degrees():
            n = V.dim(deg)
            rows = _d_matrix(cx, deg)
            _, pivots = _rref(rows, n, field)
            self.c_pivots[deg] = pivots
            self.C[deg] = [_unit(n, c, field) for c in pivots]
            kernel = _nullspace(rows, n, field)
            # boundaries: images of the pivot columns one degree up
            up = self.c_pivots.get(deg + 1)
            if up is None:
                rows_up = _d_matrix(cx, deg + 1)
                _, up = _rref(rows_up, V.dim(deg + 1), field)
                self.c_pivots[deg + 1] = up
            bvecs = []
            for j in up:
                img = cx.d.apply(((deg + 1, j),))
                vec = [field.zero] * n
                for (dd, i), c in img.items():
                    vec[i] = c
                bvecs.append(vec)
            self.B[deg] = bvecs
            # homology representatives: kernel vectors extending the boundaries
            self.H[deg] = _extend_to(bvecs, kernel, n, field)

    def degrees(self):
        return self.complex.module.degrees()


def _unit(n, j, field):
    vec = [field.zero] * n
    vec[j] = field.one
    return vec


def _extend_to(base, candidates, width, field):
    rows = [list(v) for v in base]
    chosen = []
    rank = len(_rref(rows, width, field)[1])
    for cand in candidates:
        trial = rows + [list(cand)]
        r = len(_rref(trial, width, field)[1])
        if r > rank:
            rows = trial
            rank = r
            chosen.append(cand)
    return chosen


def harmonious_retract(cx):
    """Retract of (V, d) onto its homology satisfying fg = 1, fh = 0,
    hg = 0, hh = 0 in addition to gf - 1 = dh + hd; all five identities are
    re-verified exactly after construction."""
    V = cx.module
    field = V.field
    split = Splitting(cx)
    w_dims = {deg: len(split.H[deg]) for deg in V.degrees()}
    W = GradedModule(w_dims, field)
    dW = MultiMap.zero(W, W, 1, -1)

    f_table, g_table, h_table = {}, {}, {}
    for deg in V.degrees():
        n = V.dim(deg)
        B, H, C = split.B[deg], split.H[deg], split.C[deg]
        cols = B + H + C
        if len(cols) != n:
            raise StructureError("splitting does not span degree %d" % deg)
        inv = _invert(cols, field)
        nB, nH = len(B), len(H)
        for j in range(n):
            coords = [inv[r][j] for r in range(n)]
            beta, eta = coords[:nB], coords[nB:nB + nH]
            fvec = {(deg, hidx): c for hidx, c in enumerate(eta) if c}
            if fvec:
                f_table[((deg, j),)] = fvec
            hvec = {}
            for bidx, c in enumerate(beta):
                if c:
                    pivot = split.c_pivots[deg + 1][bidx]
                    key = (deg + 1, pivot)
                    hvec[key] = hvec.get(key, field.zero) - c
            hvec = {k: v for k, v in hvec.items() if v}
            if hvec:
                h_table[((deg, j),)] = hvec
        for hidx, vec in enumerate(H):
            gvec = {(deg, i): c for i, c in enumerate(vec) if c}
            if gvec:
                g_table[((deg, hidx),)] = gvec

    f = MultiMap(V, W, 1, 0, f_table)
    g = MultiMap(W, V, 1, 0, g_table)
    h = MultiMap(V, V, 1, 1, h_table)
    retract = DeformationRetract(cx, ChainComplex(W, dW), f, g, h)
    if not retract.is_harmonious:
        raise StructureError("constructed retract misses a side condition")
    fg = compose(f, g) - MultiMap.identity(W)
    if not fg.is_zero():
        raise StructureError("constructed retract has fg != 1")
    return retract


# ----------------------------------------------------------- desk instances

def instance_massey(field=None, truncation=5):
    """A DG algebra whose transferred triple product is nonzero.

    Basis x, y, z (degree 1), p, q (degree 2), u, w (degree 3), m, m'
    (degree 4); d(u) = p, d(w) = q; products x.y = p, y.z = q, u.z = m,
    x.w = m'.  Homology sits in degrees 1 and 4.
    """
    from .ainfty import AInfinity
    kwargs = {} if field is None else {"field": field}
    V = GradedModule({1: 3, 2: 2, 3: 2, 4: 2}, **kwargs)
    one = V.field.one
    x, y, z = (1, 0), (1, 1), (1, 2)
    p, q = (2, 0), (2, 1)
    u, w = (3, 0), (3, 1)
    m, m2 = (4, 0), (4, 1)
    d = MultiMap(V, V, 1, -1, {(u,): {p: one}, (w,): {q: one}})
    mu2 = MultiMap(V, V, 2, 0, {
        (x, y): {p: one},
        (y, z): {q: one},
        (u, z): {m: one},
        (x, w): {m2: one},
    })
    return AInfinity(V, d, {2: mu2}, truncation)


def instance_forms(field=None, truncation=5):
    """Truncated polynomial forms on a line: 1, t, t^2 (degree 0) and
    dt, t dt (degree -1); d(t) = dt, d(t^2) = 2 t dt; unital product
    truncated above t^2."""
    from .ainfty import AInfinity
    kwargs = {} if field is None else {"field": field}
    V = GradedModule({0: 3, -1: 2}, **kwargs)
    one = V.field.one
    unit, t, t2 = (0, 0), (0, 1), (0, 2)
    dt, tdt = (-1, 0), (-1, 1)
    d = MultiMap(V, V, 1, -1, {(t,): {dt: one}, (t2,): {tdt: 2 * one}})
    table = {}
    for a in [unit, t, t2, dt, tdt]:
        table[(unit, a)] = {a: one}
        if a != unit:
            table[(a, unit)] = {a: one}
    table[(t, t)] = {t2: one}
    table[(t, dt)] = {tdt: one}
    table[(dt, t)] = {tdt: one}
    mu2 = MultiMap(V, V, 2, 0, table)
    return AInfinity(V, d, {2: mu2}, truncation)
