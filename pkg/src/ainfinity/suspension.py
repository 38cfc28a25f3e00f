"""The (de)suspension dictionary.

Degrees shift by +1; basis identity is preserved.  The shift isomorphisms
s (degree +1) and w (degree -1) are ordinary degree +-1 identity-on-basis
maps, so every suspension sign is produced by the block evaluator -- there
are no hand-written sign tables here.  The one global scalar, by which an
n-fold suspension fails to invert an n-fold desuspension, is
(-1)^(n(n-1)/2); `shift_scalar` computes it from the maps themselves and the
desuspension conversions undo it via `signs.shift_exponent`.

Structure maps convert by d_n = s o mu_n o w^{x n}; in the shifted
convention every structure map has degree -1, morphism components degree 0,
homotopy components degree +1, and the unsuspended sign bookkeeping
collapses.  All transfer computation runs on the shifted side; the
unsuspended formulas remain as an independently implemented cross-check.
"""

from . import signs
from .ainfty import AInfinity, AInftyHomotopy, AInftyMorphism
from .coalgebra import ComponentFamily
from .graded import GradedModule, MultiMap, StructureError, apply_block, compose_product


def suspend_module(V):
    return GradedModule({d + 1: k for d, k in V.dims.items()}, V.field)


def desuspend_module(sV):
    return GradedModule({d - 1: k for d, k in sV.dims.items()}, sV.field)


def shift_up_map(V):
    """s: V -> sV, basis (d, i) -> (d+1, i), degree +1."""
    one = V.field.one
    return MultiMap(V, suspend_module(V), 1, 1,
                    {((d, i),): {(d + 1, i): one} for (d, i) in V.basis()})


def shift_down_map(V):
    """w: sV -> V, basis (d, i) -> (d-1, i), degree -1, where sV = suspend(V)."""
    sV = suspend_module(V)
    one = V.field.one
    return MultiMap(sV, V, 1, -1,
                    {((d, i),): {(d - 1, i): one} for (d, i) in sV.basis()})


def shift_scalar(V, n):
    """The scalar c_n with s^{x n} o w^{x n} = c_n * identity on (sV)^{x n},
    computed through the block evaluator (no closed formula used)."""
    if V.total_dim == 0:
        return 1
    s, w = shift_up_map(V), shift_down_map(V)
    sV = suspend_module(V)
    word = tuple([next(iter(sV.basis()))] * n)
    mid = apply_block([w] * n, word)
    out = {}
    for m, c in mid.items():
        for m2, c2 in apply_block([s] * n, m).items():
            out[m2] = out.get(m2, 0) + c * c2
    out = {k: v for k, v in out.items() if v}
    if list(out) != [word]:
        raise StructureError("shift composite is not diagonal")
    return out[word]


def suspend_components(comps, V, W):
    """x_n -> s_W o x_n o w_V^{x n}; degrees drop by (n - 1) + ... i.e. each
    component's degree changes by 1 - n."""
    s_W = shift_up_map(W)
    w_V = shift_down_map(V)
    out = {}
    for n, m in comps.items():
        out[n] = compose_product(s_W, [compose_product(m, [w_V] * n)])
    return out


def desuspend_components(comps, V, W):
    """Inverse of `suspend_components` for components on sV / sW: recovers
    x_n = (-1)^(n(n-1)/2) w_W o x^_n o s_V^{x n}."""
    w_W = shift_down_map(W)
    s_V = shift_up_map(V)
    out = {}
    for n, m in comps.items():
        raw = compose_product(w_W, [compose_product(m, [s_V] * n)])
        out[n] = raw.scale(signs.sign_of(signs.shift_exponent(n)))
    return out


class SuspendedAInfinity:
    """Structure maps d_n of uniform degree -1 on the shifted module."""

    def __init__(self, carrier, deltas, truncation):
        self.carrier = carrier
        self.deltas = {}
        for n, m in deltas.items():
            n = int(n)
            if m.arity != n or m.degree != -1:
                raise StructureError("shifted component %d must have arity %d, degree -1"
                                     % (n, n))
            if m.source != carrier or m.target != carrier:
                raise StructureError("shifted component %d off-carrier" % n)
            if not m.is_zero():
                self.deltas[n] = m
        self.truncation = truncation

    def delta(self, n):
        got = self.deltas.get(n)
        if got is None:
            return MultiMap.zero(self.carrier, self.carrier, n, -1)
        return got

    def family(self):
        return ComponentFamily("coderivation", self.carrier, self.carrier,
                               self.deltas, self.truncation)

    def perturbation_family(self):
        """The same components with the arity-1 slot zeroed."""
        comps = {n: m for n, m in self.deltas.items() if n >= 2}
        return ComponentFamily("coderivation", self.carrier, self.carrier,
                               comps, self.truncation)


def suspend_structure(a):
    V = a.carrier
    comps = {1: a.differential}
    comps.update(a.products)
    deltas = suspend_components(comps, V, V)
    return SuspendedAInfinity(suspend_module(V), deltas, a.truncation)


def desuspend_structure(s):
    V = desuspend_module(s.carrier)
    comps = desuspend_components(s.deltas, V, V)
    differential = comps.pop(1, MultiMap.zero(V, V, 1, -1))
    return AInfinity(V, differential, comps, s.truncation)


def suspend_morphism(mor):
    """Morphism components as a degree-0 family between shifted carriers."""
    V, W = mor.source.carrier, mor.target.carrier
    comps = suspend_components(mor.components, V, W)
    return ComponentFamily("morphism", suspend_module(V), suspend_module(W),
                           comps, mor.truncation)


def desuspend_morphism(family, source_structure, target_structure):
    V, W = source_structure.carrier, target_structure.carrier
    comps = desuspend_components(family.components, V, W)
    return AInftyMorphism(source_structure, target_structure, comps, family.trunc)


def suspend_homotopy(hom):
    """Homotopy components as a degree +1 family, flanked by the suspensions
    of its two endpoint morphisms."""
    V, W = hom.frm.source.carrier, hom.frm.target.carrier
    comps = suspend_components(hom.components, V, W)
    return ComponentFamily("homotopy", suspend_module(V), suspend_module(W),
                           comps, hom.truncation,
                           left=suspend_morphism(hom.frm),
                           right=suspend_morphism(hom.to))


def desuspend_homotopy(family, frm, to):
    V, W = frm.source.carrier, frm.target.carrier
    comps = desuspend_components(family.components, V, W)
    return AInftyHomotopy(frm, to, comps, family.trunc)
