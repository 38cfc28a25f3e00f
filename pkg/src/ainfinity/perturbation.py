"""The homological perturbation lemma on the truncated tensor coalgebra.

The shifted structure maps of arity >= 2 assemble into a coderivation that
strictly lowers tensor homogeneity and kills homogeneity 1, so composing it
with the homogeneity-preserving homotopy lift gives a nilpotent operator:
its n-th power vanishes on homogeneity-n words.  The geometric series for
(1 - dmu H)^{-1} is therefore finite and exact; it is accumulated
Horner-style per homogeneity, never by matrix inversion.

Outputs:

    delta_nu = F A G,   psi = G + H A G,   phi = F + F A H,
    H_out = H + H A H,          A = (1 - dmu H)^{-1} dmu,

verified at operator level: the perturbed target coderivation squares to
zero, phi and psi intertwine the perturbed codifferentials, and H_out is an
operator homotopy between psi phi and the identity.  These conclusions need
no side conditions.  Under the four side conditions (fg = 1, fh = 0,
hg = 0, hh = 0) the outputs coincide *exactly* with the lifts of the
kernel-recursion transfer; `compare_hpl_vs_kernels` asserts that block by
block, and `check_annihilation_lemmas` verifies the identities the
equivalence rests on.
"""

from .coalgebra import (CoalgebraOperator, ComponentFamily, extract_components,
                        lift_coderivation, lift_homotopy, lift_morphism)
from .graded import MultiMap, StructureError, compose, compose_product
from .reports import BoolResidual, CheckReport
from .suspension import shift_down_map, shift_up_map


class PerturbationData:
    """Operator-level input package for the perturbation lemma."""

    def __init__(self, retract, smu, trunc):
        fhat, ghat, hhat, gfhat = retract.shifted()
        sV, sW = fhat.source, fhat.target
        self.retract = retract
        self.smu = smu
        self.trunc = trunc
        self.sV, self.sW = sV, sW
        delta1_V = smu.delta(1)
        W = retract.small.module
        delta1_W = compose(shift_up_map(W), compose(retract.small.d,
                                                    shift_down_map(W)))
        self.dV_op = lift_coderivation(ComponentFamily(
            "coderivation", sV, sV, {1: delta1_V}, trunc))
        self.dW_op = lift_coderivation(ComponentFamily(
            "coderivation", sW, sW, {1: delta1_W}, trunc))
        self.F = lift_morphism(ComponentFamily.strict_morphism(fhat, trunc))
        self.G = lift_morphism(ComponentFamily.strict_morphism(ghat, trunc))
        self.H = lift_homotopy(ComponentFamily(
            "homotopy", sV, sV, {1: hhat}, trunc,
            left=ComponentFamily.strict_morphism(gfhat, trunc),
            right=ComponentFamily.identity(sV, trunc)))
        self.dmu = lift_coderivation(smu.perturbation_family())
        self.nilpotency = {}

    def verify_nilpotency(self):
        """Record, per homogeneity n, the least power of (dmu H) that kills
        homogeneity-n words, and check it is at most n."""
        report = CheckReport("nilpotency")
        for (m, j) in self.dmu.blocks:
            if j >= m:
                report.add("lowers-%d-%d" % (m, j),
                           BoolResidual(False, "block (%d,%d)" % (m, j)))
        M = self.dmu.compose(self.H)
        power = CoalgebraOperator.identity(self.sV, self.trunc)
        alive = set(range(1, self.trunc + 1))
        for i in range(1, self.trunc + 1):
            power = M.compose(power)
            for n in sorted(alive):
                if power.restricted_to(n).is_zero():
                    self.nilpotency[n] = i
                    alive.discard(n)
        for n in range(1, self.trunc + 1):
            idx = self.nilpotency.get(n)
            report.add("power-%d" % n,
                       BoolResidual(idx is not None and idx <= n,
                                    "nilpotency index %r at homogeneity %d" % (idx, n)))
        return report


def build_perturbation(retract, smu, trunc=None):
    trunc = trunc or smu.truncation
    if smu.carrier != retract.shifted()[2].source:
        raise StructureError("shifted structure lives off the retract's module")
    return PerturbationData(retract, smu, trunc)


class HplOutput:
    def __init__(self, data, delta_nu, psi, phi, H_out, conclusions,
                 nilpotency_report, inversion_report):
        self.data = data
        self.delta_nu = delta_nu
        self.psi = psi
        self.phi = phi
        self.H_out = H_out
        self.conclusions = conclusions
        self.nilpotency_report = nilpotency_report
        self.inversion_report = inversion_report
        # component extraction is canonical only under the side conditions;
        # without them the outputs need not have lift shape and the families
        # below are       just homogeneity-1 projections.
        self.extraction_canonical = data.retract.is_harmonious

    @property
    def ok(self):
        return (self.conclusions.ok and self.nilpotency_report.ok
                and self.inversion_report.ok)

    def extracted(self):
        return {
            "structure": extract_components(self.delta_nu, "coderivation"),
            "psi": extract_components(self.psi, "morphism"),
            "phi": extract_components(self.phi, "morphism"),
            "homotopy": extract_components(self.H_out, "homotopy",
                                           left=extract_components(
                                               self.psi.compose(self.phi), "morphism"),
                                           right=ComponentFamily.identity(
                                               self.data.sV, self.data.trunc)),
        }


def hpl_transfer(data):
    """Run the perturbation lemma and verify its conclusions exactly."""
    nilpotency_report = data.verify_nilpotency()
    if not nilpotency_report.ok:
        raise StructureError("perturbation operator fails to lower homogeneity")
    M = data.dmu.compose(data.H)
    ident = CoalgebraOperator.identity(data.sV, data.trunc)

    # finite geometric series, Horner style: A = dmu + M(dmu + M(...))
    A = data.dmu
    for _ in range(data.trunc - 1):
        A = data.dmu + M.compose(A)

    inv = ident
    for _ in range(data.trunc - 1):
        inv = ident + M.compose(inv)
    inversion_report = CheckReport("series-inversion")
    inversion_report.add("right", (ident - M).compose(inv) - ident)
    inversion_report.add("left", inv.compose(ident - M) - ident)

    delta_nu = data.F.compose(A).compose(data.G)
    psi = data.G + data.H.compose(A).compose(data.G)
    phi = data.F + data.F.compose(A).compose(data.H)
    H_out = data.H + data.H.compose(A).compose(data.H)

    DV = data.dV_op + data.dmu
    DW = data.dW_op + delta_nu
    conclusions = CheckReport("hpl-conclusions")
    conclusions.add("square-zero", DW.compose(DW))
    conclusions.add("phi-intertwines", DW.compose(phi) - phi.compose(DV))
    conclusions.add("psi-intertwines", DV.compose(psi) - psi.compose(DW))
    conclusions.add("homotopy-identity",
                    psi.compose(phi) - ident
                    - (DV.compose(H_out) + H_out.compose(DV)))
    return HplOutput(data, delta_nu, psi, phi, H_out, conclusions,
                     nilpotency_report, inversion_report)


def check_side_conditions(retract):
    """The four composites, evaluated exactly on the shifted maps."""
    fhat, ghat, hhat, _ = retract.shifted()
    sW = fhat.target
    return {
        "fg": (compose(fhat, ghat) - MultiMap.identity(sW)).is_zero(),
        "fh": compose(fhat, hhat).is_zero(),
        "hg": compose(hhat, ghat).is_zero(),
        "hh": compose(hhat, hhat).is_zero(),
    }


def _kernel_lifts(pkg):
    """The four operators the kernel recursions predict, as lifts."""
    sus = pkg.suspended
    N = sus.truncation
    sV = sus.hhat.source
    sW = sus.fhat.target
    nu_family = ComponentFamily("coderivation", sW, sW,
                                {n: sus.nu_hat(n) for n in range(2, N + 1)}, N)
    psi_family = ComponentFamily("morphism", sW, sV,
                                 {n: sus.psi_hat(n) for n in range(1, N + 1)}, N)
    phi_family = ComponentFamily("morphism", sV, sW,
                                 {n: sus.phi_hat(n) for n in range(1, N + 1)}, N)
    psiphi_family = ComponentFamily("morphism", sV, sV, dict(sus.psiphi), N)
    H_family = ComponentFamily("homotopy", sV, sV,
                               {n: sus.H_hat(n) for n in range(1, N + 1)}, N,
                               left=psiphi_family,
                               right=ComponentFamily.identity(sV, N))
    return {
        "delta_nu": lift_coderivation(nu_family),
        "psi": lift_morphism(psi_family),
        "phi": lift_morphism(phi_family),
        "homotopy": lift_homotopy(H_family),
    }


class ComparisonReport:
    """Outcome of the HPL-vs-kernels comparison: a status string plus, when
    run, one operator residual per transferred object."""

    SKIPPED = "skipped: side conditions not met"

    def __init__(self, status, diffs=None):
        self.status = status
        self.diffs = diffs or {}

    @property
    def ok(self):
        # a skipped comparison is data, not a failure
        return self.status in ("exact", self.SKIPPED)

    def is_zero(self):
        return self.ok

    def lines(self):
        out = ["compare.status=%s" % self.status]
        for key in sorted(self.diffs):
            out.append("compare.%s.nonzero=%d" % (key, self.diffs[key].entry_count()))
        return out


def compare_hpl_vs_kernels(hpl, pkg, n_max=None):
    """Block equality of the perturbation-lemma outputs against the lifted
    kernel-recursion outputs, up to homogeneity n_max.  Skipped (with an
    explanatory status) when a side condition fails, since equality is
    asserted only under them."""
    if not pkg.retract.is_harmonious:
        return ComparisonReport(ComparisonReport.SKIPPED)
    n_max = n_max or min(hpl.data.trunc, pkg.truncation)
    expected = _kernel_lifts(pkg)
    got = {"delta_nu": hpl.delta_nu, "psi": hpl.psi, "phi": hpl.phi,
           "homotopy": hpl.H_out}
    diffs = {}
    exact = True
    for key in sorted(expected):
        diff = got[key] - expected[key]
        keep = {blk: t for blk, t in diff.blocks.items() if blk[0] <= n_max}
        diff = CoalgebraOperator._raw(diff.source, diff.target, diff.degree,
                                      diff.trunc, keep)
        diffs[key] = diff
        exact = exact and diff.is_zero()
    return ComparisonReport("exact" if exact else "mismatch", diffs)


def _delta_slot_sum(outer, delta, n, ident):
    """outer o (sum_u 1^{x u} x delta x 1^{x n-a-u}) for an arity-a delta."""
    a = delta.arity
    acc = None
    for u in range(0, n - a + 1):
        term = compose_product(outer, [ident] * u + [delta] + [ident] * (n - a - u))
        acc = term if acc is None else acc + term
    return acc


def _homotopy_restriction_terms(sus, n):
    """The factor lists of the homogeneity-n block of the homotopy lift:
    (gf)^{x a} x h x 1^{x b}, a + b = n - 1."""
    ident = MultiMap.identity(sus.hhat.source)
    out = []
    for a in range(n):
        out.append([sus.gfhat] * a + [sus.hhat] + [ident] * (n - 1 - a))
    return out


def _compose_with_homotopy(x, sus, n):
    """x o H|_{homogeneity n} for an arity-n input of x's source power."""
    acc = None
    for factors in _homotopy_restriction_terms(sus, n):
        term = compose_product(x, factors)
        acc = term if acc is None else acc + term
    return acc


def check_annihilation_lemmas(pkg, n_max=None):
    """The side-condition identities behind the equivalence, per arity:

    * vanish-on-images:  q_n o g^{x n} = 0                      (n >= 2)
    * vanish-on-homotopy-slots:  q_n o ((gf)^{x i} x h x 1^{x j}) = 0
    * p-on-images:  p_n o g^{x n} = d_n o g^{x n}
        + sum_i q_{n-i+1} o (sum_u 1..d_i..1) o g^{x n}
    * composite-reduction:  c_n - h p_n (gf)^{x n} = gf d_n H_n
        + sum_i c_{n-i+1} o (sum_u 1..d_i..1) o H_n     (c = composite)
    * q-through-homotopy:  q_n = d_n o H_n
        + sum_i q_{n-i+1} o (sum_u 1..d_i..1) o H_n

    (all on the shifted side, H_n the homogeneity-n homotopy block).
    Requires the side conditions; raises otherwise.
    """
    if not pkg.retract.is_harmonious:
        raise StructureError("annihilation identities assume the side conditions")
    sus = pkg.suspended
    n_max = n_max or sus.truncation
    sV = sus.hhat.source
    ident = MultiMap.identity(sV)
    report = CheckReport("annihilation")
    for n in range(2, n_max + 1):
        q_n, p_n = sus.q[n], sus.p[n]
        report.add("vanish-on-images-%d" % n,
                   compose_product(q_n, [sus.ghat] * n))
        for i in range(0, n):
            j = n - 1 - i
            if i + j < 1:
                continue
            blocks = [sus.gfhat] * i + [sus.hhat] + [ident] * j
            report.add("vanish-on-homotopy-slots-%d-%d" % (n, i),
                       compose_product(q_n, blocks))

        rhs = compose_product(sus.delta(n), [sus.ghat] * n)
        for i in range(2, n):
            y = _delta_slot_sum(sus.q[n - i + 1], sus.delta(i), n, ident)
            rhs = rhs + compose_product(y, [sus.ghat] * n)
        report.add("p-on-images-%d" % n,
                   compose_product(p_n, [sus.ghat] * n) - rhs)

        rhs = _compose_with_homotopy(sus.delta(n), sus, n)
        for i in range(2, n):
            y = _delta_slot_sum(sus.q[n - i + 1], sus.delta(i), n, ident)
            rhs = rhs + _compose_with_homotopy_block(y, sus, n)
        report.add("q-through-homotopy-%d" % n, q_n - rhs)

        lhs = (sus.psiphi[n]
               - compose(sus.hhat,
                         compose_product(p_n, [sus.gfhat] * n)))
        rhs = _compose_with_homotopy(compose(sus.gfhat, sus.delta(n)), sus, n)
        for i in range(2, n):
            y = _delta_slot_sum(sus.psiphi[n - i + 1], sus.delta(i), n, ident)
            rhs = rhs + _compose_with_homotopy_block(y, sus, n)
        report.add("composite-reduction-%d" % n, lhs - rhs)
    return report


def _compose_with_homotopy_block(x, sus, n):
    return _compose_with_homotopy(x, sus, n)
