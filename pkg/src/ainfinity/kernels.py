"""Transfer of higher structure across a deformation retract.

Two independently implemented routes compute the same kernels:

* the shifted route (authoritative): every structure map has degree -1 and
  the recursions are sign-free,

      p^_n = sum_{B(n)} d_k(hp^_{r_1} x ... x hp^_{r_k}),        hp^_1 = 1
      q^_n = sum_{C(n)} d_k(pf_{r_1} x .. x pf_{r_{i-1}} x hq^_{r_i} x 1^{k-i})
      pf_m = gf q^_m + sum_{B(m)} h p^_k(gf q^_{r_1} x ... x gf q^_{r_k})

* the unshifted route (cross-check): the same recursions written directly
  on V with the global exponent theta,

      p_n = sum_{B(n)} (-1)^theta(r..) mu_k(h p_{r_1} x ... x h p_{r_k})
      q_n = sum_{C(n)} (-1)^(n + r_i + theta(r_1..r_i))
                 mu_k(pf_{r_1} x .. x h q_{r_i} x 1^{k-i})

`transfer` computes both, verifies they agree after conversion, assembles

    nu_n = f p_n g^{x n},  phi_n = f q_n,  psi_n = h p_n g^{x n},  H_n = h q_n

with arity-1 pieces (d_W, f, g, h), and runs every relation checker on the
result.  Residual reports are carried on the package, never dropped.
"""

from . import signs
from .ainfty import (AInfinity, AInftyHomotopy, AInftyMorphism, check_homotopy,
                     check_morphism, check_structure, compose_morphisms,
                     identity_morphism)
from .combi import compositions, enum_A, enum_B, enum_C
from .graded import (ChainComplex, MultiMap, StructureError, compose,
                     compose_product, insert)
from .reports import BoolResidual, CheckReport
from .signs import theta
from .suspension import (desuspend_components, shift_down_map, shift_up_map,
                         suspend_components, suspend_structure)

__all__ = ["DeformationRetract", "KernelFamily", "SuspendedTransfer",
           "TransferPackage", "enum_A", "enum_B", "enum_C", "theta",
           "p_kernels", "q_kernels", "transfer", "check_p_identity", "check_p_identity_on_images",
           "check_q_identity"]


class DeformationRetract:
    """(V, d_V), (W, d_W), chain maps f, g and a homotopy h with
    gf - 1 = d h + h d.  The chain-map and homotopy identities are checked
    exactly at construction; the four side conditions (fg = 1, fh = 0,
    hg = 0, hh = 0) are evaluated and stored, not required."""

    def __init__(self, big, small, f, g, h):
        V, W = big.module, small.module
        if f.source != V or f.target != W or f.arity != 1 or f.degree != 0:
            raise StructureError("f must be a degree-0 map V -> W")
        if g.source != W or g.target != V or g.arity != 1 or g.degree != 0:
            raise StructureError("g must be a degree-0 map W -> V")
        if h.source != V or h.target != V or h.arity != 1 or h.degree != 1:
            raise StructureError("h must be a degree +1 map V -> V")
        if not big.d_squared().is_zero():
            raise StructureError("d_V does not square to zero")
        if not small.d_squared().is_zero():
            raise StructureError("d_W does not square to zero")
        if not (compose(f, big.d) - compose(small.d, f)).is_zero():
            raise StructureError("f is not a chain map")
        if not (compose(g, small.d) - compose(big.d, g)).is_zero():
            raise StructureError("g is not a chain map")
        gf = compose(g, f)
        homotopy_residual = (gf - MultiMap.identity(V)
                             - compose(big.d, h) - compose(h, big.d))
        if not homotopy_residual.is_zero():
            raise StructureError("gf - 1 != d h + h d")
        self.big = big
        self.small = small
        self.f, self.g, self.h = f, g, h
        self.gf = gf
        self.side_conditions = {
            "fg": (compose(f, g) - MultiMap.identity(W)).is_zero(),
            "fh": compose(f, h).is_zero(),
            "hg": compose(h, g).is_zero(),
            "hh": compose(h, h).is_zero(),
        }
        self._shifted = None

    @property
    def is_harmonious(self):
        return all(self.side_conditions.values())

    def shifted(self):
        """(f^, g^, h^, gf^) on the shifted modules, cached."""
        if self._shifted is None:
            V, W = self.big.module, self.small.module
            sV_up, sV_down = shift_up_map(V), shift_down_map(V)
            sW_up, sW_down = shift_up_map(W), shift_down_map(W)
            fhat = compose(sW_up, compose(self.f, sV_down))
            ghat = compose(sV_up, compose(self.g, sW_down))
            hhat = compose(sV_up, compose(self.h, sV_down))
            self._shifted = (fhat, ghat, hhat, compose(ghat, fhat))
        return self._shifted


class KernelFamily:
    """Unshifted kernels and the cached composite morphism components:
    p_n (degree n-2, n >= 2), q_n (degree n-1, q_1 = 1) and
    (psi phi)_m per the closed composite formula."""

    def __init__(self, p, q, composite, truncation):
        for n, m in p.items():
            if m.arity != n or m.degree != n - 2:
                raise StructureError("p_%d must have arity %d, degree %d"
                                     % (n, n, n - 2))
        for n, m in q.items():
            if m.arity != n or m.degree != n - 1:
                raise StructureError("q_%d must have arity %d, degree %d"
                                     % (n, n, n - 1))
        self.p = dict(p)
        self.q = dict(q)
        self.composite = dict(composite)
        self.truncation = truncation


class SuspendedTransfer:
    """Shifted-route data kept for the perturbation-lemma comparison."""

    def __init__(self, deltas, fhat, ghat, hhat, p, q, psiphi, truncation):
        self.deltas = deltas          # {n: d_n} including n = 1
        self.fhat, self.ghat, self.hhat = fhat, ghat, hhat
        self.gfhat = compose(ghat, fhat)
        self.p = p                    # {n >= 2: p^_n}
        self.q = q                    # {n >= 1: q^_n}, q^_1 = identity
        self.psiphi = psiphi          # {m >= 1: composite components}
        self.truncation = truncation

    def delta(self, n):
        got = self.deltas.get(n)
        if got is None:
            sV = self.hhat.source
            return MultiMap.zero(sV, sV, n, -1)
        return got

    def nu_hat(self, n):
        """f^ p^_n g^{x n} (n >= 2): shifted transferred structure map."""
        inner = compose_product(self.p[n], [self.ghat] * n)
        return compose(self.fhat, inner)

    def psi_hat(self, n):
        if n == 1:
            return self.ghat
        return compose(self.hhat, compose_product(self.p[n], [self.ghat] * n))

    def phi_hat(self, n):
        if n == 1:
            return self.fhat
        return compose(self.fhat, self.q[n])

    def H_hat(self, n):
        if n == 1:
            return self.hhat
        return compose(self.hhat, self.q[n])


def _suspended_p(deltas, hhat, N):
    sV = hhat.source
    hp = {1: MultiMap.identity(sV)}
    p = {}
    for n in range(2, N + 1):
        acc = MultiMap.zero(sV, sV, n, -1)
        for (k, parts) in enum_B(n):
            d_k = deltas.get(k)
            if d_k is None:
                continue
            acc = acc + compose_product(d_k, [hp[r] for r in parts])
        p[n] = acc
        hp[n] = compose(hhat, acc)
    return p


def _suspended_q(deltas, hhat, gfhat, p, N):
    sV = hhat.source
    ident = MultiMap.identity(sV)
    q = {1: ident}
    hq = {1: hhat}
    gfq = {1: gfhat}
    psiphi = {1: gfhat}
    hp = {1: ident}
    for n in range(2, N + 1):
        hp[n] = compose(hhat, p[n])
    for n in range(2, N + 1):
        acc = MultiMap.zero(sV, sV, n, 0)
        for (k, i, parts) in enum_C(n):
            d_k = deltas.get(k)
            if d_k is None:
                continue
            blocks = ([psiphi[r] for r in parts[:-1]] + [hq[parts[-1]]]
                      + [ident] * (k - i))
            acc = acc + compose_product(d_k, blocks)
        q[n] = acc
        hq[n] = compose(hhat, acc)
        gfq[n] = compose(gfhat, acc)
        comp = gfq[n]
        for (k, parts) in enum_B(n):
            comp = comp + compose_product(hp[k], [gfq[r] for r in parts])
        psiphi[n] = comp
    return q, psiphi


def p_kernels(retract, mu, N):
    """Unshifted p-kernel recursion with the theta sign:
    p_n = sum_{B(n)} (-1)^theta(r_1..r_k) mu_k(h p_{r_1} x ... x h p_{r_k}),
    h p_1 = 1."""
    V = retract.big.module
    h = retract.h
    hp = {1: MultiMap.identity(V)}
    p = {}
    for n in range(2, N + 1):
        acc = MultiMap.zero(V, V, n, n - 2)
        for (k, parts) in enum_B(n):
            mu_k = mu.mu(k)
            if mu_k.is_zero():
                continue
            term = compose_product(mu_k, [hp[r] for r in parts])
            acc = acc + term.scale(signs.sign_of(signs.theta(parts)))
        p[n] = acc
        hp[n] = compose(h, acc)
    return p


def q_kernels(retract, mu, p, N):
    """Unshifted q-kernel recursion with sign (-1)^(n + r_i + theta(r_1..r_i))
    (theta taken over the first i parts inclusive, exactly as printed), and
    the cached composite components
    (psi phi)_m = gf q_m + sum_{B(m)} (-1)^theta h p_k(gf q_{r_1} x ...)."""
    V = retract.big.module
    h, gf = retract.h, retract.gf
    ident = MultiMap.identity(V)
    q = {1: ident}
    hq = {1: h}
    gfq = {1: gf}
    psiphi = {1: gf}
    hp = {1: ident}
    for n in range(2, N + 1):
        hp[n] = compose(h, p[n])
    for n in range(2, N + 1):
        acc = MultiMap.zero(V, V, n, n - 1)
        for (k, i, parts) in enum_C(n):
            mu_k = mu.mu(k)
            if mu_k.is_zero():
                continue
            blocks = ([psiphi[r] for r in parts[:-1]] + [hq[parts[-1]]]
                      + [ident] * (k - i))
            term = compose_product(mu_k, blocks)
            acc = acc + term.scale(signs.sign_of(n + parts[-1] + signs.theta(parts)))
        q[n] = acc
        hq[n] = compose(h, acc)
        gfq[n] = compose(gf, acc)
        comp = gfq[n]
        for (k, parts) in enum_B(n):
            term = compose_product(hp[k], [gfq[r] for r in parts])
            comp = comp + term.scale(signs.sign_of(signs.theta(parts)))
        psiphi[n] = comp
    return q, psiphi


def check_p_identity(p, retract, mu, n_max):
    """Residuals of the full map identity the p-kernels satisfy:
    d p_n - sum_u (-1)^n p_n(1..d..1)
          - sum_{A(n)} (-1)^(i(l+1)+n) p_k(1^{i-1} x gf p_l x 1^{k-i}) = 0."""
    report = CheckReport("p-identity")
    d, gf = retract.big.d, retract.gf
    for n in range(2, n_max + 1):
        p_n = p[n]
        res = compose(d, p_n)
        s_n = signs.sign_of(n)
        for u in range(1, n + 1):
            res = res - insert(p_n, u, d).scale(s_n)
        for (k, l, i) in enum_A(n):
            gfp = compose(gf, p[l])
            res = res - insert(p[k], i, gfp).scale(signs.sign_of(i * (l + 1) + n))
        report.add(n, res)
    return report


def check_p_identity_on_images(p, retract, mu, n_max):
    """The weaker variant: the same residual post-composed with g^{x n}."""
    base = check_p_identity(p, retract, mu, n_max)
    report = CheckReport("p-identity-on-images")
    g = retract.g
    for n, res in base.residuals.items():
        report.add(n, compose_product(res, [g] * n))
    return report


def check_q_identity(q, psiphi, p, retract, mu, n_max):
    """Residuals of the q-kernel identity:
    d q_n + sum_u (-1)^n q_n(1..d..1)
          + sum_{B(n)} (-1)^theta p_k(gf q_{r_1} x ... x gf q_{r_k})
          + sum_{A(n)} (-1)^(i(l+1)+n) q_k(1^{i-1} x mu_l x 1^{k-i})
          - q_1 mu_n = 0."""
    report = CheckReport("q-identity")
    d, gf = retract.big.d, retract.gf
    for n in range(2, n_max + 1):
        q_n = q[n]
        res = compose(d, q_n)
        s_n = signs.sign_of(n)
        for u in range(1, n + 1):
            res = res + insert(q_n, u, d).scale(s_n)
        for (k, parts) in enum_B(n):
            gfq = [compose(gf, q[r]) for r in parts]
            term = compose_product(p[k], gfq)
            res = res + term.scale(signs.sign_of(signs.theta(parts)))
        for (k, l, i) in enum_A(n):
            res = res + insert(q[k], i, mu.mu(l)).scale(signs.sign_of(i * (l + 1) + n))
        res = res - compose(q[1], mu.mu(n))
        report.add(n, res)
    return report


class TransferPackage:
    """Everything `transfer` produces: the structure on W, both morphisms,
    the homotopy, both kernel families, and every residual report."""

    def __init__(self, nu, phi, psi, homotopy, kernels, suspended, retract,
                 truncation, reports):
        self.nu = nu
        self.phi = phi
        self.psi = psi
        self.homotopy = homotopy
        self.kernels = kernels
        self.suspended = suspended
        self.retract = retract
        self.truncation = truncation
        self.reports = reports

    @property
    def ok(self):
        return all(r.ok for r in self.reports.values())

    def failing_reports(self):
        return sorted(name for name, r in self.reports.items() if not r.ok)


def transfer(retract, mu, N=None, cross_validate=True):
    """Transfer `mu` across `retract`, verify everything, return the package.

    Raises on invalid inputs (structure relations or retract identities
    violated); nonzero residuals of the *transferred* objects are reported
    on the package, never silently dropped.
    """
    if mu.carrier != retract.big.module:
        raise StructureError("structure lives on a different module than the retract")
    if not (mu.differential - retract.big.d).is_zero():
        raise StructureError("structure differential differs from the retract's")
    N = N or mu.truncation
    structure_report = check_structure(mu, N)
    if not structure_report.ok:
        raise StructureError("input structure fails its defining relations at %r"
                             % structure_report.failing())

    V, W = retract.big.module, retract.small.module
    fhat, ghat, hhat, gfhat = retract.shifted()
    smu = suspend_structure(mu)
    deltas = dict(smu.deltas)

    p_hat = _suspended_p(deltas, hhat, N)
    q_hat, psiphi_hat = _suspended_q(deltas, hhat, gfhat, p_hat, N)
    suspended = SuspendedTransfer(deltas, fhat, ghat, hhat, p_hat, q_hat,
                                  psiphi_hat, N)

    p = desuspend_components(p_hat, V, V)
    q_high = desuspend_components({n: m for n, m in q_hat.items() if n >= 2}, V, V)
    q = {1: MultiMap.identity(V)}
    q.update(q_high)
    composite = {1: retract.gf}
    composite.update(desuspend_components(
        {m: c for m, c in psiphi_hat.items() if m >= 2}, V, V))
    kernels = KernelFamily(p, q, composite, N)

    reports = {}
    if cross_validate:
        reports["convention-agreement"] = _cross_validate(retract, mu, p, q,
                                                          composite, N)

    f, g, h = retract.f, retract.g, retract.h
    nu_products = {}
    for n in range(2, N + 1):
        nu_n = compose(f, compose_product(p[n], [g] * n))
        if not nu_n.is_zero():
            nu_products[n] = nu_n
    nu = AInfinity(W, retract.small.d, nu_products, N)

    phi = AInftyMorphism(mu, nu, {
        n: (f if n == 1 else compose(f, q[n])) for n in range(1, N + 1)}, N)
    psi = AInftyMorphism(nu, mu, {
        n: (g if n == 1 else compose(h, compose_product(p[n], [g] * n)))
        for n in range(1, N + 1)}, N)
    psiphi_mor = compose_morphisms(psi, phi)
    homotopy = AInftyHomotopy(psiphi_mor, identity_morphism(mu), {
        n: (h if n == 1 else compose(h, q[n])) for n in range(1, N + 1)}, N)

    reports["structure"] = check_structure(nu, N)
    reports["phi"] = check_morphism(phi, N)
    reports["psi"] = check_morphism(psi, N)
    reports["psiphi"] = check_morphism(psiphi_mor, N)
    reports["homotopy"] = check_homotopy(homotopy, N)
    reports["p-identity"] = check_p_identity(p, retract, mu, N)
    reports["q-identity"] = check_q_identity(q, composite, p, retract, mu, N)
    reports["composite-agreement"] = _composite_agreement(psiphi_mor, composite, N)
    for name, report in reports.items():
        report.name = name

    return TransferPackage(nu, phi, psi, homotopy, kernels, suspended,
                           retract, N, reports)


def _cross_validate(retract, mu, p, q, composite, N):
    """Exact agreement of the shifted (sign-free) and unshifted
    (theta-signed) recursions, compared on the unshifted side."""
    report = CheckReport("convention-agreement")
    p_direct = p_kernels(retract, mu, N)
    q_direct, psiphi_direct = q_kernels(retract, mu, p_direct, N)
    for n in range(2, N + 1):
        report.add("p%d" % n, p[n] - p_direct[n])
        report.add("q%d" % n, q[n] - q_direct[n])
        report.add("c%d" % n, composite[n] - psiphi_direct[n])
    return report


def _composite_agreement(psiphi_mor, composite, N):
    """The composite computed by the composition formula equals the cached
    closed-form composite, per arity."""
    report = CheckReport("composite-agreement")
    for n in range(1, N + 1):
        report.add(n, psiphi_mor.component(n) - composite[n])
    return report
