"""The componentwise/operator-level equivalence battery.

For a transferred package this runs, on the shifted side, the three
componentwise checks (square-zero, intertwining, homotopy identity) *and*
their operator-level counterparts on the lifted objects, then asserts the
verdicts agree in all six directions and also match the unshifted checkers
that ran during the transfer.  On valid inputs everything is zero; the
point of the battery is that the two routes are computed by disjoint code
paths, so a sign defect anywhere breaks an agreement entry.
"""

from .coalgebra import (check_codifferential, check_homotopy_components,
                        check_morphism_components, lift_coderivation,
                        lift_homotopy, lift_morphism,
                        operator_homotopy_residual,
                        operator_intertwining_residual, operator_square)
from .reports import BoolResidual, CheckReport
from .suspension import suspend_homotopy, suspend_morphism, suspend_structure


def equivalence_battery(pkg, mu, n_max=None):
    """Six-direction agreement for the transferred structure, the morphism
    into the small side, and the homotopy on the big side."""
    n_max = n_max or pkg.truncation
    report = CheckReport("battery")

    smu = suspend_structure(mu)
    snu = suspend_structure(pkg.nu)

    comp = check_codifferential(snu.family(), n_max)
    op = operator_square(lift_coderivation(snu.family()))
    report.add("structure-components", comp)
    report.add("structure-operator", op)
    report.add("structure-agreement", BoolResidual(comp.ok == op.is_zero()))
    unshifted_ok = pkg.reports["structure"].ok
    report.add("structure-conventions", BoolResidual(comp.ok == unshifted_ok))

    phi_fam = suspend_morphism(pkg.phi)
    comp = check_morphism_components(phi_fam, smu.family(), snu.family(), n_max)
    op = operator_intertwining_residual(lift_morphism(phi_fam),
                                        lift_coderivation(smu.family()),
                                        lift_coderivation(snu.family()))
    report.add("morphism-components", comp)
    report.add("morphism-operator", op)
    report.add("morphism-agreement", BoolResidual(comp.ok == op.is_zero()))
    report.add("morphism-conventions",
               BoolResidual(comp.ok == pkg.reports["phi"].ok))

    hom_fam = suspend_homotopy(pkg.homotopy)
    comp = check_homotopy_components(hom_fam, smu.family(), smu.family(), n_max)
    E = lift_morphism(hom_fam.left)
    G = lift_morphism(hom_fam.right)
    H = lift_homotopy(hom_fam)
    dV = lift_coderivation(smu.family())
    op = operator_homotopy_residual(H, E, G, dV, dV)
    report.add("homotopy-components", comp)
    report.add("homotopy-operator", op)
    report.add("homotopy-agreement", BoolResidual(comp.ok == op.is_zero()))
    report.add("homotopy-conventions",
               BoolResidual(comp.ok == pkg.reports["homotopy"].ok))
    return report
