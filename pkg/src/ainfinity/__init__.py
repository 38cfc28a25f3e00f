"""Exact transfer of higher associative structure across deformation
retracts, with two independently implemented computation routes and
checkers for every defining relation."""

from .ainfty import (AInfinity, AInftyHomotopy, AInftyMorphism,
                     check_homotopy, check_morphism, check_structure,
                     compose_morphisms, identity_morphism)
from .fields import QQ, PrimeField
from .graded import (ChainComplex, GradedModule, MultiMap, StructureError,
                     Vector, apply_block, compose, compose_product, insert,
                     koszul_sign)
from .kernels import (DeformationRetract, KernelFamily, TransferPackage,
                      check_p_identity, check_p_identity_on_images, check_q_identity, enum_A, enum_B,
                      enum_C, p_kernels, q_kernels, theta, transfer)
from .perturbation import (build_perturbation, check_annihilation_lemmas,
                           check_side_conditions, compare_hpl_vs_kernels,
                           hpl_transfer)
from .retracts import harmonious_retract, homology, instance_forms, instance_massey
from .suspension import (desuspend_structure, suspend_homotopy,
                         suspend_module, suspend_morphism, suspend_structure)

__all__ = [
    "AInfinity", "AInftyHomotopy", "AInftyMorphism", "ChainComplex",
    "DeformationRetract", "GradedModule", "KernelFamily", "MultiMap",
    "PrimeField", "QQ", "StructureError", "TransferPackage", "Vector",
    "apply_block", "build_perturbation", "check_p_identity", "check_p_identity_on_images",
    "check_q_identity", "check_annihilation_lemmas", "check_homotopy",
    "check_morphism", "check_side_conditions", "check_structure",
    "compare_hpl_vs_kernels", "compose", "compose_morphisms",
    "compose_product", "desuspend_structure", "enum_A", "enum_B", "enum_C",
    "harmonious_retract", "homology", "hpl_transfer", "identity_morphism",
    "insert", "instance_forms", "instance_massey", "koszul_sign",
    "p_kernels", "q_kernels", "suspend_homotopy", "suspend_module",
    "suspend_morphism", "suspend_structure", "theta", "transfer",
]
