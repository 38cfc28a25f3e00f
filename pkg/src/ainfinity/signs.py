"""Sign conventions, kept in one place.

Every sign in the library is produced by one of the three exponents below:

* `koszul_exponent` drives the evaluation of tensor products of homogeneous
  maps on homogeneous elements (a map of odd degree picks up a sign while
  sliding past odd-degree inputs);
* `theta` is the global bookkeeping exponent for the unsuspended kernel
  recursions and morphism composition;
* `shift_exponent` is the exponent of the scalar by which an n-fold
  suspension followed by an n-fold desuspension differs from the identity.

The mutation test suite monkeypatches these functions to verify that every
single-sign corruption is caught by at least one checker, so call them via
the module (`signs.theta(...)`), never through a from-import.
"""


def koszul_exponent(map_degree, left_degree):
    """Exponent acquired when a map of degree `map_degree` moves past
    elements of total degree `left_degree`."""
    return map_degree * left_degree


def theta(parts):
    """theta(u_1,...,u_k) = sum over i<j of u_i * (u_j + 1)."""
    total = 0
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            total += parts[i] * (parts[j] + 1)
    return total


def shift_exponent(n):
    """Exponent of the scalar s^{x n} o w^{x n} = (-1)^(n(n-1)/2) * id."""
    return n * (n - 1) // 2


def sign_of(exponent):
    return -1 if exponent % 2 else 1
