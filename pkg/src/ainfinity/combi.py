"""Index families for the arity recursions.

All three enumerations are returned in a fixed deterministic order
(outer index ascending, then inner, then parts lexicographic); downstream
packages are bit-reproducible because of this.
"""


def compositions(n, k):
    """Ordered compositions of n into exactly k positive parts, lex order."""
    if k <= 0 or n < k:
        return []
    if k == 1:
        return [(n,)]
    out = []
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            out.append((first,) + rest)
    return out


def enum_A(n):
    """Triples (k, l, i): k + l = n + 1, k,l >= 2, 1 <= i <= k.

    These index the ways of plugging an l-ary operation into slot i of a
    k-ary one so that the composite has arity n.  Empty for n <= 2.
    """
    out = []
    for k in range(2, n):
        l = n + 1 - k
        if l < 2:
            continue
        for i in range(1, k + 1):
            out.append((k, l, i))
    return out


def enum_B(n):
    """Pairs (k, (r_1..r_k)): compositions of n into k >= 2 positive parts."""
    out = []
    for k in range(2, n + 1):
        for parts in compositions(n, k):
            out.append((k, parts))
    return out


def enum_C(n):
    """Tuples (k, i, (r_1..r_i)) with 2 <= k <= n, 1 <= i <= k, r_j >= 1 and
    r_1 + ... + r_i + k - i = n."""
    out = []
    for k in range(2, n + 1):
        for i in range(1, k + 1):
            for parts in compositions(n - k + i, i):
                out.append((k, i, parts))
    return out
