"""Pure-Python reference kernels.

Polynomials travel through the kernels as plain ``dict`` objects mapping
exponent tuples to residues in ``1..p-1``.  The compiled module exposes the
same functions with the same contracts.
"""


def mul(a, b, p):
    """Product of two term dicts modulo ``p``."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bitems:
            m = tuple([x + y for x, y in zip(ma, mb)])
            c = (get(m, 0) + ca * cb) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def mul_trunc(a, b, p, bound):
    """Product of two term dicts, dropping every monomial with an exponent >= bound."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ma, ca in a.items():
        for mb, cb in bitems:
            m = tuple([x + y for x, y in zip(ma, mb)])
            if max(m) >= bound:
                continue
            c = (get(m, 0) + ca * cb) % p
            if c:
                out[m] = c
            else:
                out.pop(m, None)
    return out


def frob_split(terms, q):
    """Split ``terms`` as sum over alpha < q of x^alpha * (u_alpha)^q.

    Returns ``{alpha: {beta: c}}``; coefficients need no root since they lie
    in the prime field.
    """
    parts = {}
    for m, c in terms.items():
        alpha = tuple([e % q for e in m])
        beta = tuple([e // q for e in m])
        part = parts.get(alpha)
        if part is None:
            parts[alpha] = {beta: c}
        else:
            part[beta] = c
    return parts


def frob_power(terms, q):
    """Coefficientwise Frobenius: (sum c x^m)^q = sum c x^(q m) over F_p."""
    return {tuple([e * q for e in m]): c for m, c in terms.items()}
