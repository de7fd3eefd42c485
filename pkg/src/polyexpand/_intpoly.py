"""Dense integer polynomial kernels.

Univariate polynomials are lists of ints, constant term first, with no
trailing zeros (``[]`` is zero).  Bivariate polynomials are lists of such
rows: ``rows[j]`` is the coefficient of ``y**j`` as a polynomial in ``x``.

Everything here works over Z so that the hot loops never touch Fraction.
The public classes in :mod:`exact_arith` and :mod:`bipoly` clear
denominators, call into these kernels and rebuild rationals afterwards.
"""

from math import gcd


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return trim(out)


def sub(a, b):
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return trim(out)


def scale(a, c):
    if c == 0:
        return []
    return [c * t for t in a]


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    out = [0] * (len(a) + len(b) - 1)
    for j, cb in enumerate(b):
        if cb:
            for i, ca in enumerate(a):
                out[i + j] += ca * cb
    return out


def shift(a, k):
    """Multiply by x**k."""
    return [0] * k + a if a else []


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Split ``a`` into (content, primitive part) with positive leading coefficient."""
    if not a:
        return 0, []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return g, [c // g for c in a]


def prem(a, b):
    """Pseudo-remainder of ``a`` by nonzero ``b`` (some lc(b)**k * a mod b)."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        lr = r[-1]
        k = len(r) - 1 - db
        r = [lb * c for c in r]
        for i, cb in enumerate(b):
            r[i + k] -= lr * cb
        trim(r)
        if r:
            g = content(r)
            if g > 1:
                r = [c // g for c in r]
    return r


def gcd_poly(a, b):
    """Primitive GCD in Z[x] with positive leading coefficient."""
    if not a:
        return primitive(b)[1]
    if not b:
        return primitive(a)[1]
    ca, pa = primitive(a)
    cb, pb = primitive(b)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = prem(pa, pb)
        pa, pb = pb, primitive(r)[1]
    # the content of a, b plays no role: callers want the primitive gcd
    return pa


def exact_div(a, b):
    """Quotient ``a / b`` when ``b`` divides ``a`` over Z, else None."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return []
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    r = list(a)
    lb = b[-1]
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = r[k + db]
        if c:
            t, rem = divmod(c, lb)
            if rem:
                return None
            q[k] = t
            for i, cb in enumerate(b):
                r[i + k] -= t * cb
    if any(r[:db]):
        return None
    return q


# --- bivariate, recursive in y over Z[x] -------------------------------------

def bi_trim(rows):
    while rows and not rows[-1]:
        rows.pop()
    return rows


def bi_mul(f, g):
    if not f or not g:
        return []
    out = [[] for _ in range(len(f) + len(g) - 1)]
    for j, gr in enumerate(g):
        if gr:
            for i, fr in enumerate(f):
                if fr:
                    out[i + j] = add(out[i + j], mul(fr, gr))
    return bi_trim(out)


def bi_sub(f, g):
    n = max(len(f), len(g))
    out = []
    for j in range(n):
        a = f[j] if j < len(f) else []
        b = g[j] if j < len(g) else []
        out.append(sub(a, b))
    return bi_trim(out)


def bi_content(rows):
    """GCD in Z[x] of the y-coefficients, primitive with positive lc."""
    g = []
    for r in rows:
        if r:
            g = gcd_poly(g, r) if g else primitive(r)[1]
            if len(g) == 1:
                break
    return g


def bi_divrows(rows, c):
    out = []
    for r in rows:
        q = exact_div(r, c)
        if q is None:
            raise ArithmeticError("row not divisible by content")
        out.append(q)
    return out


def bi_primitive(rows):
    """Divide out the Z[x]-content (including the integer content and sign)."""
    if not rows:
        return [], []
    c = bi_content(rows)
    out = bi_divrows(rows, c) if len(c) > 1 else [list(r) for r in rows]
    g = 0
    for r in out:
        g = gcd(g, content(r))
    lead = out[-1][-1]
    if lead < 0:
        g = -g
    if g != 1:
        out = [[t // g for t in r] for r in out]
    return c, out


def bi_prem(f, g):
    """Pseudo-remainder of ``f`` by ``g`` as polynomials in y over Z[x]."""
    r = [list(t) for t in f]
    dg = len(g) - 1
    lg = g[-1]
    while r and len(r) - 1 >= dg:
        lr = r[-1]
        k = len(r) - 1 - dg
        r = [mul(lg, t) for t in r]
        for i, gr in enumerate(g):
            r[i + k] = sub(r[i + k], mul(lr, gr))
        bi_trim(r)
        if r:
            _, r = bi_primitive(r)
    return r


def bi_gcd(f, g):
    """GCD in Z[x, y] (primitive PRS in y, content gcd in Z[x])."""
    if not f:
        return _normalize_sign(bi_primitive(g))
    if not g:
        return _normalize_sign(bi_primitive(f))
    cf, pf = bi_primitive(f)
    cg, pg = bi_primitive(g)
    cont = gcd_poly(cf, cg)
    if len(pf) < len(pg):
        pf, pg = pg, pf
    while pg:
        if len(pg) == 1:
            pf = [[1]]
            break
        r = bi_prem(pf, pg)
        pf, pg = pg, (bi_primitive(r)[1] if r else [])
    return bi_trim([mul(cont, row) for row in pf])


def _normalize_sign(cp):
    c, p = cp
    return bi_trim([mul(c, row) for row in p])


def kronecker_pack(rows, m):
    out = [0] * (m * (len(rows) - 1) + (len(rows[-1]) if rows else 0))
    for j, r in enumerate(rows):
        base = j * m
        for i, c in enumerate(r):
            out[base + i] += c
    return trim(out)


def kronecker_unpack(a, m):
    rows = [trim(a[j:j + m]) for j in range(0, len(a), m)]
    return bi_trim(rows)


def bi_exact_div(f, g):
    """Quotient ``f / g`` over Z[x, y] if it exists, else None."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    if not f:
        return []
    dxf = max(len(r) for r in f) - 1
    dxg = max(len(r) for r in g) - 1
    if dxg > dxf or len(g) > len(f):
        return None
    m = dxf + 1
    q = exact_div(kronecker_pack(f, m), kronecker_pack(g, m))
    if q is None:
        return None
    rows = kronecker_unpack(q, m)
    if any(len(r) - 1 > dxf - dxg for r in rows):
        return None
    if bi_mul(rows, g) != [list(r) for r in f]:
        return None
    return rows
