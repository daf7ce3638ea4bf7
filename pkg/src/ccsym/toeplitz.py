"""Joint torsion of Toeplitz compressions, an operator-theoretic route to the
Contou-Carrere symbol.

For a unit symbol f of A((t)) let T(f, n) be the n x n compression of
multiplication by f onto span(1, t, ..., t^(n-1)), with (i, j) entry the
coefficient of t^(i-j).  For symbols that are regular (no negative
exponents) the compression is exactly multiplicative, so after normalizing
both symbols to index zero the commutator matrix

    D = T(f0) T(g0) T(f0)^-1 T(g0)^-1

is the identity plus a perturbation supported near the top-left corner,
created by the nilpotent tails; determinants of corners of D stabilize once
the corner clears the tails' reach.  The joint torsion is

    tau(f, g) = (-1)^(v(f) v(g)) * a0^v(g) * b0^(-v(f)) * det(corner of D)

where v is the index of the compression (computed as a residue-field rank
deficiency) and a0, b0 are the stabilized Szego determinant ratios of the
normalized symbols.  Over a field base D is exactly the identity and the
formula collapses to the tame symbol; in general it reproduces the
Contou-Carrere symbol with global exponent +1.
"""

from __future__ import annotations

from .errors import AlgebraError, NotAUnit, SingularCompression
from .laurent import LaurentRing, LaurentSeries
from .rings import ArtinianLocal, RingDescriptor


def residue_field(ring: RingDescriptor) -> RingDescriptor:
    while isinstance(ring, ArtinianLocal):
        ring = ring.base
    return ring


def residue_value(x):
    """Image of a scalar in the residue field of its (artinian) ring."""
    ring = x.ring
    raw = x.raw
    while isinstance(ring, ArtinianLocal):
        raw = raw[0]
        ring = ring.base
    from .rings import RingValue
    return RingValue(ring, raw)


# -- dense matrices over a local scalar ring ---------------------------------

def toeplitz_matrix(f: LaurentSeries, n: int):
    """n x n compression of multiplication by f; entry (i, j) = coeff(i-j)."""
    return [[f.coeff(i - j) for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, m, k = len(a), len(b[0]), len(b)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for l in range(1, k):
                acc = acc + a[i][l] * b[l][j]
            row.append(acc)
        out.append(row)
    return out


def mat_inv(a, ring):
    """Gauss-Jordan inverse over a local ring (pivots must be units)."""
    n = len(a)
    aug = [list(row) + [ring.one() if i == j else ring.zero()
                        for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col].is_unit()), None)
        if piv is None:
            raise SingularCompression(
                f"column {col} has no unit pivot; the compression is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv_p = aug[col][col].inv()
        aug[col] = [x * inv_p for x in aug[col]]
        for r in range(n):
            if r == col:
                continue
            factor = aug[r][col]
            if factor.is_zero():
                continue
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_det(a, ring):
    """Determinant over a local ring by elimination with unit pivots.

    If some column has no unit pivot the determinant is a non-unit; it is
    still returned exactly (by cofactor expansion on the small remainder).
    """
    n = len(a)
    a = [list(row) for row in a]
    det = ring.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col].is_unit()), None)
        if piv is None:
            return det * _det_cofactor(
                [row[col:] for row in a[col:]], ring)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv_p = a[col][col].inv()
        for r in range(col + 1, n):
            factor = a[r][col] * inv_p
            if factor.is_zero():
                continue
            a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return det


def _det_cofactor(a, ring):
    n = len(a)
    if n == 0:
        return ring.one()
    if n == 1:
        return a[0][0]
    total = ring.zero()
    for j in range(n):
        if a[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * _det_cofactor(minor, ring)
        total = total + term if j % 2 == 0 else total - term
    return total


def residue_rank(a, ring) -> int:
    """Rank of the residue-field reduction of a matrix."""
    field = residue_field(ring)
    m = [[residue_value(x) for x in row] for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    rank = 0
    row = 0
    for col in range(n_cols):
        piv = next((r for r in range(row, n_rows) if not m[r][col].is_zero()),
                   None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv_p = m[row][col].inv()
        for r in range(row + 1, n_rows):
            factor = m[r][col] * inv_p
            if not factor.is_zero():
                m[r] = [x - factor * y for x, y in zip(m[r], m[row])]
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


# -- index, Szego ratio, joint torsion ----------------------------------------

def toeplitz_index(f: LaurentSeries, window: int = None) -> int:
    """Index of the compression of f, as a residue-field rank deficiency.

    Shift f into the regular range first: for h = t^K f with K + low(f) >= 0
    the n x n compression of the residue of h has rank exactly n - (K + v),
    so v is recovered from one rank computation.
    """
    if not f.is_unit():
        raise NotAUnit("index needs a unit symbol")
    shift = max(0, -(f.low if f.low is not None else 0))
    span = (f.degree() if f.coeffs else 0) + shift
    n = window if window is not None else span + 2
    h = f.shift(shift)
    rank = residue_rank(toeplitz_matrix(h, n), f.ring.base)
    return (n - rank) - shift


def szego_ratio(f0: LaurentSeries, start: int = None):
    """Stabilized ratio det T(f0, k) / det T(f0, k-1) of an index-0 symbol.

    Nilpotency makes the sequence exactly constant once k clears the reach
    of the negative tail; two consecutive equal ratios certify the limit.
    """
    ring = f0.ring
    L = ring.nil_bound
    pole = max(0, -(f0.low if f0.low is not None else 0))
    k = start if start is not None else (L - 1) * pole + 2
    limit = k + 4 * L * (pole + 1) + 8
    prev_det = mat_det(toeplitz_matrix(f0, k - 1), ring.base)
    prev_ratio = None
    while k <= limit:
        cur_det = mat_det(toeplitz_matrix(f0, k), ring.base)
        if not prev_det.is_unit():
            raise SingularCompression("Szego minor is singular")
        ratio = cur_det * prev_det.inv()
        if prev_ratio is not None and ratio == prev_ratio:
            return ratio
        prev_ratio, prev_det = ratio, cur_det
        k += 1
    raise AlgebraError("Szego ratios failed to stabilize")  # pragma: no cover


def _corner_det(f0, g0, corner: int, size: int):
    ring = f0.ring
    tf = toeplitz_matrix(f0, size)
    tg = toeplitz_matrix(g0, size)
    d = mat_mul(mat_mul(mat_mul(tf, tg), mat_inv(tf, ring.base)),
                mat_inv(tg, ring.base))
    block = [row[:corner] for row in d[:corner]]
    return mat_det(block, ring.base)


def joint_torsion(f: LaurentSeries, g: LaurentSeries,
                  corner: int = None, size: int = None):
    """Joint torsion of the Toeplitz compressions of two unit symbols.

    With explicit `corner` and `size` a single window is used; otherwise the
    corner determinant is grown until two consecutive windows agree.
    """
    ring = f.ring
    if g.ring != ring:
        raise AlgebraError("joint torsion needs symbols over one ring")
    if not f.is_unit() or not g.is_unit():
        raise NotAUnit("joint torsion needs unit symbols")
    v_f = toeplitz_index(f)
    v_g = toeplitz_index(g)
    f0 = f.shift(-v_f)
    g0 = g.shift(-v_g)
    a0 = szego_ratio(f0)
    b0 = szego_ratio(g0)
    base = ring.base
    L = ring.nil_bound
    pole = max(0, -(f0.low if f0.low is not None else 0)) + \
        max(0, -(g0.low if g0.low is not None else 0))
    if corner is not None:
        use_size = size if size is not None else corner + 2 * (L - 1) * pole + 4
        tau = _corner_det(f0, g0, corner, use_size)
    else:
        j = (L - 1) * pole + 1
        span = max((x.degree() if x.coeffs else 0) for x in (f0, g0))
        n = j + (L - 1) * pole + span + 4
        tau = None
        for _ in range(6):
            cur = _corner_det(f0, g0, j, n)
            if tau is not None and cur == tau:
                break
            tau = cur
            j += 1
            n += 2
        else:
            raise AlgebraError("corner determinants failed to stabilize")
    sign = base.from_int(-1) if (v_f * v_g) % 2 else base.one()
    return sign * (a0 ** v_g) * (b0 ** (-v_f)) * tau
