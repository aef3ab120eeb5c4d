"""Exact arithmetic on integer polynomials.

Everything here works over Z (or Q internally, with exact fractions): Horner
evaluation, formal derivatives, resultants by the subresultant remainder
sequence, primitive gcds, squarefree parts, reduction of a family of
polynomials to a distinct-degree module basis, and the triangular change of
variables that turns a system of distinct-degree polynomials into a "nice"
system after an x -> d*x + r substitution.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

NEG_INF = float("-inf")  # degree of the zero polynomial


@dataclass(frozen=True, init=False)
class IntPoly:
    """Dense integer polynomial; coeffs[i] is the coefficient of x^i.

    Canonical form: no trailing zero coefficients. Immutable and hashable.
    """

    coeffs: tuple[int, ...]

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError(f"integer coefficient expected, got {c!r}")
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, c: int, e: int) -> "IntPoly":
        return cls((0,) * e + (c,))

    # -- structure ---------------------------------------------------------

    @property
    def degree(self):
        """Degree; the zero polynomial gets the -infinity marker."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive(self) -> "IntPoly":
        """Divide out the content, keeping the sign of the polynomial."""
        c = self.content()
        if c in (0, 1):
            return self
        return IntPoly(a // c for a in self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntPoly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __sub__(self, other) -> "IntPoly":
        if isinstance(other, int):
            other = IntPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "IntPoly":
        return (-self) + other

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(c * other for c in self.coeffs)
        if not isinstance(other, IntPoly):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = IntPoly((1,))
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def eval(self, x: int) -> int:
        """Exact Horner evaluation at an integer."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPoly":
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i >= 1)

    def compose_linear(self, d: int, r: int) -> "IntPoly":
        """The polynomial p(d*x + r), expanded exactly."""
        lin = IntPoly((r, d))
        acc = IntPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + IntPoly((c,))
        return acc

    # -- display -----------------------------------------------------------

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif e == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{e}" if mag == 1 else f"{mag}*x^{e}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"IntPoly('{self}')"


@dataclass(frozen=True)
class IntMatrix:
    """Small dense integer matrix, row-major entries."""

    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match dimensions")

    @classmethod
    def from_rows(cls, rows) -> "IntMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(c for r in rows for c in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    def get(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]


@dataclass(frozen=True)
class NiceSystem:
    """Result of the nice-system transform.

    T is k x k lower triangular with every diagonal entry equal to c, and
    T * (f_i(d*x + r))_i = (g_i)_i holds as an exact polynomial identity,
    where the g_i have strictly increasing degrees and the coefficient of
    x^(deg g_i) vanishes in g_j for i != j.
    """

    T: IntMatrix
    c: int
    g: tuple[IntPoly, ...]
    d: int
    r: int


# ---------------------------------------------------------------------------
# division helpers


def _prem(a: IntPoly, b: IntPoly) -> IntPoly:
    """Pseudo-remainder: lead(b)^(deg a - deg b + 1) * a = q*b + result."""
    if b.is_zero:
        raise ZeroDivisionError("pseudo-division by zero polynomial")
    da, db = a.degree, b.degree
    if da < db:
        raise ValueError("pseudo-division needs deg a >= deg b")
    lb = b.lead
    r = a
    steps = da - db + 1
    while not r.is_zero and r.degree >= db:
        shift = r.degree - db
        r = r * lb - IntPoly.monomial(r.lead, shift) * b
        steps -= 1
    if steps > 0:
        r = r * (lb ** steps)
    return r


def _divmod_frac(a: IntPoly, b: IntPoly) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder of a by b over the rationals."""
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    rem = [Fraction(c) for c in a.coeffs]
    quo = [Fraction(0)] * max(len(a.coeffs) - len(b.coeffs) + 1, 1)
    bl = Fraction(b.lead)
    db = len(b.coeffs) - 1
    while len(rem) - 1 >= db and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) - 1 < db:
            break
        shift = len(rem) - 1 - db
        f = rem[-1] / bl
        quo[shift] = f
        for i, c in enumerate(b.coeffs):
            rem[shift + i] -= f * c
        rem.pop()
    return quo, rem


# ---------------------------------------------------------------------------
# resultants


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant of f and g via the subresultant remainder sequence.

    Agrees exactly with the Sylvester-matrix determinant; both inputs must be
    nonzero.
    """
    if f.is_zero or g.is_zero:
        raise ValueError("resultant undefined for zero polynomial")
    A, B = f, g
    s = 1
    if A.degree < B.degree:
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            s = -1
        A, B = B, A
    ca, cb = A.content(), B.content()
    A = A.primitive()
    B = B.primitive()
    t = ca ** B.degree * cb ** A.degree
    gg = 1
    h = 1
    while B.degree > 0:
        delta = A.degree - B.degree
        if A.degree % 2 == 1 and B.degree % 2 == 1:
            s = -s
        R = _prem(A, B)
        A, B = B, _scale_exact(R, gg * h ** delta)
        gg = A.lead
        if delta == 0:
            pass  # h unchanged
        elif delta == 1:
            h = gg
        else:
            h = gg ** delta // h ** (delta - 1)
    if B.is_zero:
        return 0
    da = A.degree
    if da == 0:
        hf = 1  # resultant of two constants
    else:
        hf, rem = divmod(B.lead ** da, h ** (da - 1))
        if rem:
            raise ArithmeticError("subresultant division not exact")
    return s * t * hf


def _scale_exact(p: IntPoly, div: int) -> IntPoly:
    if div == 1:
        return p
    out = []
    for c in p.coeffs:
        q, r = divmod(c, div)
        if r:
            raise ArithmeticError("subresultant division not exact")
        out.append(q)
    return IntPoly(out)


# ---------------------------------------------------------------------------
# gcds and squarefree parts


def _gcd2(a: IntPoly, b: IntPoly) -> IntPoly:
    a = a.primitive()
    b = b.primitive()
    while not b.is_zero:
        if a.degree < b.degree:
            a, b = b, a
            continue
        r = _prem(a, b)
        a, b = b, r.primitive()
    return a


def gcd_primitive(ps) -> IntPoly:
    """Primitive gcd over Q of the inputs, with positive leading coefficient."""
    nz = [p for p in ps if not p.is_zero]
    if not nz:
        raise ValueError("gcd of all-zero inputs is undefined")
    g = nz[0].primitive()
    for p in nz[1:]:
        if g.degree == 0:
            break
        g = _gcd2(g, p)
    if g.lead < 0:
        g = -g
    return g


def squarefree_part(p: IntPoly) -> IntPoly:
    """Primitive part of p / gcd(p, p'), normalized to positive lead.

    Has the same root set as p over every field of characteristic zero and
    the same roots in each ring of p-adic integers.
    """
    if p.is_zero:
        raise ValueError("squarefree part of zero is undefined")
    pp = p.primitive()
    if pp.degree == 0:
        return IntPoly((1,))
    g = gcd_primitive([pp, pp.derivative()])
    if g.degree == 0:
        out = pp
    else:
        out = _quotient_primitive(pp, g)
    if out.lead < 0:
        out = -out
    return out.primitive()


def _quotient_primitive(a: IntPoly, b: IntPoly) -> IntPoly:
    """Primitive part of the exact rational quotient a / b."""
    quo, rem = _divmod_frac(a, b)
    if any(rem):
        raise ValueError("inexact polynomial division")
    den = math.lcm(*(f.denominator for f in quo))
    ints = [int(f * den) for f in quo]
    return IntPoly(ints).primitive()


def delta_factored(factors) -> int:
    """Product of resultant(h, h') over the given irreducible factors.

    Irreducibility is the caller's responsibility; this verifies that each
    factor is nonconstant and squarefree and that the factors are pairwise
    coprime, and rejects otherwise.
    """
    hs = list(factors)
    if not hs:
        raise ValueError("input not a valid irreducible factorization")
    for h in hs:
        if h.is_zero or h.degree < 1:
            raise ValueError("input not a valid irreducible factorization")
        if gcd_primitive([h, h.derivative()]).degree != 0:
            raise ValueError("input not a valid irreducible factorization")
    for i in range(len(hs)):
        for j in range(i + 1, len(hs)):
            if gcd_primitive([hs[i], hs[j]]).degree != 0:
                raise ValueError("input not a valid irreducible factorization")
    out = 1
    for h in hs:
        out *= resultant(h, h.derivative())
    return out


# ---------------------------------------------------------------------------
# distinct-degree module basis


def distinct_degree_basis(hs) -> tuple[list[IntPoly], IntMatrix]:
    """Reduce polynomials to a basis of their Z-module with distinct degrees.

    Returns (basis, M) where the basis polynomials have strictly increasing
    degrees, generate the same Z-module of polynomials as the inputs, and
    M is the k x s integer matrix with (h_i) = M * (basis_j).
    """
    hs = list(hs)
    if not hs or all(h.is_zero for h in hs):
        raise ValueError("need at least one nonzero polynomial")
    width = max(len(h.coeffs) for h in hs if not h.is_zero)
    # rows in descending-degree column order
    rows = [[h.coeff(width - 1 - c) for c in range(width)] for h in hs if not h.is_zero]

    # integer row echelon (Hermite-style)
    pivot_rows: list[list[int]] = []
    pivot_cols: list[int] = []
    work = [r[:] for r in rows]
    for col in range(width):
        live = [r for r in work if r[col] != 0]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            small = live[0]
            for r in live[1:]:
                q = r[col] // small[col]
                for c in range(width):
                    r[c] -= q * small[c]
            live = [r for r in work if r[col] != 0]
        piv = live[0]
        if piv[col] < 0:
            for c in range(width):
                piv[c] = -piv[c]
        pivot_rows.append(piv)
        pivot_cols.append(col)
        work = [r for r in work if r is not piv]
    # canonical reduction: entries in a pivot column of earlier rows lie in [0, pivot)
    for j in range(len(pivot_rows)):
        pc = pivot_cols[j]
        pv = pivot_rows[j][pc]
        for i in range(j):
            q = pivot_rows[i][pc] // pv
            if q:
                for c in range(width):
                    pivot_rows[i][c] -= q * pivot_rows[j][c]

    basis = [IntPoly(reversed(r)) for r in pivot_rows]
    basis.reverse()  # ascending degree
    by_degree = {b.degree: idx for idx, b in enumerate(basis)}

    m_rows = []
    for h in hs:
        coeffs = [0] * len(basis)
        w = h
        while not w.is_zero:
            idx = by_degree.get(w.degree)
            if idx is None:
                raise ArithmeticError("module reduction failed")
            q, rem = divmod(w.lead, basis[idx].lead)
            if rem:
                raise ArithmeticError("module reduction failed")
            coeffs[idx] = q
            w = w - basis[idx] * q
        m_rows.append(coeffs)
    return basis, IntMatrix.from_rows(m_rows)


# ---------------------------------------------------------------------------
# nice-system transform


def _fp_add(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _fp_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _fp_eval(a: list[Fraction], x: int) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def nice_transform(fs, d: int, r: int) -> NiceSystem:
    """Turn distinct-degree polynomials into a nice system after x -> d*x + r.

    The constant c is the least positive integer that makes the triangular
    elimination integral uniformly in d and r, so the same c comes back for
    every substitution applied to the same input system.
    """
    fs = [f for f in fs]
    k = len(fs)
    if k == 0:
        raise ValueError("need at least one polynomial")
    if any(f.is_zero for f in fs):
        raise ValueError("zero polynomial in system")
    degs = [f.degree for f in fs]
    if any(degs[i] >= degs[i + 1] for i in range(k - 1)):
        raise ValueError("degrees must be strictly increasing")
    if not isinstance(d, int) or d < 1:
        raise ValueError("d must be a positive integer")

    # taylor[j][s]: coefficient of y^s in f_j(y + r), as a polynomial in r
    taylor: list[list[list[Fraction]]] = []
    for f in fs:
        per_s = []
        for s_exp in range(f.degree + 1):
            cs = [Fraction(f.coeff(t) * math.comb(t, s_exp))
                  for t in range(s_exp, f.degree + 1)]
            per_s.append(cs)  # coefficient of r^(t - s)
        taylor.append(per_s)

    one = [Fraction(1)]
    t_rows: list[list[list[Fraction]]] = [[[] for _ in range(k)] for _ in range(k)]
    for i in range(k):
        t_rows[i][i] = list(one)
        for j in range(i - 1, -1, -1):
            target = degs[j]
            acc: list[Fraction] = []
            for jp in range(j + 1, i + 1):
                if degs[jp] >= target and t_rows[i][jp]:
                    acc = _fp_add(acc, _fp_mul(t_rows[i][jp], taylor[jp][target]))
            lead_j = fs[j].lead
            t_rows[i][j] = [-c / lead_j for c in acc]

    c = 1
    for i in range(k):
        for j in range(i + 1):
            for coef in t_rows[i][j]:
                c = math.lcm(c, coef.denominator)

    entries = []
    for i in range(k):
        for j in range(k):
            if j > i:
                entries.append(0)
            else:
                val = _fp_eval(t_rows[i][j], r) * c
                if val.denominator != 1:
                    raise ArithmeticError("elimination did not clear denominators")
                entries.append(int(val))
    T = IntMatrix(k, k, tuple(entries))

    subs = [f.compose_linear(d, r) for f in fs]
    g = []
    for i in range(k):
        acc = IntPoly()
        for j in range(i + 1):
            acc = acc + subs[j] * T.get(i, j)
        g.append(acc)

    for i in range(k):
        if g[i].degree != degs[i] or g[i].lead != c * d ** degs[i] * fs[i].lead:
            raise ArithmeticError("nice transform lost a leading term")
        for j in range(k):
            if j != i and g[j].coeff(degs[i]) != 0:
                raise ArithmeticError("nice transform failed to eliminate a term")
    return NiceSystem(T=T, c=c, g=tuple(g), d=d, r=r)
