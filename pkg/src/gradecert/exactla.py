"""Exact linear algebra over Q and F_p, plus integer lattices in Hermite normal form.

Vectors are sparse ``dict[int, scalar]`` with no stored zeros.  Over Q the
scalars are ``gmpy2.mpq``; over F_p they are Python ints in ``range(p)``.
Matrices (:class:`ExactMatrix`) are immutable tuples of such rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .errors import MixedFieldError, ShapeMismatch

Vector = dict


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class Field:
    """Q (``p is None``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"F_p needs a prime modulus, got {p}")
        self.p = p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def spec_name(self) -> str:
        return "Q" if self.p is None else f"Fp:{self.p}"

    @classmethod
    def from_spec_name(cls, name: str) -> "Field":
        if name == "Q":
            return QQ
        if name.startswith("Fp:"):
            return GF(int(name[3:]))
        raise ValueError(f"unknown field {name!r}")

    @property
    def zero(self):
        return mpq(0) if self.p is None else 0

    @property
    def one(self):
        return mpq(1) if self.p is None else 1

    def __call__(self, x):
        """Coerce ints, strings ``"n/d"``, Fractions, mpq or :class:`Residue`."""
        if isinstance(x, Residue):
            if self.p != x.p:
                raise MixedFieldError(f"residue mod {x.p} used in {self!r}")
            return x.value
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, float):
                raise TypeError("floating point values are not exact")
            if isinstance(x, Fraction):
                return mpq(x.numerator, x.denominator)
            return mpq(x)
        if isinstance(x, (Fraction,)) or type(x).__name__ == "mpq":
            num, den = int(x.numerator), int(x.denominator)
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes mod {self.p}")
            return num * pow(den, -1, self.p) % self.p
        if isinstance(x, float):
            raise TypeError("floating point values are not exact")
        return int(x) % self.p

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p is None:
            return 1 / x
        return pow(int(x), -1, self.p)

    def fmt(self, x) -> str:
        if self.p is not None:
            return str(int(x))
        x = mpq(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


@dataclass(frozen=True)
class Residue:
    """A residue class mod a prime; used to tag F_p inputs explicitly."""

    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)


# ---------------------------------------------------------------------------
# sparse vector kernels


def axpy(y: dict, a, x: Mapping, p: int | None) -> None:
    """In place ``y += a*x``."""
    if not a:
        return
    if p is None:
        for k, v in x.items():
            s = y.get(k, 0) + a * v
            if s:
                y[k] = s
            else:
                y.pop(k, None)
    else:
        for k, v in x.items():
            s = (y.get(k, 0) + a * v) % p
            if s:
                y[k] = s
            else:
                y.pop(k, None)


def scaled(x: Mapping, a, p: int | None) -> dict:
    if not a:
        return {}
    if p is None:
        return {k: a * v for k, v in x.items()}
    return {k: a * v % p for k, v in x.items() if a * v % p}


def add_into(y: dict, x: Mapping, p: int | None) -> None:
    axpy(y, 1, x, p)


def clean(v: Mapping, field: Field) -> dict:
    out = {}
    for k, x in v.items():
        x = field(x)
        if x:
            out[k] = x
    return out


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a subspace.

    Rows are kept fully reduced with unit pivots, so ``reduce`` is a single
    pass and the pivot set equals that of the unique RREF of the span.
    With ``track=True`` every row carries the combination of inserted
    vectors (by tag) that produced it; this is how kernels are computed.
    """

    __slots__ = ("field", "p", "rows", "combos", "track")

    def __init__(self, field: Field, track: bool = False):
        self.field = field
        self.p = field.p
        self.rows: dict[int, dict] = {}
        self.combos: dict[int, dict] | None = {} if track else None
        self.track = track

    def __len__(self):
        return len(self.rows)

    @property
    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def basis(self) -> list[dict]:
        return [self.rows[c] for c in sorted(self.rows)]

    def reduce(self, v: Mapping) -> dict:
        w = dict(v)
        rows, p = self.rows, self.p
        hits = [(c, w[c]) for c in w if c in rows]
        for c, a in hits:
            axpy(w, -a if p is None else (-a) % p, rows[c], p)
        return w

    def __contains__(self, v) -> bool:
        return not self.reduce(v)

    def coords(self, v: Mapping) -> dict:
        """Coefficients (keyed by pivot) of ``v``, assumed to lie in the span."""
        return {c: a for c, a in v.items() if c in self.rows}

    def add(self, v: Mapping, tag=None) -> bool:
        """Insert ``v``; return True if it enlarged the span.

        When tracking, a dependent vector returns False and its relation is
        available from :meth:`add_tracked`.
        """
        return self.add_tracked(v, tag)[0]

    def add_tracked(self, v: Mapping, tag=None):
        p = self.p
        rows = self.rows
        w = dict(v)
        combo = None
        if self.track:
            combo = {tag: self.field.one}
        hits = [(c, w[c]) for c in w if c in rows]
        for c, a in hits:
            na = -a if p is None else (-a) % p
            axpy(w, na, rows[c], p)
            if combo is not None:
                axpy(combo, na, self.combos[c], p)
        if not w:
            return False, combo
        piv = min(w)
        inv = self.field.inv(w[piv])
        w = scaled(w, inv, p)
        if combo is not None:
            combo = scaled(combo, inv, p)
        for c, r in rows.items():
            a = r.get(piv)
            if a:
                na = -a if p is None else (-a) % p
                axpy(r, na, w, p)
                if combo is not None:
                    axpy(self.combos[c], na, combo, p)
        rows[piv] = w
        if combo is not None:
            self.combos[piv] = combo
        return True, None

    def copy(self) -> "Echelon":
        e = Echelon(self.field, self.track)
        e.rows = {c: dict(r) for c, r in self.rows.items()}
        if self.track:
            e.combos = {c: dict(r) for c, r in self.combos.items()}
        return e


def span_echelon(vectors: Iterable[Mapping], field: Field) -> Echelon:
    e = Echelon(field)
    for v in vectors:
        e.add(v)
    return e


def kernel_vectors(images: Sequence[Mapping], field: Field) -> list[dict]:
    """Basis (in RREF) of ``{c : sum_i c_i images[i] = 0}``."""
    e = Echelon(field, track=True)
    rels = []
    for i, img in enumerate(images):
        ok, combo = e.add_tracked(img, i)
        if not ok:
            rels.append(combo)
    return span_echelon(rels, field).basis()


def rank_of(vectors: Iterable[Mapping], field: Field) -> int:
    return len(span_echelon(vectors, field))


# ---------------------------------------------------------------------------
# ExactMatrix


def _infer_field(entries) -> Field:
    primes = {x.p for x in entries if isinstance(x, Residue)}
    if len(primes) > 1:
        raise MixedFieldError(f"entries from several fields: {sorted(primes)}")
    if primes:
        if any(not isinstance(x, Residue) and x != 0 for x in entries):
            raise MixedFieldError("rational entries mixed with residues")
        return GF(primes.pop())
    return QQ


class ExactMatrix:
    """Immutable sparse matrix over Q or F_p."""

    __slots__ = ("nrows", "ncols", "field", "_rows")

    def __init__(self, rows: Sequence[Mapping[int, object]], ncols: int, field: Field):
        self.nrows = len(rows)
        self.ncols = ncols
        self.field = field
        out = []
        for r in rows:
            d = clean(r, field)
            if d and (min(d) < 0 or max(d) >= ncols):
                raise ShapeMismatch(f"column index out of range 0..{ncols - 1}")
            out.append(d)
        self._rows = tuple(out)

    @classmethod
    def _raw(cls, rows, ncols, field) -> "ExactMatrix":
        m = object.__new__(cls)
        m.nrows, m.ncols, m.field, m._rows = len(rows), ncols, field, tuple(rows)
        return m

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], field: Field | None = None) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        if field is None:
            field = _infer_field([x for r in rows for x in r])
        return cls([{j: x for j, x in enumerate(r)} for r in rows], ncols, field)

    @classmethod
    def from_triplets(cls, nrows: int, ncols: int, triplets, field: Field) -> "ExactMatrix":
        rows = [dict() for _ in range(nrows)]
        for i, j, x in triplets:
            rows[i][j] = field(rows[i].get(j, 0)) + field(x)
        return cls(rows, ncols, field)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Mapping], ncols: int, field: Field) -> "ExactMatrix":
        return cls._raw([dict(v) for v in vectors], ncols, field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "ExactMatrix":
        return cls._raw([{i: field.one} for i in range(n)], n, field)

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: Field) -> "ExactMatrix":
        return cls._raw([{} for _ in range(nrows)], ncols, field)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> dict:
        return dict(self._rows[i])

    def rows(self) -> list[dict]:
        return [dict(r) for r in self._rows]

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.field.zero)

    def dense(self) -> list[list]:
        z = self.field.zero
        return [[r.get(j, z) for j in range(self.ncols)] for r in self._rows]

    def triplets(self) -> list[tuple[int, int, object]]:
        return [(i, j, x) for i, r in enumerate(self._rows) for j, x in sorted(r.items())]

    def transpose(self) -> "ExactMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, r in enumerate(self._rows):
            for j, x in r.items():
                cols[j][i] = x
        return ExactMatrix._raw(cols, self.nrows, self.field)

    T = property(transpose)

    def _check(self, other: "ExactMatrix"):
        if other.field != self.field:
            raise MixedFieldError(f"{self.field!r} vs {other.field!r}")

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        p = self.field.p
        out = []
        for r in self._rows:
            acc: dict = {}
            for k, a in r.items():
                axpy(acc, a, other._rows[k], p)
            out.append(acc)
        return ExactMatrix._raw(out, other.ncols, self.field)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        out = []
        for a, b in zip(self._rows, other._rows):
            d = dict(a)
            axpy(d, 1, b, self.field.p)
            out.append(d)
        return ExactMatrix._raw(out, self.ncols, self.field)

    def __neg__(self) -> "ExactMatrix":
        p = self.field.p
        return ExactMatrix._raw([scaled(r, -1 if p is None else p - 1, p) for r in self._rows],
                                self.ncols, self.field)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExactMatrix) and other.field == self.field
                and other.shape == self.shape and all(a == b for a, b in zip(self._rows, other._rows)))

    def __hash__(self):
        return hash((self.shape, self.field, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.fmt(x) for x in r) for r in self.dense())
        return f"ExactMatrix({self.field!r}, [{body}])"

    def is_zero(self) -> bool:
        return not any(self._rows)

    @property
    def rank(self) -> int:
        return rank_of(self._rows, self.field)


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    e = span_echelon(m._rows, m.field)
    pivots = e.pivots
    rows = [e.rows[c] for c in pivots] + [{} for _ in range(m.nrows - len(pivots))]
    return ExactMatrix._raw(rows, m.ncols, m.field), len(pivots), pivots


def nullspace(m: ExactMatrix) -> ExactMatrix:
    """Rows spanning ``{x : m x = 0}``, in RREF."""
    e = span_echelon(m._rows, m.field)
    pivots = set(e.rows)
    p = m.field.p
    out = []
    for f in range(m.ncols):
        if f in pivots:
            continue
        v = {f: m.field.one}
        for c, r in e.rows.items():
            a = r.get(f)
            if a:
                v[c] = -a if p is None else (-a) % p
        out.append(v)
    return ExactMatrix._raw(span_echelon(out, m.field).basis(), m.ncols, m.field)


def solve_and_nullspace(m: ExactMatrix, rhs: ExactMatrix | Sequence | None = None):
    """Return ``(particular, nullspace_basis)``.

    ``particular`` is an ``ncols x k`` matrix with ``m @ particular == rhs``
    (free variables set to zero), or ``None`` when some column of ``rhs`` is
    inconsistent or no ``rhs`` was given.
    """
    ns = nullspace(m)
    if rhs is None:
        return None, ns
    if not isinstance(rhs, ExactMatrix):
        rhs = ExactMatrix.from_dense([[x] for x in rhs], m.field)
    if rhs.field != m.field:
        raise MixedFieldError(f"{m.field!r} vs {rhs.field!r}")
    if rhs.nrows != m.nrows:
        raise ShapeMismatch(f"rhs has {rhs.nrows} rows, matrix has {m.nrows}")
    n = m.ncols
    cols = []
    rt = rhs.transpose()
    for b in rt._rows:
        aug = []
        for i, r in enumerate(m._rows):
            d = dict(r)
            if i in b:
                d[n] = b[i]
            aug.append(d)
        e = span_echelon(aug, m.field)
        if n in e.rows:
            return None, ns
        cols.append({c: r[n] for c, r in e.rows.items() if n in r})
    sol = [dict() for _ in range(n)]
    for j, col in enumerate(cols):
        for i, x in col.items():
            sol[i][j] = x
    return ExactMatrix._raw(sol, rhs.ncols, m.field), ns


def inverse(m: ExactMatrix) -> ExactMatrix:
    if m.nrows != m.ncols:
        raise ShapeMismatch("inverse of a non-square matrix")
    sol, ns = solve_and_nullspace(m, ExactMatrix.identity(m.nrows, m.field))
    if sol is None or ns.nrows:
        raise ZeroDivisionError("singular matrix")
    return sol


# ---------------------------------------------------------------------------
# integer lattices


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return x0, y0, a


def _hermite(rows: list[list[int]], ncols: int, transform: bool = False):
    """Row-style HNF; returns (H, U, rank) with ``U @ rows == H``.

    Nonzero rows of H come first, pivots strictly increasing and positive,
    entries above each pivot reduced into ``[0, pivot)``.
    """
    h = [list(r) for r in rows]
    m = len(h)
    u = [[int(i == j) for j in range(m)] for i in range(m)] if transform else None
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = h[i][c]
            if b == 0:
                continue
            a = h[r][c]
            x, y, g = _xgcd(a, b)
            pa, pb = a // g, b // g
            hr, hi = h[r], h[i]
            h[r] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [-pb * s + pa * t for s, t in zip(hr, hi)]
            if u is not None:
                ur, ui = u[r], u[i]
                u[r] = [x * s + y * t for s, t in zip(ur, ui)]
                u[i] = [-pb * s + pa * t for s, t in zip(ur, ui)]
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-s for s in h[r]]
            if u is not None:
                u[r] = [-s for s in u[r]]
        piv = h[r][c]
        for i in range(r):
            q = h[i][c] // piv
            if q:
                h[i] = [s - q * t for s, t in zip(h[i], h[r])]
                if u is not None:
                    u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
    return h, u, r


@dataclass(frozen=True)
class IntegerLattice:
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        """Membership test for an integer (or rational) vector."""
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        v = [int(Fraction(x)) for x in v]
        h, _, r = _hermite([list(b) for b in self.basis] + [v], self.ambient_dim)
        return r == self.rank and h[:r] == [list(b) for b in self.basis]

    def as_matrix(self) -> ExactMatrix:
        return ExactMatrix.from_dense([list(b) for b in self.basis], QQ) if self.basis else \
            ExactMatrix.zeros(0, self.ambient_dim, QQ)


def hnf(basis: Sequence[Sequence[int]], ambient_dim: int | None = None) -> IntegerLattice:
    """Canonical Hermite-normal-form basis of the row span."""
    rows = [[int(x) for x in r] for r in basis]
    n = ambient_dim if ambient_dim is not None else (len(rows[0]) if rows else 0)
    h, _, r = _hermite(rows, n)
    return IntegerLattice(n, tuple(tuple(row) for row in h[:r]))


def standard_lattice(n: int) -> IntegerLattice:
    return IntegerLattice(n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _clear_denominators(v: Iterable) -> list[int]:
    v = [Fraction(int(mpq(x).numerator), int(mpq(x).denominator)) for x in v]
    den = 1
    for x in v:
        den = den * x.denominator // _gcd(den, x.denominator)
    return [int(x * den) for x in v]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def integer_left_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Z-basis of ``{c in Z^m : c @ rows == 0}``."""
    m = len(rows)
    h, u, r = _hermite(rows, ncols, transform=True)
    return [u[i] for i in range(r, m)]


def lattice_intersect_subspace(lat: IntegerLattice, v: ExactMatrix) -> IntegerLattice:
    """All points of ``lat`` lying in the Q-span of the rows of ``v``."""
    n = lat.ambient_dim
    if v.ncols != n:
        raise ShapeMismatch(f"subspace in Q^{v.ncols}, lattice in Z^{n}")
    if lat.rank == 0:
        return IntegerLattice(n, ())
    vq = ExactMatrix([{j: x for j, x in r.items()} for r in v.rows()], n, QQ)
    ann = nullspace(vq)  # rows y with V y = 0
    if ann.nrows == 0:
        return lat
    # c @ B lies in span(V) iff (c @ B) @ ann^T == 0
    cond = []
    for b in lat.basis:
        cond.append([sum((mpq(b[j]) * a.get(j, 0) for j in range(n)), mpq(0)) for a in ann.rows()])
    # clear denominators column-wise (scaling a column does not change the kernel)
    cols = list(zip(*cond))
    cols = [_clear_denominators(c) for c in cols]
    int_rows = [list(r) for r in zip(*cols)]
    ker = integer_left_kernel(int_rows, len(cols))
    pts = [[sum(c[i] * lat.basis[i][j] for i in range(lat.rank)) for j in range(n)] for c in ker]
    return hnf(pts, n)


def lattice_complement(sub: IntegerLattice, sup: IntegerLattice) -> list[tuple[int, ...]]:
    """Vectors completing a basis of saturated ``sub`` to a basis of ``sup``.

    Raises ValueError if ``sub`` is not a saturated sublattice of ``sup``.
    """
    t = sup.rank
    k = sub.rank
    if k == 0:
        return list(sup.basis)
    supm = ExactMatrix.from_dense([list(b) for b in sup.basis], QQ)
    coords = []
    for s in sub.basis:
        # solve c @ supm = s, i.e. supm^T c^T = s^T
        sol, _ = solve_and_nullspace(supm.transpose(), list(s))
        if sol is None:
            raise ValueError("sublattice not contained in superlattice span")
        c = [sol[i, 0] for i in range(t)]
        if any(mpq(x).denominator != 1 for x in c):
            raise ValueError("sublattice not contained in superlattice")
        coords.append([int(x) for x in c])
    ct = [[coords[i][j] for i in range(k)] for j in range(t)]  # t x k
    h, u, r = _hermite(ct, k, transform=True)
    det = 1
    for i in range(k):
        det *= h[i][i]
    if r != k or abs(det) != 1:
        raise ValueError("sublattice is not saturated")
    um = ExactMatrix.from_dense(u, QQ)
    w = inverse(um).transpose()
    out = []
    for i in range(k, t):
        row = [int(w[i, j]) for j in range(t)]
        vec = tuple(sum(row[j] * sup.basis[j][c] for j in range(t)) for c in range(sup.ambient_dim))
        if next(x for x in vec if x) < 0:
            vec = tuple(-x for x in vec)
        out.append(vec)
    return out


class Coordinates:
    """Coordinates of vectors with respect to a fixed (independent) basis."""

    def __init__(self, basis: Sequence[Mapping], field: Field):
        self.field = field
        self.basis = [dict(b) for b in basis]
        self._ech = Echelon(field, track=True)
        for n, b in enumerate(self.basis):
            ok, _ = self._ech.add_tracked(b, n)
            if not ok:
                raise ValueError(f"basis vector {n} is dependent on earlier ones")

    def __call__(self, v: Mapping) -> dict:
        """Coefficients of ``v``; raises ValueError if ``v`` is outside the span."""
        ech = self._ech
        if ech.reduce(v):
            raise ValueError("vector outside the span")
        p = self.field.p
        out: dict = {}
        for c, a in v.items():
            if c in ech.rows:
                axpy(out, a, ech.combos[c], p)
        return out

    def contains(self, v: Mapping) -> bool:
        return not self._ech.reduce(v)
