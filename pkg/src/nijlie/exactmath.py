"""Exact scalars and dense linear algebra over Q and F_p.

Vectors are plain tuples of field elements.  Rationals are ``Fraction``,
prime field elements are ints in ``[0, p)``.  Arithmetic is done with the
native operators followed by ``field.reduce``.

Canonical subspace bases: a basis is canonical when every vector has its
last nonzero coordinate (its pivot) equal to 1, all other basis vectors vanish
at that coordinate, and vectors are sorted by pivot.  This is exactly the
null-space basis read off a row-reduced echelon form (free variable set to
one), so ``kernel`` returns canonical bases without a second pass.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import random

from .errors import DimensionMismatch, FieldMismatch, NotASubspace


# ---------------------------------------------------------------- fields

class Rationals:
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def reduce(self, v):
        return Fraction(v)

    def inv(self, v):
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(v)

    def parse(self, s):
        return Fraction(str(s).strip())

    def fmt(self, v):
        return str(Fraction(v))

    def elements(self):
        raise TypeError("Q is infinite")

    def random(self, rng, bound=5):
        num = rng.randint(-bound, bound)
        den = rng.randint(1, 3)
        return Fraction(num, den)

    @property
    def order(self):
        return None

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def tag(self):
        return {"kind": "Q"}


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


class PrimeField:
    characteristic = None
    zero = 0
    one = 1

    def __init__(self, p):
        p = int(p)
        if not _is_prime(p) or p > 2**31:
            raise ValueError(f"p={p} must be a prime at most 2^31")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def reduce(self, v):
        if isinstance(v, Fraction):
            return (v.numerator * pow(v.denominator, -1, self.p)) % self.p
        return int(v) % self.p

    def inv(self, v):
        v = v % self.p
        if v == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(v, -1, self.p)

    def parse(self, s):
        s = str(s).strip()
        if "/" in s:
            return self.reduce(Fraction(s))
        return int(s) % self.p

    def fmt(self, v):
        return str(int(v) % self.p)

    def elements(self):
        return range(self.p)

    def random(self, rng, bound=None):
        return rng.randrange(self.p)

    @property
    def order(self):
        return self.p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def tag(self):
        return {"kind": "Fp", "p": self.p}


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p):
    return PrimeField(p)


def field_from_tag(tag):
    if tag.get("kind") == "Q":
        return QQ
    if tag.get("kind") == "Fp":
        return GF(int(tag["p"]))
    raise ValueError(f"unknown field tag {tag!r}")


def same_field(*fields):
    f0 = fields[0]
    for f in fields[1:]:
        if f != f0:
            raise FieldMismatch(f"{f0!r} vs {f!r}")
    return f0


# ---------------------------------------------------------------- vectors

def zero_vec(F, n):
    return (F.zero,) * n


def unit(F, n, i):
    v = [F.zero] * n
    v[i] = F.one
    return tuple(v)


def vadd(F, a, b):
    r = F.reduce
    return tuple(r(x + y) for x, y in zip(a, b))


def vsub(F, a, b):
    r = F.reduce
    return tuple(r(x - y) for x, y in zip(a, b))


def vneg(F, a):
    r = F.reduce
    return tuple(r(-x) for x in a)


def vscale(F, c, a):
    r = F.reduce
    return tuple(r(c * x) for x in a)


def vsum(F, n, vecs):
    acc = [0] * n
    for v in vecs:
        for k, x in enumerate(v):
            acc[k] += x
    return tuple(F.reduce(x) for x in acc)


def lincomb(F, n, pairs):
    """Sum of c*v over (c, v) pairs."""
    acc = [0] * n
    for c, v in pairs:
        if c == 0:
            continue
        for k, x in enumerate(v):
            if x:
                acc[k] += c * x
    return tuple(F.reduce(x) for x in acc)


def is_zero(v):
    return all(x == 0 for x in v)


# ---------------------------------------------------------------- matrices

class Matrix:
    """Immutable dense matrix.  Also serves as the linear map type: column j
    is the image of the j-th basis vector."""

    __slots__ = ("field", "rows", "cols", "data", "_hash")

    def __init__(self, field, data, rows=None, cols=None):
        data = tuple(tuple(field.reduce(x) for x in row) for row in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch(f"ragged or mis-shaped matrix data ({rows}x{cols})")
        self._set(field, data, rows, cols)

    def _set(self, field, data, rows, cols):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, k, v):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, field, data, rows, cols):
        m = object.__new__(cls)
        m._set(field, data, rows, cols)
        return m

    # constructors
    @classmethod
    def zeros(cls, field, rows, cols):
        return cls._raw(field, tuple((field.zero,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, field, n):
        return cls._raw(field, tuple(unit(field, n, i) for i in range(n)), n, n)

    @classmethod
    def from_columns(cls, field, nrows, columns):
        columns = list(columns)
        for c in columns:
            if len(c) != nrows:
                raise DimensionMismatch("column length")
        data = tuple(tuple(field.reduce(c[i]) for c in columns) for i in range(nrows))
        return cls._raw(field, data, nrows, len(columns))

    @classmethod
    def from_flat(cls, field, rows, cols, values):
        values = list(values)
        if len(values) != rows * cols:
            raise DimensionMismatch("flat length")
        data = tuple(tuple(field.reduce(values[i * cols + j]) for j in range(cols)) for i in range(rows))
        return cls._raw(field, data, rows, cols)

    @classmethod
    def diag(cls, field, entries):
        n = len(entries)
        return cls(field, [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def block(cls, field, blocks):
        """Assemble from a grid of matrices (None means zero block)."""
        heights = []
        for brow in blocks:
            h = [b.rows for b in brow if b is not None]
            heights.append(h[0] if h else 0)
        widths = []
        for j in range(len(blocks[0])):
            w = [brow[j].cols for brow in blocks if brow[j] is not None]
            widths.append(w[0] if w else 0)
        data = []
        for bi, brow in enumerate(blocks):
            for r in range(heights[bi]):
                row = []
                for bj, b in enumerate(brow):
                    if b is None:
                        row.extend([field.zero] * widths[bj])
                    else:
                        if b.rows != heights[bi] or b.cols != widths[bj]:
                            raise DimensionMismatch("block shapes")
                        row.extend(b.data[r])
                data.append(tuple(row))
        return cls._raw(field, tuple(data), sum(heights), sum(widths))

    # access
    @property
    def shape(self):
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def row(self, i):
        return self.data[i]

    def col(self, j):
        return tuple(r[j] for r in self.data)

    def columns(self):
        return [self.col(j) for j in range(self.cols)]

    def flat(self):
        return tuple(x for r in self.data for x in r)

    @property
    def T(self):
        return Matrix._raw(self.field, tuple(zip(*self.data)) if self.rows else tuple(() for _ in range(self.cols)), self.cols, self.rows)

    # arithmetic
    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} + {other.shape}")
        r = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(r(a + b) for a, b in zip(x, y)) for x, y in zip(self.data, other.data)), self.rows, self.cols)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"{self.shape} - {other.shape}")
        r = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(r(a - b) for a, b in zip(x, y)) for x, y in zip(self.data, other.data)), self.rows, self.cols)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        r = self.field.reduce
        return Matrix._raw(self.field, tuple(tuple(r(c * a) for a in x) for x in self.data), self.rows, self.cols)

    def __matmul__(self, other):
        F = self.field
        r = F.reduce
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise DimensionMismatch(f"{self.shape} @ {other.shape}")
            ocols = list(zip(*other.data)) if other.rows else [()] * other.cols
            data = tuple(tuple(r(sum(a * b for a, b in zip(row, c) if a)) for c in ocols) for row in self.data)
            return Matrix._raw(F, data, self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise DimensionMismatch(f"{self.shape} @ vector of length {len(v)}")
        return tuple(r(sum(a * b for a, b in zip(row, v) if a)) for row in self.data)

    def apply(self, v):
        return self @ v

    def kron(self, other):
        self._check(other)
        r = self.field.reduce
        data = []
        for arow in self.data:
            for brow in other.data:
                data.append(tuple(r(a * b) for a in arow for b in brow))
        return Matrix._raw(self.field, tuple(data), self.rows * other.rows, self.cols * other.cols)

    def __pow__(self, k):
        if self.rows != self.cols:
            raise DimensionMismatch("power of non-square matrix")
        out = Matrix.identity(self.field, self.rows)
        for _ in range(k):
            out = out @ self
        return out

    def is_zero(self):
        return all(x == 0 for r in self.data for x in r)

    def is_square(self):
        return self.rows == self.cols

    def rank(self):
        return len(rref(self)[1])

    def inverse(self):
        """Inverse matrix, or None when singular."""
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of non-square matrix")
        n = self.rows
        aug = Matrix._raw(self.field, tuple(self.data[i] + unit(self.field, n, i) for i in range(n)), n, 2 * n)
        R, piv = rref(aug)
        if piv[:n] != list(range(n)) or len([p for p in piv if p < n]) != n:
            return None
        return Matrix._raw(self.field, tuple(R.data[i][n:] for i in range(n)), n, n)

    def is_invertible(self):
        return self.rows == self.cols and self.rank() == self.rows

    def commutator(self, other):
        return self @ other - other @ self

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.field == other.field and self.shape == other.shape and self.data == other.data

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.field, self.rows, self.cols, self.data))
            object.__setattr__(self, "_hash", h)
        return h

    def to_lists(self):
        return [list(r) for r in self.data]

    def __repr__(self):
        rows = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix<{self.field!r} {self.rows}x{self.cols}>[{rows}]"


def mat(field, data):
    return Matrix(field, data)


def hstack(field, mats, rows=None):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, rows or 0, 0)
    return Matrix.block(field, [mats])


def vstack(field, mats, cols=None):
    mats = list(mats)
    if not mats:
        return Matrix.zeros(field, 0, cols or 0)
    return Matrix.block(field, [[m] for m in mats])


# ---------------------------------------------------------------- elimination

def rref(A):
    """Row-reduced echelon form.  Returns (R, pivot_columns)."""
    F = A.field
    red = F.reduce
    inv = F.inv
    M = [list(r) for r in A.data]
    rows, cols = A.rows, A.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        piv = None
        for i in range(r, rows):
            if M[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pr = M[r]
        ic = inv(pr[c])
        if ic != 1:
            pr = [red(x * ic) for x in pr]
            M[r] = pr
        nz = [k for k in range(c, cols) if pr[k] != 0]
        for i in range(rows):
            if i != r:
                row = M[i]
                f = row[c]
                if f != 0:
                    for k in nz:
                        row[k] = red(row[k] - f * pr[k])
        pivots.append(c)
        r += 1
    return Matrix._raw(F, tuple(tuple(x) for x in M), rows, cols), pivots


def rank(A):
    return len(rref(A)[1])


def _nullspace_from_rref(R, pivots, ncols):
    F = R.field
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.reduce(-R.data[i][f])
        basis.append(tuple(v))
    return basis


@dataclass(frozen=True)
class AffineSolution:
    status: str  # "Empty" or "Solutions"
    particular: tuple
    kernel: "Subspace"

    @property
    def empty(self):
        return self.status == "Empty"

    def __iter__(self):
        """Enumerate all solutions (finite fields only)."""
        if self.empty:
            return iter(())
        return self.kernel.affine_points(self.particular)


def solve(A, b):
    """All solutions of A x = b, as particular + kernel."""
    b = tuple(b)
    if len(b) != A.rows:
        raise DimensionMismatch(f"{A.rows} equations, rhs of length {len(b)}")
    F = A.field
    b = tuple(F.reduce(x) for x in b)
    aug = Matrix._raw(F, tuple(A.data[i] + (b[i],) for i in range(A.rows)), A.rows, A.cols + 1)
    R, piv = rref(aug)
    ker = Subspace._from_canonical(F, A.cols, _nullspace_from_rref(R, [p for p in piv if p < A.cols], A.cols))
    if piv and piv[-1] == A.cols:
        return AffineSolution("Empty", None, ker)
    x = [F.zero] * A.cols
    for i, pc in enumerate(piv):
        x[pc] = R.data[i][A.cols]
    return AffineSolution("Solutions", tuple(x), ker)


def kernel(A):
    R, piv = rref(A)
    return Subspace._from_canonical(A.field, A.cols, _nullspace_from_rref(R, piv, A.cols))


def image(A):
    return Subspace.span(A.field, A.rows, A.columns())


# ---------------------------------------------------------------- subspaces

def _trailing_pivot(v):
    for k in range(len(v) - 1, -1, -1):
        if v[k] != 0:
            return k
    return -1


class Subspace:
    """Subspace of F^n with a canonical basis (see module docstring)."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = tuple(basis)
        self.pivots = tuple(pivots)

    @classmethod
    def _from_canonical(cls, field, n, basis):
        return cls(field, n, basis, [_trailing_pivot(v) for v in basis])

    @classmethod
    def span(cls, field, n, vectors):
        vectors = [tuple(v) for v in vectors]
        for v in vectors:
            if len(v) != n:
                raise DimensionMismatch(f"vector of length {len(v)} in F^{n}")
        if not vectors:
            return cls(field, n, (), ())
        # reverse coordinates so the trailing pivot becomes a leading one
        rev = Matrix(field, [v[::-1] for v in vectors], len(vectors), n)
        R, piv = rref(rev)
        basis = [R.data[i][::-1] for i in range(len(piv))]
        basis.sort(key=_trailing_pivot)
        return cls._from_canonical(field, n, basis)

    @classmethod
    def zero(cls, field, n):
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field, n):
        return cls._from_canonical(field, n, [unit(field, n, i) for i in range(n)])

    @property
    def dim(self):
        return len(self.basis)

    def canonicalize(self):
        return Subspace.span(self.field, self.ambient, self.basis)

    def basis_matrix(self):
        return Matrix.from_columns(self.field, self.ambient, self.basis)

    def coordinates(self, v):
        """Coordinates of v in the canonical basis, or None if v is outside."""
        v = tuple(v)
        if len(v) != self.ambient:
            raise DimensionMismatch("coordinates: wrong length")
        F = self.field
        coords = tuple(v[p] for p in self.pivots)
        if lincomb(F, self.ambient, zip(coords, self.basis)) != tuple(F.reduce(x) for x in v):
            return None
        return coords

    def contains(self, v):
        return self.coordinates(v) is not None

    __contains__ = contains

    def issubset(self, other):
        return all(other.contains(b) for b in self.basis)

    def sum(self, other):
        return Subspace.span(self.field, self.ambient, self.basis + other.basis)

    def intersect(self, other):
        # x = B a = C b  <=>  [B | -C] (a,b) = 0
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        B = self.basis_matrix()
        C = other.basis_matrix()
        K = kernel(hstack(self.field, [B, -C]))
        vecs = [B @ k[: self.dim] for k in K.basis]
        return Subspace.span(self.field, self.ambient, vecs)

    def reduce(self, v):
        """Remainder of v after eliminating the pivot coordinates."""
        F = self.field
        v = list(v)
        for b, p in zip(self.basis, self.pivots):
            c = v[p]
            if c != 0:
                v = [F.reduce(x - c * y) for x, y in zip(v, b)]
        return tuple(v)

    def elements(self):
        """All vectors (finite fields only), in lexicographic coordinate order."""
        return self.affine_points(zero_vec(self.field, self.ambient))

    def affine_points(self, base):
        F = self.field
        import itertools
        for coords in itertools.product(F.elements(), repeat=self.dim):
            yield lincomb(F, self.ambient, [(1, base)] + list(zip(coords, self.basis)))

    def size(self):
        return self.field.order ** self.dim

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.field == other.field and self.ambient == other.ambient and self.basis == other.basis

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.field!r}^{self.ambient})"


def canonicalize(S):
    return S.canonicalize()


@dataclass(frozen=True)
class Quotient:
    """Z/B with representatives extending a basis of B to Z."""

    Z: Subspace
    B: Subspace
    representatives: tuple

    @property
    def dim(self):
        return len(self.representatives)

    def coordinates(self, v):
        """Coordinates of the class of v (v must lie in Z)."""
        F = self.Z.field
        if not self.Z.contains(v):
            raise NotASubspace("vector outside Z")
        cols = list(self.B.basis) + list(self.representatives)
        if not cols:
            return ()
        sol = solve(Matrix.from_columns(F, self.Z.ambient, cols), v)
        return sol.particular[self.B.dim:]

    def lift(self, coords):
        F = self.Z.field
        return lincomb(F, self.Z.ambient, zip(coords, self.representatives))


def quotient(Z, B):
    if Z.ambient != B.ambient:
        raise DimensionMismatch("ambient dimensions differ")
    if not B.issubset(Z):
        raise NotASubspace("B is not contained in Z")
    F = Z.field
    reps = []
    cur = B
    for z in Z.basis:
        if not cur.contains(z):
            reps.append(z)
            cur = Subspace.span(F, Z.ambient, cur.basis + (z,))
    return Quotient(Z, B, tuple(reps))


def quotient_dim(Z, B):
    """(dim Z - dim B, representatives)."""
    q = quotient(Z, B)
    return q.dim, list(q.representatives)


# ---------------------------------------------------------------- linearization

def linear_map_matrix(field, n_in, fn, n_out=None):
    """Matrix of a linear function given as a callable on coordinate tuples."""
    cols = [tuple(fn(unit(field, n_in, j))) for j in range(n_in)]
    if n_out is None:
        n_out = len(fn(zero_vec(field, n_in))) if n_in == 0 else len(cols[0])
    return Matrix.from_columns(field, n_out, cols)


def affine_system(field, n_in, fn):
    """For affine fn, return (A, c) with fn(x) = A x + c."""
    c = tuple(fn(zero_vec(field, n_in)))
    cols = [vsub(field, fn(unit(field, n_in, j)), c) for j in range(n_in)]
    return Matrix.from_columns(field, len(c), cols), c


def solve_affine(field, n_in, fn):
    """Solutions of fn(x) = 0 for an affine fn."""
    A, c = affine_system(field, n_in, fn)
    return solve(A, vneg(field, c))


def random_matrix(field, rows, cols, rng=None, density=1.0):
    rng = rng or random.Random()
    data = []
    for _ in range(rows):
        data.append([field.random(rng) if rng.random() < density else field.zero for _ in range(cols)])
    return Matrix(field, data, rows, cols)
