"""The extension field F_{p^n} = F_p[x]/(f) and the operations built on it.

ExtField fixes an odd prime p together with a monic irreducible modulus
and exposes element arithmetic, the quadratic-residue test, square roots
obtained from a linear system over F_p, minimal polynomials, the map
x -> (x + 1/x)/2 on the projective line, and the equal-degree
factorization of the doubling transform of an irreducible polynomial.

Elements carry their coordinates in the power basis 1, b, ..., b^(n-1)
of the residue class b of x.  The point at infinity of the projective
line is the module-level singleton INFINITY.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _arith
from .errors import InternalInvariantError, NonResidueError
from .fp import fp_sqrt, legendre, require_odd_prime, solve_nullspace
from .poly import FpPoly

# Degree times modulus bit length below which the residue test simply
# raises to the (q-1)/2 power; above it the norm route through composed
# Frobenius powers is used.  Both compute the same predicate.
_DIRECT_RESIDUE_BITS = 512


class ExtField:
    """F_p[x]/(modulus) with cached reduction and Frobenius data."""

    def __init__(self, p: int, modulus: FpPoly, *, check_modulus: bool = True):
        require_odd_prime(p)
        if modulus.p != p:
            raise ValueError("modulus polynomial has a different characteristic")
        if not modulus.is_monic or modulus.degree < 1:
            raise ValueError("modulus must be monic of degree >= 1")
        if check_modulus and not modulus.is_irreducible():
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.modulus = modulus
        self.n = modulus.degree
        self.q = p ** self.n
        self._ctx = _arith.ModCtx(list(modulus.coeffs), p)
        self._frob_matrix = None

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, modulus={str(self.modulus)!r})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, ExtField)
                and self.p == other.p and self.modulus == other.modulus)

    def __hash__(self) -> int:
        return hash((self.p, self.modulus))

    # -- element constructors ---------------------------------------------

    def element(self, coords) -> "ExtElem":
        """Element from an iterable of at most n coordinates (low power first)."""
        c = [int(v) % self.p for v in coords]
        if len(c) > self.n:
            raise ValueError(f"got {len(c)} coordinates for a degree-{self.n} field")
        c += [0] * (self.n - len(c))
        return ExtElem(self, tuple(c))

    def scalar(self, a: int) -> "ExtElem":
        return self.element([a])

    @property
    def zero(self) -> "ExtElem":
        return self.element([])

    @property
    def one(self) -> "ExtElem":
        return self.element([1])

    @property
    def beta(self) -> "ExtElem":
        """The residue class of x, a root of the modulus."""
        return ExtElem(self, tuple(self._pad(self._ctx.reduce([0, 1]))))

    def from_poly(self, f: FpPoly) -> "ExtElem":
        if f.p != self.p:
            raise ValueError("polynomial has a different characteristic")
        return ExtElem(self, tuple(self._pad(self._ctx.reduce(list(f.coeffs)))))

    def _pad(self, c: list[int]) -> list[int]:
        return c + [0] * (self.n - len(c))

    def _make(self, c: list[int]) -> "ExtElem":
        return ExtElem(self, tuple(self._pad(c)))

    # -- linear structure ----------------------------------------------------

    def frobenius_matrix(self) -> list[list[int]]:
        """n x n matrix F with column j the coordinates of b**(p*j).

        Applying F to a coordinate vector computes the p-power map, which
        is F_p-linear.  Built once per field and cached.
        """
        if self._frob_matrix is None:
            ctx = self._ctx
            xp = ctx.frob_base()
            cols = [[1] + [0] * (self.n - 1)]
            cur = [1]
            for _ in range(self.n - 1):
                cur = ctx.mulmod(cur, xp)
                cols.append(self._pad(cur))
            self._frob_matrix = [[cols[j][i] for j in range(self.n)]
                                 for i in range(self.n)]
        return self._frob_matrix

    def multiplication_matrix(self, a: "ExtElem") -> list[list[int]]:
        """n x n matrix M with column j the coordinates of a * b**j."""
        ctx = self._ctx
        cols = []
        cur = list(a.coords)
        for j in range(self.n):
            if j:
                cur = ctx.mulmod(cur, [0, 1])
            cols.append(self._pad(cur))
        return [[cols[j][i] for j in range(self.n)] for i in range(self.n)]

    # -- predicates and roots --------------------------------------------

    def is_square(self, u: "ExtElem") -> bool:
        """Whether nonzero u satisfies u**((q-1)/2) = 1.

        Small fields test the power directly; larger ones reduce to the
        Legendre symbol of the norm of u in F_p, which is the same
        quantity because (q-1)/2 = ((p-1)/2) * (q-1)/(p-1).
        """
        self._own(u)
        if u.is_zero:
            raise ValueError("zero has no quadratic character")
        if self.n * self.p.bit_length() <= _DIRECT_RESIDUE_BITS:
            return self._ctx.powmod(list(u.coords), (self.q - 1) // 2) == [1]
        return legendre(self._ctx.norm_to_prime(list(u.coords)), self.p) == 1

    def sqrt(self, a: "ExtElem") -> "ExtElem":
        """Square root of a nonzero square a.

        Sets A = a**((p-1)/2) and solves c**p = A*c as an n x n linear
        system over F_p; the solution line gives c with c**2/a in F_p,
        and dividing c by a square root of that constant yields the
        result.  The kernel vector is normalized (first nonzero
        coordinate 1) so the output is deterministic.
        """
        self._own(a)
        if a.is_zero or not self.is_square(a):
            raise NonResidueError(f"{a} is not a nonzero square in {self!r}")
        p = self.p
        cap_a = a ** ((p - 1) // 2)
        frob = self.frobenius_matrix()
        mult = self.multiplication_matrix(cap_a)
        system = [[(frob[i][j] - mult[i][j]) % p for j in range(self.n)]
                  for i in range(self.n)]
        kernel = solve_nullspace(system, p)
        if len(kernel) != 1:
            raise InternalInvariantError(
                f"square-root system has kernel dimension {len(kernel)}, expected 1")
        vec = kernel[0]
        lead = next(v for v in vec if v)
        inv = pow(lead, -1, p)
        c = self.element([v * inv % p for v in vec])
        t = c * c / a
        if any(t.coords[1:]):
            raise InternalInvariantError("c^2/a escaped the prime subfield")
        d = fp_sqrt(t.coords[0], p)
        root = c * pow(d, -1, p)
        if root * root != a:
            raise InternalInvariantError("computed square root fails to square back")
        return root

    def frobenius(self, u: "ExtElem") -> "ExtElem":
        """u**p, computed by composing with x**p mod f."""
        self._own(u)
        ctx = self._ctx
        return self._make(ctx.compose(_arith.trim(list(u.coords)), ctx.frob_base()))

    def minimal_poly(self, u: "ExtElem") -> FpPoly:
        """Minimal polynomial of u over F_p: the product of x - v over the
        distinct Frobenius conjugates v of u."""
        self._own(u)
        orbit = [u]
        v = self.frobenius(u)
        while v != u:
            orbit.append(v)
            v = self.frobenius(v)
            if len(orbit) > self.n:
                raise InternalInvariantError("Frobenius orbit exceeded the field degree")
        if self.n % len(orbit):
            raise InternalInvariantError("orbit size does not divide the field degree")
        # product of linear factors, coefficients living in the field
        coeffs = [self.one]
        for v in orbit:
            nxt = [self.zero] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] = nxt[i + 1] + c
                nxt[i] = nxt[i] - c * v
            coeffs = nxt
        flat = []
        for c in coeffs:
            if any(c.coords[1:]):
                raise InternalInvariantError("minimal polynomial coefficient not in F_p")
            flat.append(c.coords[0])
        return FpPoly(flat, self.p)

    def _own(self, u: "ExtElem") -> None:
        if u.field is not self and u.field != self:
            raise ValueError("element belongs to a different field")


class ExtElem:
    """Element of an ExtField, immutable coordinate tuple of length n."""

    __slots__ = ("field", "coords")

    def __init__(self, field: ExtField, coords: tuple[int, ...]):
        if len(coords) != field.n:
            raise ValueError(f"need exactly {field.n} coordinates")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, *_):
        raise AttributeError("ExtElem is immutable")

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def _same(self, other) -> "ExtElem":
        if isinstance(other, ExtElem):
            if other.field != self.field:
                raise ValueError("elements from different fields")
            return other
        if isinstance(other, int):
            return self.field.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtElem(self.field, tuple((a + b) % p for a, b in
                                         zip(self.coords, other.coords)))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        p = self.field.p
        return ExtElem(self.field, tuple((a - b) % p for a, b in
                                         zip(self.coords, other.coords)))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        p = self.field.p
        return ExtElem(self.field, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            p = self.field.p
            k = other % p
            return ExtElem(self.field, tuple(a * k % p for a in self.coords))
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        f = self.field
        prod = f._ctx.mulmod(_arith.trim(list(self.coords)),
                             _arith.trim(list(other.coords)))
        return f._make(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._same(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        f = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return f._make(f._ctx.powmod(_arith.trim(list(self.coords)), e))

    def inverse(self) -> "ExtElem":
        if self.is_zero:
            raise ZeroDivisionError("inversion of zero field element")
        f = self.field
        return f._make(f._ctx.invmod(_arith.trim(list(self.coords))))

    def __eq__(self, other) -> bool:
        if isinstance(other, ExtElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, int):
            return self == self.field.scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field, self.coords))

    def __str__(self) -> str:
        return coords_str(self.coords)

    def __repr__(self) -> str:
        return f"<{self} in {self.field!r}>"


def coords_str(coords) -> str:
    """Canonical text form of a coordinate vector as a polynomial in b."""
    parts = []
    for e in range(len(coords) - 1, -1, -1):
        c = coords[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
        else:
            var = "b" if e == 1 else f"b^{e}"
            parts.append(var if c == 1 else f"{c}{var}")
    return "+".join(parts) if parts else "0"


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inf"


INFINITY = _Infinity()


def theta(x) -> object:
    """The halving map on the projective line: 0 and infinity go to
    infinity, any other x goes to (x + 1/x)/2."""
    if x is INFINITY:
        return INFINITY
    if not isinstance(x, ExtElem):
        raise TypeError("theta expects an ExtElem or INFINITY")
    if x.is_zero:
        return INFINITY
    inv2 = pow(2, -1, x.field.p)
    return (x + x.inverse()) * inv2


@dataclass(frozen=True)
class RFactorization:
    """Outcome of factoring the doubling transform of an irreducible f.

    Either the transform itself is irreducible (factors is None) or it
    splits as factors[0] * factors[1], two distinct monic irreducible
    polynomials of the same degree as f that are mutual reciprocals.
    """

    r_poly: FpPoly
    factors: tuple[FpPoly, FpPoly] | None

    @property
    def is_irreducible(self) -> bool:
        return self.factors is None


def _validate_seed(f: FpPoly, trusted: bool) -> None:
    p = f.p
    if not f.is_monic or f.degree < 1:
        raise ValueError("input must be monic of degree >= 1")
    if f in (FpPoly((1, 1), p), FpPoly((p - 1, 1), p)):
        raise ValueError("x+1 and x-1 are excluded inputs")
    if not trusted and not f.is_irreducible():
        raise ValueError(f"{f} is reducible over F_{p}")


def factor_r(f: FpPoly, *, trusted: bool = False) -> RFactorization:
    """Factor the doubling transform of a monic irreducible f (not x+-1).

    Decides irreducibility with the quadratic-residue test on b**2 - 1
    in F_p[x]/(f); in the split case the root a = b + sqrt(b**2 - 1)
    gives one factor as its minimal polynomial and the other as the
    reciprocal.  Pass trusted=True to skip re-checking that f is
    irreducible (used by the sequence builder, which already knows).
    """
    _validate_seed(f, trusted)
    p = f.p
    rp = f.r_transform()
    if f == FpPoly.x(p):
        # f = x is the one case without a nonzero root: its transform is
        # x^2 + 1, irreducible exactly when -1 is a non-square.
        if legendre(p - 1, p) == -1:
            _check_predicate(f, split=False)
            return RFactorization(rp, None)
        i0 = fp_sqrt(p - 1, p)
        g1 = FpPoly((p - i0, 1), p)
        g2 = g1.reciprocal()
        _finish_split(f, rp, g1, g2)
        return RFactorization(rp, (g1, g2))
    field = ExtField(p, f, check_modulus=False)
    beta = field.beta
    u = beta * beta - field.one
    if u.is_zero:
        raise InternalInvariantError("b^2 = 1 for an input other than x+-1")
    if not field.is_square(u):
        _check_predicate(f, split=False)
        return RFactorization(rp, None)
    alpha = beta + field.sqrt(u)
    g1 = field.minimal_poly(alpha)
    if g1.degree != f.degree:
        raise InternalInvariantError(
            f"split factor has degree {g1.degree}, expected {f.degree}")
    g2 = g1.reciprocal()
    _finish_split(f, rp, g1, g2)
    return RFactorization(rp, (g1, g2))


def _check_predicate(f: FpPoly, split: bool) -> None:
    # The residue-test outcome must match the quadratic character of
    # f(1) * f(-1); a mismatch means one of the two routes is broken.
    lam = f.lambda_value()
    if legendre(lam, f.p) != (1 if split else -1):
        raise InternalInvariantError(
            f"residue test and f(1)f(-1) character disagree for {f}")


def _finish_split(f: FpPoly, rp: FpPoly, g1: FpPoly, g2: FpPoly) -> None:
    _check_predicate(f, split=True)
    if g1 == g2:
        raise InternalInvariantError(f"split factors of {f} coincide")
    if g1 * g2 != rp:
        raise InternalInvariantError(f"split factors of {f} do not multiply back")


def tilde(f: FpPoly) -> FpPoly:
    """Minimal polynomial of (b + 1/b)/2 for a root b of f.

    Defined for monic irreducible f other than x, x+1 and x-1.  The
    result has degree n when the root set of f is not closed under
    inversion and degree n/2 when it is.
    """
    p = f.p
    if f == FpPoly.x(p):
        raise ValueError("x is excluded: its only root is 0")
    _validate_seed(f, trusted=False)
    field = ExtField(p, f, check_modulus=False)
    image = theta(field.beta)
    if image is INFINITY:
        raise InternalInvariantError("theta sent a nonzero field element to infinity")
    return field.minimal_poly(image)
