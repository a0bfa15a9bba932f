"""Binary forms of fixed degree and linear subspaces L of the degree-d
forms, with canonical reduced bases, graded powers L^k, membership tests,
vanishing orders, and arithmetic genus.

Coefficient vectors are indexed by the monomials x^d, x^(d-1)y, ..., y^d,
i.e. by descending x-exponent; all canonical forms and pivots refer to
that order.
"""
from __future__ import annotations

import threading
from math import comb

from .arith import FieldDescriptor, FieldElement, QQ, UniPoly, poly_gcd_many
from .errors import InternalConsistencyError, InvalidInputError, PreconditionError


class ProjPoint:
    """A point (alpha : beta) of the projective line, normalized so that
    beta = 1 when beta is nonzero and to (1 : 0) otherwise."""

    __slots__ = ("field", "alpha", "beta")

    def __init__(self, field: FieldDescriptor, alpha, beta):
        alpha = field.coerce(alpha)
        beta = field.coerce(beta)
        if beta.is_zero():
            if alpha.is_zero():
                raise InvalidInputError("(0 : 0) is not a projective point")
            alpha, beta = field.one, field.zero
        else:
            alpha, beta = alpha / beta, field.one
        self.field = field
        self.alpha = alpha
        self.beta = beta

    @property
    def at_infinity(self) -> bool:
        return self.beta.is_zero()

    def coerce(self, field: FieldDescriptor) -> ProjPoint:
        if field == self.field:
            return self
        return ProjPoint(field, field.coerce(self.alpha), field.coerce(self.beta))

    def __eq__(self, other):
        return (isinstance(other, ProjPoint) and self.field == other.field
                and self.alpha == other.alpha and self.beta == other.beta)

    def __hash__(self):
        return hash((self.alpha, self.beta))

    def __repr__(self):
        return f"({self.alpha!r} : {self.beta!r})"


class BinaryForm:
    """Homogeneous binary form of fixed degree with exact coefficients."""

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, field: FieldDescriptor, degree: int, coeffs):
        vals = [c if isinstance(c, FieldElement) and c.field == field
                else field.coerce(c) for c in coeffs]
        if len(vals) != degree + 1:
            raise InvalidInputError(
                f"degree {degree} form needs {degree + 1} coefficients, got {len(vals)}")
        self.field = field
        self.degree = degree
        self.coeffs = tuple(vals)

    @classmethod
    def monomial(cls, field, degree, y_exp, coefficient=1):
        c = [field.zero] * (degree + 1)
        c[y_exp] = field.coerce(coefficient)
        return cls(field, degree, c)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        self._compat(other)
        return BinaryForm(self.field, self.degree,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._compat(other)
        return BinaryForm(self.field, self.degree,
                          [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.field, self.degree, [-a for a in self.coeffs])

    def scale(self, c) -> BinaryForm:
        c = self.field.coerce(c)
        return BinaryForm(self.field, self.degree, [a * c for a in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return self.scale(other)
        if other.field != self.field:
            raise InvalidInputError("forms over different fields")
        out = [self.field.zero] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return BinaryForm(self.field, self.degree + other.degree, out)

    def _compat(self, other):
        if not isinstance(other, BinaryForm) or other.field != self.field \
                or other.degree != self.degree:
            raise InvalidInputError("incompatible forms")

    def evaluate(self, a, b) -> FieldElement:
        a = self.field.coerce(a)
        b = self.field.coerce(b)
        acc = self.field.zero
        apow = self.field.one
        bpows = [self.field.one]
        for _ in range(self.degree):
            bpows.append(bpows[-1] * b)
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if not c.is_zero():
                acc = acc + c * apow * bpows[j]
            apow = apow * a
        return acc

    def at_point(self, p: ProjPoint) -> FieldElement:
        return self.evaluate(p.alpha, p.beta)

    def x_derivative(self) -> BinaryForm:
        d = self.degree
        return BinaryForm(self.field, d - 1,
                          [self.coeffs[j] * (d - j) for j in range(d)])

    def y_derivative(self) -> BinaryForm:
        d = self.degree
        return BinaryForm(self.field, d - 1,
                          [self.coeffs[j + 1] * (j + 1) for j in range(d)])

    def dehom_y(self, var: str = "s") -> UniPoly:
        """f(s, 1) as a univariate polynomial: the coefficient of s^i is
        the x^i y^(d-i) coefficient."""
        return UniPoly(self.field, list(reversed(self.coeffs)), var)

    def dehom_x(self, var: str = "s") -> UniPoly:
        """f(1, s)."""
        return UniPoly(self.field, list(self.coeffs), var)

    @classmethod
    def homogenize(cls, field, degree, poly: UniPoly):
        """Inverse of dehom_y: the coefficient of s^i becomes x^i y^(d-i)."""
        if poly.degree > degree:
            raise InvalidInputError("polynomial degree exceeds form degree")
        coeffs = [field.zero] * (degree + 1)
        for i, c in enumerate(poly.coeffs):
            coeffs[degree - i] = c
        return cls(field, degree, coeffs)

    def map_field(self, field: FieldDescriptor) -> BinaryForm:
        return BinaryForm(field, self.degree,
                          [field.coerce(c.as_rational()) for c in self.coeffs])

    def __eq__(self, other):
        return (isinstance(other, BinaryForm) and self.field == other.field
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def __repr__(self):
        d = self.degree
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            xs = "" if d - j == 0 else ("x" if d - j == 1 else f"x^{d - j}")
            ys = "" if j == 0 else ("y" if j == 1 else f"y^{j}")
            mono = "*".join(m for m in (xs, ys) if m)
            cs = repr(c)
            if not c.is_rational():
                cs = f"({cs})"
            if mono:
                body = mono if cs == "1" else (f"-{mono}" if cs == "-1"
                                               else f"{cs}*{mono}")
            else:
                body = cs
            if not parts:
                parts.append(body)
            elif body.startswith("-"):
                parts.append(f"- {body[1:]}")
            else:
                parts.append(f"+ {body}")
        return " ".join(parts) if parts else "0"


def linear_power(Q: ProjPoint, m: int) -> BinaryForm:
    """The exact binomial expansion of (beta*x - alpha*y)^m."""
    if m < 0:
        raise InvalidInputError("exponent must be nonnegative")
    field = Q.field
    neg_alpha = -Q.alpha
    apows = [field.one]
    for _ in range(m):
        apows.append(apows[-1] * neg_alpha)
    coeffs = [field.coerce(comb(m, j)) * Q.beta ** (m - j) * apows[j]
              for j in range(m + 1)]
    return BinaryForm(field, m, coeffs)


# ---------------------------------------------------------------------------
# sparse echelon helpers
# ---------------------------------------------------------------------------

def _sparse_rref(vecs):
    """Reduced row echelon form of sparse row dicts {col: element}; pivots
    are the leftmost (smallest-column) entries.  Returns (rows, pivots)
    with rows sorted by pivot and made monic."""
    piv = {}
    for vec in vecs:
        row = dict(vec)
        while row:
            p = min(row)
            pr = piv.get(p)
            if pr is None:
                c = row[p]
                inv = c.inverse()
                piv[p] = {j: v * inv for j, v in row.items()}
                break
            c = row.pop(p)
            for j, v in pr.items():
                if j == p:
                    continue
                cur = row.get(j)
                nv = cur - c * v if cur is not None else -(c * v)
                if nv.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = nv
    for p in sorted(piv, reverse=True):
        pr = piv[p]
        for q, rq in piv.items():
            if q >= p or p not in rq:
                continue
            c = rq.pop(p)
            for j, v in pr.items():
                if j == p:
                    continue
                cur = rq.get(j)
                nv = cur - c * v if cur is not None else -(c * v)
                if nv.is_zero():
                    rq.pop(j, None)
                else:
                    rq[j] = nv
    pivots = sorted(piv)
    return [piv[p] for p in pivots], pivots


def _sparse_rank(vecs) -> int:
    piv = {}
    for vec in vecs:
        row = dict(vec)
        while row:
            p = min(row)
            pr = piv.get(p)
            if pr is None:
                c = row[p]
                inv = c.inverse()
                piv[p] = {j: v * inv for j, v in row.items()}
                break
            c = row.pop(p)
            for j, v in pr.items():
                if j == p:
                    continue
                cur = row.get(j)
                nv = cur - c * v if cur is not None else -(c * v)
                if nv.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = nv
    return len(piv)


class FormSpace:
    """A linear subspace of the degree-d binary forms, stored as the unique
    reduced row-echelon basis with pivots ordered by descending x-exponent."""

    __slots__ = ("field", "degree", "rows", "pivots", "_powers", "_lock")

    def __init__(self, field, degree, rows, pivots):
        self.field = field
        self.degree = degree
        self.rows = rows
        self.pivots = pivots
        self._powers = {1: self}
        self._lock = threading.Lock()

    @classmethod
    def span(cls, field: FieldDescriptor, degree: int, gens) -> FormSpace:
        """Canonical space spanned by forms or coefficient vectors."""
        vecs = []
        for g in gens:
            if isinstance(g, BinaryForm):
                if g.degree != degree or g.field != field:
                    raise InvalidInputError("generator has wrong degree or field")
                coeffs = g.coeffs
            else:
                coeffs = [field.coerce(c) for c in g]
                if len(coeffs) != degree + 1:
                    raise InvalidInputError("coefficient vector has wrong length")
            vec = {j: c for j, c in enumerate(coeffs) if not c.is_zero()}
            if vec:
                vecs.append(vec)
        sparse, pivots = _sparse_rref(vecs)
        if not pivots:
            raise InvalidInputError("a form space must contain a nonzero form")
        rows = tuple(
            tuple(r.get(j, field.zero) for j in range(degree + 1)) for r in sparse)
        return cls(field, degree, rows, tuple(pivots))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def basis_forms(self):
        return [BinaryForm(self.field, self.degree, r) for r in self.rows]

    def contains(self, f: BinaryForm) -> bool:
        if f.field != self.field:
            f = f.map_field(self.field)
        if f.degree != self.degree:
            raise InvalidInputError("form degree does not match the space")
        row = {j: c for j, c in enumerate(f.coeffs) if not c.is_zero()}
        piv_index = {p: i for i, p in enumerate(self.pivots)}
        while row:
            p = min(row)
            i = piv_index.get(p)
            if i is None:
                return False
            c = row.pop(p)
            for j, v in enumerate(self.rows[i]):
                if j == p or v.is_zero():
                    continue
                cur = row.get(j)
                nv = cur - c * v if cur is not None else -(c * v)
                if nv.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = nv
        return True

    def product(self, other: FormSpace) -> FormSpace:
        if other.field != self.field:
            raise InvalidInputError("spaces over different fields")
        seen = set()
        vecs = []
        for r1 in self.rows:
            s1 = [(i, c) for i, c in enumerate(r1) if not c.is_zero()]
            for r2 in other.rows:
                prod = {}
                for i, a in s1:
                    for j, b in enumerate(r2):
                        if b.is_zero():
                            continue
                        k = i + j
                        cur = prod.get(k)
                        v = a * b
                        prod[k] = v if cur is None else cur + v
                prod = {k: v for k, v in prod.items() if not v.is_zero()}
                key = frozenset(prod.items())
                if key not in seen:
                    seen.add(key)
                    vecs.append(prod)
        sparse, pivots = _sparse_rref(vecs)
        deg = self.degree + other.degree
        rows = tuple(
            tuple(r.get(j, self.field.zero) for j in range(deg + 1)) for r in sparse)
        return FormSpace(self.field, deg, rows, tuple(pivots))

    def power(self, k: int) -> FormSpace:
        """L^k with caching of the intermediate powers."""
        if k < 1:
            raise InvalidInputError("power exponent must be at least 1")
        with self._lock:
            top = max(self._powers)
            cur = self._powers[min(k, top)]
            while top < k:
                cur = self._powers[top].product(self)
                top += 1
                self._powers[top] = cur
        return cur

    def map_field(self, field: FieldDescriptor) -> FormSpace:
        return FormSpace.span(field, self.degree,
                              [[field.coerce(c.as_rational()) for c in r]
                               for r in self.rows])

    def __eq__(self, other):
        return (isinstance(other, FormSpace) and self.field == other.field
                and self.degree == other.degree and self.rows == other.rows)

    def __hash__(self):
        return hash((self.degree, self.rows))

    def __repr__(self):
        basis = ", ".join(repr(f) for f in self.basis_forms())
        return f"span{{{basis}}}"


def space_product(a: FormSpace, b: FormSpace) -> FormSpace:
    return a.product(b)


def space_power(L: FormSpace, k: int) -> FormSpace:
    return L.power(k)


def space_contains(S: FormSpace, f: BinaryForm) -> bool:
    return S.contains(f)


def orders_at(S: FormSpace, Q: ProjPoint) -> frozenset:
    """The set of vanishing orders at Q attained by nonzero elements of S;
    it always has exactly dim(S) members.

    Orders are read off an echelon reduction after the coordinate change
    moving Q to (0 : 1); (1 : 0) is handled by swapping x and y.
    """
    Q = Q.coerce(S.field)
    D = S.degree
    field = S.field
    if Q.at_infinity:
        shifted = [list(reversed(r)) for r in S.rows]
    elif Q.alpha.is_zero():
        shifted = [list(r) for r in S.rows]
    else:
        apows = [field.one]
        for _ in range(D):
            apows.append(apows[-1] * Q.alpha)
        shifted = []
        for r in S.rows:
            out = [field.zero] * (D + 1)
            for j, c in enumerate(r):
                if c.is_zero():
                    continue
                for i in range(D - j + 1):
                    t = c * apows[i] * comb(D - j, i)
                    out[j + i] = out[j + i] + t
            shifted.append(out)
    piv = {}
    for vec in shifted:
        row = {j: c for j, c in enumerate(vec) if not c.is_zero()}
        while row:
            p = max(row)
            pr = piv.get(p)
            if pr is None:
                c = row[p]
                inv = c.inverse()
                piv[p] = {j: v * inv for j, v in row.items()}
                break
            c = row.pop(p)
            for j, v in pr.items():
                if j == p:
                    continue
                cur = row.get(j)
                nv = cur - c * v if cur is not None else -(c * v)
                if nv.is_zero():
                    row.pop(j, None)
                else:
                    row[j] = nv
    orders = frozenset(D - p for p in piv)
    if len(orders) != S.dim:
        raise InternalConsistencyError("order filtration lost dimensions")
    return orders


def basepoint_free(L: FormSpace) -> bool:
    """True iff no point of the projective line kills every form of L,
    i.e. the basis forms have no common root."""
    if not any(not r[-1].is_zero() for r in L.rows):
        return False  # common root (0 : 1)
    dehoms = [f.dehom_x() for f in L.basis_forms()]
    return poly_gcd_many(dehoms).is_constant()


def genus_of(L: FormSpace) -> int:
    """Arithmetic genus d*k + 1 - dim L^k read at two stabilized degrees,
    which must agree."""
    if not basepoint_free(L):
        raise PreconditionError("the space has a basepoint; genus is undefined here")
    d = L.degree
    n = L.dim - 1
    k0 = max(2, d - n + 1)
    g1 = d * k0 + 1 - L.power(k0).dim
    g2 = d * (k0 + 1) + 1 - L.power(k0 + 1).dim
    if g1 != g2:
        raise InternalConsistencyError(
            f"genus disagrees between degrees {k0} and {k0 + 1}: {g1} vs {g2}")
    return g1
