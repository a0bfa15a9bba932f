"""Exact arithmetic: rationals, number fields, univariate and sparse
multivariate polynomials, gcd, resultants, and root-of-unity detection.

All computations are exact; no floating point is used anywhere.  A number
field is presented by a single primitive element with a monic integral
minimal polynomial, and its elements are residue polynomials of degree
less than the field degree.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from math import gcd as _int_gcd

from .errors import InvalidInputError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def rational(x) -> Fraction:
    """Coerce an int, string ("p/q") or Fraction to an exact rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidInputError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInputError(f"cannot interpret {x!r} as an exact rational")


# ---------------------------------------------------------------------------
# number fields
# ---------------------------------------------------------------------------

class FieldDescriptor:
    """A number field Q[t]/(m) for a monic nonconstant integral polynomial m.

    Degree one encodes the rational field itself.  Irreducibility of m is
    the caller's responsibility; construction runs a cheap sanity check
    rejecting rational roots and small quadratic divisors.
    """

    __slots__ = ("minpoly", "degree", "var", "_reduction", "zero", "one", "gen")

    def __init__(self, minpoly, var: str = "t"):
        coeffs = tuple(int(c) for c in minpoly)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        if len(coeffs) < 2:
            raise InvalidInputError("minimal polynomial must be nonconstant")
        if coeffs[-1] != 1:
            raise InvalidInputError("minimal polynomial must be monic")
        self.minpoly = coeffs
        self.degree = len(coeffs) - 1
        self.var = var
        if self.degree > 1:
            self._sanity_check()
        # reduction table: t^(degree+j) as a residue tuple, j = 0..degree-2
        table = []
        base = tuple(Fraction(-c) for c in coeffs[:-1])  # t^degree
        cur = base
        table.append(cur)
        for _ in range(self.degree - 2):
            shifted = (_ZERO,) + cur[:-1]
            top = cur[-1]
            if top:
                shifted = tuple(s + top * b for s, b in zip(shifted, base))
            cur = shifted
            table.append(cur)
        self._reduction = tuple(table)
        self.zero = self.element([0])
        self.one = self.element([1])
        if self.degree > 1:
            self.gen = self.element([0, 1])
        else:
            self.gen = self.zero

    def _sanity_check(self):
        coeffs = self.minpoly
        c0 = coeffs[0]
        if c0 == 0:
            raise InvalidInputError("minimal polynomial has root 0, hence is reducible")
        for r in _divisors(abs(c0)):
            for root in (r, -r):
                if sum(c * root ** i for i, c in enumerate(coeffs)) == 0:
                    raise InvalidInputError(
                        f"minimal polynomial has rational root {root}, hence is reducible")
        if self.degree > 2:
            self._quadratic_trial()

    def _quadratic_trial(self):
        # Try monic integer quadratic divisors t^2+u*t+v with v | c0 and
        # |u| <= 2B for the Cauchy root bound B.  Capped; this is a sanity
        # check, not a proof of irreducibility.
        coeffs = self.minpoly
        c0 = coeffs[0]
        bound = 1 + max(abs(c) for c in coeffs)
        vs = [v for d in _divisors(abs(c0)) for v in (d, -d)]
        if len(vs) * (4 * bound + 1) > 20000:
            return
        for v in vs:
            for u in range(-2 * bound, 2 * bound + 1):
                if _divides_quadratic(coeffs, u, v):
                    raise InvalidInputError(
                        f"minimal polynomial has quadratic factor t^2+{u}t+{v}")

    def element(self, coeffs) -> FieldElement:
        """Build an element from residue coefficients (constant first),
        reducing modulo the minimal polynomial when needed."""
        vals = [rational(c) for c in coeffs]
        n = self.degree
        if len(vals) > n:
            # full polynomial reduction for arbitrary-length input
            for i in range(len(vals) - 1, n - 1, -1):
                top = vals[i]
                if top:
                    for j, m in enumerate(self.minpoly[:-1]):
                        vals[i - n + j] -= top * m
                vals[i] = _ZERO
            vals = vals[:n]
        elif len(vals) < n:
            vals = vals + [_ZERO] * (n - len(vals))
        return FieldElement(self, tuple(vals))

    def rational(self, x) -> FieldElement:
        return self.element([rational(x)])

    def coerce(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.field == self:
                return x
            if x.field.degree == 1:
                return self.rational(x.coeffs[0])
            raise InvalidInputError("cannot coerce between distinct extension fields")
        return self.rational(x)

    def __eq__(self, other):
        return isinstance(other, FieldDescriptor) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        if self.degree == 1:
            return "QQ"
        s = _poly_str([Fraction(c) for c in self.minpoly], self.var)
        return f"QQ[{self.var}]/({s})"


def _divisors(n: int):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            if i != n // i:
                out.append(n // i)
        i += 1
    return sorted(out)


def _divides_quadratic(coeffs, u, v):
    # synthetic division of coeffs by t^2 + u t + v over ZZ
    rem = list(coeffs)
    for i in range(len(rem) - 1, 1, -1):
        c = rem[i]
        if c:
            rem[i - 1] -= c * u
            rem[i - 2] -= c * v
        rem[i] = 0
    return rem[0] == 0 and rem[1] == 0


class FieldElement:
    """Residue polynomial of degree < deg(field) with exact rational
    coefficients; arithmetic is modulo the field's minimal polynomial."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldDescriptor, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise InvalidInputError(f"{self} is not rational")
        return self.coeffs[0]

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return other
            if other.field.degree == 1:
                return self.field.rational(other.coeffs[0])
            if self.field.degree == 1:
                return NotImplemented
            raise InvalidInputError("elements live in different fields")
        if isinstance(other, (int, Fraction, str)):
            return self.field.rational(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        n = self.field.degree
        if n == 1:
            return FieldElement(self.field, (a[0] * b[0],))
        prod = [_ZERO] * (2 * n - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        out = prod[:n]
        table = self.field._reduction
        for j in range(n, 2 * n - 1):
            top = prod[j]
            if top:
                red = table[j - n]
                for i in range(n):
                    if red[i]:
                        out[i] += top * red[i]
        return FieldElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.field.degree == 1:
            c = self.coeffs[0]
            if c == 0:
                raise ZeroDivisionError("division by zero field element")
            return FieldElement(self.field, (1 / c,))
        m = [Fraction(c) for c in self.field.minpoly]
        g, s, _ = _qpoly_xgcd(list(self.coeffs), m)
        if len(g) != 1:
            raise ZeroDivisionError(
                "element is a zero divisor; the minimal polynomial is reducible")
        inv = [c / g[0] for c in s]
        return self.field.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, str)):
            try:
                other = self.field.rational(other)
            except InvalidInputError:
                return NotImplemented
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            if other.is_rational() and self.is_rational():
                return other.coeffs[0] == self.coeffs[0]
            return False
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.minpoly, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return _poly_str(list(self.coeffs), self.field.var)


QQ = FieldDescriptor((0, 1))


def _poly_str(coeffs, var):
    parts = []
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            head = "" if mag == 1 else f"{mag}*"
            term = f"{head}{var}" + (f"^{i}" if i > 1 else "")
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c > 0 else f"- {term}")
    return " ".join(parts) if parts else "0"


# rational polynomial helpers on plain Fraction lists (constant first)

def _qpoly_strip(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _qpoly_divmod(a, b):
    a = list(a)
    db, lb = len(b) - 1, b[-1]
    q = [_ZERO] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] / lb
        k = len(a) - 1 - db
        q[k] = c
        for i, bc in enumerate(b):
            a[k + i] -= c * bc
        _qpoly_strip(a)
        if not a:
            break
    return _qpoly_strip(q), a


def _qpoly_xgcd(a, b):
    a = _qpoly_strip(list(a))
    b = _qpoly_strip(list(b))
    r0, r1 = a, b
    s0, s1 = [_ONE], []
    t0, t1 = [], [_ONE]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qpoly_sub(s0, _qpoly_mul(q, s1))
        t0, t1 = t1, _qpoly_sub(t0, _qpoly_mul(q, t1))
    return r0, s0, t0


def _qpoly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _qpoly_strip(out)


def _qpoly_sub(a, b):
    out = list(a) + [_ZERO] * max(0, len(b) - len(a))
    for i, y in enumerate(b):
        out[i] -= y
    return _qpoly_strip(out)


# ---------------------------------------------------------------------------
# univariate polynomials over a number field
# ---------------------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial over a FieldDescriptor, constant term
    first, trailing zeros stripped."""

    __slots__ = ("field", "coeffs", "var")

    def __init__(self, field: FieldDescriptor, coeffs, var: str = "t"):
        vals = []
        for c in coeffs:
            vals.append(c if isinstance(c, FieldElement) and c.field == field
                        else field.coerce(c))
        while vals and vals[-1].is_zero():
            vals.pop()
        self.field = field
        self.coeffs = tuple(vals)
        self.var = var

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def leading(self) -> FieldElement:
        if self.is_zero():
            raise InvalidInputError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> UniPoly:
        if self.is_zero():
            return self
        inv = self.leading().inverse()
        return UniPoly(self.field, [c * inv for c in self.coeffs], self.var)

    def _wrap(self, coeffs):
        return UniPoly(self.field, coeffs, self.var)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] + c
        return self._wrap(a)

    def __sub__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        z = self.field.zero
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] = a[i] - c
        return self._wrap(a)

    def __neg__(self):
        return self._wrap([-c for c in self.coeffs])

    def __mul__(self, other):
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return self._wrap([])
        z = self.field.zero
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return self._wrap(out)

    def _lift(self, other):
        if isinstance(other, UniPoly):
            if other.field != self.field:
                raise InvalidInputError("polynomials over different fields")
            return other
        return self._wrap([self.field.coerce(other)])

    def __divmod__(self, other):
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        z = self.field.zero
        rem = list(self.coeffs)
        db = other.degree
        inv_lead = other.leading().inverse()
        q = [z] * max(len(rem) - db, 0)
        while len(rem) - 1 >= db and rem:
            c = rem[-1] * inv_lead
            k = len(rem) - 1 - db
            q[k] = c
            for i, bc in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * bc
            while rem and rem[-1].is_zero():
                rem.pop()
        return self._wrap(q), self._wrap(rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def mul_mod(self, other, modulus) -> UniPoly:
        return (self * other) % modulus

    def evaluate(self, x) -> FieldElement:
        x = self.field.coerce(x)
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> UniPoly:
        return self._wrap([c * i for i, c in enumerate(self.coeffs)][1:])

    def compose_linear(self, shift) -> UniPoly:
        """Return p(x + shift)."""
        shift = self.field.coerce(shift)
        acc = self._wrap([])
        lin = self._wrap([shift, self.field.one])
        for c in reversed(self.coeffs):
            acc = acc * lin + self._wrap([c])
        return acc

    def map_field(self, field: FieldDescriptor) -> UniPoly:
        """Lift a polynomial with rational coefficients into another field."""
        return UniPoly(field, [field.coerce(c.as_rational()) for c in self.coeffs],
                       self.var)

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.field == other.field
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.field.minpoly, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            cs = repr(c)
            if not c.is_rational():
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                head = "" if cs == "1" else ("-" if cs == "-1" else f"{cs}*")
                parts.append(f"{head}{self.var}" + (f"^{i}" if i > 1 else ""))
        return " + ".join(parts)


def poly_gcd(p: UniPoly, q: UniPoly) -> UniPoly:
    """Monic greatest common divisor via the Euclidean algorithm."""
    if p.field != q.field:
        raise InvalidInputError("gcd arguments over different fields")
    if p.is_zero() and q.is_zero():
        raise InvalidInputError("gcd(0, 0) is undefined")
    a, b = p, q
    while not b.is_zero():
        r = a % b
        # keep remainders monic: bounds coefficient growth over extensions
        a, b = b, (r if r.is_zero() else r.monic())
    return a.monic()


def poly_gcd_many(polys) -> UniPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise InvalidInputError("gcd of an empty or all-zero family")
    g = polys[0].monic()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    return g


# ---------------------------------------------------------------------------
# sparse multivariate polynomials and resultants
# ---------------------------------------------------------------------------

def _grlex_key(exps):
    return (sum(exps), exps)


class MultiPoly:
    """Sparse multivariate polynomial over a field with an ordered variable
    list; monomials are compared in graded lexicographic order."""

    __slots__ = ("field", "vars", "terms")

    def __init__(self, field: FieldDescriptor, vars: tuple, terms: dict):
        self.field = field
        self.vars = tuple(vars)
        clean = {}
        for exps, c in terms.items():
            if not isinstance(c, FieldElement) or c.field != field:
                c = field.coerce(c)
            if not c.is_zero():
                clean[tuple(exps)] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, field, vars):
        return cls(field, vars, {})

    @classmethod
    def constant(cls, field, vars, value):
        return cls(field, vars, {(0,) * len(vars): field.coerce(value)})

    @classmethod
    def variable(cls, field, vars, name):
        if name not in vars:
            raise InvalidInputError(f"unknown variable {name!r}")
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(field, vars, {exps: field.one})

    # -- structure ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, var: str) -> int:
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def involves(self, var: str) -> bool:
        return self.degree_in(var) > 0

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading monomial."""
        if self.is_zero():
            raise InvalidInputError("zero polynomial has no leading term")
        exps = max(self.terms, key=_grlex_key)
        return exps, self.terms[exps]

    def __len__(self):
        return len(self.terms)

    # -- arithmetic ----------------------------------------------------

    def _check(self, other):
        if isinstance(other, MultiPoly):
            if other.field != self.field or other.vars != self.vars:
                raise InvalidInputError("polynomials in different rings")
            return other
        return MultiPoly.constant(self.field, self.vars, other)

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = c if cur is None else cur + c
        return MultiPoly(self.field, self.vars, out)

    def __sub__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e)
            out[e] = -c if cur is None else cur - c
        return MultiPoly(self.field, self.vars, out)

    def __neg__(self):
        return MultiPoly(self.field, self.vars,
                         {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = out.get(e)
                out[e] = c if cur is None else cur + c
        return MultiPoly(self.field, self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise InvalidInputError("negative power of a polynomial")
        result = MultiPoly.constant(self.field, self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> MultiPoly:
        c = self.field.coerce(c)
        return MultiPoly(self.field, self.vars,
                         {e: v * c for e, v in self.terms.items()})

    def exact_div(self, divisor: MultiPoly) -> MultiPoly:
        """Exact division; raises if the divisor does not divide exactly."""
        divisor = self._check(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        dexp, dc = divisor.leading_term()
        dc_inv = dc.inverse()
        rem = dict(self.terms)
        out = {}
        while rem:
            exps = max(rem, key=_grlex_key)
            c = rem[exps]
            q = tuple(a - b for a, b in zip(exps, dexp))
            if any(e < 0 for e in q):
                raise InvalidInputError("exact division failed: not divisible")
            qc = c * dc_inv
            out[q] = qc
            for e2, c2 in divisor.terms.items():
                e = tuple(a + b for a, b in zip(q, e2))
                cur = rem.get(e, self.field.zero)
                nv = cur - qc * c2
                if nv.is_zero():
                    rem.pop(e, None)
                else:
                    rem[e] = nv
        return MultiPoly(self.field, self.vars, out)

    def divides_check(self, divisor: MultiPoly):
        try:
            return self.exact_div(divisor)
        except InvalidInputError:
            return None

    # -- conversions and evaluation -------------------------------------

    def substitute(self, assignment: dict) -> MultiPoly:
        """Substitute values (field elements or polynomials in the same
        ring) for some variables."""
        vals = {}
        for name, v in assignment.items():
            if name not in self.vars:
                raise InvalidInputError(f"unknown variable {name!r}")
            if not isinstance(v, MultiPoly):
                v = MultiPoly.constant(self.field, self.vars, v)
            vals[self.vars.index(name)] = v
        out = MultiPoly.zero(self.field, self.vars)
        powers = {i: {} for i in vals}
        for exps, c in self.terms.items():
            term = MultiPoly(self.field, self.vars,
                             {tuple(0 if i in vals else e
                                    for i, e in enumerate(exps)): c})
            for i, v in vals.items():
                e = exps[i]
                if e:
                    cache = powers[i]
                    if e not in cache:
                        cache[e] = v ** e
                    term = term * cache[e]
            out = out + term
        return out

    def evaluate(self, assignment: dict) -> FieldElement:
        full = self.substitute(assignment)
        if not full.is_constant():
            raise InvalidInputError("evaluation left free variables")
        return full.terms.get((0,) * len(self.vars), self.field.zero)

    def coeffs_in(self, var: str) -> list:
        """Coefficients of powers of var, as polynomials with var removed
        from their support (same variable tuple)."""
        i = self.vars.index(var)
        n = self.degree_in(var)
        buckets = [{} for _ in range(max(n, 0) + 1)]
        for exps, c in self.terms.items():
            e = list(exps)
            k = e[i]
            e[i] = 0
            buckets[k][tuple(e)] = c
        return [MultiPoly(self.field, self.vars, b) for b in buckets]

    def drop_vars(self, names) -> MultiPoly:
        names = set(names)
        keep = [i for i, v in enumerate(self.vars) if v not in names]
        out = {}
        for exps, c in self.terms.items():
            if any(exps[i] for i, v in enumerate(self.vars) if v in names):
                raise InvalidInputError("cannot drop a variable still in use")
            out[tuple(exps[i] for i in keep)] = c
        return MultiPoly(self.field, tuple(self.vars[i] for i in keep), out)

    def to_unipoly(self, var: str) -> UniPoly:
        i = self.vars.index(var)
        for exps in self.terms:
            if any(e for j, e in enumerate(exps) if j != i):
                raise InvalidInputError("polynomial is not univariate")
        n = self.degree_in(var)
        coeffs = [self.field.zero] * (max(n, 0) + 1)
        for exps, c in self.terms.items():
            coeffs[exps[i]] = c
        return UniPoly(self.field, coeffs, var)

    def content(self) -> Fraction:
        """Positive rational content (rational coefficient field only)."""
        num = 0
        den = 1
        for c in self.terms.values():
            q = c.as_rational()
            num = _int_gcd(num, q.numerator)
            den = den * q.denominator // _int_gcd(den, q.denominator)
        if num == 0:
            return _ONE
        return Fraction(num, den)

    def normalized(self) -> MultiPoly:
        """Scale to content one with a positive graded-lex leading
        coefficient (rational coefficient field only)."""
        if self.is_zero():
            return self
        c = self.content()
        _, lead = self.leading_term()
        if lead.as_rational() < 0:
            c = -c
        return self.scale(Fraction(1) / c)

    def __eq__(self, other):
        return (isinstance(other, MultiPoly) and self.field == other.field
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field.minpoly, self.vars,
                     tuple(sorted((e, c.coeffs) for e, c in self.terms.items()))))

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[exps]
            mono = "*".join(f"{v}^{e}" if e > 1 else v
                            for v, e in zip(self.vars, exps) if e)
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
        return " ".join(parts)


def resultant(p: MultiPoly, q: MultiPoly, var: str) -> MultiPoly:
    """Resultant of p and q with respect to var, as the determinant of the
    Sylvester matrix computed by fraction-free elimination."""
    if p.field != q.field or p.vars != q.vars:
        raise InvalidInputError("resultant arguments in different rings")
    if not p.involves(var) and not q.involves(var):
        raise InvalidInputError(f"neither argument involves {var!r}")
    n1, n2 = p.degree_in(var), q.degree_in(var)
    if p.is_zero() or q.is_zero():
        return MultiPoly.zero(p.field, p.vars)
    if n1 == 0:
        return p ** n2
    if n2 == 0:
        return q ** n1
    a = p.coeffs_in(var)
    b = q.coeffs_in(var)
    size = n1 + n2
    zero = MultiPoly.zero(p.field, p.vars)
    rows = []
    for i in range(n2):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    for i in range(n1):
        row = [zero] * size
        for j, c in enumerate(reversed(b)):
            row[i + j] = c
        rows.append(row)
    return _bareiss_det(rows)


def _bareiss_det(m):
    n = len(m)
    if n == 0:
        raise InvalidInputError("empty matrix")
    field, vars_ = m[0][0].field, m[0][0].vars
    one = MultiPoly.constant(field, vars_, 1)
    zero = MultiPoly.zero(field, vars_)
    sign = 1
    prev = one
    for r in range(n - 1):
        piv = next((i for i in range(r, n) if not m[i][r].is_zero()), None)
        if piv is None:
            return zero
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
            sign = -sign
        for i in range(r + 1, n):
            for j in range(r + 1, n):
                num = m[r][r] * m[i][j] - m[i][r] * m[r][j]
                m[i][j] = num.exact_div(prev)
            m[i][r] = zero
        prev = m[r][r]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


# ---------------------------------------------------------------------------
# roots of unity
# ---------------------------------------------------------------------------

def is_root_of_unity(zeta: FieldElement):
    """Decide whether zeta is a root of unity, returning (flag, order).

    An algebraic number of degree at most L is a root of unity exactly when
    one of its first L^2+2 powers equals 1; the field degree bounds the
    element degree, so powering up to that limit decides the question.
    """
    if zeta.is_zero():
        raise InvalidInputError("zero is not a candidate root of unity")
    bound = zeta.field.degree ** 2 + 2
    w = zeta
    for k in range(1, bound + 1):
        if w == 1:
            return True, k
        w = w * zeta
    return False, None


def unit_root_probe(zeta: UniPoly, q: UniPoly, k_max: int) -> bool:
    """True iff some root a of q makes zeta(a) a k-th root of unity for a
    k <= k_max, detected through gcds in the quotient ring F[t]/(q)."""
    if q.is_constant():
        raise InvalidInputError("modulus must be nonconstant")
    if zeta.field != q.field:
        raise InvalidInputError("residue and modulus over different fields")
    one = UniPoly(q.field, [1], q.var)
    z = zeta % q
    w = one
    for _ in range(k_max):
        w = w.mul_mod(z, q)
        r = w - one
        if r.is_zero():
            return True
        if not poly_gcd(r, q).is_constant():
            return True
    return False


def unit_root_probe_order(zeta: UniPoly, q: UniPoly, k_max: int):
    """Like unit_root_probe but returns (k, gcd factor) for the least
    witness k, or (None, None)."""
    if q.is_constant():
        raise InvalidInputError("modulus must be nonconstant")
    one = UniPoly(q.field, [1], q.var)
    z = zeta % q
    w = one
    for k in range(1, k_max + 1):
        w = w.mul_mod(z, q)
        r = w - one
        if r.is_zero():
            return k, q.monic()
        g = poly_gcd(r, q)
        if not g.is_constant():
            return k, g
    return None, None


# ---------------------------------------------------------------------------
# number-field construction from a root, and factorization
# ---------------------------------------------------------------------------

def field_from_root(p: UniPoly, var: str = "t"):
    """Given an irreducible rational polynomial p of degree >= 2, build
    the field Q[t]/(monic integral model) together with the element
    representing a root of p."""
    if p.field.degree != 1:
        raise InvalidInputError("base polynomial must have rational coefficients")
    if p.degree < 2:
        raise InvalidInputError("root already lies in the rationals")
    coeffs = [c.as_rational() for c in p.coeffs]
    den = 1
    for c in coeffs:
        den = den * c.denominator // _int_gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    lead = ints[-1]
    n = len(ints) - 1
    # beta = lead * alpha satisfies the monic integral polynomial below
    monic = [ints[i] * lead ** (n - 1 - i) for i in range(n)] + [1]
    field = FieldDescriptor(monic, var)
    alpha = field.element([0, Fraction(1, lead)])
    return field, alpha


def _sympy_qq_factors(coeffs):
    import sympy

    x = sympy.Symbol("x")
    expr = sympy.Integer(0)
    for i, c in enumerate(coeffs):
        expr += sympy.Rational(c.numerator, c.denominator) * x ** i
    _, factors = sympy.factor_list(sympy.Poly(expr, x, domain="QQ"))
    out = []
    for fac, mult in factors:
        cs = [Fraction(str(c)) for c in reversed(fac.all_coeffs())]
        out.append((cs, int(mult)))
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.is_zero() or p.is_constant():
        raise InvalidInputError("squarefree part needs a nonconstant polynomial")
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def irreducible_factors(p: UniPoly) -> list:
    """Distinct monic irreducible factors of p over its coefficient field
    (multiplicities discarded).  Rational factorization is delegated to
    sympy; extensions reduce to the rational case through norms."""
    if p.is_zero():
        raise InvalidInputError("cannot factor the zero polynomial")
    if p.is_constant():
        return []
    sf = squarefree_part(p)
    if p.field.degree == 1:
        out = []
        for cs, _ in _sympy_qq_factors([c.as_rational() for c in sf.coeffs]):
            if len(cs) > 1:
                out.append(UniPoly(p.field, cs, p.var).monic())
        out.sort(key=lambda f: (f.degree, [c.coeffs for c in f.coeffs]))
        return out
    return _trager_factors(sf)


def _trager_factors(f: UniPoly) -> list:
    """Factor a squarefree monic polynomial over Q(theta) by factoring the
    norm over Q and lifting with gcds."""
    field = f.field
    f = f.monic()
    m = field.minpoly
    vars_ = ("_t", "_x")
    mp = MultiPoly(QQ, vars_, {(i, 0): Fraction(c) for i, c in enumerate(m)})
    for s in itertools.count(0):
        xt = (MultiPoly.variable(QQ, vars_, "_x")
              - MultiPoly.variable(QQ, vars_, "_t").scale(s))
        g = MultiPoly.zero(QQ, vars_)
        for i, c in enumerate(f.coeffs):
            lift = MultiPoly(QQ, vars_, {(j, 0): q for j, q in enumerate(c.coeffs)})
            g = g + lift * xt ** i
        norm = resultant(mp, g, "_t")
        ncoeffs = [me.terms.get((0, 0), QQ.zero).coeffs[0]
                   for me in norm.coeffs_in("_x")]
        npoly = UniPoly(QQ, ncoeffs, f.var)
        if poly_gcd(npoly, npoly.derivative()).is_constant():
            break
    out = []
    for cs, _ in _sympy_qq_factors([c.as_rational() for c in npoly.coeffs]):
        if len(cs) <= 1:
            continue
        lifted = UniPoly(field, cs, f.var)
        shifted = lifted.compose_linear(field.gen * s)
        h = poly_gcd(f, shifted)
        if not h.is_constant():
            out.append(h.monic())
    out.sort(key=lambda h: (h.degree, [c.coeffs for c in h.coeffs]))
    return out


def roots_in_field(p: UniPoly) -> list:
    """All roots of p lying in its coefficient field."""
    return sorted(((-f.coeffs[0]) for f in irreducible_factors(p)
                   if f.degree == 1),
                  key=lambda e: e.coeffs)

