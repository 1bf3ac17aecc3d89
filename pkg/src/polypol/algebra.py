"""Exact arithmetic substrate: rationals, polynomials, rational functions.

Two coefficient tiers run through the whole package.  The exact tier
uses ``fractions.Fraction`` (and ``GaussianRational`` for complex data)
so that polygon identities, resultants and adjoint systems are bit
exact.  The float tier is ordinary binary floating point and is only
ever used for quadrature; whenever float data reaches an algebraic
routine it is first converted to the exact dyadic rational it already
is, so Sturm certificates and resultants stay rigorous.

Univariate polynomials (:class:`Poly1`) are coefficient lists, lowest
degree first.  Bivariate polynomials (:class:`Poly2`) are sparse maps
from exponent pairs to nonzero ``Fraction`` coefficients with a graded
lexicographic canonical order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .errors import PolypolError, ZeroDenominator


# ---------------------------------------------------------------------------
# rationals

def to_fraction(x) -> Fraction:
    """Exact conversion; floats are dyadic rationals, so nothing is lost."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Fraction")


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = to_fraction(re)
        self.im = to_fraction(im)

    def __add__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gaussian(other).__sub__(self)

    def __mul__(self, other):
        other = _as_gaussian(other)
        return GaussianRational(self.re * other.re - self.im * other.im,
                                self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gaussian(other)
        n2 = other.re * other.re + other.im * other.im
        if n2 == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational((self.re * other.re + self.im * other.im) / n2,
                                (other.re * self.im - other.im * self.re) / n2)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = GaussianRational(1, 0)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _as_gaussian(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x, 0)
    raise TypeError(f"cannot mix GaussianRational with {type(x).__name__}")


# ---------------------------------------------------------------------------
# univariate polynomials

def _strip(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class Poly1:
    """Dense univariate polynomial; index = degree of the variable.

    Coefficient-generic: Fraction, float, complex and GaussianRational
    all work.  The zero polynomial has the empty tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _strip(list(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            raise PolypolError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other):
        return isinstance(other, Poly1) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly1(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly1([-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, Poly1):
            return self.scale(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly1()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] = out[i + j] + ca * cb
        return Poly1(out)

    __rmul__ = __mul__

    def scale(self, s):
        return Poly1([c * s for c in self.coeffs])

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly1([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def deriv(self) -> "Poly1":
        return Poly1([i * c for i, c in enumerate(self.coeffs)][1:])

    def antideriv(self) -> "Poly1":
        """Antiderivative with zero constant term; needs field coefficients."""
        if not self.coeffs:
            return Poly1()
        out = [self.coeffs[0] * 0]
        for i, c in enumerate(self.coeffs):
            out.append(c / (i + 1))
        return Poly1(out)

    def __call__(self, t):
        if not self.coeffs:
            return 0 * t if hasattr(t, "__mul__") else 0
        acc = self.coeffs[-1]
        if hasattr(t, "shape"):     # numpy array: promote to array accumulator
            acc = acc + 0 * t
        for c in reversed(self.coeffs[:-1]):
            acc = acc * t + c
        return acc

    def compose(self, other: "Poly1") -> "Poly1":
        acc = Poly1()
        for c in reversed(self.coeffs):
            acc = acc * other + Poly1([c])
        return acc

    def map_coeffs(self, fn) -> "Poly1":
        return Poly1([fn(c) for c in self.coeffs])

    def to_fractions(self) -> "Poly1":
        return self.map_coeffs(to_fraction)

    def __repr__(self):
        return f"Poly1({list(self.coeffs)!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = format_rational(c) if isinstance(c, Fraction) else str(c)
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            bits.append(f"{cs}{mono}")
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out


def poly1_divmod(a: Poly1, b: Poly1):
    """Euclidean division over a field; returns (quotient, remainder)."""
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(a.degree - b.degree + 1, 0)
    r = list(a.coeffs)
    lb = b.leading()
    while len(r) >= len(b.coeffs) and any(r):
        if not r[-1]:
            r.pop()
            continue
        k = len(r) - len(b.coeffs)
        f = r[-1] / lb
        q[k] = f
        for i, c in enumerate(b.coeffs):
            r[k + i] = r[k + i] - f * c
        r.pop()
    return Poly1(q), Poly1(r)


def poly1_gcd(a: Poly1, b: Poly1) -> Poly1:
    """Monic gcd over Fraction coefficients (Euclid)."""
    a = Poly1([to_fraction(c) for c in a.coeffs])
    b = Poly1([to_fraction(c) for c in b.coeffs])
    while not b.is_zero:
        _, r = poly1_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a.scale(Fraction(1) / a.leading())


def poly1_lcm(a: Poly1, b: Poly1) -> Poly1:
    if a.is_zero or b.is_zero:
        return Poly1()
    g = poly1_gcd(a, b)
    q, r = poly1_divmod(a * b, g)
    assert r.is_zero
    return q.scale(Fraction(1) / q.leading())


def poly1_content(a: Poly1) -> Fraction:
    """Positive rational c with a/c integer-primitive (0 for the zero poly)."""
    if a.is_zero:
        return Fraction(0)
    num = 0
    den = 1
    for c in a.coeffs:
        c = to_fraction(c)
        num = int_gcd(num, abs(c.numerator))
        den = den * c.denominator // int_gcd(den, c.denominator)
    return Fraction(num, den)


def compose_cleared(p: Poly1, num: Poly1, den: Poly1) -> Poly1:
    """den**deg(p) * p(num/den): composition after denominator clearing."""
    if p.is_zero:
        return Poly1()
    d = p.degree
    out = Poly1()
    den_pow = Poly1([1])
    num_pows = [Poly1([1])]
    for _ in range(d):
        num_pows.append(num_pows[-1] * num)
    for k in range(d, -1, -1):
        out = out + num_pows[k].scale(p.coeffs[k]) * den_pow if p.coeffs[k] else out
        if k:
            den_pow = den_pow * den
    return out


class RatFunc1:
    """Reduced univariate rational function with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly1, den: Poly1, reduce: bool = True):
        if den.is_zero:
            raise ZeroDenominator("rational function with zero denominator")
        if reduce:
            num = num.to_fractions()
            den = den.to_fractions()
            if num.is_zero:
                den = Poly1([Fraction(1)])
            else:
                g = poly1_gcd(num, den)
                if g.degree > 0:
                    num, _ = poly1_divmod(num, g)
                    den, _ = poly1_divmod(den, g)
                lc = den.leading()
                num = num.scale(Fraction(1) / lc)
                den = den.scale(Fraction(1) / lc)
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatFunc1":
        return cls(Poly1([to_fraction(c)]), Poly1([Fraction(1)]), reduce=False)

    @property
    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __call__(self, t):
        return self.num(t) / self.den(t)

    def __add__(self, other):
        if not isinstance(other, RatFunc1):
            other = RatFunc1.const(other)
        return RatFunc1(self.num * other.den + other.num * self.den,
                        self.den * other.den)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return RatFunc1(-self.num, self.den, reduce=False)

    def __mul__(self, other):
        if not isinstance(other, RatFunc1):
            return RatFunc1(self.num.scale(to_fraction(other)), self.den)
        return RatFunc1(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def deriv(self) -> "RatFunc1":
        return RatFunc1(self.num.deriv() * self.den - self.num * self.den.deriv(),
                        self.den * self.den)

    def compose_mobius(self, a, b, c, d) -> "RatFunc1":
        """Substitute t -> (a t + b)/(c t + d), with ad - bc != 0."""
        a, b, c, d = map(to_fraction, (a, b, c, d))
        if a * d - b * c == 0:
            raise PolypolError("singular Mobius substitution")
        top = Poly1([b, a])
        bot = Poly1([d, c])
        k = max(self.num.degree, self.den.degree)
        new_num = compose_cleared(self.num, top, bot) * bot ** (k - self.num.degree)
        new_den = compose_cleared(self.den, top, bot) * bot ** (k - self.den.degree)
        return RatFunc1(new_num, new_den)

    def __eq__(self, other):
        return (isinstance(other, RatFunc1)
                and self.num == other.num and self.den == other.den)

    def __repr__(self):
        return f"RatFunc1({self.num!r}, {self.den!r})"


def gcd_reduce(num: Poly1, den: Poly1) -> RatFunc1:
    """Reduced, monic-denominator representative of num/den."""
    return RatFunc1(num, den)


# ---------------------------------------------------------------------------
# Sturm sequences and real root isolation

def sturm_chain(p: Poly1) -> list[Poly1]:
    chain = [p, p.deriv()]
    while not chain[-1].is_zero:
        _, r = poly1_divmod(chain[-2], chain[-1])
        chain.append(-r)
    return chain[:-1]


def _variations(chain, x) -> int:
    signs = []
    for q in chain:
        v = q(x)
        if v:
            signs.append(v > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_open(chain, lo, hi) -> int:
    """Distinct roots in the open interval; chain head nonzero at lo, hi."""
    return _variations(chain, lo) - _variations(chain, hi)


def squarefree_decomposition(p: Poly1) -> list[tuple[Poly1, int]]:
    """Yun's algorithm over the rationals: [(factor, multiplicity), ...]."""
    p = p.to_fractions()
    if p.degree < 1:
        return []
    a = poly1_gcd(p, p.deriv())
    b, _ = poly1_divmod(p, a)
    c, _ = poly1_divmod(p.deriv(), a)
    d = c - b.deriv()
    factors = []
    i = 1
    while b.degree >= 1:
        a = poly1_gcd(b, d)
        if a.degree >= 1:
            factors.append((a, i))
        b, _ = poly1_divmod(b, a)
        c, _ = poly1_divmod(d, a)
        d = c - b.deriv()
        i += 1
    return factors


def _isolate_squarefree(f: Poly1, lo: Fraction, hi: Fraction, tol: Fraction):
    """Roots of a squarefree f in the closed interval [lo, hi].

    Returns exact Fractions where a root is hit exactly (linear factors
    and lucky bisection midpoints), floats refined to width <= tol
    otherwise.
    """
    roots = []
    if f.degree == 1:
        r = -f.coeffs[0] / f.coeffs[1]
        if lo <= r <= hi:
            roots.append(r)
        return roots
    chain = sturm_chain(f)
    if f(lo) == 0:
        roots.append(lo)
    if f(hi) == 0 and hi != lo:
        roots.append(hi)
    # shrink to an open interval free of endpoint roots
    a, b = lo, hi
    step = (hi - lo) / 2 ** 16
    while f(a) == 0:
        a += step
    while f(b) == 0:
        b -= step
    if a >= b:
        return sorted(roots)
    stack = [(a, b, _count_open(chain, a, b))]
    while stack:
        a, b, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            roots.append(_refine_bisect(f, a, b, tol))
            continue
        mid = (a + b) / 2
        if f(mid) == 0:
            roots.append(mid)
            delta = (b - a) / 2 ** 20
            while True:
                n_l = _count_open(chain, a, mid - delta)
                n_r = _count_open(chain, mid + delta, b)
                if n_l + n_r == n - 1:
                    break
                delta /= 2
            stack.append((a, mid - delta, n_l))
            stack.append((mid + delta, b, n_r))
        else:
            stack.append((a, mid, _count_open(chain, a, mid)))
            stack.append((mid, b, _count_open(chain, mid, b)))
    return sorted(roots)


def _refine_bisect(f: Poly1, a: Fraction, b: Fraction, tol: Fraction):
    sa = f(a) > 0
    while b - a > tol:
        mid = (a + b) / 2
        v = f(mid)
        if v == 0:
            return mid
        if (v > 0) == sa:
            a = mid
        else:
            b = mid
    return float((a + b) / 2)


def real_roots(p: Poly1, interval, tol: float = 1e-12) -> list[tuple]:
    """All real roots of p in [lo, hi] with multiplicities.

    Sturm-sequence isolation plus bisection refinement, carried out in
    exact rational arithmetic (float coefficients are converted to the
    exact rationals they represent, so the isolation is certified).
    Roots hit exactly come back as Fractions, refined roots as floats.
    """
    lo, hi = (to_fraction(interval[0]), to_fraction(interval[1]))
    if lo > hi:
        lo, hi = hi, lo
    p = p.to_fractions()
    if p.is_zero:
        raise PolypolError("real_roots of the zero polynomial")
    if p.degree < 1:
        return []
    out = []
    for factor, mult in squarefree_decomposition(p):
        for r in _isolate_squarefree(factor, lo, hi, to_fraction(tol)):
            out.append((r, mult))
    out.sort(key=lambda rm: float(rm[0]))
    return out


def count_real_roots(p: Poly1, interval) -> int:
    """Certified count of distinct real roots in a closed interval."""
    return sum(1 for _ in real_roots(p, interval, tol=1e-6))


# ---------------------------------------------------------------------------
# sparse bivariate polynomials

def _gradedlex(key):
    i, j = key
    return (i + j, i)


class Poly2:
    """Sparse bivariate polynomial over Fraction.

    terms maps exponent pairs (i, j) to nonzero coefficients.  The
    canonical term order is graded lexicographic, ascending: sort by
    total degree, then by the exponent of the first variable.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (i, j), c in terms.items():
                c = to_fraction(c)
                if c:
                    if i < 0 or j < 0:
                        raise ValueError("negative exponent")
                    clean[(i, j)] = c
        self.terms = clean

    # -- constructors
    @classmethod
    def const(cls, c) -> "Poly2":
        return cls({(0, 0): to_fraction(c)})

    @classmethod
    def variable(cls, which: str) -> "Poly2":
        return cls({(1, 0) if which == "x" else (0, 1): Fraction(1)})

    @classmethod
    def linear(cls, c0, cx, cy) -> "Poly2":
        return cls({(0, 0): c0, (1, 0): cx, (0, 1): cy})

    @classmethod
    def from_poly1(cls, p: Poly1, which: str) -> "Poly2":
        if which == "x":
            return cls({(i, 0): c for i, c in enumerate(p.coeffs)})
        return cls({(0, i): c for i, c in enumerate(p.coeffs)})

    # -- predicates
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((i + j for i, j in self.terms), default=-1)

    def degree_in(self, which: str) -> int:
        k = 0 if which == "x" else 1
        return max((e[k] for e in self.terms), default=-1)

    def ordered_terms(self):
        return sorted(self.terms.items(), key=lambda t: _gradedlex(t[0]))

    def first_coefficient(self) -> Fraction:
        """Coefficient of the graded-lex-first term (0 for the zero poly)."""
        if not self.terms:
            return Fraction(0)
        return self.terms[min(self.terms, key=_gradedlex)]

    # -- arithmetic
    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly2(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Poly2({e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Poly2):
            return self.scale(other)
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly2(out)

    __rmul__ = __mul__

    def scale(self, s) -> "Poly2":
        s = to_fraction(s)
        return Poly2({e: c * s for e, c in self.terms.items()})

    def __pow__(self, n: int):
        result = Poly2.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, which: str) -> "Poly2":
        out = {}
        for (i, j), c in self.terms.items():
            if which == "x" and i:
                out[(i - 1, j)] = c * i
            elif which == "y" and j:
                out[(i, j - 1)] = c * j
        return Poly2(out)

    def __call__(self, xv, yv):
        exact = (isinstance(xv, (int, Fraction, GaussianRational))
                 and isinstance(yv, (int, Fraction, GaussianRational)))
        if exact:
            total = Fraction(0)
            for (i, j), c in self.terms.items():
                total = total + c * xv ** i * yv ** j
            return total
        return self.eval_float(xv, yv)

    def eval_float(self, xv, yv):
        """Float/complex/array evaluation (term-wise, fine for sparse data)."""
        total = 0.0 * (xv + yv)
        for (i, j), c in self.terms.items():
            total = total + float(c) * xv ** i * yv ** j
        return total

    def __eq__(self, other):
        return isinstance(other, Poly2) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Poly2({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (i, j), c in self.ordered_terms():
            mono = "".join(f"{s}^{e}" if e > 1 else s
                           for s, e in (("x", i), ("y", j)) if e)
            cs = format_rational(c)
            if mono and cs == "1":
                cs = ""
            elif mono and cs == "-1":
                cs = "-"
            elif mono and "/" in cs:
                cs += "*"
            bits.append(f"{cs}{mono}")
        out = bits[0]
        for b in bits[1:]:
            out += f" - {b[1:]}" if b.startswith("-") else f" + {b}"
        return out


def poly2_content(p: Poly2) -> Fraction:
    if p.is_zero:
        return Fraction(0)
    num = 0
    den = 1
    for c in p.terms.values():
        num = int_gcd(num, abs(c.numerator))
        den = den * c.denominator // int_gcd(den, c.denominator)
    return Fraction(num, den)


def normalize_sign_primitive(p: Poly2) -> Poly2:
    """Integer-primitive representative with positive graded-lex-first coefficient."""
    if p.is_zero:
        return p
    c = poly2_content(p)
    q = p.scale(Fraction(1) / c)
    if q.first_coefficient() < 0:
        q = -q
    return q


def normalize_first_one(p: Poly2) -> Poly2:
    """Scale so the graded-lex-first coefficient equals 1."""
    if p.is_zero:
        return p
    return p.scale(Fraction(1) / p.first_coefficient())


def poly2_divmod(f: Poly2, g: Poly2):
    """Single-divisor division in descending graded-lex order.

    f = q*g + r where no term of r is divisible by the leading term of
    g.  The remainder is zero exactly when g divides f.
    """
    if g.is_zero:
        raise ZeroDivisionError("Poly2 division by zero")
    lead = max(g.terms, key=_gradedlex)
    lc = g.terms[lead]
    gi, gj = lead
    work = dict(f.terms)
    q = {}
    r = {}
    while work:
        e = max(work, key=_gradedlex)
        c = work.pop(e)
        i, j = e
        if i >= gi and j >= gj:
            qe = (i - gi, j - gj)
            qc = c / lc
            q[qe] = q.get(qe, Fraction(0)) + qc
            for (ti, tj), tc in g.terms.items():
                if (ti, tj) == lead:
                    continue
                we = (qe[0] + ti, qe[1] + tj)
                s = work.get(we, Fraction(0)) - qc * tc
                if s:
                    work[we] = s
                else:
                    work.pop(we, None)
        else:
            r[e] = c
    return Poly2(q), Poly2(r)


def poly2_div_exact(f: Poly2, g: Poly2) -> Poly2:
    q, r = poly2_divmod(f, g)
    if not r.is_zero:
        raise PolypolError("inexact Poly2 division")
    return q


# gcd via the primitive PRS in QQ[y][x]

def _to_x_poly(p: Poly2) -> list[Poly1]:
    d = p.degree_in("x")
    coeffs = [dict() for _ in range(d + 1)]
    for (i, j), c in p.terms.items():
        coeffs[i][j] = c
    return [Poly1([cs.get(k, Fraction(0)) for k in range(max(cs, default=-1) + 1)])
            for cs in coeffs]


def _from_x_poly(coeffs: Sequence[Poly1]) -> Poly2:
    terms = {}
    for i, q in enumerate(coeffs):
        for j, c in enumerate(q.coeffs):
            if c:
                terms[(i, j)] = c
    return Poly2(terms)


def _xp_degree(c):
    n = len(c)
    while n and c[n - 1].is_zero:
        n -= 1
    return n - 1


def _xp_content(c) -> Poly1:
    g = Poly1()
    for q in c:
        g = poly1_gcd(g, q)
    return g


def _xp_divide_poly1(c, d: Poly1):
    out = []
    for q in c:
        qq, r = poly1_divmod(q, d)
        assert r.is_zero
        out.append(qq)
    return out


def _xp_pseudo_rem(a, b):
    """Pseudo remainder of x-polynomials with Poly1 coefficients."""
    da, db = _xp_degree(a), _xp_degree(b)
    lb = b[db]
    r = list(a)
    while _xp_degree(r) >= db and _xp_degree(r) >= 0:
        dr = _xp_degree(r)
        lead = r[dr]
        r = [q * lb for q in r]
        shift = dr - db
        for k in range(db + 1):
            r[shift + k] = r[shift + k] - lead * b[k]
        r = r[:dr] + [Poly1()] * 0
        while r and r[-1].is_zero:
            r.pop()
        if not r:
            break
    return r


def poly2_gcd(f: Poly2, g: Poly2) -> Poly2:
    """Gcd over QQ[x, y], sign-primitive normalized."""
    if f.is_zero:
        return normalize_sign_primitive(g)
    if g.is_zero:
        return normalize_sign_primitive(f)
    fx, gx = _to_x_poly(f), _to_x_poly(g)
    cf, cg = _xp_content(fx), _xp_content(gx)
    cont = poly1_gcd(cf, cg)
    a = _xp_divide_poly1(fx, cf)
    b = _xp_divide_poly1(gx, cg)
    if _xp_degree(a) < _xp_degree(b):
        a, b = b, a
    while True:
        if _xp_degree(b) < 0:
            gcd_pp = a
            break
        if _xp_degree(b) == 0:
            gcd_pp = [poly1_gcd(_xp_content(a), _xp_content(b))]
            break
        r = _xp_pseudo_rem(a, b)
        if not r:
            gcd_pp = b
            break
        cr = _xp_content(r)
        r = _xp_divide_poly1(r, cr)
        a, b = b, r
    cpp = _xp_content(gcd_pp)
    if not cpp.is_zero and cpp.degree >= 0:
        gcd_pp = _xp_divide_poly1(gcd_pp, cpp)
    result = _from_x_poly(gcd_pp) * Poly2.from_poly1(cont, "y")
    return normalize_sign_primitive(result)


def squarefree_part(p: Poly2) -> Poly2:
    """Product of the distinct irreducible factors of p, sign-primitive."""
    if p.is_zero or p.degree == 0:
        return normalize_sign_primitive(p)
    px = _to_x_poly(p)
    cont = _xp_content(px)             # pure-y factors live here
    pp = _from_x_poly(_xp_divide_poly1(px, cont))
    # squarefree part of the pure-y content
    sf_cont = Poly1([Fraction(1)])
    if cont.degree >= 1:
        for factor, _ in squarefree_decomposition(cont):
            sf_cont = sf_cont * factor
    elif cont.degree == 0:
        sf_cont = Poly1([Fraction(1)])
    # squarefree part of the primitive part
    if pp.degree_in("x") >= 1:
        g = poly2_gcd(pp, pp.diff("x"))
        pp_sf = poly2_div_exact(pp, g) if g.degree >= 1 else pp
    else:
        pp_sf = pp
    return normalize_sign_primitive(pp_sf * Poly2.from_poly1(sf_cont, "y"))


class RatFunc2:
    """Bivariate rational function over the exact tier.

    Canonical scaling: the graded-lex-first coefficient of the
    denominator is 1, and numerator and denominator carry no common
    rational content beyond that.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly2, den: Poly2):
        if den.is_zero:
            raise ZeroDenominator("rational function with zero denominator")
        s = den.first_coefficient()
        self.num = num.scale(Fraction(1) / s)
        self.den = den.scale(Fraction(1) / s)

    def __call__(self, xv, yv):
        return self.num(xv, yv) / self.den(xv, yv)

    def eval_float(self, xv, yv):
        return self.num.eval_float(xv, yv) / self.den.eval_float(xv, yv)

    def __eq__(self, other):
        return (isinstance(other, RatFunc2)
                and self.num == other.num and self.den == other.den)

    def __repr__(self):
        return f"RatFunc2({self.num!r} / {self.den!r})"


# ---------------------------------------------------------------------------
# Sylvester resultants in an auxiliary variable

def tau_degree(p: Sequence[Poly2]) -> int:
    n = len(p)
    while n and p[n - 1].is_zero:
        n -= 1
    return n - 1


def resultant_in_tau(p: Sequence[Poly2], q: Sequence[Poly2]) -> Poly2:
    """Resultant eliminating the auxiliary variable.

    p and q are polynomials in an auxiliary parameter whose
    coefficients are bivariate polynomials (index = parameter degree).
    The result is the determinant of the Sylvester matrix, computed by
    fraction-free Bareiss elimination so every intermediate division is
    exact.
    """
    m, n = tau_degree(p), tau_degree(q)
    if m < 0 or n < 0:
        raise PolypolError("resultant of the zero polynomial")
    if m == 0 and n == 0:
        raise PolypolError("nothing to eliminate: both inputs have degree 0")
    if m == 0:
        return p[0] ** n
    if n == 0:
        return q[0] ** m
    size = m + n
    rows = []
    pc = [p[m - k] if 0 <= m - k else Poly2() for k in range(m + 1)]
    qc = [q[n - k] if 0 <= n - k else Poly2() for k in range(n + 1)]
    for r in range(n):
        rows.append([Poly2()] * r + list(pc) + [Poly2()] * (size - m - 1 - r))
    for r in range(m):
        rows.append([Poly2()] * r + list(qc) + [Poly2()] * (size - n - 1 - r))
    return _bareiss_det(rows)


def _bareiss_det(mat: list[list[Poly2]]) -> Poly2:
    n = len(mat)
    sign = 1
    prev = Poly2.const(1)
    for k in range(n - 1):
        if mat[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not mat[i][k].is_zero), None)
            if pivot_row is None:
                return Poly2()
            mat[k], mat[pivot_row] = mat[pivot_row], mat[k]
            sign = -sign
        pivot = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = mat[i][j] * pivot - mat[i][k] * mat[k][j]
                mat[i][j] = poly2_div_exact(num, prev)
            mat[i][k] = Poly2()
        prev = pivot
    det = mat[n - 1][n - 1]
    return det if sign == 1 else -det


def resultant_poly1(a: Poly1, b: Poly1) -> Fraction:
    """Resultant of two univariate rational-coefficient polynomials."""
    pa = [Poly2.const(c) for c in a.to_fractions().coeffs]
    pb = [Poly2.const(c) for c in b.to_fractions().coeffs]
    r = resultant_in_tau(pa, pb)
    return r.terms.get((0, 0), Fraction(0))


# ---------------------------------------------------------------------------
# serialization

def poly2_to_json(p: Poly2) -> list:
    """Graded-lex ordered [i, j, "p/q"] triples."""
    return [[i, j, format_rational(c)] for (i, j), c in p.ordered_terms()]


def poly2_from_json(data) -> Poly2:
    return Poly2({(int(i), int(j)): Fraction(s) for i, j, s in data})


def poly1_to_json(p: Poly1) -> list[str]:
    return [format_rational(to_fraction(c)) for c in p.coeffs]


def poly1_from_json(data) -> Poly1:
    return Poly1([Fraction(s) for s in data])
