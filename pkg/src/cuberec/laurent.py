"""Exact sparse multivariate Laurent polynomial arithmetic over the rationals.

A Laurent polynomial is stored as a dict mapping monomials to nonzero
rational coefficients.  A monomial is a tuple of (variable, exponent) pairs,
sorted by variable, with every exponent nonzero:

    x^2 * y^-1  ->  ((x, 2), (y, -1))          (for variables x < y)
    3/4 + x     ->  {(): 3/4, ((x, 1),): 1}

Variables are arbitrary hashable, mutually orderable keys; the lattice
modules use canonical vertex triples (i, j, k).  Coefficients are exact
(fractions.Fraction, silently normalized to int when the denominator is 1 --
int and Fraction mix transparently under arithmetic, equality and hashing).

The zero polynomial is the empty dict.  Canonical form (no zero coefficient,
no zero exponent) is enforced by every constructor and operation, so
structural equality of dicts is ring equality.

Monomials are compared in graded-lexicographic order: first by total degree
(sum of exponents, sign included), then lexicographically on the exponent
vector with variables in ascending order.  This order is total and
compatible with multiplication, which is what exact division needs.

JSON interchange form (used by every other module and the CLI):

    {"terms": [{"coeff": "p/q", "monomial": {"x[i,j,k]": e, ...}}, ...]}

with terms sorted leading-first by the monomial order and coefficients as
decimal-free fraction strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping

Var = Hashable
Monomial = tuple  # tuple[tuple[Var, int], ...], sorted by Var, exponents nonzero

_UNIT: Monomial = ()


class LaurentError(Exception):
    """Base class for errors raised by Laurent arithmetic."""


class NotDivisible(LaurentError):
    """Exact division failed: the quotient does not exist in the Laurent ring."""


class MissingAssignment(LaurentError):
    """substitute() was given no value for a variable of the polynomial."""


class ZeroSubstitution(LaurentError):
    """substitute() was given 0 for a variable occurring with negative exponent."""


class ZeroPolynomial(LaurentError):
    """The operation is undefined for the zero polynomial."""


def _norm_coeff(c):
    """Normalize a rational coefficient, preferring plain int."""
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    return c


def mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    """Product of two monomials (exponent maps add; zero exponents vanish)."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        v1, e1 = m1[i]
        v2, e2 = m2[j]
        if v1 == v2:
            e = e1 + e2
            if e:
                out.append((v1, e))
            i += 1
            j += 1
        elif v1 < v2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


def mono_cmp(m1: Monomial, m2: Monomial) -> int:
    """Graded-lex comparison; returns -1, 0 or 1."""
    d1 = sum(e for _, e in m1)
    d2 = sum(e for _, e in m2)
    if d1 != d2:
        return -1 if d1 < d2 else 1
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 or j < n2:
        v1 = m1[i][0] if i < n1 else None
        v2 = m2[j][0] if j < n2 else None
        if v1 is not None and (v2 is None or v1 < v2):
            # v1 present only in m1 (exponent 0 in m2)
            e1 = m1[i][1]
            if e1:
                return 1 if e1 > 0 else -1
            i += 1
        elif v2 is not None and (v1 is None or v2 < v1):
            e2 = m2[j][1]
            if e2:
                return -1 if e2 > 0 else 1
            j += 1
        else:
            e1, e2 = m1[i][1], m2[j][1]
            if e1 != e2:
                return 1 if e1 > e2 else -1
            i += 1
            j += 1
    return 0


def _leading(terms: Mapping[Monomial, Any]) -> Monomial:
    it = iter(terms)
    best = next(it)
    for m in it:
        if mono_cmp(m, best) > 0:
            best = m
    return best


def format_var(v) -> str:
    """Artifact-wide string form of a lattice variable: "x[i,j,k]"."""
    i, j, k = v
    return f"x[{i},{j},{k}]"


def parse_var(s: str):
    if not (s.startswith("x[") and s.endswith("]")):
        raise ValueError(f"malformed variable {s!r}")
    parts = s[2:-1].split(",")
    if len(parts) != 3:
        raise ValueError(f"malformed variable {s!r}")
    return tuple(int(p) for p in parts)


def format_coeff(c) -> str:
    return str(Fraction(c))


class LaurentPoly:
    """Immutable sparse Laurent polynomial in canonical form."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, Any] | None = None, *, _canonical=False):
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = dict(terms)
        else:
            clean = {}
            for m, c in terms.items():
                c = _norm_coeff(c)
                if c == 0:
                    continue
                m = tuple(sorted((v, e) for v, e in m if e != 0))
                clean[m] = clean.get(m, 0) + c
            self.terms = {m: c for m, c in clean.items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return _ZERO

    @classmethod
    def one(cls) -> "LaurentPoly":
        return _ONE

    @classmethod
    def constant(cls, c) -> "LaurentPoly":
        c = _norm_coeff(Fraction(c) if not isinstance(c, (int, Fraction)) else c)
        if c == 0:
            return _ZERO
        return cls({_UNIT: c}, _canonical=True)

    @classmethod
    def variable(cls, v: Var, exponent: int = 1) -> "LaurentPoly":
        if exponent == 0:
            return _ONE
        return cls({((v, exponent),): 1}, _canonical=True)

    @classmethod
    def monomial(cls, exps: Mapping[Var, int], coeff=1) -> "LaurentPoly":
        m = tuple(sorted((v, e) for v, e in exps.items() if e != 0))
        c = _norm_coeff(Fraction(coeff))
        if c == 0:
            return _ZERO
        return cls({m: c}, _canonical=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {_UNIT: 1}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _UNIT in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial as a Fraction."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return Fraction(self.terms.get(_UNIT, 0))

    def variables(self) -> set:
        return {v for m in self.terms for v, _ in m}

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s == 0:
                out.pop(m, None)
            else:
                out[m] = _norm_coeff(s)
        return LaurentPoly(out, _canonical=True)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self.terms.items()}, _canonical=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return _ZERO
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        get = out.get
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                s = get(m, 0) + c1 * c2
                out[m] = s
        return LaurentPoly(
            {m: _norm_coeff(c) for m, c in out.items() if c != 0}, _canonical=True
        )

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise NotDivisible("negative power of a non-monomial")
            (m, c), = self.terms.items()
            inv = LaurentPoly({tuple((v, -e) for v, e in m): Fraction(1) / c})
            return inv ** (-n)
        result = _ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == LaurentPoly.constant(other).terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- the operation the recurrence lives on -----------------------------

    def div_exact(self, den: "LaurentPoly") -> "LaurentPoly":
        """Exact division: return q with q*den == self, else raise NotDivisible.

        Both operands are first shifted by monomials into the ordinary
        polynomial ring (every variable's minimum exponent becomes 0); there
        the quotient, when it exists, is again a polynomial, and repeated
        leading-term elimination under the graded-lex order terminates.  A
        leading term that the divisor's leading term does not divide proves
        non-divisibility, and the net monomial shift is undone at the end.
        """
        if den.is_zero():
            raise ZeroPolynomial("division by the zero polynomial")
        if self.is_zero():
            return _ZERO

        sh_n = _unit_shift(self.terms)
        sh_d = _unit_shift(den.terms)
        num_t = _shift_terms(self.terms, sh_n)
        den_t = _shift_terms(den.terms, sh_d)

        lt_d = _leading(den_t)
        lc_d = Fraction(den_t[lt_d])
        lt_d_map = dict(lt_d)

        rem = dict(num_t)
        quo: dict = {}
        while rem:
            m = _leading(rem)
            qm = []
            for v, e in m:
                e -= lt_d_map.get(v, 0)
                if e:
                    qm.append((v, e))
            seen = {v for v, _ in m}
            for v, e in lt_d:
                if v not in seen:
                    qm.append((v, -e))
            if any(e < 0 for _, e in qm):
                raise NotDivisible("leading term not divisible")
            qm = tuple(sorted(qm))
            qc = _norm_coeff(rem[m] / lc_d)
            quo[qm] = qc
            for md, cd in den_t.items():
                mm = mono_mul(qm, md)
                s = rem.get(mm, 0) - qc * cd
                if s == 0:
                    rem.pop(mm, None)
                else:
                    rem[mm] = s

        back = {v: -e for v, e in sh_n.items()}
        for v, e in sh_d.items():
            back[v] = back.get(v, 0) + e
        return LaurentPoly(_shift_terms(quo, back), _canonical=True)

    def substitute(self, assign: Mapping[Var, Any]) -> Fraction:
        """Exact rational evaluation at the given (nonzero) variable values."""
        total = Fraction(0)
        for m, c in self.terms.items():
            val = Fraction(c)
            for v, e in m:
                if v not in assign:
                    raise MissingAssignment(f"no value for {v!r}")
                x = Fraction(assign[v])
                if x == 0:
                    if e < 0:
                        raise ZeroSubstitution(f"{v!r} = 0 with negative exponent")
                    val = Fraction(0)
                    break
                val *= x ** e
            total += val
        return total

    def substitute_vars(self, mapping: Mapping[Var, Var]) -> "LaurentPoly":
        """Relabel variables (used to fold plane values onto a quotient)."""
        out: dict = {}
        for m, c in self.terms.items():
            acc: dict = {}
            for v, e in m:
                w = mapping.get(v, v)
                acc[w] = acc.get(w, 0) + e
            mm = tuple(sorted((v, e) for v, e in acc.items() if e != 0))
            s = out.get(mm, 0) + c
            if s == 0:
                out.pop(mm, None)
            else:
                out[mm] = s
        return LaurentPoly(out, _canonical=True)

    def degree_spread(self) -> int:
        """Max over monomials of the l1 exponent size, the degree functional
        used for entropy measurements."""
        if not self.terms:
            raise ZeroPolynomial("degree_spread of the zero polynomial")
        return max(sum(abs(e) for _, e in m) for m in self.terms)

    # -- interchange -------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms sorted leading-first by the monomial order."""
        import functools

        return sorted(
            self.terms.items(),
            key=functools.cmp_to_key(lambda a, b: mono_cmp(a[0], b[0])),
            reverse=True,
        )

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": format_coeff(c),
                    "monomial": {format_var(v): e for v, e in m},
                }
                for m, c in self.sorted_terms()
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "LaurentPoly":
        terms = {}
        for entry in data["terms"]:
            m = tuple(
                sorted((parse_var(vs), e) for vs, e in entry["monomial"].items())
            )
            terms[m] = Fraction(entry["coeff"])
        return cls(terms)

    def __repr__(self):
        if not self.terms:
            return "0"

        def var_str(v, e):
            name = format_var(v) if isinstance(v, tuple) and len(v) == 3 else str(v)
            return name if e == 1 else f"{name}^{e}"

        bits = []
        for m, c in self.sorted_terms():
            if not m:
                bits.append(format_coeff(c))
                continue
            vs = "*".join(var_str(v, e) for v, e in m)
            bits.append(vs if c == 1 else f"{format_coeff(c)}*{vs}")
        return " + ".join(bits)


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x)
    return NotImplemented


def _unit_shift(terms: Mapping[Monomial, Any]) -> dict:
    """Monomial shift making every variable's minimum exponent exactly 0.

    A variable absent from a monomial has exponent 0 there, so the minimum
    over the polynomial is min(stored minimum, 0) unless the variable occurs
    in every monomial.  Normalizing both operands this way is what makes
    "quotient exists in the Laurent ring" equivalent to "quotient exists in
    the polynomial ring" (minimum exponents are additive under products over
    an integral domain).
    """
    n = len(terms)
    mins: dict = {}
    counts: dict = {}
    for m in terms:
        for v, e in m:
            if v in mins:
                if e < mins[v]:
                    mins[v] = e
                counts[v] += 1
            else:
                mins[v] = e
                counts[v] = 1
    shift = {}
    for v, mn in mins.items():
        if counts[v] < n and mn > 0:
            mn = 0
        if mn != 0:
            shift[v] = -mn
    return shift


def _shift_terms(terms: Mapping[Monomial, Any], shift: Mapping[Var, int]) -> dict:
    if not shift:
        return dict(terms)
    out = {}
    for m, c in terms.items():
        acc = dict(m)
        for v, s in shift.items():
            e = acc.get(v, 0) + s
            if e:
                acc[v] = e
            else:
                acc.pop(v, None)
        out[tuple(sorted(acc.items()))] = c
    return out


_ZERO = LaurentPoly({}, _canonical=True)
_ONE = LaurentPoly({_UNIT: 1}, _canonical=True)

ZERO = _ZERO
ONE = _ONE
