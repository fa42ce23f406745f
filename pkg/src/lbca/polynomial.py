"""Sparse integer polynomials in x_1..x_n, y_1..y_n and Laurent polynomials in x.

Exponent vectors are plain tuples.  An ordinary monomial has width ``2n``
laid out as ``(y_1, ..., y_n, x_1, ..., x_n)``, so Python tuple comparison
*is* lexicographic order with ``y_1 > ... > y_n > x_1 > ... > x_n``.  A
Laurent monomial has width ``n`` and holds x-exponents only.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

Monomial = tuple  # tuple[int, ...]


class PolynomialError(ValueError):
    pass


class AmbientMismatch(PolynomialError):
    pass


class ZeroPolynomial(PolynomialError):
    pass


class NonUnitLeadingCoefficient(PolynomialError):
    pass


class ParseError(PolynomialError):
    pass


class YHeavyOrder(enum.Enum):
    """Monomial orders in which y-variables dominate x-variables.

    ``GRADED_LEX`` compares total y-degree first and breaks ties
    lexicographically with ``y_1 > ... > y_n > x_1 > ... > x_n``.
    ``PURE_LEX`` is plain lex in that variable order; it does not
    guarantee that a larger y-degree wins (``y_1 > y_2*y_3``).
    """

    GRADED_LEX = "y-graded-lex"
    PURE_LEX = "pure-lex"

    def key(self, m: Monomial):
        if self is YHeavyOrder.PURE_LEX:
            return m
        return (sum(m[: len(m) // 2]), m)

    def compare(self, a: Monomial, b: Monomial) -> int:
        """Return -1, 0 or 1 as ``a`` is smaller, equal or larger than ``b``."""
        if len(a) != len(b) or len(a) % 2:
            raise AmbientMismatch("monomials of different ambient size")
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)


def compare(order: YHeavyOrder, a: Monomial, b: Monomial) -> int:
    return order.compare(a, b)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(p <= q for p, q in zip(a, b))


def _madd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(p + q for p, q in zip(a, b))


def _msub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(p - q for p, q in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(p, q) for p, q in zip(a, b))


class _Sparse:
    """Shared sparse-dictionary arithmetic; subclasses fix the monomial width."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[Monomial, int] | None = None):
        self.n = n
        width = self._width(n)
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != width:
                raise AmbientMismatch(f"monomial {m} has width {len(m)}, expected {width}")
            self._check_monomial(m)
            if c:
                clean[m] = clean.get(m, 0) + int(c)
                if not clean[m]:
                    del clean[m]
        self.terms = clean

    @staticmethod
    def _width(n: int) -> int:
        raise NotImplementedError

    def _check_monomial(self, m: Monomial) -> None:
        pass

    @classmethod
    def _raw(cls, n: int, terms: dict):
        obj = cls.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    @classmethod
    def constant(cls, n: int, c: int = 1):
        return cls._raw(n, {(0,) * cls._width(n): c} if c else {})

    @classmethod
    def zero(cls, n: int):
        return cls._raw(n, {})

    @classmethod
    def monomial(cls, n: int, exps: Sequence[int], coeff: int = 1):
        return cls(n, {tuple(exps): coeff})

    def _coerce(self, other):
        if isinstance(other, int):
            return type(self).constant(self.n, other)
        if type(other) is not type(self):
            return NotImplemented
        if other.n != self.n:
            raise AmbientMismatch(f"ambient sizes {self.n} and {other.n} differ")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return type(self)._raw(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)._raw(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _madd(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return type(self)._raw(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = type(self).constant(self.n, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_monomial(self, m: Monomial, c: int = 1):
        """Multiply by the single term ``c * m``."""
        return type(self)._raw(self.n, {_madd(m, mm): c * cc for mm, cc in self.terms.items()} if c else {})

    def __eq__(self, other):
        if isinstance(other, int):
            other = type(self).constant(self.n, other)
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((type(self).__name__, self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, {str(self)!r})"

    # -- text format -------------------------------------------------------

    def _var_name(self, k: int) -> str:
        raise NotImplementedError

    def _sorted_monomials(self, order: YHeavyOrder | None) -> list:
        raise NotImplementedError

    def format_monomial(self, m: Monomial) -> str:
        parts = []
        for k, e in enumerate(m):
            if e == 1:
                parts.append(self._var_name(k))
            elif e:
                parts.append(f"{self._var_name(k)}^{e}")
        return "*".join(parts)

    def format(self, order: YHeavyOrder | None = None) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, m in enumerate(self._sorted_monomials(order)):
            c = self.terms[m]
            body = self.format_monomial(m)
            mag = abs(c)
            if body:
                text = body if mag == 1 else f"{mag}*{body}"
            else:
                text = str(mag)
            if idx == 0:
                out.append(text if c > 0 else f"-{text}")
            else:
                out.append(("+ " if c > 0 else "- ") + text)
        return " ".join(out)

    def __str__(self):
        return self.format()


class Polynomial(_Sparse):
    """Element of Z[x_1..x_n, y_1..y_n]."""

    __slots__ = ()

    @staticmethod
    def _width(n: int) -> int:
        return 2 * n

    def _check_monomial(self, m):
        if any(e < 0 for e in m):
            raise PolynomialError(f"negative exponent in {m}")

    @classmethod
    def x(cls, i: int, n: int) -> "Polynomial":
        return cls._raw(n, {_unit(2 * n, n + i - 1): 1})

    @classmethod
    def y(cls, i: int, n: int) -> "Polynomial":
        return cls._raw(n, {_unit(2 * n, i - 1): 1})

    @classmethod
    def from_parts(cls, n: int, x: Sequence[int] = (), y: Sequence[int] = (), coeff: int = 1):
        x = tuple(x) or (0,) * n
        y = tuple(y) or (0,) * n
        return cls(n, {y + x: coeff})

    @classmethod
    def parse(cls, text: str, n: int) -> "Polynomial":
        return cls(n, _parse_terms(text, n, laurent=False))

    def _var_name(self, k):
        return f"y{k + 1}" if k < self.n else f"x{k - self.n + 1}"

    def _sorted_monomials(self, order):
        order = order or YHeavyOrder.GRADED_LEX
        return sorted(self.terms, key=order.key, reverse=True)

    def leading_term(self, order: YHeavyOrder = YHeavyOrder.GRADED_LEX) -> tuple[Monomial, int]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def y_degree(self) -> int:
        return max((sum(m[: self.n]) for m in self.terms), default=0)

    def evaluate(self, x: Sequence, y: Sequence):
        """Evaluate at exact values; returns an int or Fraction."""
        values = list(y) + list(x)
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, m):
                if e:
                    t *= v**e
            total += t
        return total

    def diff(self, kind: str, i: int) -> "Polynomial":
        """Partial derivative with respect to ``x_i`` or ``y_i``."""
        k = i - 1 if kind == "y" else self.n + i - 1
        out = {}
        for m, c in self.terms.items():
            e = m[k]
            if e:
                mm = m[:k] + (e - 1,) + m[k + 1 :]
                out[mm] = out.get(mm, 0) + c * e
        return Polynomial(self.n, out)


class LaurentPolynomial(_Sparse):
    """Element of Z[x_1^{+-1}, ..., x_n^{+-1}]."""

    __slots__ = ()

    @staticmethod
    def _width(n: int) -> int:
        return n

    @classmethod
    def x(cls, i: int, n: int, power: int = 1) -> "LaurentPolynomial":
        e = [0] * n
        e[i - 1] = power
        return cls._raw(n, {tuple(e): 1})

    @classmethod
    def parse(cls, text: str, n: int) -> "LaurentPolynomial":
        return cls(n, _parse_terms(text, n, laurent=True))

    def _var_name(self, k):
        return f"x{k + 1}"

    def _sorted_monomials(self, order):
        return sorted(self.terms, reverse=True)

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self.terms for e in m)

    def format_fraction(self) -> str:
        """Render as ``(numerator)/denominator`` with a monomial denominator."""
        if not self.terms:
            return "0"
        low = tuple(min(0, *(m[k] for m in self.terms)) for k in range(self.n))
        num = LaurentPolynomial._raw(self.n, {_msub(m, low): c for m, c in self.terms.items()})
        den = tuple(-e for e in low)
        if not any(den):
            return num.format()
        num_text = num.format()
        if len(num) > 1:
            num_text = f"({num_text})"
        den_text = num.format_monomial(den)
        if sum(1 for e in den if e) > 1:
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"


def _unit(width: int, k: int) -> Monomial:
    e = [0] * width
    e[k] = 1
    return tuple(e)


_TOKEN = re.compile(r"\s*(?:(\d+)|([xy])(\d+)|(\^)|(\*)|([+-]))")


def _parse_terms(text: str, n: int, laurent: bool) -> dict:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        pos = mt.end()
        if mt.group(1) is not None:
            tokens.append(("int", int(mt.group(1))))
        elif mt.group(2) is not None:
            tokens.append(("var", (mt.group(2), int(mt.group(3)))))
        elif mt.group(4):
            tokens.append(("pow", None))
        elif mt.group(5):
            tokens.append(("mul", None))
        else:
            tokens.append(("sign", mt.group(6)))
    if not tokens:
        raise ParseError("empty polynomial text")

    width = n if laurent else 2 * n
    terms: dict = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        if tokens[i][0] == "sign":
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' in {text!r}")
        first = False
        coeff = 1
        exps = [0] * width
        seen_factor = False
        while i < len(tokens) and tokens[i][0] != "sign":
            kind, val = tokens[i]
            if kind == "mul":
                i += 1
                continue
            if kind == "int":
                coeff *= val
                i += 1
            elif kind == "var":
                letter, idx = val
                if not 1 <= idx <= n:
                    raise ParseError(f"variable {letter}{idx} outside 1..{n}")
                if letter == "y" and laurent:
                    raise ParseError("y-variables are not allowed in a Laurent polynomial")
                k = idx - 1 if laurent else (idx - 1 if letter == "y" else n + idx - 1)
                i += 1
                power = 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    i += 1
                    neg = False
                    if i < len(tokens) and tokens[i] == ("sign", "-"):
                        neg = True
                        i += 1
                    if i >= len(tokens) or tokens[i][0] != "int":
                        raise ParseError(f"bad exponent in {text!r}")
                    power = -tokens[i][1] if neg else tokens[i][1]
                    if power < 0 and not laurent:
                        raise ParseError("negative exponent in an ordinary polynomial")
                    i += 1
                exps[k] += power
            else:
                raise ParseError(f"misplaced '^' in {text!r}")
            seen_factor = True
        if not seen_factor:
            raise ParseError(f"dangling sign in {text!r}")
        m = tuple(exps)
        terms[m] = terms.get(m, 0) + sign * coeff
    return terms


# -- division and Groebner criterion --------------------------------------


def _prepare_divisors(G: Sequence[Polynomial], order: YHeavyOrder):
    prepared = []
    for idx, g in enumerate(G):
        if not g:
            raise ZeroPolynomial(f"divisor {idx} is zero")
        lm, lc = g.leading_term(order)
        if lc not in (1, -1):
            raise NonUnitLeadingCoefficient(f"divisor {idx} has leading coefficient {lc}")
        prepared.append((lm, lc, g))
    return prepared


def divide(
    f: Polynomial, G: Sequence[Polynomial], order: YHeavyOrder = YHeavyOrder.GRADED_LEX
) -> tuple[list[Polynomial], Polynomial]:
    """Multivariate division: ``f == sum(q_i * G[i]) + r``.

    The largest reducible monomial is always eliminated first, using the
    divisor of smallest index whose leading monomial divides it.
    """
    for g in G:
        if g.n != f.n:
            raise AmbientMismatch("divisor ambient size differs")
    prepared = _prepare_divisors(G, order)
    n = f.n
    quotients: list[dict] = [{} for _ in G]
    p = dict(f.terms)
    rem: dict = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for idx, (lm, lc, g) in enumerate(prepared):
            if _divides(lm, m):
                shift = _msub(m, lm)
                q = c * lc  # lc is +-1, so 1/lc == lc
                quotients[idx][shift] = quotients[idx].get(shift, 0) + q
                for gm, gc in g.terms.items():
                    mm = _madd(gm, shift)
                    s = p.get(mm, 0) - q * gc
                    if s:
                        p[mm] = s
                    else:
                        p.pop(mm, None)
                break
        else:
            rem[m] = c
            del p[m]
    return [Polynomial(n, q) for q in quotients], Polynomial._raw(n, rem)


def normal_form(
    f: Polynomial, G: Sequence[Polynomial], order: YHeavyOrder = YHeavyOrder.GRADED_LEX
) -> Polynomial:
    return divide(f, G, order)[1]


def s_polynomial(f: Polynomial, g: Polynomial, order: YHeavyOrder) -> Polynomial:
    lf, cf = f.leading_term(order)
    lg, cg = g.leading_term(order)
    if cf not in (1, -1) or cg not in (1, -1):
        raise NonUnitLeadingCoefficient("S-polynomial needs unit leading coefficients")
    top = _lcm(lf, lg)
    return f.scale_monomial(_msub(top, lf), cf) - g.scale_monomial(_msub(top, lg), cg)


@dataclass
class GroebnerCheck:
    """Outcome of Buchberger's S-pair criterion."""

    is_groebner: bool
    witness: tuple[int, int, Polynomial] | None
    pairs_total: int
    pairs_skipped: int

    def __bool__(self):
        return self.is_groebner

    @property
    def pairs_reduced(self) -> int:
        return self.pairs_total - self.pairs_skipped


def buchberger_is_groebner(
    G: Sequence[Polynomial], order: YHeavyOrder = YHeavyOrder.GRADED_LEX
) -> GroebnerCheck:
    """Check whether every S-polynomial of ``G`` reduces to zero.

    Pairs with coprime leading monomials are skipped (Buchberger's first
    criterion).  Pairs are scanned in lexicographic order of indices, so the
    returned witness is the smallest failing pair.
    """
    prepared = _prepare_divisors(G, order)
    total = skipped = 0
    for i, j in combinations(range(len(G)), 2):
        total += 1
        li, lj = prepared[i][0], prepared[j][0]
        if not any(a and b for a, b in zip(li, lj)):
            skipped += 1
            continue
        r = normal_form(s_polynomial(G[i], G[j], order), G, order)
        if r:
            return GroebnerCheck(False, (i, j, r), total, skipped)
    return GroebnerCheck(True, None, total, skipped)


# -- the presentation map --------------------------------------------------


def adjacent_variable(seed, i: int) -> LaurentPolynomial:
    """``x_i^{-1}(p_i^+ + p_i^-)`` for unfrozen ``i``; ``x_i^{-1}`` for frozen ``i``."""
    n = seed.n
    inv = [0] * n
    inv[i - 1] = -1
    inv = tuple(inv)
    if seed.is_frozen(i):
        return LaurentPolynomial._raw(n, {inv: 1})
    plus, minus = seed.exponents(i)
    terms = {}
    for m in (plus, minus):
        mm = _madd(m, inv)
        terms[mm] = terms.get(mm, 0) + 1
    return LaurentPolynomial._raw(n, terms)


def pi_map(seed, f: Polynomial) -> LaurentPolynomial:
    """Substitute ``y_i -> x_i'`` and ``x_i -> x_i``, expanding exactly."""
    n = seed.n
    if f.n != n:
        raise AmbientMismatch(f"polynomial has ambient size {f.n}, seed has {n}")
    primes = [adjacent_variable(seed, i) for i in range(1, n + 1)]
    powers: dict = {}

    def power(i: int, e: int) -> LaurentPolynomial:
        if (i, e) not in powers:
            powers[(i, e)] = primes[i] ** e
        return powers[(i, e)]

    total = LaurentPolynomial.zero(n)
    for m, c in f.terms.items():
        term = LaurentPolynomial._raw(n, {m[n:]: c})
        for i in range(n):
            if m[i]:
                term = term * power(i, m[i])
        total = total + term
    return total
