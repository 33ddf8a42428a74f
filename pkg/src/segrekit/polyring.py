"""Exact sparse multivariate polynomial arithmetic over the Gaussian rationals.

Coefficients are numbers a + b*i whose components are arbitrary-precision
Fractions, so no operation ever rounds.  A polynomial is a sparse map from
exponent tuples to coefficients inside a fixed variable context; contexts may
carry a pairing that marks half the variables as conjugate slots of the other
half (z_j paired with xi_j).  All values here are immutable by convention and
safe to share between threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

EXPONENT_LIMIT = 2**31

Mono = tuple[int, ...]


class ContextMismatchError(ValueError):
    """Operands live in different variable contexts."""


class DegreeOverflowError(RuntimeError):
    """A monomial exponent exceeded the 2**31 guard."""


class GaussianRational:
    """Exact complex number a + b*i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re: Fraction | int | str = 0, im: Fraction | int | str = 0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def coerce(value: Scalar) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        raise TypeError(f"cannot interpret {value!r} as a Gaussian rational")

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __add__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        other = GaussianRational.coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GaussianRational.coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return _imag_str(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{_imag_str(abs(self.im))}"

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"


def _imag_str(b: Fraction) -> str:
    if b == 1:
        return "i"
    if b == -1:
        return "-i"
    return f"{b}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
IMAG = GaussianRational(0, 1)

Scalar = Union[GaussianRational, Fraction, int]


class VarContext:
    """Ordered set of variable names, optionally with a z/xi pairing.

    The pairing is a tuple of (holomorphic index, antiholomorphic index)
    pairs; the antiholomorphic slot xi_j stands for the conjugate of z_j.
    Index order in ``names`` is the canonical order used by monomial orders
    and by canonical printing.
    """

    __slots__ = ("names", "pairing", "_index")

    def __init__(self, names: Sequence[str], pairing=None):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self.pairing = tuple(tuple(p) for p in pairing) if pairing else None
        if self.pairing is not None:
            touched = [i for pair in self.pairing for i in pair]
            if sorted(touched) != list(range(len(names))):
                raise ValueError("pairing is not a perfect matching of the variables")
        self._index = {name: i for i, name in enumerate(names)}

    @classmethod
    def plain(cls, names: Sequence[str]) -> "VarContext":
        return cls(names)

    @classmethod
    def paired(cls, base_names: Sequence[str], prefix: str = "xi_") -> "VarContext":
        base = tuple(base_names)
        anti = tuple(prefix + name for name in base)
        n = len(base)
        return cls(base + anti, tuple((j, n + j) for j in range(n)))

    def paired_extension(self, prefix: str = "xi_") -> "VarContext":
        if self.pairing is not None:
            raise ValueError("context already paired")
        return VarContext.paired(self.names, prefix)

    @property
    def is_paired(self) -> bool:
        return self.pairing is not None

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    @property
    def holo_indices(self) -> tuple[int, ...]:
        self._require_pairing()
        return tuple(p[0] for p in self.pairing)

    @property
    def anti_indices(self) -> tuple[int, ...]:
        self._require_pairing()
        return tuple(p[1] for p in self.pairing)

    @property
    def holo_names(self) -> tuple[str, ...]:
        return tuple(self.names[i] for i in self.holo_indices)

    @property
    def anti_names(self) -> tuple[str, ...]:
        return tuple(self.names[i] for i in self.anti_indices)

    def partner_index(self, i: int) -> int:
        self._require_pairing()
        for a, b in self.pairing:
            if i == a:
                return b
            if i == b:
                return a
        raise ValueError(f"variable index {i} out of range")

    def partner_name(self, name: str) -> str:
        return self.names[self.partner_index(self.index(name))]

    def restrict(self, keep: Iterable[str]) -> "VarContext":
        keep_set = set(keep)
        unknown = keep_set - set(self.names)
        if unknown:
            raise ValueError(f"unknown variables {sorted(unknown)}")
        names = tuple(n for n in self.names if n in keep_set)
        new_index = {n: i for i, n in enumerate(names)}
        pairing = None
        if self.pairing is not None:
            kept_pairs = [
                (new_index[self.names[a]], new_index[self.names[b]])
                for a, b in self.pairing
                if self.names[a] in keep_set and self.names[b] in keep_set
            ]
            if kept_pairs and len(kept_pairs) * 2 == len(names):
                pairing = tuple(kept_pairs)
        return VarContext(names, pairing)

    def _require_pairing(self):
        if self.pairing is None:
            raise ValueError("context has no z/xi pairing")

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        if not isinstance(other, VarContext):
            return NotImplemented
        return self.names == other.names and self.pairing == other.pairing

    def __hash__(self):
        return hash((self.names, self.pairing))

    def __repr__(self):
        tag = " paired" if self.is_paired else ""
        return f"VarContext({', '.join(self.names)}{tag})"


# -- monomial helpers (a monomial is a tuple of nonnegative exponents) --------


def mono_mul(a: Mono, b: Mono) -> Mono:
    out = tuple(x + y for x, y in zip(a, b))
    for e in out:
        if e > EXPONENT_LIMIT:
            raise DegreeOverflowError(f"exponent {e} exceeds {EXPONENT_LIMIT}")
    return out

def mono_divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))

def mono_div(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))

def mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))

def mono_deg(a: Mono) -> int:
    return sum(a)


def _grevlex_key(exps: Sequence[int]):
    return (sum(exps), tuple(-e for e in reversed(exps)))


class MonomialOrder:
    """Total multiplicative monomial order, exposed as a sort-key provider.

    kind is one of "lex", "grevlex", "elimination".  An elimination order
    compares the exponents at ``block`` (the eliminated variables) by grevlex
    first and breaks ties by grevlex on the remaining variables, so any
    monomial touching the block exceeds every monomial that does not.
    """

    __slots__ = ("kind", "block", "_blockset")

    def __init__(self, kind: str, block: Iterable[int] = ()):
        if kind not in ("lex", "grevlex", "elimination"):
            raise ValueError(f"unknown order kind {kind!r}")
        self.kind = kind
        self.block = tuple(sorted(set(block)))
        if kind != "elimination" and self.block:
            raise ValueError("only elimination orders carry a block")
        self._blockset = frozenset(self.block)

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def elimination(cls, block: Iterable[int]) -> "MonomialOrder":
        return cls("elimination", block)

    def key(self, mono: Mono):
        if self.kind == "lex":
            return mono
        if self.kind == "grevlex":
            return _grevlex_key(mono)
        inside = tuple(mono[i] for i in self.block)
        outside = tuple(e for i, e in enumerate(mono) if i not in self._blockset)
        return (_grevlex_key(inside), _grevlex_key(outside))

    def __eq__(self, other):
        if not isinstance(other, MonomialOrder):
            return NotImplemented
        return self.kind == other.kind and self.block == other.block

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "elimination":
            return f"MonomialOrder.elimination({self.block})"
        return f"MonomialOrder.{self.kind}()"


GREVLEX = MonomialOrder.grevlex()
LEX = MonomialOrder.lex()


class Polynomial:
    """Sparse polynomial over the Gaussian rationals in a fixed context.

    The term map never stores a zero coefficient; the zero polynomial has an
    empty map.  Two polynomials are equal iff contexts and term maps agree.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: VarContext, terms: Mapping[Mono, Scalar] = ()):
        self.context = context
        clean: dict[Mono, GaussianRational] = {}
        width = len(context)
        for mono, coeff in dict(terms).items():
            mono = tuple(mono)
            if len(mono) != width:
                raise ValueError(f"monomial {mono} does not fit a {width}-variable context")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            coeff = GaussianRational.coerce(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms = clean

    @classmethod
    def _make(cls, context: VarContext, terms: dict[Mono, GaussianRational]) -> "Polynomial":
        # internal: terms already normalized
        poly = object.__new__(cls)
        poly.context = context
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, context: VarContext) -> "Polynomial":
        return cls._make(context, {})

    @classmethod
    def constant(cls, context: VarContext, value: Scalar) -> "Polynomial":
        value = GaussianRational.coerce(value)
        if not value:
            return cls.zero(context)
        return cls._make(context, {(0,) * len(context): value})

    @classmethod
    def variable(cls, context: VarContext, name: str) -> "Polynomial":
        exps = [0] * len(context)
        exps[context.index(name)] = 1
        return cls._make(context, {tuple(exps): ONE})

    @classmethod
    def monomial(cls, context: VarContext, mono: Mono, coeff: Scalar = 1) -> "Polynomial":
        return cls(context, {tuple(mono): coeff})

    # -- ring structure --------------------------------------------------

    def _check_context(self, other: "Polynomial"):
        if self.context != other.context:
            raise ContextMismatchError(
                f"contexts differ: {self.context!r} vs {other.context!r}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = Polynomial.constant(self.context, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_context(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, ZERO) + coeff
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return Polynomial._make(self.context, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Polynomial) else -GaussianRational.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return Polynomial._make(self.context, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, GaussianRational)):
            other = GaussianRational.coerce(other)
            if not other:
                return Polynomial.zero(self.context)
            return Polynomial._make(self.context, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_context(other)
        out: dict[Mono, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = mono_mul(m1, m2)
                s = out.get(mono, ZERO) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return Polynomial._make(self.context, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(self.context, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):
        return hash((self.context, frozenset(self.terms.items())))

    # -- queries ----------------------------------------------------------

    def leading_term(self, order: MonomialOrder) -> tuple[Mono, GaussianRational]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def leading_monomial(self, order: MonomialOrder) -> Mono:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        _, lc = self.leading_term(order)
        if lc == ONE:
            return self
        return Polynomial._make(self.context, {m: c / lc for m, c in self.terms.items()})

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(mono_deg(m) for m in self.terms)

    def support_indices(self) -> frozenset[int]:
        """Indices of the variables that actually occur."""
        out = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    out.add(i)
        return frozenset(out)

    def is_constant(self) -> bool:
        return all(mono_deg(m) == 0 for m in self.terms)

    def constant_value(self) -> GaussianRational:
        if not self.terms:
            return ZERO
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    # -- substitution and evaluation --------------------------------------

    def substitute(self, assignment: Mapping[str, "Polynomial | Scalar"]) -> "Polynomial":
        """Replace variables by values; unassigned variables pass through.

        Polynomial values must share this polynomial's context.
        """
        if not assignment:
            return self
        values: dict[int, Polynomial] = {}
        for name, value in assignment.items():
            idx = self.context.index(name)
            if isinstance(value, Polynomial):
                self._check_context(value)
                values[idx] = value
            else:
                values[idx] = Polynomial.constant(self.context, value)
        acc = Polynomial.zero(self.context)
        assigned = sorted(values)
        for mono, coeff in self.terms.items():
            residual = list(mono)
            for idx in assigned:
                residual[idx] = 0
            piece = Polynomial.monomial(self.context, tuple(residual), coeff)
            for idx in assigned:
                e = mono[idx]
                if e:
                    piece = piece * values[idx] ** e
            acc = acc + piece
        return acc

    def evaluate(self, values: Mapping[str, Scalar]) -> GaussianRational:
        """Evaluate at a point; every occurring variable must be assigned."""
        by_index: dict[int, GaussianRational] = {
            self.context.index(name): GaussianRational.coerce(v) for name, v in values.items()
        }
        total = ZERO
        for mono, coeff in self.terms.items():
            term = coeff
            for i, e in enumerate(mono):
                if not e:
                    continue
                if i not in by_index:
                    raise ValueError(f"no value for variable {self.context.names[i]!r}")
                term = term * by_index[i] ** e
            total = total + term
        return total

    def derivative(self, name: str) -> "Polynomial":
        idx = self.context.index(name)
        out: dict[Mono, GaussianRational] = {}
        for mono, coeff in self.terms.items():
            e = mono[idx]
            if not e:
                continue
            lowered = list(mono)
            lowered[idx] = e - 1
            out[tuple(lowered)] = coeff * e
        return Polynomial._make(self.context, out)

    # -- context transport -------------------------------------------------

    def restrict(self, sub: VarContext) -> "Polynomial":
        """Reinterpret in a smaller context; support must fit."""
        positions = []
        for name in sub.names:
            positions.append(self.context.index(name))
        allowed = set(positions)
        out: dict[Mono, GaussianRational] = {}
        for mono, coeff in self.terms.items():
            for i, e in enumerate(mono):
                if e and i not in allowed:
                    raise ContextMismatchError(
                        f"variable {self.context.names[i]!r} blocks restriction"
                    )
            out[tuple(mono[i] for i in positions)] = coeff
        return Polynomial._make(sub, out)

    def extend(self, big: VarContext) -> "Polynomial":
        """Reinterpret in a larger context containing all current names."""
        positions = [big.index(name) for name in self.context.names]
        width = len(big)
        out: dict[Mono, GaussianRational] = {}
        for mono, coeff in self.terms.items():
            exps = [0] * width
            for src, dst in enumerate(positions):
                exps[dst] = mono[src]
            out[tuple(exps)] = coeff
        return Polynomial._make(big, out)

    # -- printing -----------------------------------------------------------

    def to_str(self) -> str:
        """Canonical form: terms in descending grevlex, exact coefficients."""
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms, key=GREVLEX.key, reverse=True):
            sign, mag = _sign_split(self.terms[mono])
            body = self._term_body(mag, mono)
            if not pieces:
                pieces.append(body if sign > 0 else "-" + body)
            else:
                pieces.append((" + " if sign > 0 else " - ") + body)
        return "".join(pieces)

    def _term_body(self, coeff: GaussianRational, mono: Mono) -> str:
        factors = []
        for name, e in zip(self.context.names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            return _coeff_atom(coeff)
        if coeff == ONE:
            return "*".join(factors)
        return _coeff_atom(coeff) + "*" + "*".join(factors)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


def _sign_split(c: GaussianRational) -> tuple[int, GaussianRational]:
    lead = c.re if c.re else c.im
    return (1, c) if lead > 0 else (-1, -c)


def _coeff_atom(c: GaussianRational) -> str:
    # mixed coefficients are parenthesized so printed output re-parses
    if c.re and c.im:
        return f"({c})"
    return str(c)


def poly_sum(context: VarContext, parts: Iterable[Polynomial]) -> Polynomial:
    acc = Polynomial.zero(context)
    for p in parts:
        acc = acc + p
    return acc
