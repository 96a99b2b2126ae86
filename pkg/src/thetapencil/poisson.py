"""Sparse multivariate polynomials over Q(zeta_m) and Poisson structure.

Polynomials are functions on the dual space: the variable x_i is the i-th
basis vector of the algebra viewed as a linear function.  Coefficients are
stored as raw coefficient vectors (tuples of Fraction) so the hot loops can
run in the selected _core kernel; the public surface speaks CycloNum.

Monomial order is graded lexicographic throughout; it fixes the canonical
text form and every leading-term computation.
"""
from __future__ import annotations

from fractions import Fraction

from . import _core
from .errors import (
    BudgetExhausted,
    ConductorMismatch,
    DimensionMismatch,
    TermExplosion,
)
from .field import CycloNum, _ctx, zeta
from . import linalg

TERM_CAP = 10**6


def _grlex(exp):
    return (sum(exp), exp)


def _as_cv(value, conductor):
    if isinstance(value, CycloNum):
        if value.m == conductor:
            return value.coeffs
        return value.embed(conductor).coeffs
    if isinstance(value, (tuple, list)):
        return tuple(map(Fraction, value))
    deg = _ctx(conductor).deg
    return (Fraction(value),) + (Fraction(0),) * (deg - 1)


class MultiPoly:
    """Immutable sparse polynomial; no zero coefficients are stored."""

    __slots__ = ("nvars", "conductor", "terms")

    def __init__(self, nvars: int, conductor: int, terms=None):
        clean = {}
        for exp, c in (terms or {}).items():
            vec = _as_cv(c, conductor)
            if any(vec):
                clean[tuple(exp)] = vec
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    @staticmethod
    def _raw(nvars, conductor, terms: dict) -> "MultiPoly":
        out = object.__new__(MultiPoly)
        object.__setattr__(out, "nvars", nvars)
        object.__setattr__(out, "conductor", conductor)
        object.__setattr__(out, "terms", terms)
        return out

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, conductor: int = 1) -> "MultiPoly":
        return cls._raw(nvars, conductor, {})

    @classmethod
    def constant(cls, value, nvars: int, conductor: int = 1) -> "MultiPoly":
        vec = _as_cv(value, conductor)
        if not any(vec):
            return cls.zero(nvars, conductor)
        return cls._raw(nvars, conductor, {(0,) * nvars: vec})

    @classmethod
    def variable(cls, i: int, nvars: int, conductor: int = 1) -> "MultiPoly":
        exp = tuple(int(j == i) for j in range(nvars))
        return cls._raw(nvars, conductor, {exp: _as_cv(1, conductor)})

    @classmethod
    def linear(cls, coeffs, conductor: int = 1) -> "MultiPoly":
        coeffs = list(coeffs)
        nvars = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            vec = _as_cv(c, conductor)
            if any(vec):
                terms[tuple(int(j == i) for j in range(nvars))] = vec
        return cls._raw(nvars, conductor, terms)

    # -- views ----------------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def coefficient(self, exp) -> CycloNum:
        vec = self.terms.get(tuple(exp))
        if vec is None:
            return CycloNum.zero(self.conductor)
        return CycloNum(self.conductor, vec)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(e) for e in self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def leading_exponent(self):
        return max(self.terms, key=_grlex)

    def variables_used(self):
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        return sorted(used)

    # -- coercion --------------------------------------------------------------

    def _align(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            tgt = self.conductor
            if isinstance(other, CycloNum):
                tgt = _lcm_conductor(self.conductor, other.m)
            return self._embed(tgt), MultiPoly.constant(other, self.nvars, tgt)
        if not isinstance(other, MultiPoly):
            return self, None
        if other.nvars != self.nvars:
            raise DimensionMismatch(
                f"polynomials in {self.nvars} and {other.nvars} variables"
            )
        if other.conductor == self.conductor:
            return self, other
        if self.conductor % other.conductor == 0:
            return self, other._embed(self.conductor)
        if other.conductor % self.conductor == 0:
            return self._embed(other.conductor), other
        raise ConductorMismatch(
            f"conductors {self.conductor} and {other.conductor}"
        )

    def _embed(self, conductor: int) -> "MultiPoly":
        if conductor == self.conductor:
            return self
        if self.conductor == 1:
            pad = _ctx(conductor).deg - 1
            zeros = (Fraction(0),) * pad
            return MultiPoly._raw(
                self.nvars,
                conductor,
                {e: (vec[0],) + zeros for e, vec in self.terms.items()},
            )
        return MultiPoly._raw(
            self.nvars,
            conductor,
            {
                e: CycloNum(self.conductor, vec).embed(conductor).coeffs
                for e, vec in self.terms.items()
            },
        )

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        if b is None:
            return NotImplemented
        acc = dict(a.terms)
        _core.poly_add_into(acc, b.terms.items())
        return MultiPoly._raw(a.nvars, a.conductor, acc)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(
            self.nvars,
            self.conductor,
            {e: _core.cv_neg(v) for e, v in self.terms.items()},
        )

    def __sub__(self, other):
        a, b = self._align(other)
        if b is None:
            return NotImplemented
        acc = dict(a.terms)
        _core.poly_add_into(acc, ((e, _core.cv_neg(v)) for e, v in b.terms.items()))
        return MultiPoly._raw(a.nvars, a.conductor, acc)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            tgt = self.conductor
            if isinstance(other, CycloNum):
                tgt = _lcm_conductor(self.conductor, other.m)
            base = self._embed(tgt)
            vec = _as_cv(other, tgt)
            if not any(vec):
                return MultiPoly.zero(self.nvars, tgt)
            red = _ctx(tgt).red
            return MultiPoly._raw(
                base.nvars, tgt, _core.poly_scale(base.terms, vec, red)
            )
        a, b = self._align(other)
        if b is None:
            return NotImplemented
        if len(a.terms) * len(b.terms) > TERM_CAP:
            raise TermExplosion(
                f"product would touch {len(a.terms) * len(b.terms)} term pairs"
            )
        red = _ctx(a.conductor).red
        return MultiPoly._raw(
            a.nvars, a.conductor, _core.poly_mul(a.terms, b.terms, red)
        )

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        result = MultiPoly.constant(1, self.nvars, self.conductor)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self == MultiPoly.constant(other, self.nvars, self.conductor)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    # -- calculus -------------------------------------------------------------------

    def partial(self, i: int) -> "MultiPoly":
        out = {}
        for e, vec in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1 :]
                scaled = tuple(x * k for x in vec)
                old = out.get(ne)
                if old is not None:
                    scaled = _core.cv_add(old, scaled)
                if any(scaled):
                    out[ne] = scaled
                elif old is not None:
                    del out[ne]
        return MultiPoly._raw(self.nvars, self.conductor, out)

    def evaluate(self, point) -> CycloNum:
        point = [
            p if isinstance(p, CycloNum) else CycloNum.from_rational(p, self.conductor)
            for p in point
        ]
        if len(point) != self.nvars:
            raise DimensionMismatch("point has wrong length")
        powers: dict[tuple[int, int], CycloNum] = {}

        def pw(i, k):
            if k == 0:
                return None
            got = powers.get((i, k))
            if got is None:
                got = point[i] ** k
                powers[(i, k)] = got
            return got

        total = CycloNum.zero(self.conductor)
        for e, vec in self.terms.items():
            c = CycloNum(self.conductor, vec)
            for i, k in enumerate(e):
                p = pw(i, k)
                if p is not None:
                    c = c * p
            total = total + c
        return total

    def compose(self, images) -> "MultiPoly":
        """Substitute images[i] for variable i; images share nvars/conductor."""
        images = list(images)
        if len(images) != self.nvars:
            raise DimensionMismatch("need one image per variable")
        tgt_nvars = images[0].nvars
        tgt_cond = _lcm_conductor(self.conductor, *[im.conductor for im in images])
        power_cache: dict[tuple[int, int], MultiPoly] = {}

        def impow(i, k):
            got = power_cache.get((i, k))
            if got is None:
                got = images[i] ** k if k > 1 else images[i]
                power_cache[(i, k)] = got
            return got

        acc = MultiPoly.zero(tgt_nvars, tgt_cond)
        for e, vec in self.terms.items():
            term = MultiPoly.constant(CycloNum(self.conductor, vec), tgt_nvars, tgt_cond)
            for i, k in enumerate(e):
                if k:
                    term = term * impow(i, k)
            acc = acc + term
        return acc

    def substitute_linear(self, rows) -> "MultiPoly":
        """Variable i becomes the linear form rows[i] (a coefficient vector)."""
        conductor = self.conductor
        for row in rows:
            for c in row:
                if isinstance(c, CycloNum):
                    conductor = _lcm_conductor(conductor, c.m)
        images = [MultiPoly.linear(row, conductor) for row in rows]
        return self.compose(images)

    def exact_div(self, divisor: "MultiPoly") -> "MultiPoly":
        """Exact polynomial quotient; raises ArithmeticError when not exact."""
        a, b = self._align(divisor)
        if not b:
            raise ZeroDivisionError("division by the zero polynomial")
        if not a:
            return a
        red = _ctx(a.conductor).red
        lead_b = b.leading_exponent()
        lc_b_inv = CycloNum(a.conductor, b.terms[lead_b]).inv().coeffs
        rem = dict(a.terms)
        out: dict = {}
        while rem:
            lead_r = max(rem, key=_grlex)
            diff = tuple(x - y for x, y in zip(lead_r, lead_b))
            if any(d < 0 for d in diff):
                raise ArithmeticError("not exactly divisible")
            c = _core.cv_mul(rem[lead_r], lc_b_inv, red)
            out[diff] = c
            piece = {
                tuple(x + y for x, y in zip(diff, e)): _core.cv_neg(
                    _core.cv_mul(c, v, red)
                )
                for e, v in b.terms.items()
            }
            _core.poly_add_into(rem, piece.items())
        return MultiPoly._raw(a.nvars, a.conductor, out)

    # -- weights ------------------------------------------------------------------

    def weight_components(self, weights) -> dict[int, "MultiPoly"]:
        """Split into pieces of constant weight <weights, exponent>."""
        if len(weights) != self.nvars:
            raise DimensionMismatch("need one weight per variable")
        buckets: dict[int, dict] = {}
        for e, vec in self.terms.items():
            w = sum(wi * ei for wi, ei in zip(weights, e))
            buckets.setdefault(w, {})[e] = vec
        return {
            w: MultiPoly._raw(self.nvars, self.conductor, t)
            for w, t in sorted(buckets.items())
        }

    # -- rendering -------------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex, reverse=True):
            c = CycloNum(self.conductor, self.terms[e])
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"x{i + 1}")
                elif k:
                    factors.append(f"x{i + 1}^{k}")
            if factors:
                parts.append(f"{c} * " + "*".join(factors))
            else:
                parts.append(str(c))
        return " + ".join(parts)

    @classmethod
    def parse(cls, text: str, nvars: int, conductor: int) -> "MultiPoly":
        return _parse_poly(text, nvars, conductor)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"MultiPoly({self.nvars} vars, m={self.conductor}, {self.to_text()})"


def _lcm_conductor(*ms: int) -> int:
    from math import lcm

    return lcm(*ms) if ms else 1


def variables(nvars: int, conductor: int = 1):
    return tuple(MultiPoly.variable(i, nvars, conductor) for i in range(nvars))


# -- scalar and polynomial text parsing ------------------------------------------


def parse_scalar(text: str, conductor: int) -> CycloNum:
    """Inverse of CycloNum.__str__: rationals and (c0 + c1*z + ...) forms."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    total = CycloNum.zero(conductor)
    for sign, chunk in _signed_chunks(s):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError(f"empty term in scalar {text!r}")
        if chunk.startswith("-"):
            sign = -sign
            chunk = chunk[1:].strip()
        if "*" in chunk:
            coeff_txt, _, z_txt = chunk.partition("*")
        elif chunk.startswith("z"):
            coeff_txt, z_txt = "1", chunk
        else:
            coeff_txt, z_txt = chunk, ""
        coeff = Fraction(coeff_txt.strip()) * sign
        if z_txt:
            z_txt = z_txt.strip()
            power = 1 if z_txt == "z" else int(z_txt[2:])
            total = total + coeff * zeta(conductor, power)
        else:
            total = total + CycloNum.from_rational(coeff, conductor)
    return total


def _signed_chunks(s: str):
    out = []
    sign = 1
    buf = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch in "+-" and (not buf or buf[-1] == " ") and i + 1 < len(s) and s[i + 1] == " ":
            out.append((sign, "".join(buf)))
            buf = []
            sign = 1 if ch == "+" else -1
            i += 2
            continue
        buf.append(ch)
        i += 1
    out.append((sign, "".join(buf)))
    return [(sg, chunk) for sg, chunk in out if chunk.strip()]


def _parse_poly(text: str, nvars: int, conductor: int) -> MultiPoly:
    s = text.strip()
    if s == "0":
        return MultiPoly.zero(nvars, conductor)
    total = MultiPoly.zero(nvars, conductor)
    for term_txt in _split_terms(s):
        total = total + _parse_term(term_txt, nvars, conductor)
    return total


def _split_terms(s: str):
    # split on top-level " + " only; cyclotomic coefficients carry their own
    # signs inside parentheses
    terms = []
    depth = 0
    start = 0
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and s.startswith(" + ", i):
            terms.append(s[start:i])
            i += 3
            start = i
            continue
        i += 1
    terms.append(s[start:])
    return terms


def _parse_term(term: str, nvars: int, conductor: int) -> MultiPoly:
    term = term.strip()
    if term.startswith("("):
        depth = 0
        for i, ch in enumerate(term):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
                if depth == 0:
                    break
        coeff = parse_scalar(term[: i + 1], conductor)
        rest = term[i + 1 :].lstrip()
    else:
        head, sep, tail = term.partition("*")
        if head.strip().startswith("x"):
            coeff, rest = CycloNum.one(conductor), term
        else:
            coeff = parse_scalar(head, conductor)
            rest = (sep + tail) if sep else ""
            rest = rest.lstrip()
    exp = [0] * nvars
    if rest:
        if rest.startswith("*"):
            rest = rest[1:].strip()
        for factor in rest.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if not factor.startswith("x"):
                raise ValueError(f"bad monomial factor {factor!r}")
            name, _, power = factor.partition("^")
            idx = int(name[1:]) - 1
            if not 0 <= idx < nvars:
                raise ValueError(f"variable index out of range in {factor!r}")
            exp[idx] += int(power) if power else 1
    return MultiPoly(nvars, conductor, {tuple(exp): coeff})


# -- structure tensors and brackets -------------------------------------------------


class StructureTensor:
    """Sparse {x_i, x_j} = sum_k c_ijk x_k table, keyed by i < j."""

    __slots__ = ("nvars", "conductor", "entries")

    def __init__(self, nvars: int, conductor: int, entries):
        table = {}
        for (i, j), lin in entries.items():
            if not i < j:
                raise ValueError("entries must be keyed by i < j")
            row = []
            for k, c in lin:
                vec = _as_cv(c, conductor)
                if any(vec):
                    row.append((k, vec))
            if row:
                table[(i, j)] = tuple(sorted(row))
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "entries", table)

    def __setattr__(self, *a):
        raise AttributeError("StructureTensor is immutable")

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.conductor == other.conductor
            and self.entries == other.entries
        )

    def bracket_entry(self, i: int, j: int) -> MultiPoly:
        """{x_i, x_j} as a linear polynomial (any i, j)."""
        if i == j:
            return MultiPoly.zero(self.nvars, self.conductor)
        sign = 1
        if i > j:
            i, j, sign = j, i, -1
        terms = {}
        for k, vec in self.entries.get((i, j), ()):
            exp = tuple(int(t == k) for t in range(self.nvars))
            terms[exp] = vec if sign == 1 else _core.cv_neg(vec)
        return MultiPoly._raw(self.nvars, self.conductor, terms)

    def matrix_at(self, xi):
        """The skew matrix M(xi)_ij = xi([x_i, x_j]), exact."""
        xi = [
            p if isinstance(p, CycloNum) else CycloNum.from_rational(p, self.conductor)
            for p in xi
        ]
        n = self.nvars
        zero = CycloNum.zero(self.conductor)
        m = [[zero] * n for _ in range(n)]
        for (i, j), lin in self.entries.items():
            acc = zero
            for k, vec in lin:
                acc = acc + CycloNum(self.conductor, vec) * xi[k]
            m[i][j] = acc
            m[j][i] = -acc
        return tuple(tuple(row) for row in m)

    def symbolic_matrix(self):
        """M as a matrix of linear MultiPoly entries in the coordinates."""
        n = self.nvars
        zero = MultiPoly.zero(n, self.conductor)
        m = [[zero] * n for _ in range(n)]
        for (i, j), lin in self.entries.items():
            p = MultiPoly._raw(
                n,
                self.conductor,
                {tuple(int(t == k) for t in range(n)): vec for k, vec in lin},
            )
            m[i][j] = p
            m[j][i] = -p
        return tuple(tuple(row) for row in m)


def poisson_bracket(F: MultiPoly, G: MultiPoly, pi: StructureTensor) -> MultiPoly:
    """{F, G} with respect to the structure tensor pi."""
    if F.nvars != pi.nvars or G.nvars != pi.nvars:
        raise DimensionMismatch("polynomials and tensor disagree on nvars")
    F, G = F._align(G)
    conductor = _lcm_conductor(F.conductor, pi.conductor)
    if conductor != F.conductor:
        F, G = F._embed(conductor), G._embed(conductor)
    red = _ctx(conductor).red
    need = sorted({i for pair in pi.entries for i in pair})
    dF = {i: F.partial(i) for i in need}
    dG = {i: G.partial(i) for i in need}
    acc: dict = {}
    for (i, j), lin in pi.entries.items():
        a, b = dF[i].terms, dG[j].terms
        c, d = dF[j].terms, dG[i].terms
        if (not a or not b) and (not c or not d):
            continue
        if len(a) * len(b) + len(c) * len(d) > TERM_CAP:
            raise TermExplosion("bracket term cap exceeded")
        prod = _core.poly_mul(a, b, red) if a and b else {}
        if c and d:
            neg = _core.poly_mul(c, d, red)
            _core.poly_add_into(prod, ((e, _core.cv_neg(v)) for e, v in neg.items()))
        if not prod:
            continue
        for k, cvec in lin:
            if pi.conductor != conductor:
                cvec = CycloNum(pi.conductor, cvec).embed(conductor).coeffs
            shifted = (
                (
                    tuple(x + int(t == k) for t, x in enumerate(e)),
                    _core.cv_mul(v, cvec, red),
                )
                for e, v in prod.items()
            )
            _core.poly_add_into(acc, shifted)
    return MultiPoly._raw(F.nvars, conductor, acc)


def differential(F: MultiPoly, at) -> tuple:
    """Gradient of F at the point, as a tuple of CycloNum."""
    return tuple(F.partial(i).evaluate(at) for i in range(F.nvars))


def jacobian_rank(polys, at) -> int:
    rows = [differential(F, at) for F in polys]
    if not rows:
        return 0
    conductor = _lcm_conductor(*[c.m for row in rows for c in row])
    rows = [
        tuple(c.embed(conductor) if c.m != conductor else c for c in row)
        for row in rows
    ]
    return linalg.rank(rows)


def scale_action(F: MultiPoly, weights, s) -> MultiPoly:
    """Multiply each monomial by s^<weights, exponent>.

    This is the grading torus acting on polynomials: with the grade of each
    variable as its weight, it realizes phi_s; negative powers arise for
    phi_{1/s} and need invertible s.
    """
    if len(weights) != F.nvars:
        raise DimensionMismatch("need one weight per variable")
    if isinstance(s, (int, Fraction)):
        s = CycloNum.from_rational(s, F.conductor)
    conductor = _lcm_conductor(F.conductor, s.m)
    base = F._embed(conductor) if F.conductor != conductor else F
    s = s.embed(conductor)
    red = _ctx(conductor).red
    powers: dict[int, CycloNum] = {0: CycloNum.one(conductor)}

    def pw(k: int) -> CycloNum:
        got = powers.get(k)
        if got is None:
            got = s**k
            powers[k] = got
        return got

    out = {}
    for e, vec in base.terms.items():
        w = sum(wi * ei for wi, ei in zip(weights, e))
        nv = _core.cv_mul(vec, pw(w).coeffs, red)
        if any(nv):
            out[e] = nv
    return MultiPoly._raw(F.nvars, conductor, out)


# -- gcd of the minor ladder ---------------------------------------------------------


def _content(coeffs):
    g = None
    for c in coeffs:
        g = c if g is None else poly_gcd(g, c)
        if g.is_constant():
            break
    return g


def _univariate_view(p: MultiPoly, v: int):
    out: dict[int, dict] = {}
    for e, vec in p.terms.items():
        d = e[v]
        reste = e[:v] + (0,) + e[v + 1 :]
        out.setdefault(d, {})[reste] = vec
    return {
        d: MultiPoly._raw(p.nvars, p.conductor, t) for d, t in out.items()
    }


def _from_view(view: dict[int, MultiPoly], v: int, nvars: int, conductor: int):
    acc: dict = {}
    for d, coeff in view.items():
        for e, vec in coeff.terms.items():
            ne = e[:v] + (d,) + e[v + 1 :]
            acc[ne] = vec
    return MultiPoly._raw(nvars, conductor, acc)


def _view_scale(view, poly):
    return {d: c * poly for d, c in view.items() if c * poly}


def _view_is_zero(view):
    return not any(view.values())


def _pseudo_rem(a: dict, b: dict, nvars, conductor):
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r:
        dr = max((d for d, c in r.items() if c), default=-1)
        if dr < db:
            break
        lr = r[dr]
        nr: dict[int, MultiPoly] = {}
        for d, c in r.items():
            if d != dr:
                nr[d] = c * lb
        for d, c in b.items():
            if d != db:
                shift = d + dr - db
                piece = c * lr
                nr[shift] = nr.get(shift, MultiPoly.zero(nvars, conductor)) - piece
        r = {d: c for d, c in nr.items() if c}
    return r


def poly_gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """gcd over Q(zeta_m)[x1..xn], normalized to leading coefficient 1.

    Primitive pseudo-remainder sequences, recursing through the variables;
    desk-scale inputs only.
    """
    p, q = p._align(q)
    if not p:
        return _normalize(q)
    if not q:
        return _normalize(p)
    if p.is_constant() or q.is_constant():
        return MultiPoly.constant(1, p.nvars, p.conductor)
    common = sorted(set(p.variables_used()) & set(q.variables_used()))
    if not common:
        return MultiPoly.constant(1, p.nvars, p.conductor)
    v = min(
        common,
        key=lambda i: max(
            max(e[i] for e in p.terms), max(e[i] for e in q.terms)
        ),
    )
    a = _univariate_view(p, v)
    b = _univariate_view(q, v)
    cont_a = _content(list(a.values()))
    cont_b = _content(list(b.values()))
    cont = poly_gcd(cont_a, cont_b)
    a = {d: c.exact_div(cont_a) for d, c in a.items()}
    b = {d: c.exact_div(cont_b) for d, c in b.items()}
    if max(a) < max(b):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, p.nvars, p.conductor)
        if not r:
            g = b
            break
        if max(r) == 0:
            return _normalize(cont)
        rc = _content(list(r.values()))
        r = {d: c.exact_div(rc) for d, c in r.items()}
        a, b = b, r
    g_poly = _from_view(g, v, p.nvars, p.conductor)
    gc = _content(list(g.values()))
    g_poly = g_poly.exact_div(gc)
    return _normalize(g_poly * cont)


def _normalize(p: MultiPoly) -> MultiPoly:
    if not p:
        return p
    lead = p.leading_exponent()
    lc = CycloNum(p.conductor, p.terms[lead])
    return p * lc.inv()


def _colex_subsets(n: int, k: int):
    def rec(maxv, k):
        if k == 0:
            yield ()
            return
        for top in range(k - 1, maxv):
            for rest in rec(top, k - 1):
                yield rest + (top,)

    yield from rec(n, k)


def minor_gcd(polys, budget: int = 200):
    """Running gcd over the N x N minors of the symbolic Jacobian.

    Columns are enumerated in colexicographic order with all rows kept; the
    scan stops as soon as the running gcd is a nonzero constant, which
    certifies that the wedge of the differentials has constant content.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    n = polys[0].nvars
    N = len(polys)
    if N > n:
        raise DimensionMismatch("more polynomials than variables")
    conductor = max(p.conductor for p in polys)
    jac = [
        [p._embed(conductor).partial(c) if p.conductor != conductor else p.partial(c) for c in range(n)]
        for p in polys
    ]
    g = MultiPoly.zero(n, conductor)
    expanded = 0
    for cols in _colex_subsets(n, N):
        if expanded >= budget:
            raise BudgetExhausted(
                f"budget of {budget} minors exhausted", partial=(g, False)
            )
        expanded += 1
        sub = [[jac[r][c] for c in cols] for r in range(N)]
        d = linalg.bareiss_det(sub, pivot_weight=lambda e: e.term_count)
        if not d:
            continue
        g = _normalize(d) if not g else poly_gcd(g, d)
        if g and g.is_constant():
            return g, True
    return g, bool(g and g.is_constant())
