"""Hilbert series (graded and bigraded), Hilbert functions and polynomials, dimension and multiplicity."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from . import _qpoly as qp
from ._linalg import solve_exact
from .groebner import groebner_basis
from .rings import mono_divides


class SeriesError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rational Hilbert series

@dataclass(frozen=True)
class HilbertSeriesRational:
    """N(s,t) over a product of factors (1 - s^a t^b).

    ``num``: tuple of ((a, b), coefficient), sorted; ``den``: tuple of
    ((a, b), multiplicity), sorted, one factor per ambient ring variable.
    """

    num: tuple
    den: tuple

    @staticmethod
    def make(num_dict, den_factors):
        num = tuple(sorted((d, c) for d, c in num_dict.items() if c))
        den = {}
        for f in den_factors:
            if isinstance(f, tuple) and len(f) == 2 and isinstance(f[0], tuple):
                den[f[0]] = den.get(f[0], 0) + f[1]
            else:
                den[f] = den.get(f, 0) + 1
        return HilbertSeriesRational(num, tuple(sorted(den.items())))

    # -- arithmetic over a common denominator -------------------------------
    def _require_same_den(self, other):
        if self.den != other.den:
            raise SeriesError("series have different denominators")

    def __add__(self, other):
        self._require_same_den(other)
        acc = dict(self.num)
        for d, c in other.num:
            acc[d] = acc.get(d, 0) + c
        return HilbertSeriesRational.make(acc, self.den)

    def __sub__(self, other):
        self._require_same_den(other)
        acc = dict(self.num)
        for d, c in other.num:
            acc[d] = acc.get(d, 0) - c
        return HilbertSeriesRational.make(acc, self.den)

    def shift(self, a, b):
        return HilbertSeriesRational.make(
            {(d[0] + a, d[1] + b): c for d, c in self.num}, self.den
        )

    def num_dict(self):
        return dict(self.num)

    def __eq__(self, other):
        if not isinstance(other, HilbertSeriesRational):
            return NotImplemented
        if self.den == other.den:
            return self.num == other.num
        # cross-multiply: num1 * den2 == num2 * den1 over the union factors
        extra_self = _den_difference(other.den, self.den)
        extra_other = _den_difference(self.den, other.den)
        return _num_times_factors(self.num, extra_self) == _num_times_factors(other.num, extra_other)

    def __hash__(self):
        return hash((self.num, self.den))

    # -- expansion -----------------------------------------------------------
    def expand(self, imax, jmax=0):
        """Power-series coefficients as nested lists: coeff[i][j]."""
        arr = [[0] * (jmax + 1) for _ in range(imax + 1)]
        for (a, b), c in self.num:
            if 0 <= a <= imax and 0 <= b <= jmax:
                arr[a][b] += c
            elif a < 0 or b < 0:
                raise SeriesError("cannot expand a series with Laurent support")
        for (a, b), mult in self.den:
            for _ in range(mult):
                for i in range(imax + 1):
                    for j in range(jmax + 1):
                        if i - a >= 0 and j - b >= 0:
                            arr[i][j] += arr[i - a][j - b]
        return arr

    def coefficient(self, degree):
        if isinstance(degree, int):
            degree = (degree, 0)
        i, j = degree
        if i < 0 or j < 0:
            return 0
        return self.expand(i, j)[i][j]

    def t_slice_numerator(self, j, n_standard):
        """Numerator of the coefficient of t^j over (1-s)^n_standard.

        Requires every t-positive denominator factor to have b = 1; the
        (1-s)-factors must be standard. Returns a dict s-degree -> int.
        """
        sfac = []
        tfac = []
        for (a, b), mult in self.den:
            if b == 0:
                if a != 1:
                    raise SeriesError("non-standard graded factor")
                sfac.extend([(a, b)] * mult)
            elif b == 1:
                tfac.extend([a] * mult)
            else:
                raise SeriesError("denominator factor with t-degree > 1")
        if len(sfac) != n_standard:
            raise SeriesError("expected %d standard factors" % n_standard)
        # expand 1/prod(1 - s^{a_i} t) up to t^j; slice jj is an s-polynomial
        slices = [dict() for _ in range(j + 1)]
        slices[0][0] = 1
        for a in tfac:
            for jj in range(1, j + 1):
                for deg, c in slices[jj - 1].items():
                    slices[jj][deg + a] = slices[jj].get(deg + a, 0) + c
        out = {}
        for (a, b), c in self.num:
            if b <= j:
                for deg, c2 in slices[j - b].items():
                    key = a + deg
                    out[key] = out.get(key, 0) + c * c2
        return {k: v for k, v in out.items() if v}

    def to_json(self):
        return {
            "num": [[c, d[0], d[1]] for d, c in self.num],
            "den": [[d[0], d[1], m] for d, m in self.den],
        }

    def __repr__(self):
        num = " + ".join("%d*s^%d*t^%d" % (c, d[0], d[1]) for d, c in self.num) or "0"
        den = " ".join("(1-s^%d t^%d)^%d" % (d[0], d[1], m) for d, m in self.den)
        return "(%s) / %s" % (num, den)


def _den_difference(big, small):
    """Factors of big not accounted for in small (multiset difference)."""
    small_d = dict(small)
    out = []
    for d, m in big:
        extra = m - small_d.get(d, 0)
        if extra > 0:
            out.extend([d] * extra)
    return out


def _num_times_factors(num, factors):
    acc = dict(num)
    for (a, b) in factors:
        new = {}
        for d, c in acc.items():
            new[d] = new.get(d, 0) + c
            shifted = (d[0] + a, d[1] + b)
            new[shifted] = new.get(shifted, 0) - c
        acc = {k: v for k, v in new.items() if v}
    return tuple(sorted(acc.items()))


# ---------------------------------------------------------------------------
# monomial-quotient numerators (pivot recursion)

def _minimalize_monomials(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return tuple(sorted(out))


def _support(m):
    return tuple(i for i, e in enumerate(m) if e)


def _num_mul(a, b):
    out = {}
    for d1, c1 in a.items():
        for d2, c2 in b.items():
            k = (d1[0] + d2[0], d1[1] + d2[1])
            v = out.get(k, 0) + c1 * c2
            if v:
                out[k] = v
            else:
                out.pop(k, None)
    return out


def _one_minus(deg):
    return {(0, 0): 1, deg: -1} if deg != (0, 0) else {}


def _staircase_numerator(ring, gens, i, j):
    """Closed form when every generator involves only the variables i, j."""
    gens = sorted(gens, key=lambda m: (m[i], -m[j]))
    num = {(0, 0): 1}
    for m in gens:
        d = ring.monomial_degree(m)
        num[d] = num.get(d, 0) - 1
    for a, b in zip(gens, gens[1:]):
        lcm = tuple(max(x, y) for x, y in zip(a, b))
        d = ring.monomial_degree(lcm)
        num[d] = num.get(d, 0) + 1
    return {k: v for k, v in num.items() if v}


def monomial_quotient_numerator(ring, gens, _memo=None):
    """Numerator of the series of ring/(gens) over all (1 - s^a t^b) factors.

    Pivot recursion with component splitting; the pivot variable is the one
    in the most generator supports.
    """
    if _memo is None:
        _memo = {}
    gens = _minimalize_monomials(gens)
    if not gens:
        return {(0, 0): 1}
    key = gens
    hit = _memo.get(key)
    if hit is not None:
        return dict(hit)
    supports = [_support(m) for m in gens]
    # split into support-connected components: the numerators multiply
    comp = list(range(len(gens)))

    def find(a):
        while comp[a] != a:
            comp[a] = comp[comp[a]]
            a = comp[a]
        return a

    byvar = {}
    for gi, s in enumerate(supports):
        for v in s:
            byvar.setdefault(v, []).append(gi)
    for members in byvar.values():
        for other in members[1:]:
            comp[find(other)] = find(members[0])
    groups = {}
    for gi in range(len(gens)):
        groups.setdefault(find(gi), []).append(gi)
    if len(groups) > 1:
        out = {(0, 0): 1}
        for members in groups.values():
            out = _num_mul(out, monomial_quotient_numerator(ring, [gens[gi] for gi in members], _memo))
        _memo[key] = dict(out)
        return out
    if len(gens) == 1:
        out = _one_minus(ring.monomial_degree(gens[0]))
        _memo[key] = dict(out)
        return out
    varset = sorted({v for s in supports for v in s})
    if len(varset) <= 2:
        if len(varset) == 1:
            out = _one_minus(ring.monomial_degree(min(gens, key=sum)))
        else:
            out = _staircase_numerator(ring, gens, varset[0], varset[1])
        _memo[key] = dict(out)
        return out
    counts = {}
    for s in supports:
        for v in s:
            counts[v] = counts.get(v, 0) + 1
    pivot = max(counts, key=lambda v: (counts[v], -v))
    pdeg = ring.monomial_degree(tuple(1 if i == pivot else 0 for i in range(ring.nvars)))
    plus = [m for m in gens if m[pivot] == 0]
    plus.append(tuple(1 if i == pivot else 0 for i in range(ring.nvars)))
    colon = [tuple(e - 1 if i == pivot and e > 0 else e for i, e in enumerate(m)) for m in gens]
    out = dict(monomial_quotient_numerator(ring, plus, _memo))
    for d, c in monomial_quotient_numerator(ring, colon, _memo).items():
        sh = (d[0] + pdeg[0], d[1] + pdeg[1])
        v = out.get(sh, 0) + c
        if v:
            out[sh] = v
        else:
            out.pop(sh, None)
    _memo[key] = dict(out)
    return out


def ring_denominator(ring):
    return [d for d in ring.degrees]


def hilbert_series_monomial(J):
    """Series of ring/J for a monomial ideal J (pivot recursion, exact)."""
    ring = J.ring
    gens = []
    for g in J.gens:
        if len(g.terms) != 1:
            raise SeriesError("non-monomial generator %r" % g)
        gens.append(g.terms[0][0])
    num = monomial_quotient_numerator(ring, gens)
    return HilbertSeriesRational.make(num, ring_denominator(ring))


def hilbert_series_ideal(I, as_module="quotient", order=None):
    """Series of I or ring/I via the initial ideal (series-invariant)."""
    if not I.is_homogeneous():
        raise SeriesError("inhomogeneous generator")
    ring = I.ring
    if I.is_zero():
        quotient = HilbertSeriesRational.make({(0, 0): 1}, ring_denominator(ring))
    else:
        gb = groebner_basis(I, order)
        num = monomial_quotient_numerator(ring, sorted(gb.leading_monomials))
        quotient = HilbertSeriesRational.make(num, ring_denominator(ring))
    if as_module == "quotient":
        return quotient
    if as_module == "ideal":
        full = HilbertSeriesRational.make({(0, 0): 1}, ring_denominator(ring))
        return full - quotient
    raise SeriesError("as_module must be 'ideal' or 'quotient'")


def hilbert_series_ring(ring):
    return HilbertSeriesRational.make({(0, 0): 1}, ring_denominator(ring))


def hilbert_function(series, degree):
    """Power-series coefficient of the series at the given (bi)degree."""
    return series.coefficient(degree)


# ---------------------------------------------------------------------------
# Hilbert polynomials

@dataclass(frozen=True)
class HilbertPolynomial:
    """Exact polynomial agreeing with the Hilbert function for large degrees."""

    coeffs: tuple          # ascending Q[s] coefficients
    threshold: int         # agreement certified for degrees >= threshold
    dimension_hint: int    # number of standard denominator factors

    def __call__(self, x):
        return qp.evaluate(self.coeffs, x)

    @property
    def degree(self):
        return qp.degree(self.coeffs)

    def binomial_coefficients(self, count):
        """Coefficients on the basis binom(s + k, k), k = 0..count-1."""
        return qp.to_binomial_basis(self.coeffs, count)

    def __eq__(self, other):
        if isinstance(other, HilbertPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return "HilbertPolynomial(%s; stable from %d)" % (qp.format_poly(self.coeffs, "s"), self.threshold)


def hilbert_polynomial(series):
    """Hilbert polynomial of a standard graded series N(s)/(1-s)^n."""
    n = 0
    for (a, b), mult in series.den:
        if b != 0:
            raise SeriesError("bigraded series: use bigraded_hilbert_polynomial")
        if a != 1:
            raise SeriesError("non-standard grading has only a quasi-polynomial")
        n += mult
    poly = ()
    max_deg = 0
    for (a, _b), c in series.num:
        max_deg = max(max_deg, a)
        poly = qp.add(poly, qp.scale(qp.binomial_in_x(n - 1 - a, n - 1), c))
    threshold = max(0, max_deg - n + 1)
    return HilbertPolynomial(poly, threshold, n)


@dataclass(frozen=True)
class BigradedHilbertPolynomial:
    """P(i, j) = sum a_kl * binom(i - d*j, k) * binom(j, l) on the stable cone."""

    shear: int
    coeffs: tuple       # ((k, l), Fraction) sorted
    total_degree: int
    window: tuple       # ((i0, j0), size) used for the fit

    def __call__(self, i, j):
        acc = Fraction(0)
        for (k, l), c in self.coeffs:
            acc += c * _binom_frac(i - self.shear * j, k) * _binom_frac(j, l)
        return acc


def _binom_frac(x, k):
    out = Fraction(1)
    for t in range(k):
        out *= Fraction(x - t)
    return out / Fraction(_fact(k))


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def bigraded_hilbert_polynomial(series, shear=None, max_total_degree=None):
    """Fit the bigraded Hilbert polynomial by exact interpolation.

    The basis uses the shear i - d*j where d is the largest first degree
    among second-degree-one denominator factors. Windows auto-grow until a
    disjoint validation window reproduces the Hilbert function.
    """
    tvars = [a for (a, b), m in series.den for _ in range(m) if b == 1]
    nstd = sum(m for (a, b), m in series.den if b == 0)
    if shear is None:
        shear = max(tvars) if tvars else 0
    cap = max_total_degree if max_total_degree is not None else nstd + len(tvars) - 2
    cap = max(cap, 0)
    for D in range(0, cap + 1):
        for (i0, j0) in ((2, 1), (4, 1), (8, 2), (16, 2)):
            fit = _try_fit(series, shear, D, i0, j0)
            if fit is not None:
                return fit
    raise SeriesError("no bigraded Hilbert polynomial found up to total degree %d" % cap)


def _try_fit(series, d, D, i0, j0):
    monomials = [(k, l) for k in range(D + 1) for l in range(D + 1 - k)]
    points = []
    size = len(monomials)
    # sample grid: enough points for the unknowns plus consistency rows
    js = list(range(j0, j0 + D + 2))
    offs = list(range(i0, i0 + D + 2))
    imax = d * max(js) + max(offs)
    jmax = max(js)
    arr = series.expand(imax, jmax)
    rows, rhs = [], []
    for j in js:
        for off in offs:
            i = d * j + off
            rows.append([_binom_frac(i - d * j, k) * _binom_frac(j, l) for (k, l) in monomials])
            rhs.append(arr[i][j])
    sol = solve_exact(rows, rhs)
    if sol is None:
        return None
    coeffs = tuple(sorted(((kl, c) for kl, c in zip(monomials, sol) if c != 0)))
    poly = BigradedHilbertPolynomial(d, coeffs, max((k + l for (k, l), c in coeffs), default=0), ((i0, j0), D + 2))
    # validate on a disjoint window
    vjs = [jmax + 1, jmax + 2]
    voffs = [max(offs) + 1, max(offs) + 2]
    varr = series.expand(d * max(vjs) + max(voffs), max(vjs))
    for j in vjs:
        for off in voffs:
            i = d * j + off
            if poly(i, j) != varr[i][j]:
                return None
    return poly


# ---------------------------------------------------------------------------
# dimension / multiplicity / relevant dimension

@dataclass(frozen=True)
class DimMultReport:
    dimension: int
    multiplicity: Fraction
    relevant_dimension: int | None


def dim_mult(series, with_relevant=True):
    """Krull dimension (pole order), multiplicity, relevant dimension.

    ``with_relevant=False`` skips the bigraded polynomial fit and reports
    only dimension and multiplicity (relevant dimension None for bigraded
    input).
    """
    # specialize s, t -> z with weight a+b per factor; pole order at z = 1
    weights = []
    for (a, b), m in series.den:
        weights.extend([a + b] * m)
    num_z = {}
    for (a, b), c in series.num:
        num_z[a + b] = num_z.get(a + b, 0) + c
    poly = [0] * (max(num_z, default=0) + 1)
    for k, c in num_z.items():
        poly[k] = c
    order = 0
    work = [Fraction(x) for x in poly]
    while work and sum(work) == 0 and any(work):
        # divide by (1 - z)
        out = [Fraction(0)] * (len(work) - 1)
        acc = Fraction(0)
        # N(z) = (1-z) * Q(z): q_k = sum_{i<=k} n_i
        for k in range(len(work) - 1):
            acc += work[k]
            out[k] = acc
        work = out
        order += 1
    if not any(work):
        # zero module
        return DimMultReport(-1, Fraction(0), None)
    dim = len(weights) - order
    value = sum(work)
    wprod = 1
    for w in weights:
        wprod *= w
    mult = Fraction(value, wprod)
    if order == len(weights):
        # dimension zero: total length
        mult = Fraction(value)
    bigraded = any(b for (a, b), m in series.den)
    rel = None
    if not bigraded:
        rel = dim
    elif with_relevant:
        try:
            hp = bigraded_hilbert_polynomial(series)
            rel = hp.total_degree + 2
        except SeriesError:
            rel = None
    return DimMultReport(dim, mult, rel)


def krull_dimension(series):
    return dim_mult(series, with_relevant=False).dimension
