"""Extrapolation of Hilbert data and resolutions of ideal powers; mixed multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from . import _qpoly as qp
from .hilbert import HilbertPolynomial, HilbertSeriesRational


class FitError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Hilbert polynomials of powers

@dataclass(frozen=True)
class PowerPolynomialFamily:
    """Integer-valued polynomials e_0(j), ..., e_{n-h-1}(j) describing P_{A/I^j}.

    P_{A/I^j}(s) = sum_k (-1)^(n-h-1-k) e_{n-h-1-k}(j) binom(s+k, k) for j past
    the threshold; deg e_{n-h-1-k} <= n-k-1.
    """

    polys: tuple           # e_0 .. e_{n-h-1} as coefficient tuples
    n: int
    h: int
    threshold: int
    validated_on: tuple

    def evaluate(self, index, j):
        return qp.evaluate(self.polys[index], j)

    def hilbert_polynomial(self, j):
        """Predicted Hilbert polynomial of A/I^j."""
        n, h = self.n, self.h
        poly = ()
        for k in range(n - h):
            e = qp.evaluate(self.polys[n - h - 1 - k], j)
            sign = 1 if (n - h - 1 - k) % 2 == 0 else -1
            poly = qp.add(poly, qp.scale(qp.binomial_in_x(k, k), sign * e))
        return HilbertPolynomial(poly, 0, n)

    def leading_coefficients(self):
        """lambda_{n-k-1}: binomial-basis leading coefficient of e_{n-h-1-k}."""
        out = {}
        for i, poly in enumerate(self.polys):
            # e_i has degree <= h + i; lambda index is h + i
            k = self.h + i
            padded = tuple(poly) + (Fraction(0),) * max(0, k + 1 - len(poly))
            out[k] = padded[k] * _fact(k)
        return out

    def to_json(self):
        return {
            "e": [[str(c) for c in poly] for poly in self.polys],
            "n": self.n,
            "h": self.h,
            "threshold": self.threshold,
            "validated_on": list(self.validated_on),
        }


def _fact(k):
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


def fit_hilbert_polynomials(samples, n, h, include_zero=True):
    """Fit the power family from Hilbert polynomials of A/I^j.

    ``samples`` maps j >= 1 to HilbertPolynomial; j = 0 contributes the zero
    polynomial for free (A/I^0 = 0). Each e_i is interpolated on its minimal
    point count and verified on every remaining sample.
    """
    if h >= n:
        raise FitError("height n case has zero-dimensional quotients; no family")
    count = n - h
    js = sorted(samples)
    data = {i: [] for i in range(count)}
    if include_zero:
        for i in range(count):
            data[i].append((0, Fraction(0)))
    for j in js:
        hp = samples[j]
        coeffs = hp.binomial_coefficients(count)
        for k in range(count):
            i = count - 1 - k
            sign = 1 if i % 2 == 0 else -1
            data[i].append((j, sign * coeffs[k]))
    polys = []
    validated = set()
    for i in range(count):
        need = h + i + 1  # degree bound h + i
        points = data[i]
        if len(points) < need:
            raise FitError(
                "need %d samples for e_%d (degree <= %d), got %d"
                % (need, i, h + i, len(points))
            )
        poly = qp.interpolate(points[:need], max_degree=h + i)
        for (x, y) in points[need:]:
            if qp.evaluate(poly, x) != y:
                raise FitError("inconsistent samples: e_%d fails at j=%d" % (i, x))
            validated.add(x)
        if not qp.takes_integer_values(poly, range(0, max(js) + 6)):
            raise FitError("e_%d is not integer-valued" % i)
        polys.append(poly)
    return PowerPolynomialFamily(tuple(polys), n, h, min(js) - 1, tuple(sorted(validated)))


# ---------------------------------------------------------------------------
# mixed multiplicities

@dataclass(frozen=True)
class MixedMultiplicities:
    """e_i(R), e_i(G) and totals, from the leading coefficients of the family."""

    rees: tuple
    form: tuple

    @property
    def rees_total(self):
        return sum(self.rees)

    @property
    def form_total(self):
        return sum(self.form)

    def to_json(self):
        return {
            "e_R": [int(x) for x in self.rees],
            "e_G": [int(x) for x in self.form],
            "e_R_total": int(self.rees_total),
            "e_G_total": int(self.form_total),
        }


def mixed_multiplicities(family, d, l):
    """Closed formulas from the leading coefficients (equigenerated, not primary)."""
    n, h = family.n, family.h
    if h >= n:
        raise FitError("maximal-height (primary) ideals have an irrelevant diagonal cone")
    lam = family.leading_coefficients()
    rees = []
    for i in range(n):
        if i <= n - l - 1:
            rees.append(Fraction(0))
        elif i >= n - h:
            rees.append(Fraction(d ** (n - 1 - i)))
        else:
            acc = Fraction(d ** (n - 1 - i))
            for k in range(i, n - h):
                sign = 1 if (n - h - 1 - k) % 2 == 0 else -1
                acc -= sign * lam[n - k - 1] * (d ** (k - i)) * comb(n - 1 - i, k - i)
            rees.append(acc)
    form = []
    for i in range(n - 1):
        if i >= n - h or i <= n - l - 2:
            form.append(Fraction(0))
        else:
            acc = Fraction(0)
            for k in range(i, n - h):
                sign = 1 if (n - h - 1 - k) % 2 == 0 else -1
                acc += sign * lam[n - k - 1] * (d ** (k - i)) * comb(n - 2 - i, k - i)
            form.append(acc)
    for i in range(n - 1):
        if form[i] != d * rees[i + 1] - rees[i]:
            raise FitError("mixed multiplicities violate the transfer identity at i=%d" % i)
    if any(x < 0 for x in rees) or any(x < 0 for x in form):
        raise FitError("negative mixed multiplicity: wrong l or h supplied")
    return MixedMultiplicities(tuple(rees), tuple(form))


# ---------------------------------------------------------------------------
# Hilbert series of powers (equigenerated template)

@dataclass(frozen=True)
class SeriesTemplateFamily:
    """Numerator template: H_{I^j} (1-s)^n = sum_alpha P_alpha(j) s^(alpha + d j)."""

    offsets: tuple
    polys: tuple            # aligned with offsets; coefficient tuples, deg <= l-1
    d: int
    l: int
    n: int
    threshold: int
    validated_on: tuple

    def coefficient(self, alpha, j):
        try:
            k = self.offsets.index(alpha)
        except ValueError:
            return Fraction(0)
        return qp.evaluate(self.polys[k], j)

    def predict(self, j):
        num = {}
        for alpha, poly in zip(self.offsets, self.polys):
            c = qp.evaluate(poly, j)
            if c:
                if c.denominator != 1:
                    raise FitError("template value at j=%d is not an integer" % j)
                num[(self.d * j + alpha, 0)] = int(c)
        return HilbertSeriesRational.make(num, [(1, 0)] * self.n)

    def to_json(self):
        return {
            "offsets": list(self.offsets),
            "polynomials": {str(a): [str(c) for c in p] for a, p in zip(self.offsets, self.polys)},
            "threshold": self.threshold,
            "validated_on": list(self.validated_on),
            "d": self.d,
            "l": self.l,
        }


def _standard_numerator(series, n):
    den = dict(series.den)
    if den != {(1, 0): n}:
        raise FitError("series is not over (1-s)^%d" % n)
    return {a: c for (a, b), c in series.num if c}


def fit_hilbert_series(samples, d, l, include_zero=True):
    """Fit the numerator template of H_{I^j} for an equigenerated ideal.

    ``samples`` maps j to the series of I^j over (1-s)^n. The unit sample
    j = 0 (numerator 1) is included by default. Polynomials have degree
    <= l-1; extra samples validate the fit.
    """
    js = sorted(samples)
    if not js:
        raise FitError("no samples")
    n = sum(m for (a, b), m in samples[js[0]].den)
    numerators = {}
    if include_zero and 0 not in samples:
        numerators[0] = {0: 1}
    for j in js:
        numerators[j] = _standard_numerator(samples[j], n)
    offsets = set()
    for j, num in numerators.items():
        for a, c in num.items():
            off = a - d * j
            if off < 0:
                raise FitError(
                    "negative offset at j=%d: ideal not generated in degree %d" % (j, d)
                )
            offsets.add(off)
    offsets = tuple(sorted(offsets))
    all_js = sorted(numerators)
    if len(all_js) < l:
        raise FitError("window too small: need %d powers, have %d" % (l, len(all_js)))
    fit_js, hold_js = all_js[:l], all_js[l:]
    polys = []
    validated = set()
    for alpha in offsets:
        points = [(j, Fraction(numerators[j].get(d * j + alpha, 0))) for j in fit_js]
        poly = qp.interpolate(points, max_degree=l - 1)
        for j in hold_js:
            if qp.evaluate(poly, j) != numerators[j].get(d * j + alpha, 0):
                raise FitError("validation failure at offset %d, j=%d" % (alpha, j))
            validated.add(j)
        polys.append(poly)
    return SeriesTemplateFamily(
        offsets, tuple(polys), d, l, n, min(j for j in all_js if j > 0) - 1,
        tuple(sorted(validated)),
    )


# ---------------------------------------------------------------------------
# Hilbert series of powers (general recurrence variant)

@dataclass(frozen=True)
class SeriesRecurrence:
    """H_R(s,t) = Q(s,t) / ((1-s)^n prod_i (1 - s^{d_i} t)) recovered from slices."""

    q_slices: tuple        # tuple of (j, numerator dict) for Q
    degrees: tuple
    n: int

    def predict(self, j):
        # expand prod 1/(1 - s^{d_i} t) up to t^j and convolve with Q
        slices = [dict() for _ in range(j + 1)]
        slices[0][0] = 1
        for a in self.degrees:
            for jj in range(1, j + 1):
                for deg, c in slices[jj - 1].items():
                    slices[jj][deg + a] = slices[jj].get(deg + a, 0) + c
        out = {}
        for b, num in self.q_slices:
            if b <= j:
                for a, c in num.items():
                    for deg, c2 in slices[j - b].items():
                        key = a + deg
                        out[key] = out.get(key, 0) + c * c2
        return HilbertSeriesRational.make(
            {(a, 0): c for a, c in out.items() if c}, [(1, 0)] * self.n
        )


def fit_hilbert_series_general(samples, degrees):
    """EE45-style recurrence fit for arbitrary generating degrees.

    ``samples`` must contain consecutive powers 0..m; the fit multiplies the
    truncated series by prod (1 - s^{d_i} t) and demands the top r slices of
    the result vanish, certifying that the window passed the stable range.
    """
    r = len(degrees)
    js = sorted(samples)
    n = sum(m for (a, b), m in samples[js[0]].den)
    numerators = {}
    for j in js:
        numerators[j] = _standard_numerator(samples[j], n)
    if 0 not in numerators:
        numerators[0] = {0: 1}
    m = max(numerators)
    if sorted(numerators) != list(range(m + 1)):
        raise FitError("need consecutive powers 0..%d" % m)
    # Q slices: multiply sum_j N_j t^j by prod (1 - s^{d_i} t), truncated
    q = {j: dict(numerators[j]) for j in range(m + 1)}
    for dd in degrees:
        new = {j: dict(q[j]) for j in range(m + 1)}
        for j in range(1, m + 1):
            for a, c in q[j - 1].items():
                key = a + dd
                new[j][key] = new[j].get(key, 0) - c
        q = {j: {a: c for a, c in sl.items() if c} for j, sl in new.items()}
    top = [j for j in range(max(0, m - r + 1), m + 1) if q[j]]
    if top:
        raise FitError(
            "window too small: numerator slices %s are nonzero; include more powers" % top
        )
    slices = tuple((j, q[j]) for j in range(m + 1) if q[j])
    return SeriesRecurrence(slices, tuple(degrees), n)


# ---------------------------------------------------------------------------
# projective dimension of powers

@dataclass(frozen=True)
class ProjDimReport:
    observed: tuple          # ((j, proj dim), ...)
    stable_value: int | None
    stable_from: int | None
    predicted_threshold: int | None
    prediction_consistent: bool | None

    def to_json(self):
        return {
            "observed": [[j, p] for j, p in self.observed],
            "stable_value": self.stable_value,
            "stable_from": self.stable_from,
            "predicted_threshold": self.predicted_threshold,
            "prediction_consistent": self.prediction_consistent,
        }


def stable_projdim(tables, l, a2_form_ring=None, a_fiber=None):
    """Observed projective dimensions and, with Gorenstein inputs, the sharp threshold.

    With a Gorenstein form ring, proj.dim I^j = l-1 exactly for
    j > a2_form_ring - a_fiber; without those inputs the stabilization point
    is detected empirically from the computed tables.
    """
    observed = []
    for j in sorted(tables):
        table = tables[j]
        if not table.complete:
            raise FitError("table for power %d is truncated" % j)
        observed.append((j, table.max_index()))
    stable_value = observed[-1][1] if observed else None
    stable_from = None
    for j, p in reversed(observed):
        if p == stable_value:
            stable_from = j
        else:
            break
    predicted = None
    consistent = None
    if a2_form_ring is not None and a_fiber is not None:
        predicted = a2_form_ring - a_fiber
        consistent = all(
            (p == l - 1) == (j > predicted) for j, p in observed
        )
    return ProjDimReport(tuple(observed), stable_value, stable_from, predicted, consistent)


# ---------------------------------------------------------------------------
# resolution templates

@dataclass(frozen=True)
class ResolutionTemplate:
    """Per homological index: stable offsets and Betti polynomials in j."""

    offsets: tuple           # ((p, alpha), ...) sorted
    polys: tuple             # aligned coefficient tuples, deg <= l-1
    d: int
    l: int
    threshold: int
    linear: bool
    validated_on: tuple

    def betti_number(self, p, alpha, j):
        for (pp, aa), poly in zip(self.offsets, self.polys):
            if (pp, aa) == (p, alpha):
                return qp.evaluate(poly, j)
        return Fraction(0)

    def predict(self, j):
        """Expected table rows [(p, degree, rank)] for I^j."""
        rows = []
        for (p, alpha), poly in zip(self.offsets, self.polys):
            v = qp.evaluate(poly, j)
            if v:
                if v.denominator != 1 or v < 0:
                    raise FitError("template rank at j=%d is not a natural number" % j)
                rows.append((p, (self.d * j + alpha, 0), int(v)))
        rows.sort()
        return rows

    def matches(self, j, table):
        return self.predict(j) == sorted((p, d, r) for p, d, r in table.rows())

    def to_json(self):
        return {
            "offsets": [[p, a] for p, a in self.offsets],
            "polynomials": {
                "%d,%d" % (p, a): [str(c) for c in poly]
                for (p, a), poly in zip(self.offsets, self.polys)
            },
            "threshold": self.threshold,
            "linear": self.linear,
            "validated_on": list(self.validated_on),
        }


def predict_resolutions(tables, l, d, threshold):
    """Fit shift offsets and Betti polynomials from tables of consecutive powers.

    ``tables`` maps j -> BettiTable of I^j (as ideal); usable samples are the
    js > threshold - l (the stable range). Offsets must not vary with j:
    varying offsets raise, they are not templatable by a linear-shift family.
    """
    js = sorted(j for j in tables if j >= threshold - l + 1)
    if len(js) < l:
        raise FitError("window insufficient: need %d stable powers past %d" % (l, threshold - l))
    if js != list(range(js[0], js[0] + len(js))):
        raise FitError("stable powers must be consecutive")
    per_index = {}
    for j in js:
        table = tables[j]
        if not table.complete:
            raise FitError("table for power %d is truncated" % j)
        for p, (a, b), r in table.rows():
            per_index.setdefault((p, a - d * j), {})[j] = r
    fit_js, hold_js = js[:l], js[l:]
    offsets = tuple(sorted(per_index))
    for p, alpha in offsets:
        if alpha < 0:
            raise FitError("offset %d below the generation degree at p=%d" % (alpha, p))
    polys = []
    validated = set()
    for key in offsets:
        counts = per_index[key]
        points = [(j, Fraction(counts.get(j, 0))) for j in fit_js]
        poly = qp.interpolate(points, max_degree=l - 1)
        for j in hold_js:
            if qp.evaluate(poly, j) != counts.get(j, 0):
                raise FitError("validation failure for offset %s at j=%d" % (key, j))
            validated.add(j)
        polys.append(poly)
    linear = all(alpha == p for p, alpha in offsets)
    return ResolutionTemplate(
        offsets, tuple(polys), d, l, threshold, linear, tuple(sorted(validated))
    )


def threshold_surrogate(rees_is_cm, detected=None):
    """Stability threshold stand-in: -1 for a certified CM Rees algebra, else a detected value."""
    if rees_is_cm:
        return -1
    if detected is None:
        raise FitError("no threshold available: pass a detected stabilization point")
    return detected
