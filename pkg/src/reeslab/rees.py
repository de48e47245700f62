"""Rees-algebra presentations, form ring, fiber cone, analytic spread, reduction-number bounds."""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import (
    Ideal,
    eliminate,
    groebner_basis,
    ideal_power,
    ideal_product,
    minimal_generators,
    transport,
)
from .hilbert import (
    HilbertSeriesRational,
    hilbert_series_ideal,
    krull_dimension,
)
from .rings import Polynomial, RingSpec, graded_ring


class ReesError(ValueError):
    pass


class ReesPresentation:
    """Presentation S = k[X; Y] ->> R(I) with deg Y_j = (d_j, 1).

    ``defining_ideal`` is the kernel K, given by a minimal bihomogeneous
    generating set; the ambient ``ring`` is S.
    """

    def __init__(self, source, ring, defining_ideal, degrees):
        self.source = source
        self.ring = ring
        self.defining_ideal = defining_ideal
        self.degrees = tuple(degrees)
        self._series = None
        self._fiber = None
        self._slices = {}

    @property
    def base_ring(self):
        return self.source.ring

    @property
    def x_count(self):
        return self.base_ring.nvars

    @property
    def y_count(self):
        return len(self.degrees)

    @property
    def max_degree(self):
        return max(self.degrees)

    @property
    def degree_sum(self):
        return sum(self.degrees)

    @property
    def equigenerated(self):
        return len(set(self.degrees)) == 1

    def generator_bidegrees(self):
        return sorted(g.multidegree() for g in self.defining_ideal.gens)

    def series(self):
        if self._series is None:
            self._series = hilbert_series_ideal(self.defining_ideal, "quotient")
        return self._series

    def power_series(self, j):
        """H_{I^j} as a series over (1-s)^n, read off the t-slice of H_R."""
        cached = self._slices.get(j)
        if cached is None:
            num = self.series().t_slice_numerator(j, self.x_count)
            cached = HilbertSeriesRational.make(
                {(a, 0): c for a, c in num.items()},
                [(1, 0)] * self.x_count,
            )
            self._slices[j] = cached
        return cached

    def report(self):
        return {
            "generators": [
                {"poly": repr(g), "bidegree": list(g.multidegree())}
                for g in self.defining_ideal.gens
            ],
            "l": fiber_cone(self).spread,
            "d": self.max_degree,
            "u": self.degree_sum,
            "flags": {
                "equigenerated": self.equigenerated,
                "x_count": self.x_count,
                "y_count": self.y_count,
            },
        }


def rees_presentation(I, check_dimension=True):
    """Kernel of Y_j -> f_j t by eliminating t from (Y_1 - f_1 t, ..., Y_r - f_r t)."""
    if I.is_zero():
        raise ReesError("the zero ideal has no blow-up presentation")
    if not I.is_homogeneous():
        raise ReesError("generators must be homogeneous")
    A = I.ring
    degrees = []
    for f in I.gens:
        d = f.multidegree()
        if d[1] != 0:
            raise ReesError("source ideal must live in the base ring (second degree 0)")
        degrees.append(d[0])
    r = len(I.gens)
    y_names = tuple(_fresh_name("Y%d" % (j + 1), A.names) for j in range(r))
    t_name = _fresh_name("t", A.names + y_names)
    ext = RingSpec(
        A.field,
        A.names + y_names + (t_name,),
        A.degrees + tuple((d, 1) for d in degrees) + ((0, 1),),
        A.order,
    )
    nx = A.nvars
    gens = [
        ext.variable(nx + j) - transport(f, ext) * ext.variable(nx + r)
        for j, f in enumerate(I.gens)
    ]
    K_raw = eliminate(Ideal(ext, gens), [nx + r])
    S = K_raw.ring
    K = Ideal(S, minimal_generators(S, list(K_raw.gens)))
    # keep the groebner cache warm: the elimination already produced a basis
    K._gb_cache[S.order] = groebner_basis(K_raw)
    pres = ReesPresentation(I, S, K, degrees)
    if check_dimension:
        dim = krull_dimension(pres.series())
        expected = A.nvars + 1
        if dim != expected:
            raise ReesError(
                "dim S/K = %d != %d: the ideal meets an associated prime of the base"
                % (dim, expected)
            )
    return pres


def _fresh_name(base, taken):
    name = base
    while name in taken:
        name += "_"
    return name


def form_ring_presentation(P):
    """Defining ideal of the form ring G = R/IR as a quotient of S."""
    S = P.ring
    lifted = [transport(f, S) for f in P.source.gens]
    gens = list(P.defining_ideal.gens) + lifted
    return Ideal(S, minimal_generators(S, gens))


@dataclass(frozen=True)
class FiberConeData:
    """Presentation of F = R/mR over k[Y] (standard grading) and its dimension."""

    ring: RingSpec
    relations: Ideal
    spread: int
    series: HilbertSeriesRational


def fiber_cone(P):
    """Fiber cone as a quotient of k[Y], analytic spread from the series pole."""
    if P._fiber is not None:
        return P._fiber
    S = P.ring
    nx = P.x_count
    F_ring = graded_ring(S.names[nx:], field=S.field)
    gens = []
    for g in groebner_basis(P.defining_ideal).polys:
        coeffs = {}
        for m, c in g.terms:
            if any(m[:nx]):
                continue
            coeffs[m[nx:]] = c
        if coeffs:
            gens.append(Polynomial(F_ring, coeffs))
    J = Ideal(F_ring, minimal_generators(F_ring, gens) if gens else [])
    series = hilbert_series_ideal(J, "quotient")
    spread = krull_dimension(series)
    data = FiberConeData(F_ring, J, spread, series)
    P._fiber = data
    return data


def bigraded_hilbert_series_rees(P):
    """Series of S/K in (s, t)."""
    return P.series()


def reduction_number_bounds(F, fiber_betti):
    """Interval [a_l(F) + l, reg(F)] bounding the reduction number.

    The lower end uses the shift formula for the dim-F cohomological index;
    it is certified when the fiber cone is Cohen-Macaulay or the extremal
    strictness condition holds, and otherwise falls back to 0.
    """
    r = F.ring.nvars
    l = F.spread
    rows = fiber_betti.rows()
    if not rows:
        return (0, 0)
    reg = max(deg[0] - p for p, deg, _ in rows)
    proj_dim = max(p for p, _, _ in rows)
    p_star = r - l
    t_at = {}
    for p, deg, _ in rows:
        t_at[p] = max(t_at.get(p, deg[0]), deg[0])
    lower = 0
    if p_star in t_at:
        if proj_dim == p_star:
            # Cohen-Macaulay fiber cone: the extremal index is the last one
            certified = True
        else:
            # strict drop of the maximal shift certifies the extremal equality
            certified = t_at[p_star] > t_at.get(p_star + 1, t_at[p_star])
        if certified:
            a_l = t_at[p_star] - r
            lower = max(a_l + l, 0)
    return (lower, reg)


def reduction_number(I, J, max_steps=40):
    """Brute-force r_J(I): least m with I^{m+1} = J * I^m (J must be a reduction)."""
    for m in range(max_steps):
        lhs = ideal_power(I, m + 1)
        rhs = ideal_product(J, ideal_power(I, m))
        if all(rhs.contains(g) for g in lhs.gens):
            return m
    raise ReesError("no reduction detected within %d steps" % max_steps)


def builtin_a2_form_ring(family, **params):
    """Known second a-invariants of the form ring for supported families.

    The tool never computes local cohomology: families outside this table
    must pass an explicit value.
    """
    if family == "complete-intersection":
        return -params["r"]
    if family == "maximal-minors":
        m, n = params["m"], params["n"]
        if not 1 <= m <= n:
            raise ReesError("need 1 <= m <= n")
        return -(n - m + 1)
    if family == "strongly-cm":
        return -params["height"]
    raise ReesError("no built-in form-ring a-invariant for family %r" % family)
