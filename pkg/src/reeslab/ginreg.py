"""Generic initial ideals, Borel-fix detection, Borel regularity and the bigraded regularity test."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from ._linalg import VectorSpan
from .groebner import Ideal, groebner_basis, initial_ideal, normal_form
from .rings import Polynomial, mono_divides


class GinError(ValueError):
    pass


def _degree_blocks(ring):
    """Runs of variables sharing a bidegree: the graded coordinate changes mix only these."""
    blocks = {}
    for i, d in enumerate(ring.degrees):
        blocks.setdefault(d, []).append(i)
    return list(blocks.values())


def _random_upper_unitriangular(indices, rng, bound):
    """Entries g[i][j] for i, j in the block, upper triangular, units on the diagonal."""
    k = len(indices)
    g = [[0] * k for _ in range(k)]
    for a in range(k):
        g[a][a] = 1
        for b in range(a + 1, k):
            g[a][b] = rng.randint(-bound, bound)
    return g


def apply_coordinate_change(I, blocks, matrices):
    """Substitute x_j -> sum_i g[i][j] x_i blockwise (a graded automorphism)."""
    ring = I.ring
    images = list(ring.gens())
    for indices, g in zip(blocks, matrices):
        for col, j in enumerate(indices):
            acc = ring.zero()
            for row, i in enumerate(indices):
                if g[row][col]:
                    acc = acc + ring.variable(i).scale(g[row][col])
            images[j] = acc
    out = []
    for f in I.gens:
        acc = ring.zero()
        for mono, coeff in f.terms:
            term = ring.constant(coeff)
            for idx, e in enumerate(mono):
                for _ in range(e):
                    term = term * images[idx]
            acc = acc + term
        out.append(acc)
    return Ideal(ring, out)


@dataclass(frozen=True)
class GinResult:
    ideal: Ideal
    trials: int
    agreement: int
    seed: int
    order: object
    entry_bound: int
    matrix_hash: str

    def generators(self):
        return sorted(g.leading_monomial() for g in self.ideal.gens)

    def to_json(self):
        return {
            "generators": [repr(g) for g in self.ideal.gens],
            "trials": self.trials,
            "agreement": self.agreement,
            "seed": self.seed,
            "entry_bound": self.entry_bound,
            "matrix_hash": self.matrix_hash,
        }


def generic_initial_ideal(I, order=None, trials=3, seed=0, entry_bound=100, max_rounds=3):
    """Common initial ideal of random graded coordinate changes of I.

    Dense integer upper-triangular changes with unit diagonals act on each
    same-bidegree block. All trials must agree; a disagreement doubles the
    entry bound. The stable result is checked to be Borel-fix.
    """
    if I.ring.field.char != 0:
        raise GinError("generic initial ideals are computed over Q only")
    if not I.is_homogeneous():
        raise GinError("ideal must be homogeneous")
    order = order or I.ring.order
    if I.is_zero():
        return GinResult(Ideal(I.ring, []), trials, trials, seed, order, entry_bound, "")
    blocks = _degree_blocks(I.ring)
    bound = entry_bound
    for round_ in range(max_rounds):
        results = []
        hashes = hashlib.sha256()
        for t in range(trials):
            rng = random.Random("%d:%d:%d" % (seed, round_, t))
            mats = [_random_upper_unitriangular(b, rng, bound) for b in blocks]
            hashes.update(repr(mats).encode())
            moved = apply_coordinate_change(I, blocks, mats)
            gin = initial_ideal(moved, order)
            results.append(tuple(sorted(g.leading_monomial() for g in gin.gens)))
        agreement = sum(1 for rr in results if rr == results[0])
        if agreement == trials:
            gens = [Polynomial(I.ring, {m: I.ring.field.one}) for m in results[0]]
            out = Ideal(I.ring, gens)
            report = borel_fix_check(out)
            if not report.is_borel:
                raise GinError(
                    "stable initial ideal is not Borel-fix (witness %r); "
                    "this contradicts genericity - enlarge the entry bound" % (report.witness,)
                )
            return GinResult(
                out, trials, agreement, seed, order, bound, hashes.hexdigest()[:16]
            )
        bound *= 2
    raise GinError("unstable after %d rounds: trials keep disagreeing" % max_rounds)


# ---------------------------------------------------------------------------
# Borel fixity

@dataclass(frozen=True)
class BorelReport:
    is_borel: bool
    char_p: int
    witness: tuple | None      # (monomial, i, j, s) violating the exchange move
    delta: tuple | None        # (delta_1, delta_2) of the minimal generators

    def to_json(self):
        return {
            "is_borel": self.is_borel,
            "char_p": self.char_p,
            "witness": list(map(list, self.witness)) if self.witness else None,
            "delta": list(self.delta) if self.delta else None,
        }


def _dominated_by_p(s, t, p):
    """s <_p t: binom(t, s) != 0 mod p, by Lucas when p > 0; s <= t in char 0."""
    if s > t:
        return False
    if p == 0:
        return True
    while s or t:
        if s % p > t % p:
            return False
        s //= p
        t //= p
    return True


def borel_fix_check(J, char_p=0):
    """Exchange-move audit of a monomial ideal: exhaustive, never reasons."""
    gens = []
    for g in J.gens:
        if len(g.terms) != 1:
            raise GinError("non-monomial generator %r" % g)
        gens.append(g.leading_monomial())
    ring = J.ring
    blocks = _degree_blocks(ring)

    def member(mono):
        return any(mono_divides(g, mono) for g in gens)

    for m in gens:
        for block in blocks:
            for bj, j in enumerate(block):
                t = m[j]
                if t == 0:
                    continue
                for i in block[:bj]:
                    for s in range(1, t + 1):
                        if not _dominated_by_p(s, t, char_p):
                            continue
                        moved = list(m)
                        moved[j] -= s
                        moved[i] += s
                        if not member(tuple(moved)):
                            return BorelReport(False, char_p, (m, i, j, s), None)
    delta = None
    if gens:
        degs = [ring.monomial_degree(m) for m in gens]
        delta = (max(d[0] for d in degs), max(d[1] for d in degs))
    return BorelReport(True, char_p, None, delta)


def borel_regularity(J):
    """reg of a Borel-fix monomial ideal in char 0: the generator-degree pair."""
    if J.ring.field.char != 0:
        raise GinError("the generator-degree formula needs characteristic 0")
    report = borel_fix_check(J, 0)
    if not report.is_borel:
        raise GinError("ideal is not Borel-fix: witness %r" % (report.witness,))
    if report.delta is None:
        raise GinError("the zero ideal has no regularity")
    return report.delta


# ---------------------------------------------------------------------------
# bigraded regularity test via generic linear forms

@dataclass(frozen=True)
class RegularityCheck:
    verdict: bool
    first_degree: int
    window: tuple
    forms_used: int
    seed: int
    note: str

    def to_json(self):
        return {
            "verdict": self.verdict,
            "first_degree": self.first_degree,
            "window": list(self.window),
            "forms_used": self.forms_used,
            "seed": self.seed,
            "note": self.note,
        }


def _piece_dimension(ideal_gb, ring, degree):
    monos = ring.monomials_of_degree(degree)
    if ideal_gb is None:
        return 0
    return sum(1 for m in monos if ideal_gb.contains_monomial(m))


def bayer_stillman_check(I, m, q_window=None, seed=0, entry_bound=100):
    """(m, .)-regularity by the generic-form colon equalities on graded pieces.

    Works through generic linear forms h in the degree-(1,0) block: at each
    step either the current ideal fills every S_(m,q) on the window, or the
    colon by the next form must leave the (m, q)-pieces unchanged. The window
    is reported; exhausting it without a certificate raises, it never passes
    silently.
    """
    ring = I.ring
    if ring.field.char != 0:
        raise GinError("the generic-form test is run over Q")
    x_block = [i for i, d in enumerate(ring.degrees) if d == (1, 0)]
    if not x_block:
        raise GinError("no degree-(1,0) variables to draw generic forms from")
    if any(g.multidegree()[0] > m for g in I.gens):
        raise GinError("ideal has a generator of first degree above %d" % m)
    if q_window is None:
        qmax = max((g.multidegree()[1] for g in I.gens), default=0)
        q_window = (0, qmax + sum(1 for d in ring.degrees if d[1] > 0) + 1)
    qs = range(q_window[0], q_window[1] + 1)
    rng = random.Random(seed)
    J = I
    forms = 0
    note = (
        "certificate via the generic-form direction; the number of forms used "
        "is reported because the cohomological count is not computed"
    )
    for step in range(len(x_block) + 1):
        gb = groebner_basis(J) if not J.is_zero() else None
        filled = all(
            _piece_dimension(gb, ring, (m, q)) == len(ring.monomials_of_degree((m, q)))
            for q in qs
        )
        if filled:
            return RegularityCheck(True, m, tuple(q_window), forms, seed, note)
        if step == len(x_block):
            break
        h = ring.zero()
        for i in x_block:
            h = h + ring.variable(i).scale(rng.randint(-entry_bound, entry_bound))
        # colon equality on the (m, q) pieces
        for q in qs:
            if not _colon_piece_equal(J, gb, h, m, q):
                return RegularityCheck(False, m, tuple(q_window), forms + 1, seed, note)
        J = Ideal(ring, list(J.gens) + [h])
        forms += 1
    raise GinError(
        "window %r exhausted without certificate: enlarge q_window" % (q_window,)
    )


def _colon_piece_equal(J, gb, h, m, q):
    """(J : h)_(m,q) == J_(m,q) as dimensions; exact linear algebra."""
    ring = J.ring
    monos = ring.monomials_of_degree((m, q))
    if not monos:
        return True
    dim_J = sum(1 for mono in monos if gb is not None and gb.contains_monomial(mono))
    # kernel of multiplication by h into (S/J)_(m+1, q)
    target = {}
    span_rows = []
    for mono in monos:
        f = Polynomial(ring, {mono: ring.field.one}) * h
        nf = normal_form(f, gb) if gb is not None else f
        row = {}
        for mm, c in nf.terms:
            col = target.setdefault(mm, len(target))
            row[col] = c
        span_rows.append(row)
    span = VectorSpan(0)
    rank = 0
    for row in span_rows:
        if span.add(row):
            rank += 1
    kernel = len(monos) - rank
    return kernel == dim_J
