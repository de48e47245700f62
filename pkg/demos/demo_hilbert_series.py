"""Walkthrough: Hilbert series, functions and polynomials for a classical ideal.

The running example is the ideal of the twisted cubic curve in P^3, generated
by the three 2x2 minors of a catalecticant matrix.
"""

from reeslab import (
    Ideal,
    dim_mult,
    graded_ring,
    hilbert_function,
    hilbert_polynomial,
    hilbert_series_ideal,
    ideal_power,
    parse_polynomial,
)

A = graded_ring(["X1", "X2", "X3", "X4"])
I = Ideal(A, [parse_polynomial(s, A) for s in
              ("X1*X4 - X2*X3", "X2^2 - X1*X3", "X3^2 - X2*X4")])

print("ideal generators:")
for g in I.gens:
    print("   ", g)

print("\nHilbert series of I as a module:")
print("   ", hilbert_series_ideal(I, "ideal"))

print("\nHilbert series of the coordinate ring A/I:")
H = hilbert_series_ideal(I, "quotient")
print("   ", H)

print("\nfirst values of the Hilbert function of A/I:")
print("   ", [hilbert_function(H, s) for s in range(8)])

P = hilbert_polynomial(H)
print("\nHilbert polynomial of A/I (a degree-1 polynomial: a curve):")
print("   ", P)

report = dim_mult(H)
print("\ndimension %d, multiplicity %s  (a cubic curve)" % (report.dimension, report.multiplicity))

print("\nThe same data for the square of the ideal:")
I2 = ideal_power(I, 2)
print("    minimal generators of I^2:", len(I2.gens))
H2 = hilbert_series_ideal(I2, "quotient")
print("    series:", H2)
print("    polynomial:", hilbert_polynomial(H2))
