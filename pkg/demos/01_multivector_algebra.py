"""Tour of the numeric multivector kernel: blades, products, frames.

Run:  python3 demos/01_multivector_algebra.py
"""

import numpy as np

from gacalc.algebra import (
    Frame,
    LinearMap11,
    Multivector,
    adjoint,
    biv,
    clifford,
    commutator,
    contraction,
    format_multivector as fmt,
    involution,
    outermorphism,
    reciprocal_frame,
    scalar_product,
    wedge,
)

# Basis blades live on bitmasks: bit i set means e_{i+1} is a factor.
e1 = Multivector.basis_vector(3, 0)
e2 = Multivector.basis_vector(3, 1)
e3 = Multivector.basis_vector(3, 2)

print("== products ==")
print("e1 ^ e2          =", fmt(wedge(e1, e2)))
print("e1 ^ e1          =", fmt(wedge(e1, e1)))
print("e1 e2 (clifford) =", fmt(clifford(e1, e2)))
print("e12 e1           =", fmt(clifford(wedge(e1, e2), e1)), "   (sign from one transposition)")
print("e1 _| e12        =", fmt(contraction(e1, wedge(e1, e2), 'left')))
print("e12 x e1         =", fmt(commutator(wedge(e1, e2), e1)))
print("e12 . e12        =", scalar_product(wedge(e1, e2), wedge(e1, e2)))

print()
print("== involutions ==")
x = Multivector.scalar(3, 1.0) + e1 + wedge(e1, e2) + wedge(e1, wedge(e2, e3))
print("x       =", fmt(x))
print("hat x   =", fmt(involution(x, 'hat')), "  (grade involution)")
print("tilde x =", fmt(involution(x, 'tilde')), "  (reversion)")
print("bar x   =", fmt(involution(x, 'bar')), "  (conjugation)")

print()
print("== vector maps and their extensions ==")
rot = LinearMap11(2, [[0.0, -1.0], [1.0, 0.0]])  # quarter turn
e12 = Multivector.blade(2, 0b11)
print("rotation on the plane bivector:", fmt(outermorphism(rot, e12)), " (det = 1)")
print("biv of the rotation map:       ", fmt(biv(rot)))
stretch = LinearMap11(2, np.diag([2.0, 3.0]))
print("stretch on e12:                ", fmt(outermorphism(stretch, e12)), " (det = 6)")
print("adjoint of [[0,1],[0,0]]:      ")
print(adjoint(LinearMap11(2, [[0.0, 1.0], [0.0, 0.0]])).matrix)

print()
print("== frames ==")
f = Frame.from_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]))
r = reciprocal_frame(f)
print("frame columns:\n", f.matrix)
print("reciprocal columns:\n", r.matrix)
print("Gram pairing f^T r:\n", f.matrix.T @ r.matrix)
