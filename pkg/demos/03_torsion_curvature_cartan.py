"""Torsion, curvature and Cartan's structure equations on two fixtures.

The unit-sphere chart is torsionless but curved; the constant-coefficient
fixture is flat-looking but torsionful.  Both satisfy the two structure
equations; the cyclic and differential curvature identities hold on the
symmetric one.

Run:  python3 demos/03_torsion_curvature_cartan.py
"""

import math

import numpy as np

from gacalc import fields as mf
from gacalc.algebra import format_multivector as fmt
from gacalc.cartan import (
    cartan_curvature,
    cartan_torsion,
    check_bianchi,
    check_cyclic,
    check_structure_equation,
    curvature,
    invert_cartan_curvature,
    torsion,
)
from gacalc.fixtures import sphere_fixture, torsionful_fixture

sphere = sphere_fixture()
tors = torsionful_fixture()
e1, e2 = mf.basis(2, 0), mf.basis(2, 1)
q = (math.pi / 3, 0.25)

print("== unit sphere chart (theta, phi) ==")
print("torsion tau(e1, e2):        ", fmt(torsion(sphere.conn, e1, e2).at(q)))
rho = curvature(sphere.conn, e1, e2, e2)
print("curvature rho(e1,e2,e2):    ", fmt(rho.at(q)), "  (sin^2 theta at theta=pi/3)")
om = cartan_curvature(sphere.conn, e2, e1)
print("Cartan curvature (e2, e1):  ", fmt(om.at(q)))
back = invert_cartan_curvature(lambda c, d: cartan_curvature(sphere.conn, c, d), e1, e2, e2)
print("inversion recovers rho:     ", fmt(back.at(q)))

print()
print("== torsionful constant-coefficient fixture ==")
p = (0.2, -0.4)
print("tau(e1, e2):                ", fmt(torsion(tors.conn, e1, e2).at(p)))
print("Cartan torsion of e1:       ", fmt(cartan_torsion(tors.conn, e1).at(p)))

print()
print("== structure equations, both sides via independent code paths ==")
rng = np.random.default_rng(11)
for fix in (sphere, tors):
    pts = fix.domain.sample(10, rng)
    r1 = check_structure_equation(fix.conn, "first", [(e1,), (e2,)], pts, 1e-9)
    r2 = check_structure_equation(fix.conn, "second", [(e1, e2)], pts, 1e-9)
    print(f"{fix.name:<11} first:  max residual {r1.max_residual:.2e}  -> {'PASS' if r1.passed else 'FAIL'}")
    print(f"{fix.name:<11} second: max residual {r2.max_residual:.2e}  -> {'PASS' if r2.passed else 'FAIL'}")

print()
print("== symmetric-structure identities on the sphere ==")
pts = sphere.domain.sample(12, rng)
cyc = check_cyclic(sphere.conn, pts, 1e-8)
bia = check_bianchi(sphere.conn, pts, 1e-8)
print(f"cyclic sum residual:   {cyc.max_residual:.2e}  -> {'PASS' if cyc.passed else 'FAIL'}")
print(f"bianchi sum residual:  {bia.max_residual:.2e}  -> {'PASS' if bia.passed else 'FAIL'}")
print("(asking for these on the torsionful fixture raises NotSymmetricError)")
