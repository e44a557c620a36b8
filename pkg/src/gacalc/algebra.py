"""Dense multivector algebra over Euclidean R^n with blade-bitmask storage.

Basis blades are indexed by bitmask: bit i set means basis vector e_{i+1}
is a factor, so e.g. mask 0b011 is e1^e2.  Product signs come from counting
the transpositions needed to bring concatenated generators into ascending
order; with the Euclidean scalar product every repeated generator squares
to +1, so a single sign rule covers the geometric product, the outer
product and both contractions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_DIM = 6


def _check_dim(dim: int) -> None:
    if not 2 <= dim <= MAX_DIM:
        raise ValueError(f"dimension must be between 2 and {MAX_DIM}, got {dim}")


def grade_of(mask: int) -> int:
    """Grade of a basis blade, i.e. the number of generators in it."""
    return int(mask).bit_count()


def reorder_sign(a: int, b: int) -> int:
    """Sign from sorting the concatenation of blades ``a`` and ``b``.

    Counts pairs (i in a, j in b) with i > j; each such pair is one
    transposition.  Valid for an orthonormal Euclidean basis.
    """
    a >>= 1
    swaps = 0
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


_INVOLUTION_SIGNS = {
    "hat": lambda k: -1.0 if k % 2 else 1.0,
    "tilde": lambda k: -1.0 if (k * (k - 1) // 2) % 2 else 1.0,
    "bar": lambda k: -1.0 if (k * (k + 1) // 2) % 2 else 1.0,
}


@dataclass(frozen=True, eq=False)
class Multivector:
    """Element of the 2^n-dimensional Clifford algebra of Euclidean R^n."""

    dim: int
    coeffs: np.ndarray

    def __post_init__(self):
        _check_dim(self.dim)
        arr = np.asarray(self.coeffs, dtype=float)
        if arr.shape != (1 << self.dim,):
            raise ValueError(
                f"expected {1 << self.dim} coefficients for dim {self.dim}, got {arr.shape}"
            )
        object.__setattr__(self, "coeffs", arr.copy())

    @classmethod
    def zero(cls, dim: int) -> Multivector:
        return cls(dim, np.zeros(1 << dim))

    @classmethod
    def scalar(cls, dim: int, value: float) -> Multivector:
        c = np.zeros(1 << dim)
        c[0] = value
        return cls(dim, c)

    @classmethod
    def blade(cls, dim: int, mask: int, coeff: float = 1.0) -> Multivector:
        c = np.zeros(1 << dim)
        c[mask] = coeff
        return cls(dim, c)

    @classmethod
    def basis_vector(cls, dim: int, i: int) -> Multivector:
        return cls.blade(dim, 1 << i)

    @classmethod
    def from_vector(cls, components) -> Multivector:
        comps = np.asarray(components, dtype=float)
        dim = len(comps)
        c = np.zeros(1 << dim)
        for i, v in enumerate(comps):
            c[1 << i] = v
        return cls(dim, c)

    def vector_components(self) -> np.ndarray:
        return np.array([self.coeffs[1 << i] for i in range(self.dim)])

    def grades(self) -> set[int]:
        return {grade_of(m) for m in np.nonzero(self.coeffs)[0]}

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def __add__(self, other: Multivector) -> Multivector:
        _same_dim(self, other)
        return Multivector(self.dim, self.coeffs + other.coeffs)

    def __sub__(self, other: Multivector) -> Multivector:
        _same_dim(self, other)
        return Multivector(self.dim, self.coeffs - other.coeffs)

    def __neg__(self) -> Multivector:
        return Multivector(self.dim, -self.coeffs)

    def __rmul__(self, scalar: float) -> Multivector:
        return Multivector(self.dim, float(scalar) * self.coeffs)

    __mul__ = __rmul__

    def __repr__(self) -> str:
        return f"Multivector({self.dim}, {format_multivector(self)})"


def _same_dim(x: Multivector, y: Multivector) -> None:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")


def allclose(x: Multivector, y: Multivector, atol: float = 1e-12) -> bool:
    _same_dim(x, y)
    return bool(np.allclose(x.coeffs, y.coeffs, rtol=0.0, atol=atol))


def grade_project(x: Multivector, k: int) -> Multivector:
    out = np.zeros_like(x.coeffs)
    for m in np.nonzero(x.coeffs)[0]:
        if grade_of(m) == k:
            out[m] = x.coeffs[m]
    return Multivector(x.dim, out)


def wedge(x: Multivector, y: Multivector) -> Multivector:
    """Exterior product; blades with shared generators annihilate."""
    _same_dim(x, y)
    out = np.zeros_like(x.coeffs)
    for a in np.nonzero(x.coeffs)[0]:
        xa = x.coeffs[a]
        for b in np.nonzero(y.coeffs)[0]:
            if a & b:
                continue
            out[a | b] += reorder_sign(a, b) * xa * y.coeffs[b]
    return Multivector(x.dim, out)


def clifford(x: Multivector, y: Multivector) -> Multivector:
    """Geometric (Clifford) product with Euclidean signature e_i e_i = 1."""
    _same_dim(x, y)
    out = np.zeros_like(x.coeffs)
    for a in np.nonzero(x.coeffs)[0]:
        xa = x.coeffs[a]
        for b in np.nonzero(y.coeffs)[0]:
            out[a ^ b] += reorder_sign(a, b) * xa * y.coeffs[b]
    return Multivector(x.dim, out)


def scalar_product(x: Multivector, y: Multivector) -> float:
    """Euclidean multivector scalar product, <reverse(X) Y>_0.

    Distinct basis blades are orthogonal and every blade has unit square,
    so this reduces to the dot product of coefficient arrays; on same-grade
    blades it agrees with det(v_i . w_j).
    """
    _same_dim(x, y)
    return float(np.dot(x.coeffs, y.coeffs))


def contraction(x: Multivector, y: Multivector, side: str = "left") -> Multivector:
    """Left (x lowers y) or right (y lowers x) interior product."""
    _same_dim(x, y)
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    out = np.zeros_like(x.coeffs)
    for a in np.nonzero(x.coeffs)[0]:
        xa = x.coeffs[a]
        for b in np.nonzero(y.coeffs)[0]:
            keep = (a & ~b) == 0 if side == "left" else (b & ~a) == 0
            if keep:
                out[a ^ b] += reorder_sign(a, b) * xa * y.coeffs[b]
    return Multivector(x.dim, out)


def commutator(a: Multivector, x: Multivector) -> Multivector:
    """Commutator product A x X = (AX - XA)/2."""
    return 0.5 * (clifford(a, x) - clifford(x, a))


def involution(x: Multivector, kind: str) -> Multivector:
    """Grade involution ('hat'), reversion ('tilde') or conjugation ('bar')."""
    try:
        sign = _INVOLUTION_SIGNS[kind]
    except KeyError:
        raise ValueError(f"unknown involution {kind!r}") from None
    out = x.coeffs.copy()
    for m in range(len(out)):
        out[m] *= sign(grade_of(m))
    return Multivector(x.dim, out)


@dataclass(frozen=True, eq=False)
class LinearMap11:
    """Pointwise linear map on vectors; column j is the image of e_{j+1}."""

    dim: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_dim(self.dim)
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (self.dim, self.dim):
            raise ValueError(f"expected {self.dim}x{self.dim} matrix, got {m.shape}")
        object.__setattr__(self, "matrix", m.copy())

    @classmethod
    def identity(cls, dim: int) -> LinearMap11:
        return cls(dim, np.eye(dim))

    def apply(self, v: Multivector) -> Multivector:
        if v.dim != self.dim:
            raise ValueError(f"dimension mismatch: {v.dim} vs {self.dim}")
        return Multivector.from_vector(self.matrix @ v.vector_components())


def adjoint(t: LinearMap11) -> LinearMap11:
    """Adjoint wrt the Euclidean scalar product: matrix transpose."""
    return LinearMap11(t.dim, t.matrix.T)


def sym_part(t: LinearMap11) -> LinearMap11:
    return LinearMap11(t.dim, 0.5 * (t.matrix + t.matrix.T))


def skew_part(t: LinearMap11) -> LinearMap11:
    return LinearMap11(t.dim, 0.5 * (t.matrix - t.matrix.T))


def outermorphism(t: LinearMap11, x: Multivector) -> Multivector:
    """Extend t to all grades: blades map to wedges of images, scalars pass."""
    if x.dim != t.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {t.dim}")
    images = [Multivector.from_vector(t.matrix[:, j]) for j in range(t.dim)]
    out = Multivector.zero(x.dim)
    for m in np.nonzero(x.coeffs)[0]:
        c = x.coeffs[m]
        if m == 0:
            out = out + Multivector.scalar(x.dim, c)
            continue
        blade = None
        for j in range(x.dim):
            if m >> j & 1:
                blade = images[j] if blade is None else wedge(blade, images[j])
        out = out + c * blade
    return out


@dataclass(frozen=True, eq=False)
class Frame:
    """Ordered tuple of n linearly independent vectors of R^n."""

    dim: int
    vectors: tuple[Multivector, ...]

    def __post_init__(self):
        _check_dim(self.dim)
        vs = tuple(self.vectors)
        if len(vs) != self.dim:
            raise ValueError(f"frame needs {self.dim} vectors, got {len(vs)}")
        for v in vs:
            if v.dim != self.dim or v.grades() - {1}:
                raise ValueError("frame vectors must be grade-1 multivectors of matching dimension")
        object.__setattr__(self, "vectors", vs)

    @classmethod
    def from_matrix(cls, matrix) -> Frame:
        m = np.asarray(matrix, dtype=float)
        return cls(m.shape[0], tuple(Multivector.from_vector(m[:, j]) for j in range(m.shape[0])))

    @property
    def matrix(self) -> np.ndarray:
        return np.column_stack([v.vector_components() for v in self.vectors])


def canonical_frame(dim: int) -> Frame:
    return Frame(dim, tuple(Multivector.basis_vector(dim, i) for i in range(dim)))


def reciprocal_frame(frame: Frame) -> Frame:
    """Frame {e^mu} with e_mu . e^nu = delta; solves the Gram system."""
    gram = frame.matrix.T @ frame.matrix
    try:
        inv = np.linalg.inv(gram)
    except np.linalg.LinAlgError:
        raise ValueError("singular Gram matrix: frame vectors are linearly dependent") from None
    recip = frame.matrix @ inv
    return Frame.from_matrix(recip)


def biv(t: LinearMap11, frame: Frame | None = None) -> Multivector:
    """Bivector of a vector map: sum over t(e^mu) ^ e_mu, frame independent."""
    if frame is None:
        frame = canonical_frame(t.dim)
    recip = reciprocal_frame(frame)
    out = Multivector.zero(t.dim)
    for e_mu, e_up in zip(frame.vectors, recip.vectors):
        out = out + wedge(t.apply(e_up), e_mu)
    return out


_BLADE_NAMES_CACHE: dict[tuple[int, int], str] = {}


def blade_name(dim: int, mask: int) -> str:
    key = (dim, mask)
    if key not in _BLADE_NAMES_CACHE:
        _BLADE_NAMES_CACHE[key] = "e" + "".join(str(i + 1) for i in range(dim) if mask >> i & 1) if mask else ""
    return _BLADE_NAMES_CACHE[key]


def format_multivector(x: Multivector, sig: int = 12, tol: float = 0.0) -> str:
    """Blade-coefficient expansion like '0.75 e1 - 1.25 e12'; '0' when empty."""
    masks = [m for m in np.nonzero(x.coeffs)[0] if abs(x.coeffs[m]) > tol]
    masks.sort(key=lambda m: (grade_of(m), m))
    if not masks:
        return "0"
    parts: list[str] = []
    for m in masks:
        c = x.coeffs[m]
        mag = f"{abs(c):.{sig}g}"
        name = blade_name(x.dim, m)
        term = f"{mag} {name}".strip()
        if not parts:
            parts.append(term if c >= 0 else f"-{term}")
        else:
            parts.append(f"+ {term}" if c >= 0 else f"- {term}")
    return " ".join(parts)
