"""Universal invariant symmetric bilinear forms.

The symmetric square S2(L) carries the derivation action
D.(x . y) = Dx . y + x . Dy.  Quotienting S2(L) by the span of that
action yields the universal target V(L), and the composite
kappa(x, y) = [x . y] is the universal invariant form: every symmetric
bilinear form that is killed by all derivations factors uniquely
through kappa, and factor_through computes that factorisation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    NotInvariantError,
    NotSymmetricError,
)
from .lie import DerivationSpace, LieAlgebra, derivations
from .linalg import (
    SparseMatrix,
    Subspace,
    Vec,
    _as_fraction,
    quotient_space,
    rank,
    solve_linear,
    vector,
)

_ZERO = Fraction(0)


class SymSquare:
    """Index bookkeeping for the symmetric square of an n-dim space."""

    __slots__ = ("parent", "pairs", "index")

    def __init__(self, parent: LieAlgebra):
        self.parent = parent
        self.pairs = tuple(combinations_with_replacement(range(parent.dim), 2))
        self.index = {pair: t for t, pair in enumerate(self.pairs)}

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def flat(self, i: int, j: int) -> int:
        return self.index[(i, j) if i <= j else (j, i)]

    def product_coords(self, x: Sequence, y: Sequence) -> Vec:
        """Coordinates of the symmetrised tensor x . y."""
        out = [_ZERO] * self.dim
        nz_x = [(i, _as_fraction(a)) for i, a in enumerate(x) if a]
        nz_y = [(j, _as_fraction(b)) for j, b in enumerate(y) if b]
        for i, a in nz_x:
            for j, b in nz_y:
                out[self.flat(i, j)] += a * b
        return tuple(out)

    def derivation_image(self, D, t: int) -> Vec:
        """D applied to the t-th basis vector b_i . b_j."""
        i, j = self.pairs[t]
        out = [_ZERO] * self.dim
        for r in range(len(D)):
            c = D[r][i]
            if c:
                out[self.flat(r, j)] += c
            c = D[r][j]
            if c:
                out[self.flat(i, r)] += c
        return tuple(out)


class BilinearForm:
    """Bilinear map L x L -> QQ^w given by its values on basis pairs."""

    __slots__ = ("dim", "target_dim", "values")

    def __init__(self, dim: int, target_dim: int, values):
        self.dim = dim
        self.target_dim = target_dim
        self.values = tuple(
            tuple(vector(v) for v in row) for row in values
        )
        for row in self.values:
            if len(row) != dim:
                raise DimensionMismatchError("bilinear form table must be square")
            for v in row:
                if len(v) != target_dim:
                    raise DimensionMismatchError("bilinear form value has wrong length")

    @classmethod
    def from_matrix(cls, matrix) -> "BilinearForm":
        n = len(matrix)
        return cls(n, 1, [[(entry,) for entry in row] for row in matrix])

    def value(self, i: int, j: int) -> Vec:
        return self.values[i][j]

    def symmetry_defect(self) -> Optional[tuple]:
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.values[i][j] != self.values[j][i]:
                    return (i, j)
        return None

    def invariance_defect(self, ders: DerivationSpace) -> Optional[tuple]:
        """First (derivation index, i, j) with beta(Dx,y) + beta(x,Dy) != 0."""
        n = self.dim
        for d_idx, D in enumerate(ders.basis):
            for i in range(n):
                for j in range(i, n):
                    total = [_ZERO] * self.target_dim
                    for r in range(n):
                        c = D[r][i]
                        if c:
                            for a, v in enumerate(self.values[r][j]):
                                total[a] += c * v
                        c = D[r][j]
                        if c:
                            for a, v in enumerate(self.values[i][r]):
                                total[a] += c * v
                    if any(total):
                        return (d_idx, i, j)
        return None


class UniversalFormSpace:
    """V(L) together with the universal form kappa."""

    __slots__ = ("parent", "sym", "ders", "v_space", "kappa_table")

    def __init__(self, parent, sym, ders, v_space):
        self.parent = parent
        self.sym = sym
        self.ders = ders
        self.v_space = v_space
        self.kappa_table = tuple(
            v_space.project(self._unit_sym(t)) for t in range(sym.dim)
        )

    def _unit_sym(self, t: int) -> Vec:
        out = [_ZERO] * self.sym.dim
        out[t] = Fraction(1)
        return tuple(out)

    @property
    def dim(self) -> int:
        return self.v_space.dim

    def kappa_basis(self, i: int, j: int) -> Vec:
        """kappa(b_i, b_j) in the canonical V(L) coordinates."""
        return self.kappa_table[self.sym.flat(i, j)]

    def kappa(self, x: Sequence, y: Sequence) -> Vec:
        return self.v_space.project(self.sym.product_coords(x, y))

    def kappa_form(self) -> BilinearForm:
        n = self.parent.dim
        return BilinearForm(
            n, self.dim, [[self.kappa_basis(i, j) for j in range(n)] for i in range(n)]
        )

    def __repr__(self):
        return f"UniversalFormSpace(dim V = {self.dim}, parent dim = {self.parent.dim})"


def v_space_and_kappa(L: LieAlgebra, ders: Optional[DerivationSpace] = None) -> UniversalFormSpace:
    """Build V(L) = S2(L) / <der(L).S2(L)> and kappa = projection of
    the symmetrised tensor.

    The action span is generated from a basis of der(L) applied to the
    symmetric basis vectors; linearity of the action makes that span
    the full <der(L).S2(L)>.
    """
    if ders is None:
        ders = derivations(L)
    sym = SymSquare(L)
    generators = []
    for D in ders.basis:
        for t in range(sym.dim):
            generators.append(sym.derivation_image(D, t))
    sub = Subspace.from_spanning(sym.dim, generators)
    return UniversalFormSpace(L, sym, ders, quotient_space(sym.dim, sub))


class FactorMap:
    """Linear map V(L) -> QQ^w produced by factor_through."""

    __slots__ = ("source", "target_dim", "matrix")

    def __init__(self, source: UniversalFormSpace, target_dim: int, matrix):
        self.source = source
        self.target_dim = target_dim
        self.matrix = tuple(tuple(row) for row in matrix)

    def apply(self, v_coords: Sequence) -> Vec:
        return tuple(
            sum((row[t] * v_coords[t] for t in range(len(v_coords)) if v_coords[t]), _ZERO)
            for row in self.matrix
        )

    def rank(self) -> int:
        return rank(SparseMatrix.from_dense(self.matrix)) if self.matrix else 0

    def kernel_dim(self) -> int:
        return self.source.dim - self.rank()

    def is_identity(self) -> bool:
        if self.target_dim != self.source.dim:
            return False
        return all(
            self.matrix[i][j] == (1 if i == j else 0)
            for i in range(self.target_dim)
            for j in range(self.source.dim)
        )

    def __repr__(self):
        return f"FactorMap({self.source.dim} -> {self.target_dim})"


def factor_through(F: UniversalFormSpace, beta: BilinearForm) -> FactorMap:
    """Unique linear map phi with beta = phi o kappa.

    beta must be symmetric and derivation invariant; both preconditions
    are checked and reported with witnesses.  Existence and uniqueness
    then follow because kappa's values span V(L); the result is verified
    on all basis pairs before returning.
    """
    if beta.dim != F.parent.dim:
        raise DimensionMismatchError("form dimension does not match the algebra")
    pair = beta.symmetry_defect()
    if pair is not None:
        raise NotSymmetricError(pair)
    witness = beta.invariance_defect(F.ders)
    if witness is not None:
        raise NotInvariantError(witness)
    v = F.dim
    w = beta.target_dim
    # kappa values on the symmetric basis span V, so K has full column rank
    # and the canonical solve is the unique solution.
    kappa_rows = SparseMatrix.from_dense(F.kappa_table) if F.sym.dim else SparseMatrix.zeros(0, v)
    matrix = []
    for a in range(w):
        target = tuple(
            beta.value(*F.sym.pairs[t])[a] for t in range(F.sym.dim)
        )
        row = solve_linear(kappa_rows, target)
        if row is None:
            raise InternalConsistencyError(
                "invariant symmetric form failed to factor through kappa"
            )
        matrix.append(row)
    result = FactorMap(F, w, matrix)
    n = F.parent.dim
    for i in range(n):
        for j in range(i, n):
            if result.apply(F.kappa_basis(i, j)) != beta.value(i, j):
                raise InternalConsistencyError(
                    "factorisation check failed on a basis pair"
                )
    return result
