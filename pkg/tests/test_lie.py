import random
from fractions import Fraction
from itertools import combinations

import pytest

from currentext.catalog import lie_catalog
from currentext.errors import NotInDerivedAlgebraError
from currentext.lie import (
    LieAlgebra,
    derivations,
    derived_subalgebra,
    direct_sum,
    is_perfect,
    killing_form,
    perfect_witness,
    realify,
    validate_lie,
)

from oracles import dense_nullity

F = Fraction

CATALOG = ["sl2", "sl3", "so3", "heis3", "abelian:3", "sl2C", "gl2", "sl2+so3"]


@pytest.mark.parametrize("name", CATALOG)
def test_catalog_algebras_are_valid(name):
    assert validate_lie(lie_catalog(name)).ok


def test_antisymmetry_violation_reported():
    L = LieAlgebra(("a", "b"), [(0, 1, 0, 1), (1, 0, 0, 1)])
    report = validate_lie(L)
    assert not report.ok
    assert report.antisymmetry_violations == [(0, 1, 0, F(2))]


def test_jacobi_violation_reported():
    # [x,y] = z, [y,z] = x, [x,z] = x: the Jacobi sum on (x,y,z) is
    # [[x,y],z] + [[y,z],x] + [[z,x],y] = 0 + 0 + [-x, y] = -z
    L = LieAlgebra(("x", "y", "z"), [(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 0, 1)])
    report = validate_lie(L)
    assert report.antisymmetry_violations == []
    assert len(report.jacobi_violations) == 1
    triple, defect = report.jacobi_violations[0]
    assert triple == (0, 1, 2)
    assert defect == (F(0), F(0), F(-1))


def test_killing_sl2_against_ad_matrix_oracle():
    # oracle: explicit ad matrices on the ordered basis (e, h, f)
    ad_e = [[0, -2, 0], [0, 0, 1], [0, 0, 0]]
    ad_h = [[2, 0, 0], [0, 0, 0], [0, 0, -2]]
    ad_f = [[0, 0, 0], [-1, 0, 0], [0, 2, 0]]
    ads = [ad_e, ad_h, ad_f]

    def trace_product(a, b):
        return sum(a[i][j] * b[j][i] for i in range(3) for j in range(3))

    expected = [[trace_product(x, y) for y in ads] for x in ads]
    matrix, semisimple = killing_form(lie_catalog("sl2"))
    assert [[int(x) for x in row] for row in matrix] == expected
    assert matrix[1][1] == 8 and matrix[0][2] == 4
    assert semisimple


def test_killing_abelian_is_zero():
    matrix, semisimple = killing_form(lie_catalog("abelian:3"))
    assert all(not any(row) for row in matrix)
    assert not semisimple


def test_killing_heisenberg_is_zero():
    # all ad matrices are strictly triangular, so every trace product vanishes
    matrix, semisimple = killing_form(lie_catalog("heis3"))
    assert all(not any(row) for row in matrix)
    assert not semisimple


def _derivation_system_oracle(L):
    """Dense constraint rows for D[bi,bj] = [Dbi,bj] + [bi,Dbj]."""
    n = L.dim
    rows = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            row = [F(0)] * (n * n)
            for l, c in L.bracket_basis(i, j).items():
                row[k * n + l] += c
            for r in range(n):
                row[r * n + i] -= L.bracket_basis(r, j).get(k, F(0))
                row[r * n + j] -= L.bracket_basis(i, r).get(k, F(0))
            rows.append(row)
    return rows


@pytest.mark.parametrize(
    "name,expected",
    [("abelian:2", 4), ("sl2", 3), ("heis3", 6)],
)
def test_derivation_dimensions(name, expected):
    L = lie_catalog(name)
    ders = derivations(L)
    assert ders.dim == expected
    # independent oracle: nullity of the dense constraint system
    assert dense_nullity(_derivation_system_oracle(L), L.dim ** 2) == expected


def test_derivation_law_holds_exactly():
    for name in ("sl2", "heis3", "gl2"):
        L = lie_catalog(name)
        for D in derivations(L).basis:
            for i, j in combinations(range(L.dim), 2):
                lhs = [F(0)] * L.dim
                for l, c in L.bracket_basis(i, j).items():
                    for k in range(L.dim):
                        lhs[k] += c * D[k][l]
                di = [D[r][i] for r in range(L.dim)]
                dj = [D[r][j] for r in range(L.dim)]
                bi = [F(1) if t == i else F(0) for t in range(L.dim)]
                bj = [F(1) if t == j else F(0) for t in range(L.dim)]
                rhs = [
                    a + b
                    for a, b in zip(L.bracket(di, bj), L.bracket(bi, dj))
                ]
                assert lhs == rhs


def test_sl2_derivations_are_inner():
    ders = derivations(lie_catalog("sl2"))
    assert ders.dim == 3
    assert ders.contains_inner and ders.all_inner


@pytest.mark.parametrize("name", ["sl2", "so3", "sl3", "sl2C", "sl2+so3"])
def test_semisimple_derivations_all_inner(name):
    L = lie_catalog(name)
    ders = derivations(L)
    assert ders.dim == L.dim
    assert ders.all_inner


def test_perfect_witness_sl2_h():
    L = lie_catalog("sl2")
    pairs = perfect_witness(L, L.basis_element(1))
    assert len(pairs) == 1
    mu, nu = pairs[0]
    assert mu.coords == (F(1), F(0), F(0)) and nu.coords == (F(0), F(0), F(1))


def test_perfect_witness_sl2_e_recombines():
    L = lie_catalog("sl2")
    e = L.basis_element(0)
    pairs = perfect_witness(L, e)
    total = L.element([0, 0, 0])
    for mu, nu in pairs:
        total = total + mu.bracket(nu)
    assert total == e


def test_perfect_witness_heisenberg_defect():
    L = lie_catalog("heis3")
    with pytest.raises(NotInDerivedAlgebraError) as info:
        perfect_witness(L, L.basis_element(0))
    # [L, L] = span{z}; the class of x in L/[L,L] over the (x, y) columns
    assert info.value.defect_coordinates == (F(1), F(0))


def test_witness_random_elements_of_perfect_algebras():
    rng = random.Random(11)
    for name in ("sl2", "so3", "sl3"):
        L = lie_catalog(name)
        assert is_perfect(L)
        for _ in range(5):
            x = L.element([F(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(L.dim)])
            total = L.element([0] * L.dim)
            for mu, nu in perfect_witness(L, x):
                total = total + mu.bracket(nu)
            assert total == x


def test_perfect_iff_derived_dim_full():
    for name in CATALOG:
        L = lie_catalog(name)
        expected = derived_subalgebra(L).dim == L.dim
        assert is_perfect(L) == expected
        witness_everywhere = True
        for i in range(L.dim):
            try:
                perfect_witness(L, L.basis_element(i))
            except NotInDerivedAlgebraError:
                witness_everywhere = False
        assert witness_everywhere == expected


def test_killing_matrices_symmetric():
    for name in CATALOG:
        matrix, _ = killing_form(lie_catalog(name))
        n = len(matrix)
        assert all(matrix[i][j] == matrix[j][i] for i in range(n) for j in range(n))


def test_direct_sum_brackets_split():
    L = direct_sum(lie_catalog("sl2"), lie_catalog("heis3"))
    assert L.dim == 6
    assert validate_lie(L).ok
    # cross brackets vanish
    for i in range(3):
        for j in range(3, 6):
            assert not L.bracket_basis(i, j)


def test_realified_sl2_constants():
    L = realify(lie_catalog("sl2"))
    assert L.dim == 6
    assert validate_lie(L).ok
    # [ie, if] = -[e, f] = -h
    assert L.bracket_basis(3, 5) == {1: F(-1)}
    # [e, if] = i h
    assert L.bracket_basis(0, 5) == {4: F(1)}
