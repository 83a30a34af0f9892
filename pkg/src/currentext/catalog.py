"""Built-in algebra catalog.

Lie algebras: sl2, sl3, so3, heis3, abelian:n, sl2C (realified, dim 6),
gl2, and direct sums joined with "+".  Commutative algebras: jets:n
(QQ[t]/(t^n)), sq2 (QQ[x,y]/(x^2,y^2)), fun:n (QQ^n pointwise with the
idempotent point decomposition), and tensor products joined with "*".
su(2) is represented by its rational form so3 ([e1,e2] = e3 cyclically).
"""

from __future__ import annotations

from fractions import Fraction

from .current import CommAlgebra, tensor_comm
from .errors import CatalogError
from .lie import LieAlgebra, direct_sum, lie_from_matrices, realify

_ONE = Fraction(1)


def _sl2() -> LieAlgebra:
    # [h,e] = 2e, [h,f] = -2f, [e,f] = h on the basis (e, h, f)
    return LieAlgebra(
        ("e", "h", "f"),
        [
            (0, 1, 0, Fraction(-2)),
            (1, 2, 2, Fraction(-2)),
            (0, 2, 1, _ONE),
        ],
    )


def _so3() -> LieAlgebra:
    return LieAlgebra(
        ("e1", "e2", "e3"),
        [
            (0, 1, 2, _ONE),
            (1, 2, 0, _ONE),
            (0, 2, 1, Fraction(-1)),
        ],
    )


def _heis3() -> LieAlgebra:
    return LieAlgebra(("x", "y", "z"), [(0, 1, 2, _ONE)])


def _abelian(n: int) -> LieAlgebra:
    return LieAlgebra(tuple(f"a{i + 1}" for i in range(n)), [])


def _sl3() -> LieAlgebra:
    def E(i, j):
        return tuple(
            tuple(_ONE if (r, c) == (i, j) else Fraction(0) for c in range(3))
            for r in range(3)
        )

    def diag(*values):
        return tuple(
            tuple(Fraction(values[r]) if r == c else Fraction(0) for c in range(3))
            for r in range(3)
        )

    labels = ("h1", "h2", "e1", "e2", "e3", "f1", "f2", "f3")
    mats = [
        diag(1, -1, 0),
        diag(0, 1, -1),
        E(0, 1),
        E(1, 2),
        E(0, 2),
        E(1, 0),
        E(2, 1),
        E(2, 0),
    ]
    return lie_from_matrices(labels, mats)


def _gl2() -> LieAlgebra:
    def E(i, j):
        return tuple(
            tuple(_ONE if (r, c) == (i, j) else Fraction(0) for c in range(2))
            for r in range(2)
        )

    return lie_from_matrices(("E11", "E12", "E21", "E22"), [E(0, 0), E(0, 1), E(1, 0), E(1, 1)])


def _sl2c() -> LieAlgebra:
    return realify(_sl2())


def _jets(n: int) -> CommAlgebra:
    labels = tuple("1" if i == 0 else ("t" if i == 1 else f"t^{i}") for i in range(n))
    entries = []
    for i in range(n):
        for j in range(i, n):
            if i + j < n:
                entries.append((i, j, i + j, _ONE))
    unit = tuple(_ONE if i == 0 else Fraction(0) for i in range(n))
    return CommAlgebra(labels, entries, unit)


def _sq2() -> CommAlgebra:
    # exponent pairs: 1, x, y, xy
    powers = [(0, 0), (1, 0), (0, 1), (1, 1)]
    index = {p: i for i, p in enumerate(powers)}
    labels = ("1", "x", "y", "xy")
    entries = []
    for i, (a1, b1) in enumerate(powers):
        for j, (a2, b2) in enumerate(powers):
            if j < i:
                continue
            a, b = a1 + a2, b1 + b2
            if a < 2 and b < 2:
                entries.append((i, j, index[(a, b)], _ONE))
    unit = (_ONE, Fraction(0), Fraction(0), Fraction(0))
    return CommAlgebra(labels, entries, unit)


def _fun(n: int) -> CommAlgebra:
    labels = tuple(f"e{s + 1}" for s in range(n))
    entries = [(s, s, s, _ONE) for s in range(n)]
    unit = (_ONE,) * n
    idempotents = [
        (str(s + 1), tuple(_ONE if t == s else Fraction(0) for t in range(n)))
        for s in range(n)
    ]
    return CommAlgebra(labels, entries, unit, idempotents)


def _lie_single(name: str) -> LieAlgebra:
    if name == "sl2":
        return _sl2()
    if name == "sl3":
        return _sl3()
    if name == "so3":
        return _so3()
    if name == "heis3":
        return _heis3()
    if name == "sl2C":
        return _sl2c()
    if name == "gl2":
        return _gl2()
    if name.startswith("abelian:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise CatalogError(f"bad abelian dimension in {name!r}") from None
        if n < 0:
            raise CatalogError(f"bad abelian dimension in {name!r}")
        return _abelian(n)
    raise CatalogError(f"unknown Lie algebra {name!r}")


def lie_catalog(name: str) -> LieAlgebra:
    """Resolve a catalog Lie algebra name; "+" builds direct sums."""
    parts = [p.strip() for p in name.split("+")]
    if not all(parts):
        raise CatalogError(f"malformed Lie algebra name {name!r}")
    algebras = [_lie_single(p) for p in parts]
    return algebras[0] if len(algebras) == 1 else direct_sum(*algebras)


def _comm_single(name: str) -> CommAlgebra:
    if name == "sq2":
        return _sq2()
    if name.startswith("jets:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise CatalogError(f"bad jet order in {name!r}") from None
        if n < 1:
            raise CatalogError(f"bad jet order in {name!r}")
        return _jets(n)
    if name.startswith("fun:"):
        try:
            n = int(name.split(":", 1)[1])
        except ValueError:
            raise CatalogError(f"bad point count in {name!r}") from None
        if n < 1:
            raise CatalogError(f"bad point count in {name!r}")
        return _fun(n)
    raise CatalogError(f"unknown commutative algebra {name!r}")


def comm_catalog(name: str) -> CommAlgebra:
    """Resolve a catalog commutative algebra name; "*" tensors factors."""
    parts = [p.strip() for p in name.split("*")]
    if not all(parts):
        raise CatalogError(f"malformed commutative algebra name {name!r}")
    out = _comm_single(parts[0])
    for part in parts[1:]:
        out = tensor_comm(out, _comm_single(part))
    return out


LIE_NAMES = ("sl2", "sl3", "so3", "heis3", "sl2C", "gl2", "abelian:3")
COMM_NAMES = ("jets:3", "sq2", "fun:2", "fun:3", "fun:2*sq2", "fun:2*jets:2")


def catalog_listing():
    """Representative catalog instances, used by `validate --all`."""
    return {"lie": LIE_NAMES, "comm": COMM_NAMES}
