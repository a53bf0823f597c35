"""Quick internal consistency checks behind ``hypercyclic selftest``."""

from __future__ import annotations

import random
import sys

from gmpy2 import mpfr

from .classify import bound_sequence, classify_diagonal, classify_directional
from .fnalg import ExpPoly, Polydisc, sub
from .ops import (
    DiagonalOperator,
    DirectionalOperator,
    apply,
    directional_iterate_closed,
    iterate,
    iterate_1d_closed,
    iterate_diag_closed_basis,
    right_inverse_1d,
)
from .scalar import precision
from .witness import eigen_residual, non_hc_certificate


def _checks(rng: random.Random, prec: int):
    z = ExpPoly.variable(0, 1, prec)
    T2 = DiagonalOperator.from_values([2], [0], [1], prec)
    yield "iterate lambda=2 z^3 n=2 is 48z", iterate(T2, z * z * z, 2) == z * 48
    yield "closed 1-D iterate matches oracle", all(
        sub(iterate_1d_closed(2, ExpPoly.monomial((k,), prec=prec), n),
            iterate(T2, ExpPoly.monomial((k,), prec=prec), n)).is_zero()
        for k in range(6) for n in range(4))
    yield "T S_1 = identity on z^k", all(
        sub(apply(T2, right_inverse_1d(2, k, 1, prec)), ExpPoly.monomial((k,), prec=prec)).is_zero()
        for k in range(12))
    T = DiagonalOperator.from_values([1, 3], [0, 0], [1, 1], prec)
    for _ in range(5):
        g1 = rng.randint(1, 4)
        b2 = rng.randint(0, 6)
        n = rng.randint(0, 4)
        e = ExpPoly.exp_monomial((g1, 0), (0, b2), prec=prec)
        ok = sub(iterate(T, e, n), iterate_diag_closed_basis(T, (g1, 0), (0, b2), n)).is_zero()
        yield f"closed diagonal iterate gamma=({g1},0) beta=(0,{b2}) n={n}", ok
    yield "classify 3a", classify_diagonal(["2", "1/3"], [0, 0], [1, 0], prec).case_label == "3a"
    yield "classify 3b", classify_diagonal(["1/2", 1], [0, 5], [1, 0], prec).case_label == "3b"
    yield "classify 3c-iii", classify_diagonal(["1/2", 1], [0, 0], [1, 0], prec).case_label == "3c-iii"
    yield "directional decay", classify_directional([["1/2", 0], [0, 2]], [0, 0], [1, 0], prec).hypercyclic == "no"
    yield "bound sequence k=5", bound_sequence([["1/2"]], [1], 5, prec)[-1] == mpfr("0.1171875")
    D = DirectionalOperator.from_values([[2, 0], [0, 3]], [0, 0], [1, 0], prec)
    f = ExpPoly.monomial((2, 0), prec=prec)
    yield "directional closed iterate is 4", directional_iterate_closed(D, f, 2) == ExpPoly.constant(4, 2, prec)
    Te = DiagonalOperator.from_values([1, 3], [0, 0], [1, 0], prec)
    yield "eigen residual is zero", eigen_residual(Te, (1, 0), (0, 1), Polydisc.ball(2, prec=prec)) == 0
    Tc = DiagonalOperator.from_values(["1/2"], [0], [1], prec)
    cert = non_hc_certificate(Tc, ExpPoly.exp_monomial((1,), (0,), prec=prec), 1, 12)
    with precision(prec):
        exact = all(cert.orbit_values[n] == mpfr(2) ** (-(n * (n - 1) // 2)) for n in range(13))
    yield "certificate orbit values 2^-n(n-1)/2", exact and cert.verdict


def run(seed: int = 0, prec: int = 192, stream=sys.stdout) -> bool:
    rng = random.Random(seed)
    ok = True
    for name, passed in _checks(rng, prec):
        stream.write(f"{'PASS' if passed else 'FAIL'} {name}\n")
        ok &= bool(passed)
    stream.write("selftest " + ("passed" if ok else "FAILED") + "\n")
    return ok
