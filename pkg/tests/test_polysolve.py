from fractions import Fraction

from jordanalg.algebra import change_basis
from jordanalg.polysolve import (
    PolySystem,
    Polynomial,
    buchberger,
    check_b2_witness,
    degrevlex_key,
    embeds_b2,
    has_solution,
    is_groebner_basis,
)
from conftest import random_invertible_matrix, seeded_rng

F = Fraction


def P(names, terms):
    return Polynomial(names, terms)


def test_polynomial_arithmetic():
    names = ("x", "y")
    x = Polynomial.variable(names, 0)
    y = Polynomial.variable(names, 1)
    p = (x + y) * (x - y)
    assert p == x * x - y * y
    assert (x * y) ** 2 == P(names, {(2, 2): 1})
    assert (p - p).is_zero()


def test_degrevlex_order():
    # graded first; ties by smaller exponent in the last variable winning
    assert degrevlex_key((2, 0, 0)) > degrevlex_key((1, 1, 0))
    assert degrevlex_key((1, 1, 0)) > degrevlex_key((1, 0, 1))
    assert degrevlex_key((0, 2, 0)) > degrevlex_key((1, 0, 1))


def test_buchberger_inconsistent_pair():
    names = ("x",)
    x = Polynomial.variable(names, 0)
    res = buchberger(PolySystem((x * x, x - Polynomial.const(names, 1)), names))
    assert not res.exhausted and res.trivial


def test_buchberger_single_polynomial_is_its_own_basis():
    names = ("x",)
    x = Polynomial.variable(names, 0)
    f = x * x - x
    res = buchberger(PolySystem((f,), names))
    assert res.basis == (f,)


def test_buchberger_linear_elimination():
    names = ("x", "y")
    x = Polynomial.variable(names, 0)
    y = Polynomial.variable(names, 1)
    res = buchberger(PolySystem((x + y, x - y), names))
    assert res.basis == (y, x)  # sorted by leading monomial


def test_buchberger_result_is_groebner():
    names = ("x", "y", "z")
    x, y, z = (Polynomial.variable(names, i) for i in range(3))
    sys = PolySystem((x * y - z, y * z - x, x * z - y), names)
    res = buchberger(sys)
    assert not res.exhausted
    assert is_groebner_basis(list(res.basis))


def test_buchberger_against_sympy():
    import sympy

    xs, ys, zs = sympy.symbols("x y z")
    names = ("x", "y", "z")
    x, y, z = (Polynomial.variable(names, i) for i in range(3))
    cases = [
        ((x * y - z, y * z - x, x * z - y), (xs * ys - zs, ys * zs - xs, xs * zs - ys)),
        ((x * x + y, x * y + Polynomial.const(names, 1)), (xs**2 + ys, xs * ys + 1)),
    ]
    for ours, theirs in cases:
        res = buchberger(PolySystem(tuple(ours), names))
        ref = sympy.groebner(list(theirs), xs, ys, zs, order="grevlex")
        got = set()
        for p in res.basis:
            expr = 0
            for exps, c in p.terms.items():
                expr += sympy.Rational(c) * xs**exps[0] * ys**exps[1] * zs**exps[2]
            got.add(sympy.expand(expr))
        want = {sympy.expand(sympy.nsimplify(e)) for e in ref.exprs}
        assert got == want


def test_has_solution_over_closure():
    names = ("x",)
    x = Polynomial.variable(names, 0)
    one = Polynomial.const(names, 1)
    assert has_solution(PolySystem((x * x + one,), names)) == "yes"
    assert has_solution(PolySystem((x, x - one), names)) == "no"


def test_has_solution_square_zero_idempotent(env):
    # z^2 = 0 and z invertible (t z = 1) is unsolvable: the square-zero line
    # has no nonzero idempotent
    names = ("z", "t")
    z = Polynomial.variable(names, 0)
    t = Polynomial.variable(names, 1)
    one = Polynomial.const(names, 1)
    sys = PolySystem((z * z, t * z - one), names)
    assert has_solution(sys) == "no"


def test_budget_exhaustion_is_reported():
    names = ("x", "y", "z")
    x, y, z = (Polynomial.variable(names, i) for i in range(3))
    sys = PolySystem((x * y - z, y * z - x, x * z - y), names)
    res = buchberger(sys, budget=0)
    assert res.exhausted and res.basis is None
    assert has_solution(sys, budget=0) == "inconclusive"


def test_embeds_b2_itself(env):
    res = embeds_b2(env["B2"])
    assert res.answer == "yes"
    assert check_b2_witness(env["B2"], *res.witness)


def test_embeds_b2_j56_witness(env):
    res = embeds_b2(env["J56"])
    assert res.answer == "yes"
    e, y = res.witness
    assert e == env["J56"].element({"e1": 1})
    assert check_b2_witness(env["J56"], e, y)


def test_embeds_b2_j55_is_no(env):
    assert embeds_b2(env["J55"]).answer == "no"


def test_embeds_b2_nilpotent_is_no(env):
    assert embeds_b2(env["J73"]).answer == "no"
    assert embeds_b2(env["J61"]).answer == "no"


def test_embeds_b2_diagonal_table_is_no(env):
    # four orthogonal idempotents admit no half eigenvalue
    assert embeds_b2(env["J3"]).answer == "no"


def test_embeds_b2_basis_change_consistency(env):
    rng = seeded_rng("b2-invariance")
    for name, expected in (("J56", "yes"), ("J55", "no")):
        a = env[name]
        for _ in range(2):
            p = random_invertible_matrix(a.dim, rng)
            assert embeds_b2(change_basis(a, p)).answer == expected


# ---------------------------------------------------------------------------
# independent certificate that the half-action pair cannot embed into J55:
# the idempotents form the family e_d = e1 - d^2 n2 + d n3, whose half
# eigenspace is the line spanned by v_d = n3 - 2d n2, and v_d squares to a
# nonzero multiple of n2.  All three facts are polynomial identities in d.

def _j55_symbolic(env):
    a = env["J55"]
    names = ("d", "t")
    d = Polynomial.variable(names, 0)
    t = Polynomial.variable(names, 1)
    one = Polynomial.const(names, 1)
    zero = Polynomial.zero(names)
    # e_d and v_d in the basis (e1, n1, n2, n3), entries polynomial in d
    e_d = [one, zero, -(d * d), d]
    v_d = [zero, zero, -(d * 2), one]

    def mul(u, v):
        out = [zero, zero, zero, zero]
        for i in range(4):
            for j in range(4):
                entry = a.table[i][j]
                if u[i].is_zero() or v[j].is_zero():
                    continue
                term = u[i] * v[j]
                for k in range(4):
                    if entry[k]:
                        out[k] = out[k] + term * entry[k]
        return out

    return names, d, t, e_d, v_d, mul


def test_j55_family_is_idempotent_identically(env):
    names, d, t, e_d, v_d, mul = _j55_symbolic(env)
    sq = mul(e_d, e_d)
    assert all((sq[k] - e_d[k]).is_zero() for k in range(4))


def test_j55_idempotents_are_only_the_family(env):
    # e = a e1 + b n1 + c n2 + d n3 idempotent forces a(a-1) = 0,
    # b(2a-1) = 0, 2ac + d^2 = c, d(a-1) = 0; over any field with a != 1/2
    # possible these give e = 0 or the family above.  Verified by checking
    # that adjoining a = 1 reduces the system to b = 0, c = -d^2 exactly.
    a = env["J55"]
    x = [None] * 4
    names = tuple("abcd")
    va, vb, vc, vd = (Polynomial.variable(names, i) for i in range(4))
    coords = [va, vb, vc, vd]

    def mul(u, v):
        zero = Polynomial.zero(names)
        out = [zero] * 4
        for i in range(4):
            for j in range(4):
                entry = a.table[i][j]
                term = u[i] * v[j]
                for k in range(4):
                    if entry[k]:
                        out[k] = out[k] + term * entry[k]
        return out

    sq = mul(coords, coords)
    eqs = [sq[k] - coords[k] for k in range(4)]
    # substitute a = 1: remaining equations must say b = 0 and c + d^2 = 0
    def sub_a1(p):
        out = Polynomial.zero(names)
        for exps, c in p.terms.items():
            out = out + Polynomial(names, {(0,) + exps[1:]: c})
        return out

    reduced = [sub_a1(p) for p in eqs]
    want_b = Polynomial(names, {(0, 1, 0, 0): 1})
    want_c = Polynomial(names, {(0, 0, 1, 0): 1, (0, 0, 0, 2): 1})  # c = -d^2
    nontrivial = [p for p in reduced if not p.is_zero()]
    assert want_b in nontrivial
    assert any(p == want_c or p == want_c * -1 for p in nontrivial)
    # substitute a = 0: equations force b = c = d = 0 (the zero solution)
    def sub_a0(p):
        out = Polynomial.zero(names)
        for exps, c in p.terms.items():
            if exps[0] == 0:
                out = out + Polynomial(names, {exps: c})
        return out

    reduced0 = [sub_a0(p) for p in eqs]
    sys = PolySystem(tuple(p for p in reduced0 if not p.is_zero()), names)
    # adjoin invertibility of each coordinate in turn: no nonzero solution
    t_names = names + ("t",)
    for i in (1, 2, 3):
        lifted = [Polynomial(t_names, {e + (0,): c for e, c in p.terms.items()})
                  for p in sys.polynomials]
        inv = Polynomial.variable(t_names, 4) * Polynomial.variable(t_names, i) \
            - Polynomial.const(t_names, 1)
        assert has_solution(PolySystem(tuple(lifted + [inv]), t_names)) == "no"


def test_j55_half_eigenspace_line_and_quadric(env):
    names, d, t, e_d, v_d, mul = _j55_symbolic(env)
    # v_d is a half eigenvector of e_d, identically in d
    prod = mul(e_d, v_d)
    for k in range(4):
        assert (prod[k] * 2 - v_d[k]).is_zero()
    # the eigenspace is exactly a line: L_{e_d} - 1/2 has a 3x3 minor with
    # constant nonzero determinant, and zero determinant in full
    from jordanalg.algebra import change_basis  # noqa: F401  (documentation import)
    a = env["J55"]
    cols = []
    for j in range(4):
        basis = [Polynomial.zero(names)] * 4
        basis[j] = Polynomial.const(names, 1)
        cols.append(mul(e_d, basis))
    m = [[cols[j][k] - (Polynomial.const(names, F(1, 2)) if j == k else Polynomial.zero(names))
          for j in range(4)] for k in range(4)]

    def det(mat):
        if len(mat) == 1:
            return mat[0][0]
        total = Polynomial.zero(names)
        for j in range(len(mat)):
            minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
            term = mat[0][j] * det(minor)
            total = total + (term if j % 2 == 0 else term * -1)
        return total

    full = det(m)
    assert full.is_zero()
    minor = det([row[:3] for row in m[:3]])
    assert minor == Polynomial.const(names, minor.terms[(0, 0)]) and not minor.is_zero()
    # y = t v_d squares to t^2 n2, so y^2 = 0 forces t = 0 and hence y = 0
    y = [t * c for c in v_d]
    sq = mul(y, y)
    assert sq[0].is_zero() and sq[1].is_zero() and sq[3].is_zero()
    assert sq[2] == Polynomial(names, {(0, 2): 1})
