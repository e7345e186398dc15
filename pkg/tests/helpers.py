"""Shared check routines used by the property and acceptance suites."""

from jordanalg.algebra import product_span
from jordanalg.peirce import eigenspace, peirce_multi_unitalized, peirce_single
from jordanalg.invariants import radical
from jordanalg.ratlin import HALF, ONE, ZERO


def table_idempotents(a):
    return [i for i in range(a.dim) if a.table[i][i] == a.basis_vector(i)]


def sweep_peirce_rules(env):
    """Run both Peirce decompositions (rules verified internally) for every
    table idempotent of every catalog algebra; returns (#single, #grids)."""
    singles = grids = 0
    for name, a in env.items():
        idems = table_idempotents(a)
        for i in idems:
            d = peirce_single(a, a.basis_vector(i))
            assert sum(s.dim for s in d.components.values()) == a.dim, name
            singles += 1
        if idems:
            d, hull = peirce_multi_unitalized(a, [a.basis_vector(i) for i in idems])
            assert sum(s.dim for s in d.components.values()) == hull.dim, name
            grids += 1
    return singles, grids


def sweep_radical_peirce_products(env):
    """dim-one radical eigenspace pieces square to zero; a dim-one half
    piece is killed by the integer pieces.  Returns the number of checks."""
    checked = 0
    for name, a in env.items():
        rad = radical(a)
        if rad.dim == 0:
            continue
        for i in table_idempotents(a):
            e = a.basis_vector(i)
            pieces = {
                lam: rad.intersect(eigenspace(a, e, lam)) for lam in (ZERO, HALF, ONE)
            }
            for lam in (ZERO, ONE):
                if pieces[lam].dim == 1:
                    assert product_span(a, pieces[lam], pieces[lam]).dim == 0, name
                    checked += 1
            if pieces[HALF].dim == 1:
                for lam in (ZERO, ONE):
                    assert product_span(a, pieces[lam], pieces[HALF]).dim == 0, name
                    checked += 1
    return checked
