import itertools

import pytest

from pbmod import _pykernel
from pbmod.kernel import BACKEND, Kernel


def lhs(terms, values):
    """Sum of coefficients of true literals; ``values`` maps var -> bool."""
    total = 0
    for a, l in terms:
        if values[abs(l)] == (l > 0):
            total += a
    return total


def brute_solutions(variables, holds):
    """Set of satisfying assignments (as tuples of bools over ``variables``)."""
    out = set()
    for bits in itertools.product((False, True), repeat=len(variables)):
        if holds(dict(zip(variables, bits))):
            out.add(bits)
    return out


def root_solutions(t, variables):
    """Input assignments under which clauses plus the root are satisfiable."""
    from pbmod.up_engine import Solver

    solver = Solver(t.clauses, max(t.num_vars, max(variables, default=0)))
    out = set()
    for bits in itertools.product((False, True), repeat=len(variables)):
        lits = [v if b else -v for v, b in zip(variables, bits)]
        if solver._satisfiable(lits + [t.root], 10 ** 6):
            out.add(bits)
    return out


KERNELS = [pytest.param(_pykernel.Kernel, id="python")]
if BACKEND == "compiled":
    KERNELS.append(pytest.param(Kernel, id="compiled"))


@pytest.fixture(params=KERNELS)
def kernel_cls(request):
    return request.param


# acceptance criteria report one line each; printed after the run
CRITERIA = {}


def record(number, ok, detail):
    CRITERIA[number] = "criterion %d: %s  %s" % (number, "PASS" if ok else "FAIL", detail)
    print(CRITERIA[number])


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for number in sorted(CRITERIA):
            terminalreporter.write_line(CRITERIA[number])
