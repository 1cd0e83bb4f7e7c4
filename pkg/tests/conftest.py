import numpy as np
import pytest

from acgraph.copula import CopulaSpec, q_from_copula, rho_bounds
from acgraph.distributions import EdgeTypeDistribution, NodeTypeDistribution
from acgraph.errors import DegenerateMarginalError


def diagonal_p(p):
    return NodeTypeDistribution.diagonal_example(p)


def closed_form_q(p, q):
    """Edge-type matrix for the two-type example, written out entry by entry.

    Independent of the copula code: rows k = 1..4, columns j = 1..4.
    """
    m = np.zeros((4, 4))
    m[1, 1] = 3 * p + q - 2
    m[1, 3] = 2 - 2 * p - q
    m[3, 1] = 2 - 2 * p - q
    m[3, 3] = q
    return m / (2 - p)


@pytest.fixture
def P05():
    return diagonal_p(0.5)


@pytest.fixture
def Q_indep(P05):
    return EdgeTypeDistribution(closed_form_q(0.5, 2 / 3))


def random_node_distribution(rng, max_degree=5, zero_row_prob=0.3):
    """Symmetric random P (so mean in- and out-degree agree) with some empty rows."""
    J = K = int(rng.integers(1, max_degree + 1))
    w = rng.uniform(0.5, 1.0, size=(J + 1, K + 1))
    w *= rng.random((J + 1, K + 1)) < 0.6
    dead = rng.random(J + 1) < zero_row_prob
    dead[0] = False
    w[dead, :] = 0
    w[:, dead] = 0
    w = w + w.T
    if w[1:, 1:].sum() == 0:
        w[J, K] = w[K, J] = 1.0
    return NodeTypeDistribution(w / w.sum())


def random_instance(rng):
    """Random consistent (P, Q, rho) with rho drawn inside the attainable range."""
    P = random_node_distribution(rng)
    try:
        lo, hi = rho_bounds(P)
    except DegenerateMarginalError:
        return P, q_from_copula(P, CopulaSpec.independence()), None
    lam = float(rng.random())
    return P, q_from_copula(P, CopulaSpec.mixture(lam)), lam * lo + (1 - lam) * hi


# --- acceptance report ---------------------------------------------------------
#
# Tests marked ``acceptance(label)`` contribute to a one-line-per-criterion
# summary printed at the end of the run.  A criterion passes only if all of its
# tests pass; a strict xfail (a known, documented shortfall) makes it FAIL.

_ACCEPTANCE: dict[str, list[tuple[str, str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(label): acceptance criterion")


def pytest_runtest_logreport(report):
    labels = [v for k, v in report.user_properties if k == "acceptance"]
    if not labels:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        if hasattr(report, "wasxfail"):
            outcome = "xfail" if report.skipped else "xpass"
        else:
            outcome = report.outcome
        detail = "; ".join(str(v) for k, v in report.user_properties if k == "detail")
        _ACCEPTANCE.setdefault(labels[0], []).append((report.head_line, outcome, detail))


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("acceptance")
        if m is not None:
            item.user_properties.append(("acceptance", m.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for label, results in _ACCEPTANCE.items():
        ok = all(outcome == "passed" for _, outcome, _ in results)
        tr.write_line(f"{'PASS' if ok else 'FAIL'}  {label}")
        for name, outcome, detail in results:
            tag = {"xfail": "known shortfall"}.get(outcome, outcome)
            tr.write_line(f"        {name.split('.')[-1]}: {tag}" + (f" | {detail}" if detail else ""))
