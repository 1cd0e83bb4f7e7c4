import numpy as np
import pytest
import yaml

from acgraph.config import config_from_mapping, load_config
from acgraph.errors import ParseError, ValidationError
from conftest import closed_form_q

P_MATRIX = [
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0.5, 0, 0],
    [0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0.5],
]


def base_doc(**extra):
    doc = {"n": 1000, "seed": 7, "P": {"J": 4, "K": 4, "matrix": P_MATRIX}}
    doc.update(extra)
    return doc


def test_rho_resolves_to_closed_form():
    cfg = config_from_mapping(base_doc(Q={"rho": 0.8}))
    np.testing.assert_allclose(cfg.Q.q, closed_form_q(0.5, 14 / 15), atol=1e-12)
    assert cfg.q_source == "rho"
    assert cfg.delta == 0.5001 and cfg.max_attempts == 1 and cfg.erase is False


def test_copula_and_matrix_sources():
    cfg = config_from_mapping(base_doc(Q={"copula": "mixture", "lambda": 0.0}))
    np.testing.assert_allclose(cfg.Q.q, closed_form_q(0.5, 1.0), atol=1e-12)
    cfg = config_from_mapping(base_doc(Q={"copula": "Pi"}))
    np.testing.assert_allclose(cfg.Q.q, closed_form_q(0.5, 2 / 3), atol=1e-12)
    cfg = config_from_mapping(base_doc(Q={"matrix": closed_form_q(0.5, 0.8).tolist()}))
    assert cfg.q_source == "matrix"


@pytest.mark.parametrize(
    "doc",
    [
        base_doc(Q={"rho": 0.8, "matrix": closed_form_q(0.5, 0.8).tolist()}),
        base_doc(Q={}),
        base_doc(Q={"rho": 0.8}, delta=0.5),
        base_doc(Q={"rho": 0.8}, delta=1.0),
        base_doc(Q={"rho": 1.5}),
        base_doc(Q={"copula": "gumbel"}),
        base_doc(Q={"copula": "W", "lambda": 0.3}),
        base_doc(Q={"matrix": np.full((4, 4), 1 / 16).tolist()}),
        base_doc(Q={"rho": 0.0}, seed=-1),
        base_doc(Q={"rho": 0.0}, seed=2**64),
        base_doc(Q={"rho": 0.0}, retry=0),
        base_doc(Q={"rho": 0.0}, colour="red"),
        {"n": 100, "P": {"J": 1, "K": 1, "matrix": [[0.5, 0], [0, 0.5]]}, "Q": {"rho": 0}},
        base_doc(),
    ],
)
def test_validation_errors(doc):
    with pytest.raises(ValidationError):
        config_from_mapping(doc)


def test_edges_optional_for_calibration():
    cfg = config_from_mapping(base_doc(), require_edges=False)
    assert cfg.Q is None and cfg.Qv is None


def test_variant_section():
    q = np.zeros((4, 5))
    q[1, 2], q[3, 4] = 1 / 3, 2 / 3
    cfg = config_from_mapping(base_doc(Qv={"matrix": q.tolist()}))
    assert cfg.Qv.K == 4 and cfg.Q is None


def test_load_and_parse_error(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text(yaml.safe_dump(base_doc(Q={"rho": 0.8}, outputs={"stats": "s.json"})))
    cfg = load_config(path)
    assert cfg.outputs == {"stats": "s.json"} and cfg.seed == 7
    path.write_text("n: 10\nP: [1, 2\nQ: {}\n")
    with pytest.raises(ParseError, match="line"):
        load_config(path)
