"""
Slice Workbench - Service Layer Tests
Payload shapes, error codes and configuration of the workbench service
"""

import os
import sys

import pytest

# Add src directory to path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..', 'src'))

import workbench_service
from errors import ConsistencyError
from slice_spectral_sequence import mo_poincare
from workbench_service import DEFAULT_FGL_PRECISION, WorkbenchService, create_workbench_service


@pytest.fixture
def service():
    return WorkbenchService(jmax=4, precision=8, ss_bound=6, jobs=1)


def assert_success(payload):
    assert payload["success"] is True, payload.get("error")
    return payload["data"]


def assert_error(payload, code):
    assert payload["success"] is False
    assert payload["error"]["code"] == code
    assert payload["error"]["message"]
    assert payload["error"]["user_message"]


# ---- configuration -------------------------------------------------------------

def test_explicit_arguments(service):
    status = service.get_service_status()
    assert status == {"success": True, "data": {"jmax": 4, "precision": 8, "ss_bound": 6, "jobs": 1}}


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("WORKBENCH_JMAX", "5")
    monkeypatch.setenv("WORKBENCH_SS_BOUND", "9")
    monkeypatch.setenv("WORKBENCH_JOBS", "3")
    data = create_workbench_service(precision=12).get_service_status()["data"]
    assert data == {"jmax": 5, "precision": 12, "ss_bound": 9, "jobs": 3}


def test_default_fgl_precisions():
    assert DEFAULT_FGL_PRECISION == {"h": 31, "rbar": 8, "haz": 4, "tfun": 4}


# ---- representation spheres ----------------------------------------------------------

def test_sphere_homology_payload(service):
    data = assert_success(service.sphere_homology("C8", "rho(8)"))
    assert data["group"] == "C8"
    assert data["dim"] == 8
    assert data["level"] == "C8"
    assert data["fixed_dims"] == [1, 2, 4, 8]
    nonzero = {d for d, label in data["labels"].items() if label != "0"}
    assert nonzero == {"1", "3", "5", "7"}
    assert data["homology"]["3"] == {"free": 0, "torsion": [2]}


def test_sphere_cohomology_payload(service):
    data = assert_success(service.sphere_homology("C8", "2*rho(8)", cohomology=True))
    assert data["cohomological"] is True
    assert data["labels"]["5"] == "Z/2"
    assert data["labels"]["7"] == "Z/4"
    assert data["labels"]["16"] == "Z"


def test_sphere_homology_reports_orbit_types(service):
    data = assert_success(service.sphere_homology("C8", "rho(8)"))
    assert set(data["orbit_types"]["8"]) == {"8"}
    for degree, sizes in data["orbit_types"].items():
        assert all(int(size) in (1, 2, 4, 8) and count > 0 for size, count in sizes.items())


INVALID_SPHERE_REQUESTS = [
    {"id": "BAD-GROUP", "args": ("C6", "rho(8)")},
    {"id": "BAD-REP", "args": ("C8", "tau(2)")},
    {"id": "BAD-LAMBDA", "args": ("C8", "lambda(4)")},
    {"id": "BAD-LEVEL", "args": ("C8", "rho(8)", False, 3)},
    {"id": "BAD-COEFF", "args": ("C8", "rho(8)", False, None, "Q")},
]


@pytest.mark.parametrize("request_", INVALID_SPHERE_REQUESTS, ids=[r["id"] for r in INVALID_SPHERE_REQUESTS])
def test_sphere_homology_rejects_bad_input(service, request_):
    assert_error(service.sphere_homology(*request_["args"]), "INVALID_INPUT")


def test_gap_payload(service):
    data = assert_success(service.gap("C8", 1))
    assert data["passed"] is True
    assert [(row["m"], row["i"]) for row in data["checks"]] == [(1, 1), (1, 2), (1, 3)]


# ---- slices ---------------------------------------------------------------------------

def test_slice_region_without_chart(service):
    data = assert_success(service.slice_region(8, 4))
    assert data["vanishing_range"] == [0, 4]
    assert data["chart"] == []


def test_slice_region_with_chart(service):
    data = assert_success(service.slice_region(2, 2, k=1, s_max=4, d_max=4))
    for cell in data["chart"]:
        assert len(cell["basis"]) == len(cell["sigma_weights"])


def test_refine_payload(service):
    data = assert_success(service.refine(8, 2))
    assert data["degree"] == 4
    assert data["rank"] == data["expected_rank"] == 14
    assert sorted(o["size"] for o in data["orbits"]) == [2, 4, 4, 4]
    assert_error(service.refine(6, 1), "INVALID_INPUT")


def test_ss_run_uses_configured_bound(service):
    data = assert_success(service.ss_run(2))
    assert data["bound"] == 6
    assert data["e_infinity_ranks"] == mo_poincare(6)
    assert data["e_infinity"]["1"] == []


# ---- formal groups --------------------------------------------------------------------

def test_fgl_h_table(service):
    data = assert_success(service.fgl("h", 7))
    assert [row["index"] for row in data["entries"] if row["zero"]] == [1, 3, 7]
    assert data["checks"] == {"frobenius_recursion": True}


def test_fgl_rbar_table(service):
    data = assert_success(service.fgl("rbar", 4))
    assert data["checks"]["geometric_reduction_is_h"] is True
    assert data["entries"][1]["linear_part"] == "m2"
    assert [row["index"] for row in data["entries"]] == [1, 2, 3, 4]


def test_fgl_hazewinkel_table(service):
    data = assert_success(service.fgl("haz"))
    assert [row["pi_valuation"] for row in data["entries"]] == [3, 2, 1, 0]
    assert data["entries"][0]["value"] == {"pi_poly": [-4, -6, -4, -1], "w_exp": 1}
    assert data["checks"]["valuations"] is True


def test_fgl_t_function_table(service):
    data = assert_success(service.fgl("tfun", 2))
    assert all(data["checks"].values())
    names = [row["name"] for row in data["entries"]]
    assert "t1(ζ^1)" in names
    assert not any(name.endswith("(ζ^0)") for name in names)


def test_fgl_rejects_unknown_table(service):
    assert_error(service.fgl("mu"), "INVALID_INPUT")
    assert_error(service.fgl("haz", 5), "INVALID_INPUT")


# ---- detection ------------------------------------------------------------------------

def test_detect_uses_configured_jmax(service):
    data = assert_success(service.detect())
    assert data["jmax"] == 4
    assert data["verdict"] == "pass"
    assert_error(service.detect(2), "INVALID_INPUT")


def test_consistency_failures_become_error_payloads(service, monkeypatch):
    def broken(jmax):
        raise ConsistencyError("forced mismatch")

    monkeypatch.setattr(workbench_service, "detection_report", broken)
    payload = service.detect()
    assert_error(payload, "CONSISTENCY")
    assert payload["error"]["message"] == "forced mismatch"


def test_unexpected_failures_become_internal_errors(service, monkeypatch):
    def broken(jmax):
        raise KeyError("boom")

    monkeypatch.setattr(workbench_service, "detection_report", broken)
    assert_error(service.detect(), "INTERNAL")


def test_cohomology_table_payload(service):
    data = assert_success(service.cohomology_table(3))
    assert len(data["entries"]) == 2 * 4 * 3
    assert all(row["passed"] for row in data["entries"])
    first = data["entries"][0]
    assert (first["s"], first["m"], first["mod2"], first["group"]) == (0, 0, False, "Z ⊕ Z ⊕ Z ⊕ Z")


# ---- verification ---------------------------------------------------------------------

def test_verify_all_runs_every_criterion(service):
    data = assert_success(service.verify_all())
    assert [r["id"] for r in data["results"]] == list(range(1, 16))
    failed = [r for r in data["results"] if not r["passed"]]
    assert not failed, failed
    assert data["passed"] is True
