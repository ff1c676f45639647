import copy
import json
from fractions import Fraction as F

import pytest

from choquet_lab.audit import VersionMismatch, WitnessFailure, verify_report
from choquet_lab.cli import envelope
from choquet_lab.core import jsonable
from choquet_lab.dirichlet import dilation
from choquet_lab.gallery import make_hj, make_interval_space, make_square_affine, make_two_point
from choquet_lab.representation import condition_report


def report_doc(space):
    doc = envelope("analyze", space, 0, 64)
    doc["result"] = condition_report(space).to_json()
    return json.loads(json.dumps(jsonable(doc)))


@pytest.fixture(scope="module")
def square():
    return report_doc(make_square_affine())


@pytest.fixture(scope="module")
def thirds():
    return report_doc(make_hj(1, 2, F(1, 3), F(1, 3)))


def tampered(doc, edit):
    doc = copy.deepcopy(doc)
    edit(doc["result"])
    return doc


def test_fresh_reports_pass(square, thirds):
    assert set(verify_report(square)["checked"]) == {"boundary", "I", "II", "III", "IV", "V", "VI"}
    assert "III" in verify_report(thirds)["checked"]


def test_digest_mismatch(square):
    doc = copy.deepcopy(square)
    doc["spaceDocument"]["basis"][0][1] = "7"
    with pytest.raises(WitnessFailure):
        verify_report(doc)


def test_version_checks(square):
    for key, value in (("schema", "other/1"), ("toolVersion", "99.0.0")):
        doc = copy.deepcopy(square)
        doc[key] = value
        with pytest.raises(VersionMismatch):
            verify_report(doc)


def test_boundary_certificate_tamper(square):
    def edit(res):
        label = res["boundary"]["boundary"][0]
        res["boundary"]["boundaryCertificates"][label]["f"] = ["0", "0", "0"]
    with pytest.raises(WitnessFailure):
        verify_report(tampered(square, edit))


def test_non_boundary_combination_tamper(square):
    def edit(res):
        label = res["boundary"]["nonBoundary"][0]
        combo = res["boundary"]["nonBoundaryWitnesses"][label]["combination"]
        combo[0]["weight"] = "1"
    with pytest.raises(WitnessFailure):
        verify_report(tampered(square, edit))


def test_simpliciality_witness_tamper(square):
    def edit(res):
        w = res["conditions"]["II"]["witness"]
        w["mu2"] = w["mu1"]
    with pytest.raises(WitnessFailure):
        verify_report(tampered(square, edit))


def test_simpliciality_table_tamper():
    doc = report_doc(make_interval_space(3, 4, F(1, 2)))

    def edit(res):
        res["uniquenessTable"]["1"]["member"] = {"0": "1/3"}
    with pytest.raises(WitnessFailure):
        verify_report(tampered(doc, edit))


def test_face_witness_tamper(square):
    def edit(res):
        res["conditions"]["V"]["witness"]["incident"] = res["conditions"]["V"]["witness"]["incident"][:2]
    with pytest.raises(WitnessFailure):
        verify_report(tampered(square, edit))


def test_annihilator_witness_tamper(thirds):
    def edit(res):
        m = res["conditions"]["IV"]["witness"]["measure"]
        m[sorted(m)[0]] = "5"
    with pytest.raises(WitnessFailure):
        verify_report(tampered(thirds, edit))


def test_theta_witness_tamper():
    doc = report_doc(make_two_point())

    def edit(res):
        res["conditions"]["I"]["witness"]["alpha"] = "1"
    with pytest.raises(WitnessFailure):
        verify_report(tampered(doc, edit))


def test_flipped_true_verdict_is_caught(thirds):
    def edit(res):
        res["conditions"]["VI"] = {"status": "true", "method": "forged"}
    with pytest.raises(WitnessFailure):
        verify_report(tampered(thirds, edit))


def test_dirichlet_section():
    space = make_hj(1, 2, F(1, 4), F(1, 2))
    doc = envelope("dirichlet", space, 0)
    doc["result"] = {"dirichlet": dilation(space).to_json()}
    doc = json.loads(json.dumps(jsonable(doc)))
    assert verify_report(doc)["checked"] == ["dirichlet"]
    doc["result"]["dirichlet"]["delta"]["(0,0)"] = {"a": "1/2", "b": "1/4"}
    with pytest.raises(WitnessFailure):
        verify_report(doc)
