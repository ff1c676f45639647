"""Re-verification of reports: every decided verdict is checked again exactly."""
from __future__ import annotations

from .boundary import (choquet_boundary, exposure_certificate_holds, non_boundary_witness_holds,
                       theta_injective)
from .core import (SCHEMA_VERSION, TOOL_VERSION, ChoquetLabError, FunctionSpace, Measure, Status,
                   abs2, load_space, parse_scalar, pushforward, total_variation)
from .dirichlet import dilation
from .representation import (NonUniquenessWitness, annihilator_verdict, is_functionally_simplicial,
                             is_l1_predual, is_simplicial, is_simplexoid, verify_face_violation, verify_multiple,
                             verify_nonuniqueness_witness, verify_uniqueness)


class VersionMismatch(ChoquetLabError):
    pass


class WitnessFailure(ChoquetLabError):
    def __init__(self, condition, digest, detail=""):
        super().__init__(f"witness for {condition} failed on space {digest}: {detail}".rstrip(": "))
        self.condition = condition
        self.digest = digest


def _scalar(space, raw):
    return parse_scalar(raw, space.field)


def _measure(space, doc):
    return Measure.from_json(doc, space.field)


def _vector(space, doc):
    return tuple(_scalar(space, v) for v in doc)


def check_version(doc: dict):
    schema = doc.get("schema")
    if schema != SCHEMA_VERSION:
        raise VersionMismatch(f"report schema {schema!r} is not {SCHEMA_VERSION!r}")
    major = str(doc.get("toolVersion", "")).split(".")[0]
    if major != TOOL_VERSION.split(".")[0]:
        raise VersionMismatch(f"report written by tool version {doc.get('toolVersion')!r}")


def report_space(doc: dict) -> FunctionSpace:
    space = load_space(doc["spaceDocument"])
    if space.digest()["sha256"] != doc.get("space", {}).get("sha256"):
        raise WitnessFailure("space", doc.get("space", {}).get("name"), "digest mismatch")
    return space


def verify_boundary_section(space, section) -> list:
    """Check certificates and non-boundary witnesses; returns the boundary list."""
    digest = space.digest()["sha256"][:12]
    labels = set(section["boundary"]) | set(section["nonBoundary"]) | set(section["unknown"])
    if labels != set(space.points):
        raise WitnessFailure("boundary", digest, "points missing from the classification")
    for label in section["boundary"]:
        cert = section["boundaryCertificates"].get(label)
        if cert is None:
            raise WitnessFailure("boundary", digest, f"no certificate for {label}")
        f = _vector(space, cert["f"])
        if not exposure_certificate_holds(space, f, label):
            raise WitnessFailure("boundary", digest, f"exposure at {label}")
    for label in section["nonBoundary"]:
        w = section["nonBoundaryWitnesses"][label]
        if space.is_complex:
            w = {**w, "combination": [{**t, "phase": _scalar(space, t["phase"])} if "phase" in t else t
                                      for t in w.get("combination", [])]}
        if not non_boundary_witness_holds(space, label, w):
            raise WitnessFailure("boundary", digest, f"combination at {label}")
    return list(section["boundary"])


def _recomputed(condition, space, boundary_report, status):
    runners = {
        "I": lambda: theta_injective(space, True, boundary_report),
        "III": lambda: is_functionally_simplicial(space, boundary_report)[0],
        "IV": lambda: annihilator_verdict(space, boundary_report),
        "V": lambda: is_simplexoid(space, boundary_report),
        "VI": lambda: is_l1_predual(space, boundary_report),
    }
    return runners[condition]().status.value == status


def verify_condition(space, condition, entry, boundary, boundary_report, table=None) -> bool:
    status = entry["status"]
    if status == "unknown":
        return True
    w = entry.get("witness")
    if condition == "I" and status == "false":
        alpha = _scalar(space, w["alpha"])
        return (abs2(alpha) == 1 and w["x"] in boundary and w["y"] in boundary
                and tuple(alpha * v for v in space.row(w["x"])) == space.row(w["y"]))
    if condition == "II":
        if status == "false":
            mu1, mu2 = _measure(space, w["mu1"]), _measure(space, w["mu2"])
            if w.get("norming") is not None:
                return verify_multiple(space, w["point"], mu1, mu2, _vector(space, w["norming"]),
                                       boundary)
            # unimodular coincidence: two unit atoms with the same image
            return (mu1 != mu2 and set(mu1.support) | set(mu2.support) <= set(boundary)
                    and pushforward(mu1, space) == pushforward(mu2, space)
                    and total_variation(mu1) == 1 == total_variation(mu2))
        if table:
            for label, row in table.items():
                if row["status"] != "unique":
                    return False
                if not verify_uniqueness(space, space.row(label), boundary,
                                         _measure(space, row["member"]),
                                         _vector(space, row["certificate"])):
                    return False
            return set(table) == set(space.points)
        return is_simplicial(space, boundary_report)[0].status is Status.TRUE
    if condition == "III" and status == "false":
        nu_w = NonUniquenessWitness(_measure(space, w["mu"]), _measure(space, w["nu"]),
                                    _vector(space, w["f"]), _vector(space, w["phi"]))
        return verify_nonuniqueness_witness(space, nu_w, boundary_report)
    if condition == "IV" and status == "false":
        mu = _measure(space, w["measure"])
        return (bool(mu.values) and set(mu.support) <= set(boundary)
                and all(v == 0 for v in pushforward(mu, space)))
    if condition == "V" and status == "false":
        parsed = {"normal": _vector(space, w["normal"]),
                  "incident": [(int(s), label) for s, label in w["incident"]]}
        return verify_face_violation(space, parsed, set(boundary))
    return _recomputed(condition, space, boundary_report, status)


def verify_report(doc: dict) -> dict:
    """Raise on the first failing witness; return a summary of what was checked."""
    check_version(doc)
    space = report_space(doc)
    digest = space.digest()["sha256"][:12]
    result = doc.get("result", {})
    checked = []
    boundary = None
    boundary_report = None
    if "boundary" in result:
        boundary = verify_boundary_section(space, result["boundary"])
        checked.append("boundary")
        boundary_report = choquet_boundary(space, result["boundary"].get("phaseGrid") or 64)
        if list(boundary_report.boundary) != boundary and not boundary_report.unknown:
            raise WitnessFailure("boundary", digest, "classification differs on recomputation")
    for condition, entry in result.get("conditions", {}).items():
        if entry["status"] == "unknown":
            continue
        table = result.get("uniquenessTable") if condition == "II" else None
        if not verify_condition(space, condition, entry, boundary, boundary_report, table):
            raise WitnessFailure(condition, digest)
        checked.append(condition)
    if "dirichlet" in result:
        checked += _verify_dirichlet(space, result["dirichlet"], digest)
    return {"space": digest, "checked": checked}


def _verify_dirichlet(space, section, digest):
    pair = dilation(space)
    for x, doc in section.get("delta", {}).items():
        if _measure(space, doc) != pair.delta[x]:
            raise WitnessFailure("dirichlet", digest, f"delta at {x}")
    return ["dirichlet"]
